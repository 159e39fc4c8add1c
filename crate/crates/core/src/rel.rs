//! Binary relations on a finite index universe `0..n`, stored as dense
//! boolean matrices. Universes stay small (a few dozen elements at most),
//! so the cubic closure and composition loops are plenty fast.

use alloc::vec;
use alloc::vec::Vec;

/// A binary relation on `{0, .., n-1}` as an `n x n` boolean matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    n: usize,
    cells: Vec<bool>,
}

impl Relation {
    /// The empty relation on a universe of `n` elements.
    pub fn new(n: usize) -> Self {
        Relation { n, cells: vec![false; n * n] }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut rel = Relation::new(n);
        for &(a, b) in pairs {
            rel.insert(a, b);
        }
        rel
    }

    /// Size of the universe (not the number of related pairs).
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.cells[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "pair out of universe");
        self.cells[a * self.n + b] = true;
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.cells[a * self.n + b] = false;
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|&c| !c)
    }

    pub fn pair_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Related pairs in row-major scan order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(i, _)| (i / n, i % n))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|i| !self.contains(i, i))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n, "universe size mismatch");
        self.cells
            .iter()
            .zip(other.cells.iter())
            .all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "universe size mismatch");
        let cells = self
            .cells
            .iter()
            .zip(other.cells.iter())
            .map(|(&a, &b)| a || b)
            .collect();
        Relation { n: self.n, cells }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "universe size mismatch");
        let cells = self
            .cells
            .iter()
            .zip(other.cells.iter())
            .map(|(&a, &b)| a && b)
            .collect();
        Relation { n: self.n, cells }
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "universe size mismatch");
        let cells = self
            .cells
            .iter()
            .zip(other.cells.iter())
            .map(|(&a, &b)| a && !b)
            .collect();
        Relation { n: self.n, cells }
    }

    /// Relational composition: `(a, c)` iff some `b` has `a R b` and `b S c`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "universe size mismatch");
        let n = self.n;
        let mut out = Relation::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.contains(a, b) {
                    for c in 0..n {
                        if other.contains(b, c) {
                            out.insert(a, c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reflexive transitive closure, Warshall-style.
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            out.insert(i, i);
        }
        for k in 0..n {
            for a in 0..n {
                if out.contains(a, k) {
                    for b in 0..n {
                        if out.contains(k, b) {
                            out.insert(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// The relation with all diagonal pairs removed.
    pub fn strip_diagonal(&self) -> Relation {
        let mut out = self.clone();
        for i in 0..self.n {
            out.remove(i, i);
        }
        out
    }

    /// Covering relation: pairs `(x, y)` of `R` with no `z` such that
    /// `x R z` and `z R y`.
    pub fn covering(&self) -> Relation {
        let n = self.n;
        let mut out = Relation::new(n);
        'pair: for x in 0..n {
            for y in 0..n {
                if !self.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.contains(x, z) && self.contains(z, y) {
                        continue 'pair;
                    }
                }
                out.insert(x, y);
            }
        }
        out
    }
}

impl core::fmt::Debug for Relation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Relation(n={}, {:?})", self.n, self.pairs().collect::<Vec<_>>())
    }
}

/// Strongly connected components of the directed graph `(0..n, rel)`.
///
/// Components are normalized: each sorted ascending, components ordered by
/// their smallest element.
pub fn strongly_connected_components(rel: &Relation) -> Vec<Vec<usize>> {
    let n = rel.size();
    let mut state = TarjanState {
        rel,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if state.idx[v].is_none() {
            strongconnect(v, &mut state);
        }
    }
    let mut comps = state.comps;
    for comp in comps.iter_mut() {
        comp.sort_unstable();
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

struct TarjanState<'a> {
    rel: &'a Relation,
    index: usize,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

fn strongconnect(v: usize, state: &mut TarjanState<'_>) {
    state.idx[v] = Some(state.index);
    state.low[v] = state.index;
    state.index += 1;
    state.stack.push(v);
    state.on_stack[v] = true;

    for w in 0..state.rel.size() {
        if !state.rel.contains(v, w) {
            continue;
        }
        if state.idx[w].is_none() {
            strongconnect(w, state);
            state.low[v] = state.low[v].min(state.low[w]);
        } else if state.on_stack[w] {
            state.low[v] = state.low[v].min(state.idx[w].unwrap());
        }
    }

    if state.low[v] == state.idx[v].unwrap() {
        let mut comp = Vec::new();
        loop {
            let w = state.stack.pop().expect("stack underflow");
            state.on_stack[w] = false;
            comp.push(w);
            if w == v {
                break;
            }
        }
        state.comps.push(comp);
    }
}
