//! Relational structures over an index universe, the stratified-order
//! structure axioms, the diamond closure, and extension enumeration.
//!
//! Everything here works on plain indices `0..n`; the occurrence-level
//! wrappers live in [`crate::sos`].

use alloc::vec::Vec;

use crate::rel::Relation;

/// A pair of binary relations on a shared universe `0..n`. When the axioms
/// hold, `r1` is causality ("earlier than") and `r2` weak causality ("not
/// later than").
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RelationalStructure {
    r1: Relation,
    r2: Relation,
}

/// First violated axiom, with witness indices in scan order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SoViolation {
    S1 { x: usize },
    S2 { x: usize, y: usize },
    S3 { x: usize, y: usize, z: usize },
    S4 { x: usize, y: usize, z: usize },
}

impl core::fmt::Display for SoViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SoViolation::S1 { x } => write!(f, "S1 violated: {x} weakly precedes itself"),
            SoViolation::S2 { x, y } => {
                write!(f, "S2 violated: {x} < {y} without {x} weakly preceding {y}")
            }
            SoViolation::S3 { x, y, z } => {
                write!(f, "S3 violated: weak chain {x},{y},{z} is not transitive")
            }
            SoViolation::S4 { x, y, z } => {
                write!(f, "S4 violated: mixed chain {x},{y},{z} does not force {x} < {z}")
            }
        }
    }
}

impl RelationalStructure {
    pub fn new(r1: Relation, r2: Relation) -> Self {
        assert_eq!(r1.size(), r2.size(), "relations must share a universe");
        RelationalStructure { r1, r2 }
    }

    pub fn empty(n: usize) -> Self {
        RelationalStructure { r1: Relation::new(n), r2: Relation::new(n) }
    }

    pub fn size(&self) -> usize {
        self.r1.size()
    }

    pub fn r1(&self) -> &Relation {
        &self.r1
    }

    pub fn r2(&self) -> &Relation {
        &self.r2
    }

    pub fn into_parts(self) -> (Relation, Relation) {
        (self.r1, self.r2)
    }

    /// Componentwise containment (same universe assumed).
    pub fn is_contained_in(&self, other: &RelationalStructure) -> bool {
        self.r1.is_subset_of(&other.r1) && self.r2.is_subset_of(&other.r2)
    }

    /// The diamond closure `(X, (R1∪R2)* ∘ R1 ∘ (R1∪R2)*, (R1∪R2)* \ id)`.
    pub fn diamond_closure(&self) -> RelationalStructure {
        let star = self.r1.union(&self.r2).reflexive_transitive_closure();
        let r1 = star.compose(&self.r1).compose(&star);
        let r2 = star.strip_diagonal();
        RelationalStructure { r1, r2 }
    }

    /// Checks S1-S4, returning the first violation in scan order.
    pub fn check_so_axioms(&self) -> Result<(), SoViolation> {
        let n = self.size();
        let prec = |a: usize, b: usize| self.r1.contains(a, b);
        let weak = |a: usize, b: usize| self.r2.contains(a, b);
        for x in 0..n {
            if weak(x, x) {
                return Err(SoViolation::S1 { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if prec(x, y) && !weak(x, y) {
                    return Err(SoViolation::S2 { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if weak(x, y) && weak(y, z) && x != z && !weak(x, z) {
                        return Err(SoViolation::S3 { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mixed = (weak(x, y) && prec(y, z)) || (prec(x, y) && weak(y, z));
                    if mixed && !prec(x, z) {
                        return Err(SoViolation::S4 { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_so_structure(&self) -> bool {
        self.check_so_axioms().is_ok()
    }
}

/// Whether the stratified order given by `pos` (block index per node)
/// extends the structure: `r1 ⊆ ⊲` and `r2 ⊆ ⊲⌢`.
pub(crate) fn blocks_extend(rs: &RelationalStructure, pos: &[usize]) -> bool {
    let n = rs.size();
    for a in 0..n {
        for b in 0..n {
            if rs.r1().contains(a, b) && pos[a] >= pos[b] {
                return false;
            }
            if rs.r2().contains(a, b) && (a == b || pos[a] > pos[b]) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn position_array(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut pos = alloc::vec![usize::MAX; n];
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            pos[x] = i;
        }
    }
    pos
}

/// Enumerates all stratified extensions of an so-structure as block lists
/// of node indices, sorted for determinism.
///
/// Blocks are chosen left to right: a valid next block is a nonempty set of
/// remaining nodes none of which has a causal or weak-causal predecessor
/// left outside the block. Requires the axioms to hold for completeness.
pub(crate) fn enumerate_extensions(rs: &RelationalStructure) -> Vec<Vec<Vec<usize>>> {
    let n = rs.size();
    let remaining: Vec<usize> = (0..n).collect();
    let mut result = Vec::new();
    let mut blocks = Vec::new();
    extend_blocks(rs, &remaining, &mut blocks, &mut result);
    result.sort_unstable();
    result
}

fn extend_blocks(
    rs: &RelationalStructure,
    remaining: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    result: &mut Vec<Vec<Vec<usize>>>,
) {
    if remaining.is_empty() {
        result.push(blocks.clone());
        return;
    }
    // Nodes with no strict predecessor among the remaining nodes.
    let candidates: Vec<usize> = remaining
        .iter()
        .copied()
        .filter(|&x| remaining.iter().all(|&y| !rs.r1.contains(y, x)))
        .collect();
    debug_assert!(candidates.len() < usize::BITS as usize);
    for mask in 1u64..(1u64 << candidates.len()) {
        let block: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        // No weak predecessor of a block member may be deferred.
        let closed = block.iter().all(|&x| {
            remaining
                .iter()
                .all(|&y| !rs.r2.contains(y, x) || block.contains(&y))
        });
        if !closed {
            continue;
        }
        let rest: Vec<usize> = remaining.iter().copied().filter(|x| !block.contains(x)).collect();
        blocks.push(block);
        extend_blocks(rs, &rest, blocks, result);
        blocks.pop();
    }
}
