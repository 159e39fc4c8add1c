//! The comtrace congruence and quotient monoid: neighbor rewrites, the
//! staged closure of a step sequence, equivalence, concatenation, and the
//! induced causality/weak-causality relations.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::alphabet::{ComtraceAlphabet, Step};
use crate::rel::Relation;
use crate::seq::{enumerate_occurrences, Occurrence, StepSequence};
use crate::sos::SoStructure;
use crate::structure::RelationalStructure;

/// Default cap on the number of congruent members expanded for one
/// comtrace.
pub const DEFAULT_MEMBER_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonoidError {
    MemberCapExceeded { cap: usize },
    AlphabetMismatch,
}

impl core::fmt::Display for MonoidError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MonoidError::MemberCapExceeded { cap } => {
                write!(f, "comtrace exceeds the member cap of {cap}")
            }
            MonoidError::AlphabetMismatch => write!(f, "comtraces over different alphabets"),
        }
    }
}

impl core::error::Error for MonoidError {}

/// A comtrace: the finite set of step sequences congruent to a given one,
/// with the canonically least member first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Comtrace {
    alphabet: ComtraceAlphabet,
    members: Vec<StepSequence>,
}

impl Comtrace {
    pub fn alphabet(&self) -> &ComtraceAlphabet {
        &self.alphabet
    }

    /// All congruent members, sorted canonically (canonical member first).
    pub fn members(&self) -> &[StepSequence] {
        &self.members
    }

    /// The canonical representative: the least member under the canonical
    /// step-sequence order.
    pub fn canonical(&self) -> &StepSequence {
        &self.members[0]
    }

    pub fn contains(&self, u: &StepSequence) -> bool {
        self.members.iter().any(|m| m == u)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The identity comtrace `[ε]`.
    pub fn identity(alphabet: &ComtraceAlphabet) -> Comtrace {
        Comtrace {
            alphabet: alphabet.clone(),
            members: alloc::vec![StepSequence::empty()],
        }
    }

    pub(crate) fn from_member_set(
        alphabet: &ComtraceAlphabet,
        members: BTreeSet<StepSequence>,
    ) -> Comtrace {
        let mut members: Vec<StepSequence> = members.into_iter().collect();
        members.sort_unstable_by(|a, b| a.canonical_cmp(b));
        debug_assert!(!members.is_empty());
        Comtrace { alphabet: alphabet.clone(), members }
    }
}

/// All one-rewrite neighbors of `u`: the results of splitting one step `A`
/// into adjacent `B C` with `B ∪ C = A` and `B × C ⊆ ser`, together with
/// the reverse merges.
pub fn rewrite_neighbors(u: &StepSequence, alphabet: &ComtraceAlphabet) -> Vec<StepSequence> {
    let mut out: BTreeSet<StepSequence> = BTreeSet::new();
    let steps = u.steps();
    // Splits: A -> B C over nonempty proper subsets B of A.
    for (i, step) in steps.iter().enumerate() {
        let members = step.members();
        let k = members.len();
        if k < 2 {
            continue;
        }
        for mask in 1u64..((1u64 << k) - 1) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (bit, &e) in members.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    left.push(e);
                } else {
                    right.push(e);
                }
            }
            let serializes = left
                .iter()
                .all(|&b| right.iter().all(|&c| alphabet.ser(b, c)));
            if !serializes {
                continue;
            }
            let mut steps: Vec<Step> = steps.to_vec();
            steps.splice(i..=i, [Step::new(left), Step::new(right)]);
            out.insert(StepSequence::new(steps));
        }
    }
    // Merges: adjacent B C -> A when B × C ⊆ ser. Disjointness is implied
    // by ser being irreflexive, and the union is a clique since ser ⊆ sim.
    for i in 0..steps.len().saturating_sub(1) {
        let (left, right) = (&steps[i], &steps[i + 1]);
        let serializes = left
            .members()
            .iter()
            .all(|&b| right.members().iter().all(|&c| alphabet.ser(b, c)));
        if !serializes {
            continue;
        }
        let mut merged: Vec<_> = left.members().to_vec();
        merged.extend_from_slice(right.members());
        let merged = Step::new(merged);
        debug_assert!(alphabet.is_step(merged.members()));
        let mut steps: Vec<Step> = steps.to_vec();
        steps.splice(i..=i + 1, [merged]);
        out.insert(StepSequence::new(steps));
    }
    out.into_iter().collect()
}

/// Expands the comtrace `[u]`: the closure of `{u}` under neighbor
/// rewrites in both directions, with the default member cap.
pub fn comtrace(u: &StepSequence, alphabet: &ComtraceAlphabet) -> Result<Comtrace, MonoidError> {
    comtrace_capped(u, alphabet, DEFAULT_MEMBER_CAP)
}

pub fn comtrace_capped(
    u: &StepSequence,
    alphabet: &ComtraceAlphabet,
    cap: usize,
) -> Result<Comtrace, MonoidError> {
    let mut visited: BTreeSet<StepSequence> = BTreeSet::new();
    let mut queue: VecDeque<StepSequence> = VecDeque::new();
    visited.insert(u.clone());
    queue.push_back(u.clone());
    while let Some(next) = queue.pop_front() {
        for neighbor in rewrite_neighbors(&next, alphabet) {
            if visited.contains(&neighbor) {
                continue;
            }
            if visited.len() >= cap {
                return Err(MonoidError::MemberCapExceeded { cap });
            }
            visited.insert(neighbor.clone());
            queue.push_back(neighbor);
        }
    }
    Ok(Comtrace::from_member_set(alphabet, visited))
}

/// The induced relations of a step sequence over its sorted occurrence
/// universe: `α ≺ β` iff `α` is strictly earlier and its label pair is not
/// serializable, `α ⊏ β` iff `α` is not later and the reversed label pair
/// is not serializable.
pub fn induced_relations(
    u: &StepSequence,
    alphabet: &ComtraceAlphabet,
) -> (Vec<Occurrence>, RelationalStructure) {
    let bar = enumerate_occurrences(u);
    let universe = bar.universe();
    let n = universe.len();
    let mut prec = Relation::new(n);
    let mut weak = Relation::new(n);
    for (i, &a) in universe.iter().enumerate() {
        let pa = bar.pos(a).unwrap();
        for (j, &b) in universe.iter().enumerate() {
            if i == j {
                continue;
            }
            let pb = bar.pos(b).unwrap();
            if pa < pb && !alphabet.ser(a.event, b.event) {
                prec.insert(i, j);
            }
            if pa <= pb && !alphabet.ser(b.event, a.event) {
                weak.insert(i, j);
            }
        }
    }
    (universe, RelationalStructure::new(prec, weak))
}

/// The so-structure defined by the comtrace of `u`: the diamond closure of
/// the induced relations.
pub fn comtrace_sos(u: &StepSequence, alphabet: &ComtraceAlphabet) -> SoStructure {
    let (universe, rs) = induced_relations(u, alphabet);
    SoStructure::from_relational(universe, rs.diamond_closure())
        .expect("closure of induced relations is an so-structure")
}

/// Congruence test. Two step sequences are congruent iff they induce the
/// same labeled relations over the same occurrence universe, so no closure
/// enumeration is needed.
pub fn equivalent(u: &StepSequence, t: &StepSequence, alphabet: &ComtraceAlphabet) -> bool {
    induced_relations(u, alphabet) == induced_relations(t, alphabet)
}

/// Comtrace concatenation: the comtrace of the concatenated canonical
/// representatives.
pub fn concat(s: &Comtrace, t: &Comtrace) -> Result<Comtrace, MonoidError> {
    concat_capped(s, t, DEFAULT_MEMBER_CAP)
}

pub fn concat_capped(s: &Comtrace, t: &Comtrace, cap: usize) -> Result<Comtrace, MonoidError> {
    if s.alphabet != t.alphabet {
        return Err(MonoidError::AlphabetMismatch);
    }
    comtrace_capped(&s.canonical().concat(t.canonical()), &s.alphabet, cap)
}
