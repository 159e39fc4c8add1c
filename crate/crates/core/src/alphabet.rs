//! Alphabets for combined traces: a finite event set together with the
//! simultaneity and serializability relations, plus the derived step
//! universe (the cliques of the simultaneity graph).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rel::Relation;

/// Default cap on the number of enumerated steps.
pub const DEFAULT_STEP_CAP: usize = 1 << 16;

/// An event of an alphabet, identified by its declaration position.
///
/// Ids are only meaningful relative to the alphabet that produced them.
/// Declaration order fixes every downstream enumeration and canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EventId(pub(crate) usize);

impl EventId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A step: a nonempty set of pairwise-simultaneous events.
///
/// Members are kept sorted by event id, so steps compare and hash
/// structurally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Step {
    members: Vec<EventId>,
}

impl Step {
    /// Builds a step from an arbitrary member list (sorted, deduplicated).
    /// The clique condition is the alphabet's to check, not this type's.
    pub fn new(mut members: Vec<EventId>) -> Self {
        members.sort_unstable();
        members.dedup();
        assert!(!members.is_empty(), "steps are nonempty");
        Step { members }
    }

    pub fn members(&self) -> &[EventId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: EventId) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// Order used for canonical step-sequence comparison: larger steps
    /// first, ties broken by the member list. This makes the maximally
    /// parallel member of a comtrace its least (canonical) element.
    pub fn canonical_cmp(&self, other: &Step) -> core::cmp::Ordering {
        other
            .members
            .len()
            .cmp(&self.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }

    pub fn text(&self, alphabet: &ComtraceAlphabet) -> String {
        let names: Vec<&str> = self.members.iter().map(|&e| alphabet.name(e)).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlphabetError {
    InvalidName(String),
    DuplicateEvent(String),
    UnknownEvent(String),
    ReflexiveSim(String),
    SerNotSim(String, String),
    TooManySteps { cap: usize },
}

impl core::fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlphabetError::InvalidName(n) => write!(f, "invalid event name `{n}`"),
            AlphabetError::DuplicateEvent(n) => write!(f, "duplicate event `{n}`"),
            AlphabetError::UnknownEvent(n) => write!(f, "unknown event `{n}`"),
            AlphabetError::ReflexiveSim(n) => write!(f, "reflexive sim pair ({n},{n})"),
            AlphabetError::SerNotSim(a, b) => {
                write!(f, "ser pair ({a},{b}) is not covered by sim")
            }
            AlphabetError::TooManySteps { cap } => {
                write!(f, "step enumeration exceeds cap of {cap}")
            }
        }
    }
}

impl core::error::Error for AlphabetError {}

/// A comtrace alphabet: events `E`, an irreflexive symmetric simultaneity
/// relation `sim`, and a serializability relation `ser` contained in `sim`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComtraceAlphabet {
    names: Vec<String>,
    sim: Relation,
    ser: Relation,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl ComtraceAlphabet {
    /// Builds and validates an alphabet.
    ///
    /// `sim_pairs` may be given in either orientation; they are stored
    /// symmetrically closed. `ser_pairs` are ordered and each must be
    /// covered by `sim`.
    pub fn build<S: AsRef<str>>(
        events: &[S],
        sim_pairs: &[(S, S)],
        ser_pairs: &[(S, S)],
    ) -> Result<Self, AlphabetError> {
        let mut names: Vec<String> = Vec::with_capacity(events.len());
        for e in events {
            let name = e.as_ref();
            if !valid_name(name) {
                return Err(AlphabetError::InvalidName(String::from(name)));
            }
            if names.iter().any(|n| n == name) {
                return Err(AlphabetError::DuplicateEvent(String::from(name)));
            }
            names.push(String::from(name));
        }
        let lookup = |name: &str| -> Result<usize, AlphabetError> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| AlphabetError::UnknownEvent(String::from(name)))
        };

        let n = names.len();
        let mut sim = Relation::new(n);
        for (a, b) in sim_pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(AlphabetError::ReflexiveSim(names[a].clone()));
            }
            sim.insert(a, b);
            sim.insert(b, a);
        }
        let mut ser = Relation::new(n);
        for (a, b) in ser_pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b || !sim.contains(a, b) {
                return Err(AlphabetError::SerNotSim(names[a].clone(), names[b].clone()));
            }
            ser.insert(a, b);
        }
        Ok(ComtraceAlphabet { names, sim, ser })
    }

    pub fn event_count(&self) -> usize {
        self.names.len()
    }

    pub fn events(&self) -> impl Iterator<Item = EventId> {
        (0..self.names.len()).map(EventId)
    }

    pub fn event(&self, name: &str) -> Option<EventId> {
        self.names.iter().position(|n| n == name).map(EventId)
    }

    pub fn name(&self, e: EventId) -> &str {
        &self.names[e.0]
    }

    pub fn event_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn sim(&self, a: EventId, b: EventId) -> bool {
        self.sim.contains(a.0, b.0)
    }

    pub fn ser(&self, a: EventId, b: EventId) -> bool {
        self.ser.contains(a.0, b.0)
    }

    /// The `sim` relation as unordered pairs, each reported once with the
    /// smaller event id first.
    pub fn sim_pairs(&self) -> Vec<(EventId, EventId)> {
        self.sim
            .pairs()
            .filter(|&(a, b)| a < b)
            .map(|(a, b)| (EventId(a), EventId(b)))
            .collect()
    }

    pub fn ser_pairs(&self) -> Vec<(EventId, EventId)> {
        self.ser.pairs().map(|(a, b)| (EventId(a), EventId(b))).collect()
    }

    /// True iff `events` names a step: nonempty and pairwise `sim`-related.
    pub fn is_step(&self, events: &[EventId]) -> bool {
        if events.is_empty() {
            return false;
        }
        for (i, &a) in events.iter().enumerate() {
            for &b in &events[i + 1..] {
                if a == b || !self.sim(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// All steps (cliques of the simultaneity graph), ordered by size then
    /// lexicographically by member ids, with the default enumeration cap.
    pub fn steps(&self) -> Result<Vec<Step>, AlphabetError> {
        self.steps_capped(DEFAULT_STEP_CAP)
    }

    pub fn steps_capped(&self, cap: usize) -> Result<Vec<Step>, AlphabetError> {
        let n = self.names.len();
        let mut out: Vec<Vec<EventId>> = Vec::new();
        let mut current: Vec<EventId> = Vec::new();
        for start in 0..n {
            current.push(EventId(start));
            self.extend_cliques(start, &mut current, &mut out, cap)?;
            current.pop();
        }
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out.into_iter().map(|members| Step { members }).collect())
    }

    fn extend_cliques(
        &self,
        last: usize,
        current: &mut Vec<EventId>,
        out: &mut Vec<Vec<EventId>>,
        cap: usize,
    ) -> Result<(), AlphabetError> {
        if out.len() >= cap {
            return Err(AlphabetError::TooManySteps { cap });
        }
        out.push(current.clone());
        for next in last + 1..self.names.len() {
            if current.iter().all(|&e| self.sim.contains(e.0, next)) {
                current.push(EventId(next));
                self.extend_cliques(next, current, out, cap)?;
                current.pop();
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta1() -> ComtraceAlphabet {
        ComtraceAlphabet::build(&["a", "b", "c"], &[("b", "c")], &[("b", "c")]).unwrap()
    }

    #[test]
    fn theta1_steps() {
        let theta = theta1();
        let steps = theta.steps().unwrap();
        let texts: Vec<String> = steps.iter().map(|s| s.text(&theta)).collect();
        assert_eq!(texts, vec!["{a}", "{b}", "{c}", "{b,c}"]);
    }

    #[test]
    fn singleton_alphabet() {
        let theta = ComtraceAlphabet::build::<&str>(&["a"], &[], &[]).unwrap();
        assert_eq!(theta.steps().unwrap().len(), 1);
    }

    #[test]
    fn ser_outside_sim_rejected() {
        let err = ComtraceAlphabet::build(&["a", "b"], &[], &[("a", "b")]).unwrap_err();
        assert_eq!(err, AlphabetError::SerNotSim("a".into(), "b".into()));
    }

    #[test]
    fn reflexive_sim_rejected() {
        let err = ComtraceAlphabet::build(&["a", "b"], &[("a", "a")], &[]).unwrap_err();
        assert_eq!(err, AlphabetError::ReflexiveSim("a".into()));
    }

    #[test]
    fn unknown_event_rejected() {
        let err = ComtraceAlphabet::build(&["a"], &[("a", "z")], &[]).unwrap_err();
        assert_eq!(err, AlphabetError::UnknownEvent("z".into()));
    }

    #[test]
    fn bad_names_rejected() {
        assert!(ComtraceAlphabet::build::<&str>(&["A"], &[], &[]).is_err());
        assert!(ComtraceAlphabet::build::<&str>(&[""], &[], &[]).is_err());
        assert!(ComtraceAlphabet::build::<&str>(&["1a"], &[], &[]).is_err());
        assert!(ComtraceAlphabet::build::<&str>(&["a_1"], &[], &[]).is_ok());
    }

    #[test]
    fn no_sim_gives_singletons() {
        let theta = ComtraceAlphabet::build::<&str>(&["a", "b"], &[], &[]).unwrap();
        let steps = theta.steps().unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn complete_sim_gives_all_subsets() {
        // every pair simultaneous: 2^3 - 1 = 7 cliques, enumerated size-first
        let theta = ComtraceAlphabet::build(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c"), ("b", "c")],
            &[],
        )
        .unwrap();
        let steps = theta.steps().unwrap();
        let texts: Vec<String> = steps.iter().map(|s| s.text(&theta)).collect();
        assert_eq!(texts, vec!["{a}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]);
    }

    #[test]
    fn is_step_matches_example() {
        let theta = theta1();
        let (a, b, c) = (
            theta.event("a").unwrap(),
            theta.event("b").unwrap(),
            theta.event("c").unwrap(),
        );
        assert!(theta.is_step(&[b, c]));
        assert!(!theta.is_step(&[a, b]));
        assert!(!theta.is_step(&[]));
    }

    #[test]
    fn steps_closed_under_nonempty_subsets() {
        // subclique property, exhaustive for a small dense alphabet
        let theta = ComtraceAlphabet::build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")],
            &[],
        )
        .unwrap();
        let steps = theta.steps().unwrap();
        for step in &steps {
            for skip in 0..step.len() {
                if step.len() == 1 {
                    continue;
                }
                let mut sub: Vec<EventId> = step.members().to_vec();
                sub.remove(skip);
                assert!(steps.iter().any(|s| s.members() == sub.as_slice()));
            }
        }
    }

    #[test]
    fn rebuild_from_own_encoding() {
        let theta = theta1();
        let events: Vec<&str> = theta.event_names().collect();
        let sim: Vec<(&str, &str)> = theta
            .sim_pairs()
            .into_iter()
            .map(|(a, b)| (theta.name(a), theta.name(b)))
            .collect();
        let ser: Vec<(&str, &str)> = theta
            .ser_pairs()
            .into_iter()
            .map(|(a, b)| (theta.name(a), theta.name(b)))
            .collect();
        let rebuilt = ComtraceAlphabet::build(&events, &sim, &ser).unwrap();
        assert_eq!(rebuilt, theta);
    }

    #[test]
    fn step_cap_enforced() {
        let theta = ComtraceAlphabet::build(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c"), ("b", "c")],
            &[],
        )
        .unwrap();
        assert_eq!(
            theta.steps_capped(3).unwrap_err(),
            AlphabetError::TooManySteps { cap: 3 }
        );
    }
}
