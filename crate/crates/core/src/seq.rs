//! Step sequences, their occurrence-numbered form, and the interchange
//! between step sequences and stratified orders.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{ComtraceAlphabet, EventId, Step};
use crate::rel::Relation;

/// A finite word over steps; the empty sequence is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct StepSequence {
    steps: Vec<Step>,
}

impl StepSequence {
    pub fn new(steps: Vec<Step>) -> Self {
        StepSequence { steps }
    }

    pub fn empty() -> Self {
        StepSequence { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation (the monoid operation on step sequences).
    pub fn concat(&self, other: &StepSequence) -> StepSequence {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        StepSequence { steps }
    }

    /// True iff every step is a clique of the alphabet's simultaneity graph.
    pub fn is_valid(&self, alphabet: &ComtraceAlphabet) -> bool {
        self.steps.iter().all(|s| alphabet.is_step(s.members()))
    }

    /// Canonical comparison: steps compared pointwise with larger steps
    /// first (see [`Step::canonical_cmp`]), prefixes before longer words.
    pub fn canonical_cmp(&self, other: &StepSequence) -> core::cmp::Ordering {
        for (a, b) in self.steps.iter().zip(other.steps.iter()) {
            let ord = a.canonical_cmp(b);
            if ord != core::cmp::Ordering::Equal {
                return ord;
            }
        }
        self.steps.len().cmp(&other.steps.len())
    }

    pub fn text(&self, alphabet: &ComtraceAlphabet) -> String {
        self.steps.iter().map(|s| s.text(alphabet)).collect()
    }
}

/// One numbered occurrence of an event: the `j`-th occurrence of `e` is
/// written `e(j)`, with `j >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Occurrence {
    pub event: EventId,
    pub index: usize,
}

impl Occurrence {
    pub fn new(event: EventId, index: usize) -> Self {
        assert!(index >= 1, "occurrence indices are 1-based");
        Occurrence { event, index }
    }

    pub fn text(&self, alphabet: &ComtraceAlphabet) -> String {
        format!("{}({})", alphabet.name(self.event), self.index)
    }
}

/// The occurrence-numbered form of a step sequence: each event's
/// occurrences carry indices `1..` increasing along the sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnumeratedStepSequence {
    steps: Vec<Vec<Occurrence>>,
}

impl EnumeratedStepSequence {
    pub fn steps(&self) -> &[Vec<Occurrence>] {
        &self.steps
    }

    /// All occurrences, sorted by (event, index).
    pub fn universe(&self) -> Vec<Occurrence> {
        let mut out: Vec<Occurrence> = self.steps.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// 1-based step index of an occurrence.
    pub fn pos(&self, occ: Occurrence) -> Option<usize> {
        self.steps
            .iter()
            .position(|s| s.contains(&occ))
            .map(|i| i + 1)
    }

    /// The label of an occurrence is the event it numbers.
    pub fn label(&self, occ: Occurrence) -> EventId {
        occ.event
    }

    /// Drops the numbering, recovering the plain step sequence.
    pub fn to_step_sequence(&self) -> StepSequence {
        StepSequence::new(
            self.steps
                .iter()
                .map(|s| Step::new(s.iter().map(|o| o.event).collect()))
                .collect(),
        )
    }

    pub fn text(&self, alphabet: &ComtraceAlphabet) -> String {
        render_blocks(&self.steps, alphabet)
    }
}

fn render_blocks(blocks: &[Vec<Occurrence>], alphabet: &ComtraceAlphabet) -> String {
    blocks
        .iter()
        .map(|block| {
            let occs: Vec<String> = block.iter().map(|o| o.text(alphabet)).collect();
            format!("{{{}}}", occs.join(","))
        })
        .collect()
}

/// Numbers the occurrences of a step sequence.
pub fn enumerate_occurrences(t: &StepSequence) -> EnumeratedStepSequence {
    let mut counts: BTreeMap<EventId, usize> = BTreeMap::new();
    let mut steps = Vec::with_capacity(t.len());
    for step in t.steps() {
        let mut block = Vec::with_capacity(step.len());
        for &e in step.members() {
            let count = counts.entry(e).or_insert(0);
            *count += 1;
            block.push(Occurrence::new(e, *count));
        }
        block.sort_unstable();
        steps.push(block);
    }
    EnumeratedStepSequence { steps }
}

/// A stratified order in its block form: an ordered list of disjoint
/// nonempty blocks covering the universe. `a` precedes `b` iff `a`'s block
/// comes strictly earlier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StratifiedOrder {
    blocks: Vec<Vec<Occurrence>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderError {
    /// The relation has a reflexive pair.
    Irreflexive(Occurrence),
    /// Incomparability fails transitivity at the witness triple, so it is
    /// not an equivalence relation.
    NotStratified(Occurrence, Occurrence, Occurrence),
    /// The relation does not order its incomparability classes uniformly.
    Inconsistent(Occurrence, Occurrence),
    /// A block is empty, or blocks overlap at the witness.
    MalformedBlocks(Option<Occurrence>),
    /// A pair mentions an element outside the universe.
    OutsideUniverse(Occurrence),
}

impl core::fmt::Display for OrderError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OrderError::Irreflexive(_) => write!(f, "relation is not irreflexive"),
            OrderError::NotStratified(..) => {
                write!(f, "incomparability is not an equivalence relation")
            }
            OrderError::Inconsistent(..) => {
                write!(f, "relation does not order its blocks consistently")
            }
            OrderError::MalformedBlocks(_) => write!(f, "blocks must be disjoint and nonempty"),
            OrderError::OutsideUniverse(_) => write!(f, "pair outside the universe"),
        }
    }
}

impl core::error::Error for OrderError {}

impl StratifiedOrder {
    /// Builds an order from explicit blocks, which must be disjoint and
    /// nonempty. Block contents are sorted.
    pub fn from_blocks(mut blocks: Vec<Vec<Occurrence>>) -> Result<Self, OrderError> {
        let mut seen: Vec<Occurrence> = Vec::new();
        for block in blocks.iter_mut() {
            if block.is_empty() {
                return Err(OrderError::MalformedBlocks(None));
            }
            block.sort_unstable();
            block.dedup();
            for &occ in block.iter() {
                if seen.contains(&occ) {
                    return Err(OrderError::MalformedBlocks(Some(occ)));
                }
                seen.push(occ);
            }
        }
        Ok(StratifiedOrder { blocks })
    }

    /// Reconstructs the block form from a "before" relation, rejecting
    /// relations that are not stratified orders.
    pub fn from_relation(
        universe: &[Occurrence],
        before: &[(Occurrence, Occurrence)],
    ) -> Result<Self, OrderError> {
        let mut elems: Vec<Occurrence> = universe.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let index = |occ: Occurrence| -> Result<usize, OrderError> {
            elems
                .binary_search(&occ)
                .map_err(|_| OrderError::OutsideUniverse(occ))
        };
        let n = elems.len();
        let mut rel = Relation::new(n);
        for &(a, b) in before {
            let (a, b) = (index(a)?, index(b)?);
            if a == b {
                return Err(OrderError::Irreflexive(elems[a]));
            }
            rel.insert(a, b);
        }
        // Incomparability must be an equivalence relation.
        let incomp = |a: usize, b: usize| !rel.contains(a, b) && !rel.contains(b, a);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if incomp(a, b) && incomp(b, c) && !incomp(a, c) {
                        return Err(OrderError::NotStratified(elems[a], elems[b], elems[c]));
                    }
                }
            }
        }
        // Group incomparability classes.
        let mut class_of: Vec<Option<usize>> = alloc::vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a].is_some() {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (a..n).filter(|&b| incomp(a, b)).collect();
            for &m in &members {
                class_of[m] = Some(id);
            }
            classes.push(members);
        }
        // Cross-class pairs must be uniformly and completely related.
        let k = classes.len();
        let mut before_class = Relation::new(k);
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let forward = rel.contains(classes[i][0], classes[j][0]);
                for &a in &classes[i] {
                    for &b in &classes[j] {
                        if rel.contains(a, b) != forward || rel.contains(b, a) == forward {
                            return Err(OrderError::Inconsistent(elems[a], elems[b]));
                        }
                    }
                }
                if forward {
                    before_class.insert(i, j);
                }
            }
        }
        // Class order must be a strict total order; sort by predecessor count.
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_unstable_by_key(|&i| (0..k).filter(|&j| before_class.contains(j, i)).count());
        for (pi, &i) in order.iter().enumerate() {
            for &j in &order[pi + 1..] {
                if !before_class.contains(i, j) {
                    return Err(OrderError::Inconsistent(elems[classes[i][0]], elems[classes[j][0]]));
                }
            }
        }
        let blocks = order
            .into_iter()
            .map(|i| classes[i].iter().map(|&a| elems[a]).collect())
            .collect();
        Ok(StratifiedOrder { blocks })
    }

    pub fn blocks(&self) -> &[Vec<Occurrence>] {
        &self.blocks
    }

    pub fn universe(&self) -> Vec<Occurrence> {
        let mut out: Vec<Occurrence> = self.blocks.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// 1-based block index.
    pub fn pos(&self, occ: Occurrence) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&occ).is_ok())
            .map(|i| i + 1)
    }

    /// `a` strictly before `b`.
    pub fn before(&self, a: Occurrence, b: Occurrence) -> bool {
        match (self.pos(a), self.pos(b)) {
            (Some(pa), Some(pb)) => pa < pb,
            _ => false,
        }
    }

    /// `a` not later than `b` (the "not greater" companion relation).
    pub fn not_later(&self, a: Occurrence, b: Occurrence) -> bool {
        if a == b {
            return false;
        }
        match (self.pos(a), self.pos(b)) {
            (Some(pa), Some(pb)) => pa <= pb,
            _ => false,
        }
    }

    pub fn text(&self, alphabet: &ComtraceAlphabet) -> String {
        render_blocks(&self.blocks, alphabet)
    }
}

/// The stratified order generated by a step sequence: occurrences ordered
/// by step position.
pub fn order_of_sequence(t: &StepSequence) -> StratifiedOrder {
    StratifiedOrder {
        blocks: enumerate_occurrences(t).steps,
    }
}

/// The step sequence representing a stratified order: block labels in
/// block order. Inverse of [`order_of_sequence`] at the label level.
pub fn sequence_of_order(order: &StratifiedOrder) -> StepSequence {
    StepSequence::new(
        order
            .blocks
            .iter()
            .map(|block| Step::new(block.iter().map(|o| o.event).collect()))
            .collect(),
    )
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    Syntax { pos: usize, expected: &'static str },
    UnknownEvent { pos: usize, name: String },
    NotAStep { pos: usize, step: String },
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseError::Syntax { pos, expected } => {
                write!(f, "syntax error at position {pos}: expected {expected}")
            }
            ParseError::UnknownEvent { pos, name } => {
                write!(f, "unknown event `{name}` at position {pos}")
            }
            ParseError::NotAStep { pos, step } => {
                write!(f, "group {step} at position {pos} is not a step (not a sim-clique)")
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses the grammar `('{' name (',' name)* '}')*`, whitespace-insensitive.
/// The empty string denotes the empty sequence.
pub fn parse_step_sequence(
    text: &str,
    alphabet: &ComtraceAlphabet,
) -> Result<StepSequence, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut steps = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    while i < bytes.len() {
        if bytes[i] != '{' {
            return Err(ParseError::Syntax { pos: i + 1, expected: "`{`" });
        }
        let step_start = i;
        i += 1;
        let mut members = Vec::new();
        loop {
            skip_ws(&mut i);
            let name_start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == '_')
            {
                i += 1;
            }
            if i == name_start {
                return Err(ParseError::Syntax { pos: i + 1, expected: "event name" });
            }
            let name: String = bytes[name_start..i].iter().collect();
            match alphabet.event(&name) {
                Some(e) => members.push(e),
                None => return Err(ParseError::UnknownEvent { pos: name_start + 1, name }),
            }
            skip_ws(&mut i);
            match bytes.get(i) {
                Some(',') => i += 1,
                Some('}') => {
                    i += 1;
                    break;
                }
                _ => return Err(ParseError::Syntax { pos: i + 1, expected: "`,` or `}`" }),
            }
        }
        if !alphabet.is_step(&members) {
            let step_text: String = bytes[step_start..i].iter().collect();
            return Err(ParseError::NotAStep { pos: step_start + 1, step: step_text });
        }
        steps.push(Step::new(members));
        skip_ws(&mut i);
    }
    Ok(StepSequence::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::ComtraceAlphabet;

    fn theta1() -> ComtraceAlphabet {
        ComtraceAlphabet::build(&["a", "b", "c"], &[("b", "c")], &[("b", "c")]).unwrap()
    }

    fn full_sim() -> ComtraceAlphabet {
        ComtraceAlphabet::build(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c"), ("b", "c")],
            &[],
        )
        .unwrap()
    }

    fn seq(text: &str, theta: &ComtraceAlphabet) -> StepSequence {
        parse_step_sequence(text, theta).unwrap()
    }

    #[test]
    fn enumerate_four_step_example() {
        let theta = full_sim();
        let t = seq("{a,b}{b,c}{c,a}{a}", &theta);
        let bar = enumerate_occurrences(&t);
        assert_eq!(bar.text(&theta), "{a(1),b(1)}{b(2),c(1)}{a(2),c(2)}{a(3)}");
        assert_eq!(bar.universe().len(), 7);
        let c1 = Occurrence::new(theta.event("c").unwrap(), 1);
        let b2 = Occurrence::new(theta.event("b").unwrap(), 2);
        assert_eq!(bar.pos(c1), Some(2));
        assert_eq!(bar.pos(b2), Some(2));
        assert_eq!(bar.to_step_sequence(), t);
    }

    #[test]
    fn enumerate_empty_and_repeats() {
        let theta = theta1();
        let bar = enumerate_occurrences(&StepSequence::empty());
        assert!(bar.universe().is_empty());

        let t = seq("{a}{a}{a}", &theta);
        let bar = enumerate_occurrences(&t);
        assert_eq!(bar.text(&theta), "{a(1)}{a(2)}{a(3)}");
        let a2 = Occurrence::new(theta.event("a").unwrap(), 2);
        assert_eq!(bar.pos(a2), Some(2));
    }

    #[test]
    fn order_of_sequence_positions() {
        let theta = full_sim();
        let t = seq("{a,b}{b,c}{c,a}{a}", &theta);
        let order = order_of_sequence(&t);
        let b2 = Occurrence::new(theta.event("b").unwrap(), 2);
        let c1 = Occurrence::new(theta.event("c").unwrap(), 1);
        assert_eq!(order.pos(b2), order.pos(c1));
        assert!(!order.before(b2, c1));
        assert!(order.not_later(b2, c1));
        assert!(order.not_later(c1, b2));
    }

    #[test]
    fn total_order_round_trip() {
        let theta = theta1();
        let t = seq("{a}{b}{c}", &theta);
        let order = order_of_sequence(&t);
        assert_eq!(order.blocks().len(), 3);
        assert_eq!(sequence_of_order(&order), t);

        let t2 = seq("{a}{b,c}", &theta);
        assert_eq!(sequence_of_order(&order_of_sequence(&t2)), t2);

        assert_eq!(sequence_of_order(&order_of_sequence(&StepSequence::empty())), StepSequence::empty());
    }

    #[test]
    fn from_relation_reconstructs_blocks() {
        // a before b, b incomparable with c, a before c => {a}{b,c}
        let theta = theta1();
        let a1 = Occurrence::new(theta.event("a").unwrap(), 1);
        let b1 = Occurrence::new(theta.event("b").unwrap(), 1);
        let c1 = Occurrence::new(theta.event("c").unwrap(), 1);
        let order =
            StratifiedOrder::from_relation(&[a1, b1, c1], &[(a1, b1), (a1, c1)]).unwrap();
        assert_eq!(order.blocks(), &[alloc::vec![a1], alloc::vec![b1, c1]]);
        assert_eq!(sequence_of_order(&order).text(&theta), "{a}{b,c}");
    }

    #[test]
    fn from_relation_rejects_non_stratified() {
        // a before b only: incomparability {a,c},{c,b} holds but {a,b} fails
        let theta = theta1();
        let a1 = Occurrence::new(theta.event("a").unwrap(), 1);
        let b1 = Occurrence::new(theta.event("b").unwrap(), 1);
        let c1 = Occurrence::new(theta.event("c").unwrap(), 1);
        let err = StratifiedOrder::from_relation(&[a1, b1, c1], &[(a1, b1)]).unwrap_err();
        assert!(matches!(err, OrderError::NotStratified(..)));
    }

    #[test]
    fn from_relation_rejects_cycles() {
        let theta = theta1();
        let a1 = Occurrence::new(theta.event("a").unwrap(), 1);
        let b1 = Occurrence::new(theta.event("b").unwrap(), 1);
        let c1 = Occurrence::new(theta.event("c").unwrap(), 1);
        let err = StratifiedOrder::from_relation(
            &[a1, b1, c1],
            &[(a1, b1), (b1, c1), (c1, a1)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            OrderError::NotStratified(..) | OrderError::Inconsistent(..)
        ));
    }

    #[test]
    fn parse_valid_and_empty() {
        let theta = theta1();
        let t = seq("{a}{b,c}", &theta);
        assert_eq!(t.text(&theta), "{a}{b,c}");
        assert_eq!(seq("", &theta), StepSequence::empty());
        assert_eq!(seq("  { a } { b , c }  ", &theta).text(&theta), "{a}{b,c}");
    }

    #[test]
    fn parse_rejects_non_clique() {
        let theta = theta1();
        let err = parse_step_sequence("{a,b}", &theta).unwrap_err();
        assert!(matches!(err, ParseError::NotAStep { pos: 1, .. }));
    }

    #[test]
    fn parse_rejects_unknown_and_syntax() {
        let theta = theta1();
        assert!(matches!(
            parse_step_sequence("{z}", &theta).unwrap_err(),
            ParseError::UnknownEvent { .. }
        ));
        assert!(matches!(
            parse_step_sequence("{a", &theta).unwrap_err(),
            ParseError::Syntax { .. }
        ));
        assert!(matches!(
            parse_step_sequence("a}", &theta).unwrap_err(),
            ParseError::Syntax { pos: 1, .. }
        ));
        assert!(matches!(
            parse_step_sequence("{}", &theta).unwrap_err(),
            ParseError::Syntax { .. }
        ));
    }

    #[test]
    fn canonical_order_prefers_larger_steps() {
        let theta = theta1();
        let parallel = seq("{a}{b,c}", &theta);
        let serial = seq("{a}{b}{c}", &theta);
        assert_eq!(parallel.canonical_cmp(&serial), core::cmp::Ordering::Less);
        assert_eq!(
            StepSequence::empty().canonical_cmp(&serial),
            core::cmp::Ordering::Less
        );
    }
}
