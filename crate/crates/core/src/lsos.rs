//! Labeled so-structures and lsos-comtraces: quotients by weak-causality
//! cycles, the five validity conditions, canonical (occurrence-enumerated)
//! forms, label-preserving isomorphism, and composition.

use alloc::vec::Vec;

use crate::alphabet::{ComtraceAlphabet, EventId};
use crate::oracle::lp_bijection_search;
use crate::rel::{strongly_connected_components, Relation};
use crate::seq::Occurrence;
use crate::sos::SoStructure;
use crate::structure::{RelationalStructure, SoViolation};

/// Classes larger than this are rejected by the LC3 subset scan, which is
/// exponential in class size.
pub const LC3_CLASS_BOUND: usize = 12;

/// A labeled relational structure: nodes are opaque indices `0..n`, each
/// carrying an event label. Node identity is arbitrary; the meaningful
/// object is the label-preserving isomorphism class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledStructure {
    labels: Vec<EventId>,
    rs: RelationalStructure,
}

impl LabeledStructure {
    pub fn new(labels: Vec<EventId>, r1: Relation, r2: Relation) -> Self {
        assert_eq!(labels.len(), r1.size(), "labels and relations disagree");
        LabeledStructure { labels, rs: RelationalStructure::new(r1, r2) }
    }

    pub fn from_relational(labels: Vec<EventId>, rs: RelationalStructure) -> Self {
        assert_eq!(labels.len(), rs.size(), "labels and relations disagree");
        LabeledStructure { labels, rs }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[EventId] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> EventId {
        self.labels[node]
    }

    pub fn relational(&self) -> &RelationalStructure {
        &self.rs
    }

    pub fn r1(&self) -> &Relation {
        self.rs.r1()
    }

    pub fn r2(&self) -> &Relation {
        self.rs.r2()
    }
}

/// The quotient of a labeled so-structure by its weak-causality cycle
/// equivalence: classes become nodes, related when some member pair is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientSoStructure {
    classes: Vec<Vec<usize>>,
    class_labels: Vec<Vec<EventId>>,
    prec: Relation,
    weak: Relation,
}

impl QuotientSoStructure {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes as sorted node-index sets, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The label set of each class, sorted.
    pub fn class_labels(&self) -> &[Vec<EventId>] {
        &self.class_labels
    }

    pub fn class_of(&self, node: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&node)).unwrap()
    }

    /// Quotient causality between classes.
    pub fn prec(&self) -> &Relation {
        &self.prec
    }

    /// Quotient weak causality between classes; a strict partial order.
    pub fn weak(&self) -> &Relation {
        &self.weak
    }

    pub fn relational(&self) -> RelationalStructure {
        RelationalStructure::new(self.prec.clone(), self.weak.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LsosError {
    /// The underlying relations are not an so-structure.
    NotSoStructure(SoViolation),
    /// A node label does not belong to the alphabet.
    LabelOutOfRange { node: usize },
    /// A weak-causality cycle class is too large for the LC3 subset scan.
    ClassTooLarge { size: usize, bound: usize },
    /// Canonicalization of a structure that fails the validity conditions.
    NotValid(LsosViolation),
    AlphabetMismatch,
}

impl core::fmt::Display for LsosError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LsosError::NotSoStructure(v) => write!(f, "not an so-structure: {v}"),
            LsosError::LabelOutOfRange { node } => {
                write!(f, "node {node} is labeled outside the alphabet")
            }
            LsosError::ClassTooLarge { size, bound } => {
                write!(f, "cycle class of size {size} exceeds the bound of {bound}")
            }
            LsosError::NotValid(v) => write!(f, "not a valid lsos-comtrace: {v}"),
            LsosError::AlphabetMismatch => write!(f, "operands use different alphabets"),
        }
    }
}

impl core::error::Error for LsosError {}

/// First failed validity condition, with witness node indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LsosViolation {
    /// A covering, causally ordered class pair whose label product is
    /// entirely serializable.
    Lc1 { class_a: Vec<usize>, class_b: Vec<usize> },
    /// A covering, not causally ordered class pair serializable in the
    /// reverse direction.
    Lc2 { class_a: Vec<usize>, class_b: Vec<usize> },
    /// A class splittable into two parts with fully serializable labels.
    Lc3 { part_a: Vec<usize>, part_b: Vec<usize> },
    /// A non-serializable node pair that is neither causally ordered nor
    /// weakly ordered backwards.
    Lc4 { x: usize, y: usize },
    /// A non-simultaneous node pair that is not causally ordered either way.
    Lc5 { x: usize, y: usize },
}

impl core::fmt::Display for LsosViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LsosViolation::Lc1 { class_a, class_b } => {
                write!(f, "LC1 violated by classes {class_a:?} and {class_b:?}")
            }
            LsosViolation::Lc2 { class_a, class_b } => {
                write!(f, "LC2 violated by classes {class_a:?} and {class_b:?}")
            }
            LsosViolation::Lc3 { part_a, part_b } => {
                write!(f, "LC3 violated by the split {part_a:?} / {part_b:?}")
            }
            LsosViolation::Lc4 { x, y } => write!(f, "LC4 violated by nodes {x} and {y}"),
            LsosViolation::Lc5 { x, y } => write!(f, "LC5 violated by nodes {x} and {y}"),
        }
    }
}

/// Validation verdict for the five lsos-comtrace conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LsosCheck {
    Pass,
    Fail(LsosViolation),
}

impl LsosCheck {
    pub fn is_pass(&self) -> bool {
        matches!(self, LsosCheck::Pass)
    }
}

/// The weak-causality cycle partition of a labeled so-structure: classes
/// are the strongly connected components of the weak-causality digraph.
pub fn cycle_classes(structure: &LabeledStructure) -> Vec<Vec<usize>> {
    strongly_connected_components(structure.r2())
}

/// Quotients a labeled so-structure by its cycle classes.
pub fn quotient(structure: &LabeledStructure) -> Result<QuotientSoStructure, LsosError> {
    structure
        .relational()
        .check_so_axioms()
        .map_err(LsosError::NotSoStructure)?;
    Ok(quotient_unchecked(structure))
}

fn quotient_unchecked(structure: &LabeledStructure) -> QuotientSoStructure {
    let classes = cycle_classes(structure);
    let k = classes.len();
    let mut prec = Relation::new(k);
    let mut weak = Relation::new(k);
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut any_prec = false;
            let mut any_weak = false;
            for &a in &classes[i] {
                for &b in &classes[j] {
                    any_prec |= structure.r1().contains(a, b);
                    any_weak |= structure.r2().contains(a, b);
                }
            }
            if any_prec {
                prec.insert(i, j);
            }
            if any_weak {
                weak.insert(i, j);
            }
        }
    }
    let class_labels = classes
        .iter()
        .map(|class| {
            let mut labels: Vec<EventId> = class.iter().map(|&x| structure.label(x)).collect();
            labels.sort_unstable();
            labels.dedup();
            labels
        })
        .collect();
    QuotientSoStructure { classes, class_labels, prec, weak }
}

impl SoStructure {
    /// The quotient of an occurrence-level so-structure, labeling each
    /// occurrence with its event.
    pub fn quotient(&self) -> QuotientSoStructure {
        quotient_unchecked(&self.to_labeled())
    }

    /// Views the structure as a labeled structure over opaque indices.
    pub fn to_labeled(&self) -> LabeledStructure {
        LabeledStructure::from_relational(
            self.universe().iter().map(|o| o.event).collect(),
            self.relational().clone(),
        )
    }
}

/// Checks the five lsos-comtrace conditions, returning the first failure.
///
/// LC1 and LC2 are evaluated on the covering relation of the quotient's
/// weak causality; LC3 scans every two-part cover of each cycle class;
/// LC4 and LC5 are pairwise node conditions.
pub fn validate_lsos(
    structure: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
) -> Result<LsosCheck, LsosError> {
    structure
        .relational()
        .check_so_axioms()
        .map_err(LsosError::NotSoStructure)?;
    for (node, label) in structure.labels().iter().enumerate() {
        if label.index() >= alphabet.event_count() {
            return Err(LsosError::LabelOutOfRange { node });
        }
    }
    let q = quotient_unchecked(structure);
    let cov = q.weak.covering();
    let label_product_in_ser = |from: &[EventId], to: &[EventId]| {
        from.iter().all(|&a| to.iter().all(|&b| alphabet.ser(a, b)))
    };
    for i in 0..q.class_count() {
        for j in 0..q.class_count() {
            if !cov.contains(i, j) {
                continue;
            }
            if q.prec.contains(i, j) {
                if label_product_in_ser(&q.class_labels[i], &q.class_labels[j]) {
                    return Ok(LsosCheck::Fail(LsosViolation::Lc1 {
                        class_a: q.classes[i].clone(),
                        class_b: q.classes[j].clone(),
                    }));
                }
            } else if label_product_in_ser(&q.class_labels[j], &q.class_labels[i]) {
                return Ok(LsosCheck::Fail(LsosViolation::Lc2 {
                    class_a: q.classes[i].clone(),
                    class_b: q.classes[j].clone(),
                }));
            }
        }
    }
    for class in q.classes() {
        let k = class.len();
        if k > LC3_CLASS_BOUND {
            return Err(LsosError::ClassTooLarge { size: k, bound: LC3_CLASS_BOUND });
        }
        // Two-part covers (A, B): A any nonempty subset, B the complement
        // united with any subset of A, both nonempty.
        for a_mask in 1u64..(1u64 << k) {
            let part_a: Vec<usize> = (0..k)
                .filter(|bit| a_mask & (1 << bit) != 0)
                .map(|bit| class[bit])
                .collect();
            let rest: Vec<usize> = (0..k)
                .filter(|bit| a_mask & (1 << bit) == 0)
                .map(|bit| class[bit])
                .collect();
            let a_bits: Vec<usize> = (0..k).filter(|bit| a_mask & (1 << bit) != 0).collect();
            for extra_mask in 0u64..(1u64 << a_bits.len()) {
                let mut part_b = rest.clone();
                for (pos, &bit) in a_bits.iter().enumerate() {
                    if extra_mask & (1 << pos) != 0 {
                        part_b.push(class[bit]);
                    }
                }
                if part_b.is_empty() {
                    continue;
                }
                part_b.sort_unstable();
                let labels_a = label_set(structure, &part_a);
                let labels_b = label_set(structure, &part_b);
                if label_product_in_ser(&labels_a, &labels_b) {
                    return Ok(LsosCheck::Fail(LsosViolation::Lc3 { part_a, part_b }));
                }
            }
        }
    }
    let n = structure.size();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (lx, ly) = (structure.label(x), structure.label(y));
            if !alphabet.ser(lx, ly)
                && !structure.r1().contains(x, y)
                && !structure.r2().contains(y, x)
            {
                return Ok(LsosCheck::Fail(LsosViolation::Lc4 { x, y }));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (lx, ly) = (structure.label(x), structure.label(y));
            if !alphabet.sim(lx, ly)
                && !structure.r1().contains(x, y)
                && !structure.r1().contains(y, x)
            {
                return Ok(LsosCheck::Fail(LsosViolation::Lc5 { x, y }));
            }
        }
    }
    Ok(LsosCheck::Pass)
}

fn label_set(structure: &LabeledStructure, nodes: &[usize]) -> Vec<EventId> {
    let mut labels: Vec<EventId> = nodes.iter().map(|&x| structure.label(x)).collect();
    labels.sort_unstable();
    labels.dedup();
    labels
}

/// A valid lsos-comtrace in canonical form: nodes are ordered as the
/// sorted event occurrences of any (equivalently, every) stratified
/// extension, so equality of values is label-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LsosComtrace {
    alphabet: ComtraceAlphabet,
    labels: Vec<EventId>,
    rs: RelationalStructure,
}

impl LsosComtrace {
    /// Validates and canonicalizes; on success also returns the mapping
    /// from canonical node index to the input's node index.
    pub fn new(
        structure: &LabeledStructure,
        alphabet: &ComtraceAlphabet,
    ) -> Result<(LsosComtrace, Vec<usize>), LsosError> {
        match validate_lsos(structure, alphabet)? {
            LsosCheck::Pass => {}
            LsosCheck::Fail(v) => return Err(LsosError::NotValid(v)),
        }
        Ok(canonical_form(structure, alphabet))
    }

    /// The identity element: the empty structure.
    pub fn identity(alphabet: &ComtraceAlphabet) -> LsosComtrace {
        LsosComtrace {
            alphabet: alphabet.clone(),
            labels: Vec::new(),
            rs: RelationalStructure::empty(0),
        }
    }

    /// Wraps an occurrence-level so-structure whose numbering is already
    /// canonical (as produced by the comtrace construction).
    pub(crate) fn from_canonical_sos(sos: &SoStructure, alphabet: &ComtraceAlphabet) -> LsosComtrace {
        let labels: Vec<EventId> = sos.universe().iter().map(|o| o.event).collect();
        LsosComtrace { alphabet: alphabet.clone(), labels, rs: sos.relational().clone() }
    }

    /// Wraps relations whose node order is already canonical.
    pub(crate) fn from_canonical_parts(
        alphabet: &ComtraceAlphabet,
        labels: Vec<EventId>,
        rs: RelationalStructure,
    ) -> LsosComtrace {
        debug_assert!(rs.is_so_structure());
        LsosComtrace { alphabet: alphabet.clone(), labels, rs }
    }

    pub fn alphabet(&self) -> &ComtraceAlphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[EventId] {
        &self.labels
    }

    pub fn relational(&self) -> &RelationalStructure {
        &self.rs
    }

    /// The canonical occurrence universe, in node order.
    pub fn universe(&self) -> Vec<Occurrence> {
        let mut counts: Vec<usize> = alloc::vec![0; self.alphabet.event_count()];
        self.labels
            .iter()
            .map(|&e| {
                counts[e.index()] += 1;
                Occurrence::new(e, counts[e.index()])
            })
            .collect()
    }

    /// The underlying so-structure over the canonical universe.
    pub fn so_structure(&self) -> SoStructure {
        SoStructure::from_relational(self.universe(), self.rs.clone())
            .expect("canonical lsos-comtrace satisfies the axioms")
    }

    pub fn to_labeled(&self) -> LabeledStructure {
        LabeledStructure::from_relational(self.labels.clone(), self.rs.clone())
    }

    pub fn quotient(&self) -> QuotientSoStructure {
        quotient_unchecked(&self.to_labeled())
    }
}

/// Canonicalizes a valid lsos-comtrace: picks a stratified extension,
/// reads off the occurrence numbering of its step sequence, and transports
/// the relations onto the sorted occurrence universe. The result does not
/// depend on the chosen extension.
pub fn canonicalize(
    structure: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
) -> Result<(LsosComtrace, Vec<usize>), LsosError> {
    LsosComtrace::new(structure, alphabet)
}

fn canonical_form(
    structure: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
) -> (LsosComtrace, Vec<usize>) {
    let blocks = greedy_extension(structure.relational());
    canonical_form_via_blocks(structure, alphabet, &blocks)
}

/// Canonical form computed through an explicit extension (block list of
/// node indices). Exposed within the crate so tests can verify the choice
/// of extension does not matter.
pub(crate) fn canonical_form_via_blocks(
    structure: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
    blocks: &[Vec<usize>],
) -> (LsosComtrace, Vec<usize>) {
    let mut counts: Vec<usize> = alloc::vec![0; alphabet.event_count()];
    let mut numbered: Vec<(Occurrence, usize)> = Vec::with_capacity(structure.size());
    for block in blocks {
        for &node in block {
            let e = structure.label(node);
            counts[e.index()] += 1;
            numbered.push((Occurrence::new(e, counts[e.index()]), node));
        }
    }
    debug_assert_eq!(numbered.len(), structure.size());
    numbered.sort_unstable_by_key(|&(occ, _)| occ);
    let xi: Vec<usize> = numbered.iter().map(|&(_, node)| node).collect();
    let labels: Vec<EventId> = numbered.iter().map(|&(occ, _)| occ.event).collect();
    let n = xi.len();
    let mut prec = Relation::new(n);
    let mut weak = Relation::new(n);
    for p in 0..n {
        for q in 0..n {
            if structure.r1().contains(xi[p], xi[q]) {
                prec.insert(p, q);
            }
            if structure.r2().contains(xi[p], xi[q]) {
                weak.insert(p, q);
            }
        }
    }
    let lct = LsosComtrace {
        alphabet: alphabet.clone(),
        labels,
        rs: RelationalStructure::new(prec, weak),
    };
    (lct, xi)
}

/// One stratified extension of an so-structure, computed greedily: each
/// block takes every remaining node whose weak predecessors among the
/// remaining nodes are all mutual (same cycle class).
pub(crate) fn greedy_extension(rs: &RelationalStructure) -> Vec<Vec<usize>> {
    let n = rs.size();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let block: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&x| {
                remaining
                    .iter()
                    .all(|&y| !rs.r2().contains(y, x) || rs.r2().contains(x, y))
            })
            .collect();
        assert!(!block.is_empty(), "valid so-structures always have a ready block");
        remaining.retain(|x| !block.contains(x));
        blocks.push(block);
    }
    blocks
}

/// Label-preserving isomorphism of labeled structures. When both sides
/// canonicalize as lsos-comtraces the canonical forms are compared
/// literally; otherwise a backtracking search over label-compatible
/// bijections decides.
pub fn lp_isomorphic(
    t1: &LabeledStructure,
    t2: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
) -> bool {
    if t1.size() != t2.size() {
        return false;
    }
    let mut m1 = t1.labels().to_vec();
    let mut m2 = t2.labels().to_vec();
    m1.sort_unstable();
    m2.sort_unstable();
    if m1 != m2 {
        return false;
    }
    if let (Ok((c1, _)), Ok((c2, _))) =
        (LsosComtrace::new(t1, alphabet), LsosComtrace::new(t2, alphabet))
    {
        return c1 == c2;
    }
    lp_bijection_search(t1, t2)
}

/// Composition of lsos-comtraces: disjoint union (second operand's nodes
/// renamed by offset) plus all cross pairs allowed by the serializability
/// tests, then diamond closure.
pub fn compose_lsos(t1: &LsosComtrace, t2: &LsosComtrace) -> Result<LsosComtrace, LsosError> {
    if t1.alphabet != t2.alphabet {
        return Err(LsosError::AlphabetMismatch);
    }
    let alphabet = &t1.alphabet;
    let (n1, n2) = (t1.size(), t2.size());
    let n = n1 + n2;
    let mut labels = t1.labels.clone();
    labels.extend_from_slice(&t2.labels);
    let mut prec = Relation::new(n);
    let mut weak = Relation::new(n);
    for (a, b) in t1.rs.r1().pairs() {
        prec.insert(a, b);
    }
    for (a, b) in t2.rs.r1().pairs() {
        prec.insert(a + n1, b + n1);
    }
    for (a, b) in t1.rs.r2().pairs() {
        weak.insert(a, b);
    }
    for (a, b) in t2.rs.r2().pairs() {
        weak.insert(a + n1, b + n1);
    }
    for i in 0..n1 {
        for j in n1..n {
            if !alphabet.ser(labels[i], labels[j]) {
                prec.insert(i, j);
            }
            if !alphabet.ser(labels[j], labels[i]) {
                weak.insert(i, j);
            }
        }
    }
    let closed = RelationalStructure::new(prec, weak).diamond_closure();
    let combined = LabeledStructure::from_relational(labels, closed);
    let (result, _) = LsosComtrace::new(&combined, alphabet)
        .expect("composition of valid lsos-comtraces is valid");
    Ok(result)
}
