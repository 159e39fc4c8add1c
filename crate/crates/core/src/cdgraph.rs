//! Combined dependency graphs: the reduced graph representation of a
//! comtrace, with validation, non-serializable set extraction, and
//! composition.

use alloc::vec::Vec;

use crate::alphabet::{ComtraceAlphabet, EventId};
use crate::lsos::{LabeledStructure, LsosComtrace, LsosError};
use crate::rel::{strongly_connected_components, Relation};
use crate::seq::Occurrence;
use crate::structure::SoViolation;

/// First failed cd-graph condition, with witness node indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CdViolation {
    ReflexiveSolid { x: usize },
    ReflexiveDashed { x: usize },
    /// The diamond closure is not an so-structure.
    ClosureNotSo(SoViolation),
    /// Non-simultaneous labels without a solid edge either way.
    Cd1 { x: usize, y: usize },
    /// Non-serializable labels without a forward solid or backward dashed
    /// edge.
    Cd2 { x: usize, y: usize },
    /// A solid edge between serializable labels.
    Cd3 { x: usize, y: usize },
    /// A dashed edge whose reversed label pair is serializable.
    Cd4 { x: usize, y: usize },
}

impl core::fmt::Display for CdViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CdViolation::ReflexiveSolid { x } => write!(f, "reflexive solid edge at node {x}"),
            CdViolation::ReflexiveDashed { x } => write!(f, "reflexive dashed edge at node {x}"),
            CdViolation::ClosureNotSo(v) => write!(f, "closure is not an so-structure: {v}"),
            CdViolation::Cd1 { x, y } => write!(f, "CD1 violated by nodes {x} and {y}"),
            CdViolation::Cd2 { x, y } => write!(f, "CD2 violated by nodes {x} and {y}"),
            CdViolation::Cd3 { x, y } => write!(f, "CD3 violated by nodes {x} and {y}"),
            CdViolation::Cd4 { x, y } => write!(f, "CD4 violated by nodes {x} and {y}"),
        }
    }
}

/// Validation verdict for cd-graphs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CdCheck {
    Pass,
    Fail(CdViolation),
}

impl CdCheck {
    pub fn is_pass(&self) -> bool {
        matches!(self, CdCheck::Pass)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CdError {
    LabelOutOfRange { node: usize },
    NotValid(CdViolation),
    /// Canonicalization hit the LC3 class-size bound while closing.
    ClassTooLarge { size: usize, bound: usize },
    AlphabetMismatch,
}

impl core::fmt::Display for CdError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CdError::LabelOutOfRange { node } => {
                write!(f, "node {node} is labeled outside the alphabet")
            }
            CdError::NotValid(v) => write!(f, "not a valid cd-graph: {v}"),
            CdError::ClassTooLarge { size, bound } => {
                write!(f, "cycle class of size {size} exceeds the bound of {bound}")
            }
            CdError::AlphabetMismatch => write!(f, "operands use different alphabets"),
        }
    }
}

impl core::error::Error for CdError {}

/// Checks the cd-graph conditions in verdict order: reflexive edges, the
/// closure axioms, then CD1-CD4.
pub fn validate_cdgraph(
    graph: &LabeledStructure,
    alphabet: &ComtraceAlphabet,
) -> Result<CdCheck, CdError> {
    for (node, label) in graph.labels().iter().enumerate() {
        if label.index() >= alphabet.event_count() {
            return Err(CdError::LabelOutOfRange { node });
        }
    }
    let n = graph.size();
    let (solid, dashed) = (graph.r1(), graph.r2());
    for x in 0..n {
        if solid.contains(x, x) {
            return Ok(CdCheck::Fail(CdViolation::ReflexiveSolid { x }));
        }
        if dashed.contains(x, x) {
            return Ok(CdCheck::Fail(CdViolation::ReflexiveDashed { x }));
        }
    }
    if let Err(v) = graph.relational().diamond_closure().check_so_axioms() {
        return Ok(CdCheck::Fail(CdViolation::ClosureNotSo(v)));
    }
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (lx, ly) = (graph.label(x), graph.label(y));
            if !alphabet.sim(lx, ly) && !solid.contains(x, y) && !solid.contains(y, x) {
                return Ok(CdCheck::Fail(CdViolation::Cd1 { x, y }));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (lx, ly) = (graph.label(x), graph.label(y));
            if !alphabet.ser(lx, ly) && !solid.contains(x, y) && !dashed.contains(y, x) {
                return Ok(CdCheck::Fail(CdViolation::Cd2 { x, y }));
            }
        }
    }
    for (x, y) in solid.pairs() {
        if alphabet.ser(graph.label(x), graph.label(y)) {
            return Ok(CdCheck::Fail(CdViolation::Cd3 { x, y }));
        }
    }
    for (x, y) in dashed.pairs() {
        if alphabet.ser(graph.label(y), graph.label(x)) {
            return Ok(CdCheck::Fail(CdViolation::Cd4 { x, y }));
        }
    }
    Ok(CdCheck::Pass)
}

/// A valid cd-graph in canonical form: nodes ordered as the sorted event
/// occurrences of the comtrace it represents, so equality of values is
/// label-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CdGraph {
    alphabet: ComtraceAlphabet,
    labels: Vec<EventId>,
    solid: Relation,
    dashed: Relation,
}

impl CdGraph {
    /// Validates and canonicalizes; on success also returns the mapping
    /// from canonical node index to the input's node index.
    ///
    /// Canonical node order is obtained from the diamond closure: the
    /// closure is an lsos-comtrace, its canonical form fixes the
    /// occurrence numbering, and the graph's edges are transported along
    /// the same renaming.
    pub fn new(
        graph: &LabeledStructure,
        alphabet: &ComtraceAlphabet,
    ) -> Result<(CdGraph, Vec<usize>), CdError> {
        match validate_cdgraph(graph, alphabet)? {
            CdCheck::Pass => {}
            CdCheck::Fail(v) => return Err(CdError::NotValid(v)),
        }
        let closed = LabeledStructure::from_relational(
            graph.labels().to_vec(),
            graph.relational().diamond_closure(),
        );
        let (_, xi) = LsosComtrace::new(&closed, alphabet).map_err(|e| match e {
            LsosError::ClassTooLarge { size, bound } => CdError::ClassTooLarge { size, bound },
            // validity of the closure follows from the cd-graph conditions
            other => unreachable!("closure of a valid cd-graph is a valid lsos-comtrace: {other}"),
        })?;
        let n = xi.len();
        let labels: Vec<EventId> = xi.iter().map(|&node| graph.label(node)).collect();
        let mut solid = Relation::new(n);
        let mut dashed = Relation::new(n);
        for p in 0..n {
            for q in 0..n {
                if graph.r1().contains(xi[p], xi[q]) {
                    solid.insert(p, q);
                }
                if graph.r2().contains(xi[p], xi[q]) {
                    dashed.insert(p, q);
                }
            }
        }
        Ok((CdGraph { alphabet: alphabet.clone(), labels, solid, dashed }, xi))
    }

    /// The identity element: the empty graph.
    pub fn identity(alphabet: &ComtraceAlphabet) -> CdGraph {
        CdGraph {
            alphabet: alphabet.clone(),
            labels: Vec::new(),
            solid: Relation::new(0),
            dashed: Relation::new(0),
        }
    }

    /// Wraps relations whose node order is already canonical (as produced
    /// by the induced relations of a step sequence).
    pub(crate) fn from_canonical_parts(
        alphabet: &ComtraceAlphabet,
        labels: Vec<EventId>,
        solid: Relation,
        dashed: Relation,
    ) -> CdGraph {
        let graph = CdGraph { alphabet: alphabet.clone(), labels, solid, dashed };
        debug_assert!(validate_cdgraph(&graph.to_labeled(), alphabet)
            .is_ok_and(|check| check.is_pass()));
        graph
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

    pub fn label(&self, node: usize) -> EventId {
        self.labels[node]
    }

    /// The causal arrows.
    pub fn solid(&self) -> &Relation {
        &self.solid
    }

    /// The weak arrows.
    pub fn dashed(&self) -> &Relation {
        &self.dashed
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

    pub fn to_labeled(&self) -> LabeledStructure {
        LabeledStructure::new(self.labels.clone(), self.solid.clone(), self.dashed.clone())
    }
}

/// The non-serializable sets of a cd-graph: the strongly connected
/// components of its dashed-arrow digraph, as occurrence sets.
pub fn non_serializable_sets(graph: &CdGraph) -> Vec<Vec<Occurrence>> {
    let universe = graph.universe();
    strongly_connected_components(graph.dashed())
        .into_iter()
        .map(|comp| comp.into_iter().map(|i| universe[i]).collect())
        .collect()
}

/// Composition of cd-graphs: disjoint union plus the serializability-
/// filtered cross arrows. No closure is applied.
pub fn compose_cdg(d1: &CdGraph, d2: &CdGraph) -> Result<CdGraph, CdError> {
    if d1.alphabet != d2.alphabet {
        return Err(CdError::AlphabetMismatch);
    }
    let alphabet = &d1.alphabet;
    let (n1, n2) = (d1.size(), d2.size());
    let n = n1 + n2;
    let mut labels = d1.labels.clone();
    labels.extend_from_slice(&d2.labels);
    let mut solid = Relation::new(n);
    let mut dashed = Relation::new(n);
    for (a, b) in d1.solid.pairs() {
        solid.insert(a, b);
    }
    for (a, b) in d2.solid.pairs() {
        solid.insert(a + n1, b + n1);
    }
    for (a, b) in d1.dashed.pairs() {
        dashed.insert(a, b);
    }
    for (a, b) in d2.dashed.pairs() {
        dashed.insert(a + n1, b + n1);
    }
    for i in 0..n1 {
        for j in n1..n {
            if !alphabet.ser(labels[i], labels[j]) {
                solid.insert(i, j);
            }
            if !alphabet.ser(labels[j], labels[i]) {
                dashed.insert(i, j);
            }
        }
    }
    let combined = LabeledStructure::new(labels, solid, dashed);
    let (graph, _) = CdGraph::new(&combined, alphabet)?;
    Ok(graph)
}
