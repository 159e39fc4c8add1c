//! Combined traces and their three equivalent representations.
//!
//! A combined trace (comtrace) is an equivalence class of step sequences
//! under the congruence generated by splitting and merging steps according
//! to a serializability relation. This crate implements the three faces of
//! that object and the mappings between them:
//!
//! - the quotient monoid of step sequences ([`monoid`]),
//! - labeled stratified order structures ([`lsos`]),
//! - combined dependency graphs ([`cdgraph`]),
//!
//! together with comtrace alphabets and their step universes
//! ([`alphabet`]), step sequences and stratified orders ([`seq`]),
//! relational structures with the diamond closure ([`structure`],
//! [`sos`]), the representation mappings ([`convert`]), and brute-force
//! reference implementations used by the property tests ([`oracle`]).
//!
//! All values are immutable after construction and all operations are
//! pure, so everything is safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alphabet;
pub mod cdgraph;
pub mod convert;
pub mod lsos;
pub mod monoid;
pub mod oracle;
pub mod rel;
pub mod seq;
pub mod sos;
pub mod structure;

pub use alphabet::{AlphabetError, ComtraceAlphabet, EventId, Step};
pub use cdgraph::{compose_cdg, non_serializable_sets, validate_cdgraph, CdCheck, CdGraph};
pub use convert::{
    cdgraph_to_lsos, comtrace_to_cdgraph, comtrace_to_lsos, lsos_to_cdgraph, lsos_to_comtrace,
    sequence_to_cdgraph, sequence_to_lsos,
};
pub use lsos::{
    canonicalize, compose_lsos, lp_isomorphic, quotient, validate_lsos, LabeledStructure,
    LsosCheck, LsosComtrace, QuotientSoStructure,
};
pub use monoid::{
    comtrace, comtrace_sos, concat, equivalent, induced_relations, rewrite_neighbors, Comtrace,
    MonoidError,
};
pub use rel::Relation;
pub use seq::{
    enumerate_occurrences, order_of_sequence, parse_step_sequence, sequence_of_order,
    EnumeratedStepSequence, Occurrence, OrderError, ParseError, StepSequence, StratifiedOrder,
};
pub use sos::{intersect_extensions, SoStructure, SosError, DEFAULT_EXTENSION_BOUND};
pub use structure::{RelationalStructure, SoViolation};
