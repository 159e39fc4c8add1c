//! The representation mappings between the three faces of a comtrace:
//! step-sequence equivalence classes, lsos-comtraces, and cd-graphs.
//! Every output is in canonical form, so the representation theorems hold
//! as literal equalities.

use alloc::collections::BTreeSet;

use crate::cdgraph::CdGraph;
use crate::lsos::LsosComtrace;
use crate::monoid::{comtrace_sos, induced_relations, Comtrace};
use crate::seq::{sequence_of_order, StepSequence};
use crate::sos::{SosError, DEFAULT_EXTENSION_BOUND};
use crate::structure::RelationalStructure;

/// Comtrace to lsos-comtrace: the diamond-closed induced relations of any
/// member, labeled by the occurrence labeling. Member choice does not
/// matter.
pub fn comtrace_to_lsos(t: &Comtrace) -> LsosComtrace {
    sequence_to_lsos(t.canonical(), t.alphabet())
}

/// The lsos-comtrace of the class of `u`, computed from `u` directly.
pub fn sequence_to_lsos(u: &StepSequence, alphabet: &crate::ComtraceAlphabet) -> LsosComtrace {
    LsosComtrace::from_canonical_sos(&comtrace_sos(u, alphabet), alphabet)
}

/// Lsos-comtrace to comtrace: the label images of all stratified
/// extensions, with the default universe bound.
pub fn lsos_to_comtrace(t: &LsosComtrace) -> Result<Comtrace, SosError> {
    lsos_to_comtrace_bounded(t, DEFAULT_EXTENSION_BOUND)
}

pub fn lsos_to_comtrace_bounded(t: &LsosComtrace, bound: usize) -> Result<Comtrace, SosError> {
    let extensions = t.so_structure().stratified_extensions_bounded(bound)?;
    let members: BTreeSet<StepSequence> =
        extensions.iter().map(sequence_of_order).collect();
    Ok(Comtrace::from_member_set(t.alphabet(), members))
}

/// Comtrace to cd-graph: the unclosed induced relations of any member.
/// Member choice does not matter.
pub fn comtrace_to_cdgraph(t: &Comtrace) -> CdGraph {
    sequence_to_cdgraph(t.canonical(), t.alphabet())
}

/// The cd-graph of the class of `u`, computed from `u` directly.
pub fn sequence_to_cdgraph(u: &StepSequence, alphabet: &crate::ComtraceAlphabet) -> CdGraph {
    let (universe, rs) = induced_relations(u, alphabet);
    let labels = universe.iter().map(|o| o.event).collect();
    let (solid, dashed) = rs.into_parts();
    CdGraph::from_canonical_parts(alphabet, labels, solid, dashed)
}

/// Cd-graph to lsos-comtrace: the diamond closure, labels preserved.
pub fn cdgraph_to_lsos(d: &CdGraph) -> LsosComtrace {
    let closed =
        RelationalStructure::new(d.solid().clone(), d.dashed().clone()).diamond_closure();
    LsosComtrace::from_canonical_parts(d.alphabet(), d.labels().to_vec(), closed)
}

/// Lsos-comtrace to cd-graph, by way of the comtrace.
pub fn lsos_to_cdgraph(t: &LsosComtrace) -> Result<CdGraph, SosError> {
    lsos_to_cdgraph_bounded(t, DEFAULT_EXTENSION_BOUND)
}

pub fn lsos_to_cdgraph_bounded(t: &LsosComtrace, bound: usize) -> Result<CdGraph, SosError> {
    let ct = lsos_to_comtrace_bounded(t, bound)?;
    Ok(comtrace_to_cdgraph(&ct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::ComtraceAlphabet;
    use crate::monoid::comtrace;
    use crate::seq::{parse_step_sequence, Occurrence};

    fn theta1() -> ComtraceAlphabet {
        ComtraceAlphabet::build(&["a", "b", "c"], &[("b", "c")], &[("b", "c")]).unwrap()
    }

    fn theta2() -> ComtraceAlphabet {
        ComtraceAlphabet::build(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c"), ("b", "c")],
            &[("a", "b"), ("b", "a"), ("a", "c")],
        )
        .unwrap()
    }

    fn expand(text: &str, theta: &ComtraceAlphabet) -> Comtrace {
        comtrace(&parse_step_sequence(text, theta).unwrap(), theta).unwrap()
    }

    #[test]
    fn lsos_of_two_member_comtrace() {
        let theta = theta1();
        let lct = comtrace_to_lsos(&expand("{a}{b,c}", &theta));
        let occ = |name: &str, k: usize| Occurrence::new(theta.event(name).unwrap(), k);
        let (a1, b1, c1) = (occ("a", 1), occ("b", 1), occ("c", 1));
        assert_eq!(lct.universe(), alloc::vec![a1, b1, c1]);
        let s = lct.so_structure();
        assert!(s.prec(a1, b1) && s.prec(a1, c1));
        assert_eq!(s.prec_pairs().len(), 2);
        // b may serialize before c but not conversely, so b is weakly
        // before c and not the other way around
        assert!(s.weak(b1, c1));
        assert!(!s.weak(c1, b1));
        assert_eq!(s.weak_pairs().len(), 3);
    }

    #[test]
    fn identities_map_to_identities() {
        let theta = theta1();
        let id_ct = Comtrace::identity(&theta);
        let id_lct = LsosComtrace::identity(&theta);
        let id_cdg = CdGraph::identity(&theta);
        assert_eq!(comtrace_to_lsos(&id_ct), id_lct);
        assert_eq!(lsos_to_comtrace(&id_lct).unwrap(), id_ct);
        assert_eq!(comtrace_to_cdgraph(&id_ct), id_cdg);
        assert_eq!(cdgraph_to_lsos(&id_cdg), id_lct);
        assert_eq!(lsos_to_cdgraph(&id_lct).unwrap(), id_cdg);
    }

    #[test]
    fn extension_route_agrees_with_rewrite_route() {
        let theta = theta2();
        let ct = expand("{a,b}{c}{b,c}", &theta);
        let recovered = lsos_to_comtrace(&comtrace_to_lsos(&ct)).unwrap();
        assert_eq!(recovered, ct);
        assert_eq!(recovered.len(), 4);
    }

    #[test]
    fn cdgraph_is_member_independent() {
        let theta = theta2();
        let ct = expand("{a,b}{c}{b,c}", &theta);
        let from_canonical = comtrace_to_cdgraph(&ct);
        for member in ct.members() {
            let singleton = comtrace(member, &theta).unwrap();
            assert_eq!(comtrace_to_cdgraph(&singleton), from_canonical);
        }
    }

    #[test]
    fn closure_of_example_graph_is_example_lsos() {
        let theta = theta2();
        let ct = expand("{a,b}{c}{b,c}", &theta);
        assert_eq!(cdgraph_to_lsos(&comtrace_to_cdgraph(&ct)), comtrace_to_lsos(&ct));
    }

    #[test]
    fn representation_round_trips_on_examples() {
        for (theta, text) in [
            (theta1(), "{a}{b,c}"),
            (theta1(), "{c}{a}{b}{b,c}"),
            (theta2(), "{a,b}{c}{b,c}"),
            (theta2(), "{a,b,c}{a}"),
        ] {
            let ct = expand(text, &theta);
            let lct = comtrace_to_lsos(&ct);
            assert_eq!(lsos_to_comtrace(&lct).unwrap(), ct);
            assert_eq!(comtrace_to_lsos(&lsos_to_comtrace(&lct).unwrap()), lct);
            let cdg = comtrace_to_cdgraph(&ct);
            assert_eq!(lsos_to_cdgraph(&cdgraph_to_lsos(&cdg)).unwrap(), cdg);
            assert_eq!(cdgraph_to_lsos(&lsos_to_cdgraph(&lct).unwrap()), lct);
        }
    }
}
