//! Text renderings of library values: step sequences, comtrace member
//! lists, structure files, quotients, and validation verdicts.

use comtrace_core::cdgraph::CdViolation;
use comtrace_core::lsos::LsosViolation;
use comtrace_core::{
    CdGraph, Comtrace, ComtraceAlphabet, Occurrence, QuotientSoStructure, SoStructure,
    StepSequence,
};

/// The empty sequence prints as a sentinel, since empty output is useless
/// in a shell.
pub fn sequence_line(seq: &StepSequence, alphabet: &ComtraceAlphabet) -> String {
    if seq.is_empty() {
        "(empty)".to_string()
    } else {
        seq.text(alphabet)
    }
}

/// One member per line in canonical order, the canonical member first and
/// marked with `* `.
pub fn comtrace_lines(ct: &Comtrace) -> String {
    let mut out = String::new();
    for (i, member) in ct.members().iter().enumerate() {
        if i == 0 {
            out.push_str("* ");
        }
        out.push_str(&sequence_line(member, ct.alphabet()));
        out.push('\n');
    }
    out
}

/// The structure-file form of an so-structure: `node`, `prec`, and `weak`
/// lines, with `weak` listing only the pairs not already causal.
pub fn sos_text(s: &SoStructure, alphabet: &ComtraceAlphabet) -> String {
    let mut out = String::new();
    for &occ in s.universe() {
        out.push_str(&format!(
            "node {} {}\n",
            occ.text(alphabet),
            alphabet.name(occ.event)
        ));
    }
    for (a, b) in s.prec_pairs() {
        out.push_str(&format!("prec {} {}\n", a.text(alphabet), b.text(alphabet)));
    }
    for (a, b) in s.weak_pairs() {
        if !s.prec(a, b) {
            out.push_str(&format!("weak {} {}\n", a.text(alphabet), b.text(alphabet)));
        }
    }
    out
}

/// The structure-file form of a cd-graph: `node`, `solid`, and `dashed`
/// lines. Both relations are written in full; they are independent.
pub fn cdg_text(d: &CdGraph) -> String {
    let alphabet = d.alphabet();
    let universe = d.universe();
    let mut out = String::new();
    for &occ in &universe {
        out.push_str(&format!(
            "node {} {}\n",
            occ.text(alphabet),
            alphabet.name(occ.event)
        ));
    }
    for (a, b) in d.solid().pairs() {
        out.push_str(&format!(
            "solid {} {}\n",
            universe[a].text(alphabet),
            universe[b].text(alphabet)
        ));
    }
    for (a, b) in d.dashed().pairs() {
        out.push_str(&format!(
            "dashed {} {}\n",
            universe[a].text(alphabet),
            universe[b].text(alphabet)
        ));
    }
    out
}

/// The quotient as `class` lines (members in braces) followed by `prec`
/// and `weak` lines over class indices.
pub fn quotient_text(
    q: &QuotientSoStructure,
    universe: &[Occurrence],
    alphabet: &ComtraceAlphabet,
) -> String {
    let mut out = String::new();
    for (i, class) in q.classes().iter().enumerate() {
        let members: Vec<String> =
            class.iter().map(|&n| universe[n].text(alphabet)).collect();
        out.push_str(&format!("class {i} {{{}}}\n", members.join(",")));
    }
    for (a, b) in q.prec().pairs() {
        out.push_str(&format!("prec {a} {b}\n"));
    }
    for (a, b) in q.weak().pairs() {
        if !q.prec().contains(a, b) {
            out.push_str(&format!("weak {a} {b}\n"));
        }
    }
    out
}

fn name_list(nodes: &[usize], names: &[String]) -> String {
    let named: Vec<&str> = nodes.iter().map(|&n| names[n].as_str()).collect();
    named.join(",")
}

/// Human-readable verdict witness with the file's node ids substituted in.
pub fn lsos_violation_text(v: &LsosViolation, names: &[String]) -> String {
    match v {
        LsosViolation::Lc1 { class_a, class_b } => format!(
            "LC1: classes {{{}}} and {{{}}} are covering and causally ordered but fully serializable",
            name_list(class_a, names),
            name_list(class_b, names)
        ),
        LsosViolation::Lc2 { class_a, class_b } => format!(
            "LC2: classes {{{}}} and {{{}}} are covering but serializable in reverse",
            name_list(class_a, names),
            name_list(class_b, names)
        ),
        LsosViolation::Lc3 { part_a, part_b } => format!(
            "LC3: class splits into fully serializable parts {{{}}} and {{{}}}",
            name_list(part_a, names),
            name_list(part_b, names)
        ),
        LsosViolation::Lc4 { x, y } => format!(
            "LC4: nodes {} and {} are not serializable but unordered",
            names[*x], names[*y]
        ),
        LsosViolation::Lc5 { x, y } => format!(
            "LC5: nodes {} and {} are not simultaneous but causally incomparable",
            names[*x], names[*y]
        ),
    }
}

pub fn so_violation_text(v: &comtrace_core::SoViolation, names: &[String]) -> String {
    use comtrace_core::SoViolation::*;
    match *v {
        S1 { x } => format!("S1/irreflexivity at node {}", names[x]),
        S2 { x, y } => format!("S2 fails for nodes {} and {}", names[x], names[y]),
        S3 { x, y, z } => {
            format!("S3 fails for nodes {}, {}, {}", names[x], names[y], names[z])
        }
        S4 { x, y, z } => {
            format!("S4 fails for nodes {}, {}, {}", names[x], names[y], names[z])
        }
    }
}

pub fn cd_violation_text(v: &CdViolation, names: &[String]) -> String {
    match v {
        CdViolation::ReflexiveSolid { x } => {
            format!("reflexive solid edge at node {}", names[*x])
        }
        CdViolation::ReflexiveDashed { x } => {
            format!("reflexive dashed edge at node {}", names[*x])
        }
        CdViolation::ClosureNotSo(v) => format!("closure is not an so-structure: {v}"),
        CdViolation::Cd1 { x, y } => format!(
            "CD1: nodes {} and {} are not simultaneous but lack a solid edge",
            names[*x], names[*y]
        ),
        CdViolation::Cd2 { x, y } => format!(
            "CD2: nodes {} and {} are not serializable but lack the required edge",
            names[*x], names[*y]
        ),
        CdViolation::Cd3 { x, y } => format!(
            "CD3: solid edge from {} to {} joins a serializable pair",
            names[*x], names[*y]
        ),
        CdViolation::Cd4 { x, y } => format!(
            "CD4: dashed edge from {} to {} joins a reverse-serializable pair",
            names[*x], names[*y]
        ),
    }
}
