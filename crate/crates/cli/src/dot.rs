//! DOT exports. Solid edges carry causality (or the solid arrows of a
//! cd-graph), dashed edges the weak-only pairs (or the dashed-only
//! arrows). Quotient nodes are labeled with their event sets.

use comtrace_core::{CdGraph, ComtraceAlphabet, QuotientSoStructure, SoStructure};

struct DotBuilder {
    out: String,
}

impl DotBuilder {
    fn new(name: &str) -> Self {
        DotBuilder { out: format!("digraph {name} {{\n") }
    }

    fn node(&mut self, id: &str, label: Option<&str>) {
        match label {
            Some(label) => self.out.push_str(&format!("  \"{id}\" [label=\"{label}\"];\n")),
            None => self.out.push_str(&format!("  \"{id}\";\n")),
        }
    }

    fn edge(&mut self, from: &str, to: &str, dashed: bool) {
        if dashed {
            self.out.push_str(&format!("  \"{from}\" -> \"{to}\" [style=dashed];\n"));
        } else {
            self.out.push_str(&format!("  \"{from}\" -> \"{to}\";\n"));
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

pub fn sos_dot(s: &SoStructure, alphabet: &ComtraceAlphabet) -> String {
    let mut dot = DotBuilder::new("sos");
    for &occ in s.universe() {
        dot.node(&occ.text(alphabet), None);
    }
    for (a, b) in s.prec_pairs() {
        dot.edge(&a.text(alphabet), &b.text(alphabet), false);
    }
    for (a, b) in s.weak_pairs() {
        if !s.prec(a, b) {
            dot.edge(&a.text(alphabet), &b.text(alphabet), true);
        }
    }
    dot.finish()
}

pub fn cdg_dot(d: &CdGraph) -> String {
    let alphabet = d.alphabet();
    let universe = d.universe();
    let mut dot = DotBuilder::new("cdg");
    for &occ in &universe {
        dot.node(&occ.text(alphabet), None);
    }
    // solid takes precedence where an arrow is in both relations
    for (a, b) in d.solid().pairs() {
        dot.edge(&universe[a].text(alphabet), &universe[b].text(alphabet), false);
    }
    for (a, b) in d.dashed().pairs() {
        if !d.solid().contains(a, b) {
            dot.edge(&universe[a].text(alphabet), &universe[b].text(alphabet), true);
        }
    }
    dot.finish()
}

pub fn quotient_dot(q: &QuotientSoStructure, alphabet: &ComtraceAlphabet) -> String {
    let mut dot = DotBuilder::new("quotient");
    for (i, labels) in q.class_labels().iter().enumerate() {
        let names: Vec<&str> = labels.iter().map(|&e| alphabet.name(e)).collect();
        dot.node(&format!("c{i}"), Some(&names.join(",")));
    }
    for (a, b) in q.prec().pairs() {
        dot.edge(&format!("c{a}"), &format!("c{b}"), false);
    }
    for (a, b) in q.weak().pairs() {
        if !q.prec().contains(a, b) {
            dot.edge(&format!("c{a}"), &format!("c{b}"), true);
        }
    }
    dot.finish()
}
