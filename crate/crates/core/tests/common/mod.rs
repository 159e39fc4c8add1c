//! Shared generators for the law suites.
#![allow(dead_code)]

use comtrace_core::oracle::{all_stratified_orders, random_instances, RandomBounds};
use comtrace_core::{
    intersect_extensions, ComtraceAlphabet, Occurrence, Relation, RelationalStructure,
    SoStructure, StepSequence,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Occurrence count of a step sequence.
pub fn occurrence_count(u: &StepSequence) -> usize {
    u.steps().iter().map(|s| s.len()).sum()
}

/// The first `count` seeded instances whose occurrence universe is at most
/// `max_occurrences`. Seeds iterate from zero, so the set is fixed.
pub fn instances(count: usize, max_occurrences: usize) -> Vec<(u64, ComtraceAlphabet, StepSequence)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let (theta, u) = random_instances(seed, RandomBounds::default());
        if occurrence_count(&u) <= max_occurrences {
            out.push((seed, theta, u));
        }
        seed += 1;
    }
    out
}

/// A fresh occurrence universe of `n` elements over a throwaway alphabet.
pub fn plain_universe(n: usize) -> (ComtraceAlphabet, Vec<Occurrence>) {
    let theta = ComtraceAlphabet::build::<&str>(&["x"], &[], &[]).unwrap();
    let x = theta.event("x").unwrap();
    let universe = (1..=n).map(|i| Occurrence::new(x, i)).collect();
    (theta, universe)
}

/// A random relational structure on `0..n` with the given edge density.
pub fn random_structure(rng: &mut ChaCha8Rng, n: usize, density: f64) -> RelationalStructure {
    let mut r1 = Relation::new(n);
    let mut r2 = Relation::new(n);
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                r1.insert(a, b);
            }
            if rng.gen_bool(density) {
                r2.insert(a, b);
            }
        }
    }
    RelationalStructure::new(r1, r2)
}

/// A random so-structure on a plain universe, built as the intersection of
/// a random nonempty set of stratified orders. Intersections of stratified
/// orders always satisfy the axioms.
pub fn random_so_structure(rng: &mut ChaCha8Rng, n: usize) -> SoStructure {
    let (_, universe) = plain_universe(n);
    let all = all_stratified_orders(&universe).unwrap();
    let mut chosen: Vec<_> = all.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
    if chosen.is_empty() {
        let pick = rng.gen_range(0..all.len());
        chosen.push(all[pick].clone());
    }
    intersect_extensions(&chosen).unwrap()
}
