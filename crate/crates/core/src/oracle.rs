//! Brute-force reference implementations and seeded random generators for
//! the property tests. Deliberately simple and kept independent of the
//! optimized enumeration paths they are used to check.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{ComtraceAlphabet, Step};
use crate::lsos::LabeledStructure;
use crate::seq::{Occurrence, StepSequence, StratifiedOrder};
use crate::sos::SoStructure;

/// Bound on universe size for exhaustive ordered-partition enumeration.
pub const ORACLE_PARTITION_BOUND: usize = 9;

/// Bound on universe size for the isomorphism backtracking search.
pub const ORACLE_LP_BOUND: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundExceeded {
    pub n: usize,
    pub bound: usize,
}

impl core::fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "universe of {} exceeds the oracle bound of {}", self.n, self.bound)
    }
}

impl core::error::Error for BoundExceeded {}

/// Every stratified order on the universe, i.e. every ordered set
/// partition, by direct recursive enumeration.
pub fn all_stratified_orders(
    universe: &[Occurrence],
) -> Result<Vec<StratifiedOrder>, BoundExceeded> {
    let mut elems = universe.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let n = elems.len();
    if n > ORACLE_PARTITION_BOUND {
        return Err(BoundExceeded { n, bound: ORACLE_PARTITION_BOUND });
    }
    let mut result = Vec::new();
    let mut blocks: Vec<Vec<Occurrence>> = Vec::new();
    enumerate_partitions(&elems, &mut blocks, &mut result);
    result.sort_unstable();
    Ok(result)
}

fn enumerate_partitions(
    remaining: &[Occurrence],
    blocks: &mut Vec<Vec<Occurrence>>,
    result: &mut Vec<StratifiedOrder>,
) {
    if remaining.is_empty() {
        result.push(
            StratifiedOrder::from_blocks(blocks.clone()).expect("blocks are disjoint by construction"),
        );
        return;
    }
    for mask in 1u64..(1u64 << remaining.len()) {
        let block: Vec<Occurrence> = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &o)| o)
            .collect();
        let rest: Vec<Occurrence> = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) == 0)
            .map(|(_, &o)| o)
            .collect();
        blocks.push(block);
        enumerate_partitions(&rest, blocks, result);
        blocks.pop();
    }
}

/// Stratified extensions by filtering every stratified order with a
/// literal transcription of the extension conditions.
pub fn brute_extensions(s: &SoStructure) -> Result<Vec<StratifiedOrder>, BoundExceeded> {
    let orders = all_stratified_orders(s.universe())?;
    Ok(orders
        .into_iter()
        .filter(|order| {
            let prec_ok = s
                .prec_pairs()
                .into_iter()
                .all(|(a, b)| order.pos(a).unwrap() < order.pos(b).unwrap());
            let weak_ok = s
                .weak_pairs()
                .into_iter()
                .all(|(a, b)| a != b && order.pos(a).unwrap() <= order.pos(b).unwrap());
            prec_ok && weak_ok
        })
        .collect())
}

/// Label-preserving isomorphism by exhaustive backtracking.
pub fn brute_lp_isomorphic(
    t1: &LabeledStructure,
    t2: &LabeledStructure,
) -> Result<bool, BoundExceeded> {
    let n = t1.size().max(t2.size());
    if n > ORACLE_LP_BOUND {
        return Err(BoundExceeded { n, bound: ORACLE_LP_BOUND });
    }
    Ok(lp_bijection_search(t1, t2))
}

/// Backtracking search for a label-preserving bijection matching both
/// relations exactly.
pub(crate) fn lp_bijection_search(t1: &LabeledStructure, t2: &LabeledStructure) -> bool {
    if t1.size() != t2.size() {
        return false;
    }
    let n = t1.size();
    let mut image: Vec<Option<usize>> = alloc::vec![None; n];
    let mut used: Vec<bool> = alloc::vec![false; n];
    assign(t1, t2, 0, &mut image, &mut used)
}

fn assign(
    t1: &LabeledStructure,
    t2: &LabeledStructure,
    node: usize,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let n = t1.size();
    if node == n {
        return true;
    }
    'candidate: for cand in 0..n {
        if used[cand] || t2.label(cand) != t1.label(node) {
            continue;
        }
        for prev in 0..node {
            let prev_image = image[prev].unwrap();
            if t1.r1().contains(prev, node) != t2.r1().contains(prev_image, cand)
                || t1.r1().contains(node, prev) != t2.r1().contains(cand, prev_image)
                || t1.r2().contains(prev, node) != t2.r2().contains(prev_image, cand)
                || t1.r2().contains(node, prev) != t2.r2().contains(cand, prev_image)
            {
                continue 'candidate;
            }
        }
        if t1.r1().contains(node, node) != t2.r1().contains(cand, cand)
            || t1.r2().contains(node, node) != t2.r2().contains(cand, cand)
        {
            continue;
        }
        image[node] = Some(cand);
        used[cand] = true;
        if assign(t1, t2, node + 1, image, used) {
            return true;
        }
        image[node] = None;
        used[cand] = false;
    }
    false
}

/// Size limits for the random instance generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RandomBounds {
    pub max_events: usize,
    pub max_len: usize,
    pub max_step: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_events: 4, max_len: 4, max_step: 3 }
    }
}

const EVENT_POOL: [&str; 4] = ["a", "b", "c", "d"];

/// A seeded random alphabet and a valid step sequence over it. The output
/// is a pure function of the seed and bounds.
pub fn random_instances(seed: u64, bounds: RandomBounds) -> (ComtraceAlphabet, StepSequence) {
    assert!((1..=4).contains(&bounds.max_events), "event bound out of range");
    assert!(bounds.max_len <= 4, "length bound out of range");
    assert!((1..=3).contains(&bounds.max_step), "step bound out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let k = rng.gen_range(1..=bounds.max_events);
    let names = &EVENT_POOL[..k];
    let mut sim: Vec<(&str, &str)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(0.5) {
                sim.push((names[i], names[j]));
            }
        }
    }
    let mut ser: Vec<(&str, &str)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let simultaneous = sim.contains(&(names[i], names[j])) || sim.contains(&(names[j], names[i]));
            if simultaneous && rng.gen_bool(0.5) {
                ser.push((names[i], names[j]));
            }
        }
    }
    let alphabet =
        ComtraceAlphabet::build(names, &sim, &ser).expect("generated alphabets are valid");

    let len = rng.gen_range(0..=bounds.max_len);
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let target = rng.gen_range(1..=bounds.max_step);
        let mut candidates: Vec<usize> = (0..k).collect();
        // Fisher-Yates shuffle driven by the seeded generator.
        for i in (1..candidates.len()).rev() {
            let j = rng.gen_range(0..=i);
            candidates.swap(i, j);
        }
        let mut chosen = Vec::new();
        for idx in candidates {
            if chosen.len() == target {
                break;
            }
            let e = alphabet.event(names[idx]).unwrap();
            if chosen.iter().all(|&sel| alphabet.sim(sel, e)) {
                chosen.push(e);
            }
        }
        steps.push(Step::new(chosen));
    }
    (alphabet, StepSequence::new(steps))
}
