//! Stratified order structures over event-occurrence universes: extension
//! enumeration, the extension test, and the intersection reconstruction.

use alloc::vec::Vec;

use crate::rel::{strongly_connected_components, Relation};
use crate::seq::{Occurrence, StratifiedOrder};
use crate::structure::{
    blocks_extend, enumerate_extensions, position_array, RelationalStructure, SoViolation,
};

/// Default bound on universe size for extension enumeration. The ordered
/// Bell number of 9 is about 1.5 million, the practical desk-scale limit.
pub const DEFAULT_EXTENSION_BOUND: usize = 9;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SosError {
    /// The relations violate an so-structure axiom (witnesses are indices
    /// into the universe).
    Axiom(SoViolation),
    /// A relation pair mentions an element outside the universe.
    OutsideUniverse(Occurrence),
    /// Operands do not share a universe.
    UniverseMismatch,
    /// Intersection of an empty set of orders.
    EmptyOrderSet,
    /// Universe too large for extension enumeration.
    TooManyNodes { n: usize, bound: usize },
}

impl core::fmt::Display for SosError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SosError::Axiom(v) => write!(f, "{v}"),
            SosError::OutsideUniverse(_) => write!(f, "relation pair outside the universe"),
            SosError::UniverseMismatch => write!(f, "universe mismatch"),
            SosError::EmptyOrderSet => write!(f, "cannot intersect an empty set of orders"),
            SosError::TooManyNodes { n, bound } => {
                write!(f, "universe of {n} nodes exceeds the extension bound of {bound}")
            }
        }
    }
}

impl core::error::Error for SosError {}

/// An so-structure `(X, ≺, ⊏)` over a sorted universe of event occurrences.
/// Construction validates the axioms, so a value of this type always
/// satisfies them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoStructure {
    universe: Vec<Occurrence>,
    rs: RelationalStructure,
}

impl SoStructure {
    pub fn new(
        universe: &[Occurrence],
        prec_pairs: &[(Occurrence, Occurrence)],
        weak_pairs: &[(Occurrence, Occurrence)],
    ) -> Result<Self, SosError> {
        let mut elems = universe.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let n = elems.len();
        let index = |occ: Occurrence| -> Result<usize, SosError> {
            elems
                .binary_search(&occ)
                .map_err(|_| SosError::OutsideUniverse(occ))
        };
        let mut prec = Relation::new(n);
        for &(a, b) in prec_pairs {
            prec.insert(index(a)?, index(b)?);
        }
        let mut weak = Relation::new(n);
        for &(a, b) in weak_pairs {
            weak.insert(index(a)?, index(b)?);
        }
        Self::from_relational(elems, RelationalStructure::new(prec, weak))
    }

    /// Wraps an index-level structure over a sorted universe, validating
    /// the axioms.
    pub fn from_relational(
        universe: Vec<Occurrence>,
        rs: RelationalStructure,
    ) -> Result<Self, SosError> {
        assert_eq!(universe.len(), rs.size(), "universe and relations disagree");
        debug_assert!(universe.windows(2).all(|w| w[0] < w[1]));
        rs.check_so_axioms().map_err(SosError::Axiom)?;
        Ok(SoStructure { universe, rs })
    }

    /// The so-structure `(X, ⊲, ⊲⌢)` generated by a stratified order.
    pub fn from_order(order: &StratifiedOrder) -> SoStructure {
        let universe = order.universe();
        let n = universe.len();
        let mut prec = Relation::new(n);
        let mut weak = Relation::new(n);
        for (i, &a) in universe.iter().enumerate() {
            for (j, &b) in universe.iter().enumerate() {
                if order.before(a, b) {
                    prec.insert(i, j);
                }
                if order.not_later(a, b) {
                    weak.insert(i, j);
                }
            }
        }
        SoStructure { universe, rs: RelationalStructure::new(prec, weak) }
    }

    pub fn universe(&self) -> &[Occurrence] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn relational(&self) -> &RelationalStructure {
        &self.rs
    }

    pub fn index_of(&self, occ: Occurrence) -> Option<usize> {
        self.universe.binary_search(&occ).ok()
    }

    pub fn occurrence(&self, index: usize) -> Occurrence {
        self.universe[index]
    }

    /// Causality between occurrences.
    pub fn prec(&self, a: Occurrence, b: Occurrence) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.rs.r1().contains(i, j),
            _ => false,
        }
    }

    /// Weak causality between occurrences.
    pub fn weak(&self, a: Occurrence, b: Occurrence) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.rs.r2().contains(i, j),
            _ => false,
        }
    }

    pub fn prec_pairs(&self) -> Vec<(Occurrence, Occurrence)> {
        self.rs
            .r1()
            .pairs()
            .map(|(i, j)| (self.universe[i], self.universe[j]))
            .collect()
    }

    pub fn weak_pairs(&self) -> Vec<(Occurrence, Occurrence)> {
        self.rs
            .r2()
            .pairs()
            .map(|(i, j)| (self.universe[i], self.universe[j]))
            .collect()
    }

    /// True iff the order extends this structure: `≺ ⊆ ⊲` and `⊏ ⊆ ⊲⌢`.
    pub fn is_extension(&self, order: &StratifiedOrder) -> Result<bool, SosError> {
        if order.universe() != self.universe {
            return Err(SosError::UniverseMismatch);
        }
        let blocks: Vec<Vec<usize>> = order
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&o| self.index_of(o).unwrap()).collect())
            .collect();
        let pos = position_array(self.size(), &blocks);
        Ok(blocks_extend(&self.rs, &pos))
    }

    /// All stratified extensions, with the default universe-size bound.
    pub fn stratified_extensions(&self) -> Result<Vec<StratifiedOrder>, SosError> {
        self.stratified_extensions_bounded(DEFAULT_EXTENSION_BOUND)
    }

    /// All stratified extensions, sorted deterministically.
    pub fn stratified_extensions_bounded(
        &self,
        bound: usize,
    ) -> Result<Vec<StratifiedOrder>, SosError> {
        if self.size() > bound {
            return Err(SosError::TooManyNodes { n: self.size(), bound });
        }
        let mut out: Vec<StratifiedOrder> = enumerate_extensions(&self.rs)
            .into_iter()
            .map(|blocks| self.order_from_index_blocks(&blocks))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub(crate) fn order_from_index_blocks(&self, blocks: &[Vec<usize>]) -> StratifiedOrder {
        let occ_blocks: Vec<Vec<Occurrence>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.universe[i]).collect())
            .collect();
        StratifiedOrder::from_blocks(occ_blocks).expect("extension blocks partition the universe")
    }

    /// The partition of the universe into weak-causality cycle classes
    /// (strongly connected components of the weak-causality digraph).
    pub fn cycle_classes(&self) -> Vec<Vec<Occurrence>> {
        strongly_connected_components(self.rs.r2())
            .into_iter()
            .map(|comp| comp.into_iter().map(|i| self.universe[i]).collect())
            .collect()
    }
}

/// Reconstructs an so-structure as the intersection of stratified orders
/// on a common universe: `(X, ⋂⊲, ⋂⊲⌢)`.
pub fn intersect_extensions(orders: &[StratifiedOrder]) -> Result<SoStructure, SosError> {
    let first = orders.first().ok_or(SosError::EmptyOrderSet)?;
    let universe = first.universe();
    let n = universe.len();
    let mut prec = Relation::new(n);
    let mut weak = Relation::new(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (universe[i], universe[j]);
            if orders.iter().all(|o| o.before(a, b)) {
                prec.insert(i, j);
            }
            if orders.iter().all(|o| o.not_later(a, b)) {
                weak.insert(i, j);
            }
        }
    }
    for order in &orders[1..] {
        if order.universe() != universe {
            return Err(SosError::UniverseMismatch);
        }
    }
    SoStructure::from_relational(universe, RelationalStructure::new(prec, weak))
}
