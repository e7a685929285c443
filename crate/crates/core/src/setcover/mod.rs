//! Partitioned SetCover instances, exact cover search, and the threshold-graph
//! composition of a SetCover instance.

mod compose;

pub use compose::{
    certify_explicit, compose_setcover, setcover_certificate, ComposedSetCover,
    SetCoverCertificate, SetCoverVerdict, DEFAULT_UNIVERSE_CAP,
};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::codes::CodeError;
use crate::combinatorics::{binomial, next_combination, next_mixed_radix, BitSet};

/// Default cap on subsets examined by [`min_cover_size`].
pub const COVER_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetCoverError {
    #[error("instance needs at least one collection")]
    NoCollections,
    #[error("collection {0} is empty")]
    EmptyCollection(usize),
    #[error("element {element} outside universe of size {universe}")]
    ElementRange { element: usize, universe: usize },
    #[error("search exceeded its work limit of {limit}")]
    BudgetExceeded { limit: u64 },
    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("collection {collection} has {size} sets but the code has only {capacity} codewords")]
    MatchingOverflow {
        collection: usize,
        size: usize,
        capacity: usize,
    },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("{what} index {index} out of range (< {bound})")]
    IndexRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("function has {got} values, expected {expected}")]
    FunctionLength { expected: usize, got: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A set named by its collection and its index inside the collection.
pub type SetRef = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe: usize,
    collections: Vec<Vec<BitSet>>,
    provenance: String,
}

impl SetCoverInstance {
    pub fn new(
        universe: usize,
        collections: Vec<Vec<Vec<usize>>>,
        provenance: impl Into<String>,
    ) -> Result<Self, SetCoverError> {
        let mut sets = Vec::with_capacity(collections.len());
        for collection in collections {
            let mut bits = Vec::with_capacity(collection.len());
            for set in collection {
                if let Some(&element) = set.iter().find(|&&e| e >= universe) {
                    return Err(SetCoverError::ElementRange { element, universe });
                }
                bits.push(BitSet::from_indices(universe, set));
            }
            sets.push(bits);
        }
        SetCoverInstance::from_bitsets(universe, sets, provenance)
    }

    pub fn from_bitsets(
        universe: usize,
        collections: Vec<Vec<BitSet>>,
        provenance: impl Into<String>,
    ) -> Result<Self, SetCoverError> {
        if collections.is_empty() {
            return Err(SetCoverError::NoCollections);
        }
        if let Some(j) = collections.iter().position(Vec::is_empty) {
            return Err(SetCoverError::EmptyCollection(j));
        }
        for set in collections.iter().flatten() {
            if set.len() != universe {
                return Err(SetCoverError::ElementRange {
                    element: set.len(),
                    universe,
                });
            }
        }
        Ok(SetCoverInstance {
            universe,
            collections,
            provenance: provenance.into(),
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn k(&self) -> usize {
        self.collections.len()
    }

    pub fn collections(&self) -> &[Vec<BitSet>] {
        &self.collections
    }

    pub fn set(&self, r: SetRef) -> &BitSet {
        &self.collections[r.0][r.1]
    }

    pub fn set_mut(&mut self, r: SetRef) -> &mut BitSet {
        &mut self.collections[r.0][r.1]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_count(&self) -> usize {
        self.collections.iter().map(Vec::len).sum()
    }

    /// All sets in `(collection, index)` order.
    pub fn set_refs(&self) -> Vec<SetRef> {
        self.collections
            .iter()
            .enumerate()
            .flat_map(|(j, c)| (0..c.len()).map(move |x| (j, x)))
            .collect()
    }

    pub fn is_cover(&self, sets: &[SetRef]) -> bool {
        let mut union = BitSet::new(self.universe);
        for &r in sets {
            union.union_with(self.set(r));
        }
        union.is_all()
    }

    /// Lists of elements, as in the JSON form.
    pub fn collection_lists(&self) -> Vec<Vec<Vec<usize>>> {
        self.collections
            .iter()
            .map(|c| c.iter().map(|s| s.iter().collect()).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverSize {
    Exact(usize),
    /// No cover with at most this many sets.
    AboveCap(usize),
}

impl CoverSize {
    pub fn exact(self) -> Option<usize> {
        match self {
            CoverSize::Exact(n) => Some(n),
            CoverSize::AboveCap(_) => None,
        }
    }
}

impl Serialize for CoverSize {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            CoverSize::Exact(n) => s.serialize_u64(n as u64),
            CoverSize::AboveCap(cap) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("above_cap", &cap)?;
                m.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub min_cover_size: CoverSize,
    /// Lexicographically first minimum cover.
    pub witness: Option<Vec<SetRef>>,
    /// One set per collection, as indices inside each collection.
    pub partitioned_cover: Option<Vec<usize>>,
    pub subsets_examined: u64,
}

/// Tries every union of at most `cap` sets, by increasing size.
pub fn min_cover_size(
    instance: &SetCoverInstance,
    cap: usize,
) -> Result<CoverReport, SetCoverError> {
    min_cover_size_with_budget(instance, cap, COVER_BUDGET)
}

pub fn min_cover_size_with_budget(
    instance: &SetCoverInstance,
    cap: usize,
    budget: u64,
) -> Result<CoverReport, SetCoverError> {
    let refs = instance.set_refs();
    let (min, witness, examined) = search_covers(refs.len(), cap, budget, |chosen| {
        let sets: Vec<SetRef> = chosen.iter().map(|&x| refs[x]).collect();
        instance.is_cover(&sets)
    })?;
    Ok(CoverReport {
        min_cover_size: min,
        witness: witness.map(|w| w.iter().map(|&x| refs[x]).collect()),
        partitioned_cover: has_partitioned_cover(instance, budget)?,
        subsets_examined: examined,
    })
}

/// Enumerates subsets of `0..n` by increasing size up to `cap` and returns the
/// first accepted one.
pub(crate) fn search_covers(
    n: usize,
    cap: usize,
    budget: u64,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Result<(CoverSize, Option<Vec<usize>>, u64), SetCoverError> {
    let max = cap.min(n);
    let total: u128 = (0..=max).map(|s| binomial(n, s)).sum();
    if total > budget as u128 {
        return Err(SetCoverError::BudgetExceeded { limit: budget });
    }
    let mut examined = 0;
    for size in 0..=max {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if accept(&chosen) {
                return Ok((CoverSize::Exact(size), Some(chosen), examined));
            }
            if !next_combination(&mut chosen, n) {
                break;
            }
        }
    }
    Ok((CoverSize::AboveCap(cap), None, examined))
}

/// First (lexicographic) choice of one set per collection whose union is the
/// universe.
pub fn has_partitioned_cover(
    instance: &SetCoverInstance,
    budget: u64,
) -> Result<Option<Vec<usize>>, SetCoverError> {
    let radices: Vec<usize> = instance.collections.iter().map(Vec::len).collect();
    let total = radices
        .iter()
        .fold(1u128, |a, &r| a.saturating_mul(r as u128));
    if total > budget as u128 {
        return Err(SetCoverError::BudgetExceeded { limit: budget });
    }
    let mut pick = vec![0usize; radices.len()];
    loop {
        let sets: Vec<SetRef> = pick.iter().enumerate().map(|(j, &x)| (j, x)).collect();
        if instance.is_cover(&sets) {
            return Ok(Some(pick));
        }
        if !next_mixed_radix(&mut pick, &radices) {
            return Ok(None);
        }
    }
}
