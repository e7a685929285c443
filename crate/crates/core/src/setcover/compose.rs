//! Composition of a partitioned SetCover instance with the threshold graph
//! `G_{C,k}`.
//!
//! The new universe is `{(i, f) : i < ell, f : A_i -> U}` with `f` written as
//! its `q^k` values in lexicographic order of `A_i`. The set built from
//! `S ∈ S_j`, matched to message `m(S)`, contains `(i, f)` iff some `a ∈ A_i`
//! with `a_j = C(m(S))_i` has `f(a) ∈ S`.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::{collision_number, Code, CollisionNumber};
use crate::combinatorics::{checked_pow, next_mixed_radix, BitSet};
use crate::maxcover::Matching;
use crate::threshold::ThresholdGraph;

use super::{
    has_partitioned_cover, min_cover_size, search_covers, CoverSize, SetCoverError,
    SetCoverInstance, SetRef, COVER_BUDGET,
};

pub const DEFAULT_UNIVERSE_CAP: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct ComposedSetCover {
    base: SetCoverInstance,
    threshold: ThresholdGraph,
    matching: Vec<Vec<usize>>,
    functions_per_part: u128,
}

impl ComposedSetCover {
    pub fn base(&self) -> &SetCoverInstance {
        &self.base
    }

    pub fn threshold(&self) -> &ThresholdGraph {
        &self.threshold
    }

    pub fn code(&self) -> &Arc<Code> {
        self.threshold.code()
    }

    pub fn matching(&self) -> &[Vec<usize>] {
        &self.matching
    }

    /// `q^k`, the length of a function `f`.
    pub fn function_len(&self) -> usize {
        self.threshold.a_part_size()
    }

    /// `ell * |U|^(q^k)`.
    pub fn universe_size(&self) -> u128 {
        self.threshold.ell() as u128 * self.functions_per_part
    }

    fn check_element(&self, i: usize, f: &[usize]) -> Result<(), SetCoverError> {
        if i >= self.threshold.ell() {
            return Err(SetCoverError::IndexRange {
                what: "part",
                index: i,
                bound: self.threshold.ell(),
            });
        }
        if f.len() != self.function_len() {
            return Err(SetCoverError::FunctionLength {
                expected: self.function_len(),
                got: f.len(),
            });
        }
        if let Some(&element) = f.iter().find(|&&x| x >= self.base.universe()) {
            return Err(SetCoverError::ElementRange {
                element,
                universe: self.base.universe(),
            });
        }
        Ok(())
    }

    /// `i * |U|^(q^k) + rank(f)`, with `f` read in base `|U|`.
    pub fn element_rank(&self, i: usize, f: &[usize]) -> Result<u128, SetCoverError> {
        self.check_element(i, f)?;
        let u = self.base.universe() as u128;
        Ok(f.iter().fold(i as u128, |acc, &x| acc * u + x as u128))
    }

    pub fn element(&self, rank: u128) -> Result<(usize, Vec<usize>), SetCoverError> {
        if rank >= self.universe_size() {
            return Err(SetCoverError::IndexRange {
                what: "element",
                index: rank.min(usize::MAX as u128) as usize,
                bound: self.universe_size().min(usize::MAX as u128) as usize,
            });
        }
        let u = self.base.universe() as u128;
        let mut f = vec![0usize; self.function_len()];
        let mut rest = rank % self.functions_per_part;
        for slot in f.iter_mut().rev() {
            *slot = (rest % u) as usize;
            rest /= u;
        }
        Ok(((rank / self.functions_per_part) as usize, f))
    }

    #[inline]
    fn symbol(&self, set: SetRef, i: usize) -> u32 {
        self.code().symbol(self.matching[set.0][set.1], i)
    }

    fn contains_unchecked(&self, set: SetRef, i: usize, f: &[usize]) -> bool {
        let c = self.symbol(set, i);
        let base = self.base.set(set);
        (0..self.function_len())
            .any(|a| self.threshold.tuple_symbol(a, set.0) == c && base.contains(f[a]))
    }

    /// Membership of `(i, f)` in the composed set built from `set`.
    pub fn contains(&self, set: SetRef, i: usize, f: &[usize]) -> Result<bool, SetCoverError> {
        if set.0 >= self.base.k() || set.1 >= self.base.collections()[set.0].len() {
            return Err(SetCoverError::IndexRange {
                what: "set",
                index: set.1,
                bound: self.base.set_count(),
            });
        }
        self.check_element(i, f)?;
        Ok(self.contains_unchecked(set, i, f))
    }

    /// An element of the composed universe outside every set in `chosen`, if
    /// one exists. For each `a ∈ A_i` it picks `f(a)` outside the union of the
    /// chosen base sets whose codeword symbol matches `a`; this succeeds for
    /// some `i` exactly when `chosen` does not cover.
    pub fn adversarial_element(&self, chosen: &[SetRef]) -> Option<(usize, Vec<usize>)> {
        let u = self.base.universe();
        'parts: for i in 0..self.threshold.ell() {
            let mut f = Vec::with_capacity(self.function_len());
            for a in 0..self.function_len() {
                let mut union = BitSet::new(u);
                for &s in chosen {
                    if self.threshold.tuple_symbol(a, s.0) == self.symbol(s, i) {
                        union.union_with(self.base.set(s));
                    }
                }
                match union.first_missing() {
                    Some(x) => f.push(x),
                    None => continue 'parts,
                }
            }
            debug_assert!(chosen.iter().all(|&s| !self.contains_unchecked(s, i, &f)));
            return Some((i, f));
        }
        None
    }

    pub fn covers(&self, chosen: &[SetRef]) -> bool {
        self.adversarial_element(chosen).is_none()
    }

    /// The composed sets as explicit bitsets over element ranks.
    pub fn materialize(&self, cap: u128) -> Result<SetCoverInstance, SetCoverError> {
        let size = self.universe_size();
        if size > cap {
            return Err(SetCoverError::CapExceeded {
                what: "composed universe",
                needed: size,
                cap,
            });
        }
        let size = size as usize;
        let refs = self.base.set_refs();
        let mut sets: Vec<BitSet> = vec![BitSet::new(size); refs.len()];
        let radices = vec![self.base.universe(); self.function_len()];
        let mut rank = 0;
        for i in 0..self.threshold.ell() {
            let mut f = vec![0usize; self.function_len()];
            if self.functions_per_part == 0 {
                continue;
            }
            loop {
                for (x, &s) in refs.iter().enumerate() {
                    if self.contains_unchecked(s, i, &f) {
                        sets[x].insert(rank);
                    }
                }
                rank += 1;
                if !next_mixed_radix(&mut f, &radices) {
                    break;
                }
            }
        }
        let mut it = sets.into_iter();
        let collections = self
            .base
            .collections()
            .iter()
            .map(|c| it.by_ref().take(c.len()).collect())
            .collect();
        SetCoverInstance::from_bitsets(
            size,
            collections,
            format!("compose_setcover <- {}", self.base.provenance()),
        )
    }
}

pub fn compose_setcover(
    base: &SetCoverInstance,
    code: Arc<Code>,
    matching: &Matching,
    universe_cap: u128,
) -> Result<ComposedSetCover, SetCoverError> {
    let capacity = code.len();
    for (j, c) in base.collections().iter().enumerate() {
        if c.len() > capacity {
            return Err(SetCoverError::MatchingOverflow {
                collection: j,
                size: c.len(),
                capacity,
            });
        }
    }
    let matching = match matching {
        Matching::LexRank => base
            .collections()
            .iter()
            .map(|c| (0..c.len()).collect())
            .collect(),
        Matching::Explicit(m) => {
            let shape_ok = m.len() == base.k()
                && m.iter()
                    .zip(base.collections())
                    .all(|(r, c)| r.len() == c.len());
            if !shape_ok {
                return Err(SetCoverError::InvalidMatching(
                    "shape does not match the collections".into(),
                ));
            }
            for row in m {
                let mut seen = vec![false; capacity];
                if row
                    .iter()
                    .any(|&x| x >= capacity || std::mem::replace(&mut seen[x], true))
                {
                    return Err(SetCoverError::InvalidMatching(
                        "message out of range or repeated".into(),
                    ));
                }
            }
            m.clone()
        }
    };
    let threshold =
        ThresholdGraph::new(code.clone(), base.k()).map_err(|_| SetCoverError::CapExceeded {
            what: "q^k",
            needed: u128::MAX,
            cap: usize::MAX as u128,
        })?;
    let per_part = checked_pow(base.universe(), threshold.a_part_size()).map(|x| x as u128);
    let needed = per_part
        .and_then(|p| p.checked_mul(code.ell() as u128))
        .unwrap_or(u128::MAX);
    if needed > universe_cap {
        return Err(SetCoverError::CapExceeded {
            what: "composed universe",
            needed,
            cap: universe_cap,
        });
    }
    Ok(ComposedSetCover {
        base: base.clone(),
        threshold,
        matching,
        functions_per_part: per_part.unwrap(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SetCoverVerdict {
    CompletenessOk,
    SoundnessOk,
    /// The base has a cover of at most `k` sets that is not partitioned, so
    /// neither implication applies.
    OutsidePromise,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetCoverCertificate {
    pub verdict: SetCoverVerdict,
    pub universe_size: u128,
    pub base_partitioned_cover: Option<Vec<usize>>,
    /// Smallest base cover with at most `k` sets.
    pub base_min_cover: CoverSize,
    pub collision_number: CollisionNumber,
    /// Composed covers were searched up to this many sets.
    pub composed_searched_up_to: usize,
    /// Whether the search reached every size below the collision number.
    pub search_complete: bool,
    /// A composed cover smaller than the collision number.
    pub composed_cover: Option<Vec<SetRef>>,
    /// Rank of an element the matched partitioned cover misses.
    pub uncovered_element: Option<u128>,
}

fn certify(
    base: &SetCoverInstance,
    universe_size: u128,
    col: CollisionNumber,
    cap: usize,
    missed_by: impl Fn(&[SetRef]) -> Option<u128>,
) -> Result<SetCoverCertificate, SetCoverError> {
    let partitioned = has_partitioned_cover(base, COVER_BUDGET)?;
    let base_min = min_cover_size(base, base.k())?.min_cover_size;
    let mut cert = SetCoverCertificate {
        verdict: SetCoverVerdict::OutsidePromise,
        universe_size,
        base_partitioned_cover: partitioned.clone(),
        base_min_cover: base_min,
        collision_number: col,
        composed_searched_up_to: 0,
        search_complete: false,
        composed_cover: None,
        uncovered_element: None,
    };
    if let Some(p) = partitioned {
        let chosen: Vec<SetRef> = p.iter().enumerate().map(|(j, &x)| (j, x)).collect();
        cert.uncovered_element = missed_by(&chosen);
        cert.verdict = match cert.uncovered_element {
            None => SetCoverVerdict::CompletenessOk,
            Some(_) => SetCoverVerdict::Violation,
        };
        return Ok(cert);
    }
    if base_min.exact().is_some() {
        return Ok(cert);
    }
    let refs = base.set_refs();
    let below = match col {
        CollisionNumber::Finite(c) => c - 1,
        CollisionNumber::Infinite => refs.len(),
        CollisionNumber::UnknownAbove(c) => c,
    };
    let limit = below.min(cap);
    let (found, witness, _) = search_covers(refs.len(), limit, COVER_BUDGET, |chosen| {
        let sets: Vec<SetRef> = chosen.iter().map(|&x| refs[x]).collect();
        missed_by(&sets).is_none()
    })?;
    cert.composed_searched_up_to = limit;
    cert.search_complete =
        limit >= below.min(refs.len()) && !matches!(col, CollisionNumber::UnknownAbove(_));
    cert.composed_cover = witness.map(|w| w.iter().map(|&x| refs[x]).collect());
    cert.verdict = match found {
        CoverSize::Exact(_) => SetCoverVerdict::Violation,
        CoverSize::AboveCap(_) => SetCoverVerdict::SoundnessOk,
    };
    Ok(cert)
}

/// Checks both implications using the membership rule directly. Composed
/// covers are searched with at most `cap` sets.
pub fn setcover_certificate(
    composed: &ComposedSetCover,
    cap: usize,
) -> Result<SetCoverCertificate, SetCoverError> {
    let col = collision_number(composed.code(), composed.code().len())?.collision_number;
    certify(
        composed.base(),
        composed.universe_size(),
        col,
        cap,
        |chosen| {
            composed
                .adversarial_element(chosen)
                .map(|(i, f)| composed.element_rank(i, &f).unwrap())
        },
    )
}

/// The same checks against an explicit composed instance whose sets are
/// listed in the same collection layout as `base`.
pub fn certify_explicit(
    base: &SetCoverInstance,
    composed: &SetCoverInstance,
    col: CollisionNumber,
    cap: usize,
) -> Result<SetCoverCertificate, SetCoverError> {
    certify(base, composed.universe() as u128, col, cap, |chosen| {
        let mut union = BitSet::new(composed.universe());
        for &s in chosen {
            union.union_with(composed.set(s));
        }
        union.first_missing().map(|x| x as u128)
    })
}
