//! Threshold graph of a code, held implicitly.
//!
//! For a code `C: [q]^r -> [q]^ell` and `t >= 1` the graph has `ell` A-parts,
//! each a copy of `[q]^t`, and `t` B-parts, each a copy of the codewords.
//! `b = (j, m)` and `a = (i, v)` are adjacent iff `C(m)_i = v_j`. Tuples `v`
//! are stored by lexicographic rank, first coordinate most significant.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{collision_number, relative_distance, Code, CodeError, CollisionNumber, Symbol};
use crate::combinatorics::{
    binomial, checked_pow, digit_at, next_combination, next_mixed_radix, rank_digits,
};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("t must be at least 1")]
    InvalidT,
    #[error("{what} index {index} out of range (< {bound})")]
    IndexRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("expected {expected} messages, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("search exceeded its work limit of {limit}")]
    BudgetExceeded { limit: u64 },
    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Vertex `(i, v)` of the A side: part `i < ell`, tuple rank `v < q^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ARef {
    pub part: usize,
    pub tuple: usize,
}

/// Vertex `(j, m)` of the B side: part `j < t`, message index `m < |C|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BRef {
    pub part: usize,
    pub message: usize,
}

#[derive(Clone, Debug)]
pub struct ThresholdGraph {
    code: Arc<Code>,
    t: usize,
    a_part_size: usize,
}

impl ThresholdGraph {
    pub fn new(code: Arc<Code>, t: usize) -> Result<Self, ThresholdError> {
        if t == 0 {
            return Err(ThresholdError::InvalidT);
        }
        let a_part_size = checked_pow(code.q() as usize, t).ok_or(ThresholdError::CapExceeded {
            what: "A-part size",
            needed: u128::MAX,
            cap: usize::MAX as u128,
        })?;
        Ok(ThresholdGraph {
            code,
            t,
            a_part_size,
        })
    }

    pub fn code(&self) -> &Arc<Code> {
        &self.code
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of A-parts, the block length of the code.
    pub fn ell(&self) -> usize {
        self.code.ell()
    }

    /// `q^t`.
    pub fn a_part_size(&self) -> usize {
        self.a_part_size
    }

    /// `|C|`.
    pub fn b_part_size(&self) -> usize {
        self.code.len()
    }

    /// Coordinate `j` of the tuple with rank `tuple`.
    #[inline]
    pub fn tuple_symbol(&self, tuple: usize, j: usize) -> Symbol {
        digit_at(tuple, self.code.q(), self.t, j)
    }

    pub fn tuple_rank(&self, v: &[Symbol]) -> usize {
        rank_digits(v, self.code.q())
    }

    fn check_a(&self, a: ARef) -> Result<(), ThresholdError> {
        if a.part >= self.ell() {
            return Err(ThresholdError::IndexRange {
                what: "A-part",
                index: a.part,
                bound: self.ell(),
            });
        }
        if a.tuple >= self.a_part_size {
            return Err(ThresholdError::IndexRange {
                what: "tuple",
                index: a.tuple,
                bound: self.a_part_size,
            });
        }
        Ok(())
    }

    fn check_b(&self, b: BRef) -> Result<(), ThresholdError> {
        if b.part >= self.t {
            return Err(ThresholdError::IndexRange {
                what: "B-part",
                index: b.part,
                bound: self.t,
            });
        }
        if b.message >= self.code.len() {
            return Err(ThresholdError::IndexRange {
                what: "message",
                index: b.message,
                bound: self.code.len(),
            });
        }
        Ok(())
    }

    pub fn adjacent(&self, b: BRef, a: ARef) -> Result<bool, ThresholdError> {
        self.check_a(a)?;
        self.check_b(b)?;
        Ok(self.adjacent_unchecked(b, a))
    }

    #[inline]
    pub fn adjacent_unchecked(&self, b: BRef, a: ARef) -> bool {
        self.code.symbol(b.message, a.part) == self.tuple_symbol(a.tuple, b.part)
    }

    /// The vertex of `A_i` adjacent to `(j, messages[j])` for every `j`.
    pub fn common_neighbor(&self, messages: &[usize], i: usize) -> Result<ARef, ThresholdError> {
        if messages.len() != self.t {
            return Err(ThresholdError::TupleLength {
                expected: self.t,
                got: messages.len(),
            });
        }
        for (j, &m) in messages.iter().enumerate() {
            self.check_b(BRef {
                part: j,
                message: m,
            })?;
        }
        if i >= self.ell() {
            return Err(ThresholdError::IndexRange {
                what: "A-part",
                index: i,
                bound: self.ell(),
            });
        }
        let v: Vec<Symbol> = messages.iter().map(|&m| self.code.symbol(m, i)).collect();
        Ok(ARef {
            part: i,
            tuple: self.tuple_rank(&v),
        })
    }

    /// Global id of an A-vertex: `i * q^t + rank(v)`.
    pub fn a_id(&self, a: ARef) -> usize {
        a.part * self.a_part_size + a.tuple
    }

    /// First global id on the B side.
    pub fn b_offset(&self) -> usize {
        self.ell() * self.a_part_size
    }

    /// Global id of a B-vertex: `offset + j * |C| + m`.
    pub fn b_id(&self, b: BRef) -> usize {
        self.b_offset() + b.part * self.code.len() + b.message
    }

    pub fn edge_count(&self) -> u128 {
        // each b has q^(t-1) neighbors in every A-part
        (self.t * self.code.len() * self.ell()) as u128
            * (self.a_part_size / self.code.q() as usize) as u128
    }

    /// Materializes the edge list as `[a_id, b_id]` pairs, sorted.
    pub fn export_edges(&self, cap: u128) -> Result<EdgeExport, ThresholdError> {
        let needed = self.edge_count();
        if needed > cap {
            return Err(ThresholdError::CapExceeded {
                what: "edge export",
                needed,
                cap,
            });
        }
        let mut edges = Vec::with_capacity(needed as usize);
        for i in 0..self.ell() {
            for tuple in 0..self.a_part_size {
                let a = ARef { part: i, tuple };
                for j in 0..self.t {
                    for m in 0..self.code.len() {
                        let b = BRef {
                            part: j,
                            message: m,
                        };
                        if self.adjacent_unchecked(b, a) {
                            edges.push([self.a_id(a), self.b_id(b)]);
                        }
                    }
                }
            }
        }
        Ok(EdgeExport {
            q: self.code.q(),
            t: self.t,
            a_parts: self.ell(),
            a_part_size: self.a_part_size,
            b_parts: self.t,
            b_part_size: self.code.len(),
            b_offset: self.b_offset(),
            edges,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeExport {
    pub q: u32,
    pub t: usize,
    pub a_parts: usize,
    pub a_part_size: usize,
    pub b_parts: usize,
    pub b_part_size: usize,
    pub b_offset: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Knobs for [`verify_threshold_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Exhaustive completeness when `|C|^t * ell` is at most this.
    pub exhaustive_limit: u128,
    /// Sampled tuples otherwise.
    pub samples: usize,
    pub seed: u64,
    /// Soundness counts are taken by scanning A-parts when the scan needs at
    /// most this many adjacency queries; otherwise from codeword agreements.
    pub scan_limit: u128,
    /// Cap on the number of subsets `X` examined by the collision check.
    pub collision_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 100_000,
            samples: 1_000,
            seed: 0,
            scan_limit: 50_000_000,
            collision_budget: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum CompletenessMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessCheck {
    pub ok: bool,
    pub mode: CompletenessMode,
    pub tuples_checked: u64,
    /// Whether uniqueness was confirmed by scanning every vertex of `A_i`.
    pub uniqueness_scanned: bool,
    /// Messages and part where completeness failed, with the vertices of
    /// that part adjacent to all of them.
    pub counterexample: Option<(Vec<usize>, usize, Vec<ARef>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SoundnessMode {
    Scanned,
    Agreements,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessCheck {
    pub mode: SoundnessMode,
    /// Maximum over `j` and distinct `m, m'` of the number of parts `i` in
    /// which `(j, m)` and `(j, m')` share a neighbor.
    pub max_shared: usize,
    /// `(1 - delta) * ell`.
    pub bound: Rational,
    pub within_bound: bool,
    /// Whether every shared count equals the number of agreeing coordinates.
    pub matches_agreements: bool,
    pub worst_pair: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QualifyingSet {
    pub members: Vec<BRef>,
    /// For each part `i`, a vertex of `A_i` with at least `t + 1` neighbors in `members`.
    pub witnesses: Vec<ARef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionCheck {
    /// All `X` with `|X| < searched_below` were examined.
    pub searched_below: usize,
    pub smallest: Option<QualifyingSet>,
    pub collision_number: CollisionNumber,
    pub consistent: bool,
    pub subsets_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdVerdict {
    pub relative_distance: Rational,
    pub completeness: CompletenessCheck,
    pub soundness: SoundnessCheck,
    pub collision: CollisionCheck,
}

impl ThresholdVerdict {
    pub fn ok(&self) -> bool {
        self.completeness.ok
            && self.soundness.within_bound
            && self.soundness.matches_agreements
            && self.collision.consistent
    }
}

pub fn verify_threshold(
    g: &ThresholdGraph,
    collision_cap: usize,
) -> Result<ThresholdVerdict, ThresholdError> {
    verify_threshold_with(g, collision_cap, VerifyOptions::default())
}

/// Checks the completeness, soundness and collision properties of `g`.
/// The collision check examines every `X ⊆ B` with `|X| < collision_cap`.
pub fn verify_threshold_with(
    g: &ThresholdGraph,
    collision_cap: usize,
    opts: VerifyOptions,
) -> Result<ThresholdVerdict, ThresholdError> {
    let distance = relative_distance(g.code())?;
    let col = collision_number(g.code(), g.code().len())?;
    Ok(ThresholdVerdict {
        relative_distance: distance.relative_distance,
        completeness: check_completeness(g, &opts)?,
        soundness: check_soundness(g, distance.relative_distance, &opts),
        collision: check_collision(g, collision_cap, col.collision_number, &opts)?,
    })
}

fn check_completeness(
    g: &ThresholdGraph,
    opts: &VerifyOptions,
) -> Result<CompletenessCheck, ThresholdError> {
    let n = g.b_part_size();
    let total = checked_pow(n, g.t())
        .map(|x| x as u128)
        .unwrap_or(u128::MAX)
        .saturating_mul(g.ell() as u128);
    let scan_unique = g.a_part_size() <= 4096;
    let mut check = CompletenessCheck {
        ok: true,
        mode: CompletenessMode::Exhaustive,
        tuples_checked: 0,
        uniqueness_scanned: scan_unique,
        counterexample: None,
    };
    let verify_tuple =
        |messages: &[usize], check: &mut CompletenessCheck| -> Result<bool, ThresholdError> {
            check.tuples_checked += 1;
            for i in 0..g.ell() {
                let a = g.common_neighbor(messages, i)?;
                let bs = messages.iter().enumerate().map(|(j, &m)| BRef {
                    part: j,
                    message: m,
                });
                let all_adjacent = |a: ARef| bs.clone().all(|b| g.adjacent_unchecked(b, a));
                let found: Vec<ARef> = if scan_unique {
                    (0..g.a_part_size())
                        .map(|tuple| ARef { part: i, tuple })
                        .filter(|&x| all_adjacent(x))
                        .collect()
                } else if all_adjacent(a) {
                    vec![a]
                } else {
                    vec![]
                };
                if found != [a] {
                    check.ok = false;
                    check.counterexample = Some((messages.to_vec(), i, found));
                    return Ok(false);
                }
            }
            Ok(true)
        };
    if total <= opts.exhaustive_limit {
        let radices = vec![n; g.t()];
        let mut messages = vec![0usize; g.t()];
        loop {
            if !verify_tuple(&messages, &mut check)? || !next_mixed_radix(&mut messages, &radices) {
                break;
            }
        }
    } else {
        check.mode = CompletenessMode::Sampled {
            samples: opts.samples,
            seed: opts.seed,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let messages: Vec<usize> = (0..g.t()).map(|_| rng.gen_range(0..n)).collect();
            if !verify_tuple(&messages, &mut check)? {
                break;
            }
        }
    }
    Ok(check)
}

fn shares_neighbor_by_scan(g: &ThresholdGraph, b: BRef, b2: BRef, i: usize) -> bool {
    (0..g.a_part_size()).any(|tuple| {
        let a = ARef { part: i, tuple };
        g.adjacent_unchecked(b, a) && g.adjacent_unchecked(b2, a)
    })
}

fn check_soundness(g: &ThresholdGraph, delta: Rational, opts: &VerifyOptions) -> SoundnessCheck {
    let n = g.b_part_size();
    let code = g.code();
    let scan_cost = binomial(n, 2) * (g.t() * g.ell() * g.a_part_size()) as u128;
    let mode = if scan_cost <= opts.scan_limit {
        SoundnessMode::Scanned
    } else {
        SoundnessMode::Agreements
    };
    let bound = delta.one_minus().mul_int(g.ell() as i64);
    let mut max_shared = 0;
    let mut worst = None;
    let mut matches = true;
    let parts = if mode == SoundnessMode::Scanned {
        g.t()
    } else {
        1
    };
    for j in 0..parts {
        for m in 0..n {
            for m2 in m + 1..n {
                let agreements = (0..g.ell())
                    .filter(|&i| code.symbol(m, i) == code.symbol(m2, i))
                    .count();
                let shared = match mode {
                    SoundnessMode::Scanned => {
                        let (b, b2) = (
                            BRef {
                                part: j,
                                message: m,
                            },
                            BRef {
                                part: j,
                                message: m2,
                            },
                        );
                        (0..g.ell())
                            .filter(|&i| shares_neighbor_by_scan(g, b, b2, i))
                            .count()
                    }
                    SoundnessMode::Agreements => agreements,
                };
                matches &= shared == agreements;
                if worst.is_none() || shared > max_shared {
                    max_shared = shared;
                    worst = Some((j, m, m2));
                }
            }
        }
    }
    SoundnessCheck {
        mode,
        max_shared,
        bound,
        within_bound: Rational::from_integer(max_shared as i64) <= bound,
        matches_agreements: matches,
        worst_pair: worst,
    }
}

/// For each part, the vertex of `A_i` with the most neighbors in `members`,
/// when that count reaches `t + 1`. Picking, per coordinate `j`, the most
/// frequent symbol `C(m)_i` among members in `B_j` maximizes the count.
fn qualifying_witnesses(g: &ThresholdGraph, members: &[BRef]) -> Option<Vec<ARef>> {
    let q = g.code().q() as usize;
    let mut counts = vec![0usize; g.t() * q];
    let mut witnesses = Vec::with_capacity(g.ell());
    for i in 0..g.ell() {
        counts.iter_mut().for_each(|c| *c = 0);
        for b in members {
            counts[b.part * q + g.code().symbol(b.message, i) as usize] += 1;
        }
        let mut best = Vec::with_capacity(g.t());
        let mut total = 0;
        for j in 0..g.t() {
            let row = &counts[j * q..(j + 1) * q];
            // first maximum, so ties resolve to the smallest symbol
            let (sym, &cnt) = row
                .iter()
                .enumerate()
                .rev()
                .max_by_key(|(_, &c)| c)
                .unwrap();
            best.push(sym as Symbol);
            total += cnt;
        }
        if total < g.t() + 1 {
            return None;
        }
        witnesses.push(ARef {
            part: i,
            tuple: g.tuple_rank(&best),
        });
    }
    Some(witnesses)
}

fn check_collision(
    g: &ThresholdGraph,
    collision_cap: usize,
    col: CollisionNumber,
    opts: &VerifyOptions,
) -> Result<CollisionCheck, ThresholdError> {
    let b_total = g.t() * g.b_part_size();
    let max_size = collision_cap.saturating_sub(1).min(b_total);
    let total: u128 = (1..=max_size).map(|s| binomial(b_total, s)).sum();
    if total > opts.collision_budget as u128 {
        return Err(ThresholdError::BudgetExceeded {
            limit: opts.collision_budget,
        });
    }
    let to_ref = |id: usize| BRef {
        part: id / g.b_part_size(),
        message: id % g.b_part_size(),
    };
    let mut examined = 0u64;
    // a qualifying X needs t + 1 members, so smaller sizes are skipped
    for size in (g.t() + 1)..=max_size {
        let mut ids: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            let members: Vec<BRef> = ids.iter().map(|&id| to_ref(id)).collect();
            if let Some(witnesses) = qualifying_witnesses(g, &members) {
                let verified = witnesses.iter().all(|&a| {
                    members
                        .iter()
                        .filter(|&&b| g.adjacent_unchecked(b, a))
                        .count()
                        > g.t()
                });
                debug_assert!(verified);
                let consistent = verified && !col.exceeds(size);
                return Ok(CollisionCheck {
                    searched_below: size,
                    smallest: Some(QualifyingSet { members, witnesses }),
                    collision_number: col,
                    consistent,
                    subsets_examined: examined,
                });
            }
            if !next_combination(&mut ids, b_total) {
                break;
            }
        }
    }
    Ok(CollisionCheck {
        searched_below: max_size + 1,
        smallest: None,
        collision_number: col,
        consistent: true,
        subsets_examined: examined,
    })
}
