//! Exact relative distance and collision number.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::combinatorics::binomial;
use crate::rational::{ceil_sqrt, Rational};

use super::linear::min_distance_linear;
use super::{Code, CodeError};

/// Largest number of codeword pairs compared by the pairwise distance scan.
pub const DISTANCE_PAIR_CAP: u128 = 20_000_000;

/// Default number of subset probes for the collision-number search.
pub const COLLISION_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// Every pair of distinct codewords compared.
    Pairwise,
    /// Minimum nonzero weight via generator-column ranks (linear codes).
    LinearRank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub relative_distance: Rational,
    /// Minimum number of disagreeing coordinates, `relative_distance * ell`.
    pub min_disagreements: usize,
    /// Message indices of a pair achieving the minimum (lexicographically
    /// first for the pairwise scan). `None` for single-codeword codes.
    pub witness: Option<(usize, usize)>,
    pub pairs_examined: u64,
    pub method: DistanceMethod,
}

fn disagreements(code: &Code, a: usize, b: usize) -> usize {
    let (x, y) = (code.codeword(a), code.codeword(b));
    x.iter().zip(y.iter()).filter(|(u, v)| u != v).count()
}

/// Exact minimum relative distance over distinct codeword pairs.
///
/// Small codes are scanned pairwise; linear codes beyond
/// [`DISTANCE_PAIR_CAP`] pairs fall back to [`min_distance_linear`].
pub fn relative_distance(code: &Code) -> Result<DistanceReport, CodeError> {
    let n = code.len();
    let ell = code.ell();
    let pairs = binomial(n, 2);
    if code.is_materialized() && pairs <= DISTANCE_PAIR_CAP {
        let table = code.table()?;
        let mut best = ell + 1;
        let mut witness = None;
        for a in 0..n {
            let x = &table[a * ell..(a + 1) * ell];
            for b in a + 1..n {
                let y = &table[b * ell..(b + 1) * ell];
                let d = x.iter().zip(y).filter(|(u, v)| u != v).count();
                if d < best {
                    best = d;
                    witness = Some((a, b));
                }
            }
        }
        let best = if witness.is_some() { best } else { ell };
        return Ok(DistanceReport {
            relative_distance: Rational::new(best as i64, ell as i64),
            min_disagreements: best,
            witness,
            pairs_examined: pairs as u64,
            method: DistanceMethod::Pairwise,
        });
    }
    if code.generator().is_some() {
        let lin = min_distance_linear(code)?;
        // C(0) = 0 for a linear code, so (0, m) realizes the minimum weight
        let witness = (0, lin.message_index);
        debug_assert_eq!(disagreements(code, 0, lin.message_index), lin.min_weight);
        return Ok(DistanceReport {
            relative_distance: Rational::new(lin.min_weight as i64, ell as i64),
            min_disagreements: lin.min_weight,
            witness: Some(witness),
            pairs_examined: lin.subsets_examined,
            method: DistanceMethod::LinearRank,
        });
    }
    Err(CodeError::CapExceeded {
        what: "codeword pairs",
        needed: pairs,
        cap: DISTANCE_PAIR_CAP,
    })
}

/// Outcome of the collision-number search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionNumber {
    Finite(usize),
    /// No subset of the code collides on every coordinate.
    Infinite,
    /// No colliding subset up to this size; larger sizes were not searched.
    UnknownAbove(usize),
}

impl CollisionNumber {
    pub fn finite(self) -> Option<usize> {
        match self {
            CollisionNumber::Finite(s) => Some(s),
            _ => None,
        }
    }

    /// Whether `size` is known to be strictly below the collision number.
    pub fn exceeds(self, size: usize) -> bool {
        match self {
            CollisionNumber::Finite(s) => size < s,
            CollisionNumber::Infinite => true,
            CollisionNumber::UnknownAbove(cap) => size <= cap,
        }
    }
}

impl Serialize for CollisionNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CollisionNumber::Finite(s) => serializer.serialize_u64(*s as u64),
            CollisionNumber::Infinite => serializer.serialize_str("infinite"),
            CollisionNumber::UnknownAbove(cap) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("unknown_above", cap)?;
                map.end()
            }
        }
    }
}

/// Lower bound `ceil(sqrt(2 / (1 - delta)))`, infinite when `delta = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerBound {
    Finite(u64),
    Infinite,
}

impl Serialize for LowerBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            LowerBound::Finite(v) => serializer.serialize_u64(*v),
            LowerBound::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColBounds {
    pub lower: LowerBound,
    /// `q + 1`, defined only when the code has at least `q + 1` codewords.
    pub upper: Option<u64>,
}

impl ColBounds {
    /// Whether a finite collision number `s` lies inside the bounds.
    pub fn brackets(&self, s: usize) -> bool {
        let lower_ok = match self.lower {
            LowerBound::Finite(l) => l <= s as u64,
            LowerBound::Infinite => false,
        };
        lower_ok && self.upper.is_none_or(|u| s as u64 <= u)
    }
}

/// Pigeonhole upper bound and distance-based lower bound on the collision number.
pub fn col_bounds(code: &Code, distance: &DistanceReport) -> ColBounds {
    let delta = distance.relative_distance;
    let lower = if delta.is_one() {
        LowerBound::Infinite
    } else {
        let ratio = Rational::from_integer(2).0 / delta.one_minus().0;
        LowerBound::Finite(ceil_sqrt(Rational(ratio)))
    };
    let q = code.q() as usize;
    let upper = (code.len() > q).then_some(q as u64 + 1);
    ColBounds { lower, upper }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub collision_number: CollisionNumber,
    /// Message indices of a smallest fully colliding subset, lexicographically first.
    pub witness: Option<Vec<usize>>,
    pub bounds: ColBounds,
    pub distance: DistanceReport,
    pub probes: u64,
}

/// Incremental per-coordinate collision bookkeeping for a growing subset.
struct CollisionState<'a> {
    code: &'a Code,
    counts: Vec<u32>,
    dup: Vec<u32>,
    covered: usize,
}

impl<'a> CollisionState<'a> {
    fn new(code: &'a Code) -> Self {
        let cells = code.ell() * code.q() as usize;
        CollisionState {
            code,
            counts: vec![0; cells],
            dup: vec![0; code.ell()],
            covered: 0,
        }
    }

    fn push(&mut self, idx: usize) {
        let q = self.code.q() as usize;
        for i in 0..self.code.ell() {
            let cell = i * q + self.code.symbol(idx, i) as usize;
            self.counts[cell] += 1;
            if self.counts[cell] == 2 {
                self.dup[i] += 1;
                if self.dup[i] == 1 {
                    self.covered += 1;
                }
            }
        }
    }

    fn pop(&mut self, idx: usize) {
        let q = self.code.q() as usize;
        for i in 0..self.code.ell() {
            let cell = i * q + self.code.symbol(idx, i) as usize;
            if self.counts[cell] == 2 {
                self.dup[i] -= 1;
                if self.dup[i] == 0 {
                    self.covered -= 1;
                }
            }
            self.counts[cell] -= 1;
        }
    }

    fn collides_everywhere(&self) -> bool {
        self.covered == self.code.ell()
    }
}

/// Whether `subset` (message indices) has a collision on every coordinate.
pub fn collides_on_every_coordinate(code: &Code, subset: &[usize]) -> bool {
    (0..code.ell()).all(|i| {
        subset.iter().enumerate().any(|(a, &x)| {
            subset[a + 1..]
                .iter()
                .any(|&y| code.symbol(x, i) == code.symbol(y, i))
        })
    })
}

/// Collision number with the default probe budget.
pub fn collision_number(code: &Code, size_cap: usize) -> Result<CollisionReport, CodeError> {
    collision_number_with_budget(code, size_cap, COLLISION_BUDGET)
}

/// Smallest subset of codewords colliding on every coordinate, found by
/// exhaustive search over sizes `2, 3, …, min(size_cap, |C|)` with subsets in
/// lexicographic order of message indices.
///
/// Colliding on every coordinate is monotone under taking supersets, so if
/// the whole code fails to collide somewhere the answer is `Infinite`
/// without searching.
pub fn collision_number_with_budget(
    code: &Code,
    size_cap: usize,
    budget: u64,
) -> Result<CollisionReport, CodeError> {
    let distance = relative_distance(code)?;
    let bounds = col_bounds(code, &distance);
    let n = code.len();
    code.table()?;
    let mut state = CollisionState::new(code);
    for idx in 0..n {
        state.push(idx);
    }
    let whole_collides = state.collides_everywhere();
    for idx in 0..n {
        state.pop(idx);
    }
    if !whole_collides {
        return Ok(CollisionReport {
            collision_number: CollisionNumber::Infinite,
            witness: None,
            bounds,
            distance,
            probes: 1,
        });
    }
    let mut probes = 0u64;
    let max_size = size_cap.min(n);
    for size in 2..=max_size {
        let mut chosen = Vec::with_capacity(size);
        if search(&mut state, &mut chosen, 0, size, &mut probes, budget)? {
            return Ok(CollisionReport {
                collision_number: CollisionNumber::Finite(size),
                witness: Some(chosen),
                bounds,
                distance,
                probes,
            });
        }
    }
    // the whole code collides, so the search can only end early through the cap
    Ok(CollisionReport {
        collision_number: CollisionNumber::UnknownAbove(max_size),
        witness: None,
        bounds,
        distance,
        probes,
    })
}

fn search(
    state: &mut CollisionState<'_>,
    chosen: &mut Vec<usize>,
    start: usize,
    size: usize,
    probes: &mut u64,
    budget: u64,
) -> Result<bool, CodeError> {
    if chosen.len() == size {
        *probes += 1;
        if *probes > budget {
            return Err(CodeError::BudgetExceeded { limit: budget });
        }
        return Ok(state.collides_everywhere());
    }
    let n = state.code.len();
    let remaining = size - chosen.len();
    for idx in start..=n - remaining {
        state.push(idx);
        chosen.push(idx);
        if search(state, chosen, idx + 1, size, probes, budget)? {
            state.pop(idx);
            return Ok(true);
        }
        chosen.pop();
        state.pop(idx);
    }
    Ok(false)
}
