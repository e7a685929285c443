//! k-MaxCover instances, the exact labeling solver, the pseudo-projection
//! profile and the code-based gap compositions.
//!
//! An instance has left parts `V_1..V_k` and right parts `W_1..W_t`. A
//! labeling picks one vertex from each `V_i`; it covers `W_j` when some
//! `w ∈ W_j` is adjacent to every picked vertex. The value of an instance is
//! the best fraction of covered right parts.

mod certificate;
mod compose;

pub use certificate::{certify_composition, gap_certificate, GapCertificate, GapVerdict};
pub use compose::{
    compose_gap, compose_gap_k2_bounded, ComposedMaxCover, CompositionRule, Matching,
};

use serde::Serialize;
use thiserror::Error;

use crate::codes::CodeError;
use crate::combinatorics::{next_mixed_radix, BitSet};
use crate::rational::Rational;

pub const DEFAULT_LABELING_CAP: u128 = 10_000_000;
/// Cap on `|V| * |W|` adjacency queries for profile scans and materialization.
pub const DEFAULT_PAIR_CAP: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaxCoverError {
    #[error("instance needs at least one {0} part")]
    NoParts(&'static str),
    #[error("{side} part {part} is empty")]
    EmptyPart { side: &'static str, part: usize },
    #[error("edge ({0}, {1}) does not join a V-vertex to a W-vertex")]
    BadEdge(usize, usize),
    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("not pseudo-projection: V_{v_part} against W_{w_part}")]
    NotPseudoProjection { v_part: usize, w_part: usize },
    #[error("W_{part} has {size} vertices but the code has only {capacity} codewords")]
    MatchingOverflow {
        part: usize,
        size: usize,
        capacity: usize,
    },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("the bounded composition needs k = 2, got k = {0}")]
    NotTwoParts(usize),
    #[error("vertex {vertex} of V_{v_part} has {degree} neighbors in W_{w_part}, bound is {d}")]
    DegreeBound {
        v_part: usize,
        vertex: usize,
        w_part: usize,
        degree: usize,
        d: usize,
    },
    #[error("alphabet size {0} is above the supported 64")]
    AlphabetTooLarge(u32),
    #[error("labeling {0:?} does not fit the instance")]
    BadLabeling(Vec<usize>),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A vertex named by its part and its index inside the part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub part: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(part: usize, index: usize) -> Self {
        Vertex { part, index }
    }
}

/// Read-only view of a MaxCover instance. Adjacency must be total and pure
/// for in-range vertices.
pub trait MaxCoverGraph {
    fn v_parts(&self) -> &[usize];
    fn w_parts(&self) -> &[usize];
    fn adjacent(&self, v: Vertex, w: Vertex) -> bool;

    fn k(&self) -> usize {
        self.v_parts().len()
    }

    fn t(&self) -> usize {
        self.w_parts().len()
    }

    fn provenance(&self) -> String {
        String::new()
    }

    /// Whether the labeling (one local index per V-part) covers `W_j`.
    fn covers(&self, labeling: &[usize], j: usize) -> bool {
        (0..self.w_parts()[j]).any(|w| {
            let w = Vertex::new(j, w);
            labeling
                .iter()
                .enumerate()
                .all(|(i, &v)| self.adjacent(Vertex::new(i, v), w))
        })
    }
}

fn check_parts(v_parts: &[usize], w_parts: &[usize]) -> Result<(), MaxCoverError> {
    if v_parts.is_empty() {
        return Err(MaxCoverError::NoParts("V"));
    }
    if w_parts.is_empty() {
        return Err(MaxCoverError::NoParts("W"));
    }
    if let Some(part) = v_parts.iter().position(|&s| s == 0) {
        return Err(MaxCoverError::EmptyPart { side: "V", part });
    }
    if let Some(part) = w_parts.iter().position(|&s| s == 0) {
        return Err(MaxCoverError::EmptyPart { side: "W", part });
    }
    Ok(())
}

fn offsets(parts: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    parts
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// An instance with an explicit edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCoverInstance {
    v_parts: Vec<usize>,
    w_parts: Vec<usize>,
    v_offsets: Vec<usize>,
    w_offsets: Vec<usize>,
    /// Row per V-vertex (global order), bits over W-vertices (global W order).
    rows: Vec<BitSet>,
    provenance: String,
}

impl MaxCoverInstance {
    /// Edges are `[v, w]` pairs of global ids: V-vertices take `0..|V|` in part
    /// order, W-vertices take `|V|..|V|+|W|`. Either endpoint order is accepted.
    pub fn new(
        v_parts: Vec<usize>,
        w_parts: Vec<usize>,
        edges: &[[usize; 2]],
        provenance: impl Into<String>,
    ) -> Result<Self, MaxCoverError> {
        check_parts(&v_parts, &w_parts)?;
        let nv: usize = v_parts.iter().sum();
        let nw: usize = w_parts.iter().sum();
        let mut rows = vec![BitSet::new(nw); nv];
        for &[a, b] in edges {
            let (v, w) = if a < nv { (a, b) } else { (b, a) };
            if v >= nv || w < nv || w >= nv + nw {
                return Err(MaxCoverError::BadEdge(a, b));
            }
            rows[v].insert(w - nv);
        }
        Ok(MaxCoverInstance {
            v_offsets: offsets(&v_parts),
            w_offsets: offsets(&w_parts),
            v_parts,
            w_parts,
            rows,
            provenance: provenance.into(),
        })
    }

    /// Builds the edge set from a predicate on `(v, w)`.
    pub fn from_fn(
        v_parts: Vec<usize>,
        w_parts: Vec<usize>,
        provenance: impl Into<String>,
        mut adjacent: impl FnMut(Vertex, Vertex) -> bool,
    ) -> Result<Self, MaxCoverError> {
        let mut inst = MaxCoverInstance::new(v_parts, w_parts, &[], provenance)?;
        for (i, &vs) in inst.v_parts.clone().iter().enumerate() {
            for v in 0..vs {
                let row = inst.v_offsets[i] + v;
                for (j, &ws) in inst.w_parts.clone().iter().enumerate() {
                    for w in 0..ws {
                        if adjacent(Vertex::new(i, v), Vertex::new(j, w)) {
                            inst.rows[row].insert(inst.w_offsets[j] + w);
                        }
                    }
                }
            }
        }
        Ok(inst)
    }

    pub fn v_count(&self) -> usize {
        self.rows.len()
    }

    pub fn w_count(&self) -> usize {
        self.w_parts.iter().sum()
    }

    pub fn v_id(&self, v: Vertex) -> usize {
        self.v_offsets[v.part] + v.index
    }

    pub fn w_id(&self, w: Vertex) -> usize {
        self.v_count() + self.w_offsets[w.part] + w.index
    }

    /// Sorted `[v, w]` pairs of global ids.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let nv = self.v_count();
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(v, row)| row.iter().map(move |w| [v, nv + w]))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn set_provenance(&mut self, provenance: impl Into<String>) {
        self.provenance = provenance.into();
    }

    /// Neighbors of `v` in `W_j`, as local indices.
    pub fn neighbors_in(&self, v: Vertex, j: usize) -> Vec<usize> {
        let row = &self.rows[self.v_id(v)];
        let o = self.w_offsets[j];
        (0..self.w_parts[j])
            .filter(|&w| row.contains(o + w))
            .collect()
    }
}

impl MaxCoverGraph for MaxCoverInstance {
    fn v_parts(&self) -> &[usize] {
        &self.v_parts
    }

    fn w_parts(&self) -> &[usize] {
        &self.w_parts
    }

    fn adjacent(&self, v: Vertex, w: Vertex) -> bool {
        self.rows[self.v_offsets[v.part] + v.index].contains(self.w_offsets[w.part] + w.index)
    }

    fn provenance(&self) -> String {
        self.provenance.clone()
    }
}

/// Scans every V-W pair of `g` into an explicit instance.
pub fn materialize<G: MaxCoverGraph + ?Sized>(
    g: &G,
    pair_cap: u128,
) -> Result<MaxCoverInstance, MaxCoverError> {
    let needed =
        g.v_parts().iter().sum::<usize>() as u128 * g.w_parts().iter().sum::<usize>() as u128;
    if needed > pair_cap {
        return Err(MaxCoverError::CapExceeded {
            what: "materialized adjacency pairs",
            needed,
            cap: pair_cap,
        });
    }
    MaxCoverInstance::from_fn(
        g.v_parts().to_vec(),
        g.w_parts().to_vec(),
        g.provenance(),
        |v, w| g.adjacent(v, w),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxCoverSolution {
    pub value: Rational,
    pub covered: usize,
    /// Lexicographically first optimal labeling.
    pub labeling: Vec<usize>,
    pub labelings_examined: u128,
}

/// Number of parts covered by `labeling`.
pub fn coverage<G: MaxCoverGraph + ?Sized>(
    g: &G,
    labeling: &[usize],
) -> Result<usize, MaxCoverError> {
    if labeling.len() != g.k() || labeling.iter().zip(g.v_parts()).any(|(&v, &s)| v >= s) {
        return Err(MaxCoverError::BadLabeling(labeling.to_vec()));
    }
    Ok((0..g.t()).filter(|&j| g.covers(labeling, j)).count())
}

/// Exact value by enumerating every labeling in lexicographic order.
pub fn maxcover_value<G: MaxCoverGraph + ?Sized>(
    g: &G,
    labeling_cap: u128,
) -> Result<MaxCoverSolution, MaxCoverError> {
    let needed = g
        .v_parts()
        .iter()
        .fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    if needed > labeling_cap {
        return Err(MaxCoverError::CapExceeded {
            what: "labelings",
            needed,
            cap: labeling_cap,
        });
    }
    let t = g.t();
    let mut labeling = vec![0usize; g.k()];
    let mut best = (0usize, labeling.clone());
    let mut examined = 0u128;
    loop {
        examined += 1;
        // stop counting once this labeling cannot beat the best one
        let mut covered = 0;
        for j in 0..t {
            if g.covers(&labeling, j) {
                covered += 1;
            } else if covered + (t - j - 1) <= best.0 {
                break;
            }
        }
        if covered > best.0 || examined == 1 {
            best = (covered, labeling.clone());
            if covered == t {
                break;
            }
        }
        if !next_mixed_radix(&mut labeling, g.v_parts()) {
            break;
        }
    }
    Ok(MaxCoverSolution {
        value: Rational::new(best.0 as i64, t as i64),
        covered: best.0,
        labeling: best.1,
        labelings_examined: examined,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileEntry {
    Projection,
    Full,
    Violation,
}

/// Classification of every `(V_i, W_j)` pair; `entries[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionProfile {
    pub entries: Vec<Vec<ProfileEntry>>,
}

impl ProjectionProfile {
    pub fn entry(&self, i: usize, j: usize) -> ProfileEntry {
        self.entries[j][i]
    }

    pub fn is_pseudo_projection(&self) -> bool {
        self.first_violation().is_none()
    }

    /// First `(i, j)` classified as a violation, scanning `j` then `i`.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        self.entries.iter().enumerate().find_map(|(j, row)| {
            row.iter()
                .position(|&e| e == ProfileEntry::Violation)
                .map(|i| (i, j))
        })
    }
}

/// An entry is a projection when every `v ∈ V_i` has exactly one neighbor in
/// `W_j` (checked first), full when `V_i × W_j` are all edges, else a violation.
pub fn projection_profile<G: MaxCoverGraph + ?Sized>(
    g: &G,
    pair_cap: u128,
) -> Result<ProjectionProfile, MaxCoverError> {
    let needed =
        g.v_parts().iter().sum::<usize>() as u128 * g.w_parts().iter().sum::<usize>() as u128;
    if needed > pair_cap {
        return Err(MaxCoverError::CapExceeded {
            what: "profile adjacency pairs",
            needed,
            cap: pair_cap,
        });
    }
    let entries = (0..g.t())
        .map(|j| {
            (0..g.k())
                .map(|i| {
                    let degrees: Vec<usize> = (0..g.v_parts()[i])
                        .map(|v| {
                            (0..g.w_parts()[j])
                                .filter(|&w| g.adjacent(Vertex::new(i, v), Vertex::new(j, w)))
                                .count()
                        })
                        .collect();
                    if degrees.iter().all(|&d| d == 1) {
                        ProfileEntry::Projection
                    } else if degrees.iter().all(|&d| d == g.w_parts()[j]) {
                        ProfileEntry::Full
                    } else {
                        ProfileEntry::Violation
                    }
                })
                .collect()
        })
        .collect();
    Ok(ProjectionProfile { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// V_1 = {v}, V_2 = {u}, W_1 = {w, w'}; v-w and u-w'.
    fn split_pair() -> MaxCoverInstance {
        MaxCoverInstance::new(vec![1, 1], vec![2], &[[0, 2], [1, 3]], "split").unwrap()
    }

    #[test]
    fn shared_neighbor_has_value_one() {
        let g = MaxCoverInstance::new(vec![1, 1], vec![1], &[[0, 2], [1, 2]], "").unwrap();
        let s = maxcover_value(&g, 10).unwrap();
        assert!(s.value.is_one());
        assert_eq!(s.labeling, vec![0, 0]);
    }

    #[test]
    fn half_covered_two_part_instance() {
        // V_1 = {v}, V_2 = {u}; W_1 = {w1}, W_2 = {w2, w2'}; both see w1, v-w2, u-w2'
        let g = MaxCoverInstance::new(
            vec![1, 1],
            vec![1, 2],
            &[[0, 2], [1, 2], [0, 3], [1, 4]],
            "",
        )
        .unwrap();
        let s = maxcover_value(&g, 10).unwrap();
        assert_eq!(s.value, Rational::new(1, 2));
        assert_eq!(s.labelings_examined, 1);
    }

    #[test]
    fn split_pair_is_zero_and_projection() {
        let g = split_pair();
        assert_eq!(maxcover_value(&g, 10).unwrap().value, Rational::zero());
        let p = projection_profile(&g, 100).unwrap();
        assert_eq!(
            p.entries,
            vec![vec![ProfileEntry::Projection, ProfileEntry::Projection]]
        );
        assert!(p.is_pseudo_projection());
    }

    #[test]
    fn lexicographically_first_optimum() {
        // V_1 has 3 vertices; vertices 1 and 2 both cover W_1 with u
        let g = MaxCoverInstance::new(vec![3, 1], vec![1], &[[1, 4], [2, 4], [3, 4]], "").unwrap();
        let s = maxcover_value(&g, 10).unwrap();
        assert_eq!(s.labeling, vec![1, 0]);
        assert_eq!(s.labelings_examined, 2);
        assert!(matches!(
            maxcover_value(&g, 2),
            Err(MaxCoverError::CapExceeded { needed: 3, .. })
        ));
    }

    #[test]
    fn profile_classes() {
        let full = MaxCoverInstance::from_fn(vec![2, 2], vec![2, 3], "", |_, _| true).unwrap();
        let p = projection_profile(&full, 1000).unwrap();
        assert!(p.entries.iter().flatten().all(|&e| e == ProfileEntry::Full));
        // v0 of V_1 sees two of three W_2 vertices
        let bad = MaxCoverInstance::from_fn(vec![2, 2], vec![2, 3], "", |v, w| {
            !(v == Vertex::new(0, 0) && w == Vertex::new(1, 2))
        })
        .unwrap();
        let p = projection_profile(&bad, 1000).unwrap();
        assert_eq!(p.entry(0, 1), ProfileEntry::Violation);
        assert_eq!(p.first_violation(), Some((0, 1)));
        assert_eq!(p.entry(0, 0), ProfileEntry::Full);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            MaxCoverInstance::new(vec![1, 0], vec![1], &[], "").unwrap_err(),
            MaxCoverError::EmptyPart { side: "V", part: 1 }
        );
        assert_eq!(
            MaxCoverInstance::new(vec![1], vec![], &[], "").unwrap_err(),
            MaxCoverError::NoParts("W")
        );
        assert_eq!(
            MaxCoverInstance::new(vec![1], vec![1], &[[0, 0]], "").unwrap_err(),
            MaxCoverError::BadEdge(0, 0)
        );
        assert_eq!(
            MaxCoverInstance::new(vec![1], vec![1], &[[0, 5]], "").unwrap_err(),
            MaxCoverError::BadEdge(0, 5)
        );
    }

    #[test]
    fn edges_round_trip() {
        let g = split_pair();
        assert_eq!(g.edges(), vec![[0, 2], [1, 3]]);
        let again = MaxCoverInstance::new(vec![1, 1], vec![2], &[[3, 1], [2, 0]], "split").unwrap();
        assert_eq!(again, g);
        assert_eq!(materialize(&g, 100).unwrap(), g);
    }
}
