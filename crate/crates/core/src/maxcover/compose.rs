//! Composition of a MaxCover instance with the threshold graph of a code.
//!
//! `v ∈ V_i` is adjacent to `a ∈ A_l` iff there are `w_1..w_t`, all
//! neighbors of `v`, whose matched B-vertices are all adjacent to `a`. The
//! condition splits per right part: for each `j` some `w ∈ N(v) ∩ W_j` must
//! have `C(match(w))_l = a_j`. The set of such symbols is precomputed as a
//! bitmask per `(v, j, l)`, so adjacency costs `O(t)` and coverage of `A_l`
//! by a labeling is an intersection of masks.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::Code;
use crate::combinatorics::digit_at;
use crate::threshold::ThresholdGraph;

use super::{offsets, projection_profile, MaxCoverError, MaxCoverGraph, Vertex, DEFAULT_PAIR_CAP};

/// How `W_j` is injected into the message space of the code.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Matching {
    /// `w` with local index `x` goes to the message of rank `x`.
    #[default]
    LexRank,
    /// `matching[j][x]` is the message index for local vertex `x` of `W_j`.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum CompositionRule {
    PseudoProjection,
    DegreeBounded { d: usize },
}

#[derive(Clone, Debug)]
pub struct ComposedMaxCover {
    v_parts: Vec<usize>,
    a_parts: Vec<usize>,
    v_offsets: Vec<usize>,
    threshold: ThresholdGraph,
    /// `masks[(v * t + j) * ell + l]`, bit `s` set iff symbol `s` is reachable.
    masks: Vec<u64>,
    matching: Vec<Vec<usize>>,
    rule: CompositionRule,
    provenance: String,
}

impl ComposedMaxCover {
    pub fn threshold(&self) -> &ThresholdGraph {
        &self.threshold
    }

    pub fn code(&self) -> &Arc<Code> {
        self.threshold.code()
    }

    pub fn rule(&self) -> CompositionRule {
        self.rule
    }

    /// Message index matched to each vertex of each `W_j`.
    pub fn matching(&self) -> &[Vec<usize>] {
        &self.matching
    }

    /// Number of right parts of the input instance.
    pub fn input_t(&self) -> usize {
        self.threshold.t()
    }

    #[inline]
    fn mask(&self, v_global: usize, j: usize, l: usize) -> u64 {
        self.masks[(v_global * self.input_t() + j) * self.a_parts.len() + l]
    }

    /// Symbols of coordinate `l` reachable from `v` through `W_j`.
    pub fn allowed_symbols(&self, v: Vertex, j: usize, l: usize) -> Vec<u32> {
        let m = self.mask(self.v_offsets[v.part] + v.index, j, l);
        (0..64).filter(|s| m >> s & 1 == 1).collect()
    }
}

impl MaxCoverGraph for ComposedMaxCover {
    fn v_parts(&self) -> &[usize] {
        &self.v_parts
    }

    fn w_parts(&self) -> &[usize] {
        &self.a_parts
    }

    fn adjacent(&self, v: Vertex, a: Vertex) -> bool {
        let vg = self.v_offsets[v.part] + v.index;
        let q = self.code().q();
        let t = self.input_t();
        (0..t).all(|j| self.mask(vg, j, a.part) >> digit_at(a.index, q, t, j) & 1 == 1)
    }

    fn provenance(&self) -> String {
        self.provenance.clone()
    }

    fn covers(&self, labeling: &[usize], l: usize) -> bool {
        (0..self.input_t()).all(|j| {
            labeling.iter().enumerate().fold(u64::MAX, |acc, (i, &v)| {
                acc & self.mask(self.v_offsets[i] + v, j, l)
            }) != 0
        })
    }
}

fn resolve_matching<G: MaxCoverGraph + ?Sized>(
    g0: &G,
    code: &Code,
    matching: &Matching,
) -> Result<Vec<Vec<usize>>, MaxCoverError> {
    let capacity = code.len();
    for (j, &size) in g0.w_parts().iter().enumerate() {
        if size > capacity {
            return Err(MaxCoverError::MatchingOverflow {
                part: j,
                size,
                capacity,
            });
        }
    }
    match matching {
        Matching::LexRank => Ok(g0.w_parts().iter().map(|&s| (0..s).collect()).collect()),
        Matching::Explicit(m) => {
            if m.len() != g0.t() {
                return Err(MaxCoverError::InvalidMatching(format!(
                    "{} rows for {} parts",
                    m.len(),
                    g0.t()
                )));
            }
            for (j, row) in m.iter().enumerate() {
                if row.len() != g0.w_parts()[j] {
                    return Err(MaxCoverError::InvalidMatching(format!(
                        "row {j} has {} entries for {} vertices",
                        row.len(),
                        g0.w_parts()[j]
                    )));
                }
                let mut seen = vec![false; capacity];
                for &x in row {
                    if x >= capacity || std::mem::replace(&mut seen[x], true) {
                        return Err(MaxCoverError::InvalidMatching(format!(
                            "row {j}: message {x} out of range or repeated"
                        )));
                    }
                }
            }
            Ok(m.clone())
        }
    }
}

fn build<G: MaxCoverGraph + ?Sized>(
    g0: &G,
    code: Arc<Code>,
    matching: &Matching,
    rule: CompositionRule,
) -> Result<ComposedMaxCover, MaxCoverError> {
    if code.q() > 64 {
        return Err(MaxCoverError::AlphabetTooLarge(code.q()));
    }
    let matching = resolve_matching(g0, &code, matching)?;
    let t = g0.t();
    let threshold =
        ThresholdGraph::new(code.clone(), t).map_err(|_| MaxCoverError::CapExceeded {
            what: "threshold part size q^t",
            needed: u128::MAX,
            cap: usize::MAX as u128,
        })?;
    let ell = code.ell();
    let nv: usize = g0.v_parts().iter().sum();
    let mut masks = vec![0u64; nv * t * ell];
    let mut vg = 0;
    for (i, &vs) in g0.v_parts().iter().enumerate() {
        for v in 0..vs {
            for (j, part) in matching.iter().enumerate() {
                for (w, &m) in part.iter().enumerate() {
                    if g0.adjacent(Vertex::new(i, v), Vertex::new(j, w)) {
                        for l in 0..ell {
                            masks[(vg * t + j) * ell + l] |= 1u64 << code.symbol(m, l);
                        }
                    }
                }
            }
            vg += 1;
        }
    }
    let label = match rule {
        CompositionRule::PseudoProjection => "compose_gap".to_string(),
        CompositionRule::DegreeBounded { d } => format!("compose_gap_k2_bounded(d={d})"),
    };
    let provenance = match g0.provenance() {
        p if p.is_empty() => label,
        p => format!("{label} <- {p}"),
    };
    Ok(ComposedMaxCover {
        v_parts: g0.v_parts().to_vec(),
        a_parts: vec![threshold.a_part_size(); ell],
        v_offsets: offsets(g0.v_parts()),
        threshold,
        masks,
        matching,
        rule,
        provenance,
    })
}

/// Composes a pseudo-projection instance with `code`. The profile is checked
/// first, then the matching.
pub fn compose_gap<G: MaxCoverGraph + ?Sized>(
    g0: &G,
    code: Arc<Code>,
    matching: &Matching,
) -> Result<ComposedMaxCover, MaxCoverError> {
    let profile = projection_profile(g0, DEFAULT_PAIR_CAP)?;
    if let Some((v_part, w_part)) = profile.first_violation() {
        return Err(MaxCoverError::NotPseudoProjection { v_part, w_part });
    }
    build(g0, code, matching, CompositionRule::PseudoProjection)
}

/// The two-part variant: no projection requirement, but every vertex may have
/// at most `d` neighbors in each right part.
pub fn compose_gap_k2_bounded<G: MaxCoverGraph + ?Sized>(
    g0: &G,
    code: Arc<Code>,
    d: usize,
    matching: &Matching,
) -> Result<ComposedMaxCover, MaxCoverError> {
    if g0.k() != 2 {
        return Err(MaxCoverError::NotTwoParts(g0.k()));
    }
    for (i, &vs) in g0.v_parts().iter().enumerate() {
        for v in 0..vs {
            for (j, &ws) in g0.w_parts().iter().enumerate() {
                let degree = (0..ws)
                    .filter(|&w| g0.adjacent(Vertex::new(i, v), Vertex::new(j, w)))
                    .count();
                if degree > d {
                    return Err(MaxCoverError::DegreeBound {
                        v_part: i,
                        vertex: v,
                        w_part: j,
                        degree,
                        d,
                    });
                }
            }
        }
    }
    build(g0, code, matching, CompositionRule::DegreeBounded { d })
}
