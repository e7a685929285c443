//! End-to-end runs: front-end reduction, composition with a Reed–Solomon code,
//! and exact solving of both sides.
//!
//! The code has message length `r`, the smallest `r >= t` with `q^r` at least
//! the largest right part, so every part can be matched into the code.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::codes::{is_prime, reed_solomon, relative_distance, Code, CodeError};
use crate::combinatorics::checked_pow;
use crate::frontends::{
    clique_to_maxcover, sat_to_maxcover, Cnf3, FrontEnd, FrontendError, PartitionedGraph,
};
use crate::maxcover::{
    compose_gap, gap_certificate, GapVerdict, Matching, MaxCoverError, MaxCoverGraph,
    MaxCoverInstance, DEFAULT_LABELING_CAP,
};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("front-end: {0}")]
    Frontend(#[from] FrontendError),
    #[error("{stage}: {error}")]
    Stage {
        stage: &'static str,
        error: MaxCoverError,
    },
    #[error("code: {0}")]
    Code(#[from] CodeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Yes,
    No,
    Violation,
}

impl Verdict {
    /// 0 for YES, 1 for NO, 2 for VIOLATION.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Violation => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub left_parts: Vec<usize>,
    pub right_parts: Vec<usize>,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: u32,
    pub r: usize,
    pub ell: usize,
    /// `1 - r/q`.
    pub designed_delta: Rational,
    pub measured_delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub pipeline: &'static str,
    pub stages: Vec<Stage>,
    pub code: Option<CodeParams>,
    pub value_before: Option<Rational>,
    pub value_after: Option<Rational>,
    pub verdict: Verdict,
    /// `1 - value_after` when the verdict is NO and an instance was composed.
    pub gap: Option<Rational>,
    /// Set when the designed distance is 0, so the gap promise is empty.
    pub vacuous_gap: bool,
    /// Reason when the front-end settled the answer without an instance.
    pub decided_early: Option<String>,
    pub certificate: Option<GapVerdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub q: Option<u32>,
    pub labeling_cap: u128,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            q: None,
            labeling_cap: DEFAULT_LABELING_CAP,
        }
    }
}

/// Smallest `r >= t` with `q^r >= max_part`.
pub fn message_len(q: u32, t: usize, max_part: usize) -> usize {
    let mut r = t.max(1);
    while checked_pow(q as usize, r).is_some_and(|space| space < max_part) {
        r += 1;
    }
    r
}

/// Smallest prime `q > t` whose message length for `max_part` is below `q`.
pub fn default_q(t: usize, max_part: usize) -> u32 {
    let mut q = t as u32 + 1;
    loop {
        if is_prime(q) && message_len(q, t, max_part) < q as usize {
            return q;
        }
        q += 1;
    }
}

fn measured_delta(code: &Code) -> Result<Rational, CodeError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (code.q(), code.r());
    if let Some(&d) = cache.lock().unwrap().get(&key) {
        return Ok(d);
    }
    let d = relative_distance(code)?.relative_distance;
    cache.lock().unwrap().insert(key, d);
    Ok(d)
}

fn stage_of<G: MaxCoverGraph + ?Sized>(
    name: &'static str,
    g: &G,
    start: Instant,
    value: Option<Rational>,
) -> Stage {
    Stage {
        name,
        left_parts: g.v_parts().to_vec(),
        right_parts: g.w_parts().to_vec(),
        millis: start.elapsed().as_secs_f64() * 1e3,
        value,
    }
}

fn decided(pipeline: &'static str, reason: String, stages: Vec<Stage>) -> PipelineReport {
    PipelineReport {
        pipeline,
        stages,
        code: None,
        value_before: None,
        value_after: None,
        verdict: Verdict::No,
        gap: None,
        vacuous_gap: false,
        decided_early: Some(reason),
        certificate: None,
    }
}

fn run_composition(
    pipeline: &'static str,
    g0: &MaxCoverInstance,
    mut stages: Vec<Stage>,
    opts: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let t = g0.t();
    let max_part = g0.w_parts().iter().copied().max().unwrap_or(1);
    let q = opts.q.unwrap_or_else(|| default_q(t, max_part));
    let r = message_len(q, t, max_part);
    let start = Instant::now();
    let code = Arc::new(reed_solomon(q, r)?);
    let delta = measured_delta(&code)?;
    let params = CodeParams {
        q,
        r,
        ell: code.ell(),
        designed_delta: Rational::one() - Rational::new(r as i64, q as i64),
        measured_delta: delta,
    };
    let composed =
        compose_gap(g0, code, &Matching::LexRank).map_err(|error| PipelineError::Stage {
            stage: "compose",
            error,
        })?;
    stages.push(stage_of("compose", &composed, start, None));
    let start = Instant::now();
    let cert = gap_certificate(g0, &composed, delta, Rational::one(), opts.labeling_cap).map_err(
        |error| PipelineError::Stage {
            stage: "solve",
            error,
        },
    )?;
    stages.push(stage_of("solve", &composed, start, Some(cert.value_after)));
    let verdict = match cert.verdict {
        GapVerdict::Violation => Verdict::Violation,
        _ if cert.value_after.is_one() => Verdict::Yes,
        _ => Verdict::No,
    };
    Ok(PipelineReport {
        pipeline,
        stages,
        vacuous_gap: params.designed_delta == Rational::zero(),
        code: Some(params),
        value_before: Some(cert.value_before),
        value_after: Some(cert.value_after),
        gap: (verdict == Verdict::No).then(|| cert.value_after.one_minus()),
        verdict,
        decided_early: None,
        certificate: Some(cert.verdict),
    })
}

/// Clique front-end, then composition with a Reed–Solomon code.
pub fn wone_pipeline(
    h: &PartitionedGraph,
    opts: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let start = Instant::now();
    match clique_to_maxcover(h)? {
        FrontEnd::DecidedNo(reason) => Ok(decided("wone", reason, Vec::new())),
        FrontEnd::Instance(c) => {
            let stages = vec![stage_of("clique_to_maxcover", &c.instance, start, None)];
            run_composition("wone", &c.instance, stages, opts)
        }
    }
}

/// SAT front-end with `k` groups, then composition with a Reed–Solomon code.
pub fn eth_pipeline(
    phi: &Cnf3,
    k: usize,
    opts: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let start = Instant::now();
    match sat_to_maxcover(phi, k)? {
        FrontEnd::DecidedNo(reason) => Ok(decided("eth", reason, Vec::new())),
        FrontEnd::Instance(s) => {
            let stages = vec![stage_of("sat_to_maxcover", &s.instance, start, None)];
            run_composition("eth", &s.instance, stages, opts)
        }
    }
}
