//! Checking the two implications of a gap composition on concrete instances.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::{relative_distance, Code};
use crate::rational::Rational;

use super::{
    compose_gap, compose_gap_k2_bounded, maxcover_value, ComposedMaxCover, Matching, MaxCoverError,
    MaxCoverGraph, MaxCoverSolution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GapVerdict {
    CompletenessOk,
    SoundnessOk,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    pub value_before: Rational,
    pub value_after: Rational,
    pub delta: Rational,
    pub bound_factor: Rational,
    /// `bound_factor * (1 - delta)`, the soundness ceiling.
    pub bound: Rational,
    pub verdict: GapVerdict,
    /// Labeling of the input that covers everything (completeness), or of the
    /// output whose value breaks the bound (soundness), when in violation.
    pub witness: Option<Vec<usize>>,
    pub before: MaxCoverSolution,
    pub after: MaxCoverSolution,
    /// True when the soundness ceiling is at least 1 and so says nothing.
    pub vacuous: bool,
}

impl GapCertificate {
    /// The verdict implied by the two values and the bound.
    pub fn recompute(value_before: Rational, value_after: Rational, bound: Rational) -> GapVerdict {
        if value_before.is_one() {
            if value_after.is_one() {
                GapVerdict::CompletenessOk
            } else {
                GapVerdict::Violation
            }
        } else if value_after > bound {
            GapVerdict::Violation
        } else {
            GapVerdict::SoundnessOk
        }
    }
}

/// Solves both instances exactly and classifies the pair.
pub fn gap_certificate<B, A>(
    before: &B,
    after: &A,
    delta: Rational,
    bound_factor: Rational,
    labeling_cap: u128,
) -> Result<GapCertificate, MaxCoverError>
where
    B: MaxCoverGraph + ?Sized,
    A: MaxCoverGraph + ?Sized,
{
    let sb = maxcover_value(before, labeling_cap)?;
    let sa = maxcover_value(after, labeling_cap)?;
    let bound = bound_factor * delta.one_minus();
    let verdict = GapCertificate::recompute(sb.value, sa.value, bound);
    let witness = match verdict {
        GapVerdict::Violation if sb.value.is_one() => Some(sb.labeling.clone()),
        GapVerdict::Violation => Some(sa.labeling.clone()),
        _ => None,
    };
    Ok(GapCertificate {
        value_before: sb.value,
        value_after: sa.value,
        delta,
        bound_factor,
        bound,
        verdict,
        witness,
        vacuous: bound >= Rational::one(),
        before: sb,
        after: sa,
    })
}

/// Composes with `code` (the bounded rule when `d` is given), measures the
/// exact distance of `code`, and certifies the result.
pub fn certify_composition<G: MaxCoverGraph + ?Sized>(
    g0: &G,
    code: Arc<Code>,
    d: Option<usize>,
    labeling_cap: u128,
) -> Result<(ComposedMaxCover, GapCertificate), MaxCoverError> {
    let delta = relative_distance(&code)?.relative_distance;
    let (composed, factor) = match d {
        None => (compose_gap(g0, code, &Matching::LexRank)?, Rational::one()),
        Some(d) => (
            compose_gap_k2_bounded(g0, code, d, &Matching::LexRank)?,
            Rational::from_integer((d * d) as i64),
        ),
    };
    let cert = gap_certificate(g0, &composed, delta, factor, labeling_cap)?;
    Ok((composed, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::reed_solomon;
    use crate::maxcover::MaxCoverInstance;

    #[test]
    fn verdicts() {
        let full = MaxCoverInstance::from_fn(vec![1, 1], vec![1, 1], "", |_, _| true).unwrap();
        let (_, c) =
            certify_composition(&full, Arc::new(reed_solomon(3, 2).unwrap()), None, 1000).unwrap();
        assert_eq!(c.verdict, GapVerdict::CompletenessOk);
        let split = MaxCoverInstance::new(vec![1, 1], vec![2], &[[0, 2], [1, 3]], "").unwrap();
        let (_, c) =
            certify_composition(&split, Arc::new(reed_solomon(3, 2).unwrap()), None, 1000).unwrap();
        assert_eq!(c.verdict, GapVerdict::SoundnessOk);
        assert!(c.value_after <= Rational::new(2, 3));
        assert_eq!(c.bound, Rational::new(1, 3));
        assert!(!c.vacuous);
    }

    #[test]
    fn recompute_table() {
        let (one, zero, half) = (Rational::one(), Rational::zero(), Rational::new(1, 2));
        assert_eq!(
            GapCertificate::recompute(one, one, half),
            GapVerdict::CompletenessOk
        );
        assert_eq!(
            GapCertificate::recompute(one, half, half),
            GapVerdict::Violation
        );
        assert_eq!(
            GapCertificate::recompute(zero, half, half),
            GapVerdict::SoundnessOk
        );
        assert_eq!(
            GapCertificate::recompute(zero, one, half),
            GapVerdict::Violation
        );
    }
}
