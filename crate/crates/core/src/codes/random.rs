use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{message_space, Code, CodeError, CodeKind};

/// Seeded random code: each of the `q^r` codewords is drawn independently and
/// uniformly from `[q]^ell`.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`, and symbols
/// are drawn row by row in message order with `gen_range(0..q)`; both are
/// value-stable across platforms. A draw that repeats a codeword is reported
/// as [`CodeError::NotInjective`] rather than silently resampled.
pub fn random_code(q: u32, r: usize, ell: usize, seed: u64) -> Result<Code, CodeError> {
    if q < 2 {
        return Err(CodeError::InvalidParameter(format!(
            "alphabet size {q} < 2"
        )));
    }
    if r == 0 {
        return Err(CodeError::RankRange { r, q });
    }
    if ell == 0 {
        return Err(CodeError::InvalidParameter("block length 0".into()));
    }
    let count = message_space(q, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..count * ell).map(|_| rng.gen_range(0..q)).collect();
    Code::from_flat(q, r, ell, CodeKind::Random { seed }, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_determinism() {
        let a = random_code(2, 1, 4, 11).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.ell(), 4);
        assert!(a.codewords().flatten().all(|&s| s < 2));
        assert_eq!(a, random_code(2, 1, 4, 11).unwrap());
        let b = random_code(4, 2, 45, 7).unwrap();
        assert_eq!(b, random_code(4, 2, 45, 7).unwrap());
        assert_ne!(b, random_code(4, 2, 45, 8).unwrap());
    }

    #[test]
    fn duplicate_codewords_are_reported() {
        // one coordinate, 4 messages over a binary alphabet: pigeonhole
        assert!(matches!(
            random_code(2, 2, 1, 0),
            Err(CodeError::NotInjective { .. })
        ));
    }
}
