use super::{Code, CodeError, CodeKind, Symbol};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reed–Solomon code over the prime field GF(q) with message length `r`.
///
/// Message `(c_0, …, c_{r-1})` is the polynomial `c_0 + c_1 x + … + c_{r-1} x^{r-1}`;
/// its codeword is the evaluation at `x = 0, 1, …, q-1`, so `ell = q`. The
/// generator matrix row `k` holds `x^k` at each evaluation point.
pub fn reed_solomon(q: u32, r: usize) -> Result<Code, CodeError> {
    if !is_prime(q) {
        return Err(CodeError::NotPrime(q));
    }
    if r == 0 || r > q as usize {
        return Err(CodeError::RankRange { r, q });
    }
    let p = q as u64;
    let generator = (0..r)
        .map(|k| (0..p).map(|x| pow_mod(x, k as u64, p) as Symbol).collect())
        .collect();
    Code::from_generator(q, CodeKind::ReedSolomon, generator)
}

fn pow_mod(base: u64, exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    for _ in 0..exp {
        acc = acc * base % p;
    }
    acc
}
