//! Perfect hash families found by seeded random search and exhaustive
//! verification, and their reading as codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{binomial, checked_pow, next_combination};

use super::{Code, CodeError, CodeKind, Symbol};

/// `ell` functions `[n] -> [q]` such that every subset of `[n]` with at most
/// `q` elements is mapped injectively by at least one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectHashFamily {
    n: usize,
    q: u32,
    functions: Vec<Vec<Symbol>>,
}

impl PerfectHashFamily {
    /// Checks ranges and the perfect-hash property exhaustively.
    pub fn new(n: usize, q: u32, functions: Vec<Vec<Symbol>>) -> Result<Self, CodeError> {
        if n == 0 || q < 2 {
            return Err(CodeError::InvalidParameter(format!(
                "need n >= 1 and q >= 2, got n={n} q={q}"
            )));
        }
        for f in &functions {
            if f.len() != n {
                return Err(CodeError::InvalidParameter(format!(
                    "function table of length {} for domain size {n}",
                    f.len()
                )));
            }
            if let Some(&symbol) = f.iter().find(|&&s| s >= q) {
                return Err(CodeError::SymbolRange { symbol, q });
            }
        }
        let family = PerfectHashFamily { n, q, functions };
        if let Some(subset) = family.unseparated_subset(u64::MAX)? {
            return Err(CodeError::InvalidParameter(format!(
                "subset {subset:?} is not separated by any function"
            )));
        }
        Ok(family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.functions.len()
    }

    pub fn functions(&self) -> &[Vec<Symbol>] {
        &self.functions
    }

    /// First subset (lexicographic) of size `min(q, n)` on which no function is
    /// injective. Smaller subsets need no check: injectivity on a set implies
    /// injectivity on its subsets.
    pub fn unseparated_subset(&self, work_limit: u64) -> Result<Option<Vec<usize>>, CodeError> {
        unseparated(self.n, self.q, &self.functions, work_limit)
    }
}

fn unseparated(
    n: usize,
    q: u32,
    functions: &[Vec<Symbol>],
    work_limit: u64,
) -> Result<Option<Vec<usize>>, CodeError> {
    let size = (q as usize).min(n);
    let subsets = binomial(n, size);
    if subsets.saturating_mul(functions.len().max(1) as u128) > work_limit as u128 {
        return Err(CodeError::BudgetExceeded { limit: work_limit });
    }
    let mut subset: Vec<usize> = (0..size).collect();
    let mut seen = vec![false; q as usize];
    loop {
        let separated = functions.iter().any(|f| {
            seen.iter_mut().for_each(|s| *s = false);
            subset
                .iter()
                .all(|&x| !std::mem::replace(&mut seen[f[x] as usize], true))
        });
        if !separated {
            return Ok(Some(subset));
        }
        if !next_combination(&mut subset, n) {
            return Ok(None);
        }
    }
}

/// Search parameters for [`find_phf_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhfSearch {
    /// Independent random families tried at each family size.
    pub attempts_per_size: usize,
    /// Cap on subset-times-function checks summed over the whole search.
    pub work_limit: u64,
}

impl Default for PhfSearch {
    fn default() -> Self {
        PhfSearch {
            attempts_per_size: 256,
            work_limit: 100_000_000,
        }
    }
}

pub fn find_phf(
    n: usize,
    q: u32,
    ell_max: usize,
    seed: u64,
) -> Result<PerfectHashFamily, CodeError> {
    find_phf_with(n, q, ell_max, seed, PhfSearch::default())
}

/// Randomized search: for `ell = 1, 2, …, ell_max`, sample families of `ell`
/// uniformly random functions from a ChaCha8 stream seeded with `seed` and
/// return the first one that verifies.
pub fn find_phf_with(
    n: usize,
    q: u32,
    ell_max: usize,
    seed: u64,
    search: PhfSearch,
) -> Result<PerfectHashFamily, CodeError> {
    if n == 0 || q < 2 {
        return Err(CodeError::InvalidParameter(format!(
            "need n >= 1 and q >= 2, got n={n} q={q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spent = 0u64;
    let per_check = binomial(n, (q as usize).min(n)).min(u64::MAX as u128) as u64;
    for ell in 1..=ell_max {
        for _ in 0..search.attempts_per_size {
            let functions: Vec<Vec<Symbol>> = (0..ell)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            spent = spent.saturating_add(per_check.saturating_mul(ell as u64));
            if spent > search.work_limit {
                return Err(CodeError::BudgetExceeded {
                    limit: search.work_limit,
                });
            }
            if unseparated(n, q, &functions, u64::MAX)?.is_none() {
                return Ok(PerfectHashFamily { n, q, functions });
            }
        }
    }
    Err(CodeError::NotFound { ell_max })
}

/// Reads a family as a code: codeword `x` has coordinate `i` equal to `h_i(x)`.
/// Messages are the integers `0..n`, written in base `q` with the smallest
/// `r` such that `q^r >= n`.
pub fn phf_to_code(phf: &PerfectHashFamily) -> Result<Code, CodeError> {
    let mut r = 1;
    while checked_pow(phf.q as usize, r).is_some_and(|space| space < phf.n) {
        r += 1;
    }
    let rows = (0..phf.n)
        .map(|x| phf.functions.iter().map(|f| f[x]).collect())
        .collect();
    Code::from_table(phf.q, r, CodeKind::Phf, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_one_function() {
        let phf = find_phf(2, 2, 1, 0).unwrap();
        assert_eq!(phf.ell(), 1);
        let f = &phf.functions()[0];
        assert_ne!(f[0], f[1]);
        let code = phf_to_code(&phf).unwrap();
        assert_eq!(code.len(), 2);
        assert_eq!(code.ell(), 1);
        assert_eq!(code.r(), 1);
    }

    #[test]
    fn injective_map_into_four() {
        let phf = find_phf(4, 4, 1, 5).unwrap();
        let mut image = phf.functions()[0].clone();
        image.sort();
        assert_eq!(image, vec![0, 1, 2, 3]);
    }

    #[test]
    fn eight_points_binary() {
        let phf = find_phf(8, 2, 16, 1).unwrap();
        for a in 0..8 {
            for b in a + 1..8 {
                assert!(phf.functions().iter().any(|f| f[a] != f[b]), "pair {a},{b}");
            }
        }
        let code = phf_to_code(&phf).unwrap();
        assert_eq!(code.len(), 8);
        assert_eq!(code.r(), 3);
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(
            find_phf(6, 3, 12, 9).unwrap(),
            find_phf(6, 3, 12, 9).unwrap()
        );
    }

    #[test]
    fn failure_modes() {
        // a single function cannot separate 3 points into 2 values
        assert_eq!(
            find_phf(3, 2, 1, 0).unwrap_err(),
            CodeError::NotFound { ell_max: 1 }
        );
        let tight = PhfSearch {
            attempts_per_size: 4,
            work_limit: 10,
        };
        assert!(matches!(
            find_phf_with(10, 3, 5, 0, tight),
            Err(CodeError::BudgetExceeded { limit: 10 })
        ));
        assert!(PerfectHashFamily::new(3, 2, vec![vec![0, 0, 1]]).is_err());
        assert!(PerfectHashFamily::new(2, 2, vec![vec![1, 0]]).is_ok());
    }
}
