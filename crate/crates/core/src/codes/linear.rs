//! Linear algebra over prime fields, used to measure the minimum distance of
//! linear codes too large to enumerate pairwise.
//!
//! For a linear code the minimum distance equals the minimum weight of a
//! nonzero codeword. A nonzero message vanishes on a coordinate set `Z` iff
//! the generator columns indexed by `Z` have rank `< r`, so the largest such
//! `Z` gives the maximum number of zeros of a nonzero codeword.

use crate::combinatorics::{binomial, next_combination, rank_digits};

use super::{Code, CodeError, Symbol};

/// Column-subset evaluations allowed before giving up.
pub const LINEAR_SUBSET_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDistance {
    /// Minimum Hamming weight of a nonzero codeword.
    pub min_weight: usize,
    /// Rank of a nonzero message whose codeword has that weight.
    pub message_index: usize,
    /// Column subsets whose rank was evaluated.
    pub subsets_examined: u64,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces `m` to row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(sel) = (row..m.len()).find(|&i| !m[i][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(row, sel);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && r[col] != 0 {
                let f = r[col];
                for (x, &y) in r.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix over GF(p).
pub fn rank_mod_p(rows: &[Vec<Symbol>], p: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    echelon(&mut m, p as u64).len()
}

/// A nonzero `x` (length `n`) with `m x = 0`, if one exists.
fn kernel_vector(mut m: Vec<Vec<u64>>, n: usize, p: u64) -> Option<Vec<u64>> {
    if m.is_empty() {
        let mut x = vec![0; n];
        x[0] = 1;
        return Some(x);
    }
    let pivots = echelon(&mut m, p);
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = vec![0u64; n];
    x[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = (p - m[row][free] % p) % p;
    }
    Some(x)
}

/// Exact minimum distance of a linear code via column-subset ranks.
pub fn min_distance_linear(code: &Code) -> Result<LinearDistance, CodeError> {
    let generator = code
        .generator()
        .ok_or_else(|| CodeError::InvalidParameter("code has no generator matrix".into()))?;
    let (r, ell, p) = (code.r(), code.ell(), code.q() as u64);
    let total: u128 = (0..ell).map(|z| binomial(ell, z)).sum();
    if total > LINEAR_SUBSET_CAP {
        return Err(CodeError::CapExceeded {
            what: "column subsets",
            needed: total,
            cap: LINEAR_SUBSET_CAP,
        });
    }
    let mut examined = 0u64;
    for z in (0..ell).rev() {
        let mut cols: Vec<usize> = (0..z).collect();
        loop {
            examined += 1;
            // transpose of G restricted to `cols`: z rows, r unknowns
            let sub: Vec<Vec<u64>> = cols
                .iter()
                .map(|&c| generator.iter().map(|row| row[c] as u64).collect())
                .collect();
            if let Some(x) = kernel_vector(sub, r, p) {
                let digits: Vec<Symbol> = x.iter().map(|&v| v as Symbol).collect();
                let message_index = rank_digits(&digits, code.q());
                let weight = code
                    .codeword(message_index)
                    .iter()
                    .filter(|&&s| s != 0)
                    .count();
                debug_assert_eq!(weight, ell - z);
                return Ok(LinearDistance {
                    min_weight: weight,
                    message_index,
                    subsets_examined: examined,
                });
            }
            if !next_combination(&mut cols, ell) {
                break;
            }
        }
    }
    unreachable!("the empty coordinate set always admits a nonzero message")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::reed_solomon;

    #[test]
    fn ranks() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(rank_mod_p(&[vec![0, 0]], 7), 0);
    }

    #[test]
    fn kernel_is_nonzero_and_annihilates() {
        let m = vec![vec![1u64, 2, 3], vec![2, 4, 1]];
        let x = kernel_vector(m.clone(), 3, 7).unwrap();
        assert!(x.iter().any(|&v| v != 0));
        for row in &m {
            assert_eq!(row.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % 7, 0);
        }
        assert!(kernel_vector(vec![vec![1, 0], vec![0, 1]], 2, 5).is_none());
    }

    #[test]
    fn rs_min_weight() {
        for (q, r) in [(3, 1), (3, 2), (5, 2), (5, 4), (7, 3)] {
            let d = min_distance_linear(&reed_solomon(q, r).unwrap()).unwrap();
            assert_eq!(d.min_weight, q as usize - r + 1, "RS({q},{r})");
        }
    }
}
