//! Enumeration helpers shared by the exhaustive searches: lexicographic
//! combinations, mixed-radix odometers, base-q ranks, and a plain bitset.

/// Advance `combo` (strictly increasing indices into `0..n`) to the next
/// combination in lexicographic order. Returns `false` once exhausted.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advance a mixed-radix counter, last digit fastest. Returns `false` after
/// wrapping back to all zeros.
pub fn next_mixed_radix(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Lexicographic rank of a base-`q` digit string, first digit most significant.
pub fn rank_digits(digits: &[u32], q: u32) -> usize {
    digits
        .iter()
        .fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

/// Inverse of [`rank_digits`] for a string of `len` digits.
pub fn unrank_digits(mut rank: usize, q: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (rank % q as usize) as u32;
        rank /= q as usize;
    }
    out
}

/// Digit `pos` (0 = most significant) of `rank` written with `len` base-`q` digits.
pub fn digit_at(rank: usize, q: u32, len: usize, pos: usize) -> u32 {
    let shift = len - 1 - pos;
    ((rank / (q as usize).pow(shift as u32)) % q as usize) as u32
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Fixed-width bitset backed by `u64` words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_all(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// First index not in the set.
    pub fn first_missing(&self) -> Option<usize> {
        (0..self.len).find(|&i| !self.contains(i))
    }
}
