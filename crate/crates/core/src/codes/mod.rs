//! Finite q-ary codes: construction, encoding, and exact measurement.
//!
//! Codewords are indexed by message rank: messages are length-`r` strings over
//! `[q]`, ranked lexicographically with the first symbol most significant.
//! Reed–Solomon and random codes have exactly `q^r` codewords; codes derived
//! from perfect hash families or read from explicit tables may use only a
//! prefix `0..len` of the message space.

mod linear;
mod measure;
mod phf;
mod random;
mod reed_solomon;

use std::borrow::Cow;
use std::collections::HashMap;

use thiserror::Error;

use crate::combinatorics::{checked_pow, rank_digits, unrank_digits};

pub use linear::{min_distance_linear, rank_mod_p, LinearDistance};
pub use measure::{
    col_bounds, collides_on_every_coordinate, collision_number, collision_number_with_budget,
    relative_distance, ColBounds, CollisionNumber, CollisionReport, DistanceMethod, DistanceReport,
    LowerBound, COLLISION_BUDGET, DISTANCE_PAIR_CAP,
};
pub use phf::{find_phf, find_phf_with, phf_to_code, PerfectHashFamily, PhfSearch};
pub use random::random_code;
pub use reed_solomon::{is_prime, reed_solomon};

pub type Symbol = u32;

/// Largest codeword table a code may materialize (`q^r` entries).
pub const ENUMERATION_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("message has length {got}, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("symbol {symbol} is outside the alphabet [0, {q})")]
    SymbolRange { symbol: Symbol, q: u32 },
    #[error("alphabet size {0} is not prime")]
    NotPrime(u32),
    #[error("message length {r} is out of range for field size {q}")]
    RankRange { r: usize, q: u32 },
    #[error("{what} needs {needed} entries, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("search exceeded its work limit of {limit}")]
    BudgetExceeded { limit: u64 },
    #[error("no perfect hash family found with at most {ell_max} functions")]
    NotFound { ell_max: usize },
    #[error("messages {first} and {second} encode to the same codeword")]
    NotInjective { first: usize, second: usize },
    #[error("message index {index} is outside the code's {len} messages")]
    MessageOutOfDomain { index: usize, len: usize },
    #[error("table does not match its declared kind: {0}")]
    KindMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeKind {
    ReedSolomon,
    Random { seed: u64 },
    Phf,
    Explicit,
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::ReedSolomon => "reed_solomon",
            CodeKind::Random { .. } => "random",
            CodeKind::Phf => "phf",
            CodeKind::Explicit => "explicit",
        }
    }
}

/// A q-ary code with an injective encoder.
///
/// The codeword table is materialized whenever `|C|` is within
/// [`ENUMERATION_CAP`]. Linear codes over a prime field additionally keep
/// their `r x ell` generator matrix, which lets Reed–Solomon codes above the
/// cap still encode on demand and be measured algebraically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: u32,
    r: usize,
    ell: usize,
    kind: CodeKind,
    len: usize,
    table: Option<Vec<Symbol>>,
    generator: Option<Vec<Vec<Symbol>>>,
}

impl Code {
    /// Builds a code from explicit rows, checking shape, symbol range and
    /// injectivity. `Reed–Solomon` and `Random` tables are regenerated and
    /// compared so a mislabeled table is rejected.
    pub fn from_table(
        q: u32,
        r: usize,
        kind: CodeKind,
        rows: Vec<Vec<Symbol>>,
    ) -> Result<Code, CodeError> {
        if q < 2 {
            return Err(CodeError::InvalidParameter(format!(
                "alphabet size {q} < 2"
            )));
        }
        if r == 0 {
            return Err(CodeError::RankRange { r, q });
        }
        if rows.is_empty() {
            return Err(CodeError::InvalidParameter("empty codeword table".into()));
        }
        let ell = rows[0].len();
        if ell == 0 {
            return Err(CodeError::InvalidParameter("block length 0".into()));
        }
        let space = message_space(q, r)?;
        if rows.len() > space {
            return Err(CodeError::InvalidParameter(format!(
                "{} codewords exceed the {space} messages of length {r}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(rows.len() * ell);
        for row in &rows {
            if row.len() != ell {
                return Err(CodeError::InvalidParameter(format!(
                    "ragged table: row of length {} in a code of block length {ell}",
                    row.len()
                )));
            }
            if let Some(&symbol) = row.iter().find(|&&s| s >= q) {
                return Err(CodeError::SymbolRange { symbol, q });
            }
            table.extend_from_slice(row);
        }
        let code = Code {
            q,
            r,
            ell,
            kind,
            len: rows.len(),
            table: Some(table),
            generator: None,
        };
        code.check_injective()?;
        match &code.kind {
            CodeKind::ReedSolomon => {
                let reference = reed_solomon(q, r)?;
                if code.len != space || reference.table != code.table {
                    return Err(CodeError::KindMismatch("not the Reed–Solomon table".into()));
                }
                Ok(reference)
            }
            CodeKind::Random { seed } => {
                if code.len != space || random_code(q, r, ell, *seed)? != code {
                    return Err(CodeError::KindMismatch(format!(
                        "not the random table for seed {seed}"
                    )));
                }
                Ok(code)
            }
            CodeKind::Phf | CodeKind::Explicit => Ok(code),
        }
    }

    /// Internal constructor for generators that already guarantee shape and range.
    pub(crate) fn from_flat(
        q: u32,
        r: usize,
        ell: usize,
        kind: CodeKind,
        table: Vec<Symbol>,
    ) -> Result<Code, CodeError> {
        debug_assert_eq!(table.len() % ell, 0);
        let code = Code {
            q,
            r,
            ell,
            kind,
            len: table.len() / ell,
            table: Some(table),
            generator: None,
        };
        code.check_injective()?;
        Ok(code)
    }

    /// Linear code over the prime field GF(q) given by a full-rank generator
    /// matrix (`r` rows of length `ell`). The table is materialized when
    /// `q^r` is within [`ENUMERATION_CAP`].
    pub(crate) fn from_generator(
        q: u32,
        kind: CodeKind,
        generator: Vec<Vec<Symbol>>,
    ) -> Result<Code, CodeError> {
        let r = generator.len();
        let ell = generator.first().map_or(0, Vec::len);
        if r == 0 || ell == 0 {
            return Err(CodeError::InvalidParameter("empty generator matrix".into()));
        }
        if rank_mod_p(&generator, q) != r {
            return Err(CodeError::InvalidParameter(
                "generator matrix is not full rank".into(),
            ));
        }
        let len = checked_pow(q as usize, r).ok_or(CodeError::CapExceeded {
            what: "message space",
            needed: u128::MAX,
            cap: usize::MAX as u128,
        })?;
        let mut code = Code {
            q,
            r,
            ell,
            kind,
            len,
            table: None,
            generator: Some(generator),
        };
        if len <= ENUMERATION_CAP {
            let mut table = Vec::with_capacity(len * ell);
            for index in 0..len {
                table.extend(code.encode_linear(index));
            }
            code.table = Some(table);
        }
        Ok(code)
    }

    fn check_injective(&self) -> Result<(), CodeError> {
        let Some(table) = &self.table else {
            return Ok(());
        };
        let mut seen: HashMap<&[Symbol], usize> = HashMap::with_capacity(self.len);
        for (idx, row) in table.chunks_exact(self.ell).enumerate() {
            if let Some(first) = seen.insert(row, idx) {
                return Err(CodeError::NotInjective { first, second: idx });
            }
        }
        Ok(())
    }

    fn encode_linear(&self, index: usize) -> Vec<Symbol> {
        let generator = self.generator.as_ref().expect("linear code");
        let message = unrank_digits(index, self.q, self.r);
        let p = self.q as u64;
        (0..self.ell)
            .map(|coord| {
                let acc = message.iter().zip(generator).fold(0u64, |acc, (&m, row)| {
                    (acc + m as u64 * row[coord] as u64) % p
                });
                acc as Symbol
            })
            .collect()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    /// Number of codewords `|C|`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Generator matrix, for linear codes.
    pub fn generator(&self) -> Option<&[Vec<Symbol>]> {
        self.generator.as_deref()
    }

    /// Whether the full codeword table is held in memory.
    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    /// Materialized table, or `CapExceeded` for codes too large to enumerate.
    pub fn table(&self) -> Result<&[Symbol], CodeError> {
        self.table.as_deref().ok_or(CodeError::CapExceeded {
            what: "codeword table",
            needed: self.len as u128,
            cap: ENUMERATION_CAP as u128,
        })
    }

    /// Codeword of the message with lexicographic rank `index`.
    pub fn codeword(&self, index: usize) -> Cow<'_, [Symbol]> {
        match &self.table {
            Some(t) => Cow::Borrowed(&t[index * self.ell..(index + 1) * self.ell]),
            None => Cow::Owned(self.encode_linear(index)),
        }
    }

    /// Coordinate `coord` of codeword `index`.
    #[inline]
    pub fn symbol(&self, index: usize, coord: usize) -> Symbol {
        match &self.table {
            Some(t) => t[index * self.ell + coord],
            None => self.encode_linear(index)[coord],
        }
    }

    /// Iterates the materialized table; empty for table-less codes.
    pub fn codewords(&self) -> impl Iterator<Item = &[Symbol]> {
        self.table.as_deref().unwrap_or(&[]).chunks_exact(self.ell)
    }

    /// Message string of rank `index`.
    pub fn message(&self, index: usize) -> Vec<Symbol> {
        unrank_digits(index, self.q, self.r)
    }

    /// Rank of a message string, validated against this code.
    pub fn message_index(&self, message: &[Symbol]) -> Result<usize, CodeError> {
        if message.len() != self.r {
            return Err(CodeError::MessageLength {
                expected: self.r,
                got: message.len(),
            });
        }
        if let Some(&symbol) = message.iter().find(|&&s| s >= self.q) {
            return Err(CodeError::SymbolRange { symbol, q: self.q });
        }
        let index = rank_digits(message, self.q);
        if index >= self.len {
            return Err(CodeError::MessageOutOfDomain {
                index,
                len: self.len,
            });
        }
        Ok(index)
    }

    /// Encodes a message string.
    pub fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        Ok(self.codeword(self.message_index(message)?).into_owned())
    }

    /// All codewords as rows, in message order (materialized codes only).
    pub fn rows(&self) -> Vec<Vec<Symbol>> {
        self.codewords().map(<[Symbol]>::to_vec).collect()
    }
}

/// `q^r`, refusing anything above [`ENUMERATION_CAP`].
pub(crate) fn message_space(q: u32, r: usize) -> Result<usize, CodeError> {
    match checked_pow(q as usize, r) {
        Some(n) if n <= ENUMERATION_CAP => Ok(n),
        other => Err(CodeError::CapExceeded {
            what: "codeword table",
            needed: other.map_or(u128::MAX, |n| n as u128),
            cap: ENUMERATION_CAP as u128,
        }),
    }
}
