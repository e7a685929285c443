//! Exact rationals for distances and MaxCover values.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Non-negative exact rational. Wraps `num_rational::Ratio<i64>` so that it
/// can be serialized as a `"num/den"` string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub num_rational::Rational64);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(num_rational::Rational64::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(num_rational::Rational64::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }

    pub fn one_minus(self) -> Self {
        Rational(num_rational::Rational64::from_integer(1) - self.0)
    }

    pub fn mul_int(self, n: i64) -> Self {
        Rational(self.0 * n)
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |p: &str| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad rational {s:?}: {e}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err(format!("bad rational {s:?}: zero denominator"));
                }
                Ok(Rational::new(parse(n)?, d))
            }
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Smallest integer `n` with `n * n >= x`, computed exactly.
pub fn ceil_sqrt(x: Rational) -> u64 {
    let (num, den) = (x.numer().max(0) as u128, x.denom() as u128);
    // n^2 * den >= num
    let mut n = (x.to_f64().max(0.0).sqrt() as u128).saturating_sub(1);
    while n * n * den < num {
        n += 1;
    }
    while n > 0 && (n - 1) * (n - 1) * den >= num {
        n -= 1;
    }
    n as u64
}
