//! Truncated noncommutative integer power series and the Magnus expansion.
//!
//! Series live in Z<<X_1..X_m>> with every monomial of degree greater than
//! the truncation degree dropped. Coefficients are exact big integers;
//! monomials are stored sparsely and zero coefficients are never kept.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freegroup::{Gen, Word};

/// Monomial in the noncommutative variables, as the sequence of 1-based
/// variable indices. The empty sequence is the constant term.
pub type Monomial = Vec<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series mismatch: {0} variables/degree vs {1}")]
    Mismatch(String, String),
    #[error("monomial of length {len} exceeds truncation degree {deg}")]
    MonomialTooLong { len: usize, deg: usize },
    #[error("variable index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("word contains a non-meridian generator")]
    NonMeridianLetter,
}

/// Truncated series with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    m: usize,
    deg: usize,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl TruncSeries {
    pub fn zero(m: usize, deg: usize) -> Self {
        TruncSeries {
            m,
            deg,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, deg: usize) -> Self {
        let mut s = Self::zero(m, deg);
        s.coeffs.insert(Vec::new(), BigInt::one());
        s
    }

    /// `1 + X_i`, the expansion of a meridian generator.
    pub fn one_plus_var(m: usize, deg: usize, i: usize) -> Result<Self, SeriesError> {
        if i < 1 || i > m {
            return Err(SeriesError::IndexOutOfRange { index: i, m });
        }
        let mut s = Self::one(m, deg);
        if deg >= 1 {
            s.coeffs.insert(vec![i], BigInt::one());
        }
        Ok(s)
    }

    /// `1 - X_i + X_i^2 - ...` up to the truncation degree.
    pub fn geometric_inverse_var(m: usize, deg: usize, i: usize) -> Result<Self, SeriesError> {
        if i < 1 || i > m {
            return Err(SeriesError::IndexOutOfRange { index: i, m });
        }
        let mut s = Self::one(m, deg);
        let mut sign = BigInt::one();
        for d in 1..=deg {
            sign = -sign;
            s.coeffs.insert(vec![i; d], sign.clone());
        }
        Ok(s)
    }

    pub fn variables(&self) -> usize {
        self.m
    }

    pub fn truncation_degree(&self) -> usize {
        self.deg
    }

    /// Iterates stored (monomial, coefficient) pairs in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, mono: &[usize], c: &BigInt) {
        if c.is_zero() || mono.len() > self.deg {
            return;
        }
        match self.coeffs.get_mut(mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(mono);
                }
            }
            None => {
                self.coeffs.insert(mono.to_vec(), c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.m != other.m || self.deg != other.deg {
            return Err(SeriesError::Mismatch(
                format!("({}, deg {})", self.m, self.deg),
                format!("({}, deg {})", other.m, other.deg),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (mono, c) in other.coeffs.iter() {
            out.add_term(mono, c);
        }
        Ok(out)
    }

    /// Noncommutative product, dropping terms above the truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.m, self.deg);
        let mut buf: Monomial = Vec::with_capacity(self.deg);
        for (ma, ca) in self.coeffs.iter() {
            for (mb, cb) in other.coeffs.iter() {
                if ma.len() + mb.len() > self.deg {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(ma);
                buf.extend_from_slice(mb);
                out.add_term(&buf, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term 1, via the truncated geometric
    /// series in the augmentation part.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let one = BigInt::one();
        if self.coeffs.get(&Vec::new()) != Some(&one) {
            return Err(SeriesError::Mismatch(
                "series with constant term 1".into(),
                "other constant term".into(),
            ));
        }
        // n = self - 1; inverse = sum_{d} (-n)^d.
        let mut neg_n = self.clone();
        neg_n.coeffs.remove(&Vec::new());
        for c in neg_n.coeffs.values_mut() {
            *c = -std::mem::take(c);
        }
        let mut out = Self::one(self.m, self.deg);
        let mut power = Self::one(self.m, self.deg);
        for _ in 0..self.deg {
            power = power.mul(&neg_n)?;
            if power.coeffs.is_empty() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through `inverse`.
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.m, self.deg);
        let mut sq = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(out)
    }

    /// Coefficient of the given monomial, zero if absent.
    pub fn coefficient(&self, monomial: &[usize]) -> Result<BigInt, SeriesError> {
        if monomial.len() > self.deg {
            return Err(SeriesError::MonomialTooLong {
                len: monomial.len(),
                deg: self.deg,
            });
        }
        if let Some(&bad) = monomial.iter().find(|&&v| v < 1 || v > self.m) {
            return Err(SeriesError::IndexOutOfRange { index: bad, m: self.m });
        }
        Ok(self.coeffs.get(monomial).cloned().unwrap_or_default())
    }

    /// Expansion of one meridian letter.
    fn letter_expansion(m: usize, deg: usize, gen: &Gen, exp: i8) -> Result<Self, SeriesError> {
        let i = match gen {
            Gen::Meridian { strand } => *strand,
            Gen::Wirtinger { .. } => return Err(SeriesError::NonMeridianLetter),
        };
        if exp == 1 {
            Self::one_plus_var(m, deg, i)
        } else {
            Self::geometric_inverse_var(m, deg, i)
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in self.coeffs.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*", c)?;
                for (k, v) in mono.iter().enumerate() {
                    if k > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "X{}", v)?;
                }
            }
        }
        Ok(())
    }
}

/// Magnus expansion of a word in the meridian generators, truncated at
/// degree `deg`: the product of `1 + X_i` / `1 - X_i + X_i^2 - ...` over
/// the letters.
pub fn magnus_expand(word: &Word, m: usize, deg: usize) -> Result<TruncSeries, SeriesError> {
    let mut out = TruncSeries::one(m, deg);
    for &(g, e) in word.letters() {
        let letter = TruncSeries::letter_expansion(m, deg, &g, e)?;
        out = out.mul(&letter)?;
    }
    Ok(out)
}
