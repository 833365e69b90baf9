//! Dense polynomials over GF(2), packed 64 coefficients per machine word.
//!
//! Bit `i` of the packed representation is the coefficient of `X^i`
//! (word `i / 64`, bit `i % 64`). The word vector is always normalized:
//! the last word, if any, is nonzero, so the zero polynomial is the empty
//! vector and has no degree.

mod clmul;
mod factor;
mod modulus;
mod shape;

pub use factor::{
    factor_count, has_factor_of_degree_le, is_irreducible, smallest_factor_degree,
    squarefree_decomposition, FactorCount,
};
pub use modulus::{pow_frobenius, Modulus};
pub use shape::{pent_poly, PentShape};

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial degree must be at least {min} (got {found})")]
    DegreeTooSmall { min: usize, found: String },
    #[error("factor search depth {depth} must satisfy 1 <= depth < degree {degree}")]
    BadDepth { depth: usize, degree: usize },
    #[error("invalid pentanomial shape (n = {n}, s = {s}): {reason}")]
    InvalidShape {
        n: usize,
        s: usize,
        reason: &'static str,
    },
    #[error("malformed hex polynomial {0:?}")]
    MalformedHex(String),
}

/// A polynomial over GF(2).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPoly {
    words: Vec<u64>,
}

pub(crate) fn normalize(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// Degree of a normalized word vector.
pub(crate) fn words_degree(words: &[u64]) -> Option<usize> {
    let last = *words.last()?;
    debug_assert!(last != 0);
    Some((words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - last.leading_zeros() as usize))
}

/// `dst ^= src << shift`. Bits that would land past the end of `dst` must be zero.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if bs == 0 {
        for (d, &s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    for (i, &s) in src.iter().enumerate() {
        dst[ws + i] ^= s << bs;
        let hi = s >> (WORD_BITS - bs);
        if hi != 0 {
            dst[ws + i + 1] ^= hi;
        }
    }
}

/// In-place `a mod m`, where `m` is normalized with degree `dm`.
/// When `quotient` is given, the quotient bits are accumulated into it.
pub(crate) fn rem_words(
    a: &mut Vec<u64>,
    m: &[u64],
    dm: usize,
    mut quotient: Option<&mut Vec<u64>>,
) {
    normalize(a);
    while let Some(d) = words_degree(a) {
        if d < dm {
            break;
        }
        let shift = d - dm;
        if let Some(q) = quotient.as_deref_mut() {
            let w = shift / WORD_BITS;
            if q.len() <= w {
                q.resize(w + 1, 0);
            }
            q[w] ^= 1 << (shift % WORD_BITS);
        }
        xor_shifted(a, m, shift);
        normalize(a);
    }
}

/// gcd where at most one argument is zero.
pub(crate) fn gcd_nonzero(a: &BitPoly, b: &BitPoly) -> BitPoly {
    let (mut a, mut b) = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) if db > da => (b.words.clone(), a.words.clone()),
        _ => (a.words.clone(), b.words.clone()),
    };
    while let Some(db) = words_degree(&b) {
        rem_words(&mut a, &b, db, None);
        std::mem::swap(&mut a, &mut b);
    }
    debug_assert!(!a.is_empty(), "gcd(0, 0)");
    BitPoly { words: a }
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BitPoly { words: vec![1] }
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        BitPoly { words: vec![2] }
    }

    pub fn monomial(exponent: usize) -> Self {
        let mut p = BitPoly::zero();
        p.flip(exponent);
        p
    }

    /// Builds a polynomial from exponents; a repeated exponent cancels.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = BitPoly::zero();
        for e in exponents {
            p.flip(e);
        }
        p
    }

    /// Builds a polynomial from packed words, least significant word first.
    pub fn from_words(mut words: Vec<u64>) -> Self {
        normalize(&mut words);
        BitPoly { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        words_degree(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Coefficient of `X^i`.
    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Toggles the coefficient of `X^i`.
    pub fn flip(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % WORD_BITS);
        normalize(&mut self.words);
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..WORD_BITS)
                .filter(move |b| (w >> b) & 1 == 1)
                .map(move |b| i * WORD_BITS + b)
        })
    }

    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        BitPoly::from_words(clmul::mul_words(&self.words, &other.words))
    }

    pub fn square(&self) -> BitPoly {
        BitPoly::from_words(clmul::square_words(&self.words))
    }

    pub fn div_rem(&self, m: &BitPoly) -> Result<(BitPoly, BitPoly), Gf2Error> {
        let dm = m.degree().ok_or(Gf2Error::DivisionByZero)?;
        let mut r = self.words.clone();
        let mut q = Vec::new();
        rem_words(&mut r, &m.words, dm, Some(&mut q));
        Ok((BitPoly::from_words(q), BitPoly::from_words(r)))
    }

    pub fn rem(&self, m: &BitPoly) -> Result<BitPoly, Gf2Error> {
        let dm = m.degree().ok_or(Gf2Error::DivisionByZero)?;
        let mut r = self.words.clone();
        rem_words(&mut r, &m.words, dm, None);
        Ok(BitPoly { words: r })
    }

    /// Quotient of a division known to be exact.
    pub(crate) fn div_exact(&self, m: &BitPoly) -> BitPoly {
        let (q, r) = self.div_rem(m).expect("exact division by zero");
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Greatest common divisor; always monic over GF(2).
    pub fn gcd(&self, other: &BitPoly) -> Result<BitPoly, Gf2Error> {
        if self.is_zero() && other.is_zero() {
            return Err(Gf2Error::ZeroGcd);
        }
        Ok(gcd_nonzero(self, other))
    }

    /// Formal derivative. Even-exponent terms vanish, `X^(2j+1)` maps to `X^(2j)`.
    pub fn derivative(&self) -> BitPoly {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        BitPoly::from_words(self.words.iter().map(|w| (w & ODD) >> 1).collect())
    }

    /// `X^deg(p) * p(1/X)`. The constant term must be 1 so the degree is kept.
    pub fn reciprocal(&self) -> Result<BitPoly, Gf2Error> {
        if !self.constant_term() {
            return Err(Gf2Error::ZeroConstantTerm);
        }
        let d = self.degree().expect("nonzero");
        Ok(BitPoly::from_exponents(self.exponents().map(|e| d - e)))
    }

    /// Square root, defined when every odd coefficient is zero.
    pub fn sqrt(&self) -> Option<BitPoly> {
        if !self.derivative().is_zero() {
            return None;
        }
        Some(BitPoly::from_words(clmul::compress_even_bits(&self.words)))
    }

    /// True iff `gcd(p, p') = 1`.
    pub fn is_squarefree(&self) -> Result<bool, Gf2Error> {
        if self.is_zero() {
            return Err(Gf2Error::ZeroPolynomial);
        }
        Ok(gcd_nonzero(self, &self.derivative()).is_one())
    }

    /// Lowercase hex of the coefficient vector read as an integer
    /// (`X^2 + X + 1` is `"7"`, `X^4 + 1` is `"11"`).
    pub fn to_hex(&self) -> String {
        format!("{self:x}")
    }

    pub fn from_hex(s: &str) -> Result<BitPoly, Gf2Error> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        if digits.is_empty() {
            return Err(Gf2Error::MalformedHex(s.to_string()));
        }
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, c) in digits.bytes().rev().enumerate() {
            let nibble = (c as char)
                .to_digit(16)
                .ok_or_else(|| Gf2Error::MalformedHex(s.to_string()))?;
            words[i / 16] |= (nibble as u64) << (4 * (i % 16));
        }
        Ok(BitPoly::from_words(words))
    }
}

impl FromStr for BitPoly {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitPoly::from_hex(s)
    }
}

impl fmt::LowerHex for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((top, rest)) = self.words.split_last() else {
            return f.write_str("0");
        };
        write!(f, "{top:x}")?;
        for w in rest.iter().rev() {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "X".to_string(),
                e => format!("X^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

impl Add<&BitPoly> for &BitPoly {
    type Output = BitPoly;

    fn add(self, rhs: &BitPoly) -> BitPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BitPoly> for BitPoly {
    fn add_assign(&mut self, rhs: &BitPoly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        normalize(&mut self.words);
    }
}

impl Mul<&BitPoly> for &BitPoly {
    type Output = BitPoly;

    fn mul(self, rhs: &BitPoly) -> BitPoly {
        BitPoly::mul(self, rhs)
    }
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::BitPoly;
    use proptest::prelude::*;

    /// Random polynomials of degree below `max_deg` (zero included).
    pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = BitPoly> {
        prop::collection::vec(any::<bool>(), 0..max_deg).prop_map(|bits| {
            BitPoly::from_exponents(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
        })
    }

    pub fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = BitPoly> {
        arb_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
    }
}
