//! Exact integer polynomials: 0/1 lifts of binary polynomials, power sums
//! of roots, resultants and discriminants.

mod newton;
mod resultant;

pub use newton::{neg_power_sums, power_sums, second_power_sums, PowerSumTable, SumModulus};
pub use resultant::{
    discriminant_mod8, discriminant_mod8_classical, discriminant_via_derivative,
    discriminant_via_h, resultant,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gf2poly::BitPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZpolyError {
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    Constant,
    #[error("polynomial must have constant term 1 (found {0})")]
    ConstantTermNotOne(BigInt),
    #[error("polynomial must have a nonzero constant term")]
    ZeroConstantTerm,
    #[error("modulus 2^{0} is not supported; use k >= 1")]
    BadModulus(u32),
    #[error("power-sum table is reduced mod 2^{0}; an exact table is required")]
    NotExact(u32),
    #[error("power sum S_{0} is not in the table")]
    MissingIndex(usize),
    #[error("S_k^2 - S_2k is odd at k = {k}; power-sum table is inconsistent")]
    OddNumerator { k: usize },
    #[error("count must be at least 1")]
    EmptyCount,
}

/// Sparse integer polynomial: `(exponent, coefficient)` pairs with strictly
/// decreasing exponents and nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    terms: Vec<(usize, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (usize, BigInt)>>(terms: I) -> Self {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c;
        }
        IntPoly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// From ascending coefficients `c_0, c_1, ...`.
    pub fn from_coeffs<C: Into<BigInt>, I: IntoIterator<Item = C>>(coeffs: I) -> Self {
        IntPoly::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e, c.into())))
    }

    pub fn terms(&self) -> &[(usize, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.terms
            .iter()
            .find(|(x, _)| *x == e)
            .map_or_else(BigInt::zero, |(_, c)| c.clone())
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Ascending dense coefficients, empty for zero.
    pub fn to_dense(&self) -> Vec<BigInt> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            out[*e] = c.clone();
        }
        out
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, c)| (e - 1, c * BigInt::from(*e)))
                .collect(),
        }
    }

    /// `X^deg(F) * F(1/X)`; needs a nonzero constant term so the degree is kept.
    pub fn reciprocal(&self) -> Result<IntPoly, ZpolyError> {
        let d = self.degree().ok_or(ZpolyError::ZeroPolynomial)?;
        if self.constant_term().is_zero() {
            return Err(ZpolyError::ZeroConstantTerm);
        }
        Ok(IntPoly::from_terms(
            self.terms.iter().map(|(e, c)| (d - e, c.clone())),
        ))
    }

    /// Coefficient-wise reduction mod 2.
    pub fn reduce_mod2(&self) -> BitPoly {
        BitPoly::from_exponents(
            self.terms
                .iter()
                .filter(|(_, c)| c.is_odd())
                .map(|(e, _)| *e),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (e, c) in &self.terms {
            acc *= x.pow((prev - e) as u32);
            acc += c;
            prev = *e;
        }
        acc * x.pow(prev as u32)
    }
}

/// The 0/1-coefficient lift of a nonzero binary polynomial.
pub fn lift(p: &BitPoly) -> Result<IntPoly, ZpolyError> {
    if p.is_zero() {
        return Err(ZpolyError::ZeroPolynomial);
    }
    Ok(IntPoly {
        terms: p.exponents().rev().map(|e| (e, BigInt::one())).collect(),
    })
}

/// `H(X) = n F(X) - X F'(X)` for monic `F` of degree `n >= 1`; the
/// coefficient of `X^e` is `(n - e) F_e`, so `deg H < n`.
pub fn h_poly(f: &IntPoly) -> Result<IntPoly, ZpolyError> {
    let n = require_monic(f)?;
    Ok(IntPoly::from_terms(
        f.terms.iter().map(|(e, c)| (*e, c * BigInt::from(n - e))),
    ))
}

pub(crate) fn require_monic(f: &IntPoly) -> Result<usize, ZpolyError> {
    let n = f.degree().ok_or(ZpolyError::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(ZpolyError::NotMonic);
    }
    if n == 0 {
        return Err(ZpolyError::Constant);
    }
    Ok(n)
}

pub(crate) fn require_unit_constant(f: &IntPoly) -> Result<(), ZpolyError> {
    let c = f.constant_term();
    if !c.is_one() {
        return Err(ZpolyError::ConstantTermNotOne(c));
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{a}X")?,
                (e, true) => write!(f, "X^{e}")?,
                (e, false) => write!(f, "{a}X^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::{pent_poly, PentShape};

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn lift_of_pentanomial() {
        let f = lift(&pent_poly(PentShape::new(7, 2).unwrap())).unwrap();
        assert_eq!(f, ip(&[1, 1, 0, 1, 0, 1, 0, 1]));
        assert!(f.is_monic());
        assert_eq!(f.to_string(), "X^7 + X^5 + X^3 + X + 1");
        assert_eq!(
            lift(&BitPoly::from_exponents([2, 1, 0])).unwrap(),
            ip(&[1, 1, 1])
        );
        assert!(lift(&BitPoly::zero()).is_err());
    }

    #[test]
    fn lift_then_reduce_is_identity() {
        for w in 1u64..600 {
            let p = BitPoly::from_words(vec![w]);
            assert_eq!(lift(&p).unwrap().reduce_mod2(), p);
        }
    }

    #[test]
    fn h_poly_examples() {
        let f = lift(&pent_poly(PentShape::new(7, 2).unwrap())).unwrap();
        assert_eq!(h_poly(&f).unwrap(), ip(&[7, 6, 0, 4, 0, 2]));
        assert_eq!(h_poly(&f).unwrap().to_string(), "2X^5 + 4X^3 + 6X + 7");
        assert!(h_poly(&ip(&[0, 0, 0, 0, 1])).unwrap().is_zero());
        assert_eq!(h_poly(&ip(&[1, 1, 1])).unwrap(), ip(&[2, 1]));
        assert_eq!(h_poly(&ip(&[1, 1, 2])), Err(ZpolyError::NotMonic));
    }

    #[test]
    fn h_poly_support_on_class2_lifts() {
        for (n, s) in [(7, 2), (25, 6), (101, 30), (13, 4)] {
            let f = lift(&pent_poly(PentShape::new(n, s).unwrap())).unwrap();
            let h = h_poly(&f).unwrap();
            let expect = IntPoly::from_terms([
                (n - s, BigInt::from(s)),
                (n - 2 * s, BigInt::from(2 * s)),
                (n - 3 * s, BigInt::from(3 * s)),
                (0, BigInt::from(n)),
            ]);
            assert_eq!(h, expect);
        }
    }

    #[test]
    fn reciprocal_and_eval() {
        let f = ip(&[3, 0, 2, 1]);
        assert_eq!(f.reciprocal().unwrap(), ip(&[1, 2, 0, 3]));
        assert_eq!(ip(&[0, 1]).reciprocal(), Err(ZpolyError::ZeroConstantTerm));
        assert_eq!(f.eval(&BigInt::from(-2)), BigInt::from(3 + 8 - 8));
        assert_eq!(ip(&[0, 0, 1]).eval(&BigInt::from(5)), BigInt::from(25));
    }

    #[test]
    fn display_signs() {
        assert_eq!(ip(&[-1, 0, 3, -1]).to_string(), "-X^3 + 3X^2 - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
