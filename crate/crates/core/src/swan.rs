//! Closed-form parity and reducibility predicates.
//!
//! For a squarefree binary `f` of degree `n` with integer lift `F`, the number
//! of irreducible factors `t_f` satisfies `t_f = n (mod 2)` exactly when
//! `D(F) = 1 (mod 8)`. Everything here reduces to that bridge, either with a
//! residue supplied by the caller or with one known in closed form.

use std::fmt;

use thiserror::Error;

use crate::gf2poly::PentShape;
pub use crate::verdict::{Parity, ParityVerdict, VerdictSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwanError {
    #[error("residue {0} is not in 0..8")]
    ResidueOutOfRange(u8),
    #[error("discriminant residue {0} mod 8 is even; the binary polynomial is not squarefree")]
    EvenDiscriminant(u8),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("X^{n} + X^{k} + 1 needs n > k > 0")]
    TrinomialRange { n: usize, k: usize },
    #[error("n = {n} and k = {k} are both odd; use the reciprocal X^{n} + X^{rk} + 1 instead", rk = n - k)]
    TrinomialBothOdd { n: usize, k: usize },
    #[error("n = {n} and k = {k} are both even; X^{n} + X^{k} + 1 is a square, apply the rule to its square root")]
    TrinomialBothEven { n: usize, k: usize },
    #[error("closed form covers n odd and s even only, got n = {n}, s = {s}")]
    OutOfTheory { n: usize, s: usize },
    #[error("no reducibility certificate for odd gaps (s = {s})")]
    OddGap { s: usize },
}

/// Parity of `t_f` from `deg f` and `D(F) mod 8`.
///
/// Odd residues only: an even discriminant means `f` has a repeated factor
/// and the bridge does not apply.
pub fn parity_from_discriminant(deg_f: usize, d_mod8: u8) -> Result<ParityVerdict, SwanError> {
    if d_mod8 >= 8 {
        return Err(SwanError::ResidueOutOfRange(d_mod8));
    }
    if d_mod8.is_multiple_of(2) {
        return Err(SwanError::EvenDiscriminant(d_mod8));
    }
    if deg_f == 0 {
        return Err(SwanError::ZeroDegree);
    }
    let same = Parity::of(deg_f);
    let parity = if d_mod8 == 1 { same } else { same.flip() };
    Ok(ParityVerdict::new(parity, VerdictSource::Discriminant))
}

/// Parity of the factor count of `X^n + X^k + 1`, for `n > k > 0` with
/// exactly one of `n`, `k` odd.
///
/// Even in three cases, odd otherwise:
/// 1. `n` even, `k` odd, `n != 2k`, `nk/2 = 0 or 1 (mod 4)`;
/// 2. `n` odd, `k` even, `k` does not divide `2n`, `n = ±3 (mod 8)`;
/// 3. `n` odd, `k` even, `k` divides `2n`, `n = ±1 (mod 8)`.
///
/// When both are odd, pass `(n, n - k)`: the reciprocal has the same count.
/// When both are even the trinomial is a square.
pub fn trinomial_parity(n: usize, k: usize) -> Result<ParityVerdict, SwanError> {
    if k == 0 || k >= n {
        return Err(SwanError::TrinomialRange { n, k });
    }
    let even = match (n % 2, k % 2) {
        (1, 1) => return Err(SwanError::TrinomialBothOdd { n, k }),
        (0, 0) => return Err(SwanError::TrinomialBothEven { n, k }),
        (0, _) => n != 2 * k && (n * k / 2) % 4 <= 1,
        _ => {
            let r = n % 8;
            if (2 * n).is_multiple_of(k) {
                r == 1 || r == 7
            } else {
                r == 3 || r == 5
            }
        }
    };
    let parity = if even { Parity::Even } else { Parity::Odd };
    Ok(ParityVerdict::new(parity, VerdictSource::ClosedForm))
}

fn require_closed_form(shape: PentShape) -> Result<(), SwanError> {
    let (n, s) = (shape.n(), shape.s());
    if n % 2 == 0 || s % 2 == 1 {
        return Err(SwanError::OutOfTheory { n, s });
    }
    Ok(())
}

/// `D(F) mod 8` for the 0/1 lift of a class 2 pentanomial with `n` odd and
/// `s` even: 1 when `n = ±1 (mod 8)`, 5 when `n = ±3 (mod 8)`.
pub fn pent_discriminant_closed_form(shape: PentShape) -> Result<u8, SwanError> {
    require_closed_form(shape)?;
    Ok(match shape.n() % 8 {
        1 | 7 => 1,
        _ => 5,
    })
}

/// Factor-count parity of a class 2 pentanomial with `n` odd and `s` even:
/// odd when `n = ±1 (mod 8)`, even otherwise.
pub fn pentanomial_parity(shape: PentShape) -> Result<ParityVerdict, SwanError> {
    require_closed_form(shape)?;
    let parity = match shape.n() % 8 {
        1 | 7 => Parity::Odd,
        _ => Parity::Even,
    };
    Ok(ParityVerdict::new(parity, VerdictSource::ClosedForm))
}

/// Why a class 2 pentanomial with even `s` is known to be reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// `n` and `s` both even: every exponent is even, so `f` is a square.
    Square,
    /// `n = ±3 (mod 8)`: `D(F) = 5 (mod 8)` forces an even factor count.
    EvenFactorCount { n_mod8: u8 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Square => f.write_str("n and s even: f is a perfect square"),
            Certificate::EvenFactorCount { n_mod8 } => write!(
                f,
                "n \u{2261} {n_mod8} mod 8, s even: discriminant \u{2261} 5 mod 8 forces an even factor count"
            ),
        }
    }
}

/// The reducibility certificate for an even-gap shape, if one applies.
/// `None` means no certificate, not irreducible.
pub fn reducibility_certificate(shape: PentShape) -> Result<Option<Certificate>, SwanError> {
    let (n, s) = (shape.n(), shape.s());
    if s % 2 == 1 {
        return Err(SwanError::OddGap { s });
    }
    Ok(match n % 8 {
        r if r % 2 == 0 => Some(Certificate::Square),
        r @ (3 | 5) => Some(Certificate::EvenFactorCount { n_mod8: r as u8 }),
        _ => None,
    })
}

/// True when an even-gap class 2 pentanomial is certainly reducible:
/// `n` even, or `n = ±3 (mod 8)`. False is "no certificate".
pub fn certified_reducible(shape: PentShape) -> Result<bool, SwanError> {
    reducibility_certificate(shape).map(|c| c.is_some())
}
