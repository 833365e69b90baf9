use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BitPoly, Gf2Error};

/// The pair `(n, s)` of a class 2 pentanomial
/// `X^n + X^(n-s) + X^(n-2s) + X^(n-3s) + 1`, with `n > 3s`, `n >= 7`, `s >= 1`.
///
/// Orders by `n`, then `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PentShape {
    n: usize,
    s: usize,
}

impl PentShape {
    pub const MIN_DEGREE: usize = 7;

    pub fn new(n: usize, s: usize) -> Result<Self, Gf2Error> {
        let reason = if s == 0 {
            Some("s must be positive")
        } else if n < Self::MIN_DEGREE {
            Some("n must be at least 7")
        } else if n <= 3 * s {
            Some("n must exceed 3s")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Gf2Error::InvalidShape { n, s, reason }),
            None => Ok(PentShape { n, s }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Support of the pentanomial, descending. All five are distinct.
    pub fn exponents(&self) -> [usize; 5] {
        let (n, s) = (self.n, self.s);
        [n, n - s, n - 2 * s, n - 3 * s, 0]
    }

    /// Support of the reciprocal `X^n + X^(3s) + X^(2s) + X^s + 1`, descending.
    pub fn reciprocal_exponents(&self) -> [usize; 5] {
        let (n, s) = (self.n, self.s);
        [n, 3 * s, 2 * s, s, 0]
    }
}

impl fmt::Display for PentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n = {}, s = {})", self.n, self.s)
    }
}

/// `X^n + X^(n-s) + X^(n-2s) + X^(n-3s) + 1` over GF(2).
pub fn pent_poly(shape: PentShape) -> BitPoly {
    BitPoly::from_exponents(shape.exponents())
}
