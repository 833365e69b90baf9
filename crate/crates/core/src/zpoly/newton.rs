//! Power sums `S_m = sum_i alpha_i^m` of the roots of a monic integer
//! polynomial, computed from its coefficients without finding roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{require_monic, require_unit_constant, IntPoly, ZpolyError};

/// Arithmetic domain for power sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumModulus {
    Exact,
    /// Residues modulo `2^k`, stored in `[0, 2^k)`.
    Pow2(u32),
}

/// `S_0 ..= S_upto` of a monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumTable {
    values: Vec<BigInt>,
    modulus: SumModulus,
}

impl PowerSumTable {
    pub fn get(&self, m: usize) -> Option<&BigInt> {
        self.values.get(m)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn modulus(&self) -> SumModulus {
        self.modulus
    }

    /// Largest index held.
    pub fn upto(&self) -> usize {
        self.values.len() - 1
    }
}

/// Newton's identities for monic `F` of degree `n`, `F_j` its coefficients:
///
/// ```text
/// S_m + F_{n-1} S_{m-1} + ... + F_{n-m+1} S_1 + m F_{n-m} = 0    (1 <= m <= n)
/// S_m + F_{n-1} S_{m-1} + ... + F_0 S_{m-n}              = 0    (m > n)
/// ```
///
/// Only the nonzero coefficients of `F` are visited, so sparse inputs cost
/// `O(upto * weight)` ring operations.
pub fn power_sums(
    f: &IntPoly,
    upto: usize,
    modulus: SumModulus,
) -> Result<PowerSumTable, ZpolyError> {
    let n = require_monic(f)?;
    // (j, F_{n-j}) for the lower terms, j = n - e >= 1.
    let lower: Vec<(usize, &BigInt)> = f.terms()[1..].iter().map(|(e, c)| (n - e, c)).collect();
    let values = match modulus {
        SumModulus::Exact => newton_exact(n, &lower, upto),
        SumModulus::Pow2(0) => return Err(ZpolyError::BadModulus(0)),
        SumModulus::Pow2(k) if k <= 64 => newton_word(n, &lower, upto, k),
        SumModulus::Pow2(k) => {
            let m = BigInt::one() << k;
            newton_exact_with(n, &lower, upto, |x| x.mod_floor(&m))
        }
    };
    Ok(PowerSumTable { values, modulus })
}

fn newton_exact(n: usize, lower: &[(usize, &BigInt)], upto: usize) -> Vec<BigInt> {
    newton_exact_with(n, lower, upto, |x| x)
}

fn newton_exact_with(
    n: usize,
    lower: &[(usize, &BigInt)],
    upto: usize,
    reduce: impl Fn(BigInt) -> BigInt,
) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(upto + 1);
    s.push(reduce(BigInt::from(n)));
    for m in 1..=upto {
        let mut acc = BigInt::zero();
        for &(j, c) in lower {
            if j < m {
                acc += c * &s[m - j];
            } else if j == m {
                acc += c * BigInt::from(m);
            }
        }
        s.push(reduce(-acc));
    }
    s
}

/// Same recurrence in wrapping `u64` arithmetic, masked to `k <= 64` bits.
fn newton_word(n: usize, lower: &[(usize, &BigInt)], upto: usize, k: u32) -> Vec<BigInt> {
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let word_mod = BigInt::one() << 64;
    let lower: Vec<(usize, u64)> = lower
        .iter()
        .map(|&(j, c)| {
            (
                j,
                c.mod_floor(&word_mod).to_u64().expect("reduced below 2^64"),
            )
        })
        .collect();
    let mut s: Vec<u64> = Vec::with_capacity(upto + 1);
    s.push(n as u64 & mask);
    for m in 1..=upto {
        let mut acc = 0u64;
        for &(j, c) in &lower {
            if j < m {
                acc = acc.wrapping_add(c.wrapping_mul(s[m - j]));
            } else if j == m {
                acc = acc.wrapping_add(c.wrapping_mul(m as u64));
            }
        }
        s.push(acc.wrapping_neg() & mask);
    }
    s.into_iter().map(BigInt::from).collect()
}

/// `T_k = sum_{i<j} (alpha_i alpha_j)^k = (S_k^2 - S_{2k}) / 2`, from an exact table.
pub fn second_power_sums(table: &PowerSumTable, k: usize) -> Result<BigInt, ZpolyError> {
    if let SumModulus::Pow2(bits) = table.modulus {
        return Err(ZpolyError::NotExact(bits));
    }
    let sk = table.get(k).ok_or(ZpolyError::MissingIndex(k))?;
    let s2k = table.get(2 * k).ok_or(ZpolyError::MissingIndex(2 * k))?;
    let num = sk * sk - s2k;
    if num.is_odd() {
        return Err(ZpolyError::OddNumerator { k });
    }
    Ok(num / 2)
}

/// Truncated product of ascending series, keeping degrees `0..len`.
fn mul_truncated(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `S_{-1}, ..., S_{-count}` for monic `F` with `F(0) = 1`, read off the
/// power series
///
/// ```text
/// X F'(X) * sum_{i >= 0} (-1)^(i+1) (F(X) - 1)^i = sum_{i >= 1} S_{-i} X^i
/// ```
///
/// truncated at degree `count`. `F - 1` has X-adic order `v >= 1`, so only
/// the powers `i <= count / v` reach the kept degrees.
pub fn neg_power_sums(f: &IntPoly, count: usize) -> Result<Vec<BigInt>, ZpolyError> {
    require_monic(f)?;
    require_unit_constant(f)?;
    if count == 0 {
        return Err(ZpolyError::EmptyCount);
    }
    let len = count + 1;
    let mut g = f.to_dense();
    g[0] = BigInt::zero();
    g.truncate(len);
    let order = g.iter().position(|c| !c.is_zero()).unwrap_or(len);

    let mut series = vec![BigInt::zero(); len];
    let mut power = vec![BigInt::zero(); len];
    power[0] = BigInt::one();
    let mut i = 0;
    loop {
        let sign_negative = i % 2 == 0;
        for (acc, p) in series.iter_mut().zip(&power) {
            if sign_negative {
                *acc -= p;
            } else {
                *acc += p;
            }
        }
        i += 1;
        if i * order > count {
            break;
        }
        power = mul_truncated(&power, &g, len);
    }

    let mut xdf = vec![BigInt::zero(); len];
    for (e, c) in f.terms() {
        if *e >= 1 && *e < len {
            xdf[*e] = c * BigInt::from(*e);
        }
    }
    let out = mul_truncated(&xdf, &series, len);
    Ok(out.into_iter().skip(1).collect())
}
