//! Exact resultants by the subresultant pseudo-remainder sequence, and
//! discriminants reduced mod 8.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{h_poly, require_monic, require_unit_constant, IntPoly, ZpolyError};

type Dense = Vec<BigInt>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &Dense) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

fn content(p: &Dense) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder: `R` with `lc(B)^(deg A - deg B + 1) A = Q B + R`, `deg R < deg B`.
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let shift = deg(&r) - db;
        let lr = r[deg(&r)].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        e -= 1;
    }
    let scale = lb.pow(e as u32);
    r.iter_mut().for_each(|c| *c *= &scale);
    r
}

fn exact_div(p: &mut Dense, d: &BigInt) {
    for c in p.iter_mut() {
        debug_assert!((&*c % d).is_zero(), "inexact subresultant division");
        *c /= d;
    }
}

/// Resultant of two nonzero dense polynomials over the integers.
pub(crate) fn resultant_dense(a: &Dense, b: &Dense) -> BigInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let ca = content(&a);
    let cb = content(&b);
    exact_div(&mut a, &ca);
    exact_div(&mut b, &cb);
    let t = ca.pow(deg(&b) as u32) * cb.pow(deg(&a) as u32);
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    if deg(&b) == 0 {
        return s * t * b[0].pow(deg(&a) as u32);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let mut r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        exact_div(&mut r, &(&g * h.pow(delta as u32)));
        b = r;
        g = a[deg(&a)].clone();
        // h <- h^(1 - delta) g^delta, an exact quotient when delta >= 2.
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32) / h.pow(delta as u32 - 1),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let last = b[0].pow(da) / h.pow(da - 1);
    s * t * last
}

/// `Res(A, B)` for monic `A` of degree at least 1 and nonzero `B`.
/// For such `A` this equals `prod B(alpha_i)` over the roots of `A`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt, ZpolyError> {
    require_monic(a)?;
    if b.is_zero() {
        return Err(ZpolyError::ZeroPolynomial);
    }
    Ok(resultant_dense(&a.to_dense(), &b.to_dense()))
}

fn discriminant_sign(n: usize) -> BigInt {
    if (n * (n - 1) / 2).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn mod8(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(8))
        .to_u8()
        .expect("residue below 8")
}

/// `D(F) = (-1)^(n(n-1)/2) Res(F, H)` with `H = nF - XF'`, for monic `F`
/// with `F(0) = 1`.
pub fn discriminant_via_h(f: &IntPoly) -> Result<BigInt, ZpolyError> {
    let n = require_monic(f)?;
    require_unit_constant(f)?;
    let h = h_poly(f)?;
    Ok(discriminant_sign(n) * resultant(f, &h)?)
}

/// The classical `D(F) = (-1)^(n(n-1)/2) Res(F, F')` for monic `F`.
pub fn discriminant_via_derivative(f: &IntPoly) -> Result<BigInt, ZpolyError> {
    let n = require_monic(f)?;
    Ok(discriminant_sign(n) * resultant(f, &f.derivative())?)
}

/// `D(F) mod 8` in `0..8`, computed exactly through `Res(F, H)` and then
/// reduced. Requires monic `F` with `F(0) = 1`.
pub fn discriminant_mod8(f: &IntPoly) -> Result<u8, ZpolyError> {
    Ok(mod8(&discriminant_via_h(f)?))
}

/// `D(F) mod 8` through `Res(F, F')`; any monic `F` of degree at least 1.
pub fn discriminant_mod8_classical(f: &IntPoly) -> Result<u8, ZpolyError> {
    Ok(mod8(&discriminant_via_derivative(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::{pent_poly, PentShape};
    use crate::zpoly::lift;
    use proptest::prelude::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().copied())
    }

    fn class2(n: usize, s: usize) -> IntPoly {
        lift(&pent_poly(PentShape::new(n, s).unwrap())).unwrap()
    }

    /// Determinant of the Sylvester matrix, by fraction-free Bareiss elimination.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let size = da + db;
        if size == 0 {
            return BigInt::one();
        }
        let (ad, bd) = (a.to_dense(), b.to_dense());
        let mut m = vec![vec![BigInt::zero(); size]; size];
        for r in 0..db {
            for (i, c) in ad.iter().rev().enumerate() {
                m[r][r + i] = c.clone();
            }
        }
        for r in 0..da {
            for (i, c) in bd.iter().rev().enumerate() {
                m[db + r][r + i] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..size).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[size - 1][size - 1]
    }

    #[test]
    fn resultant_examples() {
        // (alpha + 2)(beta + 2) = F(-2) = 3.
        let f = ip(&[1, 1, 1]);
        assert_eq!(resultant(&f, &ip(&[2, 1])).unwrap(), BigInt::from(3));
        assert_eq!(f.eval(&BigInt::from(-2)), BigInt::from(3));
        assert_eq!(resultant(&f, &ip(&[1])).unwrap(), BigInt::one());
        assert_eq!(resultant(&class2(25, 6), &ip(&[1])).unwrap(), BigInt::one());
        assert_eq!(resultant(&f, &ip(&[5])).unwrap(), BigInt::from(25));
        assert_eq!(
            resultant(&f, &IntPoly::zero()),
            Err(ZpolyError::ZeroPolynomial)
        );
        assert_eq!(resultant(&ip(&[1, 2]), &f), Err(ZpolyError::NotMonic));
    }

    #[test]
    fn resultant_of_shared_root_vanishes() {
        let a = ip(&[-1, 0, 1]);
        let b = ip(&[1, 1]);
        assert!(resultant(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn h_product_for_7_2_is_7_mod_8() {
        let f = class2(7, 2);
        let r = resultant(&f, &h_poly(&f).unwrap()).unwrap();
        assert_eq!(mod8(&r), 7);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_mod8(&class2(7, 2)).unwrap(), 1);
        assert_eq!(discriminant_mod8(&class2(11, 2)).unwrap(), 5);
        assert_eq!(discriminant_mod8(&class2(9, 2)).unwrap(), 1);
        // X^2 + X + 1 has discriminant -3.
        assert_eq!(
            discriminant_via_h(&ip(&[1, 1, 1])).unwrap(),
            BigInt::from(-3)
        );
        assert_eq!(
            discriminant_via_derivative(&ip(&[1, 1, 1])).unwrap(),
            BigInt::from(-3)
        );
        // X^3 - X - 1: -4(-1)^3 - 27 = -23.
        assert_eq!(
            discriminant_via_derivative(&ip(&[-1, -1, 0, 1])).unwrap(),
            BigInt::from(-23)
        );
        assert_eq!(discriminant_via_h(&ip(&[1, 1])).unwrap(), BigInt::one());
    }

    #[test]
    fn discriminant_requires_unit_constant() {
        assert_eq!(
            discriminant_mod8(&ip(&[2, 1, 1])),
            Err(ZpolyError::ConstantTermNotOne(BigInt::from(2)))
        );
        assert!(discriminant_mod8_classical(&ip(&[2, 1, 1])).is_ok());
    }

    /// Swan's criterion holds for any integer lift, so perturbing the 0/1 lift
    /// by even coefficients must keep `D mod 8` in the same class.
    #[test]
    fn perturbed_lifts_keep_the_residue_class() {
        for w in 1u64..(1 << 12) {
            let p = crate::BitPoly::from_words(vec![w | 1]);
            let n = p.degree().unwrap();
            if n < 2 || !p.is_squarefree().unwrap() {
                continue;
            }
            let f = lift(&p).unwrap();
            let base = discriminant_mod8(&f).unwrap();
            assert!(base % 2 == 1);
            for j in 0..n {
                let bumped =
                    IntPoly::from_terms(f.terms().iter().cloned().chain([(j, BigInt::from(2))]));
                let d = discriminant_mod8_classical(&bumped).unwrap();
                assert_eq!(d, base, "{p} +2X^{j}");
            }
        }
    }

    fn arb_int_poly(max_deg: usize, monic: bool) -> impl Strategy<Value = IntPoly> {
        (0..=max_deg, prop::collection::vec(-20i64..=20, max_deg + 1)).prop_map(
            move |(d, mut c)| {
                c.truncate(d + 1);
                if monic {
                    c[d] = 1;
                } else if c[d] == 0 {
                    c[d] = 7;
                }
                IntPoly::from_coeffs(c)
            },
        )
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(a in arb_int_poly(9, true), b in arb_int_poly(9, false)) {
            prop_assume!(a.degree().unwrap() >= 1);
            prop_assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b));
        }

        #[test]
        fn general_resultant_matches_sylvester(a in arb_int_poly(8, false), b in arb_int_poly(8, false)) {
            prop_assert_eq!(
                resultant_dense(&a.to_dense(), &b.to_dense()),
                sylvester_resultant(&a, &b)
            );
        }

        #[test]
        fn both_discriminant_routes_agree(bits in prop::collection::vec(any::<bool>(), 0..20)) {
            let mut c: Vec<i64> = vec![1];
            c.extend(bits.iter().map(|&b| b as i64));
            c.push(1);
            let f = IntPoly::from_coeffs(c);
            prop_assert_eq!(discriminant_via_h(&f).unwrap(), discriminant_via_derivative(&f).unwrap());
        }
    }
}
