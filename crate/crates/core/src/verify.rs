//! Oracle-agreement suites: each closed form or fast path checked against an
//! independent computation over a bounded range.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::gf2poly::{factor_count, is_irreducible, pent_poly, BitPoly, PentShape};
use crate::swan::{
    certified_reducible, pent_discriminant_closed_form, pentanomial_parity, trinomial_parity,
};
use crate::zpoly::{
    discriminant_mod8, discriminant_via_derivative, discriminant_via_h, lift, neg_power_sums,
    power_sums, second_power_sums, IntPoly, SumModulus,
};

/// Outcome of one suite. `notes` are findings that are reported but do not
/// fail the suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &'static str, results: Vec<Check>) -> Self {
        let mut report = SuiteReport {
            name,
            checked: results.len(),
            failures: Vec::new(),
            notes: Vec::new(),
        };
        for r in results {
            match r {
                Check::Pass => {}
                Check::Fail(msg) => report.failures.push(msg),
                Check::Note(msg) => report.notes.push(msg),
            }
        }
        report
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checked, {} failed",
            self.name,
            self.checked,
            self.failures.len()
        )?;
        if !self.notes.is_empty() {
            write!(f, ", {} noted", self.notes.len())?;
        }
        Ok(())
    }
}

enum Check {
    Pass,
    Fail(String),
    Note(String),
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Check::Pass
    } else {
        Check::Fail(msg())
    }
}

/// Odd `n` in `[7, n_hi)` and even `s` with `n > 3s`.
fn odd_n_even_s(n_hi: usize) -> Vec<PentShape> {
    (7..n_hi)
        .step_by(2)
        .flat_map(|n| {
            (2..)
                .step_by(2)
                .take_while(move |s| 3 * s < n)
                .map(move |s| (n, s))
        })
        .map(|(n, s)| PentShape::new(n, s).expect("valid by construction"))
        .collect()
}

/// Factor-count parity of each pentanomial against the closed form.
/// Non-squarefree inputs are noted rather than compared.
pub fn pentanomial_parity_suite(n_hi: usize) -> SuiteReport {
    let results = odd_n_even_s(n_hi)
        .into_par_iter()
        .map(|shape| {
            let f = pent_poly(shape);
            if !f.is_squarefree().expect("nonzero") {
                return Check::Note(format!("{shape} is not squarefree"));
            }
            let brute = factor_count(&f).expect("nonzero").parity();
            let closed = pentanomial_parity(shape).expect("n odd, s even").parity;
            check(brute == closed, || {
                format!("{shape}: factor count {brute}, closed form {closed}")
            })
        })
        .collect();
    SuiteReport::collect("pentanomial parity vs factor count", results)
}

/// Every certified shape (any `n` in `[7, n_hi)`, even `s`) is reducible.
pub fn certificate_suite(n_hi: usize) -> SuiteReport {
    let shapes: Vec<PentShape> = (7..n_hi)
        .flat_map(|n| {
            (2..)
                .step_by(2)
                .take_while(move |s| 3 * s < n)
                .map(move |s| (n, s))
        })
        .map(|(n, s)| PentShape::new(n, s).expect("valid by construction"))
        .collect();
    let results = shapes
        .into_par_iter()
        .map(|shape| {
            if !certified_reducible(shape).expect("s even") {
                return Check::Pass;
            }
            let irr = is_irreducible(&pent_poly(shape)).expect("nonzero");
            check(!irr, || {
                format!("{shape} is certified reducible but irreducible")
            })
        })
        .collect();
    SuiteReport::collect("reducibility certificate soundness", results)
}

/// Exact `D(F) mod 8` against the closed form, odd `n <= n_max`.
pub fn discriminant_suite(n_max: usize) -> SuiteReport {
    let results = odd_n_even_s(n_max + 1)
        .into_par_iter()
        .map(|shape| {
            let f = lift(&pent_poly(shape)).expect("nonzero");
            let exact = discriminant_mod8(&f).expect("monic with unit constant");
            let closed = pent_discriminant_closed_form(shape).expect("n odd, s even");
            let expect = if matches!(shape.n() % 8, 1 | 7) { 1 } else { 5 };
            check(exact == closed && closed == expect, || {
                format!("{shape}: resultant {exact}, closed form {closed}")
            })
        })
        .collect();
    SuiteReport::collect("discriminant mod 8 vs closed form", results)
}

/// Vanishing and coincidence of power sums of the lift, odd `n <= n_max`:
/// `S_{n-s} = S_{n-2s} = S_{n-3s} = 0` and `S_{2n-4s}` even; for
/// `n <= pair_max` also `S_{2n-2s} = S_{2n-6s}` and `T_{n-s} = T_{n-3s}`.
pub fn power_sum_suite(n_max: usize, pair_max: usize) -> SuiteReport {
    let results = odd_n_even_s(n_max + 1)
        .into_par_iter()
        .map(|shape| {
            let (n, s) = (shape.n(), shape.s());
            let f = lift(&pent_poly(shape)).expect("nonzero");
            let t = power_sums(&f, 2 * n - 2 * s, SumModulus::Exact).expect("monic");
            let sm = |m: usize| t.get(m).expect("in table");
            let mut bad = Vec::new();
            for k in 1..=3 {
                if !sm(n - k * s).is_zero() {
                    bad.push(format!("S_(n-{k}s) = {}", sm(n - k * s)));
                }
            }
            if sm(2 * n - 4 * s).is_odd() {
                bad.push("S_(2n-4s) is odd".into());
            }
            if n <= pair_max {
                if sm(2 * n - 2 * s) != sm(2 * n - 6 * s) {
                    bad.push("S_(2n-2s) != S_(2n-6s)".into());
                }
                let t1 = second_power_sums(&t, n - s).expect("exact table");
                let t3 = second_power_sums(&t, n - 3 * s).expect("exact table");
                if t1 != t3 {
                    bad.push(format!("T_(n-s) = {t1}, T_(n-3s) = {t3}"));
                }
            }
            check(bad.is_empty(), || format!("{shape}: {}", bad.join("; ")))
        })
        .collect();
    SuiteReport::collect("power-sum identities", results)
}

/// Trinomial closed form against factor counts, `n <= n_max`, exactly one
/// of `n`, `k` odd.
pub fn trinomial_suite(n_max: usize) -> SuiteReport {
    let pairs: Vec<(usize, usize)> = (2..=n_max)
        .flat_map(|n| {
            (1..n)
                .filter(move |k| (n + k) % 2 == 1)
                .map(move |k| (n, k))
        })
        .collect();
    let results = pairs
        .into_par_iter()
        .map(|(n, k)| {
            let t = BitPoly::from_exponents([n, k, 0]);
            let brute = factor_count(&t).expect("nonzero").parity();
            let closed = trinomial_parity(n, k).expect("mixed parities").parity;
            check(brute == closed, || {
                format!("X^{n} + X^{k} + 1: factor count {brute}, closed form {closed}")
            })
        })
        .collect();
    SuiteReport::collect("trinomial parity vs factor count", results)
}

/// Random monic 0/1 polynomial of degree in `1..=max_deg` with constant term 1.
pub fn random_unit_lift(rng: &mut impl Rng, max_deg: usize) -> IntPoly {
    let n = rng.gen_range(1..=max_deg);
    let mut coeffs = vec![1u8];
    coeffs.extend((1..n).map(|_| rng.gen_range(0..=1u8)));
    coeffs.push(1);
    IntPoly::from_coeffs(coeffs)
}

/// `Res(F, H)` and `Res(F, F')` give the same discriminant on random lifts.
pub fn discriminant_routes_suite(samples: usize, max_deg: usize, seed: u64) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let polys: Vec<IntPoly> = (0..samples)
        .map(|_| random_unit_lift(&mut rng, max_deg))
        .collect();
    let results = polys
        .into_par_iter()
        .map(|f| {
            let via_h = discriminant_via_h(&f).expect("unit lift");
            let via_d = discriminant_via_derivative(&f).expect("monic");
            check(via_h == via_d, || {
                format!("{f}: via H {via_h}, via F' {via_d}")
            })
        })
        .collect();
    SuiteReport::collect("discriminant via H vs via F'", results)
}

/// Negative power sums against positive power sums of the reciprocal.
pub fn negative_power_sum_suite(
    samples: usize,
    max_deg: usize,
    count: usize,
    seed: u64,
) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let polys: Vec<IntPoly> = (0..samples)
        .map(|_| random_unit_lift(&mut rng, max_deg))
        .collect();
    let results = polys
        .into_par_iter()
        .map(|f| {
            let neg = neg_power_sums(&f, count).expect("unit lift");
            let recip = power_sums(
                &f.reciprocal().expect("unit constant"),
                count,
                SumModulus::Exact,
            )
            .expect("reciprocal is monic");
            let first_bad = neg
                .iter()
                .zip(&recip.values()[1..])
                .position(|(a, b)| a != b);
            check(first_bad.is_none(), || {
                let i = first_bad.unwrap_or(0) + 1;
                format!(
                    "{f}: S_-{i} = {}, reciprocal gives {}",
                    neg[i - 1],
                    recip.values()[i]
                )
            })
        })
        .collect();
    SuiteReport::collect("negative power sums vs reciprocal", results)
}

/// Ranges for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyBounds {
    pub parity_n_hi: usize,
    pub certificate_n_hi: usize,
    pub discriminant_n_max: usize,
    pub power_sum_n_max: usize,
    pub power_sum_pair_max: usize,
    pub trinomial_n_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            parity_n_hi: 500,
            certificate_n_hi: 500,
            discriminant_n_max: 60,
            power_sum_n_max: 200,
            power_sum_pair_max: 120,
            trinomial_n_max: 300,
            samples: 200,
            seed: 0x5eed,
        }
    }
}

impl VerifyBounds {
    /// Every bound scaled down to `degree`, keeping the defaults as caps.
    pub fn up_to(degree: usize) -> Self {
        let d = VerifyBounds::default();
        VerifyBounds {
            parity_n_hi: degree.min(d.parity_n_hi),
            certificate_n_hi: degree.min(d.certificate_n_hi),
            discriminant_n_max: degree.min(d.discriminant_n_max),
            power_sum_n_max: degree.min(d.power_sum_n_max),
            power_sum_pair_max: degree.min(d.power_sum_pair_max),
            trinomial_n_max: degree.min(d.trinomial_n_max),
            ..d
        }
    }
}

pub fn run_all(bounds: &VerifyBounds) -> Vec<SuiteReport> {
    vec![
        pentanomial_parity_suite(bounds.parity_n_hi),
        certificate_suite(bounds.certificate_n_hi),
        discriminant_suite(bounds.discriminant_n_max),
        power_sum_suite(bounds.power_sum_n_max, bounds.power_sum_pair_max),
        trinomial_suite(bounds.trinomial_n_max),
        discriminant_routes_suite(bounds.samples, 20, bounds.seed),
        negative_power_sum_suite(bounds.samples, 30, 60, bounds.seed.wrapping_add(1)),
    ]
}
