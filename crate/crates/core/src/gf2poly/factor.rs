//! Factorization structure without explicit factors: squarefree
//! decomposition, distinct-degree splitting, and Rabin's irreducibility test.

use std::collections::BTreeMap;

use super::{gcd_nonzero, BitPoly, Gf2Error, Modulus};
use crate::verdict::{Parity, ParityVerdict, VerdictSource};

/// Irreducible-factor census of a polynomial, counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCount {
    pub total: usize,
    /// Factor degree -> number of factors of that degree (with multiplicity).
    pub by_degree: BTreeMap<usize, usize>,
    pub squarefree: bool,
}

impl FactorCount {
    pub fn parity(&self) -> Parity {
        Parity::of(self.total)
    }

    pub fn verdict(&self) -> ParityVerdict {
        ParityVerdict::new(self.parity(), VerdictSource::BruteForce)
    }

    pub fn is_irreducible(&self) -> bool {
        self.total == 1
    }

    /// `sum(degree * count)`, which must equal the degree of the input.
    pub fn degree_sum(&self) -> usize {
        self.by_degree.iter().map(|(d, c)| d * c).sum()
    }
}

fn require_degree(p: &BitPoly, min: usize) -> Result<usize, Gf2Error> {
    match p.degree() {
        Some(d) if d >= min => Ok(d),
        other => Err(Gf2Error::DegreeTooSmall {
            min,
            found: other.map_or("-inf".into(), |d| d.to_string()),
        }),
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Modulus {
    /// Rabin: `m` of degree `n` is irreducible iff `X^(2^n) = X (mod m)` and
    /// `gcd(X^(2^(n/q)) - X, m) = 1` for every prime `q | n`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if n == 1 {
            return true;
        }
        let mut checkpoints: Vec<usize> = prime_divisors(n).into_iter().map(|q| n / q).collect();
        checkpoints.sort_unstable();
        let x = self.x();
        let mut h = x.clone();
        let mut saved = Vec::with_capacity(checkpoints.len());
        for k in 1..=n {
            h = self.square(&h);
            if checkpoints.binary_search(&k).is_ok() {
                saved.push(h.clone());
            }
        }
        if h != x {
            return false;
        }
        saved
            .iter()
            .all(|hk| gcd_nonzero(&(hk + &x), self.poly()).is_one())
    }

    /// Smallest `d <= d_max` such that `m` has an irreducible factor of degree `d`.
    pub fn smallest_factor_degree(&self, d_max: usize) -> Option<usize> {
        let x = self.x();
        let mut h = x.clone();
        for d in 1..=d_max.min(self.degree()) {
            h = self.square(&h);
            // gcd(X^(2^d) - X, m) collects the factors whose degree divides d.
            if !gcd_nonzero(&(&h + &x), self.poly()).is_one() {
                return Some(d);
            }
        }
        None
    }
}

/// Rabin irreducibility test; requires `deg(p) >= 1`.
pub fn is_irreducible(p: &BitPoly) -> Result<bool, Gf2Error> {
    Ok(Modulus::new(p)?.is_irreducible())
}

/// Smallest degree `d <= d_max` of an irreducible factor of `p`, if any.
pub fn smallest_factor_degree(p: &BitPoly, d_max: usize) -> Result<Option<usize>, Gf2Error> {
    let degree = require_degree(p, 1)?;
    if d_max == 0 || d_max >= degree {
        return Err(Gf2Error::BadDepth {
            depth: d_max,
            degree,
        });
    }
    Ok(Modulus::new(p)?.smallest_factor_degree(d_max))
}

/// Whether `p` has an irreducible factor of degree at most `d_max`,
/// with `1 <= d_max < deg(p)`.
pub fn has_factor_of_degree_le(p: &BitPoly, d_max: usize) -> Result<bool, Gf2Error> {
    Ok(smallest_factor_degree(p, d_max)?.is_some())
}

/// Writes `p = prod f_i^(m_i)` with each `f_i` squarefree and the `f_i`
/// pairwise coprime. Returns the `(f_i, m_i)` pairs; constants are omitted.
pub fn squarefree_decomposition(p: &BitPoly) -> Result<Vec<(BitPoly, usize)>, Gf2Error> {
    if p.is_zero() {
        return Err(Gf2Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    squarefree_rec(p, 1, &mut out);
    Ok(out)
}

fn squarefree_rec(f: &BitPoly, scale: usize, out: &mut Vec<(BitPoly, usize)>) {
    if f.degree() == Some(0) {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.sqrt().expect("zero derivative means a square");
        squarefree_rec(&root, 2 * scale, out);
        return;
    }
    let mut c = gcd_nonzero(f, &df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd_nonzero(&w, &c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(&y);
        w = y;
    }
    // What is left of c only has repeated factors with multiplicity divisible by 2.
    if !c.is_one() {
        let root = c.sqrt().expect("remaining cofactor is a square");
        squarefree_rec(&root, 2 * scale, out);
    }
}

/// Distinct-degree split of a squarefree polynomial into `(degree, count)`.
fn distinct_degree_counts(z: &BitPoly) -> Vec<(usize, usize)> {
    let x = BitPoly::x();
    let mut out = Vec::new();
    let mut rest = z.clone();
    let mut modulus = Modulus::new(&rest).expect("degree >= 1");
    let mut h = modulus.x();
    let mut d = 0;
    loop {
        let n = rest.degree().expect("nonzero");
        if n == 0 {
            break;
        }
        if 2 * (d + 1) > n {
            // Everything of degree <= d is gone, so what remains is irreducible.
            out.push((n, 1));
            break;
        }
        d += 1;
        h = modulus.square(&h);
        let g = gcd_nonzero(&(&h + &x), &rest);
        if !g.is_one() {
            out.push((d, g.degree().expect("nonzero") / d));
            rest = rest.div_exact(&g);
            if rest.is_one() {
                break;
            }
            modulus = Modulus::new(&rest).expect("degree >= 1");
            h = modulus.reduce(&h);
        }
    }
    out
}

/// Counts the irreducible factors of `p` with multiplicity, by squarefree
/// decomposition followed by distinct-degree splitting. Requires `deg(p) >= 1`.
pub fn factor_count(p: &BitPoly) -> Result<FactorCount, Gf2Error> {
    require_degree(p, 1)?;
    let parts = squarefree_decomposition(p)?;
    let squarefree = parts.iter().all(|(_, m)| *m == 1);
    let mut by_degree = BTreeMap::new();
    for (part, mult) in &parts {
        for (d, count) in distinct_degree_counts(part) {
            *by_degree.entry(d).or_insert(0) += count * mult;
        }
    }
    let total = by_degree.values().sum();
    Ok(FactorCount {
        total,
        by_degree,
        squarefree,
    })
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> BitPoly {
        BitPoly::from_exponents(exps.iter().copied())
    }

    /// Exhaustive enumeration of all irreducible polynomials up to a degree,
    /// by sieving out products.
    fn irreducibles_up_to(max_deg: usize) -> Vec<BitPoly> {
        let mut reducible = std::collections::HashSet::new();
        let all: Vec<BitPoly> = (2u64..(1 << (max_deg + 1)))
            .map(|w| BitPoly::from_words(vec![w]))
            .collect();
        for a in &all {
            for b in &all {
                if a.degree().unwrap() + b.degree().unwrap() <= max_deg && a <= b {
                    reducible.insert(a.mul(b));
                }
            }
        }
        all.into_iter().filter(|q| !reducible.contains(q)).collect()
    }

    /// Trial division by the sieved irreducibles.
    fn brute_factor_degrees(q: &BitPoly, irr: &[BitPoly]) -> Vec<usize> {
        let mut q = q.clone();
        let mut degs = Vec::new();
        for f in irr {
            loop {
                let (quot, r) = q.div_rem(f).unwrap();
                if !r.is_zero() {
                    break;
                }
                degs.push(f.degree().unwrap());
                q = quot;
            }
        }
        assert!(q.is_one(), "{q} not fully factored");
        degs
    }

    #[test]
    fn rabin_agrees_with_sieve_up_to_degree_12() {
        let irr = irreducibles_up_to(12);
        // Known counts of irreducible binary polynomials by degree.
        let expected = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335];
        for (d, &count) in expected.iter().enumerate() {
            assert_eq!(
                irr.iter().filter(|q| q.degree() == Some(d + 1)).count(),
                count
            );
        }
        for w in 2u64..(1 << 13) {
            let q = BitPoly::from_words(vec![w]);
            let expect = irr.binary_search(&q).is_ok();
            assert_eq!(is_irreducible(&q).unwrap(), expect, "{q}");
            let fc = factor_count(&q).unwrap();
            let degs = brute_factor_degrees(&q, &irr);
            assert_eq!(fc.total, degs.len(), "{q}");
            assert_eq!(fc.is_irreducible(), expect);
            let mut by_degree = BTreeMap::new();
            for d in degs {
                *by_degree.entry(d).or_insert(0) += 1;
            }
            assert_eq!(fc.by_degree, by_degree, "{q}");
        }
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(factor_count(&p(&[2, 1, 0])).unwrap().total, 1);
        let sq = factor_count(&p(&[4, 2, 0])).unwrap();
        assert_eq!(sq.total, 2);
        assert!(!sq.squarefree);
        assert_eq!(sq.by_degree, BTreeMap::from([(2, 2)]));
        assert!(factor_count(&BitPoly::one()).is_err());
        assert!(is_irreducible(&BitPoly::one()).is_err());
    }

    #[test]
    fn pentanomial_examples() {
        // (7,2) is irreducible; (9,2) has odd parity but is reducible.
        assert!(is_irreducible(&p(&[7, 5, 3, 1, 0])).unwrap());
        assert!(!is_irreducible(&p(&[11, 9, 7, 5, 0])).unwrap());
        let nine = factor_count(&p(&[9, 7, 5, 3, 0])).unwrap();
        assert!(!is_irreducible(&p(&[9, 7, 5, 3, 0])).unwrap());
        assert_eq!(nine.total % 2, 1);
    }

    #[test]
    fn prefilter_examples() {
        assert!(has_factor_of_degree_le(&p(&[4, 2, 0]), 2).unwrap());
        assert!(!has_factor_of_degree_le(&p(&[7, 5, 3, 1, 0]), 3).unwrap());
        assert!(has_factor_of_degree_le(&p(&[4, 2, 0]), 0).is_err());
        assert!(has_factor_of_degree_le(&p(&[4, 2, 0]), 4).is_err());
    }

    #[test]
    fn prime_divisor_lists() {
        assert_eq!(prime_divisors(1), Vec::<usize>::new());
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(2999), vec![2999]);
        assert_eq!(prime_divisors(2047), vec![23, 89]);
    }

    proptest! {
        #[test]
        fn squarefree_decomposition_reconstructs(a in arb_nonzero_poly(40), b in arb_nonzero_poly(20), c in arb_nonzero_poly(10)) {
            let q = a.mul(&b.square()).mul(&c.square().square().mul(&c));
            let parts = squarefree_decomposition(&q).unwrap();
            let mut prod = BitPoly::one();
            for (f, m) in &parts {
                prop_assert!(f.is_squarefree().unwrap());
                for _ in 0..*m {
                    prod = prod.mul(f);
                }
            }
            prop_assert_eq!(prod, q);
        }

        #[test]
        fn factor_count_degree_accounting(q in arb_nonzero_poly(65)) {
            prop_assume!(q.degree().unwrap() >= 1);
            let fc = factor_count(&q).unwrap();
            prop_assert_eq!(fc.degree_sum(), q.degree().unwrap());
            prop_assert_eq!(fc.squarefree, q.is_squarefree().unwrap());
            prop_assert_eq!(fc.is_irreducible(), is_irreducible(&q).unwrap());
        }

        #[test]
        fn products_are_reducible(a in arb_nonzero_poly(40), b in arb_nonzero_poly(40)) {
            prop_assume!(a.degree().unwrap() >= 1 && b.degree().unwrap() >= 1);
            let q = a.mul(&b);
            prop_assert!(!is_irreducible(&q).unwrap());
            let fc = factor_count(&q).unwrap();
            prop_assert_eq!(fc.total, factor_count(&a).unwrap().total + factor_count(&b).unwrap().total);
        }

        #[test]
        fn reciprocal_preserves_irreducibility(q in arb_nonzero_poly(120)) {
            let mut q = q;
            if !q.constant_term() {
                q.flip(0);
            }
            prop_assume!(q.degree().unwrap_or(0) >= 1);
            let r = q.reciprocal().unwrap();
            prop_assert_eq!(is_irreducible(&q).unwrap(), is_irreducible(&r).unwrap());
            prop_assert_eq!(factor_count(&q).unwrap().total, factor_count(&r).unwrap().total);
        }

        #[test]
        fn prefilter_agrees_with_factor_degrees(q in arb_nonzero_poly(90), d_max in 1usize..14) {
            prop_assume!(q.degree().unwrap() > d_max);
            let fc = factor_count(&q).unwrap();
            let smallest = fc.by_degree.keys().next().copied();
            let expect = smallest.filter(|&d| d <= d_max);
            prop_assert_eq!(smallest_factor_degree(&q, d_max).unwrap(), expect);
        }
    }
}
