use super::{clmul, normalize, rem_words, BitPoly, Gf2Error, WORD_BITS};

/// Moduli with at most this many terms use word-folding reduction.
const SPARSE_MAX_WEIGHT: usize = 16;
/// Minimum distance between the leading and second-highest exponent for
/// word folding; smaller gaps make the fold loop spin.
const SPARSE_MIN_GAP: usize = 8;

#[derive(Debug, Clone)]
enum Reduction {
    /// Exponents of the modulus below its degree.
    Sparse(Vec<usize>),
    Dense,
}

/// A fixed modulus `m` with `deg(m) >= 1`, for repeated reduction.
///
/// Low-weight moduli (trinomials, pentanomials) fold whole words at a time
/// through their few low terms; anything else falls back to bitwise long
/// division.
#[derive(Debug, Clone)]
pub struct Modulus {
    poly: BitPoly,
    degree: usize,
    reduction: Reduction,
}

fn xor_bits(v: &mut [u64], pos: usize, bits: u64) {
    let w = pos / WORD_BITS;
    let b = pos % WORD_BITS;
    v[w] ^= bits << b;
    if b != 0 {
        let hi = bits >> (WORD_BITS - b);
        if hi != 0 {
            v[w + 1] ^= hi;
        }
    }
}

fn reduce_sparse(v: &mut Vec<u64>, n: usize, low: &[usize]) {
    let nw = n / WORD_BITS;
    let nb = n % WORD_BITS;
    let mut idx = v.len();
    while idx > nw {
        idx -= 1;
        loop {
            let (chunk, base) = if idx == nw {
                (v[idx] >> nb, n)
            } else {
                (v[idx], idx * WORD_BITS)
            };
            if chunk == 0 {
                break;
            }
            if idx == nw {
                v[idx] &= (1u64 << nb).wrapping_sub(1);
            } else {
                v[idx] = 0;
            }
            // X^(base + j) == sum_e X^(base - n + e + j)
            let off = base - n;
            for &e in low {
                xor_bits(v, off + e, chunk);
            }
        }
    }
    normalize(v);
}

impl Modulus {
    pub fn new(m: &BitPoly) -> Result<Self, Gf2Error> {
        let degree = match m.degree() {
            Some(d) if d >= 1 => d,
            other => {
                return Err(Gf2Error::DegreeTooSmall {
                    min: 1,
                    found: other.map_or("-inf".into(), |d| d.to_string()),
                })
            }
        };
        let low: Vec<usize> = m.exponents().filter(|&e| e < degree).collect();
        let gap = degree - low.last().copied().unwrap_or(0);
        let reduction = if low.len() < SPARSE_MAX_WEIGHT && gap >= SPARSE_MIN_GAP {
            Reduction::Sparse(low)
        } else {
            Reduction::Dense
        };
        Ok(Modulus {
            poly: m.clone(),
            degree,
            reduction,
        })
    }

    #[cfg(test)]
    pub(crate) fn new_dense(m: &BitPoly) -> Result<Self, Gf2Error> {
        let mut out = Modulus::new(m)?;
        out.reduction = Reduction::Dense;
        Ok(out)
    }

    #[cfg(test)]
    pub(crate) fn is_sparse(&self) -> bool {
        matches!(self.reduction, Reduction::Sparse(_))
    }

    pub fn poly(&self) -> &BitPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn reduce_words(&self, v: &mut Vec<u64>) {
        match &self.reduction {
            Reduction::Sparse(low) => reduce_sparse(v, self.degree, low),
            Reduction::Dense => rem_words(v, self.poly.words(), self.degree, None),
        }
    }

    pub fn reduce(&self, p: &BitPoly) -> BitPoly {
        let mut v = p.words().to_vec();
        self.reduce_words(&mut v);
        BitPoly::from_words(v)
    }

    pub fn mul(&self, a: &BitPoly, b: &BitPoly) -> BitPoly {
        let mut v = clmul::mul_words(a.words(), b.words());
        self.reduce_words(&mut v);
        BitPoly::from_words(v)
    }

    pub fn square(&self, a: &BitPoly) -> BitPoly {
        let mut v = clmul::square_words(a.words());
        self.reduce_words(&mut v);
        BitPoly::from_words(v)
    }

    /// `X mod m`.
    pub fn x(&self) -> BitPoly {
        self.reduce(&BitPoly::x())
    }

    /// `X^(2^k) mod m`, by `k` modular squarings.
    pub fn frobenius(&self, k: usize) -> BitPoly {
        self.frobenius_from(&self.x(), k)
    }

    /// Applies `k` further modular squarings to `start`.
    pub fn frobenius_from(&self, start: &BitPoly, k: usize) -> BitPoly {
        let mut h = self.reduce(start);
        for _ in 0..k {
            h = self.square(&h);
        }
        h
    }
}

/// `X^(2^k) mod m`; requires `deg(m) >= 1`.
pub fn pow_frobenius(m: &BitPoly, k: usize) -> Result<BitPoly, Gf2Error> {
    Ok(Modulus::new(m)?.frobenius(k))
}
