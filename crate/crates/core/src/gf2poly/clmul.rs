//! Carry-less word arithmetic.

/// Operand length (in words) from which multiplication switches to Karatsuba.
const KARATSUBA_THRESHOLD: usize = 24;

/// 64x64 -> 128 bit carry-less product, 4-bit windowed.
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i ^ 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut r = 0u128;
    for k in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * k)) & 15) as usize];
    }
    r
}

fn mul_schoolbook(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = clmul64(x, y);
            out[i + j] ^= p as u64;
            out[i + j + 1] ^= (p >> 64) as u64;
        }
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn add_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    xor_into(&mut out, short);
    out
}

/// Unnormalized product of length `a.len() + b.len()`.
pub(crate) fn mul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        mul_schoolbook(a, b, &mut out);
        return out;
    }
    let h = a.len().min(b.len()) / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = mul_words(a0, b0);
    let z2 = mul_words(a1, b1);
    let mut z1 = mul_words(&add_words(a0, a1), &add_words(b0, b1));
    xor_into(&mut z1, &z0);
    xor_into(&mut z1, &z2);
    xor_into(&mut out, &z0);
    xor_into(&mut out[h..], &z1);
    xor_into(&mut out[2 * h..], &z2);
    out
}

/// Interleaves zero bits: bit `i` of `x` moves to bit `2i`.
fn spread32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// Inverse of `spread32` on the even bits of `x`.
fn compress64(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    ((x | (x >> 16)) & 0xFFFF_FFFF) as u32
}

/// Squaring is linear over GF(2): `(sum a_i X^i)^2 = sum a_i X^(2i)`.
pub(crate) fn square_words(a: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(2 * a.len());
    for &w in a {
        out.push(spread32(w as u32));
        out.push(spread32((w >> 32) as u32));
    }
    out
}

/// Keeps the even-indexed bits, halving their index.
pub(crate) fn compress_even_bits(a: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().div_ceil(2)];
    for (i, &w) in a.iter().enumerate() {
        out[i / 2] |= (compress64(w) as u64) << (32 * (i % 2));
    }
    out
}
