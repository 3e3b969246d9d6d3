//! Multiplication of integer polynomials by Kronecker substitution.
//!
//! A polynomial in `x` (or in `x, y`, flattened row by row) is packed into
//! one big integer with 64-bit aligned slots of `s` words. Each slot holds
//! `c + H`, `H = 2^(64 s - 1)`, so that packing and unpacking are word
//! copies; the signed value is recovered by subtracting the packed offset.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use super::ring::Int;

/// Use the packed product above this many coefficient pairs.
pub const THRESHOLD: usize = 1024;

fn nonzero(rows: &[&[Int]]) -> usize {
    rows.iter().map(|r| r.iter().filter(|c| !c.is_zero()).count()).sum()
}

fn max_bits(rows: &[&[Int]]) -> u64 {
    rows.iter().flat_map(|r| r.iter()).map(|c| c.bits()).max().unwrap_or(0)
}

fn to_biguint(words: Vec<u64>) -> BigUint {
    let mut v = Vec::with_capacity(words.len() * 2);
    for w in words {
        v.push(w as u32);
        v.push((w >> 32) as u32);
    }
    BigUint::new(v)
}

/// Offset `sum_i H * B^i` for `n` slots of `s` words.
fn offset(n: usize, s: usize) -> BigUint {
    let mut words = vec![0u64; n * s];
    for i in 0..n {
        words[i * s + s - 1] = 1 << 63;
    }
    to_biguint(words)
}

fn pack(rows: &[&[Int]], width: usize, s: usize) -> BigInt {
    let n = rows.len() * width;
    let mut words = vec![0u64; n * s];
    let half = BigInt::from(1) << (64 * s - 1);
    for (j, row) in rows.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            let idx = (j * width + i) * s;
            if c.is_zero() {
                words[idx + s - 1] = 1 << 63;
                continue;
            }
            let (_, digits) = (c + &half).to_u64_digits();
            words[idx..idx + digits.len()].copy_from_slice(&digits);
        }
        for i in row.len()..width {
            words[(j * width + i) * s + s - 1] = 1 << 63;
        }
    }
    BigInt::from_biguint(Sign::Plus, to_biguint(words)) - BigInt::from_biguint(Sign::Plus, offset(n, s))
}

/// Product of two bivariate integer polynomials given as rows of `x`
/// coefficients. Returns `rows_a + rows_b - 1` rows of equal width
/// (untrimmed).
pub fn mul_rows(a: &[&[Int]], b: &[&[Int]]) -> Vec<Vec<Int>> {
    let wa = a.iter().map(|r| r.len()).max().unwrap_or(0);
    let wb = b.iter().map(|r| r.len()).max().unwrap_or(0);
    if a.is_empty() || b.is_empty() || wa == 0 || wb == 0 {
        return Vec::new();
    }
    let width = wa + wb - 1;
    let terms = nonzero(a).min(nonzero(b)).max(1) as u64;
    let bits = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 2;
    let s = bits.div_ceil(64) as usize;
    let prod = pack(a, width, s) * pack(b, width, s);
    let rows = a.len() + b.len() - 1;
    let n = rows * width;
    let (sign, mag) = (prod + BigInt::from_biguint(Sign::Plus, offset(n, s))).into_parts();
    debug_assert!(sign != Sign::Minus);
    let words = mag.to_u64_digits();
    let half = BigInt::from(1) << (64 * s - 1);
    let mut out = vec![vec![BigInt::zero(); width]; rows];
    for (k, slot) in (0..n).map(|k| (k, k * s)) {
        let end = (slot + s).min(words.len());
        let w: Vec<u64> = if slot < words.len() { words[slot..end].to_vec() } else { Vec::new() };
        if w.len() == s && w[..s - 1].iter().all(|&x| x == 0) && w[s - 1] == 1 << 63 {
            continue;
        }
        out[k / width][k % width] = BigInt::from_biguint(Sign::Plus, to_biguint(w)) - &half;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
        let width = a.iter().map(|r| r.len()).max().unwrap() + b.iter().map(|r| r.len()).max().unwrap() - 1;
        let mut out = vec![vec![BigInt::zero(); width]; a.len() + b.len() - 1];
        for (j, ra) in a.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                for (i, x) in ra.iter().enumerate() {
                    for (l, y) in rb.iter().enumerate() {
                        out[j + k][i + l] += x * y;
                    }
                }
            }
        }
        out
    }

    fn rows() -> impl Strategy<Value = Vec<Vec<Int>>> {
        let coeff = prop_oneof![
            (-5i64..6).prop_map(BigInt::from),
            any::<i64>().prop_map(|v| BigInt::from(v) * BigInt::from(v) * BigInt::from(v)),
            Just(BigInt::zero()),
        ];
        (1usize..4, 1usize..6)
            .prop_flat_map(move |(r, w)| proptest::collection::vec(proptest::collection::vec(coeff.clone(), w), r))
    }

    proptest! {
        #[test]
        fn packed_product_matches_schoolbook(a in rows(), b in rows()) {
            let ar: Vec<&[Int]> = a.iter().map(|r| r.as_slice()).collect();
            let br: Vec<&[Int]> = b.iter().map(|r| r.as_slice()).collect();
            prop_assert_eq!(mul_rows(&ar, &br), naive(&a, &b));
        }
    }

    #[test]
    fn extreme_coefficients() {
        let big: BigInt = (BigInt::from(1) << 190) - 1;
        let a = vec![vec![big.clone(), -big.clone()], vec![-big.clone()]];
        let b = vec![vec![-big.clone(), BigInt::zero(), big.clone()]];
        let ar: Vec<&[Int]> = a.iter().map(|r| r.as_slice()).collect();
        let br: Vec<&[Int]> = b.iter().map(|r| r.as_slice()).collect();
        assert_eq!(mul_rows(&ar, &br), naive(&a, &b));
    }
}
