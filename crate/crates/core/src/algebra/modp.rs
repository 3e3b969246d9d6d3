//! Word-size prime field arithmetic used by the modular algorithms
//! (integer polynomial gcd, rank probes, multi-modular linear algebra).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::Int;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero modulo {p}");
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Iterator over primes just below 2^62, in decreasing order.
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

/// The first `n` primes of [`PrimeStream`], cached.
pub fn primes(n: usize) -> Vec<u64> {
    use std::sync::Mutex;
    static CACHE: Mutex<Vec<u64>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < n {
        let mut it = PrimeStream { next: cache.last().map_or((1u64 << 62) - 1, |&p| p - 2) };
        while cache.len() < n {
            cache.push(it.next().expect("prime supply exhausted"));
        }
    }
    cache[..n].to_vec()
}

/// `x mod p` in `[0, p)`.
pub fn reduce(x: &Int, p: u64) -> u64 {
    let (sign, digits) = x.to_u64_digits();
    let mut r: u128 = 0;
    for &d in digits.iter().rev() {
        r = ((r << 64) | d as u128) % p as u128;
    }
    let r = r as u64;
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: Int,
    pub values: Vec<Int>,
}

impl Crt {
    pub fn new(residues: &[u64], p: u64) -> Self {
        Crt { modulus: BigInt::from(p), values: residues.iter().map(|&r| BigInt::from(r)).collect() }
    }

    /// Absorb residues modulo a new prime `p` (coprime to the current modulus).
    pub fn absorb(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let m_mod_p = reduce(&self.modulus, p);
        let minv = inv_mod(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = reduce(v, p);
            let delta = mul_mod(sub_mod(r, cur, p), minv, p);
            if delta != 0 {
                *v += &self.modulus * delta;
            }
        }
        self.modulus *= p;
    }

    /// Values in the symmetric range `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<Int> {
        let half = &self.modulus >> 1;
        self.values.iter().map(|v| if *v > half { v - &self.modulus } else { v.clone() }).collect()
    }
}

/// Rational reconstruction of `u mod m`: finds `n/d` with `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruct(u: &Int, m: &Int) -> Option<(Int, Int)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Rank of a dense matrix over `F_p` (destroys the input).
pub fn rank_mod(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for v in m[rank][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (a, &b) in row[c..].iter_mut().zip(prow[c..].iter()) {
                *a = sub_mod(*a, mul_mod(f, b, p), p);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over `F_p`; returns pivot columns.
pub fn rref_mod(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    if rows == 0 {
        return pivots;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for v in m[rank][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (a, &b) in row[c..].iter_mut().zip(prow[c..].iter()) {
                *a = sub_mod(*a, mul_mod(f, b, p), p);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

/// Polynomial helpers over `F_p`, coefficients lowest degree first and
/// trimmed.
pub mod upoly {
    use super::*;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mul_mod(*r.last().unwrap(), inv, p);
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = sub_mod(r[k + i], mul_mod(c, bc, p), p);
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd over `F_p`.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        if let Some(&l) = x.last() {
            let inv = inv_mod(l, p);
            for c in x.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
        x
    }

    pub fn eval(a: &[u64], t: u64, p: u64) -> u64 {
        let mut acc = 0;
        for &c in a.iter().rev() {
            acc = add_mod(mul_mod(acc, t, p), c, p);
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = add_mod(r[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(&mut r);
        r
    }

    /// `a - c * b`.
    pub fn sub_scaled(a: &[u64], b: &[u64], c: u64, p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        if r.len() < b.len() {
            r.resize(b.len(), 0);
        }
        for (x, &y) in r.iter_mut().zip(b) {
            *x = sub_mod(*x, mul_mod(c, y, p), p);
        }
        trim(&mut r);
        r
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let inv = inv_mod(b[db], p);
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mul_mod(*r.last().unwrap(), inv, p);
            q[k] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = sub_mod(r[k + i], mul_mod(c, bc, p), p);
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn monic(a: &mut [u64], p: u64) {
        if let Some(&l) = a.last() {
            let inv = inv_mod(l, p);
            for c in a.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
        Interpolator::new(xs, p).interpolate(ys)
    }

    /// Newton interpolation on a fixed point set, with the inverses of the
    /// point differences precomputed.
    pub struct Interpolator {
        xs: Vec<u64>,
        inv: Vec<Vec<u64>>,
        p: u64,
    }

    impl Interpolator {
        pub fn new(xs: &[u64], p: u64) -> Self {
            let n = xs.len();
            let inv = (1..n).map(|j| (j..n).map(|i| inv_mod(sub_mod(xs[i], xs[i - j], p), p)).collect()).collect();
            Interpolator { xs: xs.to_vec(), inv, p }
        }

        pub fn interpolate(&self, ys: &[u64]) -> Vec<u64> {
            let (n, p, xs) = (self.xs.len(), self.p, &self.xs);
            let mut c = ys.to_vec();
            for j in 1..n {
                for i in (j..n).rev() {
                    c[i] = mul_mod(sub_mod(c[i], c[i - 1], p), self.inv[j - 1][i - j], p);
                }
            }
            let mut r: Vec<u64> = Vec::with_capacity(n);
            for i in (0..n).rev() {
                // r = r * (x - xs[i]) + c[i]
                r.insert(0, 0);
                for k in 0..r.len() - 1 {
                    let t = mul_mod(r[k + 1], xs[i], p);
                    r[k] = sub_mod(r[k], t, p);
                }
                r[0] = add_mod(r[0], c[i], p);
            }
            trim(&mut r);
            r
        }
    }

    /// `prod (x - xs[i])`.
    pub fn vanishing(xs: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        for &x in xs {
            let mut next = vec![0u64; r.len() + 1];
            for (k, &v) in r.iter().enumerate() {
                next[k + 1] = add_mod(next[k + 1], v, p);
                next[k] = sub_mod(next[k], mul_mod(v, x, p), p);
            }
            r = next;
        }
        r
    }

    /// Rational function reconstruction of `u mod m` by maximal-quotient
    /// selection in the extended Euclidean sequence. Returns `(num, den)`
    /// with `den` monic; `None` if no candidate has an invertible
    /// denominator.
    pub fn ratrecon(m: &[u64], u: &[u64], p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let mut u = u.to_vec();
        trim(&mut u);
        if u.is_empty() {
            return Some((Vec::new(), vec![1]));
        }
        let (mut r0, mut r1) = (m.to_vec(), u);
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        let mut best: Option<(usize, Vec<u64>, Vec<u64>)> = None;
        while !r1.is_empty() {
            let (q, r2) = div_rem(&r0, &r1, p);
            let dq = q.len() - 1;
            if best.as_ref().map_or(true, |b| dq > b.0) {
                best = Some((dq, r1.clone(), t1.clone()));
            }
            let qt = mul(&q, &t1, p);
            let mut t2 = t0.clone();
            if t2.len() < qt.len() {
                t2.resize(qt.len(), 0);
            }
            for (a, &b) in t2.iter_mut().zip(&qt) {
                *a = sub_mod(*a, b, p);
            }
            trim(&mut t2);
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let (_, mut num, mut den) = best?;
        let inv = inv_mod(*den.last()?, p);
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = mul_mod(*c, inv, p);
        }
        Some((num, den))
    }
}
