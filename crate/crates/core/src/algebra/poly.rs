//! Dense univariate polynomials over a generic coefficient ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. Nesting (`Poly<Poly<Int>>`) gives the
//! bivariate representation used throughout the crate.

use std::fmt;

use super::ring::{Field, Ring};

/// Degree of a polynomial; the zero polynomial has degree `MinusInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInf,
    Fin(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInf => None,
            Degree::Fin(d) => Some(d),
        }
    }

    /// Finite degree, with `MinusInf` mapped to `-1`.
    pub fn as_i64(self) -> i64 {
        match self {
            Degree::MinusInf => -1,
            Degree::Fin(d) => d as i64,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInf => write!(f, "-inf"),
            Degree::Fin(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInf,
            n => Degree::Fin(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn get(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn lc_ref(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(short.coeffs.iter()) {
            a.add_assign(b);
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => v.push(a.sub(b)),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.neg()),
                (None, None) => unreachable!(),
            }
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(v) = R::fast_poly_mul(&self.coeffs, &other.coeffs) {
            return Self::new(v);
        }
        let mut v = vec![R::zero(); self.len() + other.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j].mul_acc(a, b);
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal derivative with respect to the polynomial variable.
    pub fn derivative(&self) -> Self {
        if self.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t);
            acc.add_assign(c);
        }
        acc
    }

    /// Apply `f` to every coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-division: returns `(q, r)` with
    /// `lc(b)^(deg a - deg b + 1) * a = q * b + r` and `deg r < deg b`.
    pub fn pseudo_div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "pseudo division by zero polynomial");
        if self.len() < b.len() {
            return (Self::zero(), self.clone());
        }
        let lb = b.lc();
        let db = b.len() - 1;
        let steps = self.len() - b.len() + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); steps];
        for k in (0..steps).rev() {
            let top = r[k + db].clone();
            for qc in q.iter_mut().skip(k + 1) {
                *qc = qc.mul(&lb);
            }
            q[k] = top.clone();
            for c in r.iter_mut().take(k + db) {
                *c = c.mul(&lb);
            }
            r[k + db] = R::zero();
            if !top.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                    let t = top.mul(bc);
                    r[k + i].sub_assign(&t);
                }
            }
            r.truncate(k + db);
        }
        (Self::new(q), Self::new(r))
    }

    /// Pseudo-remainder only.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        self.pseudo_div_rem(b).1
    }

    /// Exact division assuming `b` divides `self`, given an exact divider
    /// for coefficients. Returns `None` when the division is not exact.
    pub fn div_exact_with(&self, b: &Self, div: impl Fn(&R, &R) -> Option<R>) -> Option<Self> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.len() < b.len() {
            return None;
        }
        let lb = b.lc_ref().unwrap();
        let db = b.len() - 1;
        let steps = self.len() - b.len() + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); steps];
        for k in (0..steps).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let c = div(top, lb)?;
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = c.mul(bc);
                r[k + i].sub_assign(&t);
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }
}

impl<K: Field> Poly<K> {
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.len() < b.len() {
            return (Self::zero(), self.clone());
        }
        let inv = b.lc().inv();
        let db = b.len() - 1;
        let steps = self.len() - b.len() + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![K::zero(); steps];
        for k in (0..steps).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&inv);
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = c.mul(bc);
                r[k + i].sub_assign(&t);
            }
            q[k] = c;
        }
        r.truncate(db);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    /// Exact quotient; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Self {
        let (q, r) = self.div_rem(b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`,
    /// `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Solve `s*a + t*b = c` with `deg s < deg b`, assuming `gcd(a, b) = 1`.
    pub fn diophantine(a: &Self, b: &Self, c: &Self) -> (Self, Self) {
        let (g, s, _) = a.ext_gcd(b);
        assert!(g.is_one_poly(), "diophantine: inputs not coprime");
        let s = s.mul(c).rem(b);
        let t = c.sub(&s.mul(a)).div_exact(b);
        (s, t)
    }

    fn is_one_poly(&self) -> bool {
        self.len() == 1 && self.coeffs[0].is_one()
    }

    /// Monic squarefree factors `[D_1, ..., D_m]` with `self = c * prod D_i^i`
    /// (Yun's algorithm; characteristic zero).
    pub fn squarefree(&self) -> Vec<Self> {
        if self.len() <= 1 {
            return Vec::new();
        }
        let a = self.monic();
        let da = a.derivative();
        let a0 = a.gcd(&da);
        let mut b = a.div_exact(&a0);
        let c = da.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        loop {
            let ai = b.gcd(&d);
            let nb = b.div_exact(&ai);
            let nc = d.div_exact(&ai);
            out.push(ai);
            if nb.len() <= 1 {
                break;
            }
            d = nc.sub(&nb.derivative());
            b = nb;
        }
        while out.last().is_some_and(|p| p.len() <= 1) {
            out.pop();
        }
        out
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn fast_poly_mul(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        R::fast_poly2_mul(a, b)
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
    fn add_assign(&mut self, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            a.add_assign(b);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
    fn sub_assign(&mut self, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            a.sub_assign(b);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let n = a.len() + b.len() - 1;
        if self.coeffs.len() < n {
            self.coeffs.resize(n, R::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].mul_acc(x, y);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{rat_i, Int, Rat};

    fn qp(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&c| rat_i(c)).collect())
    }

    fn zp(v: &[i64]) -> Poly<Int> {
        Poly::new(v.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::<Int>::zero().degree(), Degree::MinusInf);
        assert!(Degree::MinusInf < Degree::Fin(0));
        assert_eq!(zp(&[1, 2, 0]).degree(), Degree::Fin(1));
    }

    #[test]
    fn arithmetic() {
        let a = zp(&[1, 1]);
        let b = zp(&[-1, 1]);
        assert_eq!(a.mul(&b), zp(&[-1, 0, 1]));
        assert_eq!(a.pow(3), zp(&[1, 3, 3, 1]));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(zp(&[5, 3, 2]).derivative(), zp(&[3, 4]));
        assert_eq!(zp(&[1, 2, 3]).eval(&Int::from(2)), Int::from(17));
    }

    #[test]
    fn pseudo_division_identity() {
        let a = zp(&[3, -1, 4, 2, 7]);
        let b = zp(&[1, 0, 3]);
        let (q, r) = a.pseudo_div_rem(&b);
        let k = a.len() - b.len() + 1;
        let lhs = a.scale(&Int::from(3).pow(k as u32));
        assert_eq!(lhs, q.mul(&b).add(&r));
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), qp(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_squarefree() {
        // (t-1) (t+2)^2 t^3
        let p = qp(&[-1, 1]).mul(&qp(&[2, 1]).pow(2)).mul(&qp(&[0, 1]).pow(3));
        let s = p.squarefree();
        assert_eq!(s, vec![qp(&[-1, 1]), qp(&[2, 1]), qp(&[0, 1])]);
        // t^2 with no linear factor
        let s = qp(&[0, 0, 4]).squarefree();
        assert_eq!(s, vec![qp(&[1]), qp(&[0, 1])]);
    }

    #[test]
    fn diophantine_solution() {
        let a = qp(&[1, 1]);
        let b = qp(&[-2, 0, 1]);
        let c = qp(&[3, 0, 0, 5]);
        let (s, t) = Poly::diophantine(&a, &b, &c);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), c);
        assert!(s.len() < b.len());
    }
}
