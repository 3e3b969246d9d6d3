//! Linear differential operators in `D_x`.
//!
//! [`DiffOp`] has integer polynomial coefficients (`Z[x]<D_x>`) and is the
//! output type of every telescoping algorithm; [`RatDiffOp`] has
//! coefficients in `Q(x)` and supports the Euclidean right division.

use num_traits::Signed;

use super::bpoly::{self, BPoly};
use super::rfunc::RFunc;
use super::ring::{binomial, Field, Int, Ring};
use super::xfrac::XFrac;
use super::zpoly::{self, ZPoly};

/// `sum_i coeffs[i] * D_x^i` with `coeffs[i]` in `Z[x]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffOp {
    coeffs: Vec<ZPoly>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<ZPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn one() -> Self {
        DiffOp { coeffs: vec![ZPoly::one()] }
    }

    /// `D_x`.
    pub fn dx() -> Self {
        DiffOp { coeffs: vec![ZPoly::zero(), ZPoly::one()] }
    }

    pub fn coeffs(&self) -> &[ZPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in `D_x`; zero operator has order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg0()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> ZPoly {
        self.coeffs.last().cloned().unwrap_or_else(ZPoly::zero)
    }

    /// Content over `Z[x]` of the coefficients.
    pub fn content(&self) -> ZPoly {
        let mut g = ZPoly::zero();
        for c in &self.coeffs {
            g = zpoly::gcd(&g, c);
        }
        g
    }

    /// Divide out the `Z[x]` content and make the leading coefficient's
    /// leading term positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().lc().is_negative() {
            g = g.neg();
        }
        DiffOp::new(self.coeffs.iter().map(|c| zpoly::div_exact(c, &g).unwrap()).collect())
    }

    /// Returns `(content, primitive)` with `self = content * primitive`.
    pub fn split_content(&self) -> (ZPoly, Self) {
        if self.is_zero() {
            return (ZPoly::one(), self.clone());
        }
        let mut g = self.content();
        if self.leading().lc().is_negative() {
            g = g.neg();
        }
        let p = DiffOp::new(self.coeffs.iter().map(|c| zpoly::div_exact(c, &g).unwrap()).collect());
        (g, p)
    }

    /// `self * c(x)` (multiplication on the right by a polynomial).
    pub fn mul_right_poly(&self, c: &ZPoly) -> Self {
        self.to_rat().mul(&RatDiffOp::new(vec![XFrac::from_poly(c.clone())])).to_integral().1
    }

    /// `c(x) * self`.
    pub fn mul_left_poly(&self, c: &ZPoly) -> Self {
        DiffOp::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn to_rat(&self) -> RatDiffOp {
        RatDiffOp::new(self.coeffs.iter().map(|c| XFrac::from_poly(c.clone())).collect())
    }

    /// Apply to a rational function.
    pub fn apply(&self, f: &RFunc) -> RFunc {
        let (n, d) = self.apply_unreduced(f);
        RFunc::new(n, d)
    }

    /// `L(f) = N / den(f)^(order+1)` without the final reduction.
    pub fn apply_unreduced(&self, f: &RFunc) -> (BPoly, BPoly) {
        let d = f.den();
        let rho = self.order();
        let dxd = bpoly::dx(d);
        let mut ni = f.num().clone();
        let mut acc = BPoly::zero();
        let mut dpow = vec![BPoly::one()];
        for k in 1..=rho {
            dpow.push(dpow[k - 1].mul(d));
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = bpoly::mul_x(&ni, c).mul(&dpow[rho - i]);
                acc = acc.add(&term);
            }
            if i < rho {
                // D_x(n_i / d^(i+1)) = (n_i' d - (i+1) n_i d') / d^(i+2)
                let a = bpoly::dx(&ni).mul(d);
                let b = bpoly::scale_int(&ni.mul(&dxd), &Int::from(i as i64 + 1));
                ni = a.sub(&b);
            }
        }
        (acc, dpow[rho].mul(d))
    }
}

/// `sum_i coeffs[i] * D_x^i` with coefficients in `Q(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatDiffOp {
    coeffs: Vec<XFrac>,
}

impl RatDiffOp {
    pub fn new(mut coeffs: Vec<XFrac>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        RatDiffOp { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[XFrac] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatDiffOp::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(XFrac::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(XFrac::zero);
                    a.add(&b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_left(&XFrac::from_i64(-1)))
    }

    pub fn scale_left(&self, c: &XFrac) -> Self {
        RatDiffOp::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Operator product `self * other` in the Ore algebra
    /// (`D_x a = a D_x + a'`).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![XFrac::zero(); self.order() + other.order() + 1];
        for (j, b) in other.coeffs.iter().enumerate() {
            // derivatives of b, computed lazily
            let mut derivs = vec![b.clone()];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                // a D^i b D^j = a sum_t C(i,t) b^(t) D^(i-t+j)
                while derivs.len() <= i {
                    let next = derivs.last().unwrap().derivative();
                    derivs.push(next);
                }
                for (t, bt) in derivs.iter().enumerate().take(i + 1) {
                    if bt.is_zero() {
                        continue;
                    }
                    let c = XFrac::from_int(binomial(i as u64, t as u64));
                    let term = a.mul(bt).mul(&c);
                    out[i - t + j].add_assign(&term);
                }
            }
        }
        RatDiffOp::new(out)
    }

    /// Euclidean right division: `self = q * divisor + r` with
    /// `order(r) < order(divisor)`.
    pub fn right_divide(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "right division by zero operator");
        let dord = divisor.order();
        let dlc = divisor.coeffs.last().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![XFrac::zero(); self.order().saturating_sub(dord) + 1];
        while !r.is_zero() && r.order() >= dord {
            let k = r.order() - dord;
            let c = r.coeffs.last().unwrap().div(&dlc);
            let mut mono = vec![XFrac::zero(); k + 1];
            mono[k] = c.clone();
            let t = RatDiffOp::new(mono).mul(divisor);
            r = r.sub(&t);
            q[k].add_assign(&c);
        }
        (RatDiffOp::new(q), r)
    }

    /// Clear denominators: returns `(d, L)` with `self = L / d`, `L`
    /// primitive-free (not content-normalized).
    pub fn to_integral(&self) -> (ZPoly, DiffOp) {
        let mut den = ZPoly::one();
        for c in &self.coeffs {
            den = zpoly::lcm(&den, c.den());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.num().mul(&zpoly::div_exact(&den, c.den()).unwrap()))
            .collect();
        (den, DiffOp::new(coeffs))
    }
}

/// `op_right_divide(L_big, L_small) -> (quotient, remainder)` over `Q(x)`.
pub fn op_right_divide(big: &DiffOp, small: &DiffOp) -> (RatDiffOp, RatDiffOp) {
    big.to_rat().right_divide(&small.to_rat())
}

/// `L * K` for integer operators.
pub fn op_mul(l: &DiffOp, k: &DiffOp) -> DiffOp {
    l.to_rat().mul(&k.to_rat()).to_integral().1
}

impl From<Vec<ZPoly>> for DiffOp {
    fn from(v: Vec<ZPoly>) -> Self {
        DiffOp::new(v)
    }
}

/// Build from coefficients given as integer vectors (lowest `x`-degree
/// first), lowest order first.
pub fn diffop_from_ints(v: &[&[i64]]) -> DiffOp {
    DiffOp::new(v.iter().map(|c| zpoly::zpoly(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;
    use crate::algebra::zpoly::zpoly;

    #[test]
    fn ore_commutation() {
        // D_x * x = x D_x + 1
        let d = DiffOp::dx().to_rat();
        let x = RatDiffOp::new(vec![XFrac::from_poly(zpoly(&[0, 1]))]);
        let p = d.mul(&x);
        assert_eq!(p.coeffs(), &[XFrac::from_i64(1), XFrac::from_poly(zpoly(&[0, 1]))]);
    }

    #[test]
    fn right_division_roundtrip() {
        let small = diffop_from_ints(&[&[-2], &[1, -4]]);
        let extra = diffop_from_ints(&[&[3, 1], &[0, 0, 1], &[1]]);
        let big = op_mul(&extra, &small);
        let (q, r) = op_right_divide(&big, &small);
        assert!(r.is_zero());
        assert_eq!(q, extra.to_rat());
        let big2 = DiffOp::new(vec![zpoly(&[1]), zpoly(&[0, 1]), zpoly(&[5])]);
        let (q, r) = op_right_divide(&big2, &small);
        assert_eq!(q.mul(&small.to_rat()).add(&r), big2.to_rat());
        assert!(r.order() < small.order() || r.is_zero());
    }

    #[test]
    fn application() {
        // L = (x y - 1) ... use f = 1/(1 - x y): D_x f = y/(1 - x y)^2
        let f = RFunc::new(from_terms(&[(1, 0, 0)]), from_terms(&[(1, 0, 0), (-1, 1, 1)]));
        let df = DiffOp::dx().apply(&f);
        assert_eq!(df, f.dx());
        let l = diffop_from_ints(&[&[3, 1], &[0, 2], &[1, 0, 1]]);
        let expect = f.mul(&RFunc::from_bpoly(from_terms(&[(3, 0, 0), (1, 1, 0)])))
            .add(&f.dx().mul(&RFunc::from_bpoly(from_terms(&[(2, 1, 0)]))))
            .add(&f.dx().dx().mul(&RFunc::from_bpoly(from_terms(&[(1, 0, 0), (1, 2, 0)]))));
        assert_eq!(l.apply(&f), expect);
    }

    #[test]
    fn primitive_normalization() {
        let l = diffop_from_ints(&[&[2], &[-2, 8]]);
        assert_eq!(l.primitive(), diffop_from_ints(&[&[1], &[-1, 4]]));
        let l = diffop_from_ints(&[&[0, 2], &[0, 0, -2]]);
        assert_eq!(l.primitive(), diffop_from_ints(&[&[-1], &[0, 1]]));
    }
}
