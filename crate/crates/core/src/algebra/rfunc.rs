//! Bivariate rational functions in `Q(x, y)`.

use num_integer::Integer;
use num_traits::Signed;

use super::bpoly::{self, BPoly};
use super::ring::{Int, Ring};
use super::xfrac::{XFrac, XRatPoly};
use super::zpoly::ZPoly;

/// `num / den` with integer polynomial numerator and denominator.
///
/// Canonical form: `gcd(num, den) = 1` in `Q[x, y]`, the integer contents of
/// `num` and `den` are coprime, and the leading coefficient of `den` (in `y`,
/// then in `x`) is positive. Any rational content of the function is thereby
/// carried by the integer content of `num` and `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RFunc {
    num: BPoly,
    den: BPoly,
}

impl RFunc {
    pub fn new(num: BPoly, den: BPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = bpoly::gcd(&num, &den);
        if g.len() == 1 && g.coeffs()[0].is_one() {
            return Self::normalize_contents(num, den);
        }
        Self::normalize_contents(bpoly::div(&num, &g), bpoly::div(&den, &g))
    }

    fn normalize_contents(num: BPoly, den: BPoly) -> Self {
        let c = bpoly::icontent(&num).gcd(&bpoly::icontent(&den));
        let c = if bpoly::leading_int(&den).is_negative() { -c } else { c };
        if c.is_one() {
            return RFunc { num, den };
        }
        RFunc { num: bpoly::div_int(&num, &c), den: bpoly::div_int(&den, &c) }
    }

    /// Assemble without reduction; the caller guarantees canonical form.
    pub fn from_canonical_parts(num: BPoly, den: BPoly) -> Self {
        RFunc { num, den }
    }

    pub fn zero() -> Self {
        RFunc { num: BPoly::zero(), den: BPoly::one() }
    }

    pub fn one() -> Self {
        RFunc { num: BPoly::one(), den: BPoly::one() }
    }

    pub fn from_bpoly(p: BPoly) -> Self {
        RFunc { num: p, den: BPoly::one() }.renormalized()
    }

    fn renormalized(self) -> Self {
        Self::normalize_contents(self.num, self.den)
    }

    pub fn from_int(n: Int) -> Self {
        Self::from_bpoly(bpoly::constant(n))
    }

    /// `p(x, y) / (den(x) * extra(x, y))`.
    pub fn from_xrat(p: &XRatPoly, extra: &BPoly) -> Self {
        Self::new(p.num().clone(), bpoly::mul_x(extra, p.den()))
    }

    pub fn from_xfrac(c: &XFrac) -> Self {
        Self::new(bpoly::from_x(c.num()), bpoly::from_x(c.den()))
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &BPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg_y(num) < deg_y(den)` (zero is proper).
    pub fn is_proper(&self) -> bool {
        self.is_zero() || self.num.len() < self.den.len()
    }

    /// Maximum of numerator and denominator bidegrees.
    pub fn bidegree(&self) -> (usize, usize) {
        let (a, b) = bpoly::bidegree(&self.num);
        let (c, d) = bpoly::bidegree(&self.den);
        (a.max(c), b.max(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        let g = bpoly::gcd(&self.den, &other.den);
        let a = bpoly::div(&self.den, &g);
        let b = bpoly::div(&other.den, &g);
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        if num.is_zero() {
            return Self::zero();
        }
        let h = bpoly::gcd(&num, &g);
        let (num, g) = if h.len() == 1 && h.coeffs()[0].is_one() {
            (num, g)
        } else {
            (bpoly::div(&num, &h), bpoly::div(&g, &h))
        };
        Self::normalize_contents(num, a.mul(&b).mul(&g))
    }

    pub fn neg(&self) -> Self {
        RFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = bpoly::gcd(&self.num, &other.den);
        let g2 = bpoly::gcd(&other.num, &self.den);
        let n = bpoly::div(&self.num, &g1).mul(&bpoly::div(&other.num, &g2));
        let d = bpoly::div(&self.den, &g2).mul(&bpoly::div(&other.den, &g1));
        Self::normalize_contents(n, d)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::normalize_contents(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn scale_int(&self, c: &Int) -> Self {
        Self::new(bpoly::scale_int(&self.num, c), self.den.clone())
    }

    pub fn mul_xfrac(&self, c: &XFrac) -> Self {
        self.mul(&Self::from_xfrac(c))
    }

    pub fn dx(&self) -> Self {
        let n = bpoly::dx(&self.num).mul(&self.den).sub(&self.num.mul(&bpoly::dx(&self.den)));
        Self::new(n, self.den.mul(&self.den))
    }

    pub fn dy(&self) -> Self {
        let n = bpoly::dy(&self.num).mul(&self.den).sub(&self.num.mul(&bpoly::dy(&self.den)));
        Self::new(n, self.den.mul(&self.den))
    }

    /// Exchange `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        Self::normalize_contents(bpoly::swap(&self.num), bpoly::swap(&self.den))
    }

    /// Evaluate at `x = x0`, returning `(num, den)` over `Q[y]`.
    pub fn eval_x(&self, x0: &super::ring::Rat) -> (super::zpoly::UPoly, super::zpoly::UPoly) {
        (bpoly::eval_x(&self.num, x0), bpoly::eval_x(&self.den, x0))
    }
}

/// Split `f = D_y(p) + fbar` with `p` a polynomial in `y` over `Q(x)` and
/// `fbar` proper in `y`.
pub fn make_proper(f: &RFunc) -> (XRatPoly, RFunc) {
    if f.is_proper() {
        return (XRatPoly::zero(), f.clone());
    }
    let n = f.num();
    let d = f.den();
    if d.len() == 1 {
        let poly = XRatPoly::new(n.clone(), d.coeffs()[0].clone());
        return (poly.integrate_y(), RFunc::zero());
    }
    let (s, r) = n.pseudo_div_rem(d);
    let k = n.len() - d.len() + 1;
    let lk = d.lc().pow(k);
    let poly = XRatPoly::new(s, lk.clone());
    let fbar = RFunc::new(r, bpoly::mul_x(d, &lk));
    (poly.integrate_y(), fbar)
}

/// Integer content helper shared with the parser: `p / c` as an `RFunc`.
pub fn rfunc_from_scaled(num: BPoly, den_scale: Int) -> RFunc {
    RFunc::new(num, bpoly::constant(den_scale))
}

impl Default for RFunc {
    fn default() -> Self {
        Self::zero()
    }
}

/// Helper used in tests and certificates: the polynomial `c(x)` as an `RFunc`.
pub fn from_zpoly_x(c: &ZPoly) -> RFunc {
    RFunc::from_bpoly(bpoly::from_x(c))
}

/// Sum of `RFunc`s.
pub fn sum<'a>(it: impl IntoIterator<Item = &'a RFunc>) -> RFunc {
    let mut acc = RFunc::zero();
    for f in it {
        acc = acc.add(f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;
    use crate::algebra::zpoly::zpoly;
    use proptest::prelude::*;

    fn rf(n: &[(i64, usize, usize)], d: &[(i64, usize, usize)]) -> RFunc {
        RFunc::new(from_terms(n), from_terms(d))
    }

    #[test]
    fn canonical_forms() {
        // (2x + 2) / (4 x y + 4 y) = 1 / (2 y)
        let f = rf(&[(2, 1, 0), (2, 0, 0)], &[(4, 1, 1), (4, 0, 1)]);
        assert_eq!(f.num(), &from_terms(&[(1, 0, 0)]));
        assert_eq!(f.den(), &from_terms(&[(2, 0, 1)]));
        // 1 / (1 - x y) has its denominator sign flipped
        let g = rf(&[(1, 0, 0)], &[(1, 0, 0), (-1, 1, 1)]);
        assert_eq!(g.den(), &from_terms(&[(-1, 0, 0), (1, 1, 1)]));
        assert_eq!(g.num(), &from_terms(&[(-1, 0, 0)]));
    }

    #[test]
    fn make_proper_example() {
        // (y^2 + 1) / y = y + 1/y  ->  p = y^2 / 2, fbar = 1/y
        let f = rf(&[(1, 0, 2), (1, 0, 0)], &[(1, 0, 1)]);
        let (p, fbar) = make_proper(&f);
        assert_eq!(p, XRatPoly::new(from_terms(&[(1, 0, 2)]), zpoly(&[2])));
        assert_eq!(fbar, rf(&[(1, 0, 0)], &[(1, 0, 1)]));
        let back = RFunc::from_xrat(&p.dy(), &BPoly::one()).add(&fbar);
        assert_eq!(back, f);
    }

    #[test]
    fn derivatives() {
        // d/dy 1/(x - y) = 1/(x - y)^2
        let f = rf(&[(1, 0, 0)], &[(1, 1, 0), (-1, 0, 1)]);
        let dyf = f.dy();
        assert_eq!(dyf, rf(&[(1, 0, 0)], &[(1, 2, 0), (-2, 1, 1), (1, 0, 2)]));
        assert_eq!(f.dx(), dyf.neg());
    }

    fn small_rfunc() -> impl Strategy<Value = RFunc> {
        let t = proptest::collection::vec((-5i64..5, 0usize..3, 0usize..3), 1..4);
        (t.clone(), t).prop_filter_map("zero den", |(n, d)| {
            let d = from_terms(&d);
            (!d.is_zero()).then(|| RFunc::new(from_terms(&n), d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn field_laws(a in small_rfunc(), b in small_rfunc(), c in small_rfunc()) {
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            if !b.is_zero() {
                prop_assert_eq!(a.mul(&b).div(&b), a.clone());
            }
            // Leibniz rule
            prop_assert_eq!(a.mul(&b).dx(), a.dx().mul(&b).add(&a.mul(&b.dx())));
            prop_assert_eq!(a.dx().dy(), a.dy().dx());
        }

        #[test]
        fn make_proper_roundtrip(a in small_rfunc()) {
            let (p, fbar) = make_proper(&a);
            prop_assert!(fbar.is_proper());
            let back = RFunc::from_xrat(&p.dy(), &BPoly::one()).add(&fbar);
            prop_assert_eq!(back, a);
        }
    }
}
