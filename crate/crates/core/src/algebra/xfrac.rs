//! The rational function field `Q(x)` and polynomials over it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::bpoly::{self, BPoly};
use super::poly::Poly;
use super::ring::{Field, Int, Rat, Ring};
use super::zpoly::{self, ZPoly};

/// An element `num / den` of `Q(x)` in canonical form: `gcd(num, den) = 1`,
/// the integer coefficients of `num` and `den` share no common factor, and
/// `lc(den) > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XFrac {
    num: ZPoly,
    den: ZPoly,
}

impl XFrac {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return XFrac { num, den: ZPoly::one() };
        }
        let g = zpoly::gcd(&num, &den);
        let (mut n, mut d) = if g.len() > 1 {
            (zpoly::div_exact(&num, &g).unwrap(), zpoly::div_exact(&den, &g).unwrap())
        } else {
            (num, den)
        };
        let c = zpoly::icontent(&n).gcd(&zpoly::icontent(&d));
        let c = if d.lc().is_negative() { -c } else { c };
        if !c.is_one() {
            n = zpoly::div_int(&n, &c);
            d = zpoly::div_int(&d, &c);
        }
        XFrac { num: n, den: d }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        XFrac { num: p, den: ZPoly::one() }
    }

    pub fn from_int(n: Int) -> Self {
        Self::from_poly(ZPoly::constant(n))
    }

    pub fn from_rat(r: &Rat) -> Self {
        Self::new(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    pub fn eval(&self, x0: &Rat) -> Option<Rat> {
        let d = zpoly::eval_rat(&self.den, x0);
        if d.is_zero() {
            return None;
        }
        Some(zpoly::eval_rat(&self.num, x0) / d)
    }
}

impl Ring for XFrac {
    fn zero() -> Self {
        XFrac { num: ZPoly::zero(), den: ZPoly::one() }
    }
    fn one() -> Self {
        XFrac { num: ZPoly::one(), den: ZPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        XFrac { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }
}

impl Field for XFrac {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for XFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = crate::parser::print_zpoly(&self.num, "x");
        if self.den.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", crate::parser::print_zpoly(&self.den, "x"))
        }
    }
}

/// A polynomial in `y` over `Q(x)`, stored as `num(x, y) / den(x)` with
/// `gcd(content_x(num), den) = 1` and `lc(den) > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XRatPoly {
    num: BPoly,
    den: ZPoly,
}

impl XRatPoly {
    pub fn new(num: BPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let c = bpoly::content_x(&num);
        let g = zpoly::gcd(&c, &den);
        let g = if den.lc().is_negative() { g.neg() } else { g };
        if g.is_one() {
            return XRatPoly { num, den };
        }
        XRatPoly { num: bpoly::div_x(&num, &g), den: zpoly::div_exact(&den, &g).unwrap() }
    }

    pub fn zero() -> Self {
        XRatPoly { num: BPoly::zero(), den: ZPoly::one() }
    }

    pub fn from_bpoly(p: BPoly) -> Self {
        Self::new(p, ZPoly::one())
    }

    /// Build from coefficients in `Q(x)` (lowest `y`-degree first).
    pub fn from_coeffs(cs: &[XFrac]) -> Self {
        let mut den = ZPoly::one();
        for c in cs {
            den = zpoly::lcm(&den, c.den());
        }
        let num = Poly::new(
            cs.iter()
                .map(|c| c.num().mul(&zpoly::div_exact(&den, c.den()).unwrap()))
                .collect(),
        );
        Self::new(num, den)
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn deg_y(&self) -> usize {
        self.num.deg0()
    }

    /// Coefficient of `y^j` in `Q(x)`.
    pub fn coeff(&self, j: usize) -> XFrac {
        XFrac::new(self.num.coeff(j), self.den.clone())
    }

    pub fn coeff_vec(&self) -> Vec<XFrac> {
        (0..self.num.len()).map(|j| self.coeff(j)).collect()
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
        let g = zpoly::gcd(&self.den, &other.den);
        let a = zpoly::div_exact(&self.den, &g).unwrap();
        let b = zpoly::div_exact(&other.den, &g).unwrap();
        let num = bpoly::mul_x(&self.num, &b).add(&bpoly::mul_x(&other.num, &a));
        Self::new(num, self.den.mul(&b))
    }

    pub fn neg(&self) -> Self {
        XRatPoly { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_bpoly(&self, p: &BPoly) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &XFrac) -> Self {
        Self::new(bpoly::mul_x(&self.num, c.num()), self.den.mul(c.den()))
    }

    pub fn dx(&self) -> Self {
        if self.den.len() == 1 {
            return Self::new(bpoly::dx(&self.num), self.den.clone());
        }
        let n = bpoly::mul_x(&bpoly::dx(&self.num), &self.den)
            .sub(&bpoly::mul_x(&self.num, &self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    pub fn dy(&self) -> Self {
        Self::new(bpoly::dy(&self.num), self.den.clone())
    }

    /// Antiderivative with respect to `y` (zero constant term).
    pub fn integrate_y(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.num.len();
        let mut l = BigInt::one();
        for k in 1..=n {
            l = l.lcm(&BigInt::from(k));
        }
        let mut cs = vec![ZPoly::zero()];
        for (j, c) in self.num.coeffs().iter().enumerate() {
            cs.push(c.scale(&(&l / BigInt::from(j + 1))));
        }
        Self::new(Poly::new(cs), self.den.scale(&l))
    }

    pub fn eval_x(&self, x0: &Rat) -> Option<Poly<Rat>> {
        let d = zpoly::eval_rat(&self.den, x0);
        if d.is_zero() {
            return None;
        }
        let inv = d.recip();
        Some(bpoly::eval_x(&self.num, x0).scale(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::zpoly::zpoly;

    #[test]
    fn xfrac_canonical_form() {
        let a = XFrac::new(zpoly(&[2, 2]), zpoly(&[-4, 0, 4]));
        assert_eq!(a.num(), &zpoly(&[1]));
        assert_eq!(a.den(), &zpoly(&[-2, 2]));
        let b = XFrac::new(zpoly(&[3]), zpoly(&[0, -6]));
        assert_eq!((b.num(), b.den()), (&zpoly(&[-1]), &zpoly(&[0, 2])));
    }

    #[test]
    fn xfrac_field_laws() {
        let a = XFrac::new(zpoly(&[1, 2]), zpoly(&[3, 0, 1]));
        let b = XFrac::new(zpoly(&[0, 5]), zpoly(&[1, 1]));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.mul(&a.inv()), XFrac::one());
        // (1/x)' = -1/x^2
        let r = XFrac::new(zpoly(&[1]), zpoly(&[0, 1]));
        assert_eq!(r.derivative(), XFrac::new(zpoly(&[-1]), zpoly(&[0, 0, 1])));
    }

    #[test]
    fn xratpoly_ops() {
        let p = XRatPoly::new(bpoly::from_terms(&[(2, 1, 1), (4, 0, 0)]), zpoly(&[0, 2]));
        assert_eq!(p.den(), &zpoly(&[0, 1]));
        let i = p.integrate_y();
        assert_eq!(i.dy(), p);
        let q = XRatPoly::from_coeffs(&[XFrac::new(zpoly(&[1]), zpoly(&[1, 1])), XFrac::from_int(3.into())]);
        assert_eq!(q.coeff(1), XFrac::from_int(3.into()));
        assert_eq!(q.coeff(0), XFrac::new(zpoly(&[1]), zpoly(&[1, 1])));
        assert_eq!(q.add(&p).sub(&p), q);
        // d/dx (1/(x+1)) = -1/(x+1)^2
        assert_eq!(q.dx().coeff(0), XFrac::new(zpoly(&[-1]), zpoly(&[1, 2, 1])));
    }
}
