//! Coefficient ring abstractions.
//!
//! Everything above this module is generic over [`Ring`] (and [`Field`] where
//! division is needed), so the same polynomial code serves `Z`, `Q`, `Z[x]`
//! and `Q(x)` coefficients.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::kronecker;
use super::poly::Poly;

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Arbitrary precision rational number.
pub type Rat = BigRational;

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn sub_assign(&mut self, other: &Self) {
        *self = self.sub(other);
    }

    /// `self += a * b`
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        self.add_assign(&p);
    }

    /// Product of coefficient vectors when the ring has something faster
    /// than the schoolbook product.
    fn fast_poly_mul(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }

    /// The same for polynomials with coefficients in `Poly<Self>`.
    fn fast_poly2_mul(_a: &[Poly<Self>], _b: &[Poly<Self>]) -> Option<Vec<Poly<Self>>> {
        None
    }
}

/// A commutative field.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Ring for Int {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
    fn fast_poly_mul(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        if a.len() * b.len() < kronecker::THRESHOLD {
            return None;
        }
        kronecker::mul_rows(&[a], &[b]).pop()
    }
    fn fast_poly2_mul(a: &[Poly<Self>], b: &[Poly<Self>]) -> Option<Vec<Poly<Self>>> {
        let count = |v: &[Poly<Self>]| v.iter().map(|p| p.len()).sum::<usize>();
        if count(a) * count(b) < kronecker::THRESHOLD {
            return None;
        }
        let ar: Vec<&[Int]> = a.iter().map(|p| p.coeffs()).collect();
        let br: Vec<&[Int]> = b.iter().map(|p| p.coeffs()).collect();
        Some(kronecker::mul_rows(&ar, &br).into_iter().map(Poly::new).collect())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Integer as a rational.
pub fn rat(n: &Int) -> Rat {
    BigRational::from_integer(n.clone())
}

/// Small integer as a rational.
pub fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Number of decimal digits of `|n|` (zero has one digit).
pub fn decimal_digits(n: &Int) -> usize {
    let s = n.abs().to_str_radix(10);
    s.len()
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(9, 3), BigInt::from(84));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn digits() {
        assert_eq!(decimal_digits(&BigInt::from(0)), 1);
        assert_eq!(decimal_digits(&BigInt::from(-999)), 3);
        assert_eq!(decimal_digits(&BigInt::from(1000)), 4);
    }

    #[test]
    fn rational_field_ops() {
        let a = rat_i(3);
        let b = rat_i(-4);
        assert_eq!(Field::div(&a, &b), BigRational::new(BigInt::from(-3), BigInt::from(4)));
        assert_eq!(Ring::mul(&a, &Field::inv(&a)), <Rat as Ring>::one());
    }
}
