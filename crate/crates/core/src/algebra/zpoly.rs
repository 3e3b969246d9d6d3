//! Univariate integer polynomials `Z[x]`: content, exact division and a
//! modular gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::modp::{self, Crt};
use super::poly::Poly;
use super::ring::{rat, Int, Rat, Ring};

pub type ZPoly = Poly<Int>;
pub type UPoly = Poly<Rat>;

pub fn zpoly(v: &[i64]) -> ZPoly {
    Poly::new(v.iter().map(|&c| BigInt::from(c)).collect())
}

/// Non-negative gcd of the coefficients.
pub fn icontent(p: &ZPoly) -> Int {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            break;
        }
    }
    g
}

/// Divide every coefficient by the integer `d` (must be exact).
pub fn div_int(p: &ZPoly, d: &Int) -> ZPoly {
    if d == &BigInt::from(1) {
        return p.clone();
    }
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                debug_assert!((c % d).is_zero(), "inexact integer division");
                c / d
            })
            .collect(),
    )
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &ZPoly) -> ZPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = icontent(p);
    if p.lc().is_negative() {
        c = -c;
    }
    div_int(p, &c)
}

/// Normalize sign so the leading coefficient is positive.
pub fn positive(p: &ZPoly) -> ZPoly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p.clone()
    }
}

/// Exact quotient `a / b` in `Z[x]`, `None` if not exact.
pub fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.len() == 1 {
        let d = &b.coeffs()[0];
        if a.coeffs().iter().any(|c| !(c % d).is_zero()) {
            return None;
        }
        return Some(Poly::new(a.coeffs().iter().map(|c| c / d).collect()));
    }
    a.div_exact_with(b, |x, y| {
        let (q, r) = x.div_rem(y);
        r.is_zero().then_some(q)
    })
}

pub fn eval_rat(p: &ZPoly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x + rat(c);
    }
    acc
}

pub fn to_upoly(p: &ZPoly) -> UPoly {
    p.map(rat)
}

/// Clear denominators of a rational polynomial: returns `(d, q)` with
/// `p = q / d`, `q` integral, `d > 0` minimal.
pub fn clear_denominators(p: &UPoly) -> (Int, ZPoly) {
    let mut d = BigInt::from(1);
    for c in p.coeffs() {
        d = d.lcm(c.denom());
    }
    let q = Poly::new(p.coeffs().iter().map(|c| (c * rat(&d)).to_integer()).collect());
    (d, q)
}

pub fn reduce_mod(p: &ZPoly, m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = p.coeffs().iter().map(|c| modp::reduce(c, m)).collect();
    modp::upoly::trim(&mut v);
    v
}

/// Greatest common divisor in `Z[x]`, positive leading coefficient.
///
/// Primitive parts are combined with a Brown-style modular algorithm:
/// images modulo 62-bit primes, scaled by `gcd(lc a, lc b)`, are lifted by
/// Chinese remaindering until the candidate stabilizes and divides both
/// inputs.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return positive(b);
    }
    if b.is_zero() {
        return positive(a);
    }
    let ca = icontent(a);
    let cb = icontent(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return Poly::constant(c);
    }
    let pa = div_int(a, &ca);
    let pb = div_int(b, &cb);
    if pa == pb || pa == pb.neg() {
        return primitive(&pa).scale(&c);
    }
    let g = gcd_primitive(&pa, &pb);
    g.scale(&c)
}

fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let gamma = a.lc().gcd(&b.lc());
    let mut best_deg = a.deg0().min(b.deg0());
    let mut crt: Option<Crt> = None;
    let mut last: Option<Vec<Int>> = None;
    let mut stream = modp::PrimeStream::new();
    loop {
        let p = stream.next().expect("prime supply exhausted");
        let gm = modp::reduce(&gamma, p);
        if gm == 0 || modp::reduce(&a.lc(), p) == 0 || modp::reduce(&b.lc(), p) == 0 {
            continue;
        }
        let ga = reduce_mod(a, p);
        let gb = reduce_mod(b, p);
        let g = modp::upoly::gcd(&ga, &gb, p);
        let dg = g.len() - 1;
        if dg == 0 {
            return Poly::one();
        }
        if dg > best_deg {
            continue;
        }
        let img: Vec<u64> = (0..=dg).map(|i| modp::mul_mod(g[i], gm, p)).collect();
        if dg < best_deg || crt.is_none() {
            best_deg = dg;
            crt = Some(Crt::new(&img, p));
            last = None;
        } else {
            crt.as_mut().unwrap().absorb(&img, p);
        }
        let cand = crt.as_ref().unwrap().symmetric();
        if last.as_ref() == Some(&cand) {
            let h = primitive(&Poly::new(cand.clone()));
            if div_exact(a, &h).is_some() && div_exact(b, &h).is_some() {
                return h;
            }
        }
        last = Some(cand);
    }
}

pub fn lcm(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    positive(&div_exact(a, &g).expect("gcd divides").mul(b))
}

/// Maximum number of decimal digits over the coefficients.
pub fn max_digits(p: &ZPoly) -> usize {
    p.coeffs().iter().map(super::ring::decimal_digits).max().unwrap_or(1)
}
