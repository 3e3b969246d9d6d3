//! Rational function reconstruction from point values.

use std::collections::HashMap;

use super::modp::{self, Crt};
use super::poly::Poly;
use super::ring::{rat, Int, Rat, Ring};
use super::xfrac::XFrac;
use super::zpoly::{self, UPoly};
use crate::error::{Error, Result};

/// Newton interpolation: the unique polynomial of degree `< n` through the
/// `n` points.
pub fn interpolate(points: &[(Rat, Rat)]) -> UPoly {
    let n = points.len();
    let xs: Vec<&Rat> = points.iter().map(|p| &p.0).collect();
    let mut dd: Vec<Rat> = points.iter().map(|p| p.1.clone()).collect();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - k]);
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        // acc = acc * (t - x_i) + dd_i
        let lin = Poly::new(vec![-xs[i].clone(), <Rat as Ring>::one()]);
        acc = acc.mul(&lin).add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

/// Reconstruct `s/t` with `deg s <= num_bound`, `deg t <= den_bound` from
/// values at distinct points. The first `num_bound + den_bound + 1` points
/// determine the candidate and all points must agree with it.
///
/// The bounded extended Euclidean algorithm runs modulo 62-bit primes with
/// `t` made monic; the images are lifted by Chinese remaindering and
/// rational number reconstruction and the lift is checked exactly at every
/// sample. Reconstruction gives up once the modulus exceeds twice the
/// Hadamard bound of the underlying linear system.
pub fn rational_interpolate(points: &[(Rat, Rat)], num_bound: i64, den_bound: i64) -> Result<XFrac> {
    if points.iter().all(|p| p.1.is_zero()) {
        return Ok(XFrac::zero());
    }
    if num_bound < 0 || den_bound < 0 {
        return Err(Error::InterpolationFailure("negative degree bound with nonzero values".into()));
    }
    let need = (num_bound + den_bound + 1) as usize;
    if points.len() < need {
        return Err(Error::InterpolationFailure(format!("need {need} points, got {}", points.len())));
    }
    let used = &points[..need];
    let cap = 2 * hadamard_bits(used, num_bound.max(den_bound) as u64) + 64;
    let mut images: HashMap<(usize, usize), Crt> = HashMap::new();
    let mut failures = 0;
    for p in modp::PrimeStream::new() {
        let Some((s, t)) = bounded_euclid_mod(used, num_bound, den_bound, p) else {
            failures += 1;
            if failures > 4 && images.is_empty() {
                return Err(Error::InterpolationFailure("denominator degree bound exceeded".into()));
            }
            continue;
        };
        let key = (s.len(), t.len());
        let residues: Vec<u64> = s.iter().chain(t.iter()).copied().collect();
        let crt = match images.get_mut(&key) {
            Some(c) => {
                c.absorb(&residues, p);
                c
            }
            None => images.entry(key).or_insert_with(|| Crt::new(&residues, p)),
        };
        if crt.modulus.bits() > cap {
            return Err(Error::InterpolationFailure("reconstruction inconsistent with samples".into()));
        }
        let Some(vals) = crt.values.iter().map(|v| modp::rational_reconstruct(v, &crt.modulus)).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let to_poly = |v: &[(Int, Int)]| UPoly::new(v.iter().map(|(n, d)| Rat::new(n.clone(), d.clone())).collect());
        let (sn, tn) = (to_poly(&vals[..key.0]), to_poly(&vals[key.0..]));
        let consistent = points.iter().all(|(x, v)| {
            let tv = tn.eval(x);
            !tv.is_zero() && sn.eval(x) == v * &tv
        });
        if consistent {
            let (dn, n) = zpoly::clear_denominators(&sn);
            let (dd, d) = zpoly::clear_denominators(&tn);
            return Ok(XFrac::new(n.scale(&dd), d.scale(&dn)));
        }
    }
    unreachable!("prime supply exhausted")
}

fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let d = modp::reduce(r.denom(), p);
    (d != 0).then(|| modp::mul_mod(modp::reduce(r.numer(), p), modp::inv_mod(d, p), p))
}

/// Bits of a Hadamard bound for the minors of the linear system
/// `s(x_i) = v_i t(x_i)` with denominators cleared row by row.
fn hadamard_bits(points: &[(Rat, Rat)], deg: u64) -> u64 {
    let cols = points.len() as u64;
    let log_cols = 64 - cols.leading_zeros() as u64;
    points
        .iter()
        .map(|(x, v)| {
            let xb = x.numer().bits().max(x.denom().bits());
            deg * xb + v.numer().bits() + v.denom().bits() + log_cols + 1
        })
        .sum()
}

/// Image of the bounded reconstruction modulo `p`, with monic `t`.
fn bounded_euclid_mod(points: &[(Rat, Rat)], num_bound: i64, den_bound: i64, p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    use modp::upoly;
    let xs: Vec<u64> = points.iter().map(|(x, _)| rat_mod(x, p)).collect::<Option<_>>()?;
    let vs: Vec<u64> = points.iter().map(|(_, v)| rat_mod(v, p)).collect::<Option<_>>()?;
    let mut sorted = xs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != xs.len() {
        return None;
    }
    let (mut r0, mut r1) = (upoly::vanishing(&xs, p), upoly::interpolate(&xs, &vs, p));
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while r1.len() as i64 - 1 > num_bound {
        let (q, r) = upoly::div_rem(&r0, &r1, p);
        let qt = upoly::mul(&q, &t1, p);
        let mut t = t0.clone();
        if t.len() < qt.len() {
            t.resize(qt.len(), 0);
        }
        for (a, &b) in t.iter_mut().zip(&qt) {
            *a = modp::sub_mod(*a, b, p);
        }
        upoly::trim(&mut t);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_empty() || t1.len() as i64 - 1 > den_bound {
        return None;
    }
    let inv = modp::inv_mod(*t1.last().unwrap(), p);
    for c in r1.iter_mut().chain(t1.iter_mut()) {
        *c = modp::mul_mod(*c, inv, p);
    }
    Some((r1, t1))
}

/// [`rational_interpolate`] by the extended Euclidean algorithm over `Q`.
#[cfg(test)]
fn rational_interpolate_rat(points: &[(Rat, Rat)], num_bound: i64, den_bound: i64) -> Result<XFrac> {
    let need = (num_bound + den_bound + 1) as usize;
    let used = &points[..need];
    let p = interpolate(used);
    let mut m = UPoly::one();
    for (x, _) in used {
        m = m.mul(&Poly::new(vec![-x.clone(), <Rat as Ring>::one()]));
    }
    let (mut r0, mut r1) = (m, p);
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
    while r1.degree().as_i64() > num_bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.degree().as_i64() > den_bound || t1.is_zero() {
        return Err(Error::InterpolationFailure("denominator degree bound exceeded".into()));
    }
    for (x, v) in points {
        let tv = t1.eval(x);
        if tv.is_zero() || r1.eval(x) != v * &tv {
            return Err(Error::InterpolationFailure("reconstruction inconsistent with samples".into()));
        }
    }
    let (dn, n) = zpoly::clear_denominators(&r1);
    let (dd, d) = zpoly::clear_denominators(&t1);
    Ok(XFrac::new(n.scale(&dd), d.scale(&dn)))
}

/// Interpolate at small integer abscissae (convenience for tests).
pub fn points_from_ints(xs: &[i64], f: impl Fn(&Rat) -> Rat) -> Vec<(Rat, Rat)> {
    xs.iter()
        .map(|&x| {
            let x = rat(&Int::from(x));
            let v = f(&x);
            (x, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat_i;
    use crate::algebra::zpoly::zpoly;

    #[test]
    fn recovers_rational_function() {
        // (x^2 + 1) / (x - 3)
        let target = XFrac::new(zpoly(&[1, 0, 1]), zpoly(&[-3, 1]));
        let pts = points_from_ints(&[0, 1, 2, 4, 5, 6], |x| target.eval(x).unwrap());
        let r = rational_interpolate(&pts, 2, 1).unwrap();
        assert_eq!(r, target);
    }

    #[test]
    fn recovers_polynomial() {
        let target = XFrac::from_poly(zpoly(&[5, -2, 7]));
        let pts = points_from_ints(&[0, 1, 2, 3, 4], |x| target.eval(x).unwrap());
        assert_eq!(rational_interpolate(&pts, 2, 2).unwrap(), target);
    }

    #[test]
    fn reports_insufficient_bounds() {
        let target = XFrac::new(zpoly(&[1]), zpoly(&[1, 1, 1]));
        let pts = points_from_ints(&[0, 1, 2, 3, 4, 5], |x| target.eval(x).unwrap());
        assert!(matches!(rational_interpolate(&pts, 0, 1), Err(Error::InterpolationFailure(_))));
    }

    #[test]
    fn newton_interpolation() {
        let pts = vec![(rat_i(0), rat_i(1)), (rat_i(1), rat_i(3)), (rat_i(2), rat_i(7))];
        assert_eq!(interpolate(&pts), Poly::new(vec![rat_i(1), rat_i(1), rat_i(1)]));
    }

    proptest::proptest! {
        #[test]
        fn modular_matches_rational_euclid(
            num in proptest::collection::vec(-20i64..20, 1..4),
            den in proptest::collection::vec(-20i64..20, 1..4),
            extra in 0i64..3,
            start in -5i64..5,
        ) {
            proptest::prop_assume!(!zpoly(&den).is_zero());
            let target = XFrac::new(zpoly(&num), zpoly(&den));
            let (nb, db) = (num.len() as i64 - 1 + extra, den.len() as i64 - 1);
            let xs: Vec<i64> = (start..).step_by(3).filter(|x| target.eval(&rat_i(*x)).is_some()).take((nb + db + 3) as usize).collect();
            let pts = points_from_ints(&xs, |x| target.eval(x).unwrap());
            let a = rational_interpolate(&pts, nb, db);
            proptest::prop_assert_eq!(&a, &rational_interpolate_rat(&pts, nb, db));
            proptest::prop_assert_eq!(a.unwrap(), target);
        }
    }
}
