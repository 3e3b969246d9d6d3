//! Bivariate integer polynomials `Z[x][y]`.
//!
//! A [`BPoly`] is a polynomial in `y` whose coefficients are polynomials in
//! `x`; `coeffs()[j]` is the coefficient of `y^j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::poly::Poly;
use super::ring::{Int, Rat, Ring};
use super::zpoly::{self, UPoly, ZPoly};

pub type BPoly = Poly<ZPoly>;

/// Build from `(coefficient, x-exponent, y-exponent)` triples.
pub fn from_terms(terms: &[(i64, usize, usize)]) -> BPoly {
    let mut acc = BPoly::zero();
    for &(c, i, j) in terms {
        let t = BPoly::monomial(ZPoly::monomial(BigInt::from(c), i), j);
        acc = acc.add(&t);
    }
    acc
}

/// Embed a polynomial in `x`.
pub fn from_x(p: &ZPoly) -> BPoly {
    BPoly::constant(p.clone())
}

/// Embed a polynomial in `y` given by integer coefficients.
pub fn from_y(p: &ZPoly) -> BPoly {
    Poly::new(p.coeffs().iter().map(|c| ZPoly::constant(c.clone())).collect())
}

pub fn constant(c: Int) -> BPoly {
    BPoly::constant(ZPoly::constant(c))
}

pub fn deg_y(p: &BPoly) -> usize {
    p.deg0()
}

pub fn deg_x(p: &BPoly) -> usize {
    p.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0)
}

/// `(deg_x, deg_y)`, with zero mapped to `(0, 0)`.
pub fn bidegree(p: &BPoly) -> (usize, usize) {
    (deg_x(p), deg_y(p))
}

pub fn dx(p: &BPoly) -> BPoly {
    p.map(|c| c.derivative())
}

pub fn dy(p: &BPoly) -> BPoly {
    p.derivative()
}

pub fn scale_int(p: &BPoly, c: &Int) -> BPoly {
    if c.is_zero() {
        return BPoly::zero();
    }
    p.map(|q| q.scale(c))
}

pub fn mul_x(p: &BPoly, c: &ZPoly) -> BPoly {
    if c.is_zero() {
        return BPoly::zero();
    }
    p.map(|q| q.mul(c))
}

/// Multiply by `x^k`.
pub fn shift_x(p: &BPoly, k: usize) -> BPoly {
    p.map(|q| q.shift(k))
}

/// Coefficient of `x^i y^j`.
pub fn coeff(p: &BPoly, i: usize, j: usize) -> Int {
    p.get(j).and_then(|q| q.get(i)).cloned().unwrap_or_else(BigInt::zero)
}

/// Evaluate at `x = x0`.
pub fn eval_x(p: &BPoly, x0: &Rat) -> UPoly {
    p.map(|c| zpoly::eval_rat(c, x0))
}

pub fn eval_x_int(p: &BPoly, x0: &Int) -> ZPoly {
    p.map(|c| c.eval(x0))
}

/// Reduce modulo `p` at `x = x0`: coefficient vector in `y`.
pub fn eval_x_mod(p: &BPoly, x0: u64, m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = p.coeffs().iter().map(|c| super::modp::upoly::eval(&zpoly::reduce_mod(c, m), x0, m)).collect();
    super::modp::upoly::trim(&mut v);
    v
}

/// Non-negative gcd of all integer coefficients.
pub fn icontent(p: &BPoly) -> Int {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        for a in c.coeffs() {
            g = g.gcd(a);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

pub fn div_int(p: &BPoly, d: &Int) -> BPoly {
    if d.is_one() {
        return p.clone();
    }
    p.map(|c| zpoly::div_int(c, d))
}

/// Leading coefficient in `y`, then in `x`.
pub fn leading_int(p: &BPoly) -> Int {
    p.lc_ref().map(|c| c.lc()).unwrap_or_else(BigInt::zero)
}

/// Sign normalization: the leading integer coefficient becomes positive.
pub fn positive(p: &BPoly) -> BPoly {
    if leading_int(p).is_negative() {
        p.neg()
    } else {
        p.clone()
    }
}

/// Divide by the integer content and normalize the sign.
pub fn primitive_int(p: &BPoly) -> BPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = icontent(p);
    if leading_int(p).is_negative() {
        c = -c;
    }
    div_int(p, &c)
}

/// Content with respect to `y`: gcd in `Z[x]` of the `y`-coefficients.
pub fn content_x(p: &BPoly) -> ZPoly {
    let mut g = ZPoly::zero();
    for c in p.coeffs() {
        g = zpoly::gcd(&g, c);
        if g.len() == 1 && g.coeffs()[0].is_one() {
            break;
        }
    }
    g
}

/// Divide every `y`-coefficient by `d(x)` (must be exact).
pub fn div_x(p: &BPoly, d: &ZPoly) -> BPoly {
    if d.len() == 1 && d.coeffs()[0].is_one() {
        return p.clone();
    }
    p.map(|c| zpoly::div_exact(c, d).expect("inexact division by x-polynomial"))
}

/// Primitive part with respect to `y` (content over `Z[x]` removed, sign
/// normalized).
pub fn primitive_y(p: &BPoly) -> BPoly {
    if p.is_zero() {
        return p.clone();
    }
    positive(&div_x(p, &content_x(p)))
}

/// Exchange the roles of `x` and `y`.
pub fn swap(p: &BPoly) -> BPoly {
    let dx = deg_x(p);
    let mut out: Vec<Vec<Int>> = vec![vec![BigInt::zero(); p.len()]; if p.is_zero() { 0 } else { dx + 1 }];
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            out[i][j] = a.clone();
        }
    }
    Poly::new(out.into_iter().map(Poly::new).collect())
}

/// `Q = t(y) T(x, y)` where `t` is the content with respect to `x`
/// (integer content included, positive leading coefficient).
pub fn content_primitive_x(q: &BPoly) -> (ZPoly, BPoly) {
    let s = swap(q);
    let t = content_x(&s);
    let t = if t.lc().is_negative() { t.neg() } else { t };
    let big_t = swap(&div_x(&s, &t));
    (t, big_t)
}

/// Exact division in `Z[x][y]`; `None` if `b` does not divide `a`.
pub fn div_exact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    if b.len() == 1 {
        let d = &b.coeffs()[0];
        let mut out = Vec::with_capacity(a.len());
        for c in a.coeffs() {
            out.push(zpoly::div_exact(c, d)?);
        }
        return Some(Poly::new(out));
    }
    a.div_exact_with(b, zpoly::div_exact)
}

/// Exact division, panicking if inexact.
pub fn div(a: &BPoly, b: &BPoly) -> BPoly {
    div_exact(a, b).expect("inexact bivariate division")
}

/// Greatest common divisor in `Z[x, y]`, normalized by [`positive`].
///
/// `x`-contents are handled with the univariate gcd; the primitive parts go
/// through a modular algorithm.
pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_zero() {
        return positive(b);
    }
    if b.is_zero() {
        return positive(a);
    }
    let ca = content_x(a);
    let cb = content_x(b);
    let c = zpoly::gcd(&ca, &cb);
    if a.len() == 1 || b.len() == 1 {
        return from_x(&c);
    }
    let mut p = positive(&div_x(a, &ca));
    let mut q = positive(&div_x(b, &cb));
    if p == q {
        return mul_x(&p, &c);
    }
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    if coprime_image(&p, &q) {
        return from_x(&c);
    }
    positive(&mul_x(&gcd_modular(&p, &q), &c))
}

/// Gcd of primitive polynomials of positive `y`-degree by the primitive
/// remainder sequence.
pub fn gcd_prs(a: &BPoly, b: &BPoly) -> BPoly {
    let (mut p, mut q) = (a.clone(), b.clone());
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            return BPoly::one();
        }
        if div_exact(&p, &q).is_some() {
            return positive(&q);
        }
        let r = p.pseudo_rem(&q);
        if r.is_zero() {
            return positive(&q);
        }
        p = q;
        q = primitive_y(&r);
    }
}

/// Gcd of primitive polynomials of positive `y`-degree, modularly.
///
/// With `gamma = gcd(lc_y a, lc_y b)`, the polynomial `H = gamma / lc_y(G) * G`
/// has integer coefficients and its image at a point `x0` modulo `p` is
/// `gamma(x0)` times the monic gcd of the images whenever the leading
/// coefficients do not vanish and the image degree is minimal. Images are
/// interpolated in `x` and combined by Chinese remaindering until they
/// stabilize; the primitive part is then confirmed by exact division.
fn gcd_modular(a: &BPoly, b: &BPoly) -> BPoly {
    use super::modp::{self, upoly, Crt};
    let gamma = zpoly::gcd(&a.lc(), &b.lc());
    let npts = gamma.len() + deg_x(a).min(deg_x(b));
    let mut best: Option<(usize, Crt)> = None;
    let mut prev: Option<Vec<Int>> = None;
    for prime in modp::PrimeStream::new() {
        let red = |p: &BPoly| -> Vec<Vec<u64>> { p.coeffs().iter().map(|c| zpoly::reduce_mod(c, prime)).collect() };
        let (ra, rb) = (red(a), red(b));
        let gm = zpoly::reduce_mod(&gamma, prime);
        if ra.last().unwrap().is_empty() || rb.last().unwrap().is_empty() || gm.is_empty() {
            continue;
        }
        // images at points: (x0, gamma(x0) * monic gcd)
        let mut xs: Vec<u64> = Vec::new();
        let mut imgs: Vec<Vec<u64>> = Vec::new();
        let mut dmin = usize::MAX;
        // points far from the small integers, different for every prime
        let mut x0 = prime >> 3;
        while xs.len() < npts {
            x0 += 1;
            let ea: Vec<u64> = ra.iter().map(|c| upoly::eval(c, x0, prime)).collect();
            let eb: Vec<u64> = rb.iter().map(|c| upoly::eval(c, x0, prime)).collect();
            let g0 = upoly::eval(&gm, x0, prime);
            if *ea.last().unwrap() == 0 || *eb.last().unwrap() == 0 || g0 == 0 {
                continue;
            }
            let g = upoly::gcd(&ea, &eb, prime);
            if g.len() == 1 {
                return BPoly::one();
            }
            let d = g.len() - 1;
            if d > dmin {
                continue;
            }
            if d < dmin {
                dmin = d;
                xs.clear();
                imgs.clear();
            }
            xs.push(x0);
            imgs.push(g.iter().map(|&c| modp::mul_mod(c, g0, prime)).collect());
        }
        let interp = upoly::Interpolator::new(&xs, prime);
        let mut residues = Vec::with_capacity((dmin + 1) * npts);
        for j in 0..=dmin {
            let vals: Vec<u64> = imgs.iter().map(|g| g[j]).collect();
            let mut c = interp.interpolate(&vals);
            c.resize(npts, 0);
            residues.extend(c);
        }
        match &mut best {
            Some((d, crt)) if *d == dmin => crt.absorb(&residues, prime),
            Some((d, _)) if *d < dmin => continue,
            _ => {
                best = Some((dmin, Crt::new(&residues, prime)));
                prev = None;
                continue;
            }
        }
        let (d, crt) = best.as_ref().unwrap();
        let cur = crt.symmetric();
        if prev.as_ref() == Some(&cur) {
            let h = Poly::new(cur.chunks(npts).map(|c| Poly::new(c.to_vec())).collect());
            let g = primitive_y(&h);
            if deg_y(&g) == *d && div_exact(a, &g).is_some() && div_exact(b, &g).is_some() {
                return g;
            }
        }
        prev = Some(cur);
    }
    unreachable!("prime supply exhausted")
}

/// `true` when an image of `a`, `b` modulo a large prime at a fixed point
/// (with both leading coefficients nonvanishing) has a constant gcd, which
/// certifies that the primitive parts are coprime.
fn coprime_image(a: &BPoly, b: &BPoly) -> bool {
    let m = super::modp::primes(1)[0];
    for x0 in [0x2f6b_a3c1u64, 0x1d3c_88f7] {
        let ia = eval_x_mod(a, x0, m);
        let ib = eval_x_mod(b, x0, m);
        if ia.len() != a.len() || ib.len() != b.len() {
            continue;
        }
        return super::modp::upoly::gcd(&ia, &ib, m).len() == 1;
    }
    false
}

/// Squarefree decomposition with respect to `y`:
/// `Q = q(x) * prod_i Q_i^i` with each `Q_i` primitive, squarefree and
/// pairwise coprime. Returns `(q, [Q_1, ..., Q_m])`.
pub fn squarefree_decomp_y(q: &BPoly) -> (ZPoly, Vec<BPoly>) {
    assert!(!q.is_zero(), "squarefree decomposition of zero");
    if q.len() == 1 {
        return (q.coeffs()[0].clone(), Vec::new());
    }
    let qp = primitive_y(q);
    let dq = dy(&qp);
    let a0 = gcd(&qp, &dq);
    let mut b = div(&qp, &a0);
    let c = div(&dq, &a0);
    let mut d = c.sub(&dy(&b));
    let mut factors = Vec::new();
    loop {
        let ai = gcd(&b, &d);
        let nb = div(&b, &ai);
        let nc = div(&d, &ai);
        factors.push(ai);
        if nb.len() <= 1 {
            break;
        }
        d = nc.sub(&dy(&nb));
        b = nb;
    }
    while factors.last().is_some_and(|p| p.len() <= 1) {
        factors.pop();
    }
    let mut prod = BPoly::one();
    for (i, f) in factors.iter().enumerate() {
        prod = prod.mul(&f.pow(i + 1));
    }
    let unit = div(q, &prod);
    assert_eq!(unit.len(), 1, "squarefree decomposition lost a y-factor");
    (unit.coeffs()[0].clone(), factors)
}

/// Squarefree part `Q*` and deflation `Q^- = Q / Q*` with respect to `y`
/// of a polynomial primitive with respect to `y`.
pub fn deflation(q: &BPoly) -> (BPoly, BPoly) {
    let qminus = gcd(q, &dy(q));
    let qstar = div(q, &qminus);
    (qstar, qminus)
}

/// The two polynomials `Q* D_y(Q^-) / Q^-` and `D_y(Q) / Q^-`.
pub fn deflation_quotients(q: &BPoly) -> (BPoly, BPoly) {
    let (qstar, qminus) = deflation(q);
    let s = div(&qstar.mul(&dy(&qminus)), &qminus);
    let t = div(&dy(q), &qminus);
    (s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::zpoly::zpoly;
    use proptest::prelude::*;

    fn y() -> BPoly {
        from_terms(&[(1, 0, 1)])
    }

    #[test]
    fn squarefree_examples() {
        let q = y().mul(&y()).scale(&ZPoly::constant(BigInt::from(4)));
        let (c, fs) = squarefree_decomp_y(&q);
        assert_eq!(c, zpoly(&[4]));
        assert_eq!(fs, vec![BPoly::one(), y()]);

        let q = y().mul(&y()).mul(&from_terms(&[(1, 0, 1), (-1, 0, 0)]));
        let (c, fs) = squarefree_decomp_y(&q);
        assert_eq!(c, zpoly(&[1]));
        assert_eq!(fs, vec![from_terms(&[(1, 0, 1), (-1, 0, 0)]), y()]);
    }

    #[test]
    fn deflation_example() {
        let q = y().mul(&y());
        let (s, t) = deflation_quotients(&q);
        assert_eq!(s, BPoly::one());
        assert_eq!(t, constant(BigInt::from(2)));
    }

    #[test]
    fn content_split_example() {
        // y^2 + x y^2 = y^2 (1 + x)
        let q = from_terms(&[(1, 0, 2), (1, 1, 2)]);
        let (t, big_t) = content_primitive_x(&q);
        assert_eq!(t, zpoly(&[0, 0, 1]));
        assert_eq!(big_t, from_terms(&[(1, 0, 0), (1, 1, 0)]));
    }

    #[test]
    fn gcd_examples() {
        let a = from_terms(&[(1, 1, 0), (1, 0, 1)]); // x + y
        let b = from_terms(&[(1, 1, 0), (-1, 0, 1)]); // x - y
        let g = gcd(&a.mul(&b), &a.mul(&a));
        assert_eq!(g, a);
        let g = gcd(&from_terms(&[(2, 1, 1)]), &from_terms(&[(4, 2, 0)]));
        assert_eq!(g, from_terms(&[(2, 1, 0)]));
        assert_eq!(gcd(&a, &b), BPoly::one());
    }

    fn small_bpoly() -> impl Strategy<Value = BPoly> {
        proptest::collection::vec((-6i64..6, 0usize..3, 0usize..3), 0..5).prop_map(|t| from_terms(&t))
    }

    #[test]
    fn modular_gcd_with_large_coefficients() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut rand_poly = |dx: usize, dy: usize| -> BPoly {
            let big = Int::from(10).pow(25);
            Poly::new(
                (0..=dy)
                    .map(|_| Poly::new((0..=dx).map(|_| Int::from(rng.gen_range(-1_000_000i64..1_000_000)) * &big + 1).collect()))
                    .collect(),
            )
        };
        let (a, b, c) = (rand_poly(3, 2), rand_poly(2, 3), rand_poly(4, 2));
        let (p, q) = (primitive_y(&a.mul(&c).mul(&c)), primitive_y(&b.mul(&c)));
        let g = gcd_modular(&p, &q);
        assert_eq!(g, gcd_prs(&p, &q));
        assert_eq!(g, positive(&primitive_y(&c)));
        assert_eq!(gcd(&p.mul(&from_x(&zpoly::zpoly(&[2, 1]))), &q), g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn modular_gcd_matches_prs(a in small_bpoly(), b in small_bpoly(), c in small_bpoly()) {
            let (p, q) = (primitive_y(&a.mul(&c)), primitive_y(&b.mul(&c)));
            prop_assume!(deg_y(&p) > 0 && deg_y(&q) > 0);
            let g = gcd_modular(&p, &q);
            prop_assert_eq!(&g, &gcd_prs(&p, &q));
            prop_assert!(div_exact(&p, &g).is_some() && div_exact(&q, &g).is_some());
        }

        #[test]
        fn squarefree_reconstructs(a in small_bpoly(), b in small_bpoly()) {
            let q = a.mul(&b).mul(&b).mul(&y());
            prop_assume!(!q.is_zero());
            let (c, fs) = squarefree_decomp_y(&q);
            let mut prod = from_x(&c);
            for (i, f) in fs.iter().enumerate() {
                prod = prod.mul(&f.pow(i + 1));
                prop_assert_eq!(content_x(f).len(), 1);
                prop_assert_eq!(gcd(f, &dy(f)).len(), 1);
            }
            prop_assert_eq!(prod, q);
        }

        #[test]
        fn gcd_divides(a in small_bpoly(), b in small_bpoly(), c in small_bpoly()) {
            let x = a.mul(&c);
            let z = b.mul(&c);
            prop_assume!(!x.is_zero() || !z.is_zero());
            let g = gcd(&x, &z);
            prop_assert!(div_exact(&x, &g).is_some());
            prop_assert!(div_exact(&z, &g).is_some());
            if !c.is_zero() {
                prop_assert!(div_exact(&g, &c).is_some());
            }
        }

        #[test]
        fn swap_is_involution(a in small_bpoly()) {
            prop_assert_eq!(swap(&swap(&a)), a.clone());
            prop_assert_eq!(bidegree(&swap(&a)), (deg_y(&a), deg_x(&a)));
        }
    }

    #[test]
    fn deflation_identities() {
        // Q = (y - x) (y + 1)^2 (y^2 - x)^3
        let q1 = from_terms(&[(1, 0, 1), (-1, 1, 0)]);
        let q2 = from_terms(&[(1, 0, 1), (1, 0, 0)]);
        let q3 = from_terms(&[(1, 0, 2), (-1, 1, 0)]);
        let q = q1.mul(&q2.pow(2)).mul(&q3.pow(3));
        let (s, t) = deflation_quotients(&q);
        let fs = [q1.clone(), q2.clone(), q3.clone()];
        let qstar = q1.mul(&q2).mul(&q3);
        let mut es = BPoly::zero();
        let mut et = BPoly::zero();
        for (i, f) in fs.iter().enumerate() {
            let hat = div(&qstar, f);
            let term = hat.mul(&dy(f));
            es = es.add(&term.scale(&ZPoly::constant(BigInt::from(i as i64))));
            et = et.add(&term.scale(&ZPoly::constant(BigInt::from(i as i64 + 1))));
        }
        assert_eq!(s, es);
        assert_eq!(t, et);
    }
}
#[cfg(test)]
mod unlucky_points {
    use super::*;

    #[test]
    fn unlucky_small_point() {
        // a = (y+1)(y+x-1), b = (y+1)y: at x = 1 the images share y too.
        let a = from_terms(&[(1, 0, 2), (1, 1, 1), (-1, 0, 0), (1, 1, 0)]);
        let b = from_terms(&[(1, 0, 2), (1, 0, 1)]);
        assert_eq!(gcd(&a, &b), from_terms(&[(1, 0, 1), (1, 0, 0)]));
    }
}
