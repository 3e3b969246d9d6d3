//! Hermite reduction with respect to `y` over `Q(x)`.
//!
//! For `f = P/Q` proper in `y` with `Q` primitive, Hermite reduction writes
//!
//! ```text
//! P/Q = D_y(A/Q^-) + a/Q*
//! ```
//!
//! where `Q*` is the squarefree part and `Q^- = Q/Q*` the deflation of `Q`,
//! `deg_y A < deg_y Q^-`, `deg_y a < deg_y Q*`. Equivalently
//! `P = Q* D_y(A) - S A + Q^- a` with `S = Q* D_y(Q^-)/Q^-`, a square linear
//! system `H(Q)` of size `deg_y Q` over `Q(x)`.
//!
//! Three engines compute the same pair `(A, a)`:
//!
//! * [`Engine::Classic`]: the quadratic squarefree-based reduction run
//!   directly over `Q(x)`.
//! * [`Engine::HorowitzOstrogradsky`]: solves `H(Q)` with fraction-free
//!   elimination over `Z[x]`. [`HoSystem`] caches `H(Q)^-1` for repeated
//!   right-hand sides.
//! * [`Engine::EvalInterp`]: reduces `P(x0, y)/Q(x0, y)` over `Q` at
//!   sufficiently many *lucky* integers `x0` and rebuilds each coefficient
//!   by rational interpolation under a priori degree bounds.

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::interp::rational_interpolate;
use crate::algebra::poly::Poly;
use crate::algebra::rfunc::{make_proper, RFunc};
use crate::algebra::ring::{rat, Field, Int, Rat, Ring};
use crate::algebra::xfrac::{XFrac, XRatPoly};
use crate::algebra::zpoly::{self, ZPoly};
use crate::deadline;
use crate::error::{Error, Result};
use crate::linalg::{self, PMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Classic,
    HorowitzOstrogradsky,
    EvalInterp,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Classic, Engine::HorowitzOstrogradsky, Engine::EvalInterp];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Classic => "classic",
            Engine::HorowitzOstrogradsky => "ho",
            Engine::EvalInterp => "evalinterp",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }
}

/// Result of Hermite reduction: `P/Q = D_y(A/Q^-) + a/Q*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitePair {
    pub qminus: BPoly,
    pub qstar: BPoly,
    pub big_a: XRatPoly,
    pub small_a: XRatPoly,
}

impl HermitePair {
    /// The rational part `g = A / Q^-`.
    pub fn g(&self) -> RFunc {
        RFunc::from_xrat(&self.big_a, &self.qminus)
    }

    /// The remainder `r = a / Q*`.
    pub fn r(&self) -> RFunc {
        RFunc::from_xrat(&self.small_a, &self.qstar)
    }
}

/// Check hypothesis (H): `deg_y P < deg_y Q`, `gcd(P, Q) = 1`, `Q`
/// primitive with respect to `y`.
pub fn check_hypothesis(p: &BPoly, q: &BPoly) -> Result<()> {
    if q.len() < 2 {
        return Err(Error::HypothesisViolation("denominator must depend on y".into()));
    }
    if p.len() >= q.len() {
        return Err(Error::HypothesisViolation("numerator degree in y must be below the denominator's".into()));
    }
    if bpoly::content_x(q).len() > 1 {
        return Err(Error::HypothesisViolation("denominator is not primitive with respect to y".into()));
    }
    let g = bpoly::gcd(p, q);
    if g.len() > 1 || g.coeffs()[0].len() > 1 {
        return Err(Error::HypothesisViolation("numerator and denominator are not coprime".into()));
    }
    Ok(())
}

/// Quadratic Hermite reduction over a field for univariate `a/d` with
/// `deg a < deg d`. Returns `(g_num, d_minus, r_num, d_star)` with
/// `a/d = (g_num/d_minus)' + r_num/d_star`, `d_minus` and `d_star` monic.
pub fn hermite_classic<K: Field>(a: &Poly<K>, d: &Poly<K>) -> (Poly<K>, Poly<K>, Poly<K>, Poly<K>) {
    assert!(a.len() < d.len(), "hermite_classic needs a proper fraction");
    let lc = d.lc();
    let mut num = a.scale(&lc.inv());
    let mut den = d.monic();
    let factors = den.squarefree();
    let mut dminus = Poly::one();
    for (i, f) in factors.iter().enumerate().skip(1) {
        dminus = dminus.mul(&f.pow(i));
    }
    let mut g = Poly::zero();
    for (idx, v) in factors.iter().enumerate().skip(1) {
        let i = idx + 1;
        if v.len() <= 1 {
            continue;
        }
        let u = den.div_exact(&v.pow(i));
        let uv = u.mul(&v.derivative());
        for j in (1..i).rev() {
            let rhs = num.scale(&K::from_i64(-(j as i64)).inv());
            let (b, c) = Poly::diophantine(&uv, v, &rhs);
            g = g.add(&b.mul(&dminus.div_exact(&v.pow(j))));
            num = c.scale(&K::from_i64(-(j as i64))).sub(&u.mul(&b.derivative()));
        }
        den = u.mul(v);
    }
    (g, dminus, num, den)
}

fn to_xfrac_poly(p: &BPoly) -> Poly<XFrac> {
    p.map(|c| XFrac::from_poly(c.clone()))
}

fn from_xfrac_poly(p: &Poly<XFrac>) -> XRatPoly {
    XRatPoly::from_coeffs(p.coeffs())
}

/// Preprocessed denominator: deflation data shared by all engines.
#[derive(Clone, Debug)]
pub struct Denominator {
    pub q: BPoly,
    pub qstar: BPoly,
    pub qminus: BPoly,
    /// `Q* D_y(Q^-) / Q^-`
    pub s: BPoly,
}

impl Denominator {
    pub fn new(q: &BPoly) -> Self {
        let (qstar, qminus) = bpoly::deflation(q);
        Self::from_parts(q.clone(), qstar, qminus)
    }

    pub fn from_parts(q: BPoly, qstar: BPoly, qminus: BPoly) -> Self {
        let s = bpoly::div(&qstar.mul(&bpoly::dy(&qminus)), &qminus);
        Denominator { q, qstar, qminus, s }
    }

    pub fn dy(&self) -> usize {
        bpoly::deg_y(&self.q)
    }

    pub fn dy_star(&self) -> usize {
        bpoly::deg_y(&self.qstar)
    }

    pub fn dy_minus(&self) -> usize {
        bpoly::deg_y(&self.qminus)
    }

    /// Exact check of `P = Q* D_y(A) - S A + Q^- a` (with `P = num/den`).
    pub fn check(&self, num: &BPoly, den: &ZPoly, pair: &HermitePair) -> bool {
        let lhs = XRatPoly::new(num.clone(), den.clone());
        let rhs = pair
            .big_a
            .dy()
            .mul_bpoly(&self.qstar)
            .sub(&pair.big_a.mul_bpoly(&self.s))
            .add(&pair.small_a.mul_bpoly(&self.qminus));
        lhs == rhs
    }
}

/// The linear system `H(Q)` with a cached inverse.
#[derive(Clone, Debug)]
pub struct HoSystem {
    pub den: Denominator,
    inv: Vec<Vec<ZPoly>>,
    det: ZPoly,
}

impl HoSystem {
    pub fn new(den: Denominator) -> Result<Self> {
        let n = den.dy();
        let m = Self::matrix(&den);
        let identity: Vec<Vec<ZPoly>> =
            (0..n).map(|k| (0..n).map(|i| if i == k { ZPoly::one() } else { ZPoly::zero() }).collect()).collect();
        let (inv, det) = linalg::solve(&m, &identity)?;
        Ok(HoSystem { den, inv, det })
    }

    /// Columns: `Q* D_y(y^j) - S y^j` for `j < deg Q^-`, then `Q^- y^j` for
    /// `j < deg Q*`; rows are coefficients of `y^0 .. y^(deg Q - 1)`.
    pub fn matrix(den: &Denominator) -> PMatrix {
        let n = den.dy();
        let mut cols = Vec::with_capacity(n);
        for j in 0..den.dy_minus() {
            let mut c = den.s.shift(j).neg();
            if j > 0 {
                let t = den.qstar.shift(j - 1).scale(&ZPoly::constant(Int::from(j as i64)));
                c = c.add(&t);
            }
            cols.push(column(&c, n));
        }
        for j in 0..den.dy_star() {
            cols.push(column(&den.qminus.shift(j), n));
        }
        PMatrix::from_columns(&cols)
    }

    /// Reduce `num / (den * Q)`.
    pub fn reduce(&self, num: &BPoly, den: &ZPoly) -> Result<HermitePair> {
        let n = self.den.dy();
        if num.len() > n {
            return Err(Error::HypothesisViolation("numerator degree in y must be below the denominator's".into()));
        }
        let rhs = column(num, n);
        let mut sol = vec![ZPoly::zero(); n];
        for (i, s) in sol.iter_mut().enumerate() {
            deadline::check()?;
            for (k, r) in rhs.iter().enumerate() {
                if !r.is_zero() {
                    s.mul_acc(&self.inv[i][k], r);
                }
            }
        }
        let d = self.det.mul(den);
        let dm = self.den.dy_minus();
        let big_a = XRatPoly::new(Poly::new(sol[..dm].to_vec()), d.clone());
        let small_a = XRatPoly::new(Poly::new(sol[dm..].to_vec()), d);
        Ok(HermitePair { qminus: self.den.qminus.clone(), qstar: self.den.qstar.clone(), big_a, small_a })
    }
}

fn column(p: &BPoly, n: usize) -> Vec<ZPoly> {
    (0..n).map(|j| p.coeff(j)).collect()
}

/// Hermite reduction of `P/Q` with the chosen engine.
pub fn hermite_reduce(p: &BPoly, q: &BPoly, engine: Engine) -> Result<HermitePair> {
    check_hypothesis(p, q)?;
    let den = Denominator::new(q);
    reduce_with(&den, p, &ZPoly::one(), engine)
}

/// Hermite reduction of an arbitrary `f`: `f = D_y(g) + r` with `r` proper
/// and squarefree-denominated in `y`. The polynomial part of `f` and the
/// `x`-content of its denominator are split off first.
pub fn reduce_rfunc(f: &RFunc, engine: Engine) -> Result<(RFunc, RFunc)> {
    let (poly, fbar) = make_proper(f);
    let p = RFunc::from_xrat(&poly, &BPoly::one());
    if fbar.is_zero() {
        return Ok((p, RFunc::zero()));
    }
    let content = bpoly::content_x(fbar.den());
    let q = bpoly::div_x(fbar.den(), &content);
    let pair = hermite_reduce(fbar.num(), &q, engine)?;
    let c = XFrac::new(ZPoly::one(), content);
    Ok((p.add(&pair.g().mul_xfrac(&c)), pair.r().mul_xfrac(&c)))
}

/// Hermite reduction of `num / (den * Q)` for a preprocessed `Q`; no
/// coprimality requirement on the numerator.
pub fn reduce_with(d: &Denominator, num: &BPoly, den: &ZPoly, engine: Engine) -> Result<HermitePair> {
    if num.len() > d.dy() {
        return Err(Error::HypothesisViolation("numerator degree in y must be below the denominator's".into()));
    }
    match engine {
        Engine::Classic => classic_over_kx(d, num, den),
        Engine::HorowitzOstrogradsky => HoSystem::new(d.clone())?.reduce(num, den),
        Engine::EvalInterp => eval_interp(d, num, den),
    }
}

fn classic_over_kx(d: &Denominator, num: &BPoly, den: &ZPoly) -> Result<HermitePair> {
    deadline::check()?;
    let a = to_xfrac_poly(num).scale(&XFrac::new(ZPoly::one(), den.clone()));
    let (g, _dminus, r, _dstar) = hermite_classic(&a, &to_xfrac_poly(&d.q));
    // monic(Q^-) = dminus and monic(Q*) = dstar
    let big_a = from_xfrac_poly(&g).scale(&XFrac::from_poly(d.qminus.lc()));
    let small_a = from_xfrac_poly(&r).scale(&XFrac::from_poly(d.qstar.lc()));
    Ok(HermitePair { qminus: d.qminus.clone(), qstar: d.qstar.clone(), big_a, small_a })
}

/// Luck test for evaluation points: `lc_y(Q)(x0) != 0` and
/// `deg gcd(Q(x0, y), Q_y(x0, y)) = deg_y Q^-`.
pub struct LuckTest {
    q: BPoly,
    dy_minus: usize,
}

impl LuckTest {
    pub fn new(q: &BPoly) -> Self {
        let dy_minus = bpoly::deg_y(&bpoly::gcd(q, &bpoly::dy(q)));
        LuckTest { q: q.clone(), dy_minus }
    }

    pub fn with_dy_minus(q: &BPoly, dy_minus: usize) -> Self {
        LuckTest { q: q.clone(), dy_minus }
    }

    pub fn is_lucky(&self, x0: &Int) -> bool {
        if self.q.lc().eval(x0).is_zero() {
            return false;
        }
        let q0 = bpoly::eval_x_int(&self.q, x0);
        let g = zpoly::gcd(&q0, &q0.derivative());
        g.deg0() == self.dy_minus
    }

    /// The `n` smallest non-negative lucky integers.
    pub fn smallest_lucky(&self, n: usize) -> Vec<Int> {
        let mut out = Vec::with_capacity(n);
        let mut x = 0i64;
        while out.len() < n {
            let xi = Int::from(x);
            if self.is_lucky(&xi) {
                out.push(xi);
            }
            x += 1;
        }
        out
    }
}

pub fn is_lucky(q: &BPoly, x0: &Int) -> bool {
    LuckTest::new(q).is_lucky(x0)
}

/// Number of unlucky integers in `[0, hi)`.
pub fn count_unlucky_in_range(q: &BPoly, hi: u64) -> usize {
    let t = LuckTest::new(q);
    (0..hi).filter(|&x| !t.is_lucky(&Int::from(x))).count()
}

/// A priori bounds used by the evaluation–interpolation engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EiBounds {
    /// Number of evaluation points minus one.
    pub lambda: i64,
    /// Denominator degree bound.
    pub mu: i64,
    pub num_a_big: i64,
    pub num_a_small: i64,
}

pub fn ei_bounds(d: &Denominator, deg_x_p: usize) -> EiBounds {
    let dxs = bpoly::deg_x(&d.qstar) as i64;
    let dxm = bpoly::deg_x(&d.qminus) as i64;
    let dys = d.dy_star() as i64;
    let dym = d.dy_minus() as i64;
    let px = deg_x_p as i64;
    let mu = dxs * dym + dxm * dys;
    EiBounds {
        lambda: 2 * (dxs * dym + dys * dxm) + px - dxm.min(dxs),
        mu,
        num_a_big: mu - dxs + px,
        num_a_small: mu - dxm + px,
    }
}

fn eval_interp(d: &Denominator, num: &BPoly, den: &ZPoly) -> Result<HermitePair> {
    let b = ei_bounds(d, bpoly::deg_x(num));
    let luck = LuckTest::with_dy_minus(&d.q, d.dy_minus());
    let points = luck.smallest_lucky((b.lambda + 1).max(1) as usize);
    let dm = d.dy_minus();
    let ds = d.dy_star();
    let mut vals_a: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); dm];
    let mut vals_s: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); ds];
    for x0 in &points {
        deadline::check()?;
        let xr = rat(x0);
        let p0 = bpoly::eval_x(num, &xr);
        let q0 = bpoly::eval_x(&d.q, &xr);
        let (g, _, r, _) = hermite_classic(&p0, &q0);
        let qm0 = bpoly::eval_x(&d.qminus, &xr);
        let qs0 = bpoly::eval_x(&d.qstar, &xr);
        let a0 = g.scale(&qm0.lc());
        let s0 = r.scale(&qs0.lc());
        for (j, v) in vals_a.iter_mut().enumerate() {
            v.push((xr.clone(), a0.coeff(j)));
        }
        for (j, v) in vals_s.iter_mut().enumerate() {
            v.push((xr.clone(), s0.coeff(j)));
        }
    }
    let big: Vec<XFrac> =
        vals_a.iter().map(|v| rational_interpolate(v, b.num_a_big, b.mu)).collect::<Result<_>>()?;
    let small: Vec<XFrac> =
        vals_s.iter().map(|v| rational_interpolate(v, b.num_a_small, b.mu)).collect::<Result<_>>()?;
    let inv_den = XFrac::new(ZPoly::one(), den.clone());
    let pair = HermitePair {
        qminus: d.qminus.clone(),
        qstar: d.qstar.clone(),
        big_a: XRatPoly::from_coeffs(&big).scale(&inv_den),
        small_a: XRatPoly::from_coeffs(&small).scale(&inv_den),
    };
    if !d.check(num, den, &pair) {
        return Err(Error::InterpolationFailure("recovered reduction fails the defining identity".into()));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;
    use crate::algebra::ring::rat_i;
    use crate::algebra::zpoly::UPoly;

    fn q(v: &[i64]) -> UPoly {
        Poly::new(v.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn whole_function_reduction() {
        use crate::parser::parse_rfunc;
        for e in Engine::ALL {
            let (g, r) = reduce_rfunc(&parse_rfunc("1/(y^2*(y-1))").unwrap(), e).unwrap();
            assert_eq!(g, parse_rfunc("1/y").unwrap());
            assert_eq!(r, parse_rfunc("1/(y^2 - y)").unwrap());
            let f = parse_rfunc("y/(y^2-1)").unwrap();
            assert_eq!(reduce_rfunc(&f, e).unwrap(), (RFunc::zero(), f.clone()));
            let f = parse_rfunc("x*y^3/((x+1)*(y-x)^2)").unwrap();
            let (g, r) = reduce_rfunc(&f, e).unwrap();
            assert_eq!(g.dy().add(&r), f);
            assert!(r.is_proper());
        }
    }

    #[test]
    fn classic_univariate_example() {
        // 1/y^2 = D_y(-1/y) + 0
        let (g, dm, r, ds) = hermite_classic(&q(&[1]), &q(&[0, 0, 1]));
        assert_eq!((g, dm), (q(&[-1]), q(&[0, 1])));
        assert!(r.is_zero());
        assert_eq!(ds, q(&[0, 1]));
    }

    #[test]
    fn classic_identity_random() {
        // (t^2 + 3) / ((t - 1)^3 (t + 2)^2 t)
        let d = q(&[-1, 1]).pow(3).mul(&q(&[2, 1]).pow(2)).mul(&q(&[0, 1]));
        let a = q(&[3, 0, 1]);
        let (g, dm, r, ds) = hermite_classic(&a, &d);
        // a/d = (g/dm)' + r/ds = N / (dm^2 ds)
        let n = g.derivative().mul(&dm).sub(&g.mul(&dm.derivative())).mul(&ds).add(&r.mul(&dm).mul(&dm));
        assert_eq!(a.mul(&dm.mul(&dm).mul(&ds)), n.mul(&d));
        assert!(g.len() < dm.len() && r.len() < ds.len());
    }

    #[test]
    fn spec_examples() {
        // P/Q = 1/y^2
        let pair = hermite_reduce(&from_terms(&[(1, 0, 0)]), &from_terms(&[(1, 0, 2)]), Engine::HorowitzOstrogradsky)
            .unwrap();
        assert_eq!(pair.g(), RFunc::new(from_terms(&[(-1, 0, 0)]), from_terms(&[(1, 0, 1)])));
        assert!(pair.r().is_zero());
        // 1/(x - y) is already squarefree: A = 0, a = 1
        for e in Engine::ALL {
            let pair = hermite_reduce(&from_terms(&[(1, 0, 0)]), &from_terms(&[(1, 1, 0), (-1, 0, 1)]), e).unwrap();
            assert!(pair.g().is_zero());
            assert_eq!(pair.r(), RFunc::new(from_terms(&[(1, 0, 0)]), from_terms(&[(1, 1, 0), (-1, 0, 1)])));
        }
    }

    #[test]
    fn hypothesis_violations() {
        let y = from_terms(&[(1, 0, 1)]);
        assert!(matches!(hermite_reduce(&y, &y, Engine::Classic), Err(Error::HypothesisViolation(_))));
        let xy = from_terms(&[(1, 1, 1)]);
        assert!(matches!(hermite_reduce(&BPoly::one(), &xy, Engine::Classic), Err(Error::HypothesisViolation(_))));
        let q = from_terms(&[(1, 0, 2), (1, 1, 0)]);
        assert!(matches!(hermite_reduce(&y.mul(&q), &q.mul(&y), Engine::Classic), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn lucky_points() {
        // Q = (y^2 - x)^2: discriminant vanishes at x = 0
        let q = from_terms(&[(1, 0, 2), (-1, 1, 0)]).pow(2);
        assert!(!is_lucky(&q, &Int::from(0)));
        assert!(is_lucky(&q, &Int::from(1)));
        // Q = x y - 1: leading coefficient vanishes at 0
        let q = from_terms(&[(1, 1, 1), (-1, 0, 0)]);
        assert_eq!(count_unlucky_in_range(&q, 10), 1);
    }

    #[test]
    fn engines_agree_on_repeated_factors() {
        let q1 = from_terms(&[(1, 0, 2), (-1, 1, 0), (2, 0, 0)]);
        let q2 = from_terms(&[(1, 0, 1), (3, 1, 0), (1, 0, 0)]);
        let qq = q1.mul(&q2.pow(2)).mul(&from_terms(&[(1, 0, 1), (-1, 0, 0)]).pow(3));
        let p = from_terms(&[(1, 2, 3), (-2, 0, 1), (5, 1, 0), (1, 0, 6)]);
        let pairs: Vec<HermitePair> = Engine::ALL.iter().map(|&e| hermite_reduce(&p, &qq, e).unwrap()).collect();
        assert_eq!(pairs[0], pairs[1]);
        assert_eq!(pairs[1], pairs[2]);
        let f = RFunc::new(p, qq);
        assert_eq!(pairs[0].g().dy().add(&pairs[0].r()), f);
    }
}
