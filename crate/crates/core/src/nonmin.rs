//! Non-minimal telescopers from annihilators found by linear algebra.
//!
//! An operator `A = sum c_{ijl} x^i D_x^j D_y^l` with rational constants
//! `c` annihilates `f = P/Q` iff
//!
//! ```text
//! sum c_{ijl} x^i H_{jl} Q^(nu - j - l) = 0,   D_x^j D_y^l f = H_{jl} / Q^(j+l+1),
//! ```
//!
//! a linear system over `Q` in the unknowns `c`. Two supports are used:
//! `i + j + l <= nu` (Lipshitz) and `i <= kappa, j + l <= nu` (cubic).
//! Writing `A = sum_l A_l(x, D_x) D_y^l` with `r` the smallest `l` present,
//! `A_r` is a telescoper of `f`.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_integer::Integer;

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::DiffOp;
use crate::algebra::modp;
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::{binomial, rat, Int, Rat, Ring};
use crate::algebra::xfrac::XRatPoly;
use crate::algebra::zpoly::ZPoly;
use crate::deadline;
use crate::error::{Error, Result};
use crate::linalg;

/// `sum c x^i D_x^j D_y^l`, keyed by `(i, j, l)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarOp {
    pub terms: BTreeMap<(usize, usize, usize), Rat>,
}

impl BivarOp {
    pub fn new(terms: impl IntoIterator<Item = ((usize, usize, usize), Rat)>) -> Self {
        BivarOp { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply(&self, f: &RFunc) -> RFunc {
        let mut t = DerivTable::new(f);
        t.apply(&self.terms)
    }
}

/// Numerators `H_{jl}` of `D_x^j D_y^l f` over `Q^(j+l+1)`, with powers of
/// `Q` cached.
struct DerivTable {
    q: BPoly,
    qx: BPoly,
    qy: BPoly,
    h: HashMap<(usize, usize), BPoly>,
    qpow: Vec<BPoly>,
}

impl DerivTable {
    fn new(f: &RFunc) -> Self {
        let q = f.den().clone();
        let mut h = HashMap::new();
        h.insert((0, 0), f.num().clone());
        DerivTable { qx: bpoly::dx(&q), qy: bpoly::dy(&q), qpow: vec![BPoly::one()], q, h }
    }

    fn numerator(&mut self, j: usize, l: usize) -> BPoly {
        if let Some(v) = self.h.get(&(j, l)) {
            return v.clone();
        }
        let v = if j == 0 {
            let g = self.numerator(0, l - 1);
            bpoly::dy(&g).mul(&self.q).sub(&bpoly::scale_int(&g.mul(&self.qy), &Int::from(l as i64)))
        } else {
            let g = self.numerator(j - 1, l);
            bpoly::dx(&g).mul(&self.q).sub(&bpoly::scale_int(&g.mul(&self.qx), &Int::from((j + l) as i64)))
        };
        self.h.insert((j, l), v.clone());
        v
    }

    fn qpow(&mut self, k: usize) -> BPoly {
        while self.qpow.len() <= k {
            let next = self.qpow.last().unwrap().mul(&self.q);
            self.qpow.push(next);
        }
        self.qpow[k].clone()
    }

    /// `x^i H_{jl} Q^(nu - j - l)`.
    fn column(&mut self, (i, j, l): (usize, usize, usize), nu: usize) -> BPoly {
        bpoly::shift_x(&self.numerator(j, l).mul(&self.qpow(nu - j - l)), i)
    }

    /// `sum c x^i D_x^j D_y^l f` as `(num, s, k)` meaning `num / (s Q^k)`.
    fn apply_parts(&mut self, terms: &BTreeMap<(usize, usize, usize), Rat>) -> (BPoly, Int, usize) {
        let Some(m) = terms.keys().map(|&(_, j, l)| j + l).max() else { return (BPoly::zero(), Int::from(1), 0) };
        let mut den = Int::from(1);
        for c in terms.values() {
            den = den.lcm(c.denom());
        }
        let mut acc = BPoly::zero();
        for (&k, c) in terms {
            let s = (c * rat(&den)).to_integer();
            acc = acc.add(&bpoly::scale_int(&self.column(k, m), &s));
        }
        (acc, den, m + 1)
    }

    fn apply(&mut self, terms: &BTreeMap<(usize, usize, usize), Rat>) -> RFunc {
        let (n, s, k) = self.apply_parts(terms);
        self.reduce_power(n, s, k)
    }

    /// `num / (s Q^k)` in lowest terms, cancelling common factors with `Q`
    /// one gcd at a time.
    fn reduce_power(&mut self, mut num: BPoly, s: Int, k: usize) -> RFunc {
        if num.is_zero() {
            return RFunc::zero();
        }
        let mut den = self.qpow(k);
        for _ in 0..k {
            let g = bpoly::gcd(&num, &self.q);
            if g.len() == 1 {
                break;
            }
            num = bpoly::div(&num, &g);
            den = bpoly::div(&den, &g);
        }
        RFunc::new(num, bpoly::scale_int(&den, &s))
    }
}

/// Numerator `H_{jl}` of `D_x^j D_y^l f = H_{jl} / Q^(j+l+1)`.
pub fn monomial_action_numerator(f: &RFunc, j: usize, l: usize) -> BPoly {
    DerivTable::new(f).numerator(j, l)
}

/// Number of unknowns and an upper bound on the number of equations of the
/// Lipshitz ansatz.
pub fn lipshitz_counts(nu: usize, dx: usize, dy: usize) -> (u64, u64) {
    let n = nu as u64;
    let f = binomial(n + 3, 3).try_into().unwrap_or(u64::MAX);
    let g = ((n + 1) * dx as u64 + n + 1) * ((n + 1) * dy as u64 + 1);
    (f, g)
}

/// The same for the cubic ansatz.
pub fn cubic_counts(kappa: usize, nu: usize, dx: usize, dy: usize) -> (u64, u64) {
    let (k, n) = (kappa as u64, nu as u64);
    let f = (k + 1) * u64::try_from(binomial(n + 2, 2)).unwrap_or(u64::MAX);
    let g = ((n + 1) * dx as u64 + k + 1) * ((n + 1) * dy as u64 + 1);
    (f, g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ansatz {
    Lipshitz { nu: usize },
    Cubic { kappa: usize, nu: usize },
}

impl Ansatz {
    fn support(self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        match self {
            Ansatz::Lipshitz { nu } => {
                for i in 0..=nu {
                    for j in 0..=nu - i {
                        for l in 0..=nu - i - j {
                            out.push((i, j, l));
                        }
                    }
                }
            }
            Ansatz::Cubic { kappa, nu } => {
                for i in 0..=kappa {
                    for j in 0..=nu {
                        for l in 0..=nu - j {
                            out.push((i, j, l));
                        }
                    }
                }
            }
        }
        out
    }

    fn nu(self) -> usize {
        match self {
            Ansatz::Lipshitz { nu } | Ansatz::Cubic { nu, .. } => nu,
        }
    }
}

/// The linear system of an ansatz, columns as bivariate polynomials.
struct System {
    support: Vec<(usize, usize, usize)>,
    cols: Vec<BPoly>,
    xlen: usize,
    ylen: usize,
}

impl System {
    fn build(t: &mut DerivTable, a: Ansatz) -> Result<Self> {
        let support = a.support();
        let mut cols = Vec::with_capacity(support.len());
        for &k in &support {
            deadline::check()?;
            cols.push(t.column(k, a.nu()));
        }
        let ylen = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let xlen = cols.iter().flat_map(|c| c.coeffs().iter().map(|z| z.len())).max().unwrap_or(0);
        Ok(System { support, cols, xlen, ylen })
    }

    fn rows_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; self.cols.len()]; self.xlen * self.ylen];
        for (k, c) in self.cols.iter().enumerate() {
            for (b, z) in c.coeffs().iter().enumerate() {
                for (a, v) in z.coeffs().iter().enumerate() {
                    m[b * self.xlen + a][k] = modp::reduce(v, p);
                }
            }
        }
        m.retain(|r| r.iter().any(|&v| v != 0));
        m
    }

    fn rows_exact(&self) -> Vec<Vec<Int>> {
        let mut m = vec![vec![Int::from(0); self.cols.len()]; self.xlen * self.ylen];
        for (k, c) in self.cols.iter().enumerate() {
            for (b, z) in c.coeffs().iter().enumerate() {
                for (a, v) in z.coeffs().iter().enumerate() {
                    m[b * self.xlen + a][k] = v.clone();
                }
            }
        }
        m.retain(|r| r.iter().any(|v| !v.is_zero()));
        m
    }

    /// Probable kernel existence from the rank modulo a large prime.
    fn probably_singular(&self) -> bool {
        let p = modp::primes(1)[0];
        let mut m = self.rows_mod(p);
        modp::rank_mod(&mut m, p) < self.cols.len()
    }

    fn kernel(&self) -> Result<Option<BivarOp>> {
        let ns = linalg::nullspace_rational(&self.rows_exact(), self.cols.len())?;
        Ok(ns.into_iter().next().map(|v| {
            BivarOp::new(self.support.iter().zip(v).map(|(&k, c)| (k, rat(&c))))
        }))
    }
}

/// Output of a non-minimal search.
#[derive(Clone, Debug)]
pub struct NonminOutput {
    pub op: DiffOp,
    pub certificate: RFunc,
    pub annihilator: BivarOp,
    pub ansatz: Ansatz,
    pub unknowns: usize,
    pub elapsed_ms: f64,
}

fn finish(t: &mut DerivTable, sys: &System, a: Ansatz, start: Instant) -> Result<Option<NonminOutput>> {
    let Some(ann) = sys.kernel()? else { return Ok(None) };
    let (op, certificate) = extract_with(t, &ann)?;
    Ok(Some(NonminOutput {
        op,
        certificate,
        annihilator: ann,
        ansatz: a,
        unknowns: sys.cols.len(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }))
}

/// Lipshitz search: the smallest `nu` in `1..=6(d_x+1)(d_y+1)` whose
/// ansatz has a nonzero solution.
pub fn lipshitz_telescoper(f: &RFunc) -> Result<NonminOutput> {
    let start = Instant::now();
    let (dx, dy) = f.bidegree();
    let mut t = DerivTable::new(f);
    let max_nu = 6 * (dx + 1) * (dy + 1);
    for nu in 1..=max_nu {
        let a = Ansatz::Lipshitz { nu };
        let sys = System::build(&mut t, a)?;
        if !sys.probably_singular() {
            continue;
        }
        if let Some(out) = finish(&mut t, &sys, a, start)? {
            return Ok(out);
        }
    }
    Err(Error::NotFound)
}

/// Cubic search: `nu` in `1..=6 d_y` outermost; for each `nu` the smallest
/// `kappa` in `0..=3 d_x d_y` with a nonzero solution (solvability is
/// monotone in `kappa`, so it is located by bisection).
pub fn cubic_telescoper(f: &RFunc) -> Result<NonminOutput> {
    let start = Instant::now();
    let (dx, dy) = f.bidegree();
    let mut t = DerivTable::new(f);
    let kmax = 3 * dx * dy;
    for nu in 1..=(6 * dy).max(1) {
        let top = System::build(&mut t, Ansatz::Cubic { kappa: kmax, nu })?;
        if !top.probably_singular() {
            continue;
        }
        let (mut lo, mut hi) = (0, kmax);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let sys = System::build(&mut t, Ansatz::Cubic { kappa: mid, nu })?;
            if sys.probably_singular() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        for kappa in lo..=kmax {
            let a = Ansatz::Cubic { kappa, nu };
            let sys = System::build(&mut t, a)?;
            if let Some(out) = finish(&mut t, &sys, a, start)? {
                return Ok(out);
            }
        }
    }
    Err(Error::NotFound)
}

/// Extract a telescoper and certificate from an annihilator of `f`.
///
/// With `A = D_y^r (A_r + D_y R)`, `h = A_r(f) + D_y(R(f))` is a polynomial
/// in `y` of degree below `r`, and `A_r(f) = D_y(-R(f) + int h dy)`.
pub fn extract_telescoper(a: &BivarOp, f: &RFunc) -> Result<(DiffOp, RFunc)> {
    let mut t = DerivTable::new(f);
    extract_with(&mut t, a)
}

fn extract_with(t: &mut DerivTable, a: &BivarOp) -> Result<(DiffOp, RFunc)> {
    if a.is_zero() {
        return Err(Error::VerificationFailure("zero operator".into()));
    }
    if !t.apply_parts(&a.terms).0.is_zero() {
        return Err(Error::VerificationFailure("operator does not annihilate the input".into()));
    }
    let r = a.terms.keys().map(|&(_, _, l)| l).min().unwrap();
    let ar: BTreeMap<_, _> = a.terms.iter().filter(|(k, _)| k.2 == r).map(|(&(i, j, _), c)| ((i, j, 0), c.clone())).collect();
    let rest: BTreeMap<_, _> =
        a.terms.iter().filter(|(k, _)| k.2 > r).map(|(&(i, j, l), c)| ((i, j, l - r - 1), c.clone())).collect();
    // h = A_r(f) + D_y(R(f)) over s Q^M
    let (na, sa, ka) = t.apply_parts(&ar);
    let (nr, sr, kr) = t.apply_parts(&rest);
    let m = ka.max(kr + 1);
    let mut nh = bpoly::scale_int(&na.mul(&t.qpow(m - ka)), &sr);
    if !nr.is_zero() {
        let k = Int::from(kr as i64);
        let dyr = bpoly::dy(&nr).mul(&t.q).sub(&bpoly::scale_int(&nr.mul(&t.qy), &k));
        nh = nh.add(&bpoly::scale_int(&dyr.mul(&t.qpow(m - kr - 1)), &sa));
    }
    let qc = bpoly::content_x(&t.q);
    let qp = bpoly::div_x(&t.q, &qc);
    let hnum = bpoly::div_exact(&nh, &qp.pow(m))
        .filter(|h| h.len() <= r)
        .ok_or_else(|| Error::Internal("extraction remainder is not a polynomial of degree below r".into()))?;
    let hp = XRatPoly::new(hnum, qc.pow(m).scale(&(&sa * &sr)));
    let rf = t.reduce_power(nr, sr, kr);
    let g = RFunc::from_xrat(&hp.integrate_y(), &BPoly::one()).sub(&rf);
    // A_r with rational coefficients, cleared and made primitive
    let order = ar.keys().map(|&(_, j, _)| j).max().unwrap();
    let mut den = Int::from(1);
    for c in ar.values() {
        den = den.lcm(c.denom());
    }
    let mut coeffs: Vec<Vec<Int>> = vec![Vec::new(); order + 1];
    for (&(i, j, _), c) in &ar {
        let v = &mut coeffs[j];
        if v.len() <= i {
            v.resize(i + 1, Int::from(0));
        }
        v[i] = (c * rat(&den)).to_integer();
    }
    let raw = DiffOp::new(coeffs.into_iter().map(crate::algebra::poly::Poly::new).collect());
    let (content, op) = raw.split_content();
    let scale = crate::algebra::xfrac::XFrac::new(ZPoly::constant(den), content);
    Ok((op, g.mul_xfrac(&scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diffop::op_right_divide;
    use crate::algebra::ring::rat_i;
    use crate::ht::{hermite_telescoping, HtOptions};
    use crate::parser::parse_rfunc;

    #[test]
    fn extraction_example() {
        let f = parse_rfunc("x + 1/y").unwrap();
        let a = BivarOp::new([((0, 1, 1), rat_i(1))]);
        let (op, g) = extract_telescoper(&a, &f).unwrap();
        assert_eq!(op, DiffOp::dx());
        assert_eq!(g, parse_rfunc("y").unwrap());
        let f = parse_rfunc("1/(1 - x*y)").unwrap();
        assert!(matches!(extract_telescoper(&a, &f), Err(Error::VerificationFailure(_))));
    }

    #[test]
    fn counting_functions() {
        assert_eq!(lipshitz_counts(1, 1, 1), (4, 12));
        assert_eq!(cubic_counts(2, 1, 1, 1), (9, 15));
        // the Lipshitz ansatz eventually has more unknowns than equations
        assert!((1..=24).any(|nu| {
            let (f, g) = lipshitz_counts(nu, 1, 1);
            f > g
        }));
    }

    #[test]
    fn numerators() {
        let f = parse_rfunc("1/(1 - x*y)").unwrap();
        // D_x D_y f = (1 + x y)/(1 - x y)^3
        let h = monomial_action_numerator(&f, 1, 1);
        let q = f.den().pow(3);
        assert_eq!(RFunc::new(h, q), f.dy().dx());
    }

    fn check(f: &RFunc, out: &NonminOutput) {
        assert_eq!(out.op.apply(f), out.certificate.dy());
        let p = f.num();
        let q = f.den();
        let min = hermite_telescoping(p, q, &HtOptions::default()).unwrap().op;
        let (_, rem) = op_right_divide(&out.op, &min);
        assert!(rem.is_zero());
    }

    #[test]
    fn lipshitz_and_cubic_small() {
        for s in ["1/(1 - x*y)", "1/(1 - x - y)", "(x + y)/(y^2 - x)"] {
            let f = parse_rfunc(s).unwrap();
            check(&f, &lipshitz_telescoper(&f).unwrap());
            check(&f, &cubic_telescoper(&f).unwrap());
        }
    }
}
