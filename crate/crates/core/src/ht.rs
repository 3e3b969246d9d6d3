//! Hermite telescoping.
//!
//! For `f = P/Q` under hypothesis (H), Hermite reduction gives
//! `f = D_y(g_0) + a_0/Q*`. Differentiating and reducing the new part
//! `-a_{i-1} D_x(Q*)/Q*^2` again keeps every derivative in the form
//!
//! ```text
//! D_x^i f = D_y(g_i) + a_i/Q*,
//! a_i = D_x(a_{i-1}) + a~_i,  g_i = D_x(g_{i-1}) + g~_i,
//! ```
//!
//! with `deg_y a_i < deg_y Q*`. The minimal telescoper is the first
//! `Q(x)`-linear dependence `sum eta_j a_j = 0`; its certificate is
//! `sum eta_j g_j`, kept as an unevaluated sum of derivatives of the
//! `g_0, g~_1, ...`.

use std::collections::BTreeMap;

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::{DiffOp, RatDiffOp};
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::{rat, Field, Int, Rat, Ring};
use crate::algebra::xfrac::XFrac;
use crate::algebra::zpoly::ZPoly;
use crate::deadline;
use crate::error::{Error, Result};
use crate::hermite::{self, check_hypothesis, reduce_with, Denominator, Engine, HoSystem, LuckTest};
use crate::linalg::DependenceFinder;
use crate::ratz;

/// One term `coeff * D_x^order(body)` of a certificate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: XFrac,
    pub body: usize,
    pub order: usize,
}

/// An unevaluated certificate `sum coeff_k D_x^(m_k)(body_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateSum {
    pub bodies: Vec<RFunc>,
    pub terms: Vec<CertTerm>,
}

impl CertificateSum {
    /// A certificate that is already a single rational function.
    pub fn single(g: RFunc) -> Self {
        let mut c = Self::default();
        let b = c.push_body(g);
        c.push_term(XFrac::one(), b, 0);
        c
    }

    pub fn push_body(&mut self, g: RFunc) -> usize {
        self.bodies.push(g);
        self.bodies.len() - 1
    }

    pub fn push_term(&mut self, coeff: XFrac, body: usize, order: usize) {
        if !coeff.is_zero() && !self.bodies[body].is_zero() {
            self.terms.push(CertTerm { coeff, body, order });
        }
    }

    pub fn scale(&mut self, c: &XFrac) {
        for t in &mut self.terms {
            t.coeff = t.coeff.mul(c);
        }
    }

    pub fn append(&mut self, other: CertificateSum) {
        let off = self.bodies.len();
        self.bodies.extend(other.bodies);
        for t in other.terms {
            self.terms.push(CertTerm { body: t.body + off, ..t });
        }
    }

    /// Evaluate the sum to a single reduced rational function.
    pub fn normalize(&self) -> Result<RFunc> {
        let mut by_body: BTreeMap<usize, Vec<XFrac>> = BTreeMap::new();
        for t in &self.terms {
            let cs = by_body.entry(t.body).or_default();
            if cs.len() <= t.order {
                cs.resize(t.order + 1, XFrac::zero());
            }
            cs[t.order] = cs[t.order].add(&t.coeff);
        }
        let mut acc = RFunc::zero();
        for (b, cs) in by_body {
            deadline::check()?;
            let op = RatDiffOp::new(cs);
            if op.is_zero() {
                continue;
            }
            let (den, l) = op.to_integral();
            let v = l.apply(&self.bodies[b]).mul_xfrac(&XFrac::new(ZPoly::one(), den));
            acc = acc.add(&v);
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HtOptions {
    pub engine: Engine,
    /// Skip dependence checks below the evaluated lower bound.
    pub lower_bound: bool,
    pub seed: u64,
}

impl Default for HtOptions {
    fn default() -> Self {
        HtOptions { engine: Engine::HorowitzOstrogradsky, lower_bound: true, seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct HtOutput {
    pub op: DiffOp,
    pub certificate: CertificateSum,
    pub rho0: Option<usize>,
    pub dy_star: usize,
}

fn column(p: &BPoly, n: usize) -> Vec<ZPoly> {
    (0..n).map(|j| p.coeff(j)).collect()
}

/// Minimal telescoper of `P/Q` under hypothesis (H).
pub fn hermite_telescoping(p: &BPoly, q: &BPoly, opts: &HtOptions) -> Result<HtOutput> {
    check_hypothesis(p, q)?;
    let den = Denominator::new(q);
    let dy_star = den.dy_star();
    let pair0 = reduce_with(&den, p, &ZPoly::one(), opts.engine)?;
    let mut cert = CertificateSum::default();
    let g0 = cert.push_body(pair0.g());
    let mut a = pair0.small_a;
    if a.is_zero() {
        cert.push_term(XFrac::one(), g0, 0);
        return Ok(HtOutput { op: DiffOp::one(), certificate: cert, rho0: None, dy_star });
    }
    let rho0 = if opts.lower_bound { Some(lower_order_bound(p, q)?) } else { None };
    let den2 = Denominator::from_parts(den.qstar.mul(&den.qstar), den.qstar.clone(), den.qstar.clone());
    let ho = match opts.engine {
        Engine::HorowitzOstrogradsky => Some(HoSystem::new(den2.clone())?),
        _ => None,
    };
    let dqx = bpoly::dx(&den.qstar);
    let mut finder = DependenceFinder::new(opts.seed);
    let mut dens = vec![a.den().clone()];
    finder.push(column(a.num(), dy_star));
    let mut tilde = Vec::with_capacity(dy_star);
    for i in 1..=dy_star {
        deadline::check()?;
        let num = a.num().mul(&dqx).neg();
        let pair = match &ho {
            Some(h) => h.reduce(&num, a.den())?,
            None => reduce_with(&den2, &num, a.den(), opts.engine)?,
        };
        tilde.push(cert.push_body(pair.g()));
        a = a.dx().add(&pair.small_a);
        dens.push(a.den().clone());
        finder.push(column(a.num(), dy_star));
        if rho0.is_some_and(|r| i < r) {
            continue;
        }
        let Some(u) = finder.check()? else { continue };
        let eta: Vec<ZPoly> = u.iter().zip(&dens).map(|(u, d)| u.mul(d)).collect();
        let (content, op) = DiffOp::new(eta.clone()).split_content();
        for (j, e) in eta.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let c = XFrac::new(e.clone(), content.clone());
            cert.push_term(c.clone(), g0, j);
            for k in 1..=j {
                cert.push_term(c.clone(), tilde[k - 1], j - k);
            }
        }
        return Ok(HtOutput { op, certificate: cert, rho0, dy_star });
    }
    Err(Error::Internal("no dependence found up to order deg_y Q*".into()))
}

/// Row echelon basis over `Q` grown one vector at a time.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    /// Insert `v`; `false` if it lies in the span of the previous vectors.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let f = v[*c].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let t = f.mul(r);
                x.sub_assign(&t);
            }
        }
        let Some(c) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[c].inv();
        for x in &mut v {
            *x = x.mul(&inv);
        }
        self.rows.push((c, v));
        true
    }
}

/// Lower bound for the order of the minimal telescoper from the Hermite
/// remainders of `D_x^i f` specialized at the smallest lucky `x0 >= 0`.
pub fn lower_order_bound(p: &BPoly, q: &BPoly) -> Result<usize> {
    let x0 = LuckTest::new(q).smallest_lucky(1).remove(0);
    lower_order_bound_at(p, q, &x0)
}

/// The bound at a given point; equals the true order for all but finitely
/// many lucky `x0`.
pub fn lower_order_bound_at(p: &BPoly, q: &BPoly, x0: &Int) -> Result<usize> {
    let setup = ratz::GosperSetup::new(q);
    let dy_star = bpoly::deg_y(&setup.qstar);
    let xr = rat(x0);
    let q0 = bpoly::eval_x(q, &xr);
    let t0 = bpoly::eval_x(&setup.big_t_star, &xr);
    let mut n = p.clone();
    let mut den0 = q0;
    let mut ech = Echelon::default();
    for i in 0..=dy_star {
        deadline::check()?;
        if i > 0 {
            n = setup.next_numerator(&n, i - 1);
            den0 = den0.mul(&t0);
        }
        let n0 = bpoly::eval_x(&n, &xr);
        let (_, _, r, _) = hermite::hermite_classic(&n0, &den0);
        let v: Vec<Rat> = (0..dy_star).map(|j| r.coeff(j)).collect();
        if !ech.insert(v) {
            return Ok(i);
        }
    }
    Ok(dy_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;
    use crate::algebra::diffop::diffop_from_ints;

    fn check_cert(p: &BPoly, q: &BPoly, out: &HtOutput) {
        let f = RFunc::new(p.clone(), q.clone());
        let g = out.certificate.normalize().unwrap();
        assert_eq!(out.op.apply(&f), g.dy());
    }

    #[test]
    fn simple_telescopers() {
        // 1/(x - y): L = D_x
        let q = from_terms(&[(1, 1, 0), (-1, 0, 1)]);
        let out = hermite_telescoping(&BPoly::one(), &q, &HtOptions::default()).unwrap();
        assert_eq!(out.op, DiffOp::dx());
        check_cert(&BPoly::one(), &q, &out);
        // 1/(1 - x - y): D_y-exact up to a constant in y, L = D_x
        let q = from_terms(&[(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]);
        let out = hermite_telescoping(&BPoly::one(), &q, &HtOptions::default()).unwrap();
        assert_eq!(out.op, DiffOp::dx());
        // 1/(1 - x y): L = x D_x + 1
        let q = from_terms(&[(1, 0, 0), (-1, 1, 1)]);
        let out = hermite_telescoping(&BPoly::one(), &q, &HtOptions::default()).unwrap();
        assert_eq!(out.op, diffop_from_ints(&[&[1], &[0, 1]]));
        check_cert(&BPoly::one(), &q, &out);
    }

    #[test]
    fn engines_agree_and_match_az() {
        // Q = (y^2 - x)^2 (x y + 1), P = x + y
        let q = from_terms(&[(1, 0, 2), (-1, 1, 0)]).pow(2).mul(&from_terms(&[(1, 1, 1), (1, 0, 0)]));
        let p = from_terms(&[(1, 1, 0), (1, 0, 1)]);
        let mut ops = Vec::new();
        for e in Engine::ALL {
            for lb in [false, true] {
                let out = hermite_telescoping(&p, &q, &HtOptions { engine: e, lower_bound: lb, seed: 3 }).unwrap();
                check_cert(&p, &q, &out);
                ops.push((out.op.clone(), out.certificate.normalize().unwrap()));
            }
        }
        let az = ratz::rat_az(&p, &q).unwrap();
        for (op, g) in &ops {
            assert_eq!(op, &az.op);
            assert_eq!(g, &az.certificate);
        }
    }

    #[test]
    fn lower_bound_is_exact_at_lucky_points() {
        let q = from_terms(&[(1, 0, 3), (-1, 1, 0), (1, 0, 0)]).mul(&from_terms(&[(1, 0, 1), (2, 1, 0)]));
        let p = from_terms(&[(1, 0, 0)]);
        let out = hermite_telescoping(&p, &q, &HtOptions { lower_bound: false, ..Default::default() }).unwrap();
        assert_eq!(lower_order_bound(&p, &q).unwrap(), out.op.order());
    }

    #[test]
    fn hypothesis_is_enforced() {
        let q = from_terms(&[(1, 0, 1)]).mul(&from_terms(&[(1, 1, 0), (1, 0, 0)]));
        assert!(matches!(
            hermite_telescoping(&BPoly::one(), &q, &HtOptions::default()),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
