//! Rational Almkvist–Zeilberger: telescopers from an ansatz on the
//! certificate's numerator.
//!
//! Write `Q = t(y) T(x, y)` with `t` the content with respect to `x`, and
//! `Q* = t*(y) T*(x, y)` likewise. The derivatives of `f = P/Q` are
//!
//! ```text
//! D_x^i f = N_i / (Q T*^i),
//! N_{i+1} = D_x(N_i) T* - N_i (T* D_x(T)/T + i D_x(T*)).
//! ```
//!
//! For a trial order `l`, a telescoper with certificate
//! `g = z / (Q^- T*^l)` exists iff the linear system
//!
//! ```text
//! sum_i eta_i N_i T*^(l-i) = Q* D_y(z) + (D_y(Q*) + H) z,
//! H = -D_y(Q)/Q^- - l t* D_y(T*)
//! ```
//!
//! has a solution with `eta != 0`, `deg_y z < beta = deg_y Q^- + l deg_y T*`.
//! The top coefficient of `z` is fixed to zero: `z = c Q^- T*^l` solves the
//! homogeneous system with `eta = 0` (its certificate is constant in `y`),
//! so dropping it leaves a one-dimensional kernel at the minimal order and
//! a certificate that is proper in `y`.

use std::time::Instant;

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::DiffOp;
use crate::algebra::poly::Poly;
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::Int;
use crate::algebra::zpoly::ZPoly;
use crate::deadline;
use crate::error::{Error, Result};
use crate::linalg::{self, PMatrix};

/// The content/primitive splitting of `Q` and `Q*` used by the ansatz.
#[derive(Clone, Debug)]
pub struct GosperSetup {
    pub q: BPoly,
    pub qstar: BPoly,
    pub qminus: BPoly,
    pub t: ZPoly,
    pub big_t: BPoly,
    pub t_star: ZPoly,
    pub big_t_star: BPoly,
    /// `T* D_x(T) / T`
    pub w: BPoly,
}

impl GosperSetup {
    pub fn new(q: &BPoly) -> Self {
        let (qstar, qminus) = bpoly::deflation(q);
        let (t, big_t) = bpoly::content_primitive_x(q);
        let (t_star, big_t_star) = bpoly::content_primitive_x(&qstar);
        let w = bpoly::div(&big_t_star.mul(&bpoly::dx(&big_t)), &big_t);
        GosperSetup { q: q.clone(), qstar, qminus, t, big_t, t_star, big_t_star, w }
    }

    /// `N_{i+1}` from `N_i`.
    pub fn next_numerator(&self, n: &BPoly, i: usize) -> BPoly {
        let a = bpoly::dx(n).mul(&self.big_t_star);
        let c = self.w.add(&bpoly::dx(&self.big_t_star).scale(&ZPoly::constant(Int::from(i as i64))));
        a.sub(&n.mul(&c))
    }

    /// `H` for trial order `l`.
    pub fn h(&self, l: usize) -> BPoly {
        let base = bpoly::div(&bpoly::dy(&self.q), &self.qminus).neg();
        let corr = bpoly::from_y(&self.t_star).mul(&bpoly::dy(&self.big_t_star));
        base.sub(&corr.scale(&ZPoly::constant(Int::from(l as i64))))
    }
}

/// `[N_0, ..., N_upto]` for `f = P/Q`.
pub fn derivative_numerators_t(p: &BPoly, q: &BPoly, upto: usize) -> (GosperSetup, Vec<BPoly>) {
    let s = GosperSetup::new(q);
    let mut ns = vec![p.clone()];
    for i in 0..upto {
        let next = s.next_numerator(&ns[i], i);
        ns.push(next);
    }
    (s, ns)
}

/// Data of the Gosper-form check for a given order.
#[derive(Clone, Debug)]
pub struct GosperForm {
    pub qstar: BPoly,
    pub h: BPoly,
}

pub fn gosper_form(q: &BPoly, rho: usize) -> GosperForm {
    let s = GosperSetup::new(q);
    GosperForm { h: s.h(rho), qstar: s.qstar }
}

/// `gcd(Q*, H - tau D_y(Q*)) = 1` for all `tau` in `0..=tau_max`.
pub fn gosper_certificate_check(form: &GosperForm, tau_max: usize) -> bool {
    let dq = bpoly::dy(&form.qstar);
    (0..=tau_max).all(|tau| {
        let e = form.h.sub(&dq.scale(&ZPoly::constant(Int::from(tau as i64))));
        let g = bpoly::gcd(&form.qstar, &e);
        g.len() == 1 && g.coeffs()[0].len() == 1
    })
}

/// Output of the rational AZ core.
#[derive(Clone, Debug)]
pub struct AzOutput {
    pub op: DiffOp,
    /// Certificate `g` with `L(f) = D_y(g)`.
    pub certificate: RFunc,
    /// `deg_y Q^- + rho deg_y T*` at the terminating order.
    pub beta: usize,
    /// `deg_x T*`.
    pub deg_x_tstar: usize,
    /// Orders tried with exact elimination.
    pub exact_solves: usize,
    pub elapsed_ms: f64,
}

fn column(p: &BPoly, rows: usize) -> Vec<ZPoly> {
    (0..rows).map(|j| p.coeff(j)).collect()
}

/// Rational AZ for `f = P/Q` satisfying hypothesis (H).
pub fn rat_az(p: &BPoly, q: &BPoly) -> Result<AzOutput> {
    let start = Instant::now();
    let s = GosperSetup::new(q);
    let dy_star = bpoly::deg_y(&s.qstar);
    let dy_minus = bpoly::deg_y(&s.qminus);
    let dyt = bpoly::deg_y(&s.big_t_star);
    let db_base = bpoly::dy(&s.qstar);
    let mut ns = vec![p.clone()];
    let mut tpow = vec![BPoly::one()];
    let mut exact_solves = 0;
    let probe_prime = crate::algebra::modp::primes(1)[0];
    // deterministic probe point away from small integers
    let mut x0: u64 = 1_000_003;
    for l in 0..=dy_star.max(1) {
        deadline::check()?;
        if l > 0 {
            let next = s.next_numerator(&ns[l - 1], l - 1);
            ns.push(next);
            tpow.push(tpow[l - 1].mul(&s.big_t_star));
        }
        let beta = dy_minus + l * dyt;
        let b = db_base.add(&s.h(l));
        let mut cols: Vec<BPoly> = Vec::with_capacity(l + 1 + beta);
        for i in 0..=l {
            cols.push(ns[i].mul(&tpow[l - i]));
        }
        for j in 0..beta {
            let mut c = b.shift(j);
            if j > 0 {
                c = c.add(&s.qstar.shift(j - 1).scale(&ZPoly::constant(Int::from(j as i64))));
            }
            cols.push(c.neg());
        }
        let rows = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let m = PMatrix::from_columns(&cols.iter().map(|c| column(c, rows)).collect::<Vec<_>>());
        if linalg::rank_probe_mod(&m, x0, probe_prime) == m.cols() {
            continue;
        }
        exact_solves += 1;
        let ns_basis = linalg::nullspace(&m)?;
        if ns_basis.is_empty() {
            x0 = x0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407) % (1 << 40);
            continue;
        }
        if ns_basis.len() != 1 {
            return Err(Error::Internal(format!("AZ kernel has dimension {} at order {l}", ns_basis.len())));
        }
        let u = &ns_basis[0];
        let eta: Vec<ZPoly> = u[..=l].to_vec();
        if eta.iter().all(|e| e.is_zero()) {
            return Err(Error::Internal("AZ kernel vector with zero telescoper".into()));
        }
        let z = Poly::new(u[l + 1..].to_vec());
        let raw = DiffOp::new(eta);
        let (content, op) = raw.split_content();
        let g = RFunc::new(z, bpoly::mul_x(&s.qminus.mul(&tpow[l]), &content));
        return Ok(AzOutput {
            op,
            certificate: g,
            beta,
            deg_x_tstar: bpoly::deg_x(&s.big_t_star),
            exact_solves,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Err(Error::NotFound)
}

/// Degree bound `n_x (rho + 1) + d_x (beta + 1)` on `deg_x` of the AZ
/// telescoper, with `n_x = max(deg_x P, d_x) + rho (deg_x T* - 1)`.
///
/// The bound assumes `deg_x P <= d_x`. Without it, `n_x` only bounds the
/// column of `eta_rho`; see [`az_column_degree_bound`].
pub fn az_degree_bound(p: &BPoly, q: &BPoly, rho: usize, beta: usize, deg_x_tstar: usize) -> i64 {
    let dx = bpoly::deg_x(q) as i64;
    let nx = (bpoly::deg_x(p) as i64).max(dx) + rho as i64 * (deg_x_tstar as i64 - 1);
    nx * (rho as i64 + 1) + dx * (beta as i64 + 1)
}

/// Cramer bound from the actual column degrees of the AZ system: the
/// column of `eta_i` is `N_i T*^(rho - i)`, of `x`-degree at most
/// `deg_x P + rho deg_x T* - i`, largest at `i = 0`.
pub fn az_column_degree_bound(p: &BPoly, q: &BPoly, rho: usize, beta: usize, deg_x_tstar: usize) -> i64 {
    let dx = bpoly::deg_x(q) as i64;
    let nx = (bpoly::deg_x(p) as i64).max(dx) + (rho * deg_x_tstar) as i64;
    nx * (rho as i64 + 1) + dx * (beta as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;

    #[test]
    fn numerators_example() {
        // f = 1/(1 - x y): N_1 = y
        let (_, ns) = derivative_numerators_t(&from_terms(&[(1, 0, 0)]), &from_terms(&[(1, 0, 0), (-1, 1, 1)]), 1);
        assert_eq!(ns[1], from_terms(&[(1, 0, 1)]));
    }

    #[test]
    fn numerators_match_derivatives() {
        // Q = y^2 (y - x)^3 (x y + 1)
        let q = from_terms(&[(1, 0, 2)])
            .mul(&from_terms(&[(1, 0, 1), (-1, 1, 0)]).pow(3))
            .mul(&from_terms(&[(1, 1, 1), (1, 0, 0)]));
        let p = from_terms(&[(3, 1, 0), (1, 0, 4), (-2, 2, 1)]);
        let (s, ns) = derivative_numerators_t(&p, &q, 3);
        let mut f = RFunc::new(p.clone(), q.clone());
        let mut tp = BPoly::one();
        for n in &ns {
            assert_eq!(RFunc::new(n.clone(), q.mul(&tp)), f);
            f = f.dx();
            tp = tp.mul(&s.big_t_star);
        }
    }

    #[test]
    fn az_on_simple_inputs() {
        // 1/(x - y): L = D_x + 0? D_x f = -D_y f, so L = D_x, g = -f
        let q = from_terms(&[(1, 1, 0), (-1, 0, 1)]);
        let out = rat_az(&BPoly::one(), &q).unwrap();
        assert_eq!(out.op, DiffOp::dx());
        assert_eq!(out.certificate, RFunc::new(BPoly::one(), q).neg());
        // 1/(1 - x y): order 1
        let q = from_terms(&[(1, 0, 0), (-1, 1, 1)]);
        let out = rat_az(&BPoly::one(), &q).unwrap();
        assert_eq!(out.op.order(), 1);
        let f = RFunc::new(BPoly::one(), q);
        assert_eq!(out.op.apply(&f), out.certificate.dy());
    }

    #[test]
    fn gosper_check_at_minimal_order() {
        let q = from_terms(&[(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]);
        let form = gosper_form(&q, 1);
        assert!(gosper_certificate_check(&form, 3));
    }
}
