//! Telescopers of arbitrary rational functions.
//!
//! The input is split as `f = D_y(p) + N / (c(x) Q)` with `p` polynomial in
//! `y`, `N/Q` proper and `Q` primitive with respect to `y`. The core
//! algorithms run on `h = N/Q`; a telescoper `L_h` of `h` gives the
//! telescoper `L_h c(x)` of `f - D_y(p)`, made primitive, and the
//! polynomial part contributes `L(p)` to the certificate.

use std::time::Instant;

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::DiffOp;
use crate::algebra::rfunc::{make_proper, RFunc};
use crate::algebra::ring::Ring;
use crate::algebra::xfrac::{XFrac, XRatPoly};
use crate::algebra::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::hermite::Engine;
use crate::ht::{self, CertificateSum, HtOptions};
use crate::{nonmin, ratz};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Hermite(Engine),
    Az,
    Lipshitz,
    Cubic,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Hermite(_) => "hermite",
            Method::Az => "az",
            Method::Lipshitz => "lipshitz",
            Method::Cubic => "cubic",
        }
    }

    /// Parse a method name, with the Hermite engine given separately.
    pub fn from_name(name: &str, engine: Engine) -> Option<Self> {
        match name {
            "ht" | "hermite" => Some(Method::Hermite(engine)),
            "az" => Some(Method::Az),
            "lipshitz" => Some(Method::Lipshitz),
            "cubic" => Some(Method::Cubic),
            _ => None,
        }
    }

    pub fn is_minimal(self) -> bool {
        matches!(self, Method::Hermite(_) | Method::Az)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub method: Method,
    pub lower_bound: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { method: Method::Hermite(Engine::HorowitzOstrogradsky), lower_bound: true, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Stats {
    pub method: &'static str,
    pub engine: Option<&'static str>,
    pub order: usize,
    pub deg_x: usize,
    /// Evaluated lower bound on the order (Hermite telescoping).
    pub rho0: Option<usize>,
    /// `deg_y Q*` of the proper part's denominator.
    pub dy_star: Option<usize>,
    /// Certificate numerator degree bound of the AZ ansatz.
    pub beta: Option<usize>,
    /// A priori bound on `deg_x` of the AZ telescoper.
    pub degree_bound: Option<i64>,
    /// Bound from the actual column degrees of the AZ system.
    pub column_degree_bound: Option<i64>,
    /// `deg_x` of the AZ telescoper of the proper primitive part, the
    /// operator the bounds apply to.
    pub core_deg_x: Option<usize>,
    /// Ansatz sizes of the non-minimal searches.
    pub ansatz: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct Telescoper {
    pub op: DiffOp,
    pub certificate: CertificateSum,
    pub stats: Stats,
}

enum Prepared {
    /// `f = D_y(g)`.
    Trivial(RFunc),
    Core { poly: XRatPoly, p: BPoly, q: BPoly, content: ZPoly },
}

fn prepare(f: &RFunc) -> Result<Prepared> {
    if f.is_zero() {
        return Err(Error::HypothesisViolation("the zero function has no minimal telescoper".into()));
    }
    let (poly, fbar) = make_proper(f);
    if fbar.is_zero() {
        return Ok(Prepared::Trivial(RFunc::from_xrat(&poly, &BPoly::one())));
    }
    let content = bpoly::content_x(fbar.den());
    let q = bpoly::div_x(fbar.den(), &content);
    Ok(Prepared::Core { poly, p: fbar.num().clone(), q, content })
}

fn finish(poly: &XRatPoly, content: &ZPoly, op_h: &DiffOp, mut cert: CertificateSum) -> (DiffOp, CertificateSum) {
    let op1 = if content.is_one() { op_h.clone() } else { op_h.mul_right_poly(content) };
    let (kappa, op) = op1.split_content();
    if !kappa.is_one() {
        cert.scale(&XFrac::new(ZPoly::one(), kappa));
    }
    if !poly.is_zero() {
        let body = cert.push_body(RFunc::from_xrat(poly, &BPoly::one()));
        for (i, c) in op.coeffs().iter().enumerate() {
            cert.push_term(XFrac::from_poly(c.clone()), body, i);
        }
    }
    (op, cert)
}

/// Compute a telescoper of `f` with the chosen method. Hermite
/// telescoping and AZ return the minimal telescoper.
pub fn telescope(f: &RFunc, opts: &Options) -> Result<Telescoper> {
    let start = Instant::now();
    let mut stats = Stats { method: opts.method.name(), ..Default::default() };
    if let Method::Hermite(e) = opts.method {
        stats.engine = Some(e.name());
    }
    let (op, certificate) = match prepare(f)? {
        Prepared::Trivial(g) => (DiffOp::one(), CertificateSum::single(g)),
        Prepared::Core { poly, p, q, content } => match opts.method {
            Method::Hermite(engine) => {
                let o = HtOptions { engine, lower_bound: opts.lower_bound, seed: opts.seed };
                let out = ht::hermite_telescoping(&p, &q, &o)?;
                stats.rho0 = out.rho0;
                stats.dy_star = Some(out.dy_star);
                finish(&poly, &content, &out.op, out.certificate)
            }
            Method::Az => {
                let out = ratz::rat_az(&p, &q)?;
                stats.beta = Some(out.beta);
                stats.degree_bound =
                    Some(ratz::az_degree_bound(&p, &q, out.op.order(), out.beta, out.deg_x_tstar));
                stats.column_degree_bound =
                    Some(ratz::az_column_degree_bound(&p, &q, out.op.order(), out.beta, out.deg_x_tstar));
                stats.core_deg_x = Some(out.op.deg_x());
                finish(&poly, &content, &out.op, CertificateSum::single(out.certificate))
            }
            Method::Lipshitz | Method::Cubic => {
                let out = if opts.method == Method::Lipshitz {
                    nonmin::lipshitz_telescoper(f)?
                } else {
                    nonmin::cubic_telescoper(f)?
                };
                stats.ansatz = Some(format!("{:?}, {} unknowns", out.ansatz, out.unknowns));
                (out.op, CertificateSum::single(out.certificate))
            }
        },
    };
    stats.order = op.order();
    stats.deg_x = op.deg_x();
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Telescoper { op, certificate, stats })
}

/// Exact check of `L(f) = D_y(g)` by cross-multiplication.
pub fn verify_telescoper(f: &RFunc, op: &DiffOp, g: &RFunc) -> bool {
    if op.is_zero() {
        return false;
    }
    let (nl, dl) = op.apply_unreduced(f);
    let gn = g.num();
    let gd = g.den();
    // D_y(g) = (gn_y gd - gn gd_y) / gd^2
    let ny = bpoly::dy(gn).mul(gd).sub(&gn.mul(&bpoly::dy(gd)));
    nl.mul(&gd.mul(gd)) == ny.mul(&dl)
}

/// Normalize a certificate sum and verify it.
pub fn verify_certificate(f: &RFunc, op: &DiffOp, cert: &CertificateSum) -> Result<bool> {
    Ok(verify_telescoper(f, op, &cert.normalize()?))
}
