//! JSON encoding of polynomials, operators and certificates.
//!
//! Integers are decimal strings; polynomials are dense coefficient lists,
//! constant term first.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use ctrat::algebra::diffop::DiffOp;
use ctrat::algebra::poly::Poly;
use ctrat::algebra::ring::{Int, Rat};
use ctrat::algebra::xfrac::XFrac;
use ctrat::algebra::zpoly::ZPoly;
use ctrat::ht::{CertTerm, CertificateSum};
use ctrat::parser::{parse_rfunc, print_canonical, print_diffop};
use ctrat::telescope::Stats;

pub fn zpoly(p: &ZPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn operator(l: &DiffOp) -> Value {
    Value::Array(l.coeffs().iter().map(zpoly).collect())
}

fn xfrac(c: &XFrac) -> Value {
    json!({ "num": zpoly(c.num()), "den": zpoly(c.den()) })
}

/// `{"L": ..., "L_text": ..., "order": ..., "deg_x": ...}`.
pub fn operator_fields(l: &DiffOp, out: &mut Map<String, Value>) {
    out.insert("L".into(), operator(l));
    out.insert("L_text".into(), Value::String(print_diffop(l)));
    out.insert("order".into(), json!(l.order()));
    out.insert("deg_x".into(), json!(l.deg_x()));
}

pub fn certificate_sum(c: &CertificateSum) -> Value {
    let bodies: Vec<Value> = c.bodies.iter().map(|b| Value::String(print_canonical(b))).collect();
    let terms: Vec<Value> =
        c.terms.iter().map(|t| json!({ "coeff": xfrac(&t.coeff), "body": t.body, "order": t.order })).collect();
    json!({ "form": "sum", "bodies": bodies, "terms": terms })
}

pub fn stats(s: &Stats) -> Value {
    let mut m = Map::new();
    m.insert("method".into(), json!(s.method));
    m.insert("engine".into(), json!(s.engine));
    m.insert("rho0".into(), json!(s.rho0));
    m.insert("dy_star".into(), json!(s.dy_star));
    m.insert("beta".into(), json!(s.beta));
    m.insert("degree_bound".into(), json!(s.degree_bound));
    m.insert("column_degree_bound".into(), json!(s.column_degree_bound));
    m.insert("core_deg_x".into(), json!(s.core_deg_x));
    m.insert("ansatz".into(), json!(s.ansatz));
    m.insert("elapsed_ms".into(), json!(s.elapsed_ms));
    Value::Object(m)
}

fn int(v: &Value) -> Result<Int> {
    v.as_str().ok_or_else(|| anyhow!("expected an integer string, got {v}"))?.parse().context("bad integer")
}

fn read_zpoly(v: &Value) -> Result<ZPoly> {
    let a = v.as_array().ok_or_else(|| anyhow!("expected a coefficient list"))?;
    Ok(Poly::new(a.iter().map(int).collect::<Result<_>>()?))
}

pub fn read_operator(v: &Value) -> Result<DiffOp> {
    let a = v.as_array().ok_or_else(|| anyhow!("\"L\" must be a list of coefficient lists"))?;
    Ok(DiffOp::new(a.iter().map(read_zpoly).collect::<Result<_>>()?))
}

pub enum Certificate {
    Sum(CertificateSum),
    Normalized(ctrat::algebra::rfunc::RFunc),
}

pub fn read_certificate(v: &Value) -> Result<Certificate> {
    match v.get("form").and_then(Value::as_str) {
        Some("normalized") => {
            let g = v.get("g").and_then(Value::as_str).ok_or_else(|| anyhow!("missing \"g\""))?;
            Ok(Certificate::Normalized(parse_rfunc(g)?))
        }
        Some("sum") => {
            let mut c = CertificateSum::default();
            for b in v.get("bodies").and_then(Value::as_array).ok_or_else(|| anyhow!("missing \"bodies\""))? {
                let s = b.as_str().ok_or_else(|| anyhow!("bodies must be strings"))?;
                c.push_body(parse_rfunc(s)?);
            }
            for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| anyhow!("missing \"terms\""))? {
                let coeff = &t["coeff"];
                let den = read_zpoly(&coeff["den"])?;
                if den.is_zero() {
                    bail!("zero denominator in a certificate coefficient");
                }
                let body = t["body"].as_u64().ok_or_else(|| anyhow!("bad body index"))? as usize;
                if body >= c.bodies.len() {
                    bail!("body index {body} out of range");
                }
                let order = t["order"].as_u64().ok_or_else(|| anyhow!("bad order"))? as usize;
                c.terms.push(CertTerm { coeff: XFrac::new(read_zpoly(&coeff["num"])?, den), body, order });
            }
            Ok(Certificate::Sum(c))
        }
        other => bail!("unknown certificate form {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctrat::algebra::diffop::diffop_from_ints;

    #[test]
    fn operator_round_trip() {
        let l = diffop_from_ints(&[&[-2], &[1, -4], &[0, 0, 7]]);
        assert_eq!(operator(&l), json!([["-2"], ["1", "-4"], ["0", "0", "7"]]));
        assert_eq!(read_operator(&operator(&l)).unwrap(), l);
    }

    #[test]
    fn certificate_round_trip() {
        let mut c = CertificateSum::single(parse_rfunc("1/(1-x*y)").unwrap());
        let b = c.push_body(parse_rfunc("y/(x+1)").unwrap());
        c.push_term(XFrac::new(ctrat::algebra::zpoly::zpoly(&[1, 2]), ctrat::algebra::zpoly::zpoly(&[3])), b, 2);
        let Certificate::Sum(back) = read_certificate(&certificate_sum(&c)).unwrap() else { panic!() };
        assert_eq!(back.normalize().unwrap(), c.normalize().unwrap());
    }
}
