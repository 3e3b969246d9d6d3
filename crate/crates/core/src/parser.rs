//! Text input and canonical output for rational functions and operators.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" power)?          right associative
//! atom   := integer | "x" | "y" | "(" expr ")"
//! ```
//!
//! Exponentiation binds tighter than unary minus (`-x^2` is `-(x^2)`), and
//! exponents must evaluate to non-negative integer constants. There is no
//! implicit multiplication. For operators, `Dx` is an additional atom and
//! `Dx` factors must stand to the right of their coefficient.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::DiffOp;
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::{Int, Ring};
use crate::algebra::zpoly::ZPoly;
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(Int),
    Var(char),
    /// The operator `D_x` (only in operator mode).
    Dx,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

/// Parsed expression with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_dx: bool,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(&c) => format!("'{}'", c as char),
        };
        Err(Error::Parse { offset: self.pos, message: format!("expected {expected}, found {found}") })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let offset = lhs.offset;
                    lhs = Expr { kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)), offset };
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let offset = lhs.offset;
                    lhs = Expr { kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)), offset };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let offset = lhs.offset;
                    lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), offset };
                }
                Some(b'/') => {
                    let op = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr { kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)), offset: op };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            let offset = self.pos;
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), offset });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.power()?;
            let offset = base.offset;
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), Box::new(exp)), offset });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = match self.peek() {
            None => return self.err("one of: integer, 'x', 'y', '('"),
            Some(_) => self.pos,
        };
        let c = self.src[self.pos];
        match c {
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr { kind: ExprKind::Num(s.parse().unwrap()), offset })
            }
            b'x' | b'y' => {
                self.pos += 1;
                self.reject_identifier_tail(offset)?;
                Ok(Expr { kind: ExprKind::Var(c as char), offset })
            }
            b'D' if self.allow_dx && self.src.get(self.pos + 1) == Some(&b'x') => {
                self.pos += 2;
                self.reject_identifier_tail(offset)?;
                Ok(Expr { kind: ExprKind::Dx, offset })
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("one of: ')', '+', '-', '*', '/', '^'");
                }
                self.pos += 1;
                Ok(Expr { kind: e.kind, offset })
            }
            _ if c.is_ascii_alphabetic() => Err(Error::Parse {
                offset,
                message: format!("unknown identifier starting with '{}'; only x and y are variables", c as char),
            }),
            _ => {
                if self.allow_dx {
                    self.err("one of: integer, 'x', 'Dx', '('")
                } else {
                    self.err("one of: integer, 'x', 'y', '('")
                }
            }
        }
    }

    fn reject_identifier_tail(&self, offset: usize) -> Result<()> {
        if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            return Err(Error::Parse {
                offset,
                message: "unknown identifier; only x and y are variables (no implicit multiplication)".into(),
            });
        }
        Ok(())
    }
}

fn parse_with(input: &str, allow_dx: bool) -> Result<Expr> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, allow_dx };
    if p.peek().is_none() {
        return p.err("an expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("one of: '+', '-', '*', '/', '^' or end of input");
    }
    Ok(e)
}

/// Parse a rational function expression into an AST.
pub fn parse(input: &str) -> Result<Expr> {
    parse_with(input, false)
}

fn exponent_value(e: &Expr) -> Result<u64> {
    let v = to_rfunc(e)?;
    let bad = || Error::Parse { offset: e.offset, message: "exponent must be a non-negative integer constant".into() };
    if v.den() != &BPoly::one() || v.num().len() > 1 || v.num().coeffs().first().is_some_and(|c| c.len() > 1) {
        return Err(bad());
    }
    let n = v.num().coeffs().first().map(|c| c.lc()).unwrap_or_else(BigInt::zero);
    if n.is_negative() {
        return Err(bad());
    }
    let n = n.to_u64().filter(|&n| n <= MAX_EXPONENT).ok_or_else(|| Error::Parse {
        offset: e.offset,
        message: format!("exponent exceeds {MAX_EXPONENT}"),
    })?;
    Ok(n)
}

fn rfunc_pow(b: &RFunc, n: u64) -> RFunc {
    let num = b.num().pow(n as usize);
    let den = b.den().pow(n as usize);
    RFunc::new(num, den)
}

/// Evaluate an AST to a canonical rational function.
pub fn to_rfunc(e: &Expr) -> Result<RFunc> {
    Ok(match &e.kind {
        ExprKind::Num(n) => RFunc::from_int(n.clone()),
        ExprKind::Var('x') => RFunc::from_bpoly(bpoly::from_terms(&[(1, 1, 0)])),
        ExprKind::Var(_) => RFunc::from_bpoly(bpoly::from_terms(&[(1, 0, 1)])),
        ExprKind::Dx => {
            return Err(Error::Parse { offset: e.offset, message: "Dx is only allowed in operators".into() })
        }
        ExprKind::Neg(a) => to_rfunc(a)?.neg(),
        ExprKind::Add(a, b) => to_rfunc(a)?.add(&to_rfunc(b)?),
        ExprKind::Sub(a, b) => to_rfunc(a)?.sub(&to_rfunc(b)?),
        ExprKind::Mul(a, b) => to_rfunc(a)?.mul(&to_rfunc(b)?),
        ExprKind::Div(a, b) => {
            let d = to_rfunc(b)?;
            if d.is_zero() {
                return Err(Error::Parse { offset: e.offset, message: "division by zero".into() });
            }
            to_rfunc(a)?.div(&d)
        }
        ExprKind::Pow(a, b) => rfunc_pow(&to_rfunc(a)?, exponent_value(b)?),
    })
}

/// Parse directly to a rational function.
pub fn parse_rfunc(input: &str) -> Result<RFunc> {
    to_rfunc(&parse(input)?)
}

/// Evaluate an operator AST as a polynomial in the commuting symbols `x`
/// (coefficient variable) and `Dx` (stored in the `y` slot).
fn to_operator_poly(e: &Expr) -> Result<BPoly> {
    let not_poly = |offset| Error::Parse { offset, message: "operator coefficients must be polynomials in x".into() };
    Ok(match &e.kind {
        ExprKind::Num(n) => bpoly::constant(n.clone()),
        ExprKind::Var('x') => bpoly::from_terms(&[(1, 1, 0)]),
        ExprKind::Var(_) => {
            return Err(Error::Parse { offset: e.offset, message: "operators may only involve x and Dx".into() })
        }
        ExprKind::Dx => bpoly::from_terms(&[(1, 0, 1)]),
        ExprKind::Neg(a) => to_operator_poly(a)?.neg(),
        ExprKind::Add(a, b) => to_operator_poly(a)?.add(&to_operator_poly(b)?),
        ExprKind::Sub(a, b) => to_operator_poly(a)?.sub(&to_operator_poly(b)?),
        ExprKind::Mul(a, b) => {
            let l = to_operator_poly(a)?;
            let r = to_operator_poly(b)?;
            if l.len() > 1 && r.coeffs().iter().any(|c| c.len() > 1) {
                return Err(Error::Parse {
                    offset: b.offset,
                    message: "x must stand to the left of Dx in operator terms".into(),
                });
            }
            l.mul(&r)
        }
        ExprKind::Div(a, b) => {
            let l = to_operator_poly(a)?;
            let r = to_operator_poly(b)?;
            bpoly::div_exact(&l, &r).ok_or_else(|| not_poly(e.offset))?
        }
        ExprKind::Pow(a, b) => to_operator_poly(a)?.pow(exponent_value(b)? as usize),
    })
}

/// Parse an operator such as `(4*x - 1)*Dx^1 + (2)`.
pub fn parse_diffop(input: &str) -> Result<DiffOp> {
    let e = parse_with(input, true)?;
    let p = to_operator_poly(&e)?;
    Ok(DiffOp::new(p.into_coeffs()))
}

fn write_monomial(out: &mut String, c: &Int, vars: &[(&str, usize)], first: bool) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let abs = c.abs();
    let factors: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    let unit = abs == BigInt::from(1);
    if factors.is_empty() {
        let _ = write!(out, "{abs}");
    } else if unit {
        out.push_str(&factors.join("*"));
    } else {
        let _ = write!(out, "{abs}*{}", factors.join("*"));
    }
}

/// Expanded form of a polynomial in one variable, highest degree first.
pub fn print_zpoly(p: &ZPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        write_monomial(&mut out, c, &[(var, i)], first);
        first = false;
    }
    out
}

fn terms_desc(p: &BPoly) -> Vec<(usize, usize, Int)> {
    let mut t = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                t.push((i, j, a.clone()));
            }
        }
    }
    t.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
    t
}

/// Expanded form of a bivariate polynomial: total degree descending, then
/// `x`-degree descending.
pub fn print_bpoly(p: &BPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, j, c)) in terms_desc(p).iter().enumerate() {
        write_monomial(&mut out, c, &[("x", *i), ("y", *j)], k == 0);
    }
    out
}

fn is_single_factor(p: &BPoly) -> bool {
    let t = terms_desc(p);
    t.len() == 1
        && (t[0].0 == 0 || t[0].1 == 0)
        && (t[0].2 == BigInt::from(1) || (t[0].0 == 0 && t[0].1 == 0 && !t[0].2.is_negative()))
}

/// Canonical printed form of a rational function.
pub fn print_canonical(f: &RFunc) -> String {
    let num = print_bpoly(f.num());
    if f.den() == &BPoly::one() {
        return num;
    }
    let num = if terms_desc(f.num()).len() > 1 { format!("({num})") } else { num };
    let den = print_bpoly(f.den());
    let den = if is_single_factor(f.den()) { den } else { format!("({den})") };
    format!("{num}/{den}")
}

/// Canonical printed form of an operator: `(c_r)*Dx^r + ... + (c_0)`.
pub fn print_diffop(l: &DiffOp) -> String {
    if l.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in l.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let c = print_zpoly(c, "x");
        parts.push(if i == 0 { format!("({c})") } else { format!("({c})*Dx^{i}") });
    }
    parts.join(" + ")
}

impl std::fmt::Display for RFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

impl std::fmt::Display for DiffOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_diffop(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::from_terms;
    use crate::algebra::diffop::diffop_from_ints;

    #[test]
    fn precedence() {
        let f = parse_rfunc("-x^2").unwrap();
        assert_eq!(f, RFunc::from_bpoly(from_terms(&[(-1, 2, 0)])));
        let f = parse_rfunc("2^3^2").unwrap();
        assert_eq!(f, RFunc::from_int(BigInt::from(512)));
        let f = parse_rfunc("1 - x*y/2 + 3").unwrap();
        assert_eq!(f, RFunc::new(from_terms(&[(8, 0, 0), (-1, 1, 1)]), from_terms(&[(2, 0, 0)])));
        let f = parse_rfunc("x/y/x").unwrap();
        assert_eq!(f, RFunc::new(from_terms(&[(1, 0, 0)]), from_terms(&[(1, 0, 1)])));
    }

    #[test]
    fn examples_from_the_contract() {
        let f = parse_rfunc("1/(1 - x*y)").unwrap();
        assert_eq!(f.num(), &from_terms(&[(-1, 0, 0)]));
        assert_eq!(f.den(), &from_terms(&[(1, 1, 1), (-1, 0, 0)]));
        assert_eq!(print_canonical(&f), "-1/(x*y - 1)");
        let g = parse_rfunc("1/(2*y^2)").unwrap();
        assert_eq!(print_canonical(&g), "1/(2*y^2)");
        let e = parse("1/(1 - x*z)").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 9, .. }), "{e:?}");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse("2x"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse("(x + 1"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_rfunc("x^-1"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_rfunc("x^y"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_rfunc("1/(x-x)"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse("xy"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn print_parse_roundtrip() {
        for s in ["1/(1 - x - y)", "(x^3*y + 2)/(x - y)^2", "7", "-x/(3*y^2 + x)", "0", "(2*x + 4)/(6*y)", "1/(x*y)", "y/(x^2*y^3)", "-1/x^2"] {
            let f = parse_rfunc(s).unwrap();
            let printed = print_canonical(&f);
            assert_eq!(parse_rfunc(&printed).unwrap(), f, "{s} -> {printed}");
        }
    }

    #[test]
    fn diffop_roundtrip() {
        let l = diffop_from_ints(&[&[2], &[-1, 4]]);
        let s = print_diffop(&l);
        assert_eq!(s, "(4*x - 1)*Dx^1 + (2)");
        assert_eq!(parse_diffop(&s).unwrap(), l);
        assert_eq!(parse_diffop("x*Dx^2 - Dx + 3").unwrap(), diffop_from_ints(&[&[3], &[-1], &[0, 1]]));
        assert!(parse_diffop("Dx*x").is_err());
    }
}
