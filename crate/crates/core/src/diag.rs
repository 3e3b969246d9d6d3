//! Diagonals of bivariate rational power series.
//!
//! For a power series `f = sum f_{ij} x^i y^j`, the diagonal is
//! `sum f_{nn} x^n`. It is the residue in `y` of `f(y, x/y)/y` (or, after
//! exchanging the variables, the residue in `x` of `f(y/x, x)/x`), so any
//! telescoper of the substituted function annihilates it.

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::diffop::DiffOp;
use crate::algebra::poly::Poly;
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::{rat, Rat, Ring};
use crate::error::{Error, Result};
use crate::telescope::{self, Options, Telescoper};

/// Leading coefficients `c_0, ..., c_{N-1}` of a univariate series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesVec {
    pub coefficients: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Substitution {
    /// `f(y, x/y) / y`
    #[default]
    YXy,
    /// `f(y/x, x) / x`
    YxX,
}

impl Substitution {
    pub fn name(self) -> &'static str {
        match self {
            Substitution::YXy => "y_xy",
            Substitution::YxX => "yx_x",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "y_xy" => Some(Substitution::YXy),
            "yx_x" => Some(Substitution::YxX),
            _ => None,
        }
    }
}

fn check_power_series(f: &RFunc) -> Result<()> {
    if bpoly::coeff(f.den(), 0, 0).is_zero() {
        return Err(Error::NotPowerSeries("denominator vanishes at the origin".into()));
    }
    Ok(())
}

/// `sum c x^i y^j -> sum c x^j y^(i + e - j)` with `e = deg_y`-shift, i.e.
/// `p(y, x/y) y^e`.
fn subst_y_xy(p: &BPoly, e: usize) -> BPoly {
    let mut terms = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                terms.push((a.clone(), j, i + e - j));
            }
        }
    }
    from_big_terms(&terms)
}

fn from_big_terms(terms: &[(crate::algebra::ring::Int, usize, usize)]) -> BPoly {
    let ylen = terms.iter().map(|t| t.2 + 1).max().unwrap_or(0);
    let mut rows: Vec<Vec<crate::algebra::ring::Int>> = vec![Vec::new(); ylen];
    for (c, i, j) in terms {
        let r = &mut rows[*j];
        if r.len() <= *i {
            r.resize(*i + 1, crate::algebra::ring::Int::from(0));
        }
        r[*i] += c;
    }
    Poly::new(rows.into_iter().map(Poly::new).collect())
}

/// The substituted function whose residue is the diagonal.
pub fn diagonal_substitute(f: &RFunc, variant: Substitution) -> Result<RFunc> {
    check_power_series(f)?;
    let (num, den) = match variant {
        Substitution::YXy => (f.num().clone(), f.den().clone()),
        Substitution::YxX => (bpoly::swap(f.num()), bpoly::swap(f.den())),
    };
    // with x and y exchanged, f(y/x, x)/x is the swap of g(y, x/y)/y
    let e = bpoly::deg_y(&num).max(bpoly::deg_y(&den));
    let n = subst_y_xy(&num, e);
    let d = subst_y_xy(&den, e).shift(1);
    let g = RFunc::new(n, d);
    Ok(match variant {
        Substitution::YXy => g,
        Substitution::YxX => g.swap_xy(),
    })
}

/// First `n` coefficients of the diagonal, from the recurrence
/// `den * S = num` on the `n x n` box of bivariate coefficients.
pub fn diagonal_series(f: &RFunc, n: usize) -> Result<SeriesVec> {
    check_power_series(f)?;
    let q00 = rat(&bpoly::coeff(f.den(), 0, 0));
    let qterms: Vec<(usize, usize, Rat)> = f
        .den()
        .coeffs()
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.coeffs().iter().enumerate().map(move |(i, a)| (i, j, rat(a))))
        .filter(|(i, j, a)| !a.is_zero() && (*i, *j) != (0, 0))
        .collect();
    let mut s = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut v = rat(&bpoly::coeff(f.num(), i, j));
            for (a, b, q) in &qterms {
                if *a <= i && *b <= j {
                    v -= q * &s[i - a][j - b];
                }
            }
            s[i][j] = v / &q00;
        }
    }
    Ok(SeriesVec { coefficients: (0..n).map(|k| s[k][k].clone()).collect() })
}

/// The function telescoped in `y` for `variant`, and its telescoper.
pub fn diagonal_telescoper(f: &RFunc, variant: Substitution, opts: &Options) -> Result<(RFunc, Telescoper)> {
    let g = diagonal_substitute(f, variant)?;
    let g = match variant {
        Substitution::YXy => g,
        Substitution::YxX => g.swap_xy(),
    };
    let t = telescope::telescope(&g, opts)?;
    Ok((g, t))
}

/// A telescoper of the substituted function; it annihilates the diagonal.
pub fn diagonal_annihilator(f: &RFunc, variant: Substitution, opts: &Options) -> Result<DiffOp> {
    Ok(diagonal_telescoper(f, variant, opts)?.1.op)
}

/// Number of terms needed by [`ode_check`] for `op`.
pub fn required_terms(op: &DiffOp) -> usize {
    op.order() + op.deg_x() + 2
}

/// Terms recommended for verification: `2 (order + deg_x) + 10`.
pub fn verification_terms(op: &DiffOp) -> usize {
    2 * (op.order() + op.deg_x()) + 10
}

/// Whether `L(s)` vanishes in every coefficient determined by the
/// truncated series.
pub fn ode_check(op: &DiffOp, s: &SeriesVec) -> Result<bool> {
    let n = s.coefficients.len();
    let required = required_terms(op);
    if n < required {
        return Err(Error::InsufficientTerms { required });
    }
    let rho = op.order();
    // coefficient m of x^k D^i s is a (m - k + i)! / (m - k)! s_{m-k+i}
    for m in 0..n - rho {
        let mut acc = Rat::zero();
        for (i, eta) in op.coeffs().iter().enumerate() {
            for (k, a) in eta.coeffs().iter().enumerate() {
                if a.is_zero() || k > m {
                    continue;
                }
                let base = m - k;
                let mut fall = crate::algebra::ring::Int::from(1);
                for t in 1..=i {
                    fall *= base + t;
                }
                acc += rat(&(a * fall)) * &s.coefficients[base + i];
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diffop::{diffop_from_ints, op_right_divide};
    use crate::algebra::ring::rat_i;
    use crate::parser::parse_rfunc;

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat_i(c)).collect()
    }

    #[test]
    fn substitutions() {
        let f = parse_rfunc("1/(1 - x - y)").unwrap();
        assert_eq!(diagonal_substitute(&f, Substitution::YXy).unwrap(), parse_rfunc("1/(y - y^2 - x)").unwrap());
        let f = parse_rfunc("1/(1 - x*y)").unwrap();
        assert_eq!(diagonal_substitute(&f, Substitution::YXy).unwrap(), parse_rfunc("1/(y*(1 - x))").unwrap());
        let one = RFunc::one();
        assert_eq!(diagonal_substitute(&one, Substitution::YXy).unwrap(), parse_rfunc("1/y").unwrap());
        assert_eq!(diagonal_substitute(&one, Substitution::YxX).unwrap(), parse_rfunc("1/x").unwrap());
        let f = parse_rfunc("1/(1 - 2*x - y^2)").unwrap();
        assert_eq!(
            diagonal_substitute(&f, Substitution::YxX).unwrap(),
            parse_rfunc("1/(x - 2*y - x^3)").unwrap()
        );
        assert!(matches!(
            diagonal_substitute(&parse_rfunc("1/(x - y)").unwrap(), Substitution::YXy),
            Err(Error::NotPowerSeries(_))
        ));
    }

    #[test]
    fn series_examples() {
        let s = diagonal_series(&parse_rfunc("1/(1 - x - y)").unwrap(), 5).unwrap();
        assert_eq!(s.coefficients, rats(&[1, 2, 6, 20, 70]));
        let s = diagonal_series(&parse_rfunc("1/(1 - x*y)").unwrap(), 4).unwrap();
        assert_eq!(s.coefficients, rats(&[1, 1, 1, 1]));
        let s = diagonal_series(&RFunc::one(), 3).unwrap();
        assert_eq!(s.coefficients, rats(&[1, 0, 0]));
    }

    #[test]
    fn ode_check_examples() {
        let cb: Vec<i64> = (0..30u64).map(|n| crate::algebra::ring::binomial(2 * n, n).try_into().unwrap()).collect();
        let s = SeriesVec { coefficients: rats(&cb) };
        // (1 - 4x) D - 2
        assert!(ode_check(&diffop_from_ints(&[&[-2], &[1, -4]]), &s).unwrap());
        assert!(!ode_check(&diffop_from_ints(&[&[-3], &[1, -4]]), &s).unwrap());
        assert!(ode_check(&DiffOp::one(), &SeriesVec { coefficients: rats(&[0, 0, 0]) }).unwrap());
        assert_eq!(
            ode_check(&diffop_from_ints(&[&[-2], &[1, -4]]), &SeriesVec { coefficients: rats(&[1, 2]) }),
            Err(Error::InsufficientTerms { required: 4 })
        );
    }

    #[test]
    fn annihilators() {
        let f = parse_rfunc("1/(1 - x - y)").unwrap();
        for v in [Substitution::YXy, Substitution::YxX] {
            let l = diagonal_annihilator(&f, v, &Options::default()).unwrap();
            let (_, r) = op_right_divide(&l, &diffop_from_ints(&[&[-2], &[1, -4]]));
            assert!(r.is_zero());
            assert!(ode_check(&l, &diagonal_series(&f, 30).unwrap()).unwrap());
        }
        let f = parse_rfunc("1/(1 - x*y)").unwrap();
        let l = diagonal_annihilator(&f, Substitution::YXy, &Options::default()).unwrap();
        assert!(ode_check(&l, &diagonal_series(&f, 20).unwrap()).unwrap());
        assert!(ode_check(&diffop_from_ints(&[&[-1], &[1, -1]]), &diagonal_series(&f, 20).unwrap()).unwrap());
    }
}
