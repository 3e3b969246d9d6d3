//! Random instances by denominator factorization pattern.
//!
//! A pattern lists the bidegrees `b_1, ..., b_m` of the factors of
//! `Q = Q_1 Q_2^2 ... Q_m^m`, with `sum i b_i` equal to the target bidegree
//! and `b_i = (0, 0)` meaning that `Q_i` is absent. Factors of bidegree
//! `(a, 0)` (pure `x` polynomials) are allowed; with them the count for
//! target `(5, 5)` and `m <= 5` is 49.

use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::bpoly::{self, BPoly};
use crate::algebra::poly::Poly;
use crate::algebra::rfunc::RFunc;
use crate::algebra::ring::Int;
use crate::algebra::zpoly;

/// Factor bidegrees by multiplicity: `factors[i]` is the bidegree of
/// `Q_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub factors: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(factors: Vec<(usize, usize)>) -> Self {
        Pattern { factors }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.factors.iter().enumerate().fold((0, 0), |(x, y), (i, &(a, c))| (x + (i + 1) * a, y + (i + 1) * c))
    }

    /// `(bidegree, multiplicity)` of the factors present.
    pub fn parts(&self) -> Vec<((usize, usize), usize)> {
        self.factors.iter().enumerate().filter(|(_, b)| **b != (0, 0)).map(|(i, &b)| (b, i + 1)).collect()
    }

    /// Number of factors counted with multiplicity.
    pub fn weight(&self) -> usize {
        self.parts().iter().map(|(_, m)| m).sum()
    }

    /// Parse `"(1,1)^2 (3,3)^1"`-style text.
    pub fn parse(s: &str) -> Option<Self> {
        let mut factors = Vec::new();
        for tok in s.split_whitespace() {
            let (b, m) = tok.split_once('^').unwrap_or((tok, "1"));
            let b = b.strip_prefix('(')?.strip_suffix(')')?;
            let (a, c) = b.split_once(',')?;
            let (a, c, m): (usize, usize, usize) = (a.trim().parse().ok()?, c.trim().parse().ok()?, m.parse().ok()?);
            if m == 0 {
                return None;
            }
            if factors.len() < m {
                factors.resize(m, (0, 0));
            }
            if factors[m - 1] != (0, 0) {
                return None;
            }
            factors[m - 1] = (a, c);
        }
        Some(Pattern { factors })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|((a, c), m)| format!("({a},{c})^{m}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All patterns adding up to `target` with multiplicities up to `max_mult`.
pub fn patterns(target: (usize, usize), max_mult: usize) -> Vec<Pattern> {
    fn rec(i: usize, max: usize, rx: usize, ry: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Pattern>) {
        if i > max {
            if rx == 0 && ry == 0 {
                let mut f = cur.clone();
                while f.last() == Some(&(0, 0)) {
                    f.pop();
                }
                out.push(Pattern { factors: f });
            }
            return;
        }
        for a in 0..=rx / i {
            for c in 0..=ry / i {
                cur.push((a, c));
                rec(i + 1, max, rx - i * a, ry - i * c, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, max_mult, target.0, target.1, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchInstance {
    pub seed: u64,
    pub pattern: Pattern,
    pub p: BPoly,
    pub q: BPoly,
    /// Target size of the expanded coefficients; `None` for small
    /// single-digit factors.
    pub coeff_digits: Option<usize>,
}

impl BenchInstance {
    pub fn f(&self) -> RFunc {
        RFunc::new(self.p.clone(), self.q.clone())
    }
}

fn mix(seed: u64, pattern: &Pattern) -> u64 {
    // FNV-1a over the pattern entries, then the seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &(a, c) in &pattern.factors {
        for v in [a as u64, c as u64] {
            h ^= v;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Coefficient sampler: nonzero integers of magnitude below `bound`.
struct Sampler {
    rng: ChaCha8Rng,
    bound: BigInt,
}

impl Sampler {
    fn coeff(&mut self) -> Int {
        let one = BigInt::from(1);
        let v = if self.bound <= one { one.clone() } else { self.rng.gen_bigint_range(&one, &self.bound) };
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// Dense polynomial of exact bidegree `(a, c)`.
    fn poly(&mut self, a: usize, c: usize) -> BPoly {
        Poly::new((0..=c).map(|_| Poly::new((0..=a).map(|_| self.coeff()).collect())).collect())
    }

    fn exact_digits(&mut self, d: usize) -> Int {
        let lo = BigInt::from(10).pow(d as u32 - 1);
        let hi = BigInt::from(10).pow(d as u32);
        let v = self.rng.gen_bigint_range(&lo, &hi);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }
}

/// `10^t` rounded down, for real `t >= 0`.
fn pow10(t: f64) -> BigInt {
    let whole = t.floor();
    let frac = ((10f64.powf(t - whole)) * 1e6).round() as i64;
    BigInt::from(10).pow(whole as u32) * BigInt::from(frac) / BigInt::from(1_000_000)
}

fn is_good_factor(q: &BPoly, c: usize) -> bool {
    if c == 0 {
        let u = &q.coeffs()[0];
        return zpoly::gcd(u, &u.derivative()).len() == 1 && zpoly::icontent(u) == BigInt::from(1);
    }
    if bpoly::content_x(q).len() != 1 || bpoly::icontent(q) != BigInt::from(1) {
        return false;
    }
    bpoly::deg_y(&bpoly::gcd(q, &bpoly::dy(q))) == 0
}

fn coprime(a: &BPoly, b: &BPoly) -> bool {
    let g = bpoly::gcd(a, b);
    g.len() == 1 && g.coeffs()[0].len() == 1
}

fn sample_factors(s: &mut Sampler, pattern: &Pattern) -> Vec<(BPoly, usize)> {
    let mut out: Vec<(BPoly, usize)> = Vec::new();
    for ((a, c), m) in pattern.parts() {
        loop {
            let q = s.poly(a, c);
            if is_good_factor(&q, c) && out.iter().all(|(o, _)| coprime(o, &q)) {
                out.push((q, m));
                break;
            }
        }
    }
    out
}

/// Deterministic instance for `(pattern, seed)`. With `coeff_digits = D`
/// the expanded denominator's largest coefficient has `D - 1 ..= D + 1`
/// digits and the numerator has `D`-digit coefficients; the numerator has
/// the bidegree of the pattern.
pub fn gen_instance(pattern: &Pattern, seed: u64, coeff_digits: Option<usize>) -> BenchInstance {
    let mut s = Sampler { rng: ChaCha8Rng::seed_from_u64(mix(seed, pattern)), bound: BigInt::from(10) };
    let (dx, dy) = pattern.bidegree();
    let q = match coeff_digits {
        None => product(&sample_factors(&mut s, pattern)),
        Some(d) => {
            let w = pattern.weight().max(1) as f64;
            let mut t = (d as f64 / w).max(0.5);
            let mut tries = 0;
            loop {
                s.bound = pow10(t);
                let q = product(&sample_factors(&mut s, pattern));
                let m = zpoly_max_digits(&q) as f64;
                tries += 1;
                // unreachable targets (too few digits for the pattern) end at the closest size
                if (m - d as f64).abs() <= 1.0 || tries == 500 {
                    break q;
                }
                t = (t + (d as f64 - m) / w * 0.7).max(0.05);
            }
        }
    };
    let p = loop {
        let p = match coeff_digits {
            None => {
                s.bound = BigInt::from(10);
                s.poly(dx, dy)
            }
            Some(d) => Poly::new((0..=dy).map(|_| Poly::new((0..=dx).map(|_| s.exact_digits(d)).collect())).collect()),
        };
        if coprime(&p, &q) {
            break p;
        }
    };
    BenchInstance { seed, pattern: pattern.clone(), p, q, coeff_digits }
}

fn product(fs: &[(BPoly, usize)]) -> BPoly {
    let mut q = BPoly::one();
    for (f, m) in fs {
        q = q.mul(&f.pow(*m));
    }
    q
}

fn zpoly_max_digits(q: &BPoly) -> usize {
    q.coeffs().iter().map(zpoly::max_digits).max().unwrap_or(1)
}

/// Dense random polynomial of bidegree at most `(dx, dy)` with coefficients
/// in `-bound..=bound`.
pub fn random_bpoly(rng: &mut impl Rng, dx: usize, dy: usize, bound: i64) -> BPoly {
    Poly::new((0..=dy).map(|_| Poly::new((0..=dx).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_counts() {
        assert_eq!(patterns((5, 5), 5).len(), 49);
        assert!(patterns((3, 3), 5).iter().all(|p| p.bidegree() == (3, 3)));
    }

    #[test]
    fn pattern_text() {
        let p = Pattern::parse("(1,1)^2 (3,3)").unwrap();
        assert_eq!(p.bidegree(), (5, 5));
        assert_eq!(p.to_string(), "(3,3)^1 (1,1)^2");
        assert_eq!(Pattern::parse(&p.to_string()), Some(p));
        assert_eq!(Pattern::parse("(1,1)^0"), None);
    }

    #[test]
    fn instances_are_deterministic_and_shaped() {
        let p = Pattern::parse("(1,1)^2 (3,3)^1").unwrap();
        let a = gen_instance(&p, 7, None);
        assert_eq!(a, gen_instance(&p, 7, None));
        assert_ne!(a, gen_instance(&p, 8, None));
        assert_eq!(bpoly::bidegree(&a.q), (5, 5));
        assert!(coprime(&a.p, &a.q));
        let single = gen_instance(&Pattern::parse("(1,1)").unwrap(), 1, None);
        assert_eq!(bpoly::bidegree(&single.q), (1, 1));
    }

    #[test]
    fn digit_targeting() {
        for pat in patterns((3, 3), 5).iter().take(6) {
            let inst = gen_instance(pat, 3, Some(26));
            let m = zpoly_max_digits(&inst.q);
            assert!((25..=27).contains(&m), "{pat}: {m}");
            assert_eq!(zpoly_max_digits(&inst.p), 26);
        }
    }
}
