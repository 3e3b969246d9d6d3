//! Linear algebra over `Z[x]` (fraction-free) and over `Q` (multi-modular).
//!
//! # Nullspaces over `Z[x]`
//!
//! [`nullspace_fraction_free`] runs a fraction-free Gauss–Jordan elimination: with the
//! current pivot `p` and previous pivot `prev`, every other row becomes
//! `(p * row - a * pivot_row) / prev`, an exact division. After the last
//! step every pivot equals the same determinant-like value `d`, and the
//! kernel vector of a free column `f` is `d` at `f` and `-a[i][f]` at the
//! pivot column of row `i`. Kernel vectors are made primitive over `Z[x]`
//! with the first nonzero entry having positive leading coefficient.
//! [`nullspace`] uses it for systems with few rows or columns.
//!
//! Larger systems take a modular path: the reduced
//! echelon kernel basis is computed modulo 62-bit primes by evaluation at
//! random points and rational function reconstruction in `x`, then lifted by
//! Chinese remaindering and rational number reconstruction. The lifted basis
//! is accepted once `M v = 0` holds exactly, and the rank of any image is a
//! lower bound for the generic rank, so a verified basis of the image's
//! size is a basis.
//!
//! # Probes
//!
//! Ranks are probed by evaluating at an integer point modulo a 62-bit prime.
//! The rank of an image never exceeds the generic rank, so a full-rank probe
//! certifies independence; an apparent dependence is always confirmed with
//! exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::modp::{self, Crt};
use crate::algebra::ring::{Field, Int, Rat, Ring};
use crate::algebra::zpoly::{self, ZPoly};
use crate::deadline;
use crate::error::{Error, Result};

/// Dense matrix with `Z[x]` entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<ZPoly>>,
}

impl PMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PMatrix { rows, cols, data: vec![vec![ZPoly::zero(); cols]; rows] }
    }

    pub fn from_rows(data: Vec<Vec<ZPoly>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        PMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<ZPoly>]) -> Self {
        let rows = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ZPoly {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ZPoly) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[ZPoly] {
        &self.data[i]
    }

    pub fn mul_vec(&self, v: &[ZPoly]) -> Vec<ZPoly> {
        self.data
            .iter()
            .map(|row| {
                let mut acc = ZPoly::zero();
                for (a, b) in row.iter().zip(v) {
                    acc.mul_acc(a, b);
                }
                acc
            })
            .collect()
    }

    /// Maximum `x`-degree of the entries.
    pub fn max_degree(&self) -> usize {
        self.data.iter().flatten().map(|e| e.deg0()).max().unwrap_or(0)
    }

    fn eval_mod(&self, x0: u64, p: u64) -> Vec<Vec<u64>> {
        self.data
            .iter()
            .map(|row| row.iter().map(|e| modp::upoly::eval(&zpoly::reduce_mod(e, p), x0, p)).collect())
            .collect()
    }
}

fn pivot_cost(e: &ZPoly) -> (usize, u64) {
    (e.deg0(), e.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0))
}

/// Fraction-free Gauss–Jordan on the first `ncols` columns of `a` (all
/// columns are transformed). Returns the pivot `(row, col)` list and the
/// final common pivot value.
fn gauss_jordan(a: &mut [Vec<ZPoly>], ncols: usize) -> Result<(Vec<usize>, ZPoly)> {
    let rows = a.len();
    let total = a.first().map_or(0, |r| r.len());
    let mut prev = ZPoly::one();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows {
            break;
        }
        deadline::check()?;
        let piv = (rank..rows).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| pivot_cost(&a[i][col]));
        let Some(piv) = piv else { continue };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        let (before, rest) = a.split_at_mut(rank);
        let (prow, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[col].clone();
            for j in 0..total {
                if j == col {
                    continue;
                }
                let mut v = row[j].mul(&p);
                if !f.is_zero() && !prow[j].is_zero() {
                    v.sub_assign(&f.mul(&prow[j]));
                }
                row[j] = if prev.is_one() || v.is_zero() {
                    v
                } else {
                    zpoly::div_exact(&v, &prev).ok_or_else(|| Error::Internal("inexact fraction-free step".into()))?
                };
            }
            row[col] = ZPoly::zero();
        }
        // earlier pivot rows now carry pivot p in their own pivot column
        prev = p;
        pivot_cols.push(col);
        rank += 1;
    }
    Ok((pivot_cols, prev))
}

/// Normalize a kernel vector: primitive over `Z[x]`, first nonzero entry
/// with positive leading coefficient.
pub fn normalize_vector(v: &mut [ZPoly]) {
    let mut g = ZPoly::zero();
    for e in v.iter() {
        g = zpoly::gcd(&g, e);
    }
    if g.is_zero() {
        return;
    }
    let first = v.iter().find(|e| !e.is_zero()).unwrap();
    if first.lc() < BigInt::from(0) {
        g = g.neg();
    }
    for e in v.iter_mut() {
        *e = zpoly::div_exact(e, &g).expect("content divides");
    }
}

/// At most this many rows or columns: eliminate fraction-free.
const SMALL_RANK: usize = 6;

/// Basis of the right nullspace over `Q(x)`, as primitive `Z[x]` vectors:
/// one vector per free column of the reduced echelon form, in column
/// order, with the first nonzero entry having positive leading coefficient.
pub fn nullspace(m: &PMatrix) -> Result<Vec<Vec<ZPoly>>> {
    if m.rows.min(m.cols) <= SMALL_RANK {
        nullspace_fraction_free(m)
    } else {
        nullspace_modular(m)
    }
}

fn nullspace_modular(m: &PMatrix) -> Result<Vec<Vec<ZPoly>>> {
    if m.cols == 0 {
        return Ok(Vec::new());
    }
    if m.rows == 0 {
        return Ok((0..m.cols)
            .map(|f| (0..m.cols).map(|c| if c == f { ZPoly::one() } else { ZPoly::zero() }).collect())
            .collect());
    }
    let mut primes = modp::PrimeStream::new();
    let mut best: Option<(ImageKey, Crt)> = None;
    let mut hard = 0;
    let mut gate = None;
    let mut hint = 8;
    loop {
        deadline::check()?;
        let p = primes.next().expect("prime supply exhausted");
        let img = kernel_image(m, p, hint)?;
        hint = img.need;
        if img.key.pivots.len() == m.cols {
            return Ok(Vec::new());
        }
        let residues: Vec<u64> = img.flatten();
        match &mut best {
            Some((key, crt)) if *key == img.key => crt.absorb(&residues, p),
            Some((key, _)) if !img.key.better_than(key) => continue,
            _ => {
                best = Some((img.key, Crt::new(&residues, p)));
                hard = 0;
                gate = None;
            }
        }
        let (key, crt) = best.as_ref().unwrap();
        // cheap gate: the value that failed last time must be stable
        let g = modp::rational_reconstruct(&crt.values[hard], &crt.modulus);
        if g.is_none() || g != gate {
            gate = g;
            continue;
        }
        let n = crt.values.len();
        let mut recon = vec![None; n];
        let bound = (&crt.modulus >> 1u32).sqrt();
        let mut den = BigInt::from(1);
        for i in (hard..n).chain(0..hard) {
            // most values share a denominator: try the running one first
            let w = (&crt.values[i] * &den).mod_floor(&crt.modulus);
            let w = if w > (&crt.modulus >> 1u32) { w - &crt.modulus } else { w };
            if w.abs() <= bound {
                let g = w.gcd(&den);
                recon[i] = Some((&w / &g, &den / &g));
                continue;
            }
            match modp::rational_reconstruct(&crt.values[i], &crt.modulus) {
                Some(r) => {
                    den = den.lcm(&r.1);
                    if den > bound {
                        den = r.1.clone();
                    }
                    recon[i] = Some(r);
                }
                None => {
                    hard = i;
                    gate = None;
                    break;
                }
            }
        }
        let Some(recon) = recon.into_iter().collect::<Option<Vec<_>>>() else { continue };
        let basis = key.unflatten(&recon);
        if basis.iter().all(|v| m.mul_vec(v).iter().all(|e| e.is_zero())) {
            return Ok(basis);
        }
        gate = None;
    }
}

/// Shape of a modular kernel image: pivot columns and, per free column,
/// the lengths of the entries of `D u` with `u` the echelon kernel vector
/// and `D` its monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ImageKey {
    cols: usize,
    pivots: Vec<usize>,
    lens: Vec<Vec<usize>>,
}

impl ImageKey {
    fn better_than(&self, other: &ImageKey) -> bool {
        if self.pivots.len() != other.pivots.len() {
            return self.pivots.len() > other.pivots.len();
        }
        if self.pivots != other.pivots {
            return self.pivots < other.pivots;
        }
        let total = |k: &ImageKey| k.lens.iter().flatten().sum::<usize>();
        total(self) > total(other)
    }

    fn unflatten(&self, recon: &[(Int, Int)]) -> Vec<Vec<ZPoly>> {
        let mut it = recon.iter();
        let mut basis = Vec::with_capacity(self.lens.len());
        for lens in &self.lens {
            let entries: Vec<Vec<&(Int, Int)>> = lens.iter().map(|&n| it.by_ref().take(n).collect()).collect();
            let mut den = BigInt::from(1);
            for (_, d) in entries.iter().flatten() {
                den = den.lcm(d);
            }
            let mut v: Vec<ZPoly> = entries
                .iter()
                .map(|e| ZPoly::new(e.iter().map(|(n, d)| n * (&den / d)).collect()))
                .collect();
            normalize_vector(&mut v);
            basis.push(v);
        }
        basis
    }
}

struct KernelImage {
    key: ImageKey,
    /// Number of fitting points that sufficed.
    need: usize,
    /// `polys[k][c]`: entry `c` of the `k`-th kernel vector times its
    /// denominator, mod p.
    polys: Vec<Vec<Vec<u64>>>,
}

impl KernelImage {
    fn flatten(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (vk, lens) in self.polys.iter().zip(&self.key.lens) {
            for (e, &n) in vk.iter().zip(lens) {
                out.extend(e.iter().copied());
                out.extend(std::iter::repeat(0).take(n - e.len()));
            }
        }
        out
    }
}

const HELD_OUT: usize = 3;

/// Kernel of `M mod p` over `F_p(x)` by evaluation at random points and
/// rational reconstruction, checked on held-out points.
fn kernel_image(m: &PMatrix, p: u64, start: usize) -> Result<KernelImage> {
    let reduced: Vec<Vec<Vec<u64>>> =
        m.data.iter().map(|row| row.iter().map(|e| zpoly::reduce_mod(e, p)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut xs: Vec<u64> = Vec::new();
    // values[k][c][point]
    let mut values: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut pivots: Option<Vec<usize>> = None;
    let mut target = start.max(4);
    loop {
        while xs.len() < target + HELD_OUT {
            deadline::check()?;
            let x0 = rng.gen_range(1..p);
            if xs.contains(&x0) {
                continue;
            }
            let mut a: Vec<Vec<u64>> =
                reduced.iter().map(|row| row.iter().map(|e| modp::upoly::eval(e, x0, p)).collect()).collect();
            let piv = modp::rref_mod(&mut a, p);
            let reset = match &pivots {
                None => true,
                Some(b) => piv.len() > b.len() || (piv.len() == b.len() && piv < *b),
            };
            if reset {
                xs.clear();
                values = vec![vec![Vec::new(); m.cols]; m.cols - piv.len()];
                pivots = Some(piv.clone());
            } else if Some(&piv) != pivots.as_ref() {
                continue;
            }
            let free: Vec<usize> = (0..m.cols).filter(|c| !piv.contains(c)).collect();
            for (k, &f) in free.iter().enumerate() {
                for c in 0..m.cols {
                    let v = if c == f {
                        1
                    } else if let Some(i) = piv.iter().position(|&q| q == c) {
                        (p - a[i][f]) % p
                    } else {
                        0
                    };
                    values[k][c].push(v);
                }
            }
            xs.push(x0);
        }
        let pivots = pivots.as_ref().unwrap();
        if pivots.len() == m.cols {
            return Ok(KernelImage {
                key: ImageKey { cols: m.cols, pivots: pivots.clone(), lens: Vec::new() },
                need: target,
                polys: Vec::new(),
            });
        }
        let fit = &xs[..target];
        let check = &xs[target..];
        let interp = modp::upoly::Interpolator::new(fit, p);
        let vanish = modp::upoly::vanishing(fit, p);
        let mut polys: Vec<Vec<Vec<u64>>> = Vec::with_capacity(values.len());
        let mut need = 0;
        let mut ok = true;
        'vectors: for vk in &values {
            let mut den = vec![1u64];
            let mut entries: Vec<Vec<u64>> = Vec::with_capacity(vk.len());
            for col in vk {
                let scaled = |x: u64, v: u64, den: &[u64]| modp::mul_mod(modp::upoly::eval(den, x, p), v, p);
                let dv: Vec<u64> = fit.iter().zip(col).map(|(&x, &v)| scaled(x, v, &den)).collect();
                let mut e = interp.interpolate(&dv);
                let fits = |e: &[u64], den: &[u64]| {
                    check.iter().zip(&col[target..]).all(|(&x, &v)| modp::upoly::eval(e, x, p) == scaled(x, v, den))
                };
                if !fits(&e, &den) {
                    let Some((_, d)) = modp::upoly::ratrecon(&vanish, &e, p) else {
                        ok = false;
                        break 'vectors;
                    };
                    // earlier entries pick up the new denominator factor
                    for prev in entries.iter_mut() {
                        *prev = modp::upoly::mul(prev, &d, p);
                    }
                    den = modp::upoly::mul(&den, &d, p);
                    let dv: Vec<u64> = fit.iter().zip(col).map(|(&x, &v)| scaled(x, v, &den)).collect();
                    e = interp.interpolate(&dv);
                    if !fits(&e, &den) {
                        ok = false;
                        break 'vectors;
                    }
                }
                if e.len() + den.len() > target {
                    ok = false;
                    break 'vectors;
                }
                need = need.max(e.len() + den.len());
                entries.push(e);
            }
            if entries.iter().any(|e| e.len() + den.len() > target) {
                ok = false;
                break;
            }
            polys.push(entries);
        }
        if ok {
            let lens = polys.iter().map(|v| v.iter().map(|e| e.len()).collect()).collect();
            return Ok(KernelImage { key: ImageKey { cols: m.cols, pivots: pivots.clone(), lens }, need: need + 1, polys });
        }
        target *= 2;
    }
}

/// [`nullspace`] by fraction-free elimination over `Z[x]`.
pub fn nullspace_fraction_free(m: &PMatrix) -> Result<Vec<Vec<ZPoly>>> {
    let mut a = m.data.clone();
    let (pivots, d) = gauss_jordan(&mut a, m.cols)?;
    let mut basis = Vec::new();
    for f in 0..m.cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![ZPoly::zero(); m.cols];
        v[f] = d.clone();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = a[i][f].neg();
        }
        normalize_vector(&mut v);
        basis.push(v);
    }
    Ok(basis)
}

/// Solve `M X = B` for square nonsingular `M`: returns `(X_num, den)` with
/// `X = X_num / den`, `X_num[i][k]` the `i`-th entry of the `k`-th solution.
pub fn solve(m: &PMatrix, rhs: &[Vec<ZPoly>]) -> Result<(Vec<Vec<ZPoly>>, ZPoly)> {
    let n = m.rows;
    assert_eq!(n, m.cols, "solve needs a square matrix");
    let mut a: Vec<Vec<ZPoly>> = m.data.clone();
    for (i, row) in a.iter_mut().enumerate() {
        for b in rhs {
            row.push(b[i].clone());
        }
    }
    let (pivots, d) = gauss_jordan(&mut a, n)?;
    if pivots.len() < n {
        return Err(Error::Internal("singular system".into()));
    }
    let mut x = vec![vec![ZPoly::zero(); rhs.len()]; n];
    for (i, &c) in pivots.iter().enumerate() {
        for k in 0..rhs.len() {
            x[c][k] = a[i][n + k].clone();
        }
    }
    Ok((x, d))
}

/// Exact rank over `Q` of `M(x0)`.
pub fn rank_probe(m: &PMatrix, x0: &Rat) -> usize {
    let mut a: Vec<Vec<Rat>> =
        m.data.iter().map(|row| row.iter().map(|e| zpoly::eval_rat(e, x0)).collect()).collect();
    let rows = m.rows;
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].inv();
        let prow = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for j in c..m.cols {
                let t = f.mul(&prow[j]);
                row[j].sub_assign(&t);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `M(x0) mod p`; never exceeds the generic rank of `M`.
pub fn rank_probe_mod(m: &PMatrix, x0: u64, p: u64) -> usize {
    let mut a = m.eval_mod(x0, p);
    modp::rank_mod(&mut a, p)
}

/// Incremental search for the first linear dependence among vectors over
/// `Q(x)` given by `Z[x]` numerators.
pub struct DependenceFinder {
    vectors: Vec<Vec<ZPoly>>,
    rng: ChaCha8Rng,
    x0: u64,
    prime: u64,
}

impl DependenceFinder {
    pub fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x0 = rng.gen_range(0..1u64 << 30);
        DependenceFinder { vectors: Vec::new(), rng, x0, prime: modp::primes(1)[0] }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn push(&mut self, v: Vec<ZPoly>) {
        self.vectors.push(v);
    }

    /// Check the vectors pushed so far. Returns the primitive relation
    /// `eta` with `sum eta_i v_i = 0` when the last vector is the first
    /// dependent one.
    pub fn check(&mut self) -> Result<Option<Vec<ZPoly>>> {
        let m = PMatrix::from_columns(&self.vectors);
        if m.rows == 0 {
            let mut v = vec![ZPoly::zero(); self.vectors.len()];
            *v.last_mut().unwrap() = ZPoly::one();
            return Ok(Some(v));
        }
        if rank_probe_mod(&m, self.x0, self.prime) == self.vectors.len() {
            return Ok(None);
        }
        let ns = nullspace(&m)?;
        if ns.is_empty() {
            // unlucky probe point
            self.x0 = self.rng.gen_range(0..1u64 << 30);
            return Ok(None);
        }
        if ns.len() > 1 {
            return Err(Error::Internal(format!("dependence has dimension {}, expected 1", ns.len())));
        }
        Ok(ns.into_iter().next())
    }
}

/// Kernel basis over `Q` of an integer matrix, as primitive integer
/// vectors in reduced-echelon normal form (one vector per free column).
///
/// Reduced row echelon forms modulo several primes are combined by Chinese
/// remaindering and rational reconstruction; the candidate is accepted once
/// it stabilizes and `M v = 0` holds exactly.
pub fn nullspace_rational(m: &[Vec<Int>], cols: usize) -> Result<Vec<Vec<Int>>> {
    let rows = m.len();
    let mut stream = modp::PrimeStream::new();
    let mut best: Option<(Vec<usize>, Crt)> = None;
    let mut last: Option<Vec<Vec<Int>>> = None;
    loop {
        deadline::check()?;
        let p = stream.next().expect("prime supply exhausted");
        let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|e| modp::reduce(e, p)).collect()).collect();
        let pivots = if rows == 0 { Vec::new() } else { modp::rref_mod(&mut a, p) };
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return Ok(Vec::new());
        }
        let image: Vec<u64> = (0..pivots.len()).flat_map(|i| free.iter().map(move |&f| (i, f))).map(|(i, f)| a[i][f]).collect();
        let better = match &best {
            None => true,
            Some((bp, _)) => pivots.len() > bp.len() || (pivots.len() == bp.len() && pivots < *bp),
        };
        let same = best.as_ref().is_some_and(|(bp, _)| *bp == pivots);
        if better && !same {
            best = Some((pivots.clone(), Crt::new(&image, p)));
            last = None;
        } else if same {
            best.as_mut().unwrap().1.absorb(&image, p);
        } else {
            continue;
        }
        let (bp, crt) = best.as_ref().unwrap();
        let free: Vec<usize> = (0..cols).filter(|c| !bp.contains(c)).collect();
        let mut recon = Vec::with_capacity(crt.values.len());
        let mut ok = true;
        for v in &crt.values {
            match modp::rational_reconstruct(v, &crt.modulus) {
                Some(r) => recon.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut basis = Vec::with_capacity(free.len());
        for (k, &f) in free.iter().enumerate() {
            let mut den = BigInt::from(1);
            for i in 0..bp.len() {
                den = den.lcm(&recon[i * free.len() + k].1);
            }
            let mut v = vec![BigInt::from(0); cols];
            v[f] = den.clone();
            for (i, &c) in bp.iter().enumerate() {
                let (n, d) = &recon[i * free.len() + k];
                v[c] = -(n * (&den / d));
            }
            basis.push(v);
        }
        if last.as_ref() == Some(&basis) && basis.iter().all(|v| is_kernel_vector(m, v)) {
            return Ok(basis);
        }
        last = Some(basis);
    }
}

fn is_kernel_vector(m: &[Vec<Int>], v: &[Int]) -> bool {
    m.iter().all(|row| {
        let mut acc = BigInt::from(0);
        for (a, b) in row.iter().zip(v) {
            acc.mul_acc(a, b);
        }
        acc.is_zero()
    })
}

/// Rank of an integer matrix modulo a large prime (a lower bound for the
/// rank over `Q`).
pub fn rank_mod_int(m: &[Vec<Int>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|e| modp::reduce(e, p)).collect()).collect();
    modp::rank_mod(&mut a, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::zpoly::zpoly;
    use proptest::prelude::*;
    use rand::Rng;

    fn pm(rows: &[&[&[i64]]]) -> PMatrix {
        PMatrix::from_rows(rows.iter().map(|r| r.iter().map(|e| zpoly(e)).collect()).collect())
    }

    #[test]
    fn nullspace_example() {
        // [[x, x^2], [1, x]] -> (x, -1)
        let m = pm(&[&[&[0, 1], &[0, 0, 1]], &[&[1], &[0, 1]]]);
        let ns = nullspace(&m).unwrap();
        assert_eq!(ns, vec![vec![zpoly(&[0, 1]), zpoly(&[-1])]]);
    }

    #[test]
    fn modular_kernel_on_larger_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (rows, cols) in [(6, 8), (7, 7), (5, 9)] {
            let mut data: Vec<Vec<ZPoly>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| ZPoly::new((0..5).map(|_| BigInt::from(rng.gen_range(-10i64.pow(12)..10i64.pow(12)))).collect()))
                        .collect()
                })
                .collect();
            // force a rank drop: last row is x times the first plus the second
            let dep: Vec<ZPoly> = (0..cols).map(|j| data[0][j].mul(&zpoly(&[0, 1])).add(&data[1][j])).collect();
            *data.last_mut().unwrap() = dep;
            let m = PMatrix::from_rows(data);
            let ns = nullspace_modular(&m).unwrap();
            assert_eq!(ns, nullspace_fraction_free(&m).unwrap());
            assert_eq!(ns.len(), cols - (rows - 1));
        }
    }

    #[test]
    fn dependence_examples() {
        let mut d = DependenceFinder::new(1);
        d.push(vec![zpoly(&[1]), zpoly(&[])]);
        assert_eq!(d.check().unwrap(), None);
        d.push(vec![zpoly(&[]), zpoly(&[1])]);
        assert_eq!(d.check().unwrap(), None);
        d.push(vec![zpoly(&[1]), zpoly(&[1])]);
        assert_eq!(d.check().unwrap(), Some(vec![zpoly(&[1]), zpoly(&[1]), zpoly(&[-1])]));

        let mut d = DependenceFinder::new(2);
        d.push(vec![zpoly(&[1]), zpoly(&[0, 1])]);
        assert_eq!(d.check().unwrap(), None);
        d.push(vec![zpoly(&[0, 1]), zpoly(&[0, 0, 1])]);
        assert_eq!(d.check().unwrap(), Some(vec![zpoly(&[0, 1]), zpoly(&[-1])]));
    }

    #[test]
    fn solve_small_system() {
        // [[x, 1], [1, x]] X = [1, 0]
        let m = pm(&[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        let (x, d) = solve(&m, &[vec![zpoly(&[1]), zpoly(&[])]]).unwrap();
        // X = (x, -1) / (x^2 - 1)
        let back = m.mul_vec(&[x[0][0].clone(), x[1][0].clone()]);
        assert_eq!(back, vec![d.clone(), ZPoly::zero()]);
        assert_eq!(d.deg0(), 2);
    }

    #[test]
    fn rational_nullspace() {
        let m: Vec<Vec<Int>> = [[1i64, 2, 3, 4], [2, 4, 7, 9], [1, 2, 4, 5]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let ns = nullspace_rational(&m, 4).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_kernel_vector(&m, v));
        }
    }

    fn small_matrix() -> impl Strategy<Value = PMatrix> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(-3i64..4, 0..3), c), r)
                .prop_map(|rows| PMatrix::from_rows(rows.iter().map(|r| r.iter().map(|e| zpoly(e)).collect()).collect()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn modular_kernel_matches_fraction_free(m in small_matrix()) {
            prop_assert_eq!(nullspace_modular(&m).unwrap(), nullspace_fraction_free(&m).unwrap());
        }

        #[test]
        fn kernel_vectors_annihilate(m in small_matrix()) {
            let ns = nullspace(&m).unwrap();
            let rank = [12345, 777, 31337]
                .iter()
                .map(|&x| rank_probe(&m, &crate::algebra::ring::rat_i(x)))
                .max()
                .unwrap();
            prop_assert_eq!(ns.len() + rank, m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
                // degree bound: entries of kernel vectors stay within rank * max degree
                let bound = rank * m.max_degree();
                prop_assert!(v.iter().all(|e| e.deg0() <= bound));
            }
        }
    }
}
