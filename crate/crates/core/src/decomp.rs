//! Numerical rank, Moore–Penrose inverse and the projectors `L_A = I − A†A`,
//! `R_A = I − AA†`, all computed through the complex adjoint embedding.

use num_complex::Complex64;

use crate::error::{QsError, Result};
use crate::matrix::{ComplexMatrix, QMatrix};

/// Projector entries below this norm are flushed to exact zero.
pub const PROJECTOR_FLUSH: f64 = 1e-13;

/// Singular value cutoff policy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tol {
    /// `max(2m, 2n) · ε · σ_max` of the embedded matrix.
    Auto,
    Absolute(f64),
    /// `r · σ_max`.
    Relative(f64),
    /// `rtol · max(σ_max, scale)`. Keeps the cutoff meaningful for matrices
    /// that are themselves rounding noise relative to the problem data.
    Scaled { rtol: f64, scale: f64 },
}

impl Tol {
    /// Cutoff for an `m × n` quaternion matrix with largest singular value `sigma_max`.
    pub fn cutoff(self, m: usize, n: usize, sigma_max: f64) -> f64 {
        match self {
            Tol::Auto => (2 * m.max(n)) as f64 * f64::EPSILON * sigma_max,
            Tol::Absolute(c) => c,
            Tol::Relative(r) => r * sigma_max,
            Tol::Scaled { rtol, scale } => rtol * sigma_max.max(scale),
        }
    }
}

/// Thin SVD `M = U · diag(s) · Vᴴ` with `k = min(rows, cols)` columns in `U`, `V`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct RankInfo {
    pub rank: usize,
    /// Quaternion singular values (one per embedded pair), descending.
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
    /// Largest gap inside an embedded singular value pair. Anything beyond
    /// `1e−6 · σ_max` means the input was not a faithful embedding.
    pub pair_defect: f64,
    /// Some singular value lies within a factor 10 of the cutoff.
    pub near_cutoff: bool,
}

impl RankInfo {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn pairing_ok(&self) -> bool {
        self.pair_defect <= 1e-6 * self.sigma_max()
    }
}

#[derive(Clone, Debug)]
pub struct PseudoinverseResult {
    pub pinv: QMatrix,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub tol_used: f64,
}

#[derive(Clone, Debug)]
pub struct Projectors {
    /// `L_A = I − A†A`
    pub left: QMatrix,
    /// `R_A = I − AA†`
    pub right: QMatrix,
}

type Columns = Vec<Vec<Complex64>>;

fn columns_of(m: &ComplexMatrix) -> Columns {
    (0..m.cols()).map(|c| (0..m.rows()).map(|r| m.get(r, c)).collect()).collect()
}

fn from_columns(rows: usize, cols: &[Vec<Complex64>]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            out.set(r, c, z);
        }
    }
    out
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// One-sided (Hestenes) Jacobi on the columns of `g`, accumulating the same
/// rotations into `v`. Requires `g` to have at least as many rows as columns.
/// Columns whose squared norm falls below `negligible` are treated as zero.
fn hestenes(g: &mut Columns, v: &mut Columns, negligible: f64, cap: usize) -> Result<()> {
    let n = g.len();
    let rel = f64::EPSILON * g.first().map_or(1, Vec::len).max(1) as f64;
    for _ in 0..cap {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&g[p]);
                let beta = norm_sqr(&g[q]);
                let gamma = dot(&g[p], &g[q]);
                let abs_gamma = gamma.norm();
                if alpha <= negligible || beta <= negligible || abs_gamma <= rel * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / abs_gamma).conj();
                let zeta = (beta - alpha) / (2.0 * abs_gamma);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + zeta.hypot(1.0)) };
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                for cols in [&mut *g, &mut *v] {
                    let (lo, hi) = cols.split_at_mut(q);
                    for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let a = *xp;
                        let b = *xq * phase;
                        *xp = a * c - b * s;
                        *xq = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(QsError::ConvergenceFailure { sweeps: cap })
}

/// Extends `basis` (orthonormal columns of length `dim`) by unit vectors until
/// it has `target` columns.
fn complete_basis(basis: &mut Columns, dim: usize, target: usize) {
    let mut candidate = 0;
    while basis.len() < target && candidate < dim {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[candidate] = Complex64::new(1.0, 0.0);
        candidate += 1;
        for _ in 0..2 {
            for b in basis.iter() {
                let proj = dot(b, &e);
                for (x, y) in e.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = norm_sqr(&e).sqrt();
        if nrm > 1e-3 {
            e.iter_mut().for_each(|x| *x /= nrm);
            basis.push(e);
        }
    }
}

fn svd_tall(m: &ComplexMatrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut g = columns_of(m);
    let mut v: Columns = (0..cols)
        .map(|c| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[c] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let total: f64 = g.iter().map(|c| norm_sqr(c)).sum();
    let floor = f64::EPSILON * rows.max(cols).max(1) as f64 * total.sqrt();
    hestenes(&mut g, &mut v, floor * floor, 100 * rows.max(cols).max(1))?;

    let mut order: Vec<(f64, usize)> = g.iter().enumerate().map(|(i, col)| (norm_sqr(col).sqrt(), i)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut u_cols: Columns = Vec::with_capacity(cols);
    let mut v_cols: Columns = Vec::with_capacity(cols);
    let mut s = Vec::with_capacity(cols);
    for &(sigma, i) in &order {
        let sigma = if sigma <= floor { 0.0 } else { sigma };
        if sigma > 0.0 {
            u_cols.push(g[i].iter().map(|z| z / sigma).collect());
        }
        v_cols.push(v[i].clone());
        s.push(sigma);
    }
    complete_basis(&mut u_cols, rows, cols);
    Ok(Svd { u: from_columns(rows, &u_cols), s, v: from_columns(cols, &v_cols) })
}

/// Thin singular value decomposition of a complex matrix by one-sided Jacobi.
///
/// Errors with `ConvergenceFailure` after `100 · max(rows, cols)` sweeps.
pub fn complex_svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() >= m.cols() {
        svd_tall(m)
    } else {
        let t = svd_tall(&m.adjoint())?;
        Ok(Svd { u: t.v, s: t.s, v: t.u })
    }
}

/// Pairs the embedded singular values; returns the quaternion singular values
/// and the largest in-pair gap.
fn pair_up(embedded: &[f64]) -> (Vec<f64>, f64) {
    let mut defect: f64 = 0.0;
    let values = embedded
        .chunks(2)
        .map(|pair| match pair {
            [a, b] => {
                defect = defect.max((a - b).abs());
                0.5 * (a + b)
            }
            [a] => *a,
            _ => unreachable!(),
        })
        .collect();
    (values, defect)
}

fn summarize(a: &QMatrix, svd: &Svd, tol: Tol) -> RankInfo {
    let (singular_values, pair_defect) = pair_up(&svd.s);
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = tol.cutoff(a.rows(), a.cols(), sigma_max);
    let rank = singular_values.iter().filter(|&&s| s > cutoff).count();
    let near_cutoff = cutoff > 0.0 && singular_values.iter().any(|&s| s > cutoff / 10.0 && s <= cutoff * 10.0);
    RankInfo { rank, singular_values, cutoff, pair_defect, near_cutoff }
}

pub fn rank_info(a: &QMatrix, tol: Tol) -> Result<RankInfo> {
    let svd = complex_svd(&a.embed_complex())?;
    Ok(summarize(a, &svd, tol))
}

/// Quaternion rank: the number of embedded singular value pairs above the cutoff.
pub fn qrank(a: &QMatrix, tol: Tol) -> Result<usize> {
    Ok(rank_info(a, tol)?.rank)
}

/// Moore–Penrose inverse. Singular value pairs are kept or dropped together.
pub fn pinv(a: &QMatrix, tol: Tol) -> Result<PseudoinverseResult> {
    let svd = complex_svd(&a.embed_complex())?;
    let info = summarize(a, &svd, tol);
    pinv_from_svd(a, &svd, info)
}

fn pinv_from_svd(a: &QMatrix, svd: &Svd, info: RankInfo) -> Result<PseudoinverseResult> {
    let (m, n) = a.shape();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * m);
    for idx in 0..svd.s.len() {
        if info.singular_values[idx / 2] <= info.cutoff {
            continue;
        }
        let inv = 1.0 / svd.s[idx];
        for r in 0..2 * n {
            let vr = svd.v.get(r, idx) * inv;
            if vr == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..2 * m {
                let val = out.get(r, c) + vr * svd.u.get(c, idx).conj();
                out.set(r, c, val);
            }
        }
    }
    let pinv_scale = info
        .singular_values
        .iter()
        .filter(|&&s| s > info.cutoff)
        .last()
        .map_or(0.0, |&s| 1.0 / s);
    let pinv = QMatrix::extract_with_scale(&out, pinv_scale)?;
    Ok(PseudoinverseResult { pinv, rank: info.rank, singular_values: info.singular_values, tol_used: info.cutoff })
}

fn identity_minus(p: &QMatrix) -> QMatrix {
    (&QMatrix::identity(p.rows()) - p).flush_small(PROJECTOR_FLUSH)
}

/// `L_A` and `R_A` with the automatic tolerance.
pub fn projectors(a: &QMatrix) -> Result<Projectors> {
    let f = Factored::new(a.clone(), Tol::Auto)?;
    Ok(Projectors { left: f.left, right: f.right })
}

/// A matrix bundled with its pseudoinverse, rank and both projectors.
#[derive(Clone, Debug)]
pub struct Factored {
    pub mat: QMatrix,
    pub pinv: QMatrix,
    pub rank: usize,
    /// `L_A = I − A†A`
    pub left: QMatrix,
    /// `R_A = I − AA†`
    pub right: QMatrix,
    pub near_cutoff: bool,
}

impl Factored {
    pub fn new(mat: QMatrix, tol: Tol) -> Result<Self> {
        let (m, n) = mat.shape();
        let svd = complex_svd(&mat.embed_complex())?;
        let info = summarize(&mat, &svd, tol);
        let near_cutoff = info.near_cutoff;
        let p = pinv_from_svd(&mat, &svd, info)?;
        let left = if n == 0 { QMatrix::zeros(0, 0) } else { identity_minus(&(&p.pinv * &mat)) };
        let right = if m == 0 { QMatrix::zeros(0, 0) } else { identity_minus(&(&mat * &p.pinv)) };
        Ok(Factored { mat, pinv: p.pinv, rank: p.rank, left, right, near_cutoff })
    }

    /// `A A†`
    pub fn range_projector(&self) -> QMatrix {
        &self.mat * &self.pinv
    }
}
