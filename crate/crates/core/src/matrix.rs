//! Dense quaternion matrices and their complex adjoint embedding.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{QsError, Result};
use crate::quaternion::{EtaAxis, Quaternion};

/// Dense `rows × cols` quaternion matrix stored row-major.
///
/// Entries are finite by construction. Either dimension may be zero; products
/// over an empty inner dimension are zero matrices of the outer shape.
#[derive(Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

/// Dense complex matrix, row-major. Workspace type for the adjoint embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// One cell of a block-matrix layout passed to [`QMatrix::block`].
#[derive(Clone, Copy, Debug)]
pub enum Block<'a> {
    Mat(&'a QMatrix),
    Zero,
}

impl<'a> From<&'a QMatrix> for Block<'a> {
    fn from(m: &'a QMatrix) -> Self {
        Block::Mat(m)
    }
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(QsError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|q| !q.is_finite()) {
            return Err(QsError::NonFinite { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(QMatrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != cols) {
            return Err(QsError::DimensionMismatch(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        QMatrix::new(rows.len(), cols, rows.iter().flatten().copied().collect())
    }

    /// Real-valued matrix from nested slices, mostly for tests.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Quaternion>> =
            rows.iter().map(|r| r.iter().map(|&v| Quaternion::real(v)).collect()).collect();
        QMatrix::from_rows(&rows)
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, n, |r, c| if r == c { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Quaternion> {
        (r < self.rows && c < self.cols).then(|| self.data[r * self.cols + c])
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Quaternion] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matmul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(QsError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let lhs_row = self.row(r);
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for (t, &a) in lhs_row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(t)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    fn zip_with(&self, rhs: &QMatrix, what: &str, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<QMatrix> {
        if self.shape() != rhs.shape() {
            return Err(QsError::DimensionMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        self.map(|q| q.scale(s))
    }

    /// Left scalar multiple `q · A`.
    pub fn left_scale(&self, q: Quaternion) -> QMatrix {
        self.map(|a| q * a)
    }

    /// Right scalar multiple `A · q`.
    pub fn right_scale(&self, q: Quaternion) -> QMatrix {
        self.map(|a| a * q)
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.data[c * self.cols + r])
    }

    /// `A*`: conjugate transpose.
    pub fn conj_transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.data[c * self.cols + r].conj())
    }

    /// `A^{η*} = −η A* η`.
    pub fn eta_conj_transpose(&self, eta: EtaAxis) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.data[c * self.cols + r].eta_conj(eta))
    }

    /// `A^η = −η A η`, applied entrywise without transposing.
    pub fn eta_transform(&self, eta: EtaAxis) -> QMatrix {
        self.map(|q| q.eta_transform(eta))
    }

    /// True iff `max |A − A^{η*}| ≤ tol` entrywise.
    pub fn is_eta_hermitian(&self, eta: EtaAxis, tol: f64) -> Result<bool> {
        Ok(self.eta_hermitian_deviation(eta)? <= tol)
    }

    /// Largest entry norm of `A − A^{η*}`.
    pub fn eta_hermitian_deviation(&self, eta: EtaAxis) -> Result<f64> {
        if !self.is_square() {
            return Err(QsError::DimensionMismatch(format!(
                "eta-Hermitian test needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let d = self.data[r * n + c] - self.data[c * n + r].eta_conj(eta);
                dev = dev.max(d.norm());
            }
        }
        Ok(dev)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Sets entries whose norm is below `threshold` to exact zero.
    pub(crate) fn flush_small(mut self, threshold: f64) -> QMatrix {
        for q in &mut self.data {
            if q.norm() < threshold {
                *q = Quaternion::ZERO;
            }
        }
        self
    }

    /// Contiguous sub-block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<QMatrix> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(QsError::DimensionMismatch(format!(
                "submatrix {rows}x{cols} at ({r0}, {c0}) exceeds {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(QMatrix::from_fn(rows, cols, |r, c| self.data[(r0 + r) * self.cols + c0 + c]))
    }

    pub fn hcat(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
        QMatrix::block(&[vec![a.into(), b.into()]])
    }

    pub fn vcat(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
        QMatrix::block(&[vec![a.into()], vec![b.into()]])
    }

    /// Assembles a block matrix. `Block::Zero` cells take their height from
    /// the other cells in their block row and their width from the other
    /// cells in their block column.
    pub fn block(grid: &[Vec<Block<'_>>]) -> Result<QMatrix> {
        let nbr = grid.len();
        let nbc = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|row| row.len() != nbc) {
            return Err(QsError::DimensionMismatch("block rows have different lengths".into()));
        }
        let mut heights = vec![None; nbr];
        let mut widths = vec![None; nbc];
        for (i, row) in grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Block::Mat(m) = cell {
                    for (slot, value, axis, idx) in
                        [(&mut heights[i], m.rows, "row", i), (&mut widths[j], m.cols, "column", j)]
                    {
                        match *slot {
                            None => *slot = Some(value),
                            Some(v) if v != value => {
                                return Err(QsError::DimensionMismatch(format!(
                                    "block {axis} {idx} mixes sizes {v} and {value}"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let heights: Vec<usize> = heights
            .into_iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| QsError::DimensionMismatch(format!("block row {i} has no sized cell"))))
            .collect::<Result<_>>()?;
        let widths: Vec<usize> = widths
            .into_iter()
            .enumerate()
            .map(|(j, w)| w.ok_or_else(|| QsError::DimensionMismatch(format!("block column {j} has no sized cell"))))
            .collect::<Result<_>>()?;

        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (i, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (j, cell) in row.iter().enumerate() {
                if let Block::Mat(m) = cell {
                    for r in 0..m.rows {
                        let dst = (r0 + r) * cols + c0;
                        out.data[dst..dst + m.cols].copy_from_slice(m.row(r));
                    }
                }
                c0 += widths[j];
            }
            r0 += heights[i];
        }
        Ok(out)
    }

    /// Complex adjoint `[[A₁, A₂], [−conj(A₂), conj(A₁)]]` of `A = A₁ + A₂ j`,
    /// where `A₁ = w + x i` and `A₂ = y + z i` entrywise.
    pub fn embed_complex(&self) -> ComplexMatrix {
        let (m, n) = self.shape();
        let mut out = ComplexMatrix::zeros(2 * m, 2 * n);
        for r in 0..m {
            for c in 0..n {
                let q = self.data[r * n + c];
                let a1 = Complex64::new(q.w, q.x);
                let a2 = Complex64::new(q.y, q.z);
                out.set(r, c, a1);
                out.set(r, n + c, a2);
                out.set(m + r, c, -a2.conj());
                out.set(m + r, n + c, a1.conj());
            }
        }
        out
    }

    /// Inverse of [`QMatrix::embed_complex`]. The two redundant copies of each
    /// block are averaged; a mismatch above `1e−8·σ_max(M)` is rejected.
    pub fn extract_from_complex(m: &ComplexMatrix) -> Result<QMatrix> {
        let scale = if m.is_empty() { 0.0 } else { crate::decomp::complex_svd(m)?.s.first().copied().unwrap_or(0.0) };
        QMatrix::extract_with_scale(m, scale)
    }

    pub(crate) fn extract_with_scale(m: &ComplexMatrix, sigma_max: f64) -> Result<QMatrix> {
        if m.rows % 2 != 0 || m.cols % 2 != 0 {
            return Err(QsError::DimensionMismatch(format!(
                "adjoint form needs even dimensions, got {}x{}",
                m.rows, m.cols
            )));
        }
        let (rows, cols) = (m.rows / 2, m.cols / 2);
        let tolerance = 1e-8 * sigma_max;
        let mut deviation: f64 = 0.0;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let tl = m.get(r, c);
                let tr = m.get(r, cols + c);
                let bl = m.get(rows + r, c);
                let br = m.get(rows + r, cols + c);
                deviation = deviation.max((tl - br.conj()).norm()).max((tr + bl.conj()).norm());
                let a1 = (tl + br.conj()) * 0.5;
                let a2 = (tr - bl.conj()) * 0.5;
                data.push(Quaternion::new(a1.re, a1.im, a2.re, a2.im));
            }
        }
        if deviation > tolerance {
            return Err(QsError::StructureViolation { deviation, tolerance });
        }
        QMatrix::new(rows, cols, data)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;

    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds for {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// Operator forms panic on shape mismatch; the checked forms are `matmul`,
// `try_add` and `try_sub`.

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QMatrix> for QMatrix {
            type Output = QMatrix;
            fn $method(self, rhs: QMatrix) -> QMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QMatrix> for QMatrix {
            type Output = QMatrix;
            fn $method(self, rhs: &QMatrix) -> QMatrix {
                (&self).$method(rhs)
            }
        }
        impl $trait<QMatrix> for &QMatrix {
            type Output = QMatrix;
            fn $method(self, rhs: QMatrix) -> QMatrix {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Mul, mul);
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);

impl Neg for QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        -&self
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(QsError::DimensionMismatch(format!(
                "{rows}x{cols} complex matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(QsError::NonFinite { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(QsError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.get(t, c);
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_diff(a: &QMatrix, b: &QMatrix) -> f64 {
        (a - b).max_entry_norm()
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = QMatrix::new(1, 2, vec![Q::ONE, Q::new(0.0, f64::NAN, 0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, QsError::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn matmul_unit_quaternion_product() {
        let a = QMatrix::from_rows(&[vec![Q::I, Q::ZERO], vec![Q::ZERO, Q::ZERO]]).unwrap();
        let x = QMatrix::from_rows(&[vec![Q::ONE, Q::I], vec![Q::ZERO, Q::ZERO]]).unwrap();
        let expected = QMatrix::from_rows(&[vec![Q::I, Q::real(-1.0)], vec![Q::ZERO, Q::ZERO]]).unwrap();
        assert_eq!(&a * &x, expected);
        assert_eq!(&a * &QMatrix::identity(2), a);
    }

    #[test]
    fn matmul_shape_errors() {
        let a = QMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(QsError::DimensionMismatch(_))));
    }

    #[test]
    fn empty_inner_dimension_gives_zero() {
        let a = QMatrix::zeros(3, 0);
        let b = QMatrix::zeros(0, 2);
        assert_eq!(&a * &b, QMatrix::zeros(3, 2));
    }

    #[test]
    fn matmul_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 3, 4);
            let b = random_matrix(&mut rng, 4, 2);
            let cm = random_matrix(&mut rng, 2, 5);
            assert!(max_diff(&(&(&a * &b) * &cm), &(&a * &(&b * &cm))) <= 1e-11);
        }
    }

    #[test]
    fn conj_transpose_properties() {
        let m = QMatrix::from_rows(&[vec![Q::I]]).unwrap();
        assert_eq!(m.conj_transpose(), QMatrix::from_rows(&[vec![-Q::I]]).unwrap());
        let sym = QMatrix::from_real(&[&[1.0, 2.0], &[2.0, 5.0]]).unwrap();
        assert_eq!(sym.conj_transpose(), sym);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 3, 4);
            let b = random_matrix(&mut rng, 4, 2);
            let lhs = (&a * &b).conj_transpose();
            let rhs = &b.conj_transpose() * &a.conj_transpose();
            assert!(max_diff(&lhs, &rhs) <= 1e-12);
        }
    }

    #[test]
    fn eta_conj_transpose_properties() {
        let real = QMatrix::from_real(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]).unwrap();
        for eta in EtaAxis::ALL {
            assert_eq!(real.eta_conj_transpose(eta), real.transpose());
        }
        let jm = QMatrix::from_rows(&[vec![Q::J]]).unwrap();
        assert_eq!(jm.eta_conj_transpose(EtaAxis::I), jm);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for eta in EtaAxis::ALL {
            let unit = QMatrix::identity(1).left_scale(eta.unit());
            for _ in 0..30 {
                let a = random_matrix(&mut rng, 3, 4);
                let b = random_matrix(&mut rng, 4, 2);
                assert!(max_diff(&a.eta_conj_transpose(eta).eta_conj_transpose(eta), &a) <= 1e-15);
                // against the literal definition −η A* η
                let literal = -a.conj_transpose().left_scale(eta.unit()).right_scale(eta.unit());
                assert!(max_diff(&a.eta_conj_transpose(eta), &literal) <= 1e-15);
                let lhs = (&a * &b).eta_conj_transpose(eta);
                let rhs = &b.eta_conj_transpose(eta) * &a.eta_conj_transpose(eta);
                assert!(max_diff(&lhs, &rhs) <= 1e-12);
            }
            assert_eq!(unit.rows(), 1);
        }
    }

    #[test]
    fn eta_hermitian_checks() {
        for eta in EtaAxis::ALL {
            assert!(QMatrix::identity(3).is_eta_hermitian(eta, 0.0).unwrap());
        }
        let im = QMatrix::from_rows(&[vec![Q::I]]).unwrap();
        assert!(!im.is_eta_hermitian(EtaAxis::I, 1e-12).unwrap());
        assert!(im.is_eta_hermitian(EtaAxis::J, 0.0).unwrap());
        assert!(im.is_eta_hermitian(EtaAxis::K, 0.0).unwrap());
        assert!(QMatrix::zeros(2, 3).is_eta_hermitian(EtaAxis::I, 1.0).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for eta in EtaAxis::ALL {
            let g = random_matrix(&mut rng, 4, 4);
            let h = &g + &g.eta_conj_transpose(eta);
            assert!(h.is_eta_hermitian(eta, 0.0).unwrap());
        }
    }

    #[test]
    fn embedding_examples() {
        let im = QMatrix::from_rows(&[vec![Q::I]]).unwrap().embed_complex();
        assert_eq!(im, ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]).unwrap());
        let jm = QMatrix::from_rows(&[vec![Q::J]]).unwrap().embed_complex();
        assert_eq!(jm, ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap());
    }

    #[test]
    fn embedding_is_a_star_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 3, 4);
            let b = random_matrix(&mut rng, 4, 2);
            let a2 = random_matrix(&mut rng, 3, 4);
            let prod = (&a * &b).embed_complex();
            let via = a.embed_complex().matmul(&b.embed_complex()).unwrap();
            assert!(prod.max_abs_diff(&via) <= 1e-12);
            let sum = (&a + &a2).embed_complex();
            let mut sum2 = a.embed_complex();
            let e2 = a2.embed_complex();
            for r in 0..sum2.rows() {
                for cc in 0..sum2.cols() {
                    sum2.set(r, cc, sum2.get(r, cc) + e2.get(r, cc));
                }
            }
            assert!(sum.max_abs_diff(&sum2) <= 1e-12);
            assert!(a.conj_transpose().embed_complex().max_abs_diff(&a.embed_complex().adjoint()) == 0.0);
        }
    }

    #[test]
    fn extract_round_trip_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 3, 5);
            assert_eq!(QMatrix::extract_from_complex(&a.embed_complex()).unwrap(), a);
        }
    }

    #[test]
    fn extract_rejects_broken_structure() {
        let a = QMatrix::from_rows(&[vec![Q::new(1.0, 0.5, 2.0, -1.0)]]).unwrap();
        let mut m = a.embed_complex();
        // top-right = +conj(bottom-left) instead of −conj(bottom-left)
        m.set(0, 1, m.get(1, 0).conj());
        assert!(matches!(QMatrix::extract_from_complex(&m), Err(QsError::StructureViolation { .. })));
        let odd = ComplexMatrix::zeros(3, 2);
        assert!(QMatrix::extract_from_complex(&odd).is_err());
    }

    #[test]
    fn block_assembly() {
        let a = QMatrix::zeros(2, 2);
        let b = QMatrix::zeros(2, 3);
        assert_eq!(QMatrix::hcat(&a, &b).unwrap().shape(), (2, 5));
        assert_eq!(QMatrix::vcat(&a, &b.transpose().submatrix(0, 0, 3, 2).unwrap()).unwrap().shape(), (5, 2));
        assert!(QMatrix::vcat(&a, &b).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = random_matrix(&mut rng, 2, 3);
        assert_eq!(QMatrix::block(&[vec![Block::Mat(&r)]]).unwrap(), r);

        let x = random_matrix(&mut rng, 1, 2);
        let y = random_matrix(&mut rng, 3, 1);
        let m = QMatrix::block(&[vec![Block::Mat(&x), Block::Zero], vec![Block::Zero, Block::Mat(&y)]]).unwrap();
        assert_eq!(m.shape(), (4, 3));
        assert_eq!(m.submatrix(0, 0, 1, 2).unwrap(), x);
        assert_eq!(m.submatrix(1, 2, 3, 1).unwrap(), y);
        assert_eq!(m.submatrix(1, 0, 3, 2).unwrap(), QMatrix::zeros(3, 2));
        assert!(QMatrix::block(&[vec![Block::Zero]]).is_err());
    }
}
