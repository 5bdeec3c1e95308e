//! Dense complex matrices, diagonal phase matrices and Haar sampling.
//!
//! Every other module works on [`ComplexMatrix`]. Matrices are small
//! (n ≤ 16 in practice), row-major, and compared in the max-norm.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Scalar field of every matrix in this crate.
pub type Complex = Complex64;

/// Default tolerance for unitarity checks.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Default tolerance for entry-wise equality.
pub const EQUALITY_TOL: f64 = 1e-12;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::Domain(format!("entry {pos} is not finite")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_row_major(r, c, rows.concat())
    }

    pub fn diag(values: &[Complex]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> ComplexMatrix {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| f(*z)).collect() }
    }

    pub fn scale(&self, s: Complex) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex, Complex) -> Complex) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm of `self - other`; infinite when the shapes differ.
    pub fn max_diff(&self, other: &ComplexMatrix) -> f64 {
        self.sub(other).map_or(f64::INFINITY, |d| d.max_norm())
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Result<Complex> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n).max_by(|&p, &q| a[(p, col)].norm().total_cmp(&a[(q, col)].norm())).unwrap_or(col);
            if a[(pivot, col)] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let factor = a[(r, col)] / p;
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    /// Max-norm defects of `A·A† − I` and `A†·A − I`, whichever is larger.
    pub fn unitarity_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::Shape(format!("unitarity of non-square {}x{}", self.rows, self.cols)));
        }
        let id = ComplexMatrix::identity(self.rows);
        let d = self.dagger();
        let left = self.matmul(&d)?.max_diff(&id);
        let right = d.matmul(self)?.max_diff(&id);
        Ok(left.max(right))
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitarity_defect()? <= tol)
    }

    /// Max-norm of `A − A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_diff(&self.dagger())
    }

    /// Max-norm of `A − Aᵀ`.
    pub fn symmetry_defect(&self) -> f64 {
        self.max_diff(&self.transpose())
    }

    /// Copy of the leading `k × k` block.
    pub fn leading_block(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(k, k, |i, j| self[(i, j)])
    }

    /// Reorders rows and columns: `out[(i, j)] = self[(rows[i], cols[j])]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  {}", row.join("  "))?;
        }
        write!(f, "]")
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Real phases of a diagonal phase matrix, stored in `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector(Vec<f64>);

impl PhaseVector {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if let Some(pos) = phases.iter().position(|p| !p.is_finite()) {
            return Err(Error::Domain(format!("phase {pos} is not finite")));
        }
        Ok(Self(phases.into_iter().map(wrap_angle).collect()))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| *p == 0.0)
    }

    /// Element-wise sum, re-wrapped.
    pub fn shifted(&self, by: &[f64]) -> Self {
        Self(self.0.iter().zip(by).map(|(a, b)| wrap_angle(a + b)).collect())
    }
}

/// `diag(e^{iφ₁}, …, e^{iφₙ})`.
pub fn phase_matrix(p: &PhaseVector) -> ComplexMatrix {
    let d: Vec<Complex> = p.0.iter().map(|phi| Complex::from_polar(1.0, *phi)).collect();
    ComplexMatrix::diag(&d)
}

/// Haar-distributed `n × n` unitary, deterministic in `seed`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
pub fn haar_random(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_with(n, &mut rng)
}

/// Haar sampling from a caller-owned generator.
///
/// Fills a matrix with standard complex Gaussians, factors it with
/// Householder QR and multiplies column `j` of Q by `r_jj / |r_jj|`, which
/// makes the factorisation unique (positive diagonal of R) and the
/// distribution of Q exactly Haar.
pub fn haar_random_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("haar_random requires n >= 1".into()));
    }
    let ginibre = ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let (q, r) = householder_qr(&ginibre);
    let mut out = q;
    for j in 0..n {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { ONE };
        for i in 0..n {
            out[(i, j)] *= phase;
        }
    }
    Ok(out)
}

/// Complex Householder QR of a square matrix; returns `(Q, R)` with `A = Q·R`.
fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for j in 0..n {
        let norm = (j..n).map(|i| r[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = r[(j, j)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * norm;
        let mut v: Vec<Complex> = (j..n).map(|i| r[(i, j)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // R ← (I − 2vv†) R on rows j..n
        for col in 0..n {
            let dot: Complex = v.iter().enumerate().map(|(t, vi)| vi.conj() * r[(j + t, col)]).sum();
            for (t, vi) in v.iter().enumerate() {
                r[(j + t, col)] -= 2.0 * vi * dot;
            }
        }
        // Q ← Q (I − 2vv†) on columns j..n
        for row in 0..n {
            let dot: Complex = v.iter().enumerate().map(|(t, vi)| q[(row, j + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                q[(row, j + t)] -= 2.0 * dot * vi.conj();
            }
        }
    }
    (q, r)
}
