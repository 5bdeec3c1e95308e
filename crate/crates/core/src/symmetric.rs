//! Manifestly symmetric unitaries from factors with purely imaginary
//! characteristic vectors, arranged as the palindrome `A₂A₃⋯A_n⋯A₃A₂`.
//!
//! A factor whose characteristic vector is `i·x` with `x` real is symmetric:
//!
//! ```text
//!             ⎡ I − (1−c) x xᵀ   i s x ⎤
//! A^sym(θ,x) = ⎣ i s xᵀ            c    ⎦
//! ```
//!
//! Any θ is accepted; distinct parameter sets may give the same matrix.

use crate::error::{Error, Result};
use crate::factor::{CharVector, Factor};
use crate::matrix::{phase_matrix, Complex, ComplexMatrix, PhaseVector, I, ONE, ZERO};

const REAL_NORM_TOL: f64 = 1e-12;

/// Angles `θ₂…θ_n` and real unit vectors `x⁽ᵏ⁾ ∈ ℝ^{k−1}` of a symmetric
/// palindrome. With `half_angle` set, every factor except `A_n` carries `θ_k/2`
/// so that its two occurrences add up to `θ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricParams {
    n: usize,
    thetas: Vec<f64>,
    real_chars: Vec<Vec<f64>>,
    half_angle: bool,
}

fn check_real_unit(xs: &[f64], len: usize) -> Result<()> {
    if xs.len() != len {
        return Err(Error::Domain(format!("real characteristic vector has length {}, expected {len}", xs.len())));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("real characteristic vector has non-finite components".into()));
    }
    let norm = xs.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > REAL_NORM_TOL {
        return Err(Error::Domain(format!("real characteristic vector norm {norm} is not 1")));
    }
    Ok(())
}

impl SymmetricParams {
    pub fn new(n: usize, thetas: Vec<f64>, real_chars: Vec<Vec<f64>>, half_angle: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("symmetric construction needs n >= 2, got {n}")));
        }
        if thetas.len() != n - 1 || real_chars.len() != n - 1 {
            return Err(Error::Structure(format!(
                "expected {} angles and vectors, got {} and {}",
                n - 1,
                thetas.len(),
                real_chars.len()
            )));
        }
        if let Some(t) = thetas.iter().find(|t| !t.is_finite()) {
            return Err(Error::Domain(format!("angle {t} is not finite")));
        }
        for (k, xs) in (2..=n).zip(&real_chars) {
            check_real_unit(xs, k - 1)?;
        }
        Ok(Self { n, thetas, real_chars, half_angle })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `θ₂, …, θ_n`.
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Real vectors for orders `2, …, n`.
    pub fn real_chars(&self) -> &[Vec<f64>] {
        &self.real_chars
    }

    pub fn half_angle(&self) -> bool {
        self.half_angle
    }

    /// `Σ_{k=2}^{n} (k − 1) = n(n−1)/2`.
    pub fn param_count(&self) -> usize {
        sym_param_count(self.n)
    }
}

/// Real parameters of the symmetric palindrome: `n(n − 1)/2`.
pub fn sym_param_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Embedded symmetric factor of order `k` with characteristic vector `i·xs`.
pub fn sym_factor(k: usize, theta: f64, xs: &[f64], n: usize) -> Result<ComplexMatrix> {
    if k < 2 {
        return Err(Error::Domain(format!("factor order {k} must be at least 2")));
    }
    check_real_unit(xs, k - 1)?;
    let char = CharVector::new(xs.iter().map(|x| I * x).collect())?;
    Ok(Factor::new(n, k, theta, char)?.embed())
}

/// The palindromic product `A₂A₃⋯A_n⋯A₃A₂`.
pub fn compose_symmetric(p: &SymmetricParams) -> ComplexMatrix {
    let n = p.n;
    let factor = |k: usize| {
        let theta = p.thetas[k - 2];
        let theta = if p.half_angle && k < n { theta / 2.0 } else { theta };
        sym_factor(k, theta, &p.real_chars[k - 2], n).expect("validated parameters")
    };
    let inner: Vec<ComplexMatrix> = (2..n).map(factor).collect();
    let mut v = factor(n);
    for a in inner.iter().rev() {
        v = a.matmul(&v).and_then(|m| m.matmul(a)).expect("square factors of equal size");
    }
    v
}

/// `Φ(α) V Φ(α)`, symmetric whenever `V` is.
pub fn with_external_phases(v: &ComplexMatrix, alpha: &PhaseVector) -> Result<ComplexMatrix> {
    let phi = phase_matrix(alpha);
    phi.matmul(v)?.matmul(&phi)
}

fn unit_pair(xs: (f64, f64)) -> Result<()> {
    check_real_unit(&[xs.0, xs.1], 2)
}

/// `u₁ = c′₂x₁ + i s′₂x₂`, `u₂ = c′₂x₂ + i s′₂x₁` with primed functions of `θ₂/2`.
pub fn u_vector(theta2: f64, xs: (f64, f64)) -> [Complex; 2] {
    let (s, c) = (theta2 / 2.0).sin_cos();
    [Complex::new(c * xs.0, s * xs.1), Complex::new(c * xs.1, s * xs.0)]
}

/// Closed form of `V^sym₂(θ₂/2) · A^sym₃(θ₃, x) · V^sym₂(θ₂/2)`:
///
/// ```text
/// ⎡ c₂ − (1−c₃)u₁²      i s₂ − (1−c₃)u₁u₂   i s₃ u₁ ⎤
/// ⎢ i s₂ − (1−c₃)u₁u₂   c₂ − (1−c₃)u₂²      i s₃ u₂ ⎥
/// ⎣ i s₃ u₁             i s₃ u₂             c₃      ⎦
/// ```
pub fn v3sym_closed(theta2: f64, theta3: f64, xs: (f64, f64)) -> Result<ComplexMatrix> {
    unit_pair(xs)?;
    let (s2, c2) = theta2.sin_cos();
    let (s3, c3) = theta3.sin_cos();
    let [u1, u2] = u_vector(theta2, xs);
    let off = I * s2 - u1 * u2 * (1.0 - c3);
    ComplexMatrix::from_rows(&[
        vec![c2 - u1 * u1 * (1.0 - c3), off, I * s3 * u1],
        vec![off, c2 - u2 * u2 * (1.0 - c3), I * s3 * u2],
        vec![I * s3 * u1, I * s3 * u2, ONE * c3],
    ])
}

/// `v₁ = c′₂y₁ − i s′₂y₂`, `v₂ = c′₂y₂ − i s′₂y₁`, `v₃ = y₃`.
pub fn v_vector(theta2: f64, ys: (f64, f64, f64)) -> [Complex; 3] {
    let (s, c) = (theta2 / 2.0).sin_cos();
    [Complex::new(c * ys.0, -s * ys.1), Complex::new(c * ys.1, -s * ys.0), Complex::new(ys.2, 0.0)]
}

/// Closed form of `A^sym₂(θ₂/2)⁻¹ · A^sym₄(θ₄, y) · A^sym₂(θ₂/2)⁻¹`, whose
/// upper-left 2 × 2 block carries the full `c₂`, `s₂`.
pub fn a4prime(theta2: f64, theta4: f64, ys: (f64, f64, f64)) -> Result<ComplexMatrix> {
    check_real_unit(&[ys.0, ys.1, ys.2], 3)?;
    let (s2, c2) = theta2.sin_cos();
    let (s4, c4) = theta4.sin_cos();
    let v = v_vector(theta2, ys);
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| match (i, j) {
        (3, 3) => ONE * c4,
        (3, _) => I * s4 * v[j],
        (_, 3) => I * s4 * v[i],
        _ => {
            let base = match (i, j) {
                (0, 0) | (1, 1) => ONE * c2,
                (0, 1) | (1, 0) => -I * s2,
                (2, 2) => ONE,
                _ => ZERO,
            };
            base - v[i] * v[j] * (1.0 - c4)
        }
    }))
}

/// `c₂c₃s₂s₃² x₁x₂`, the invariant phase `(12;12)` of the symmetric 3 × 3.
pub fn j_sym_n3(theta2: f64, theta3: f64, xs: (f64, f64)) -> Result<f64> {
    unit_pair(xs)?;
    let (s2, c2) = theta2.sin_cos();
    let (s3, c3) = theta3.sin_cos();
    Ok(c2 * c3 * s2 * s3 * s3 * xs.0 * xs.1)
}
