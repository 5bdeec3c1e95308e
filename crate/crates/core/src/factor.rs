//! Recursive factors `𝔸^(k)` / `A_{n,k}` and their hermitian generators.
//!
//! A factor of order `k` is fixed by an angle θ and a unit characteristic
//! vector `a` of length `k − 1`:
//!
//! ```text
//!          ⎡ I − (1−c)|a⟩⟨a|   s|a⟩ ⎤
//! 𝔸(θ,a) = ⎣ −s⟨a|             c    ⎦ ,   c = cos θ, s = sin θ
//! ```
//!
//! and is embedded in `n` dimensions as `diag(𝔸, I_{n−k})`. Its generator
//! `𝔾 = [[0, −i|a⟩], [i⟨a|, 0]]` satisfies `𝔾³ = 𝔾`, so the exponential
//! series collapses to `e^{iθ𝔾} = I + i s 𝔾 − (1−c) 𝔾²`.

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix, I, ONE, ZERO};

/// Tolerance on the norm of a characteristic vector.
pub const CHAR_NORM_TOL: f64 = 1e-12;
/// Tolerance on the generator identities.
pub const GENERATOR_TOL: f64 = 1e-12;

/// Unit complex vector parameterising a factor.
#[derive(Debug, Clone, PartialEq)]
pub struct CharVector(Vec<Complex>);

impl CharVector {
    /// Validates finiteness and unit norm (within [`CHAR_NORM_TOL`]).
    pub fn new(components: Vec<Complex>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("characteristic vector must be non-empty".into()));
        }
        if components.iter().any(|z| !z.is_finite()) {
            return Err(Error::Domain("characteristic vector has non-finite components".into()));
        }
        let norm = norm(&components);
        if (norm - 1.0).abs() > CHAR_NORM_TOL {
            return Err(Error::Domain(format!("characteristic vector norm {norm} is not 1")));
        }
        Ok(Self(components))
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalized(components: Vec<Complex>) -> Result<Self> {
        let n = norm(&components);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!("cannot normalise vector of norm {n}")));
        }
        Self::new(components.into_iter().map(|z| z / n).collect())
    }

    /// Unit basis vector `e_index` of the given length.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = vec![ZERO; len];
        v[index] = ONE;
        Self(v)
    }

    /// Builds from components that are already unit-norm up to rounding,
    /// skipping validation. Used when a unitary map is applied to a valid vector.
    pub(crate) fn from_raw(components: Vec<Complex>) -> Self {
        Self(components)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Complex] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }
}

fn norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The `k × k` block `𝔸(θ, a)` with `k = a.len() + 1`.
pub fn block(theta: f64, a: &CharVector) -> ComplexMatrix {
    let m = a.len();
    let (s, c) = theta.sin_cos();
    let a = a.components();
    ComplexMatrix::from_fn(m + 1, m + 1, |i, j| match (i < m, j < m) {
        (true, true) => {
            let delta = if i == j { ONE } else { ZERO };
            delta - (1.0 - c) * a[i] * a[j].conj()
        }
        (true, false) => s * a[i],
        (false, true) => -s * a[j].conj(),
        (false, false) => Complex::new(c, 0.0),
    })
}

/// One factor `A_{n,k}` of the recursive product.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    ambient_n: usize,
    order_k: usize,
    theta: f64,
    char: CharVector,
}

impl Factor {
    pub fn new(ambient_n: usize, order_k: usize, theta: f64, char: CharVector) -> Result<Self> {
        if order_k < 2 || order_k > ambient_n {
            return Err(Error::Domain(format!("factor order {order_k} outside 2..={ambient_n}")));
        }
        if char.len() != order_k - 1 {
            return Err(Error::Domain(format!(
                "order-{order_k} factor needs a characteristic vector of length {}, got {}",
                order_k - 1,
                char.len()
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Domain("factor angle is not finite".into()));
        }
        Ok(Self { ambient_n, order_k, theta, char })
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn order(&self) -> usize {
        self.order_k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn char_vector(&self) -> &CharVector {
        &self.char
    }

    /// Same factor with a different characteristic vector of equal length.
    pub fn with_char(&self, char: CharVector) -> Result<Self> {
        Self::new(self.ambient_n, self.order_k, self.theta, char)
    }

    /// `A(−θ)`, the inverse factor.
    pub fn inverse(&self) -> Self {
        Self { theta: -self.theta, ..self.clone() }
    }

    /// The `k × k` block of this factor.
    pub fn block(&self) -> ComplexMatrix {
        block(self.theta, &self.char)
    }

    /// `diag(𝔸^(k), I_{n−k})`.
    pub fn embed(&self) -> ComplexMatrix {
        embed_block(&self.block(), self.ambient_n)
    }

    /// Real parameters carried by this factor: θ plus a unit vector in
    /// `ℂ^{k−1}` (2k−3 reals), i.e. `2k − 2`.
    pub fn real_parameter_count(&self) -> usize {
        2 * self.order_k - 2
    }
}

/// `diag(block, I)` padded to `n × n`.
pub fn embed_block(block: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let k = block.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i < k && j < k {
            block[(i, j)]
        } else if i == j {
            ONE
        } else {
            ZERO
        }
    })
}

/// Hermitian generator `𝔾` with `𝔾³ = 𝔾`, `tr 𝔾 = 0`, `tr 𝔾² = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator(ComplexMatrix);

impl Generator {
    /// Validates the generator identities.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape("generator must be square".into()));
        }
        let herm = matrix.hermiticity_defect();
        if herm > GENERATOR_TOL {
            return Err(Error::Domain(format!("generator not hermitian (defect {herm:e})")));
        }
        let g2 = matrix.matmul(&matrix)?;
        let cube = g2.matmul(&matrix)?.max_diff(&matrix);
        if cube > GENERATOR_TOL {
            return Err(Error::Domain(format!("generator violates G^3 = G (defect {cube:e})")));
        }
        let tr = matrix.trace().norm();
        let tr2 = (g2.trace() - 2.0).norm();
        if tr > GENERATOR_TOL || tr2 > GENERATOR_TOL {
            return Err(Error::Domain(format!("generator traces off: |tr G| = {tr:e}, |tr G^2 - 2| = {tr2:e}")));
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// `𝔾_{n,k}`: `[[0, −i|a⟩], [i⟨a|, 0]]` in the leading `k × k` corner.
pub fn generator(f: &Factor) -> Generator {
    let a = f.char_vector().components();
    let m = a.len();
    let g = ComplexMatrix::from_fn(f.ambient_n(), f.ambient_n(), |i, j| {
        if i < m && j == m {
            -I * a[i]
        } else if i == m && j < m {
            I * a[j].conj()
        } else {
            ZERO
        }
    });
    Generator(g)
}

/// Closed form `e^{iθ𝔾} = I + i sin θ 𝔾 − (1 − cos θ) 𝔾²`.
pub fn exp_generator(theta: f64, g: &Generator) -> ComplexMatrix {
    let m = g.matrix();
    let n = m.rows();
    let g2 = m.matmul(m).expect("generator is square");
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { ONE } else { ZERO };
        id + I * s * m[(i, j)] - (1.0 - c) * g2[(i, j)]
    })
}
