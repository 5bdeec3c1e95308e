//! Factor chains `X = Φ(α) · A_{n,k₁} ⋯ A_{n,k_{n−1}} · Φ(β)`.
//!
//! Composition, the constructive inverse (peeling one factor per order from
//! the bottom-right corner), reordering of factors and gauge fixing.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::{block, embed_block, CharVector, Factor};
use crate::matrix::{phase_matrix, wrap_angle, Complex, ComplexMatrix, PhaseVector, ONE};

/// Product order of the factors in a [`Decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOrder {
    /// `A_{n,2} A_{n,3} ⋯ A_{n,n}`.
    Ascending,
    /// `A_{n,n} ⋯ A_{n,3} A_{n,2}`, as produced by [`decompose`].
    Descending,
    /// Any other permutation.
    Custom,
}

impl FactorOrder {
    pub fn of(orders: &[usize]) -> Self {
        if orders.windows(2).all(|w| w[0] < w[1]) {
            FactorOrder::Ascending
        } else if orders.windows(2).all(|w| w[0] > w[1]) {
            FactorOrder::Descending
        } else {
            FactorOrder::Custom
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FactorOrder::Ascending => "ascending",
            FactorOrder::Descending => "descending",
            FactorOrder::Custom => "custom",
        }
    }

    /// The permutation of `2..=n` realising this order (`None` for `Custom`).
    pub fn permutation(self, n: usize) -> Option<Vec<usize>> {
        match self {
            FactorOrder::Ascending => Some((2..=n).collect()),
            FactorOrder::Descending => Some((2..=n).rev().collect()),
            FactorOrder::Custom => None,
        }
    }
}

impl fmt::Display for FactorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered factor chain plus left/right external phases.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    ambient_n: usize,
    factors: Vec<Factor>,
    left_phases: PhaseVector,
    right_phases: PhaseVector,
}

impl Decomposition {
    /// Validates that the factors cover each order `2..=n` exactly once.
    pub fn new(
        ambient_n: usize,
        factors: Vec<Factor>,
        left_phases: PhaseVector,
        right_phases: PhaseVector,
    ) -> Result<Self> {
        if ambient_n == 0 {
            return Err(Error::Structure("dimension must be positive".into()));
        }
        if left_phases.len() != ambient_n || right_phases.len() != ambient_n {
            return Err(Error::Structure(format!(
                "phase vectors must have length {ambient_n} (got {} and {})",
                left_phases.len(),
                right_phases.len()
            )));
        }
        let mut seen = vec![false; ambient_n + 1];
        for f in &factors {
            if f.ambient_n() != ambient_n {
                return Err(Error::Structure(format!(
                    "factor of order {} lives in dimension {}, expected {ambient_n}",
                    f.order(),
                    f.ambient_n()
                )));
            }
            if std::mem::replace(&mut seen[f.order()], true) {
                return Err(Error::Structure(format!("duplicate factor of order {}", f.order())));
            }
        }
        let missing: Vec<usize> = (2..=ambient_n).filter(|k| !seen[*k]).collect();
        if !missing.is_empty() {
            return Err(Error::Structure(format!("missing factor orders {missing:?}")));
        }
        Ok(Self { ambient_n, factors, left_phases, right_phases })
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn left_phases(&self) -> &PhaseVector {
        &self.left_phases
    }

    pub fn right_phases(&self) -> &PhaseVector {
        &self.right_phases
    }

    pub fn order(&self) -> FactorOrder {
        FactorOrder::of(&self.orders())
    }

    /// Factor orders in product order.
    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::order).collect()
    }

    /// The factor of order `k`, wherever it sits in the chain.
    pub fn factor_of_order(&self, k: usize) -> Option<&Factor> {
        self.factors.iter().find(|f| f.order() == k)
    }

    /// `Σ_k (2k − 2) + n = n²`: factor parameters plus one phase per column.
    ///
    /// Only sums `α_i + β_j` are observable, so the left phases are not
    /// counted separately.
    pub fn real_parameter_count(&self) -> usize {
        self.factors.iter().map(Factor::real_parameter_count).sum::<usize>() + self.ambient_n
    }

    /// Number of characteristic-vector components whose phase survives gauge
    /// fixing: every component but the last, for each order `k ≥ 3`.
    pub fn free_phase_count(&self) -> usize {
        self.factors.iter().filter(|f| f.order() >= 3).map(|f| f.order() - 2).sum()
    }

    /// `Φ(α) · Π embed(factor) · Φ(β)` in the stored product order.
    pub fn compose(&self) -> ComplexMatrix {
        let mut acc = phase_matrix(&self.left_phases);
        for f in &self.factors {
            acc = acc.matmul(&f.embed()).expect("square factors");
        }
        acc.matmul(&phase_matrix(&self.right_phases)).expect("square factors")
    }
}

/// Free-function form of [`Decomposition::compose`].
pub fn compose(d: &Decomposition) -> ComplexMatrix {
    d.compose()
}

/// Decomposes a unitary into a descending chain with zero left phases.
///
/// For `k = n, …, 2` the last column of the working `k × k` matrix `M` must
/// equal `e^{iβ_k} (s_k |u⟩; c_k)`; reading off `c_k = |M_kk|`,
/// `β_k = arg M_kk` and `|u⟩` and left-multiplying by `𝔸(θ_k, u)†` reduces
/// row and column `k` to `e^{iβ_k}` on the diagonal. The residual `1 × 1`
/// matrix supplies `β_1`.
pub fn decompose(x: &ComplexMatrix, tol: f64) -> Result<Decomposition> {
    if !x.is_square() {
        return Err(Error::Shape(format!("cannot decompose a {}x{} matrix", x.rows(), x.cols())));
    }
    let n = x.rows();
    let defect = x.unitarity_defect()?;
    if defect > tol {
        return Err(Error::Domain(format!("input is not unitary: defect {defect:e} exceeds {tol:e}")));
    }
    let check_tol = 10.0 * tol;
    let mut beta = vec![0.0; n];
    let mut factors = Vec::with_capacity(n.saturating_sub(1));
    let mut m = x.clone();
    for k in (2..=n).rev() {
        let last = k - 1;
        let corner = m[(last, last)];
        let c = corner.norm().clamp(0.0, 1.0);
        let theta = c.acos();
        let phase = if c <= tol { 0.0 } else { corner.arg() };
        let s = theta.sin();
        let char = if s > tol {
            let rot = Complex::from_polar(1.0 / s, -phase);
            CharVector::normalized((0..last).map(|i| m[(i, last)] * rot).collect())?
        } else {
            CharVector::basis(last, last - 1)
        };
        let peel = block(theta, &char).dagger();
        m = peel.matmul(&m)?;
        let target = Complex::from_polar(1.0, phase);
        let mut residual = (m[(last, last)] - target).norm();
        for i in 0..last {
            residual = residual.max(m[(i, last)].norm()).max(m[(last, i)].norm());
        }
        if residual > check_tol {
            return Err(Error::Consistency { what: format!("row/column {k} did not reduce to a phase"), residual });
        }
        beta[last] = phase;
        factors.push(Factor::new(n, k, theta, char)?);
        m = m.leading_block(last);
    }
    beta[0] = m[(0, 0)].arg();
    let d = Decomposition::new(n, factors, PhaseVector::zeros(n), PhaseVector::new(beta)?)?;
    let residual = d.compose().max_diff(x);
    if residual > check_tol {
        return Err(Error::Consistency { what: "recomposition does not reproduce the input".into(), residual });
    }
    Ok(d)
}

/// Flips two adjacent factors: returns `(p, q)` with `p·q = first·second`.
///
/// The lower-order factor passes through unchanged while the higher-order
/// one has its characteristic vector rotated by the lower block (padded to
/// length `k − 1`); both angles are untouched.
pub fn reorder_swap(first: &Factor, second: &Factor) -> Result<(Factor, Factor)> {
    if first.ambient_n() != second.ambient_n() {
        return Err(Error::Domain("factors live in different dimensions".into()));
    }
    if first.order() == second.order() {
        return Err(Error::Domain(format!("cannot swap two factors of order {}", first.order())));
    }
    if first.order() < second.order() {
        // A_r A_s = (A_r A_s A_r†) A_r
        let hat = embed_block(&first.block(), second.order() - 1);
        let rotated = rotate(&hat, second.char_vector());
        Ok((second.with_char(rotated)?, first.clone()))
    } else {
        // A_r A_s = A_s (A_s† A_r A_s)
        let hat = embed_block(&second.block(), first.order() - 1).dagger();
        let rotated = rotate(&hat, first.char_vector());
        Ok((second.clone(), first.with_char(rotated)?))
    }
}

fn rotate(u: &ComplexMatrix, v: &CharVector) -> CharVector {
    let a = v.components();
    CharVector::from_raw((0..u.rows()).map(|i| u.row(i).iter().zip(a).map(|(x, y)| x * y).sum()).collect())
}

/// Reorders the chain to follow `target` (a permutation of `2..=n`) by
/// adjacent swaps. The composed matrix is unchanged.
pub fn reorder_chain(d: &Decomposition, target: &[usize]) -> Result<Decomposition> {
    let n = d.ambient_n();
    let mut sorted = target.to_vec();
    sorted.sort_unstable();
    if sorted != (2..=n).collect::<Vec<_>>() {
        return Err(Error::Domain(format!("{target:?} is not a permutation of 2..={n}")));
    }
    let mut rank = vec![0usize; n + 1];
    for (pos, k) in target.iter().enumerate() {
        rank[*k] = pos;
    }
    let mut factors = d.factors().to_vec();
    loop {
        let mut swapped = false;
        for i in 0..factors.len().saturating_sub(1) {
            if rank[factors[i].order()] > rank[factors[i + 1].order()] {
                let (p, q) = reorder_swap(&factors[i], &factors[i + 1])?;
                factors[i] = p;
                factors[i + 1] = q;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Decomposition::new(n, factors, d.left_phases().clone(), d.right_phases().clone())
}

/// Reorders to a named order; `Custom` is rejected.
pub fn reorder_to(d: &Decomposition, order: FactorOrder) -> Result<Decomposition> {
    let perm = order
        .permutation(d.ambient_n())
        .ok_or_else(|| Error::Domain("cannot reorder to an unspecified custom order".into()))?;
    reorder_chain(d, &perm)
}

/// Canonical gauge: last component of every characteristic vector real and
/// non-negative, order-2 vector exactly 1.
///
/// Conjugating the whole chain by `D = diag(e^{id})` maps each factor to
/// `𝔸(θ, a′)` with `a′_i = e^{i(d_i − d_k)} a_i`. Choosing
/// `d_k = d_{k−1} + arg a^(k)_{k−1}` makes every last component real; the
/// compensating phases land in `α − d` and `β + d`. Valid in any product order.
pub fn gauge_fix(d: &Decomposition) -> Decomposition {
    let n = d.ambient_n();
    let mut shift = vec![0.0; n];
    for k in 2..=n {
        let f = d.factor_of_order(k).expect("validated structure");
        let last = f.char_vector().components()[k - 2];
        shift[k - 1] = shift[k - 2] + last.arg();
    }
    let factors = d
        .factors()
        .iter()
        .map(|f| {
            let k = f.order();
            let a = f.char_vector().components();
            let mut fixed: Vec<Complex> =
                (0..k - 1).map(|i| a[i] * Complex::from_polar(1.0, shift[i] - shift[k - 1])).collect();
            fixed[k - 2] = if k == 2 { ONE } else { Complex::new(a[k - 2].norm(), 0.0) };
            f.with_char(CharVector::from_raw(fixed)).expect("same length")
        })
        .collect();
    let neg: Vec<f64> = shift.iter().map(|x| -x).collect();
    Decomposition {
        ambient_n: n,
        factors,
        left_phases: d.left_phases().shifted(&neg),
        right_phases: d.right_phases().shifted(&shift),
    }
}

/// Free-phase count after gauge fixing, `(n − 1)(n − 2)/2`, from the structure.
pub fn gauge_free_phases(n: usize) -> usize {
    (3..=n).map(|k| k - 2).sum()
}

#[doc(hidden)]
pub fn max_angle_diff(a: &PhaseVector, b: &PhaseVector) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| wrap_angle(x - y).abs()).fold(0.0, f64::max)
}
