//! Invariant ω-phases of the n = 4 and n = 5 chains and the phase symmetries
//! of the parameterisation.
//!
//! For an ascending chain with characteristic vectors `x` (order 3), `y`
//! (order 4) and `z` (order 5):
//!
//! ```text
//! n = 4:  ω₁ = φ(x₂) − φ(x₁)    ω₂ = φ(y₂) − φ(y₁)    ω₃ = φ(x₂) + φ(y₃) − φ(y₂)
//! n = 5:  ω₁ = φ(x₂) − φ(x₁)    ω₂ = φ(y₂) − φ(y₁)    ω₃ = φ(z₂) − φ(z₁)
//!         ω₄ = φ(x₂) + φ(y₃) − φ(y₂)
//!         ω₅ = φ(x₂) + φ(z₃) − φ(z₂)
//!         ω₆ = φ(y₃) + φ(z₄) − φ(z₃)
//! ```

use crate::decomposition::{Decomposition, FactorOrder};
use crate::error::{Error, Result};
use crate::factor::CharVector;
use crate::matrix::{wrap_angle, Complex};

const ORDER_TWO_TOL: f64 = 1e-12;

/// Phase symmetry `S_m`: multiplies the order-`(m+2)` characteristic vector
/// by `e^{iφ}` and component `m + 1` (0-based) of every higher-order vector by
/// `e^{−iφ}`. The composed matrix changes by `D V D†` with
/// `D = diag(…, e^{−iφ}, …)` at position `m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    S1,
    S2,
    S3,
}

impl Symmetry {
    fn index(self) -> usize {
        match self {
            Symmetry::S1 => 1,
            Symmetry::S2 => 2,
            Symmetry::S3 => 3,
        }
    }
}

/// The `(n − 1)(n − 2)/2` invariant phases of a 4 × 4 or 5 × 5 chain.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSet {
    pub n: usize,
    pub omegas: Vec<f64>,
}

impl OmegaSet {
    /// Largest wrapped angular difference.
    pub fn max_diff(&self, other: &OmegaSet) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.omegas.iter().zip(&other.omegas).map(|(a, b)| wrap_angle(a - b).abs()).fold(0.0, f64::max)
    }
}

fn require_ascending_chain(d: &Decomposition) -> Result<()> {
    if d.order() != FactorOrder::Ascending {
        return Err(Error::Domain(format!("expected an ascending chain, got {}", d.order())));
    }
    let a2 = d.factor_of_order(2).map(|f| f.char_vector().components()[0]);
    if let Some(a2) = a2 {
        if (a2 - Complex::new(1.0, 0.0)).norm() > ORDER_TWO_TOL {
            return Err(Error::Domain(format!(
                "order-2 characteristic vector is {a2}, expected 1 (apply gauge_fix first)"
            )));
        }
    }
    Ok(())
}

pub(crate) fn chain_vector(d: &Decomposition, k: usize) -> &CharVector {
    d.factor_of_order(k).expect("validated structure").char_vector()
}

/// Checks the ascending-order, unit order-2 vector precondition shared by the
/// closed forms.
pub(crate) fn require_canonical_chain(d: &Decomposition, n: usize) -> Result<()> {
    if d.ambient_n() != n {
        return Err(Error::Domain(format!("expected n = {n}, got {}", d.ambient_n())));
    }
    require_ascending_chain(d)
}

/// ω-phases from the component phases of the characteristic vectors.
pub fn omega_from_params(d: &Decomposition) -> Result<OmegaSet> {
    let n = d.ambient_n();
    if n != 4 && n != 5 {
        return Err(Error::Domain(format!("omega phases are defined for n = 4 or 5, got {n}")));
    }
    require_ascending_chain(d)?;
    let phi = |k: usize, i: usize| chain_vector(d, k).components()[i - 1].arg();
    let (x, y) = (|i| phi(3, i), |i| phi(4, i));
    let omegas = if n == 4 {
        vec![x(2) - x(1), y(2) - y(1), x(2) + y(3) - y(2)]
    } else {
        let z = |i| phi(5, i);
        vec![x(2) - x(1), y(2) - y(1), z(2) - z(1), x(2) + y(3) - y(2), x(2) + z(3) - z(2), y(3) + z(4) - z(3)]
    };
    Ok(OmegaSet { n, omegas: omegas.into_iter().map(wrap_angle).collect() })
}

/// Applies a phase symmetry to the characteristic vectors.
pub fn apply_symmetry(d: &Decomposition, which: Symmetry, phase: f64) -> Result<Decomposition> {
    let n = d.ambient_n();
    let m = which.index();
    if !(n == 4 || n == 5) || m + 2 > n {
        return Err(Error::Domain(format!("{which:?} is not a symmetry of the n = {n} chain")));
    }
    let pos = m + 1;
    let factors = d
        .factors()
        .iter()
        .map(|f| {
            let k = f.order();
            let mut a = f.char_vector().components().to_vec();
            if k == pos + 1 {
                a.iter_mut().for_each(|z| *z *= Complex::from_polar(1.0, phase));
            } else if k > pos + 1 {
                a[pos] *= Complex::from_polar(1.0, -phase);
            }
            f.with_char(CharVector::from_raw(a))
        })
        .collect::<Result<Vec<_>>>()?;
    Decomposition::new(n, factors, d.left_phases().clone(), d.right_phases().clone())
}
