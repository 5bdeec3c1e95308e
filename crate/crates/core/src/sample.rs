//! Random parameter generators for tests and demos. All take a caller-owned RNG.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::decomposition::{Decomposition, FactorOrder};
use crate::factor::{CharVector, Factor};
use crate::matrix::{Complex, PhaseVector};

/// Uniformly distributed unit vector in `ℂ^len`.
pub fn random_char_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> CharVector {
    loop {
        let v: Vec<Complex> =
            (0..len).map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        if let Ok(c) = CharVector::normalized(v) {
            return c;
        }
    }
}

/// Uniformly distributed unit vector in `ℝ^len`.
pub fn random_real_unit<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Factor with θ uniform in `(−π, π)` and a random characteristic vector.
pub fn random_factor<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Factor {
    let theta = rng.random_range(-PI..PI);
    Factor::new(n, k, theta, random_char_vector(rng, k - 1)).expect("valid random factor")
}

/// Random decomposition with θ ∈ `[0, π/2]`, zero left phases and random right
/// phases, in the requested product order.
pub fn random_decomposition<R: Rng + ?Sized>(rng: &mut R, n: usize, order: FactorOrder) -> Decomposition {
    let ks: Vec<usize> = match order {
        FactorOrder::Descending => (2..=n).rev().collect(),
        _ => (2..=n).collect(),
    };
    let factors = ks
        .into_iter()
        .map(|k| {
            let theta = rng.random_range(0.0..FRAC_PI_2);
            Factor::new(n, k, theta, random_char_vector(rng, k - 1)).expect("valid random factor")
        })
        .collect();
    let beta = PhaseVector::new((0..n).map(|_| rng.random_range(-PI..PI)).collect()).expect("finite");
    Decomposition::new(n, factors, PhaseVector::zeros(n), beta).expect("valid random decomposition")
}

/// Random phase vector of length `n`.
pub fn random_phases<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PhaseVector {
    PhaseVector::new((0..n).map(|_| rng.random_range(-PI..PI)).collect()).expect("finite")
}
