//! Invariant phases written directly in terms of chain parameters.

use crate::decomposition::Decomposition;
use crate::error::Result;
use crate::invariants::omega::{chain_vector, omega_from_params, require_canonical_chain};

fn angle(d: &Decomposition, k: usize) -> (f64, f64) {
    let (s, c) = d.factor_of_order(k).expect("validated structure").theta().sin_cos();
    (c, s)
}

/// `(12;12) = c₂ c₃ s₂ s₃² Im(x₁* x₂)` for an ascending 3 × 3 chain with unit
/// order-2 vector.
pub fn closed_form_j_n3(d: &Decomposition) -> Result<f64> {
    require_canonical_chain(d, 3)?;
    let (c2, s2) = angle(d, 2);
    let (c3, s3) = angle(d, 3);
    let x = chain_vector(d, 3).components();
    Ok(c2 * c3 * s2 * s3 * s3 * (x[0].conj() * x[1]).im)
}

/// `((34,34), (34,24))` for an ascending 4 × 4 chain, in terms of moduli and
/// the ω-phases:
///
/// ```text
/// (34,34) = c₃c₄s₃s₄² |y₃| [ |x₂y₂| sin ω₃ + |x₁y₁| sin(ω₃ + ω₂ − ω₁) ]
/// (34,24) = c₄s₃s₄² |x₂y₂| [ s₃|x₁y₁| sin(ω₁ − ω₂) − c₃|y₃| sin ω₃ ]
/// ```
pub fn closed_forms_n4(d: &Decomposition) -> Result<(f64, f64)> {
    require_canonical_chain(d, 4)?;
    let w = omega_from_params(d)?.omegas;
    let (c3, s3) = angle(d, 3);
    let (c4, s4) = angle(d, 4);
    let x: Vec<f64> = chain_vector(d, 3).components().iter().map(|z| z.norm()).collect();
    let y: Vec<f64> = chain_vector(d, 4).components().iter().map(|z| z.norm()).collect();
    let j3434 = c3 * c4 * s3 * s4 * s4 * y[2] * (x[1] * y[1] * w[2].sin() + x[0] * y[0] * (w[2] + w[1] - w[0]).sin());
    let j3424 = c4 * s3 * s4 * s4 * x[1] * y[1] * (s3 * x[0] * y[0] * (w[0] - w[1]).sin() - c3 * y[2] * w[2].sin());
    Ok((j3434, j3424))
}

/// `(J, J′)` for a 4 × 4 chain whose matrix has `V₃₄ = V₄₃ = 0`:
/// `J = c₂c₃c₄s₂s₃² Im(x₁*x₂)`, `J′ = −c₂c₃c₄s₂s₄² Im(x₁*x₂)`.
///
/// In that frame `J` is the (23;23) plaquette, `J′` the (14;14) plaquette and
/// (12;12) equals `J + J′`.
pub fn texture_j_pair(d: &Decomposition) -> Result<(f64, f64)> {
    require_canonical_chain(d, 4)?;
    let (c2, s2) = angle(d, 2);
    let (c3, s3) = angle(d, 3);
    let (c4, s4) = angle(d, 4);
    let x = chain_vector(d, 3).components();
    let im = (x[0].conj() * x[1]).im;
    let common = c2 * c3 * c4 * s2 * im;
    Ok((common * s3 * s3, -common * s4 * s4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{gauge_fix, FactorOrder};
    use crate::factor::{CharVector, Factor};
    use crate::invariants::plaquette::plaquette;
    use crate::matrix::{Complex, PhaseVector};
    use crate::sample::random_decomposition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn with_factor(d: &Decomposition, k: usize, theta: f64, char: Option<CharVector>) -> Decomposition {
        let factors = d
            .factors()
            .iter()
            .map(|f| {
                if f.order() == k {
                    Factor::new(f.ambient_n(), k, theta, char.clone().unwrap_or_else(|| f.char_vector().clone()))
                        .unwrap()
                } else {
                    f.clone()
                }
            })
            .collect();
        Decomposition::new(d.ambient_n(), factors, d.left_phases().clone(), d.right_phases().clone()).unwrap()
    }

    #[test]
    fn n3_degenerate_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = gauge_fix(&random_decomposition(&mut rng, 3, FactorOrder::Ascending));
        assert_eq!(closed_form_j_n3(&with_factor(&d, 2, 0.0, None)).unwrap(), 0.0);
        let real = CharVector::new(vec![Complex::new(0.6, 0.0), Complex::new(0.8, 0.0)]).unwrap();
        assert_eq!(closed_form_j_n3(&with_factor(&d, 3, 0.9, Some(real))).unwrap(), 0.0);
    }

    #[test]
    fn n3_matches_measured_plaquette() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let d = gauge_fix(&random_decomposition(&mut rng, 3, FactorOrder::Ascending));
            let measured = plaquette(&d.compose(), (0, 1), (0, 1)).unwrap().im();
            assert!((closed_form_j_n3(&d).unwrap() - measured).abs() < 1e-13);
        }
    }

    #[test]
    fn n4_closed_forms_match_measurement() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let d = gauge_fix(&random_decomposition(&mut rng, 4, FactorOrder::Ascending));
            let v = d.compose();
            let (a, b) = closed_forms_n4(&d).unwrap();
            assert!((a - plaquette(&v, (2, 3), (2, 3)).unwrap().im()).abs() < 1e-12);
            assert!((b - plaquette(&v, (2, 3), (1, 3)).unwrap().im()).abs() < 1e-12);
        }
    }

    #[test]
    fn n4_closed_forms_degenerate() {
        let n = 4;
        let real = |k: usize| CharVector::normalized(vec![Complex::new(1.0, 0.0); k - 1]).unwrap();
        let factors = (2..=n).map(|k| Factor::new(n, k, 0.3 * k as f64, real(k)).unwrap()).collect();
        let d = Decomposition::new(n, factors, PhaseVector::zeros(n), PhaseVector::zeros(n)).unwrap();
        let (a, b) = closed_forms_n4(&d).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = gauge_fix(&random_decomposition(&mut rng, 4, FactorOrder::Ascending));
        assert_eq!(closed_forms_n4(&with_factor(&d, 4, 0.0, None)).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn requires_unit_order_two_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = random_decomposition(&mut rng, 3, FactorOrder::Ascending);
        let twisted = with_factor(&d, 2, 0.5, Some(CharVector::new(vec![Complex::new(0.0, 1.0)]).unwrap()));
        assert!(closed_form_j_n3(&twisted).is_err());
    }
}
