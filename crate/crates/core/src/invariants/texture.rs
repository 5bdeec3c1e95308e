//! Analysis of 4 × 4 unitaries with two vanishing entries on distinct rows and
//! columns.
//!
//! Two frames are used. Frame A relabels rows and columns so the zeros sit at
//! (1,4) and (4,1); there `J = (12;12)` and `J′ = (34;34)`. Frame B swaps
//! index 1 with 3 on both sides of frame A, moving the zeros to (3,4) and (4,3),
//! where the ascending chain has `y₃ = 0` and the closed forms for `J`, `J′`
//! apply.

use serde::Serialize;

use crate::decomposition::{decompose, gauge_fix, reorder_to, FactorOrder};
use crate::error::{Error, Result};
use crate::invariants::closed_form::texture_j_pair;
use crate::invariants::omega::chain_vector;
use crate::invariants::plaquette::{plaquette_table, PlaquetteIndex};
use crate::invariants::triangle::{triangle_areas, UnitarityPolygon};
use crate::matrix::ComplexMatrix;

/// Im-invariants at or below this modulus count as vanishing.
pub const VANISHING_THRESHOLD: f64 = 1e-10;
/// Default threshold below which a matrix entry counts as a texture zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;
const DECOMPOSE_TOL: f64 = 1e-12;
const FRAME_B: [usize; 4] = [2, 1, 0, 3];

/// Which combination of `J` and `J′` a frame-A invariant equals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TextureClass {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+J")]
    PlusJ,
    #[serde(rename = "-J")]
    MinusJ,
    #[serde(rename = "+J'")]
    PlusJPrime,
    #[serde(rename = "-J'")]
    MinusJPrime,
    #[serde(rename = "J+J'")]
    Sum,
}

impl TextureClass {
    const ALL: [TextureClass; 6] = [
        TextureClass::Zero,
        TextureClass::PlusJ,
        TextureClass::MinusJ,
        TextureClass::PlusJPrime,
        TextureClass::MinusJPrime,
        TextureClass::Sum,
    ];

    pub fn value(self, j: f64, j_prime: f64) -> f64 {
        match self {
            TextureClass::Zero => 0.0,
            TextureClass::PlusJ => j,
            TextureClass::MinusJ => -j,
            TextureClass::PlusJPrime => j_prime,
            TextureClass::MinusJPrime => -j_prime,
            TextureClass::Sum => j + j_prime,
        }
    }

    fn nearest(v: f64, j: f64, j_prime: f64) -> (TextureClass, f64) {
        TextureClass::ALL
            .iter()
            .map(|c| (*c, (v - c.value(j, j_prime)).abs()))
            .fold((TextureClass::Zero, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }
}

/// Chain-parameter view of the texture, from the ascending decomposition of
/// the frame-B matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TextureChain {
    pub theta: [f64; 3],
    /// `c₂c₃c₄s₂s₃² Im(x₁*x₂)`.
    pub j: f64,
    /// `−c₂c₃c₄s₂s₄² Im(x₁*x₂)`.
    pub j_prime: f64,
    /// `−s₄² / s₃²`.
    pub predicted_ratio: f64,
    /// `| |y₁| − |x₂| |`, `| |y₂| − |x₁| |` and `|y₃|`.
    pub moduli_residuals: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTextureReport {
    /// The two zero entries in the caller's frame (0-based).
    pub zeros: [(usize, usize); 2],
    /// Frame A is `x[row_perm[i], col_perm[j]]`.
    pub row_perm: [usize; 4],
    pub col_perm: [usize; 4],
    pub j: f64,
    pub j_prime: f64,
    /// Measured `J′ / J`.
    pub ratio: f64,
    pub vanishing_count: usize,
    /// Every canonical frame-A invariant with its nearest class.
    pub sign_pattern: Vec<(PlaquetteIndex, TextureClass)>,
    /// Largest distance between an invariant and its class value.
    pub sign_pattern_residual: f64,
    /// `|(23;23) − (J + J′)|`.
    pub sum_residual: f64,
    /// The four modulus expressions for `J′²/J²`, each minus the measured value.
    pub modulus_ratio_residuals: [f64; 4],
    /// Frame-A unitarity polygons with exactly three nonvanishing sides.
    pub triangles: Vec<UnitarityPolygon>,
    pub chain: TextureChain,
}

fn find_zeros(x: &ComplexMatrix, tol: f64) -> Result<[(usize, usize); 2]> {
    if x.rows() != 4 || x.cols() != 4 {
        return Err(Error::Domain(format!("zero texture analysis needs a 4x4 matrix, got {}x{}", x.rows(), x.cols())));
    }
    let zeros: Vec<(usize, usize)> =
        (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| x[(i, j)].norm() < tol).collect();
    let listed = zeros.iter().map(|(i, j)| format!("V{}{}", i + 1, j + 1)).collect::<Vec<_>>().join(", ");
    match zeros.as_slice() {
        [a, b] if a.0 != b.0 && a.1 != b.1 => Ok([*a, *b]),
        [_, _] => Err(Error::Domain(format!("vanishing entries {listed} share a row or column"))),
        _ => Err(Error::Domain(format!(
            "expected exactly two vanishing entries below {tol:e}, found {}{}",
            zeros.len(),
            if zeros.is_empty() { String::new() } else { format!(": {listed}") }
        ))),
    }
}

fn frame_perm(first: usize, last: usize) -> [usize; 4] {
    let mut p = [first, 0, 0, last];
    let mut rest = (0..4).filter(|i| *i != first && *i != last);
    p[1] = rest.next().expect("four indices");
    p[2] = rest.next().expect("four indices");
    p
}

fn texture_chain(b: &ComplexMatrix) -> Result<TextureChain> {
    let d = gauge_fix(&reorder_to(&decompose(b, DECOMPOSE_TOL)?, FactorOrder::Ascending)?);
    let (j, j_prime) = texture_j_pair(&d)?;
    let theta = [2, 3, 4].map(|k| d.factor_of_order(k).expect("complete chain").theta());
    let (s3, s4) = (theta[1].sin(), theta[2].sin());
    let x = chain_vector(&d, 3).components();
    let y = chain_vector(&d, 4).components();
    Ok(TextureChain {
        theta,
        j,
        j_prime,
        predicted_ratio: -(s4 * s4) / (s3 * s3),
        moduli_residuals: [(y[0].norm() - x[1].norm()).abs(), (y[1].norm() - x[0].norm()).abs(), y[2].norm()],
    })
}

/// Locates the two texture zeros, relabels to the standard frames and reports
/// the invariant structure, triangle areas and chain-parameter closed forms.
pub fn zero_texture_analysis(x: &ComplexMatrix, tol: f64) -> Result<ZeroTextureReport> {
    let zeros = find_zeros(x, tol)?;
    let [(r1, c1), (r2, c2)] = zeros;
    let row_perm = frame_perm(r1, r2);
    let col_perm = frame_perm(c2, c1);
    let a = x.permuted(&row_perm, &col_perm);

    let table = plaquette_table(&a)?;
    let j = table.im((0, 1), (0, 1))?;
    let j_prime = table.im((2, 3), (2, 3))?;
    let vanishing_count = table.iter().filter(|p| p.im().abs() <= VANISHING_THRESHOLD).count();
    let mut sign_pattern_residual: f64 = 0.0;
    let sign_pattern = table
        .iter()
        .map(|p| {
            let (class, r) = TextureClass::nearest(p.im(), j, j_prime);
            sign_pattern_residual = sign_pattern_residual.max(r);
            (p.index, class)
        })
        .collect();
    let sum_residual = (table.im((1, 2), (1, 2))? - (j + j_prime)).abs();

    let m = |i: usize, k: usize| a[(i - 1, k - 1)].norm();
    let target = (j_prime / j).powi(2);
    let modulus_ratio_residuals = [
        (m(2, 4) * m(3, 4) / (m(2, 1) * m(3, 1))).powi(2) - target,
        (m(4, 2) * m(4, 3) / (m(1, 2) * m(1, 3))).powi(2) - target,
        ((m(2, 4).powi(2) + m(3, 4).powi(2)) / (m(1, 2).powi(2) + m(1, 3).powi(2))).powi(2) - target,
        ((m(4, 2).powi(2) + m(4, 3).powi(2)) / (m(2, 1).powi(2) + m(3, 1).powi(2))).powi(2) - target,
    ];

    let triangles = triangle_areas(&a)?.into_iter().filter(|t| t.nonzero_sides(tol) == 3).collect();
    let chain = texture_chain(&a.permuted(&FRAME_B, &FRAME_B))?;

    Ok(ZeroTextureReport {
        zeros,
        row_perm,
        col_perm,
        j,
        j_prime,
        ratio: j_prime / j,
        vanishing_count,
        sign_pattern,
        sign_pattern_residual,
        sum_residual,
        modulus_ratio_residuals,
        triangles,
        chain,
    })
}

/// Builds a frame-B texture: the ascending chain with the given angles, order-3
/// vector `x` and order-4 vector `e^{iχ}(x₂*, −x₁*, 0)`, which forces
/// `V₃₄ = V₄₃ = 0`.
pub fn texture_chain_matrix(theta: [f64; 3], x: [crate::matrix::Complex; 2], chi: f64) -> Result<ComplexMatrix> {
    use crate::decomposition::Decomposition;
    use crate::factor::{CharVector, Factor};
    use crate::matrix::{Complex, PhaseVector};
    let x = CharVector::new(x.to_vec())?;
    let [x1, x2] = [x.components()[0], x.components()[1]];
    let rot = Complex::from_polar(1.0, chi);
    let y = CharVector::new(vec![rot * x2.conj(), -rot * x1.conj(), Complex::new(0.0, 0.0)])?;
    let factors = vec![
        Factor::new(4, 2, theta[0], CharVector::basis(1, 0))?,
        Factor::new(4, 3, theta[1], x)?,
        Factor::new(4, 4, theta[2], y)?,
    ];
    Ok(Decomposition::new(4, factors, PhaseVector::zeros(4), PhaseVector::zeros(4))?.compose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{haar_random, Complex};

    fn sample(seed: u64) -> (ComplexMatrix, [f64; 3]) {
        let t = 0.1 * seed as f64;
        let theta = [0.5 + 0.2 * t.sin(), 0.7 + 0.1 * t.cos(), 1.0 + 0.15 * (2.0 * t).sin()];
        let x1 = Complex::from_polar(0.6, 0.3 + t);
        let x2 = Complex::from_polar(0.8, -1.1 - 0.5 * t);
        (texture_chain_matrix(theta, [x1, x2], 0.4 + t).unwrap(), theta)
    }

    #[test]
    fn frame_b_construction_has_zeros() {
        let (v, _) = sample(1);
        assert!(v[(2, 3)].norm() < 1e-15 && v[(3, 2)].norm() < 1e-15);
        assert!(v.unitarity_defect().unwrap() < 1e-14);
    }

    type ClassEntry = ((usize, usize), (usize, usize), TextureClass);

    fn expected_classes() -> Vec<ClassEntry> {
        use TextureClass::*;
        let p = |a: usize, b: usize, j: usize, k: usize, c| ((a - 1, b - 1), (j - 1, k - 1), c);
        vec![
            p(1, 2, 1, 2, PlusJ),
            p(1, 2, 1, 3, MinusJ),
            p(1, 2, 2, 3, PlusJ),
            p(1, 3, 1, 2, MinusJ),
            p(1, 3, 1, 3, PlusJ),
            p(1, 3, 2, 3, MinusJ),
            p(2, 3, 1, 2, PlusJ),
            p(2, 3, 1, 3, MinusJ),
            p(3, 4, 3, 4, PlusJPrime),
            p(2, 3, 2, 4, MinusJPrime),
            p(2, 3, 3, 4, PlusJPrime),
            p(2, 4, 2, 3, MinusJPrime),
            p(2, 4, 2, 4, PlusJPrime),
            p(2, 4, 3, 4, MinusJPrime),
            p(3, 4, 2, 3, PlusJPrime),
            p(3, 4, 2, 4, MinusJPrime),
            p(2, 3, 2, 3, Sum),
        ]
    }

    #[test]
    fn displayed_structure_in_frame_a() {
        for seed in 0..20 {
            let (v, theta) = sample(seed);
            // move the zeros from (3,4),(4,3) to (1,4),(4,1)
            let a = v.permuted(&FRAME_B, &FRAME_B);
            let r = zero_texture_analysis(&a, DEFAULT_ZERO_TOL).unwrap();
            assert_eq!(r.row_perm, [0, 1, 2, 3]);
            assert_eq!(r.col_perm, [0, 1, 2, 3]);
            let table = plaquette_table(&a).unwrap();
            assert_eq!(r.vanishing_count, 19);
            for (rows, cols, class) in expected_classes() {
                let got = table.im(rows, cols).unwrap();
                assert!((got - class.value(r.j, r.j_prime)).abs() < 1e-12, "{rows:?} {cols:?}");
            }
            assert_eq!(r.sign_pattern.iter().filter(|(_, c)| *c != TextureClass::Zero).count(), 17);
            assert!(r.sign_pattern_residual < 1e-12);
            assert!(r.sum_residual < 1e-12);
            let (s3, s4) = (theta[1].sin(), theta[2].sin());
            assert!((r.ratio + s4 * s4 / (s3 * s3)).abs() < 1e-11);
            assert!(r.modulus_ratio_residuals.iter().all(|e| e.abs() < 1e-11));
            assert!((r.chain.j - r.j).abs() < 1e-12 && (r.chain.j_prime - r.j_prime).abs() < 1e-12);
            assert!((r.chain.predicted_ratio - r.ratio).abs() < 1e-11);
            assert!(r.chain.moduli_residuals.iter().all(|e| *e < 1e-12));
            let mut areas: Vec<f64> = r.triangles.iter().map(|t| t.area).collect();
            assert_eq!(areas.len(), 8);
            areas.sort_by(f64::total_cmp);
            let (lo, hi) = if r.j.abs() < r.j_prime.abs() { (r.j, r.j_prime) } else { (r.j_prime, r.j) };
            assert!(areas[..4].iter().all(|s| (s - lo.abs() / 2.0).abs() < 1e-11));
            assert!(areas[4..].iter().all(|s| (s - hi.abs() / 2.0).abs() < 1e-11));
        }
    }

    #[test]
    fn relabelled_input_gives_same_invariants() {
        let (v, _) = sample(3);
        let base = zero_texture_analysis(&v.permuted(&FRAME_B, &FRAME_B), DEFAULT_ZERO_TOL).unwrap();
        let moved = v.permuted(&[1, 3, 0, 2], &[0, 2, 1, 3]);
        let r = zero_texture_analysis(&moved, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(r.vanishing_count, 19);
        let mut got = [r.j.abs(), r.j_prime.abs()];
        let mut want = [base.j.abs(), base.j_prime.abs()];
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert!((got[0] - want[0]).abs() < 1e-12 && (got[1] - want[1]).abs() < 1e-12);
        assert!(r.sum_residual < 1e-12 && r.sign_pattern_residual < 1e-12);
    }

    #[test]
    fn precondition_errors_name_entries() {
        let err = zero_texture_analysis(&haar_random(4, 1).unwrap(), DEFAULT_ZERO_TOL).unwrap_err();
        assert!(err.to_string().contains("found 0"));
        let err = zero_texture_analysis(&ComplexMatrix::identity(4), DEFAULT_ZERO_TOL).unwrap_err();
        assert!(err.to_string().contains("V12"));
        let same_row = ComplexMatrix::from_fn(4, 4, |i, j| {
            if i == 0 && j >= 2 {
                Complex::new(0.0, 0.0)
            } else {
                Complex::new(0.5, 0.0)
            }
        });
        let err = zero_texture_analysis(&same_row, DEFAULT_ZERO_TOL).unwrap_err();
        assert!(err.to_string().contains("V13, V14"));
        assert!(zero_texture_analysis(&ComplexMatrix::identity(3), DEFAULT_ZERO_TOL).is_err());
    }
}
