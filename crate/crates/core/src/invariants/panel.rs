//! Nearest-neighbour plaquettes ("minipanels") and the six unitarity
//! relations that tie the nine 4 × 4 panels to a basis `{J₁₁, J₂₂, J₃₃}`.
//!
//! Each relation follows from one orthogonality condition `Σ z = 0` between
//! two rows or two columns and the identity
//! `|z_b|² Im(z_a z_c*) = Re(z_a z_b*) Im(z_b z_c*) + Im(z_a z_b*) Re(z_b z_c*)`.
//! All six were checked against that derivation; none needed index changes.

use crate::error::{Error, Result};
use crate::invariants::plaquette::raw_product;
use crate::matrix::{Complex, ComplexMatrix};

/// `P_ab = R_ab + i J_ab`, the plaquette of rows `(a, a+1)` and columns `(b, b+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelLattice {
    n: usize,
    panels: Vec<Complex>,
}

impl PanelLattice {
    /// Matrix dimension (the lattice is `(n−1) × (n−1)`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.n - 1
    }

    /// Panel at 0-based lattice position `(a, b)`.
    pub fn panel(&self, a: usize, b: usize) -> Complex {
        self.panels[a * self.side() + b]
    }

    pub fn r(&self, a: usize, b: usize) -> f64 {
        self.panel(a, b).re
    }

    pub fn j(&self, a: usize, b: usize) -> f64 {
        self.panel(a, b).im
    }

    /// Rows of the lattice.
    pub fn grid(&self) -> Vec<Vec<Complex>> {
        self.panels.chunks(self.side()).map(<[Complex]>::to_vec).collect()
    }
}

pub fn panel_lattice(x: &ComplexMatrix) -> Result<PanelLattice> {
    if !x.is_square() || x.rows() < 2 {
        return Err(Error::Shape("panel lattice needs a square matrix with n >= 2".into()));
    }
    let m = x.rows() - 1;
    let panels =
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| raw_product(x, (a, a + 1), (b, b + 1))).collect();
    Ok(PanelLattice { n: x.rows(), panels })
}

/// 1-based elements that appear in the denominators of the six relations.
const DENOMINATOR_ELEMENTS: [(usize, usize); 8] = [(1, 2), (2, 2), (3, 3), (3, 4), (2, 1), (4, 3), (3, 2), (2, 3)];

fn check_n4(x: &ComplexMatrix, tol: f64) -> Result<()> {
    if !x.is_square() || x.rows() != 4 {
        return Err(Error::Domain(format!("panel relations need a 4x4 matrix, got {}x{}", x.rows(), x.cols())));
    }
    let vanishing: Vec<String> = DENOMINATOR_ELEMENTS
        .iter()
        .filter(|(i, j)| x[(i - 1, j - 1)].norm() <= tol)
        .map(|(i, j)| format!("V{i}{j}"))
        .collect();
    if !vanishing.is_empty() {
        return Err(Error::Precondition(format!(
            "cannot divide by vanishing matrix elements {}",
            vanishing.join(", ")
        )));
    }
    Ok(())
}

/// Coefficients of the six relations written as
/// `lhs_unknown = p · other_unknown + q · basis_term`.
struct Relations {
    // (1) J13 = (1 + R11/d1) J12 + (R12/d1) J11
    // (2) J13 = (1 + R33/d2) J23 + (R23/d2) J33
    // (3) J31 = (1 + R11/d3) J21 + (R21/d3) J11
    // (4) J31 = (1 + R33/d4) J32 + (R32/d4) J33
    // (5) J12 = (R22/d5) J32 + (1 + R32/d5) J22
    // (6) J21 = (R22/d6) J23 + (1 + R23/d6) J22
    p: [f64; 6],
    q: [f64; 6],
}

impl Relations {
    fn new(x: &ComplexMatrix, l: &PanelLattice) -> Self {
        let v = |i: usize, j: usize| x[(i - 1, j - 1)];
        let d = |a: Complex, b: Complex| (a * b).norm_sqr();
        let r = |a: usize, b: usize| l.r(a - 1, b - 1);
        let d1 = d(v(1, 2), v(2, 2));
        let d2 = d(v(3, 3), v(3, 4));
        let d3 = d(v(2, 1), v(2, 2));
        let d4 = d(v(3, 3), v(4, 3));
        let d5 = d(v(3, 2), v(3, 3));
        let d6 = d(v(2, 3), v(3, 3));
        Relations {
            p: [
                1.0 + r(1, 1) / d1,
                1.0 + r(3, 3) / d2,
                1.0 + r(1, 1) / d3,
                1.0 + r(3, 3) / d4,
                r(2, 2) / d5,
                r(2, 2) / d6,
            ],
            q: [r(1, 2) / d1, r(2, 3) / d2, r(2, 1) / d3, r(3, 2) / d4, 1.0 + r(3, 2) / d5, 1.0 + r(2, 3) / d6],
        }
    }

    /// `(lhs, other, basis)` 1-based panel labels per relation.
    const TERMS: [[(usize, usize); 3]; 6] = [
        [(1, 3), (1, 2), (1, 1)],
        [(1, 3), (2, 3), (3, 3)],
        [(3, 1), (2, 1), (1, 1)],
        [(3, 1), (3, 2), (3, 3)],
        [(1, 2), (3, 2), (2, 2)],
        [(2, 1), (2, 3), (2, 2)],
    ];

    fn residuals(&self, j: impl Fn(usize, usize) -> f64) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (t, [lhs, other, basis]) in Self::TERMS.iter().enumerate() {
            out[t] = j(lhs.0, lhs.1) - self.p[t] * j(other.0, other.1) - self.q[t] * j(basis.0, basis.1);
        }
        out
    }
}

/// LHS − RHS of each of the six relations for a 4 × 4 unitary.
///
/// Fails with a precondition error if any denominator element has modulus
/// at most `tol`.
pub fn panel_relation_residuals(x: &ComplexMatrix, tol: f64) -> Result<[f64; 6]> {
    check_n4(x, tol)?;
    let lattice = panel_lattice(x)?;
    let rel = Relations::new(x, &lattice);
    Ok(rel.residuals(|a, b| lattice.j(a - 1, b - 1)))
}

/// Dependent panels reconstructed from `{J₁₁, J₂₂, J₃₃}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSolution {
    /// 1-based lattice labels and solved `J`, in the order
    /// `J12, J13, J21, J23, J31, J32`.
    pub solved: Vec<((usize, usize), f64)>,
    /// Directly measured values for the same labels.
    pub direct: Vec<((usize, usize), f64)>,
}

impl BasisSolution {
    pub fn max_deviation(&self) -> f64 {
        self.solved.iter().zip(&self.direct).map(|(a, b)| (a.1 - b.1).abs()).fold(0.0, f64::max)
    }
}

const UNKNOWNS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

/// Solves the six relations for the dependent panels given the basis panels
/// and the real parts.
///
/// The relations couple the six unknowns in a single cycle
/// (J13–J12–J32–J31–J21–J23–J13), so the system is solved as a whole by
/// Gaussian elimination with partial pivoting.
pub fn basis_solve_n4(x: &ComplexMatrix, tol: f64) -> Result<BasisSolution> {
    check_n4(x, tol)?;
    let lattice = panel_lattice(x)?;
    let rel = Relations::new(x, &lattice);
    let col = |label: (usize, usize)| UNKNOWNS.iter().position(|u| *u == label);
    let mut a = [[0.0f64; 6]; 6];
    let mut b = [0.0f64; 6];
    for (t, [lhs, other, basis]) in Relations::TERMS.iter().enumerate() {
        // lhs − p·other − q·basis = 0, with basis ∈ {J11, J22, J33} or unknown
        a[t][col(*lhs).expect("lhs is unknown")] += 1.0;
        match col(*other) {
            Some(c) => a[t][c] -= rel.p[t],
            None => b[t] += rel.p[t] * lattice.j(other.0 - 1, other.1 - 1),
        }
        match col(*basis) {
            Some(c) => a[t][c] -= rel.q[t],
            None => b[t] += rel.q[t] * lattice.j(basis.0 - 1, basis.1 - 1),
        }
    }
    let solution = solve_dense(a, b).ok_or_else(|| Error::Unsolvable {
        reason: "panel relations are singular for this matrix".into(),
        residuals: rel.residuals(|p, q| lattice.j(p - 1, q - 1)).to_vec(),
    })?;
    Ok(BasisSolution {
        solved: UNKNOWNS.iter().zip(solution).map(|(l, v)| (*l, v)).collect(),
        direct: UNKNOWNS.iter().map(|l| (*l, lattice.j(l.0 - 1, l.1 - 1))).collect(),
    })
}

fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for c in 0..N {
        let p = (c..N).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-13 * scale {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for r in c + 1..N {
            let f = a[r][c] / a[c][c];
            let pivot = a[c];
            for (x, y) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * y;
            }
            b[r] -= f * b[c];
        }
    }
    let mut out = [0.0; N];
    for r in (0..N).rev() {
        let tail: f64 = (r + 1..N).map(|k| a[r][k] * out[k]).sum();
        out[r] = (b[r] - tail) / a[r][r];
    }
    Some(out)
}
