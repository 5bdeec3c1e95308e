//! Serialisable report documents. All indices are 1-based.

use serde::Serialize;

use recunitary::invariants::{
    BasisSolution, PanelLattice, PlaquetteTable, TextureClass, UnitarityPolygon, ZeroTextureReport,
};
use recunitary::json::MatrixJson;

fn one_based(p: (usize, usize)) -> [usize; 2] {
    [p.0 + 1, p.1 + 1]
}

#[derive(Debug, Serialize)]
pub struct PlaquetteEntry {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub re: f64,
    pub im: f64,
}

pub fn plaquette_entries(t: &PlaquetteTable) -> Vec<PlaquetteEntry> {
    t.iter()
        .map(|p| PlaquetteEntry {
            rows: one_based(p.index.rows),
            cols: one_based(p.index.cols),
            re: p.re(),
            im: p.im(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct PolygonEntry {
    pub kind: recunitary::invariants::PairKind,
    pub pair: [usize; 2],
    pub sides: usize,
    pub area: f64,
}

impl PolygonEntry {
    pub fn new(p: &UnitarityPolygon, tol: f64) -> Self {
        Self { kind: p.kind, pair: one_based(p.pair), sides: p.nonzero_sides(tol), area: p.area }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub n: usize,
    pub independent_phases: usize,
    pub plaquettes: Vec<PlaquetteEntry>,
    pub triangles: Vec<PolygonEntry>,
    /// Present when the input was a 4x4 or 5x5 chain.
    pub omegas: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct LabelledValue {
    pub panel: [usize; 2],
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct BasisReport {
    pub solved: Vec<LabelledValue>,
    pub direct: Vec<LabelledValue>,
    pub max_deviation: f64,
}

impl From<&BasisSolution> for BasisReport {
    fn from(s: &BasisSolution) -> Self {
        let conv = |v: &[((usize, usize), f64)]| {
            v.iter().map(|(l, x)| LabelledValue { panel: [l.0, l.1], value: *x }).collect()
        };
        Self { solved: conv(&s.solved), direct: conv(&s.direct), max_deviation: s.max_deviation() }
    }
}

#[derive(Debug, Serialize)]
pub struct PanelReport {
    pub n: usize,
    /// `lattice[a][b] = [R, J]` for rows `(a, a+1)` and columns `(b, b+1)`.
    pub lattice: Vec<Vec<[f64; 2]>>,
    pub relation_residuals: Option<[f64; 6]>,
    pub basis: Option<BasisReport>,
}

pub fn lattice_grid(l: &PanelLattice) -> Vec<Vec<[f64; 2]>> {
    l.grid().into_iter().map(|row| row.into_iter().map(|z| [z.re, z.im]).collect()).collect()
}

#[derive(Debug, Serialize)]
pub struct SignEntry {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub class: TextureClass,
}

#[derive(Debug, Serialize)]
pub struct TriangleArea {
    pub kind: recunitary::invariants::PairKind,
    pub pair: [usize; 2],
    pub area: f64,
}

#[derive(Debug, Serialize)]
pub struct ChainReport {
    pub theta: [f64; 3],
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "J_prime")]
    pub j_prime: f64,
    pub predicted_ratio: f64,
    pub moduli_residuals: [f64; 3],
}

#[derive(Debug, Serialize)]
pub struct TextureReport {
    pub zeros: [[usize; 2]; 2],
    pub row_perm: [usize; 4],
    pub col_perm: [usize; 4],
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "J_prime")]
    pub j_prime: f64,
    pub ratio: f64,
    pub vanishing_count: usize,
    pub sign_pattern: Vec<SignEntry>,
    pub sign_pattern_residual: f64,
    pub sum_residual: f64,
    pub modulus_ratio_residuals: [f64; 4],
    pub triangle_areas: Vec<TriangleArea>,
    pub chain: ChainReport,
}

impl From<&ZeroTextureReport> for TextureReport {
    fn from(r: &ZeroTextureReport) -> Self {
        Self {
            zeros: [one_based(r.zeros[0]), one_based(r.zeros[1])],
            row_perm: r.row_perm.map(|i| i + 1),
            col_perm: r.col_perm.map(|i| i + 1),
            j: r.j,
            j_prime: r.j_prime,
            ratio: r.ratio,
            vanishing_count: r.vanishing_count,
            sign_pattern: r
                .sign_pattern
                .iter()
                .map(|(idx, class)| SignEntry { rows: one_based(idx.rows), cols: one_based(idx.cols), class: *class })
                .collect(),
            sign_pattern_residual: r.sign_pattern_residual,
            sum_residual: r.sum_residual,
            modulus_ratio_residuals: r.modulus_ratio_residuals,
            triangle_areas: r
                .triangles
                .iter()
                .map(|t| TriangleArea { kind: t.kind, pair: one_based(t.pair), area: t.area })
                .collect(),
            chain: ChainReport {
                theta: r.chain.theta,
                j: r.chain.j,
                j_prime: r.chain.j_prime,
                predicted_ratio: r.chain.predicted_ratio,
                moduli_residuals: r.chain.moduli_residuals,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SymmetricReport {
    pub n: usize,
    pub param_count: Option<usize>,
    pub symmetry_defect: f64,
    pub unitarity_defect: f64,
    /// `(12;12)` of the matrix when `n >= 3`.
    pub j: Option<f64>,
    pub matrix: MatrixJson,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// `null` when the check could not be carried out.
    pub residual: Option<f64>,
    pub status: CheckStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    pub max_residual: f64,
    pub passed: bool,
}
