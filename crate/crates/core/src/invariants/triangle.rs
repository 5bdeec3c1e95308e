//! Unitarity polygons: the terms of a row- or column-orthogonality relation
//! laid head to tail in the complex plane.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::plaquette::index_pairs;
use crate::matrix::{Complex, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Rows,
    Columns,
}

/// One orthogonality polygon and its (shoelace) area.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityPolygon {
    pub kind: PairKind,
    /// 0-based pair of rows or columns.
    pub pair: (usize, usize),
    /// Side terms: `V_{αj} V*_{βj}` over `j` for rows, `V_{αj} V*_{αk}` over `α` for columns.
    pub sides: Vec<Complex>,
    pub area: f64,
}

impl UnitarityPolygon {
    /// Number of sides with modulus above `tol`.
    pub fn nonzero_sides(&self, tol: f64) -> usize {
        self.sides.iter().filter(|z| z.norm() > tol).count()
    }

    /// Label such as `rows(1,2)`, 1-based.
    pub fn label(&self) -> String {
        let kind = match self.kind {
            PairKind::Rows => "rows",
            PairKind::Columns => "cols",
        };
        format!("{kind}({},{})", self.pair.0 + 1, self.pair.1 + 1)
    }
}

/// Area enclosed by the path `0, z₁, z₁+z₂, …`; for three sides this is
/// `|Im(z₁ z₂*)| / 2`.
pub fn polygon_area(sides: &[Complex]) -> f64 {
    let mut vertex = Complex::new(0.0, 0.0);
    let mut twice = 0.0;
    for z in sides {
        let next = vertex + z;
        twice += (vertex.conj() * next).im;
        vertex = next;
    }
    0.5 * twice.abs()
}

/// Polygons for every row pair, then every column pair.
pub fn triangle_areas(x: &ComplexMatrix) -> Result<Vec<UnitarityPolygon>> {
    if !x.is_square() {
        return Err(Error::Shape("unitarity polygons need a square matrix".into()));
    }
    let n = x.rows();
    let mut out = Vec::new();
    for (a, b) in index_pairs(n) {
        let sides: Vec<Complex> = (0..n).map(|j| x[(a, j)] * x[(b, j)].conj()).collect();
        out.push(UnitarityPolygon { kind: PairKind::Rows, pair: (a, b), area: polygon_area(&sides), sides });
    }
    for (j, k) in index_pairs(n) {
        let sides: Vec<Complex> = (0..n).map(|a| x[(a, j)] * x[(a, k)].conj()).collect();
        out.push(UnitarityPolygon { kind: PairKind::Columns, pair: (j, k), area: polygon_area(&sides), sides });
    }
    Ok(out)
}
