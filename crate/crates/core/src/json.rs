//! JSON forms of matrices, decompositions and symmetric parameters.
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major. Keys are
//! written in declaration order and floats in shortest round-trip form, so
//! output is byte-for-byte reproducible.

use serde::{Deserialize, Serialize};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::factor::{CharVector, Factor};
use crate::matrix::{Complex, ComplexMatrix, PhaseVector};
use crate::symmetric::SymmetricParams;

/// `{"n": int, "entries": [[re, im], …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub k: usize,
    pub theta: f64,
    pub char: Vec<[f64; 2]>,
}

/// Factors are listed in product order; `order` must agree with them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub n: usize,
    pub order: String,
    pub factors: Vec<FactorJson>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricJson {
    pub n: usize,
    pub thetas: Vec<f64>,
    pub chars: Vec<Vec<f64>>,
    #[serde(default = "default_half_angle")]
    pub half_angle: bool,
}

fn default_half_angle() -> bool {
    true
}

/// Either kind of parameter document accepted by `compose`.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamsDocument {
    Chain(Decomposition),
    Symmetric(SymmetricParams),
}

fn pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: &[f64; 2], what: &str) -> Result<Complex> {
    if p.iter().all(|x| x.is_finite()) {
        Ok(Complex::new(p[0], p[1]))
    } else {
        Err(Error::Parse(format!("{what}: non-finite number")))
    }
}

fn finite(xs: &[f64], what: &str) -> Result<()> {
    match xs.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::Parse(format!("{what}[{i}] is not finite"))),
        None => Ok(()),
    }
}

impl MatrixJson {
    pub fn from_matrix(x: &ComplexMatrix) -> Result<Self> {
        if !x.is_square() {
            return Err(Error::Shape(format!("only square matrices are serialised, got {}x{}", x.rows(), x.cols())));
        }
        Ok(Self { n: x.rows(), entries: x.as_slice().iter().map(|z| pair(*z)).collect() })
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.n * self.n {
            return Err(Error::Parse(format!(
                "entries: expected {} values for n = {}, got {}",
                self.n * self.n,
                self.n,
                self.entries.len()
            )));
        }
        let data = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, p)| complex(p, &format!("entries[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_row_major(self.n, self.n, data)
    }
}

impl DecompositionJson {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        Self {
            n: d.ambient_n(),
            order: d.order().as_str().to_string(),
            factors: d
                .factors()
                .iter()
                .map(|f| FactorJson {
                    k: f.order(),
                    theta: f.theta(),
                    char: f.char_vector().components().iter().map(|z| pair(*z)).collect(),
                })
                .collect(),
            alpha: d.left_phases().as_slice().to_vec(),
            beta: d.right_phases().as_slice().to_vec(),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let n = self.n;
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if !f.theta.is_finite() {
                    return Err(Error::Parse(format!("factors[{i}].theta is not finite")));
                }
                if f.k < 2 || f.k > n {
                    return Err(Error::Parse(format!("factors[{i}].k = {} is outside 2..={n}", f.k)));
                }
                if f.char.len() != f.k - 1 {
                    return Err(Error::Parse(format!(
                        "factors[{i}].char: expected {} components, got {}",
                        f.k - 1,
                        f.char.len()
                    )));
                }
                let comps = f
                    .char
                    .iter()
                    .enumerate()
                    .map(|(j, p)| complex(p, &format!("factors[{i}].char[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                let char = CharVector::new(comps).map_err(|e| Error::Parse(format!("factors[{i}].char: {e}")))?;
                Factor::new(n, f.k, f.theta, char)
            })
            .collect::<Result<Vec<_>>>()?;
        finite(&self.alpha, "alpha")?;
        finite(&self.beta, "beta")?;
        let d = Decomposition::new(
            n,
            factors,
            PhaseVector::new(self.alpha.clone())?,
            PhaseVector::new(self.beta.clone())?,
        )?;
        if d.order().as_str() != self.order {
            return Err(Error::Parse(format!(
                "order: tag \"{}\" does not match factor sequence ({})",
                self.order,
                d.order()
            )));
        }
        Ok(d)
    }
}

impl SymmetricJson {
    pub fn from_params(p: &SymmetricParams) -> Self {
        Self { n: p.n(), thetas: p.thetas().to_vec(), chars: p.real_chars().to_vec(), half_angle: p.half_angle() }
    }

    pub fn to_params(&self) -> Result<SymmetricParams> {
        SymmetricParams::new(self.n, self.thetas.clone(), self.chars.clone(), self.half_angle)
    }
}

fn to_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn matrix_to_json(x: &ComplexMatrix) -> Result<String> {
    to_string(&MatrixJson::from_matrix(x)?)
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixJson>(s)?.to_matrix()
}

pub fn decomposition_to_json(d: &Decomposition) -> Result<String> {
    to_string(&DecompositionJson::from_decomposition(d))
}

pub fn decomposition_from_json(s: &str) -> Result<Decomposition> {
    serde_json::from_str::<DecompositionJson>(s)?.to_decomposition()
}

pub fn symmetric_to_json(p: &SymmetricParams) -> Result<String> {
    to_string(&SymmetricJson::from_params(p))
}

pub fn symmetric_from_json(s: &str) -> Result<SymmetricParams> {
    serde_json::from_str::<SymmetricJson>(s)?.to_params()
}

/// Reads a decomposition or symmetric-parameter document, told apart by the
/// presence of a `"factors"` or `"thetas"` key.
pub fn params_from_json(s: &str) -> Result<ParamsDocument> {
    let value: serde_json::Value = serde_json::from_str(s)?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("factors") {
        Ok(ParamsDocument::Chain(serde_json::from_value::<DecompositionJson>(value)?.to_decomposition()?))
    } else if obj.contains_key("thetas") {
        Ok(ParamsDocument::Symmetric(serde_json::from_value::<SymmetricJson>(value)?.to_params()?))
    } else {
        Err(Error::Parse("expected a decomposition (\"factors\") or symmetric parameters (\"thetas\")".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose, gauge_fix};
    use crate::matrix::haar_random;

    #[test]
    fn matrix_round_trip_is_exact() {
        let x = haar_random(4, 3).unwrap();
        let s = matrix_to_json(&x).unwrap();
        assert_eq!(matrix_from_json(&s).unwrap(), x);
        assert_eq!(matrix_to_json(&matrix_from_json(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn matrix_rejects_bad_input() {
        assert!(matches!(matrix_from_json(r#"{"n": 2, "entries": [[1,0],[0,0],[0,0]]}"#), Err(Error::Parse(_))));
        assert!(matrix_from_json(r#"{"n": 1, "entries": [[1e999, 0]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n": 1, "entries": [[1, 0, 3]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n": 1, "entries": [[1, 0]], "extra": 1}"#).is_err());
        let err = matrix_from_json("{\n  \"n\": 1,\n  \"entries\": [[1, \"a\"]]\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn decomposition_round_trip() {
        let x = haar_random(5, 9).unwrap();
        let d = gauge_fix(&decompose(&x, 1e-12).unwrap());
        let s = decomposition_to_json(&d).unwrap();
        assert!(s.contains("\"order\": \"descending\""));
        let back = decomposition_from_json(&s).unwrap();
        assert_eq!(back, d);
        assert!(back.compose().max_diff(&x) < 1e-10);
    }

    #[test]
    fn decomposition_validation() {
        let good = r#"{"n": 2, "order": "ascending", "factors": [{"k": 2, "theta": 0.3, "char": [[0, 1]]}], "alpha": [0, 0], "beta": [0.1, 0.2]}"#;
        assert!(decomposition_from_json(good).is_ok());
        let bad_norm = good.replace("[[0, 1]]", "[[0, 2]]");
        assert!(decomposition_from_json(&bad_norm).unwrap_err().to_string().contains("factors[0].char"));
        let bad_tag = good.replace("ascending", "descending");
        assert!(decomposition_from_json(&bad_tag).is_err());
        let bad_len = good.replace("[0.1, 0.2]", "[0.1]");
        assert!(decomposition_from_json(&bad_len).is_err());
        let bad_k = good.replace("\"k\": 2", "\"k\": 3");
        assert!(decomposition_from_json(&bad_k).is_err());
    }

    #[test]
    fn symmetric_round_trip_and_dispatch() {
        let s = r#"{"n": 3, "thetas": [0.4, 0.9], "chars": [[1.0], [0.6, 0.8]]}"#;
        let p = symmetric_from_json(s).unwrap();
        assert!(p.half_angle());
        assert_eq!(symmetric_from_json(&symmetric_to_json(&p).unwrap()).unwrap(), p);
        assert!(matches!(params_from_json(s).unwrap(), ParamsDocument::Symmetric(_)));
        assert!(params_from_json(r#"{"n": 2}"#).is_err());
        assert!(symmetric_from_json(r#"{"n": 3, "thetas": [0.4, 0.9], "chars": [[1.0], [0.6, 0.6]]}"#).is_err());
    }
}
