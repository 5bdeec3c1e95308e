use std::io::Read;
use std::path::Path;

use recunitary::json::{matrix_from_json, params_from_json, ParamsDocument};
use recunitary::{ComplexMatrix, Decomposition};

use crate::commands::CommandError;

pub fn read_source(path: Option<&Path>) -> Result<String, CommandError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CommandError::invalid(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CommandError::invalid(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// A matrix document, or a decomposition that is composed on the spot.
pub enum MatrixSource {
    Matrix(ComplexMatrix),
    Chain(Decomposition),
}

impl MatrixSource {
    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            MatrixSource::Matrix(m) => m.clone(),
            MatrixSource::Chain(d) => d.compose(),
        }
    }
}

pub fn has_key(text: &str, key: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.as_object().map(|o| o.contains_key(key)))
        .unwrap_or(false)
}

pub fn read_matrix(path: Option<&Path>) -> Result<ComplexMatrix, CommandError> {
    let text = read_source(path)?;
    Ok(matrix_from_json(&text)?)
}

pub fn read_matrix_or_chain(path: Option<&Path>) -> Result<MatrixSource, CommandError> {
    let text = read_source(path)?;
    if has_key(&text, "factors") {
        match params_from_json(&text)? {
            ParamsDocument::Chain(d) => Ok(MatrixSource::Chain(d)),
            ParamsDocument::Symmetric(_) => unreachable!("dispatch is on the factors key"),
        }
    } else {
        Ok(MatrixSource::Matrix(matrix_from_json(&text)?))
    }
}

pub fn read_params(path: Option<&Path>) -> Result<ParamsDocument, CommandError> {
    Ok(params_from_json(&read_source(path)?)?)
}
