//! System and complex files.
//!
//! System file:
//!
//! ```json
//! { "outcomes": ["a", "b"],
//!   "agents": [ { "name": "1", "credence": { "a": "1/3", "b": "2/3" } } ] }
//! ```
//!
//! Agent order fixes the vertex order. Probabilities are strings: `"p/q"`,
//! integers, or decimals, all read exactly. A zero entry keeps the outcome in
//! the agent's awareness set.
//!
//! Complex file: `{ "vertices": [...], "facets": [[...], ...] }`, closed
//! downward on load.

use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::complex::{ComplexError, RawComplex, SimplicialComplex};
use crate::credence::{AgentSystem, RawSystem, ValidationErrors};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("input is neither a system file (\"agents\") nor a complex file (\"facets\")")]
    UnknownKind,
}

/// Either kind of input file.
#[derive(Debug, Clone)]
pub enum Input {
    System(AgentSystem),
    Complex(SimplicialComplex),
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn parse_system(text: &str) -> Result<AgentSystem, FormatError> {
    let raw: RawSystem = serde_json::from_str(text)?;
    Ok(raw.validate()?)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, FormatError> {
    let raw: RawComplex = serde_json::from_str(text)?;
    Ok(SimplicialComplex::from_raw(&raw)?)
}

/// Dispatches on the top-level keys.
pub fn parse_input(text: &str) -> Result<Input, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("agents").is_some() {
        let raw: RawSystem = serde_json::from_value(value)?;
        Ok(Input::System(raw.validate()?))
    } else if value.get("facets").is_some() {
        let raw: RawComplex = serde_json::from_value(value)?;
        Ok(Input::Complex(SimplicialComplex::from_raw(&raw)?))
    } else {
        Err(FormatError::UnknownKind)
    }
}

pub fn system_to_json(system: &AgentSystem) -> String {
    serde_json::to_string_pretty(&system.to_raw()).expect("raw systems serialize")
}

pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&complex.to_raw()).expect("raw complexes serialize")
}
