use std::fs;
use std::path::Path;

use knset::fan::{Fan, FanError};
use knset::io::{ComplexSpec, FanSpec, PolytopeSpec};
use knset::polytope::{HPolytope, PolytopeError};
use knset::SimplicialComplex;
use serde_json::Value;

use crate::args::Kind;
use crate::error::CliError;

pub enum Input {
    Fan(Fan),
    Polytope(HPolytope),
    Complex(SimplicialComplex),
}

impl Input {
    /// The underlying complex, or a hypothesis error for non-simple polytopes.
    pub fn complex(&self) -> Result<SimplicialComplex, CliError> {
        match self {
            Input::Fan(f) => Ok(f.underlying_complex()),
            Input::Polytope(p) => p.facet_nerve().map_err(polytope_error),
            Input::Complex(k) => Ok(k.clone()),
        }
    }

    /// `(m, n)` when the input is a complete fan or a polytope.
    pub fn manifold_dimensions(&self) -> Option<(usize, usize)> {
        match self {
            Input::Fan(f) if f.is_complete() => Some((f.ray_count(), f.dimension())),
            Input::Polytope(p) => Some((p.facet_count(), p.dimension())),
            _ => None,
        }
    }
}

pub fn fan_error(e: FanError) -> CliError {
    match e {
        FanError::NonSimplicialCone(_) => CliError::Hypothesis(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

pub fn polytope_error(e: PolytopeError) -> CliError {
    match e {
        PolytopeError::NotSimple => CliError::Hypothesis(e.to_string()),
        PolytopeError::Fan(f) => fan_error(f),
        _ => CliError::Input(e.to_string()),
    }
}

pub fn load(path: Option<&Path>, kind: Option<Kind>) -> Result<Input, CliError> {
    let path = path.ok_or_else(|| CliError::Input("--input is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let kind = match kind {
        Some(k) => k,
        None => detect(&value)?,
    };
    let parse_err = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
    match kind {
        Kind::Fan => {
            let spec: FanSpec = serde_json::from_value(value).map_err(parse_err)?;
            spec.build().map(Input::Fan).map_err(fan_error)
        }
        Kind::Polytope => {
            let spec: PolytopeSpec = serde_json::from_value(value).map_err(parse_err)?;
            spec.build().map(Input::Polytope).map_err(polytope_error)
        }
        Kind::Complex => {
            let spec: ComplexSpec = serde_json::from_value(value).map_err(parse_err)?;
            spec.build()
                .map(Input::Complex)
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn detect(value: &Value) -> Result<Kind, CliError> {
    let has = |key: &str| value.get(key).is_some();
    if has("A") {
        Ok(Kind::Polytope)
    } else if has("rays") {
        Ok(Kind::Fan)
    } else if has("maximal_faces") {
        Ok(Kind::Complex)
    } else {
        Err(CliError::Input(
            "cannot tell the input kind; pass --kind fan|polytope|complex".into(),
        ))
    }
}
