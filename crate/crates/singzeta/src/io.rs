//! JSON input formats: semigroups, ring models, and curve descriptions.
//!
//! Every input is an object with a "kind" tag. Semigroups come as numerical
//! generators, modulus multiplicities, or an explicit small-element list;
//! ring models carry truncated generator coefficients; curves pair a
//! normalization with a list of singular points.

use serde::Deserialize;

use crate::global::{GlobalError, SingularCurveModel, SingularPoint, SmoothCurveZeta};
use crate::oracle::{OracleError, RingModel};
use crate::ratfun::UniPoly;
use crate::semigroup::{GoodSemigroup, SemigroupError, ValueVec};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read input: {0}")]
    Read(#[from] std::io::Error),
    #[error("cannot parse input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Global(#[from] GlobalError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemigroupInput {
    Numerical { generators: Vec<u64> },
    Modulus { multiplicities: Vec<u64> },
    Semigroup { d: usize, conductor: Vec<u64>, small_elements: Vec<Vec<u64>> },
}

impl SemigroupInput {
    pub fn build(&self) -> Result<GoodSemigroup, IoError> {
        match self {
            SemigroupInput::Numerical { generators } => {
                Ok(GoodSemigroup::numerical_from_generators(generators)?)
            }
            SemigroupInput::Modulus { multiplicities } => {
                Ok(GoodSemigroup::from_modulus(multiplicities)?)
            }
            SemigroupInput::Semigroup { d, conductor, small_elements } => {
                if *d == 0 {
                    return Err(IoError::BadInput("d must be positive".to_string()));
                }
                if conductor.len() != *d {
                    return Err(IoError::BadInput(format!(
                        "conductor has {} components, d = {d}",
                        conductor.len()
                    )));
                }
                for e in small_elements {
                    if e.len() != *d {
                        return Err(IoError::BadInput(format!(
                            "small element {e:?} has {} components, d = {d}",
                            e.len()
                        )));
                    }
                }
                Ok(GoodSemigroup::from_small_elements(
                    *d,
                    ValueVec::new(conductor.clone()),
                    small_elements.iter().map(|e| ValueVec::new(e.clone())),
                )?)
            }
        }
    }

    pub fn is_modulus(&self) -> bool {
        matches!(self, SemigroupInput::Modulus { .. })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelInput {
    RingModel {
        p: u32,
        d: usize,
        truncation: Vec<usize>,
        conductor: Vec<u64>,
        generators: Vec<Vec<Vec<i64>>>,
    },
}

impl ModelInput {
    pub fn build(&self) -> Result<RingModel, IoError> {
        let ModelInput::RingModel { p, d, truncation, conductor, generators } = self;
        if *d == 0 {
            return Err(IoError::BadInput("d must be positive".to_string()));
        }
        if truncation.len() != *d || conductor.len() != *d {
            return Err(IoError::BadInput(format!(
                "truncation has {} and conductor {} components, d = {d}",
                truncation.len(),
                conductor.len()
            )));
        }
        Ok(RingModel::from_int_generators(
            *p,
            truncation.clone(),
            ValueVec::new(conductor.clone()),
            generators,
        )?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Normalization {
    Name(String),
    Custom { numerator: Vec<i64> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointInput {
    pub semigroup: SemigroupInput,
    pub branches: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveInput {
    Curve { q: u64, normalization: Normalization, singular_points: Vec<PointInput> },
}

impl CurveInput {
    pub fn build(&self) -> Result<SingularCurveModel, IoError> {
        let CurveInput::Curve { q, normalization, singular_points } = self;
        let smooth = match normalization {
            Normalization::Name(name) if name == "P1" => SmoothCurveZeta::p1(*q)?,
            Normalization::Name(name) => {
                return Err(IoError::BadInput(format!(
                    "unknown normalization {name:?}, expected \"P1\" or a numerator"
                )));
            }
            Normalization::Custom { numerator } => {
                SmoothCurveZeta::with_numerator(*q, UniPoly::from_integers(numerator))?
            }
        };
        let modulus_flag = matches!(normalization, Normalization::Name(_))
            && singular_points.iter().all(|p| p.semigroup.is_modulus());
        let points = singular_points
            .iter()
            .map(|p| Ok(SingularPoint::new(p.semigroup.build()?, p.branches)?))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(SingularCurveModel::new(smooth, points, modulus_flag)?)
    }
}

/// Any top-level input, dispatched on its "kind" tag.
#[derive(Debug, Clone)]
pub enum Input {
    Semigroup(SemigroupInput),
    Model(ModelInput),
    Curve(CurveInput),
}

pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| IoError::BadInput("missing \"kind\" field".to_string()))?;
    match kind {
        "numerical" | "modulus" | "semigroup" => {
            Ok(Input::Semigroup(serde_json::from_value(value)?))
        }
        "ring_model" => Ok(Input::Model(serde_json::from_value(value)?)),
        "curve" => Ok(Input::Curve(serde_json::from_value(value)?)),
        other => Err(IoError::BadInput(format!(
            "unknown kind {other:?}, expected numerical, modulus, semigroup, ring_model, or curve"
        ))),
    }
}

pub fn load_path(path: &std::path::Path) -> Result<Input, IoError> {
    parse_input(&std::fs::read_to_string(path)?)
}
