//! JSON input formats shared by the library and the command line tool.
//!
//! - Groups: a builtin name (`"S3"`, `"A5"`, `"D4"`, `"C6"`) or
//!   `{"degree": n, "generators": [[0-based images], ...]}`.
//! - Modules: `{"base": [images], "fiber": {...}}` with a character or
//!   matrix fiber over the centralizer of the base point.
//! - Tuples: `{"group": ..., "modules": [...]}`, or the diagonal shortcut
//!   `{"diagonal": {"order": N, "q": [[k_ij]]}}` realized over a product
//!   of cyclic groups with `q_ij = zeta_N^(k_ij)`.
//! - Schemes: see [`crate::cartan::SchemeJson`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{diagonal_tuple, EngineError, YdTuple};
use crate::finitegroup::{FiniteGroup, GroupError, GroupJson};
use crate::ydmodule::ModuleJson;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot parse JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Module(#[from] crate::ydmodule::YdError),
    #[error("diagonal q matrix entry `{0}` is not an integer power")]
    BadPower(String),
}

/// Tuple input: explicit modules over a group, or a diagonal braiding.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TupleJson {
    Diagonal {
        diagonal: DiagonalJson,
    },
    Modules {
        group: GroupJson,
        modules: Vec<ModuleJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagonalJson {
    pub order: u64,
    pub q: Vec<Vec<PowerJson>>,
}

/// An integer exponent, accepted as a JSON number or a string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PowerJson {
    Int(i64),
    Str(String),
}

impl PowerJson {
    pub fn value(&self) -> Result<i64, InputError> {
        match self {
            PowerJson::Int(v) => Ok(*v),
            PowerJson::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| InputError::BadPower(s.clone())),
        }
    }
}

impl TupleJson {
    pub fn into_tuple(self) -> Result<YdTuple, InputError> {
        match self {
            TupleJson::Diagonal { diagonal } => {
                let powers = diagonal
                    .q
                    .iter()
                    .map(|row| row.iter().map(|p| p.value()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(diagonal_tuple(diagonal.order, &powers)?)
            }
            TupleJson::Modules { group, modules } => {
                let group = Arc::new(group.into_group()?);
                let mut mods = Vec::with_capacity(modules.len());
                for (k, m) in modules.into_iter().enumerate() {
                    let module = m.into_module(Arc::clone(&group))?;
                    mods.push(Arc::new(module.with_label(format!("M{}", k + 1))));
                }
                Ok(YdTuple::new(mods)?)
            }
        }
    }
}

pub fn parse_tuple(text: &str) -> Result<YdTuple, InputError> {
    let json: TupleJson = serde_json::from_str(text)?;
    json.into_tuple()
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, InputError> {
    let json: GroupJson = serde_json::from_str(text)?;
    Ok(json.into_group()?)
}
