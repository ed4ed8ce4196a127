//! Catalog curves, construction recipes and the reproduction runs behind
//! the `zariski` binary.

pub mod catalog;
mod realize;
pub mod recipes;
mod reproduce;

use thiserror::Error;

use crate::curve_geometry::GeomError;
use crate::exact_fields::FieldError;
use crate::torsion_invariants::InvariantError;

pub use realize::{property_sweep, realize, Arrangement, RECIPES};
pub use reproduce::{run_reproduction, Check, Report, REPRODUCTIONS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown reproduction {0:?}; choose one of {list}", list = REPRODUCTIONS.join(", "))]
    UnknownReproduction(String),
    #[error("unknown curve {0:?}; choose one of fermat, cyclic, 90c3")]
    UnknownCurve(String),
    #[error("unknown recipe {0:?}")]
    UnknownRecipe(String),
    #[error("construction check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Geometry(e.into())
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Run the constructions over quartic extensions as well.
    pub extended: bool,
    pub tower_budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { extended: false, tower_budget: crate::exact_fields::DEFAULT_BUDGET }
    }
}
