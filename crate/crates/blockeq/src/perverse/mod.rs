//! Candidate images of simple modules under a perverse equivalence: bounded
//! complexes of projectives built degree by degree from a perversity function.

mod altsum;
mod complex;
mod core;
mod findp1;

use thiserror::Error;

use crate::modrep::ModuleError;

pub use altsum::{alternating_sum, format_total, parse_total, reconstruct_row, verify_perversity, Violation};
pub use complex::{subquotient, BoundedComplex};
pub use core::{cohomology_cell, j_set, perverse_core, PerverseRun};
pub use findp1::{assemble_complex, find_p1, projective_points, P1Candidate};

#[derive(Debug, Error)]
pub enum PerverseError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("differentials leaving degree {0} and its successor do not compose to zero")]
    NotAComplex(i32),
    #[error("complex terms and differentials have inconsistent shapes at degree {0}")]
    Shape(i32),
    #[error("P1/M1 is not isomorphic to the given degree-zero module")]
    WrongQuotient,
    #[error("simple {0} has coefficient zero in its own alternating sum")]
    ZeroSelfCoefficient(usize),
    #[error("row {0} is needed but not yet known")]
    MissingRow(usize),
    #[error("reconstructed row {0} is not integral")]
    NonIntegralRow(usize),
    #[error("cannot parse total {0:?}")]
    ParseTotal(String),
}

pub type Result<T> = std::result::Result<T, PerverseError>;
