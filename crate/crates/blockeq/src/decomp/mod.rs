//! Decompositions into indecomposables, projective summands, vertices and
//! Green correspondence.

mod filtration;
mod projective;
mod summands;
mod vertex;

pub use filtration::*;
pub use projective::*;
pub use summands::*;
pub use vertex::*;
