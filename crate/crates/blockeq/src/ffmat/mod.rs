//! Dense linear algebra over small finite fields.

mod field;
pub mod io;
mod matrix;
mod poly;
mod subspace;

pub use field::{prime_power, Field, FieldError};
pub use matrix::{axpy, dot, scale_slice, Matrix, MatrixError, Rref};
pub use poly::{char_poly, factor, squarefree, Poly};
pub use subspace::{spin_space, Subspace};
