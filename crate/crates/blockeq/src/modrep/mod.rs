//! Modules for finite groups over finite fields.

mod algebra;
mod hom;
mod meataxe;
mod module;

pub use algebra::*;
pub use hom::*;
pub use meataxe::*;
pub use module::*;
