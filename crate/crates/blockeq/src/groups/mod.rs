//! Finite permutation groups with the subgroup queries the constructions need.

mod affine;
mod group;
mod perm;

pub use affine::{affine_group, affine_perm, point_index, point_vector};
pub use group::{direct_product, Enumeration, FinGroup, GroupError, ProductEmbedding, DEFAULT_CAP};
pub use perm::{Perm, PermError};
