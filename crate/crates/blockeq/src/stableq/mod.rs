//! Images of global simples under the stable equivalence induced from local
//! data: the bimodule k C̄_G(Q) over N_Δ, its principal summand M_Q, the
//! tilted module T_Q, and the tensor products T_Q ⊗ S' over C_G(Q).

mod local;
mod setup;
mod tensor;
mod tree;

use thiserror::Error;

use crate::groups::GroupError;
use crate::modrep::ModuleError;

pub use local::{build_tq, extract_mq, gamma_map, head_pairs, outer_tensor, LocalQData, MqSplit, TqBuild};
pub use setup::StableSetup;
pub use tensor::{final_stab_eq, principal_cut, stable_image, stable_tensor, StableImage};
pub use tree::{BrauerEdge, BrauerTree};

#[derive(Debug, Error)]
pub enum StableError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(&'static str, &'static str),
    #[error("Q is not normal in {0}")]
    NotNormal(&'static str),
    #[error("no principal non-projective summand in k C̄_G(Q)")]
    NoMq,
    #[error("{0} principal non-projective summands of dimensions {1:?}; M_Q is ambiguous")]
    AmbiguousMq(usize, Vec<usize>),
    #[error("simple {label} restricts with nonzero stable Hom to {count} local simples")]
    GammaNotUnique { label: String, count: usize },
    #[error("Brauer tree: {0}")]
    Tree(String),
    #[error("projective summand of P(M_Q) with head pairs {0:?} mixes edges inside and outside E")]
    MixedHead(Vec<(String, String)>),
    #[error("U_Q restricts to dimension {got}, expected {expected}")]
    UqDimension { expected: usize, got: usize },
    #[error("tensor relations are not stable under the diagonal action")]
    RelationsNotInvariant,
}

pub type Result<T> = std::result::Result<T, StableError>;
