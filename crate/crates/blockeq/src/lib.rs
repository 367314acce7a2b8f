//! Computational modular representation theory for checking perverse and
//! stable equivalences between principal blocks with defect group C_ℓ × C_ℓ.

pub mod decomp;
pub mod ffmat;
pub mod groups;
pub mod harness;
pub mod modrep;
pub mod perverse;
pub mod perversity;
pub mod stableq;
