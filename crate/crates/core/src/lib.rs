//! Affine matrix-ball construction for the extended affine symmetric group,
//! with the cell, asymptotic Hecke algebra and Lusztig–Vogan computations
//! built on top of it.

pub mod affine_perm;
pub mod ambc;
pub mod cells;
pub mod cli;
pub mod error;
pub mod jring;
pub mod lusztig_vogan;
#[cfg(feature = "testing")]
pub mod oracles;
pub mod partition;
pub mod rep_ring;
pub mod tabloid;

pub use affine_perm::{AffinePerm, Ball, PartialPerm};
pub use ambc::{phi, psi, DomTriple};
pub use error::{Error, Result};
pub use tabloid::Tabloid;
