//! Exact computations behind Z2-orbifold constructions of holomorphic
//! vertex operator algebras of central charge 24.

pub mod error;
pub mod rational;
pub mod rootsys;
pub mod affine;
pub mod qseries;
pub mod orbifold;
pub mod lattice;

pub use error::{Error, Result};
pub use rational::Q;
