//! Exact computation of Lie algebra cohomology, cyclic cohomology of
//! metric Lie algebras, and their deformations.

pub mod catalog;
pub mod cochains;
pub mod cohomology;
pub mod deformations;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod reproduce;

pub use error::{Error, Result};
