//! Exact verification kernel for left-invariant pseudo-Riemannian geometry
//! on low-dimensional Lie algebras: curvature hierarchies, conformal
//! predicates, and a Gröbner engine for the resulting polynomial ideals.

pub mod curvature;
pub mod error;
pub mod geomcheck;
pub mod exact;
pub mod groebner;
pub mod harness;
pub mod liealg;
pub mod linalg;

pub use error::{Error, Result};
