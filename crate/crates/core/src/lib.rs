//! Exact Dehn-Sommerville machinery for face systems in a simplex.
//!
//! The crate computes long f- and h-vectors of arbitrary face systems
//! `Φ ⊆ 2^[m]`, the structured matrices relating them, six distinguished
//! bases of `R^(m+1)`, the eigenspaces and unimodular cones that carry the
//! Dehn-Sommerville relations, and an exact enumerator for the integer points
//! of the associated rational polytopes. No floating point is used anywhere.

pub mod bases;
pub mod binom;
pub mod enumeration;
pub mod error;
pub mod faces;
pub mod linalg;
pub mod polytopes;
pub mod projectors;
pub mod report;
pub mod spaces;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use faces::{Face, FaceSystem, FaceSystemDoc};
pub use linalg::{ExactMatrix, MatrixName, Polynomial};
pub use vector::IntVector;
