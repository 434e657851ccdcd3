//! Penner's construction as exact integer linear algebra.
//!
//! Public index arguments (generators, path vertices, matrix positions in
//! error messages) are 1-based. [`matrix::Matrix`] storage is 0-based.

pub mod boundary;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod factor;
pub mod graph;
pub mod matrix;
pub mod mp;
pub mod penner;
pub mod poly;
pub mod ring;
pub mod spectral;

pub use error::{Error, Result};
