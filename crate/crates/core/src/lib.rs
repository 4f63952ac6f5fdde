//! Exact homological algebra for deleted products of simplicial complexes
//! and the free involutions they carry.

pub mod algebra;
pub mod budget;
pub mod catalog;
pub mod complex;
pub mod deleted;
pub mod embed;
pub mod equivariant;
pub mod error;
pub mod homology;
pub mod report;

pub use error::{Error, Result};
