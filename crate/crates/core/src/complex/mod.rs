//! Simplicial and regular CW complexes with their chain complexes.

pub mod chain;
pub mod cw;
pub mod simplicial;

pub use chain::ChainComplex;
pub use cw::{CellularMap, CellularPair, CwComplex};
pub use simplicial::{is_full_subcomplex, parse_complex, Simplex, SimplicialComplex};
