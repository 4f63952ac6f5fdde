//! Exact integer and mod-2 linear algebra.

pub mod group;
pub mod hermite;
pub mod hom;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod sparse;

pub use group::AbelianGroup;
pub use hermite::{hermite_basis, integer_kernel, Hermite};
pub use hom::{check_exact_at, GroupHom, NodeCheck, Subquotient};
pub use int::Int;
pub use lattice::{cokernel, subgroup_compare, SubgroupRelation};
pub use matrix::{IntMatrix, SparseIntMatrix};
pub use snf::{smith_normal_form, smith_normal_form_dense, SnfDecomposition};
pub use sparse::{eliminate, eliminate_gf2, invariant_factors, Gf2};
