//! Exact homological linear algebra: sparse integer matrices, Smith normal
//! form, chain complexes over Z and Z/2, and relative homology.
//!
//! Everything here is exact; no floating point enters any rank or torsion
//! computation.

mod complex;
mod matrix;
mod ranks;
mod snf;

pub use complex::{homology, relative_homology, ChainComplex, Ring, SubcomplexSelector};
pub use matrix::{gf2_rank, xor_sorted, SparseMatrix};
pub use ranks::{DegreeRanks, GradedRanks};
pub use snf::{prime_power_parts, smith_normal_form, SnfResult};
