//! Exact integer and rational linear algebra: Hermite normal forms,
//! canonical lattices, unimodular completion and coset minimisation.

mod basis;
mod hnf;
mod matrix;

pub use basis::{
    complete_to_basis, is_primitive, max_minor_gcd, min_positive_last_in_coset,
    solve_integer_linear, solve_integer_system,
};
pub use hnf::{hnf, integer_kernel, lattice_canon, HermiteForm, LatticeBasis};
pub(crate) use hnf::integer_rows;
pub use matrix::IntMatrix;
