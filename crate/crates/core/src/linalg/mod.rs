//! Exact linear algebra over cyclotomic rational fields ℚ(ζ_n).
//!
//! Everything downstream (cohomology, spectral pages, zigzag multiplicities)
//! reduces to ranks, kernels and subspace arithmetic implemented here.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{RankKernelImage, SparseMatrix, SparseVec};
pub use scalar::Cyclotomic;
pub use subspace::{induced_on_quotient, Quotient, Subspace};
