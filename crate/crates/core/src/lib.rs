//! Exact-arithmetic calculus for bounded double complexes of finite-dimensional
//! vector spaces over cyclotomic rational fields.
//!
//! The crate computes, without any floating point:
//!
//! * both spectral sequences of a bounded double complex, page by page,
//!   together with the bifiltered de Rham gradings `b_k^{p,q}`,
//! * the decomposition into indecomposable summands (dots, zigzags, squares),
//!   twice: once from differential ranks and once by an independent pivot
//!   reduction oracle,
//! * the `∂∂̄`, page-1-`∂∂̄` and `dd^c+3` property checks, each verified by
//!   two routes that must agree,
//! * the structural calculus (shift, direct sum, tensor, mirror, blow-up
//!   models, isotypic components of finite group actions),
//! * compilation of finitely presented differential bigraded algebras
//!   (exterior generators, formal weights, structure equations) into
//!   double complexes, plus symbolic `∂∂̄` evaluation for pluriclosed
//!   metric checks.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so computations can be dispatched to worker threads freely.

pub mod bicomplex;
pub mod dba;
pub mod document;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod random;
pub mod render;
pub mod spectral;
pub mod zigzag;

pub use bicomplex::{Bicomplex, RealStructure, ValidationReport};
pub use error::{Error, Result};
pub use linalg::{Cyclotomic, RankKernelImage, SparseMatrix, Subspace};
pub use spectral::{PurityTable, SpectralKind, SpectralReport, TotalCohomology};
pub use zigzag::{Property, PropertyVerdict, ZigzagMultiset, ZigzagShape};
