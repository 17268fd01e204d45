//! A workbench for exact computational silting theory.
//!
//! Builds finite-dimensional quiver-algebra quotients Λ_n = Λ/t^nΛ over
//! truncated polynomial bases, computes homotopy-category Hom spaces and
//! silting mutations, applies the coefficient-reduction functor, and lifts
//! complexes back across the central extensions by the inductive
//! obstruction-correcting algorithm. All arithmetic is exact.

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod homspaces;
pub mod lifting;
pub mod linalg;
pub mod oracles;
pub mod poly;
pub mod reduction;
pub mod sampling;
pub mod silting;

pub use algebra::{Algebra, AlgebraPresentation, PathExpr, Quiver};
pub use complexes::{ChainMap, MorphismMatrix, ProjComplex};
pub use error::{CoreError, Result};
pub use field::{FieldSpec, Scalar};
pub use homspaces::HomComplex;
pub use lifting::LiftReport;
pub use linalg::Matrix;
pub use reduction::{QuotientTower, ReductionContext};
pub use silting::MutationGraph;

