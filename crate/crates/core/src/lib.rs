//! Exact computations around vertex counts of Minkowski sums.
//!
//! The crate follows one chain of reasoning end to end: Minkowski sums are
//! projections of products; a vertex of a polytope survives a projection iff
//! its projected dual face contains the origin in its interior; when every
//! vertex survives the projected dual vertices form a Gale transform whose
//! dual polytope carries the complement complex of the boundary; and the
//! complement complex of a product of simplices cannot embed in the sphere it
//! would have to live in (Sarkaria's coloring bound).
//!
//! All arithmetic is exact. Types are generic over [`Scalar`]; the aliases
//! below fix the scalar to arbitrary-precision rationals.

pub mod complexes;
pub mod error;
pub mod gale;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod obstructions;
pub mod pipeline;
pub mod polytopes;
pub mod projections;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{RatStr, Scalar};

/// Arbitrary-precision rational, the default scalar.
pub type Rat = num_rational::BigRational;
pub type QVector = linalg::Vector<Rat>;
pub type QMatrix = linalg::Matrix<Rat>;
pub type LinConstraint = lp::LinConstraint<Rat>;
pub type FeasibilityResult = lp::FeasibilityResult<Rat>;
pub type HPolytope = polytopes::HPolytope<Rat>;
pub type VPolytope = polytopes::VPolytope<Rat>;
pub type FaceRecord = polytopes::FaceRecord<Rat>;
pub type VectorConfig = gale::VectorConfig<Rat>;
pub type ProjectionSetup = projections::ProjectionSetup<Rat>;
pub type SurvivalReport = projections::SurvivalReport;
