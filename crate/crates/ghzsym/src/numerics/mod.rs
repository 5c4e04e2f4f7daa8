//! Dense complex linear algebra and geometry kernels.
//!
//! Everything here is sized for the problem at hand (matrices of dimension
//! 8 or 16, LPs with a handful of rows): plain `Vec`-backed storage, cyclic
//! Jacobi for eigenvalues, a monotone-chain upper hull, and a two-phase
//! tableau simplex. No attempt is made at general-purpose performance.

mod eig;
mod hull;
mod lp;
mod matrix;

pub use eig::{eig_hermitian, EigError};
pub use hull::{upper_hull, HullError, Polyline2D};
pub use lp::{lp_maximize, LpError, LpOutcome};
pub use matrix::{hs_distance, partial_transpose, Complex64, ComplexMatrix, MatrixError};

/// Entrywise Hermiticity tolerance used by validity checks and the
/// eigensolver precondition.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A matrix counts as positive semidefinite when its smallest eigenvalue is
/// at least this (slightly negative) bound; separates boundary states from
/// numerical noise.
pub const PSD_TOL: f64 = -1e-10;
