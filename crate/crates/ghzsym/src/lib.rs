//! Construction, twirling, and SLOCC classification of extended
//! GHZ-symmetric three-qubit states.
//!
//! The extended GHZ symmetry group consists of the simultaneous three-qubit
//! flip `X⊗X⊗X` together with the z-rotations
//! `exp(iφ₁σz) ⊗ exp(iφ₂σz) ⊗ exp(-i(φ₁+φ₂)σz)` (no qubit permutations).
//! States invariant under this group form a four-parameter family
//! `(x, y1, y2, y3)`; adding qubit permutations cuts it down to the
//! two-parameter GHZ-symmetric family `(x, y)`. This crate provides:
//!
//! - [`states`]: the parameter families, their physicality polytopes, and
//!   density-matrix constructors (including a four-qubit analogue),
//! - [`twirl`]: projection of arbitrary pure/mixed states into the families,
//!   the product-state image, and a Monte-Carlo group-averaging oracle,
//! - [`classify`]: the separability boundary from constrained maximization
//!   over product moduli, slice tables with convex-hull correction, the PPT
//!   criterion, entanglement witnesses, and an interval verdict engine for
//!   the hierarchy S ⊂ B ⊂ W ⊂ GHZ,
//! - [`explore`]: polytope sampling, verdict-volume estimation, the
//!   y-sum-dependence scan, and an LP-based separability hull oracle,
//! - [`numerics`]: the self-contained dense kernels backing all of the above
//!   (complex Hermitian eigensolver, partial transpose, upper convex hull,
//!   tableau simplex).
//!
//! # Basis convention
//!
//! All 8x8 matrices are written in the computational basis `|i1 i2 i3>` with
//! qubit 1 most significant: index = 4*i1 + 2*i2 + i3. Partial transposes,
//! witness operators, and the four-qubit diagonal layout all rely on this
//! single convention.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `ghzsym-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod explore;
pub mod numerics;
pub mod states;
pub mod twirl;

pub use numerics::{Complex64, ComplexMatrix};
pub use states::{ExtSymParams, FourQubitParams, GhzSymParams, PureState3, WernerParam};

/// sqrt(3), used throughout the GHZ-symmetric parametrization.
pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

pub(crate) mod fp {
    //! Float helpers routed through `libm` so the crate builds without std.

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[inline]
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }

    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }

    #[inline]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }

    /// x^(3/2) for x >= 0, evaluated as x*sqrt(x).
    #[inline]
    pub fn pow_3_2(x: f64) -> f64 {
        x * libm::sqrt(x)
    }
}
