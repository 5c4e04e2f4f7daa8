//! Separability boundaries: the stationary surface from constrained
//! maximization over product moduli, its convex-hull correction on slices,
//! and the parametric boundary of the permutation-symmetric family.
//!
//! Maximizing the product-image coherence `x` at fixed `(y1, y2, y3)` has
//! stationary moduli
//!
//! ```text
//! |A_j|^2 = 1/2 ± s / y_j,    s = sqrt(y1 y2 y3),
//! ```
//!
//! which plugged back in give
//!
//! ```text
//! x = (1/8) sqrt( (y1 - 4 y2 y3)(y2 - 4 y1 y3)(y3 - 4 y1 y2) / (y1 y2 y3) ).
//! ```
//!
//! The construction only applies where the moduli are real and inside
//! [0, 1] (`y1 y2 y3 > 0` and `|s/y_j| <= 1/2`). A vanishing coordinate is
//! degenerate: for a slice `(0, 0, y)` the symmetric limit
//! `y1 = y2 = eps -> 0` exists for `y >= 0` and gives `x = (1/8)(1 - 4y)`;
//! isolated zeros admit no stationary point at all. Values are always
//! capped by the physicality bound `1/8 + (y1+y2+y3)/2`.
//!
//! The stationary value is a lower bound on the separable maximum (it is
//! attained by an explicit product state) but not always tight: each class
//! is convex, so where the stationary surface is not concave the true
//! boundary is its convex hull. Bound semantics for callers:
//! hull oracle <= truth <= capped PPT bound.

use alloc::vec::Vec;

use crate::explore::{self, HullMembership};
use crate::fp;
use crate::numerics::{upper_hull, EigError, HullError, LpError, MatrixError, Polyline2D};
use crate::states::{validate_extended, ExtSymParams, StateError};
use crate::twirl::{ProductParams, TwirlError};
use crate::SQRT_3;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Twirl(#[from] TwirlError),
    #[error("no physical x exists for y-triple ({y1}, {y2}, {y3})")]
    InfeasibleY { y1: f64, y2: f64, y3: f64 },
    #[error("resolution {0} too small, need at least 2")]
    Resolution(usize),
    #[error("hull oracle failed: {0}")]
    HullOracle(&'static str),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}

/// Tolerance for the admissibility gates of the stationary construction.
const GATE_TOL: f64 = 1e-12;

/// The stationary product moduli for a fixed y-triple, both sign branches,
/// or `None` when no admissible stationary point exists.
pub fn stationary_moduli(y1: f64, y2: f64, y3: f64) -> Option<[ProductParams; 2]> {
    let ys = [y1, y2, y3];
    let zeros: Vec<usize> = (0..3).filter(|&i| ys[i] == 0.0).collect();
    match zeros.len() {
        0 => {
            let product = y1 * y2 * y3;
            if product <= 0.0 {
                return None;
            }
            let s = fp::sqrt(product);
            let mut plus = [0.0f64; 3];
            let mut minus = [0.0f64; 3];
            for i in 0..3 {
                let ratio = s / ys[i];
                if fp::abs(ratio) > 0.5 + GATE_TOL {
                    return None;
                }
                plus[i] = modulus(0.5 + ratio);
                minus[i] = modulus(0.5 - ratio);
            }
            Some([params(plus), params(minus)])
        }
        2 => {
            // Symmetric limit toward the doubly-degenerate slice: the two
            // vanishing slots take 1/2 ± sqrt(y), the remaining slot 1/2.
            let free = 3 - zeros[0] - zeros[1];
            let y = ys[free];
            if !(0.0..=0.25 + GATE_TOL).contains(&y) {
                return None;
            }
            let delta = fp::sqrt(y.min(0.25));
            let mut plus = [0.0f64; 3];
            let mut minus = [0.0f64; 3];
            for i in 0..3 {
                if i == free {
                    plus[i] = modulus(0.5);
                    minus[i] = modulus(0.5);
                } else {
                    plus[i] = modulus(0.5 + delta);
                    minus[i] = modulus(0.5 - delta);
                }
            }
            Some([params(plus), params(minus)])
        }
        3 => {
            let c = params([0.5, 0.5, 0.5]);
            Some([c, c])
        }
        _ => None, // an isolated zero is direction-dependent: no stationary point
    }
}

fn modulus(squared: f64) -> f64 {
    fp::sqrt(squared.clamp(0.0, 1.0))
}

fn params(sq: [f64; 3]) -> ProductParams {
    ProductParams::new(sq[0], sq[1], sq[2]).expect("moduli clamped to [0, 1]")
}

/// Stationary separable maximum of `x` at fixed y-triple, when admissible;
/// capped by the physicality bound.
pub fn separable_xmax_stationary(y1: f64, y2: f64, y3: f64) -> Result<Option<f64>, ClassifyError> {
    let base = ExtSymParams::new(0.0, y1, y2, y3);
    if !validate_extended(&base).valid {
        return Err(ClassifyError::InfeasibleY { y1, y2, y3 });
    }
    if stationary_moduli(y1, y2, y3).is_none() {
        return Ok(None);
    }
    let cap = base.ghz_pair_weight();
    let ys = [y1, y2, y3];
    let n_zero = ys.iter().filter(|&&y| y == 0.0).count();
    let value = match n_zero {
        0 => {
            let radicand =
                (y1 - 4.0 * y2 * y3) * (y2 - 4.0 * y1 * y3) * (y3 - 4.0 * y1 * y2) / (y1 * y2 * y3);
            if radicand < 0.0 {
                return Ok(None);
            }
            0.125 * fp::sqrt(radicand)
        }
        2 => {
            let y = y1 + y2 + y3; // the single nonzero coordinate
            0.125 * (1.0 - 4.0 * y)
        }
        _ => 0.125,
    };
    Ok(Some(value.min(cap).max(0.0)))
}

/// Which bound semantics a [`SepBound`] value carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCertainty {
    /// Attained by an explicit product state; a lower bound that may
    /// undershoot the convex hull.
    StationaryLower,
    /// Certified lower bound from an explicit separable mixture.
    HullLower,
    /// Upper bound: PPT is necessary for separability.
    PptUpper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SepBound {
    pub value: f64,
    pub certainty: BoundCertainty,
}

/// How to bound the separable maximum of `x` at fixed y-triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SepMethod {
    /// Stationary value when admissible, else fall back to the hull oracle
    /// with the given sampling budget.
    Analytic { fallback_images: usize, seed: u64 },
    /// LP over sampled product images.
    HullOracle { n_images: usize, seed: u64 },
    /// min pair weight, capped by physicality.
    Ppt,
}

pub fn separable_xmax(
    y1: f64,
    y2: f64,
    y3: f64,
    method: SepMethod,
) -> Result<SepBound, ClassifyError> {
    let base = ExtSymParams::new(0.0, y1, y2, y3);
    if !validate_extended(&base).valid {
        return Err(ClassifyError::InfeasibleY { y1, y2, y3 });
    }
    match method {
        SepMethod::Ppt => Ok(SepBound {
            value: super::ppt::ppt_x_max(&base).min(base.ghz_pair_weight()),
            certainty: BoundCertainty::PptUpper,
        }),
        SepMethod::Analytic {
            fallback_images,
            seed,
        } => match separable_xmax_stationary(y1, y2, y3)? {
            Some(value) => Ok(SepBound {
                value,
                certainty: BoundCertainty::StationaryLower,
            }),
            None => separable_xmax(
                y1,
                y2,
                y3,
                SepMethod::HullOracle {
                    n_images: fallback_images,
                    seed,
                },
            ),
        },
        SepMethod::HullOracle { n_images, seed } => {
            match explore::hull_membership_xmax(y1, y2, y3, n_images, seed)? {
                HullMembership::Bound(value) => Ok(SepBound {
                    value,
                    certainty: BoundCertainty::HullLower,
                }),
                HullMembership::Infeasible => {
                    Err(ClassifyError::HullOracle("target outside sampled hull"))
                }
            }
        }
    }
}

/// The three one-parameter slices of the y-space tetrahedron used for
/// boundary tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    /// `(y, y, y)`, `y` in [-1/12, 1/4].
    Equal,
    /// `(y, y, -y)`, `y` in [-1/4, 1/12].
    Anti,
    /// `(0, 0, y)`, `y` in [-1/4, 1/4].
    Axis,
}

impl SliceKind {
    pub fn range(&self) -> (f64, f64) {
        match self {
            SliceKind::Equal => (-1.0 / 12.0, 0.25),
            SliceKind::Anti => (-0.25, 1.0 / 12.0),
            SliceKind::Axis => (-0.25, 0.25),
        }
    }

    pub fn triple(&self, y: f64) -> (f64, f64, f64) {
        match self {
            SliceKind::Equal => (y, y, y),
            SliceKind::Anti => (y, y, -y),
            SliceKind::Axis => (0.0, 0.0, y),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SliceKind::Equal => "equal",
            SliceKind::Anti => "anti",
            SliceKind::Axis => "axis",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceRow {
    pub y: f64,
    /// Stationary boundary value; empty where no stationary point exists.
    pub x_stationary: Option<f64>,
    /// Convex-hull corrected separable boundary.
    pub x_hull: f64,
    /// PPT bound, capped by physicality.
    pub x_ppt: f64,
    /// Physicality bound on |x|.
    pub x_phys: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceTable {
    pub kind: SliceKind,
    pub rows: Vec<SliceRow>,
}

/// Boundary table along one slice.
///
/// The hull column is recomputed from samples: the region under the
/// stationary curve (with the always-separable base `x = 0`), intersected
/// with the physical polytope, then convexified with [`upper_hull`].
pub fn slice_boundary(kind: SliceKind, resolution: usize) -> Result<SliceTable, ClassifyError> {
    if resolution < 2 {
        return Err(ClassifyError::Resolution(resolution));
    }
    let (lo, hi) = kind.range();
    let grid = |n: usize, i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;

    let boundary_sample = |y: f64| -> Result<(f64, f64), ClassifyError> {
        let (y1, y2, y3) = kind.triple(y);
        let phys = ExtSymParams::new(0.0, y1, y2, y3).ghz_pair_weight();
        let stationary = separable_xmax_stationary(y1, y2, y3)?.unwrap_or(0.0);
        Ok((y, stationary.min(phys).max(0.0)))
    };

    // Dense sampling for the hull, independent of the table resolution.
    let dense = resolution.max(2001);
    let mut pts = Vec::with_capacity(dense + 1);
    for i in 0..dense {
        pts.push(boundary_sample(grid(dense, i))?);
    }
    // The stationary surface kinks at y = 0, where the grid generally does
    // not land exactly; sample the kink so the hull apex is not clipped.
    if lo < 0.0 && hi > 0.0 {
        pts.push(boundary_sample(0.0)?);
    }
    let hull = upper_hull(&pts)?;

    let mut rows = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let y = grid(resolution, i);
        let (y1, y2, y3) = kind.triple(y);
        let base = ExtSymParams::new(0.0, y1, y2, y3);
        let phys = base.ghz_pair_weight();
        let x_stationary = separable_xmax_stationary(y1, y2, y3)?;
        let x_hull = hull.value_at(y)?.min(phys).max(0.0);
        let x_ppt = super::ppt::ppt_x_max(&base).min(phys);
        rows.push(SliceRow {
            y,
            x_stationary,
            x_hull,
            x_ppt,
            x_phys: phys,
        });
    }
    Ok(SliceTable { kind, rows })
}

/// Separable boundary of the permutation-symmetric family in the (y, x)
/// plane: the twirled image of equal-moduli product states,
///
/// ```text
/// x(a) = a^3 (1-a^2)^{3/2},   y(a) = (a^6 + (1-a^2)^3 - 1/4) / sqrt(3),
/// ```
///
/// sampled over `a` in [1/sqrt(2), 1], convexified, and clipped to the
/// physical triangle.
pub fn ghz_symmetric_separable_boundary(resolution: usize) -> Result<Polyline2D, ClassifyError> {
    if resolution < 2 {
        return Err(ClassifyError::Resolution(resolution));
    }
    let a_lo = 1.0 / fp::sqrt(2.0);
    let mut pts = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let a = a_lo + (1.0 - a_lo) * i as f64 / (resolution - 1) as f64;
        let t = a * a;
        let x = t * a * fp::pow_3_2(1.0 - t);
        let y = (t * t * t + (1.0 - t) * (1.0 - t) * (1.0 - t) - 0.25) / SQRT_3;
        // Clip to the physical triangle: x <= 1/8 + (sqrt(3)/2) y.
        let cap = 0.125 + (SQRT_3 / 2.0) * y;
        pts.push((y, x.min(cap).max(0.0)));
    }
    Ok(upper_hull(&pts)?)
}
