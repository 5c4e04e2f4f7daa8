//! Interval verdicts for the hierarchy S ⊂ B ⊂ W ⊂ GHZ.
//!
//! The classification is deliberately rough: a witness with a strictly
//! negative expectation raises the lower end of the interval, a certified
//! separable decomposition (hull oracle + PPT) pins the upper end at S, and
//! everything else leaves the upper end at GHZ. Zero expectations carry no
//! class information.

use alloc::string::String;
use alloc::vec::Vec;

use super::boundary::{separable_xmax_stationary, ClassifyError};
use super::ppt::ppt_report;
use super::witness::{witness_trace_at, WitnessKind, DEFAULT_V0};
use crate::explore::{hull_membership_with, HullMembership, ImageSet};
use crate::fp;
use crate::states::{validate_extended, ExtSymParams};
use crate::twirl::project_to_ghz;

/// SLOCC class in the linear hierarchy, ordered Separable < Biseparable
/// < W < GHZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    Separable,
    Biseparable,
    W,
    Ghz,
}

impl Class {
    pub fn name(&self) -> &'static str {
        match self {
            Class::Separable => "Separable",
            Class::Biseparable => "Biseparable",
            Class::W => "W",
            Class::Ghz => "GHZ",
        }
    }

    pub fn index(&self) -> usize {
        *self as usize
    }
}

impl core::fmt::Display for Class {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// One recorded indicator: its value and the threshold it was compared to.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
}

/// Class interval plus the indicators that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassVerdict {
    pub lower: Class,
    pub upper: Class,
    pub evidence: Vec<Evidence>,
}

/// Knobs of the verdict engine. The hull oracle is seeded so verdicts are
/// deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub v0: f64,
    pub hull_images: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            v0: DEFAULT_V0,
            hull_images: 1024,
            seed: 42,
        }
    }
}

pub fn classify_extended(p: &ExtSymParams) -> Result<ClassVerdict, ClassifyError> {
    classify_extended_with(p, &ClassifyOptions::default())
}

pub fn classify_extended_with(
    p: &ExtSymParams,
    opts: &ClassifyOptions,
) -> Result<ClassVerdict, ClassifyError> {
    let set = ImageSet::sample(opts.hull_images, opts.seed);
    classify_with_image_set(p, opts, &set)
}

pub(crate) fn classify_with_image_set(
    p: &ExtSymParams,
    opts: &ClassifyOptions,
    set: &ImageSet,
) -> Result<ClassVerdict, ClassifyError> {
    validate_extended(p).into_result()?;
    // The class is even in x, so work with |x|.
    let xa = fp::abs(p.x);
    let y_sum = p.y_sum();
    let normalized = ExtSymParams::new(xa, p.y1, p.y2, p.y3);

    let w_bisep = witness_trace_at(&WitnessKind::BisepVsSep, xa, y_sum);
    let w_w = witness_trace_at(&WitnessKind::WVsBisep, xa, y_sum);
    let w_ghz = witness_trace_at(&WitnessKind::GhzVsW { v0: opts.v0 }, xa, y_sum);

    // Strict negativity; zero carries no information.
    let witness_lower = if w_ghz < 0.0 {
        Class::Ghz
    } else if w_w < 0.0 {
        Class::W
    } else if w_bisep < 0.0 {
        Class::Biseparable
    } else {
        Class::Separable
    };

    let ppt = ppt_report(&normalized)?;
    let npt = ppt.margin < -1e-10;
    let mut lower = witness_lower;
    if npt && lower < Class::Biseparable {
        lower = Class::Biseparable;
    }

    let hull_bound = match hull_membership_with(set, p.y1, p.y2, p.y3)? {
        HullMembership::Bound(v) => v,
        // Unreachable with the injected corner images; x = 0 is separable
        // for every physical y-triple, so 0 stays a sound lower bound.
        HullMembership::Infeasible => 0.0,
    };
    let sep_certified = xa <= hull_bound + 1e-12 && ppt.margin >= -1e-10;
    let upper = if sep_certified && lower == Class::Separable {
        Class::Separable
    } else {
        Class::Ghz
    };

    let stationary = separable_xmax_stationary(p.y1, p.y2, p.y3)?;

    // Projection onto the permutation-symmetric family: a twirl can only
    // lower the class, so its verdict transfers as a lower bound. The
    // witness traces depend on (|x|, y-sum) only, hence agree exactly.
    let projection = project_to_ghz(&normalized)?;
    let proj_y_sum = crate::SQRT_3 * projection.y;
    let proj_lower = {
        let g = witness_trace_at(&WitnessKind::GhzVsW { v0: opts.v0 }, xa, proj_y_sum);
        let w = witness_trace_at(&WitnessKind::WVsBisep, xa, proj_y_sum);
        let b = witness_trace_at(&WitnessKind::BisepVsSep, xa, proj_y_sum);
        if g < 0.0 {
            Class::Ghz
        } else if w < 0.0 {
            Class::W
        } else if b < 0.0 {
            Class::Biseparable
        } else {
            Class::Separable
        }
    };
    if proj_lower > lower {
        lower = proj_lower;
    }

    let mut evidence = Vec::with_capacity(9);
    evidence.push(Evidence {
        name: "witness_bisep_vs_sep",
        value: w_bisep,
        threshold: 0.0,
    });
    evidence.push(Evidence {
        name: "witness_w_vs_bisep",
        value: w_w,
        threshold: 0.0,
    });
    evidence.push(Evidence {
        name: "witness_ghz_vs_w",
        value: w_ghz,
        threshold: 0.0,
    });
    evidence.push(Evidence {
        name: "ppt_x_max",
        value: ppt.x_max,
        threshold: xa,
    });
    evidence.push(Evidence {
        name: "ppt_margin",
        value: ppt.margin,
        threshold: 0.0,
    });
    evidence.push(Evidence {
        name: "ppt_min_eigenvalue",
        value: ppt.numeric_min_eig,
        threshold: -1e-10,
    });
    evidence.push(Evidence {
        name: "separable_hull_x_max",
        value: hull_bound,
        threshold: xa,
    });
    if let Some(v) = stationary {
        evidence.push(Evidence {
            name: "separable_stationary_x_max",
            value: v,
            threshold: xa,
        });
    }
    evidence.push(Evidence {
        name: "ghz_projection_lower_class",
        value: proj_lower.index() as f64,
        threshold: lower.index() as f64,
    });
    // Provenance of the seeded hull oracle (value: seed, threshold: images).
    evidence.push(Evidence {
        name: "hull_oracle_seed",
        value: opts.seed as f64,
        threshold: opts.hull_images as f64,
    });

    Ok(ClassVerdict {
        lower,
        upper,
        evidence,
    })
}

/// Labeled vertex of the witness polygon in the `(y_sum, x)` half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct FigVertex {
    pub y_sum: f64,
    pub x: f64,
    /// Which pair of lines meet here (semicolon-joined when more than two
    /// lines coincide).
    pub label: String,
}

/// Vertices of the region structure cut out by the three witness zero-lines
/// inside the physical triangle of the `(y_sum, x >= 0)` half-plane.
///
/// The triangle is `x <= 1/8 + y_sum/2`, `x <= 7/8 - y_sum/2`,
/// `y_sum` in [-1/4, 3/4], `x >= 0`.
pub fn fig4_polygon(v0: f64) -> Vec<FigVertex> {
    // Lines as a*y_sum + b*x = c.
    let zero_line = |kind: &WitnessKind| -> (f64, f64, f64) {
        // trace(x, y) = t00 + a_y*y + a_x*x with t00 = trace(0,0).
        let t00 = witness_trace_at(kind, 0.0, 0.0);
        let a_y = witness_trace_at(kind, 0.0, 1.0) - t00;
        let a_x = witness_trace_at(kind, 1.0, 0.0) - t00;
        (-a_y, -a_x, t00)
    };
    let mut lines: Vec<(&'static str, f64, f64, f64)> = Vec::new();
    let (a, b, c) = zero_line(&WitnessKind::BisepVsSep);
    lines.push(("bisep_vs_sep_zero", a, b, c));
    let (a, b, c) = zero_line(&WitnessKind::WVsBisep);
    lines.push(("w_vs_bisep_zero", a, b, c));
    let (a, b, c) = zero_line(&WitnessKind::GhzVsW { v0 });
    lines.push(("ghz_vs_w_zero", a, b, c));
    lines.push(("phys_left_edge", -0.5, 1.0, 0.125)); // x = 1/8 + y_sum/2
    lines.push(("phys_right_edge", 0.5, 1.0, 0.875)); // x = 7/8 - y_sum/2
    lines.push(("x_axis", 0.0, 1.0, 0.0));
    lines.push(("y_sum_min", 1.0, 0.0, -0.25));
    lines.push(("y_sum_max", 1.0, 0.0, 0.75));

    const TOL: f64 = 1e-9;
    let inside = |y: f64, x: f64| -> bool {
        (-0.25 - TOL..=0.75 + TOL).contains(&y)
            && x >= -TOL
            && x <= 0.125 + y / 2.0 + TOL
            && x <= 0.875 - y / 2.0 + TOL
    };

    let mut vertices: Vec<FigVertex> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (n1, a1, b1, c1) = lines[i];
            let (n2, a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if fp::abs(det) < 1e-12 {
                continue;
            }
            let y = (c1 * b2 - c2 * b1) / det;
            let x = (a1 * c2 - a2 * c1) / det;
            if !inside(y, x) {
                continue;
            }
            // Merge coincident intersections, collecting all line names.
            if let Some(v) = vertices
                .iter_mut()
                .find(|v| fp::abs(v.y_sum - y) < 1e-9 && fp::abs(v.x - x) < 1e-9)
            {
                for n in [n1, n2] {
                    if !v.label.split("; ").any(|s| s == n) {
                        v.label.push_str("; ");
                        v.label.push_str(n);
                    }
                }
            } else {
                let mut label = String::from(n1);
                label.push_str("; ");
                label.push_str(n2);
                vertices.push(FigVertex { y_sum: y, x, label });
            }
        }
    }
    vertices.sort_by(|u, v| {
        u.y_sum
            .partial_cmp(&v.y_sum)
            .expect("finite")
            .then(u.x.partial_cmp(&v.x).expect("finite"))
    });
    vertices
}
