//! Classification machinery for the extended family.
//!
//! The SLOCC hierarchy for three-qubit mixed states is a chain of convex
//! sets S ⊂ B ⊂ W ⊂ GHZ, so a state's class can be bracketed from two
//! sides:
//!
//! - witnesses give lower bounds ("at least W class"),
//! - the PPT criterion and the separability hull give upper/lower bounds on
//!   membership in S.
//!
//! The separable boundary itself comes from maximizing the coherence `x`
//! over twirled product states at fixed `(y1, y2, y3)`, convexified where
//! the raw stationary surface fails to be concave.

mod boundary;
mod ppt;
mod verdict;
mod witness;

pub use boundary::{
    ghz_symmetric_separable_boundary, separable_xmax, separable_xmax_stationary, slice_boundary,
    stationary_moduli, BoundCertainty, ClassifyError, SepBound, SepMethod, SliceKind, SliceRow,
    SliceTable,
};
pub use ppt::{ppt_report, PptReport};
pub(crate) use verdict::classify_with_image_set;
pub use verdict::{
    classify_extended, classify_extended_with, fig4_polygon, Class, ClassVerdict, ClassifyOptions,
    Evidence, FigVertex,
};
pub use witness::{witness_matrix, witness_trace, witness_trace_at, WitnessKind, DEFAULT_V0};
