//! Class-specific witness operators and their closed-form expectations.
//!
//! Each witness is a combination of the identity with the GHZ± projectors.
//! A strictly negative expectation `tr(W rho)` certifies that `rho` lies in
//! the named class or higher; a non-negative value carries no information.
//! On the extended family every expectation is a linear function of `x` and
//! the sum `Y = y1+y2+y3` alone.

use crate::numerics::ComplexMatrix;
use crate::states::{validate_extended, ExtSymParams, PureState3, StateError};

/// Default steering parameter of the GHZ-vs-W witness, calibrated so the
/// witness family classifies the Werner line exactly.
pub const DEFAULT_V0: f64 = 0.981;

/// Which boundary of the hierarchy the witness tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessKind {
    /// Negative expectation: at least biseparable (i.e. not separable).
    BisepVsSep,
    /// Negative expectation: at least W class.
    WVsBisep,
    /// Negative expectation: GHZ class. Carries the steering parameter.
    GhzVsW { v0: f64 },
}

impl WitnessKind {
    pub fn ghz_vs_w_default() -> Self {
        WitnessKind::GhzVsW { v0: DEFAULT_V0 }
    }
}

/// The witness as an 8x8 Hermitian matrix.
pub fn witness_matrix(kind: &WitnessKind) -> ComplexMatrix {
    let id = ComplexMatrix::identity(8);
    let plus = PureState3::ghz().projector();
    let minus = {
        let mut amps = *PureState3::ghz().amplitudes();
        amps[7] = -amps[7];
        PureState3::new(amps).unwrap().projector()
    };
    match kind {
        WitnessKind::BisepVsSep => id
            .add(&plus.scaled(-4.0))
            .and_then(|m| m.add(&minus.scaled(2.0)))
            .expect("dimensions match"),
        WitnessKind::WVsBisep => id
            .scaled(0.5)
            .add(&plus.scaled(-1.0))
            .expect("dimensions match"),
        WitnessKind::GhzVsW { v0 } => {
            let (a, b) = ghz_witness_weights(*v0);
            id.scaled(0.75)
                .add(&plus.scaled(-a))
                .and_then(|m| m.add(&minus.scaled(-b)))
                .expect("dimensions match")
        }
    }
}

/// Projector coefficients of the GHZ-vs-W witness.
fn ghz_witness_weights(v0: f64) -> (f64, f64) {
    (
        3.0 / (v0 * v0 - 2.0 * v0 + 4.0),
        3.0 / (v0 * v0 + 2.0 * v0 + 4.0),
    )
}

/// Closed-form witness expectation as a function of `x` and `Y = y1+y2+y3`.
///
/// With GHZ± weights `1/8 + Y/2 ± x` the traces reduce to
///
/// ```text
/// bisep-vs-sep: 3/4 - Y - 6x
/// w-vs-bisep:   (1/2)(3/4 - Y - 2x)
/// ghz-vs-w:     3/4 - (A+B)(1/8 + Y/2) - (A-B) x
/// ```
///
/// where `A = 3/(v0^2-2v0+4)` and `B = 3/(v0^2+2v0+4)`.
pub fn witness_trace_at(kind: &WitnessKind, x: f64, y_sum: f64) -> f64 {
    match kind {
        WitnessKind::BisepVsSep => 0.75 - y_sum - 6.0 * x,
        WitnessKind::WVsBisep => 0.5 * (0.75 - y_sum - 2.0 * x),
        WitnessKind::GhzVsW { v0 } => {
            let (a, b) = ghz_witness_weights(*v0);
            0.75 - (a + b) * (0.125 + y_sum / 2.0) - (a - b) * x
        }
    }
}

/// Witness expectation on a validated family point.
pub fn witness_trace(kind: &WitnessKind, p: &ExtSymParams) -> Result<f64, StateError> {
    validate_extended(p).into_result()?;
    Ok(witness_trace_at(kind, p.x, p.y_sum()))
}
