//! PPT criterion on the extended family, analytic and numeric.
//!
//! Transposing one qubit moves the `(000,111)` coherence onto a diagonal
//! pair, so positivity of the partial transpose reduces to `|x| <= alpha`
//! for the pair weight `alpha` of that qubit; over all three qubits the
//! condition is `|x| <= min(alpha2, alpha3, alpha4)`.

use super::boundary::ClassifyError;
use crate::fp;
use crate::numerics::{eig_hermitian, partial_transpose};
use crate::states::{make_extended, validate_extended, ExtSymParams};

/// Analytic and numeric PPT data for one family point.
#[derive(Debug, Clone, PartialEq)]
pub struct PptReport {
    /// Pair weight of `|001>/|110>`.
    pub alpha2: f64,
    /// Pair weight of `|010>/|101>`.
    pub alpha3: f64,
    /// Pair weight of `|011>/|100>`.
    pub alpha4: f64,
    /// `min(alpha2, alpha3, alpha4)`: the PPT bound on |x|.
    pub x_max: f64,
    /// `x_max - |x|`; negative means some partial transpose is indefinite.
    pub margin: f64,
    /// Smallest eigenvalue over the three single-qubit partial transposes.
    pub numeric_min_eig: f64,
}

/// PPT bound from the pair weights alone (no eigensolver).
pub(crate) fn ppt_x_max(p: &ExtSymParams) -> f64 {
    let [a2, a3, a4] = p.pair_weights();
    a2.min(a3).min(a4)
}

pub fn ppt_report(p: &ExtSymParams) -> Result<PptReport, ClassifyError> {
    validate_extended(p).into_result()?;
    let [alpha2, alpha3, alpha4] = p.pair_weights();
    let x_max = ppt_x_max(p);
    let margin = x_max - fp::abs(p.x);

    let rho = make_extended(p)?;
    let mut numeric_min_eig = f64::INFINITY;
    for qubit in 1..=3 {
        let pt = partial_transpose(&rho, qubit)?;
        let eigs = eig_hermitian(&pt)?;
        numeric_min_eig = numeric_min_eig.min(eigs[0]);
    }

    // Both routes must agree in sign outside the boundary band.
    if (margin > 1e-10 && numeric_min_eig < -1e-10) || (margin < -1e-10 && numeric_min_eig > 1e-10)
    {
        return Err(ClassifyError::Inconsistent(
            "analytic PPT margin and partial-transpose spectrum disagree",
        ));
    }

    Ok(PptReport {
        alpha2,
        alpha3,
        alpha4,
        x_max,
        margin,
        numeric_min_eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_werner, WernerParam};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn origin_report() {
        let r = ppt_report(&ExtSymParams::new(0.0, 0.0, 0.0, 0.0)).unwrap();
        assert_close(r.alpha2, 0.125, 1e-15);
        assert_close(r.alpha3, 0.125, 1e-15);
        assert_close(r.alpha4, 0.125, 1e-15);
        assert_close(r.x_max, 0.125, 1e-15);
        assert_close(r.margin, 0.125, 1e-15);
        assert_close(r.numeric_min_eig, 0.125, 1e-10);
    }

    #[test]
    fn asymmetric_point_pair_weights() {
        let r = ppt_report(&ExtSymParams::new(0.0, 0.1, -0.1, 0.0)).unwrap();
        assert_close(r.alpha2, 0.125, 1e-15);
        assert_close(r.alpha3, 0.025, 1e-15);
        assert_close(r.alpha4, 0.225, 1e-15);
        assert_close(r.x_max, 0.025, 1e-15);
    }

    #[test]
    fn transposing_the_first_qubit_exposes_the_coherence() {
        use crate::numerics::{eig_hermitian, partial_transpose};
        use crate::states::make_extended;
        let rho = make_extended(&ExtSymParams::new(0.1, 0.0, 0.0, 0.0)).unwrap();
        let eigs = eig_hermitian(&partial_transpose(&rho, 1).unwrap()).unwrap();
        assert_close(eigs[0], 0.125 - 0.1, 1e-12);
    }

    /// Two splits of the same y-sum can carry different PPT bounds; this is
    /// the divergence the scan reports.
    #[test]
    fn equal_sum_splits_diverge_in_the_bound() {
        let a = ppt_report(&ExtSymParams::new(0.05, 0.0, 0.0, 0.15)).unwrap();
        let b = ppt_report(&ExtSymParams::new(0.05, 0.05, 0.05, 0.05)).unwrap();
        assert_close(a.x_max, 0.05, 1e-15);
        assert_close(b.x_max, 0.1, 1e-15);
    }

    #[test]
    fn werner_boundary_point_has_zero_margin() {
        let r = ppt_report(&make_werner(&WernerParam::new(0.2).unwrap())).unwrap();
        assert_close(r.x_max, 0.1, 1e-15);
        assert_close(r.margin, 0.0, 1e-15);
        assert!(r.numeric_min_eig.abs() < 1e-10);
    }

    #[test]
    fn invalid_point_rejected() {
        assert!(ppt_report(&ExtSymParams::new(0.4, 0.0, 0.0, 0.0)).is_err());
    }
}
