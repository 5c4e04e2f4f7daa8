//! Parameter families, physicality constraints, and density-matrix
//! constructors.
//!
//! The extended family `(x, y1, y2, y3)` describes an 8x8 state that is
//! diagonal except for a real coherence `x` between `|000>` and `|111>`:
//!
//! - `|000>` and `|111>` pair into GHZ± projectors with weights
//!   `1/8 + (y1+y2+y3)/2 ± x`,
//! - `|001>/|110>`, `|010>/|101>`, `|011>/|100>` carry the pair weights
//!   `1/8 - (y1+y2-y3)/2`, `1/8 - (y1-y2+y3)/2`, `1/8 - (-y1+y2+y3)/2`.
//!
//! The coordinates are chosen so that Euclidean distance in parameter space
//! equals the Hilbert-Schmidt distance of the corresponding states. A point
//! is physical exactly when
//!
//! ```text
//! |y1+y2| - 1/4 <= y3 <= 1/4 - |y1-y2|   and   0 <= 1/8 + (y1+y2+y3)/2 ± x <= 1
//! ```
//!
//! Constructors never clamp: invalid parameters are an error unless the
//! `_unchecked` variant is used (boundary scans and PSD-detector tests need
//! deliberately unphysical points).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::fp;
use crate::numerics::{Complex64, ComplexMatrix};
use crate::SQRT_3;

/// Linear physicality constraints hold up to this slack; boundary states
/// (exact equalities) are valid.
pub const PARAM_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum StateError {
    #[error("unphysical parameters: {0}")]
    Unphysical(String),
    #[error("mixing weight {0} outside [0, 1]")]
    WernerRange(f64),
    #[error("four-qubit weight constraint violated: alpha1 + 4*alpha2 + 3*alpha3 - 1/2 = {0:.3e}")]
    FourQubitConstraint(f64),
    #[error("four-qubit weights break positivity: {0}")]
    FourQubitPositivity(String),
    #[error("state vector not normalized: sum of |amplitude|^2 = {0}")]
    NotNormalized(f64),
}

/// One violated physicality clause, with how far it is violated.
#[derive(Debug, Clone, PartialEq)]
pub struct ClauseViolation {
    /// Human-readable statement of the clause.
    pub clause: &'static str,
    /// Amount by which the clause fails (positive).
    pub excess: f64,
}

/// Outcome of a validity check: the flag plus every violated clause.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCheck {
    pub valid: bool,
    pub violations: Vec<ClauseViolation>,
}

impl ParamCheck {
    fn describe(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            out.push_str(&format!("{} (by {:.3e})", v.clause, v.excess));
        }
        out
    }

    pub fn into_result(self) -> Result<(), StateError> {
        if self.valid {
            Ok(())
        } else {
            Err(StateError::Unphysical(self.describe()))
        }
    }
}

/// Coordinates of the extended family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtSymParams {
    pub x: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl ExtSymParams {
    pub fn new(x: f64, y1: f64, y2: f64, y3: f64) -> Self {
        Self { x, y1, y2, y3 }
    }

    pub fn y_sum(&self) -> f64 {
        self.y1 + self.y2 + self.y3
    }

    /// Weight of the GHZ± projector pair before the ±x split.
    pub fn ghz_pair_weight(&self) -> f64 {
        0.125 + self.y_sum() / 2.0
    }

    /// The three diagonal pair weights, in the basis-pair order
    /// (001/110, 010/101, 011/100).
    pub fn pair_weights(&self) -> [f64; 3] {
        [
            0.125 - (self.y1 + self.y2 - self.y3) / 2.0,
            0.125 - (self.y1 - self.y2 + self.y3) / 2.0,
            0.125 - (-self.y1 + self.y2 + self.y3) / 2.0,
        ]
    }

    /// Analytic eigenvalue multiset of the corresponding matrix:
    /// the two GHZ weights plus each pair weight twice.
    pub fn analytic_eigenvalues(&self) -> [f64; 8] {
        let g = self.ghz_pair_weight();
        let [a2, a3, a4] = self.pair_weights();
        [g + self.x, g - self.x, a2, a2, a3, a3, a4, a4]
    }
}

/// Sign flip of the coherence; conjugation by `u⊗u⊗u` with
/// `u = [[0,1],[-1,0]]` realizes it as a local unitary, so the SLOCC class
/// is even in `x`.
pub fn reflect_x(p: &ExtSymParams) -> ExtSymParams {
    ExtSymParams::new(-p.x, p.y1, p.y2, p.y3)
}

/// Validity of extended parameters, clause by clause.
pub fn validate_extended(p: &ExtSymParams) -> ParamCheck {
    let mut violations = Vec::new();
    let lower = fp::abs(p.y1 + p.y2) - 0.25;
    if p.y3 < lower - PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "y3 >= |y1+y2| - 1/4",
            excess: lower - p.y3,
        });
    }
    let upper = 0.25 - fp::abs(p.y1 - p.y2);
    if p.y3 > upper + PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "y3 <= 1/4 - |y1-y2|",
            excess: p.y3 - upper,
        });
    }
    let g = p.ghz_pair_weight();
    if g - fp::abs(p.x) < -PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "1/8 + (y1+y2+y3)/2 - |x| >= 0",
            excess: fp::abs(p.x) - g,
        });
    }
    if g + fp::abs(p.x) > 1.0 + PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "1/8 + (y1+y2+y3)/2 + |x| <= 1",
            excess: g + fp::abs(p.x) - 1.0,
        });
    }
    ParamCheck {
        valid: violations.is_empty(),
        violations,
    }
}

/// 8x8 density matrix of the extended family point.
pub fn make_extended(p: &ExtSymParams) -> Result<ComplexMatrix, StateError> {
    validate_extended(p).into_result()?;
    Ok(make_extended_unchecked(p))
}

/// Same assembly without the physicality check; the result may fail to be
/// positive semidefinite.
pub fn make_extended_unchecked(p: &ExtSymParams) -> ComplexMatrix {
    let g = p.ghz_pair_weight();
    let [a2, a3, a4] = p.pair_weights();
    let mut m = ComplexMatrix::zeros(8);
    let diag = [g, a2, a3, a4, a4, a3, a2, g];
    for (i, d) in diag.iter().enumerate() {
        m.set(i, i, Complex64::new(*d, 0.0));
    }
    m.set(0, 7, Complex64::new(p.x, 0.0));
    m.set(7, 0, Complex64::new(p.x, 0.0));
    m
}

/// Coordinates of the permutation-invariant (GHZ-symmetric) family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzSymParams {
    pub x: f64,
    pub y: f64,
}

impl GhzSymParams {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// The diagonal embedding into the extended family.
    pub fn to_extended(&self) -> ExtSymParams {
        let yi = self.y / SQRT_3;
        ExtSymParams::new(self.x, yi, yi, yi)
    }
}

/// Validity of GHZ-symmetric parameters: a triangle in the (x, y) plane.
pub fn validate_ghz_symmetric(q: &GhzSymParams) -> ParamCheck {
    let mut violations = Vec::new();
    let y_min = -1.0 / (4.0 * SQRT_3);
    let y_max = SQRT_3 / 4.0;
    if q.y < y_min - PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "y >= -1/(4*sqrt(3))",
            excess: y_min - q.y,
        });
    }
    if q.y > y_max + PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "y <= sqrt(3)/4",
            excess: q.y - y_max,
        });
    }
    let cone = (2.0 / SQRT_3) * fp::abs(q.x) - 1.0 / (4.0 * SQRT_3);
    if q.y < cone - PARAM_TOL {
        violations.push(ClauseViolation {
            clause: "y >= (2/sqrt(3))|x| - 1/(4*sqrt(3))",
            excess: cone - q.y,
        });
    }
    ParamCheck {
        valid: violations.is_empty(),
        violations,
    }
}

/// 8x8 density matrix of the GHZ-symmetric point; agrees entrywise with the
/// diagonal embedding into the extended family.
pub fn make_ghz_symmetric(q: &GhzSymParams) -> Result<ComplexMatrix, StateError> {
    validate_ghz_symmetric(q).into_result()?;
    let ghz_diag = (SQRT_3 / 2.0) * q.y + 0.125;
    let middle = 0.125 - q.y / (2.0 * SQRT_3);
    let mut m = ComplexMatrix::zeros(8);
    m.set(0, 0, Complex64::new(ghz_diag, 0.0));
    m.set(7, 7, Complex64::new(ghz_diag, 0.0));
    m.set(0, 7, Complex64::new(q.x, 0.0));
    m.set(7, 0, Complex64::new(q.x, 0.0));
    for i in 1..7 {
        m.set(i, i, Complex64::new(middle, 0.0));
    }
    Ok(m)
}

/// Mixing weight of the GHZ projector with the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam {
    pub p: f64,
}

impl WernerParam {
    pub fn new(p: f64) -> Result<Self, StateError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(StateError::WernerRange(p));
        }
        Ok(Self { p })
    }
}

/// Extended-family coordinates of the Werner mixture
/// `p |GHZ+><GHZ+| + (1-p)/8 * identity`.
pub fn make_werner(w: &WernerParam) -> ExtSymParams {
    ExtSymParams::new(w.p / 2.0, w.p / 4.0, w.p / 4.0, w.p / 4.0)
}

/// Normalized three-qubit pure state, amplitudes indexed by 4*i1+2*i2+i3.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState3 {
    amps: [Complex64; 8],
}

impl PureState3 {
    pub fn new(amps: [Complex64; 8]) -> Result<Self, StateError> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if fp::abs(norm - 1.0) > PARAM_TOL {
            return Err(StateError::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    /// Rescale arbitrary amplitudes to unit norm.
    pub fn normalized(amps: [Complex64; 8]) -> Result<Self, StateError> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm <= 0.0 {
            return Err(StateError::NotNormalized(norm));
        }
        let scale = 1.0 / fp::sqrt(norm);
        let mut scaled = amps;
        for a in &mut scaled {
            *a *= scale;
        }
        Ok(Self { amps: scaled })
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// `(|000> + |111>)/sqrt(2)`.
    pub fn ghz() -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        let a = 1.0 / fp::sqrt(2.0);
        amps[0] = Complex64::new(a, 0.0);
        amps[7] = Complex64::new(a, 0.0);
        Self { amps }
    }

    /// `(|001> + |010> + |100>)/sqrt(3)`.
    pub fn w() -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        let a = 1.0 / SQRT_3;
        amps[1] = Complex64::new(a, 0.0);
        amps[2] = Complex64::new(a, 0.0);
        amps[4] = Complex64::new(a, 0.0);
        Self { amps }
    }

    /// Computational basis state `|i1 i2 i3>`.
    pub fn basis(index: usize) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Rank-1 projector `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(8, |i, j| self.amps[i] * self.amps[j].conj())
    }
}

/// Weights of the four-qubit GHZ-like-symmetric family: three diagonal
/// values plus the `|0000>/|1111>` coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourQubitParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub beta: f64,
}

/// Diagonal layout of the four-qubit family over basis indices 0..16.
const FOUR_QUBIT_DIAG_SLOT: [u8; 16] = [1, 2, 2, 3, 2, 3, 3, 2, 2, 3, 3, 2, 3, 2, 2, 1];

impl FourQubitParams {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64, beta: f64) -> Result<Self, StateError> {
        let f = Self {
            alpha1,
            alpha2,
            alpha3,
            beta,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn constraint_residual(&self) -> f64 {
        self.alpha1 + 4.0 * self.alpha2 + 3.0 * self.alpha3 - 0.5
    }

    pub fn validate(&self) -> Result<(), StateError> {
        let residual = self.constraint_residual();
        if fp::abs(residual) > PARAM_TOL {
            return Err(StateError::FourQubitConstraint(residual));
        }
        for (name, v) in [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("alpha3", self.alpha3),
        ] {
            if v < -PARAM_TOL {
                return Err(StateError::FourQubitPositivity(format!("{name} = {v} < 0")));
            }
        }
        if fp::abs(self.beta) > self.alpha1 + PARAM_TOL {
            return Err(StateError::FourQubitPositivity(format!(
                "|beta| = {} exceeds alpha1 = {}",
                fp::abs(self.beta),
                self.alpha1
            )));
        }
        Ok(())
    }

    /// Analytic eigenvalue multiset: alpha1 ± beta, alpha2 x8, alpha3 x6.
    pub fn analytic_eigenvalues(&self) -> [f64; 16] {
        let mut eigs = [0.0f64; 16];
        eigs[0] = self.alpha1 + self.beta;
        eigs[1] = self.alpha1 - self.beta;
        for i in 0..8 {
            eigs[2 + i] = self.alpha2;
        }
        for i in 0..6 {
            eigs[10 + i] = self.alpha3;
        }
        eigs
    }
}

/// 16x16 density matrix of the four-qubit GHZ-like-symmetric family.
pub fn make_four_qubit(f: &FourQubitParams) -> Result<ComplexMatrix, StateError> {
    f.validate()?;
    let mut m = ComplexMatrix::zeros(16);
    for (i, slot) in FOUR_QUBIT_DIAG_SLOT.iter().enumerate() {
        let v = match slot {
            1 => f.alpha1,
            2 => f.alpha2,
            _ => f.alpha3,
        };
        m.set(i, i, Complex64::new(v, 0.0));
    }
    m.set(0, 15, Complex64::new(f.beta, 0.0));
    m.set(15, 0, Complex64::new(f.beta, 0.0));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{eig_hermitian, hs_distance};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn origin_is_maximally_mixed() {
        let m = make_extended(&ExtSymParams::new(0.0, 0.0, 0.0, 0.0)).unwrap();
        let id8 = ComplexMatrix::identity(8).scaled(0.125);
        assert!(m.max_abs_diff(&id8) < 1e-15);
    }

    #[test]
    fn ghz_corner_is_rank_one_projector() {
        let m = make_extended(&ExtSymParams::new(0.5, 0.25, 0.25, 0.25)).unwrap();
        let proj = PureState3::ghz().projector();
        assert!(m.max_abs_diff(&proj) < 1e-15);
    }

    #[test]
    fn werner_params_match_mixture() {
        for p in [0.0, 0.2, 1.0] {
            let params = make_werner(&WernerParam::new(p).unwrap());
            assert_eq!(
                params,
                ExtSymParams::new(p / 2.0, p / 4.0, p / 4.0, p / 4.0)
            );
            let m = make_extended(&params).unwrap();
            let mixture = PureState3::ghz()
                .projector()
                .scaled(p)
                .add(&ComplexMatrix::identity(8).scaled((1.0 - p) / 8.0))
                .unwrap();
            assert!(m.max_abs_diff(&mixture) < 1e-15);
        }
        assert!(matches!(
            WernerParam::new(1.5),
            Err(StateError::WernerRange(_))
        ));
    }

    #[test]
    fn validity_examples() {
        assert!(validate_extended(&ExtSymParams::new(0.0, 0.0, 0.0, 0.0)).valid);
        let c = validate_extended(&ExtSymParams::new(0.0, 0.2, 0.2, 0.0));
        assert!(!c.valid);
        assert_eq!(c.violations[0].clause, "y3 >= |y1+y2| - 1/4");
        assert_close(c.violations[0].excess, 0.15, 1e-12);

        let c = validate_extended(&ExtSymParams::new(0.2, 0.0, 0.0, 0.0));
        assert!(!c.valid);
        assert_eq!(c.violations[0].clause, "1/8 + (y1+y2+y3)/2 - |x| >= 0");
        assert_close(c.violations[0].excess, 0.075, 1e-12);

        assert!(make_extended(&ExtSymParams::new(0.2, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn unphysical_point_has_negative_eigenvalue() {
        let p = ExtSymParams::new(0.2, 0.0, 0.0, 0.0);
        let m = make_extended_unchecked(&p);
        let eigs = eig_hermitian(&m).unwrap();
        assert_close(eigs[0], 0.125 - 0.2, 1e-12);
    }

    #[test]
    fn ghz_symmetric_matches_diagonal_embedding() {
        let qs = [
            GhzSymParams::new(0.0, 0.0),
            GhzSymParams::new(0.5, SQRT_3 / 4.0),
            GhzSymParams::new(0.0, -1.0 / (4.0 * SQRT_3)),
            GhzSymParams::new(-0.2, 0.3),
        ];
        for q in qs {
            let direct = make_ghz_symmetric(&q).unwrap();
            let embedded = make_extended(&q.to_extended()).unwrap();
            assert!(direct.max_abs_diff(&embedded) < 1e-12);
        }
    }

    #[test]
    fn ghz_symmetric_examples() {
        // lower vertex: GHZ weights vanish, six middle weights 1/6
        let m = make_ghz_symmetric(&GhzSymParams::new(0.0, -1.0 / (4.0 * SQRT_3))).unwrap();
        assert!(m.at(0, 0).re.abs() < 1e-15);
        assert_close(m.at(1, 1).re, 1.0 / 6.0, 1e-15);
        // GHZ corner
        let m = make_ghz_symmetric(&GhzSymParams::new(0.5, SQRT_3 / 4.0)).unwrap();
        assert!(m.max_abs_diff(&PureState3::ghz().projector()) < 1e-15);
    }

    #[test]
    fn ghz_symmetric_validity() {
        assert!(validate_ghz_symmetric(&GhzSymParams::new(0.0, SQRT_3 / 4.0)).valid);
        assert!(validate_ghz_symmetric(&GhzSymParams::new(0.5, SQRT_3 / 4.0)).valid);
        let c = validate_ghz_symmetric(&GhzSymParams::new(0.3, 0.0));
        assert!(!c.valid);
        assert_eq!(
            c.violations[0].clause,
            "y >= (2/sqrt(3))|x| - 1/(4*sqrt(3))"
        );
        // cone level at x = 0.3 is (2/sqrt(3))*0.3 - 1/(4 sqrt(3)) ~ 0.2021
        assert_close(c.violations[0].excess, 0.20207259421636903, 1e-12);
    }

    #[test]
    fn reflect_x_is_an_involution_and_a_local_unitary() {
        let p = ExtSymParams::new(0.1, 0.0, 0.0, 0.0);
        assert_eq!(reflect_x(&p), ExtSymParams::new(-0.1, 0.0, 0.0, 0.0));
        assert_eq!(reflect_x(&reflect_x(&p)), p);
        let fixed = ExtSymParams::new(0.0, 0.1, -0.05, 0.02);
        assert_eq!(reflect_x(&fixed), fixed);

        // u ⊗ u ⊗ u with u = [[0,1],[-1,0]] conjugates the matrix into the
        // reflected one.
        let u2 = [[0.0, 1.0], [-1.0, 0.0]];
        let u = ComplexMatrix::from_fn(8, |i, j| {
            let mut v = 1.0;
            for bit in 0..3 {
                let ib = (i >> (2 - bit)) & 1;
                let jb = (j >> (2 - bit)) & 1;
                v *= u2[ib][jb];
            }
            Complex64::new(v, 0.0)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 1000 {
            let p = ExtSymParams::new(
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.25..0.25),
                rng.gen_range(-0.25..0.25),
                rng.gen_range(-0.25..0.25),
            );
            if !validate_extended(&p).valid {
                continue;
            }
            checked += 1;
            let conj = make_extended(&p).unwrap().conjugate_by(&u).unwrap();
            let reflected = make_extended(&reflect_x(&p)).unwrap();
            assert!(conj.max_abs_diff(&reflected) < 1e-12);
        }
    }

    /// Validity is equivalent to positive semidefiniteness on a grid that
    /// straddles the polytope boundary.
    #[test]
    fn validity_matches_psd_on_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut disagreements = 0;
        for _ in 0..10_000 {
            // Sample around the boundary: valid points perturbed outward.
            let p = ExtSymParams::new(
                rng.gen_range(-0.55..0.55),
                rng.gen_range(-0.3..0.3),
                rng.gen_range(-0.3..0.3),
                rng.gen_range(-0.3..0.3),
            );
            let valid = validate_extended(&p).valid;
            let min_eig = eig_hermitian(&make_extended_unchecked(&p)).unwrap()[0];
            let psd = min_eig >= -1e-10;
            // Skip the knife edge where rounding decides.
            if min_eig.abs() < 1e-11 {
                continue;
            }
            if valid != psd {
                disagreements += 1;
            }
        }
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn extended_eigenvalues_match_analytic_multiset() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 200 {
            let p = ExtSymParams::new(
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.25..0.25),
                rng.gen_range(-0.25..0.25),
                rng.gen_range(-0.25..0.25),
            );
            if !validate_extended(&p).valid {
                continue;
            }
            checked += 1;
            let mut expected = p.analytic_eigenvalues();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let eigs = eig_hermitian(&make_extended(&p).unwrap()).unwrap();
            for (e, a) in eigs.iter().zip(expected.iter()) {
                assert_close(*e, *a, 1e-10);
            }
        }
    }

    #[test]
    fn hs_distance_equals_parameter_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 100 {
            let draw = |rng: &mut ChaCha8Rng| {
                ExtSymParams::new(
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.25..0.25),
                    rng.gen_range(-0.25..0.25),
                    rng.gen_range(-0.25..0.25),
                )
            };
            let p = draw(&mut rng);
            let q = draw(&mut rng);
            if !validate_extended(&p).valid || !validate_extended(&q).valid {
                continue;
            }
            checked += 1;
            let d = hs_distance(&make_extended(&p).unwrap(), &make_extended(&q).unwrap()).unwrap();
            let euclid = libm::sqrt(
                (p.x - q.x) * (p.x - q.x)
                    + (p.y1 - q.y1) * (p.y1 - q.y1)
                    + (p.y2 - q.y2) * (p.y2 - q.y2)
                    + (p.y3 - q.y3) * (p.y3 - q.y3),
            );
            assert_close(d, euclid, 1e-12);
        }
        // the coherence direction alone
        let a = make_ghz_symmetric(&GhzSymParams::new(0.0, 0.0)).unwrap();
        let b = make_ghz_symmetric(&GhzSymParams::new(0.0, SQRT_3 / 4.0)).unwrap();
        assert_close(hs_distance(&a, &b).unwrap(), SQRT_3 / 4.0, 1e-15);
    }

    #[test]
    fn four_qubit_construction_and_errors() {
        // pure GHZ-like projector
        let f = FourQubitParams::new(0.5, 0.0, 0.0, 0.5).unwrap();
        let m = make_four_qubit(&f).unwrap();
        let eigs = eig_hermitian(&m).unwrap();
        assert_close(eigs[15], 1.0, 1e-12);
        for e in &eigs[..15] {
            assert!(e.abs() < 1e-12);
        }

        // uniform diagonal state: 1/16 + 4/16 + 3/16 = 1/2
        let f = FourQubitParams::new(1.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0, 0.0).unwrap();
        let m = make_four_qubit(&f).unwrap();
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        let eigs = eig_hermitian(&m).unwrap();
        assert_close(eigs[0], 1.0 / 16.0, 1e-12);
        assert_close(eigs[15], 1.0 / 16.0, 1e-12);

        // alpha1 = 1/8 with alpha2 = alpha3 = 1/16 overshoots the weight
        // budget by 1/16
        match FourQubitParams::new(0.125, 1.0 / 16.0, 1.0 / 16.0, 0.0) {
            Err(StateError::FourQubitConstraint(r)) => assert_close(r, 0.0625, 1e-12),
            other => panic!("expected constraint error, got {other:?}"),
        }

        // |beta| > alpha1 breaks positivity
        assert!(matches!(
            FourQubitParams::new(0.5, 0.0, 0.0, 0.6),
            Err(StateError::FourQubitPositivity(_))
        ));
        // constraint residual reported
        match FourQubitParams::new(0.5, 0.1, 0.0, 0.0) {
            Err(StateError::FourQubitConstraint(r)) => assert_close(r, 0.4, 1e-12),
            other => panic!("expected constraint error, got {other:?}"),
        }
    }

    #[test]
    fn four_qubit_diagonal_slots_follow_bit_parity() {
        // alpha1 on the all-equal strings, alpha2 on odd parity, alpha3 on
        // the remaining even-parity strings.
        for (i, slot) in FOUR_QUBIT_DIAG_SLOT.iter().enumerate() {
            let expected = if i == 0 || i == 15 {
                1
            } else if (i as u32).count_ones() % 2 == 1 {
                2
            } else {
                3
            };
            assert_eq!(*slot, expected, "index {i}");
        }
    }

    #[test]
    fn pure_state_normalization() {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(0.6, 0.0);
        assert!(matches!(
            PureState3::new(amps),
            Err(StateError::NotNormalized(_))
        ));
        amps[7] = Complex64::new(0.0, 0.8);
        let psi = PureState3::new(amps).unwrap();
        assert_close(psi.amplitude(7).im, 0.8, 1e-15);
        let again = PureState3::normalized(amps).unwrap();
        assert_eq!(psi, again);
    }
}
