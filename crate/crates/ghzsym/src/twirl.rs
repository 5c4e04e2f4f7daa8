//! Projection of general states into the symmetric families.
//!
//! For pure states the family coordinates come out in closed form from the
//! amplitudes. For mixed states the projection used here is the unique
//! linear map that agrees with the pure-state formulas and is invariant
//! under the group: `x` is the real part of the `(000,111)` coherence and
//! each `y` reads a four-entry diagonal combination. [`mc_group_average`]
//! provides the direct numeric group average that the closed form must
//! reproduce up to Monte-Carlo error.

use rand::Rng;

use crate::fp;
use crate::numerics::{eig_hermitian, Complex64, ComplexMatrix, HERMITICITY_TOL, PSD_TOL};
use crate::states::{validate_extended, ExtSymParams, GhzSymParams, PureState3, StateError};
use crate::SQRT_3;

#[derive(Debug, thiserror::Error)]
pub enum TwirlError {
    #[error("expected an 8x8 matrix, got {0}x{0}")]
    WrongDimension(usize),
    #[error("not a density matrix: {0}")]
    NotDensity(&'static str),
    #[error("product modulus a{index} = {value} outside [0, 1]")]
    ModulusRange { index: usize, value: f64 },
}

/// One element of the symmetry group: two rotation angles plus the optional
/// simultaneous flip `X⊗X⊗X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub phi1: f64,
    pub phi2: f64,
    pub flip: bool,
}

impl GroupElement {
    /// Haar sample: angles uniform on [0, 2pi), flip a fair coin.
    pub fn sample(rng: &mut impl Rng) -> Self {
        Self {
            phi1: rng.gen_range(0.0..core::f64::consts::TAU),
            phi2: rng.gen_range(0.0..core::f64::consts::TAU),
            flip: rng.gen_bool(0.5),
        }
    }
}

/// 8x8 unitary of a group element.
///
/// The rotation part is diagonal with phase `exp(i theta_b)` on basis state
/// `b = (i1 i2 i3)`, where `theta_b = phi1 s(i1) + phi2 s(i2) -
/// (phi1+phi2) s(i3)` and `s(0) = +1, s(1) = -1`. The flip left-multiplies
/// by the bit-complement permutation.
pub fn group_element_matrix(g: &GroupElement) -> ComplexMatrix {
    let sign = |bit: usize| if bit == 0 { 1.0 } else { -1.0 };
    let mut m = ComplexMatrix::zeros(8);
    for b in 0..8 {
        let (i1, i2, i3) = ((b >> 2) & 1, (b >> 1) & 1, b & 1);
        let theta = g.phi1 * sign(i1) + g.phi2 * sign(i2) - (g.phi1 + g.phi2) * sign(i3);
        let phase = Complex64::new(fp::cos(theta), fp::sin(theta));
        let row = if g.flip { 7 - b } else { b };
        m.set(row, b, phase);
    }
    m
}

/// Family coordinates of the twirled pure state.
pub fn twirl_pure_extended(psi: &PureState3) -> ExtSymParams {
    let a = psi.amplitudes();
    let x = (a[0].conj() * a[7]).re;
    let pair = |u: usize, v: usize| a[u].norm_sqr() + a[v].norm_sqr();
    let core = pair(0, 7);
    ExtSymParams::new(
        x,
        (core + pair(3, 4)) / 2.0 - 0.25,
        (core + pair(5, 2)) / 2.0 - 0.25,
        (core + pair(6, 1)) / 2.0 - 0.25,
    )
}

/// GHZ-symmetric coordinates of the twirled pure state.
pub fn twirl_pure_ghz(psi: &PureState3) -> GhzSymParams {
    let a = psi.amplitudes();
    GhzSymParams::new(
        (a[0].conj() * a[7]).re,
        (a[0].norm_sqr() + a[7].norm_sqr() - 0.25) / SQRT_3,
    )
}

/// Family coordinates of the twirled density matrix.
///
/// Linear extension of the pure-state formulas; cross-checked against
/// [`mc_group_average`].
pub fn twirl_density_extended(rho: &ComplexMatrix) -> Result<ExtSymParams, TwirlError> {
    if rho.dim() != 8 {
        return Err(TwirlError::WrongDimension(rho.dim()));
    }
    if rho.check_hermitian(HERMITICITY_TOL).is_err() {
        return Err(TwirlError::NotDensity("not Hermitian"));
    }
    if fp::abs(rho.trace().re - 1.0) > 1e-9 {
        return Err(TwirlError::NotDensity("trace differs from 1"));
    }
    let eigs = eig_hermitian(rho).map_err(|_| TwirlError::NotDensity("not Hermitian"))?;
    if eigs[0] < PSD_TOL {
        return Err(TwirlError::NotDensity("not positive semidefinite"));
    }
    let d = |i: usize| rho.at(i, i).re;
    let x = rho.at(0, 7).re;
    let core = d(0) + d(7);
    Ok(ExtSymParams::new(
        x,
        (core + d(3) + d(4)) / 2.0 - 0.25,
        (core + d(5) + d(2)) / 2.0 - 0.25,
        (core + d(6) + d(1)) / 2.0 - 0.25,
    ))
}

/// Direct numeric group average `(1/n) sum_g U_g rho U_g†` over sampled
/// group elements. Converges to the twirled state at the Monte-Carlo rate.
pub fn mc_group_average(rho: &ComplexMatrix, n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(rho.dim());
    for _ in 0..n {
        let u = group_element_matrix(&GroupElement::sample(rng));
        let term = rho
            .conjugate_by(&u)
            .expect("group element dimension matches");
        acc = acc.add(&term).expect("dimensions match");
    }
    acc.scaled(1.0 / n as f64)
}

/// Parameter-level projection from the extended family onto the
/// permutation-symmetric one: `x` is kept, `y = (y1+y2+y3)/sqrt(3)`.
pub fn project_to_ghz(p: &ExtSymParams) -> Result<GhzSymParams, StateError> {
    validate_extended(p).into_result()?;
    Ok(GhzSymParams::new(p.x, p.y_sum() / SQRT_3))
}

/// Moduli of a pure product state's local unitaries. Phases drop out of the
/// twirled image, so three numbers in [0, 1] parametrize all of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl ProductParams {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self, TwirlError> {
        for (index, value) in [(1, a1), (2, a2), (3, a3)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(TwirlError::ModulusRange { index, value });
            }
        }
        Ok(Self { a1, a2, a3 })
    }

    pub fn moduli(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }
}

/// Twirled image of the product state with the given moduli:
///
/// ```text
/// x  = a1 a2 a3 sqrt(1-a1^2) sqrt(1-a2^2) sqrt(1-a3^2)
/// y_i = (mu_i - 1/2)/2,   mu_1 = a2^2 a3^2 + (1-a2^2)(1-a3^2)  (cyclic)
/// ```
pub fn product_image(a: &ProductParams) -> ExtSymParams {
    let [a1, a2, a3] = a.moduli();
    let (t1, t2, t3) = (a1 * a1, a2 * a2, a3 * a3);
    let x = a1 * a2 * a3 * fp::sqrt((1.0 - t1) * (1.0 - t2) * (1.0 - t3));
    let mu = |u: f64, v: f64| u * v + (1.0 - u) * (1.0 - v);
    ExtSymParams::new(
        x,
        (mu(t2, t3) - 0.5) / 2.0,
        (mu(t1, t3) - 0.5) / 2.0,
        (mu(t1, t2) - 0.5) / 2.0,
    )
}

/// Random density matrix from the Hilbert-Schmidt ensemble
/// (`G G† / tr(G G†)` with standard complex Gaussian `G`); used by the
/// averaging cross-checks.
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    // Box-Muller on uniform draws keeps the RNG dependency minimal.
    let mut gauss = || {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
        fp::sqrt(-2.0 * libm::log(u1)) * fp::cos(u2)
    };
    let g = ComplexMatrix::from_fn(dim, |_, _| Complex64::new(gauss(), gauss()));
    let gg = g.matmul(&g.adjoint()).expect("square");
    gg.scaled(1.0 / gg.trace().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::hs_distance;
    use crate::states::{make_extended, validate_ghz_symmetric};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn random_pure(rng: &mut ChaCha8Rng) -> PureState3 {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for a in &mut amps {
            *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        PureState3::normalized(amps).unwrap()
    }

    #[test]
    fn group_element_identity_and_flip() {
        let id = group_element_matrix(&GroupElement {
            phi1: 0.0,
            phi2: 0.0,
            flip: false,
        });
        assert!(id.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-15);

        let flip = group_element_matrix(&GroupElement {
            phi1: 0.0,
            phi2: 0.0,
            flip: true,
        });
        for b in 0..8 {
            assert_close(flip.at(7 - b, b).re, 1.0, 1e-15);
        }
    }

    #[test]
    fn group_element_phase_bookkeeping() {
        let u = group_element_matrix(&GroupElement {
            phi1: core::f64::consts::FRAC_PI_2,
            phi2: 0.0,
            flip: false,
        });
        // |001>: phase e^{i pi/2} * 1 * e^{i pi/2} = -1
        assert_close(u.at(1, 1).re, -1.0, 1e-15);
        assert_close(u.at(1, 1).im, 0.0, 1e-15);
    }

    #[test]
    fn group_elements_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = group_element_matrix(&GroupElement::sample(&mut rng));
            let prod = u.matmul(&u.adjoint()).unwrap();
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-12);
        }
    }

    #[test]
    fn pure_twirl_examples() {
        // 1/sqrt(2) squares back to 1/2 only up to rounding
        let p = twirl_pure_extended(&PureState3::ghz());
        assert_close(p.x, 0.5, 1e-15);
        for (y, want) in [(p.y1, 0.25), (p.y2, 0.25), (p.y3, 0.25)] {
            assert_close(y, want, 1e-15);
        }

        let p = twirl_pure_extended(&PureState3::w());
        assert_close(p.x, 0.0, 1e-15);
        for y in [p.y1, p.y2, p.y3] {
            assert_close(y, -1.0 / 12.0, 1e-15);
        }

        let p = twirl_pure_extended(&PureState3::basis(0));
        assert_eq!(p, ExtSymParams::new(0.0, 0.25, 0.25, 0.25));

        let q = twirl_pure_ghz(&PureState3::ghz());
        assert_close(q.x, 0.5, 1e-15);
        assert_close(q.y, SQRT_3 / 4.0, 1e-15);

        let q = twirl_pure_ghz(&PureState3::w());
        assert_close(q.x, 0.0, 1e-15);
        assert_close(q.y, -1.0 / (4.0 * SQRT_3), 1e-15);

        let q = twirl_pure_ghz(&PureState3::basis(0));
        assert_close(q.y, SQRT_3 / 4.0, 1e-15);
    }

    #[test]
    fn pure_twirl_output_is_always_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let p = twirl_pure_extended(&random_pure(&mut rng));
            assert!(validate_extended(&p).valid);
            let q = twirl_pure_ghz(&random_pure(&mut rng));
            assert!(validate_ghz_symmetric(&q).valid);
        }
    }

    #[test]
    fn pure_twirl_is_group_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let psi = random_pure(&mut rng);
            let g = GroupElement::sample(&mut rng);
            let u = group_element_matrix(&g);
            let mut rotated = [Complex64::new(0.0, 0.0); 8];
            for (i, slot) in rotated.iter_mut().enumerate() {
                for j in 0..8 {
                    *slot += u.at(i, j) * psi.amplitude(j);
                }
            }
            let rotated = PureState3::new(rotated).unwrap();
            let a = twirl_pure_extended(&psi);
            let b = twirl_pure_extended(&rotated);
            assert_close(a.x, b.x, 1e-12);
            assert_close(a.y1, b.y1, 1e-12);
            assert_close(a.y2, b.y2, 1e-12);
            assert_close(a.y3, b.y3, 1e-12);
        }
    }

    #[test]
    fn density_twirl_examples() {
        let p = twirl_density_extended(&ComplexMatrix::identity(8).scaled(0.125)).unwrap();
        assert_eq!(p, ExtSymParams::new(0.0, 0.0, 0.0, 0.0));

        let p = twirl_density_extended(&PureState3::ghz().projector()).unwrap();
        assert_close(p.x, 0.5, 1e-15);
        for (y, want) in [(p.y1, 0.25), (p.y2, 0.25), (p.y3, 0.25)] {
            assert_close(y, want, 1e-15);
        }
    }

    #[test]
    fn density_twirl_agrees_with_pure_twirl() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let psi = random_pure(&mut rng);
            let from_pure = twirl_pure_extended(&psi);
            let from_density = twirl_density_extended(&psi.projector()).unwrap();
            assert_close(from_pure.x, from_density.x, 1e-12);
            assert_close(from_pure.y1, from_density.y1, 1e-12);
            assert_close(from_pure.y2, from_density.y2, 1e-12);
            assert_close(from_pure.y3, from_density.y3, 1e-12);
        }
    }

    #[test]
    fn density_twirl_is_idempotent_on_the_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
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
            let back = twirl_density_extended(&make_extended(&p).unwrap()).unwrap();
            assert_close(back.x, p.x, 1e-12);
            assert_close(back.y1, p.y1, 1e-12);
            assert_close(back.y2, p.y2, 1e-12);
            assert_close(back.y3, p.y3, 1e-12);
        }
    }

    #[test]
    fn density_twirl_rejects_bad_input() {
        assert!(matches!(
            twirl_density_extended(&ComplexMatrix::identity(4)),
            Err(TwirlError::WrongDimension(4))
        ));
        assert!(matches!(
            twirl_density_extended(&ComplexMatrix::identity(8)),
            Err(TwirlError::NotDensity("trace differs from 1"))
        ));
        let mut m = ComplexMatrix::identity(8).scaled(0.125);
        m.set(0, 3, Complex64::new(0.2, 0.0)); // asymmetric entry
        assert!(matches!(
            twirl_density_extended(&m),
            Err(TwirlError::NotDensity("not Hermitian"))
        ));
    }

    #[test]
    fn mc_average_converges_to_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let rho = random_density_matrix(8, &mut rng);
        let p = twirl_density_extended(&rho).unwrap();
        let target = make_extended(&p).unwrap();
        let avg = mc_group_average(&rho, 4000, &mut rng);
        let d = hs_distance(&avg, &target).unwrap();
        assert!(d < 0.03, "distance {d}");
    }

    #[test]
    fn projection_examples() {
        let q = project_to_ghz(&ExtSymParams::new(0.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(q, GhzSymParams::new(0.0, 0.0));

        let q = project_to_ghz(&ExtSymParams::new(0.5, 0.25, 0.25, 0.25)).unwrap();
        assert_close(q.y, SQRT_3 / 4.0, 1e-15);

        let w = twirl_pure_extended(&PureState3::w());
        let q = project_to_ghz(&w).unwrap();
        assert_close(q.y, -1.0 / (4.0 * SQRT_3), 1e-15);

        assert!(project_to_ghz(&ExtSymParams::new(0.4, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn projection_commutes_with_pure_twirls() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..1000 {
            let psi = random_pure(&mut rng);
            let via_extended = project_to_ghz(&twirl_pure_extended(&psi)).unwrap();
            let direct = twirl_pure_ghz(&psi);
            assert_close(via_extended.x, direct.x, 1e-12);
            assert_close(via_extended.y, direct.y, 1e-12);
        }
    }

    #[test]
    fn product_image_corners_and_center() {
        let p = product_image(&ProductParams::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(p, ExtSymParams::new(0.0, 0.25, 0.25, 0.25));

        let s = 1.0 / libm::sqrt(2.0);
        let p = product_image(&ProductParams::new(s, s, s).unwrap());
        assert_close(p.x, 0.125, 1e-15);
        for y in [p.y1, p.y2, p.y3] {
            assert_close(y, 0.0, 1e-15);
        }

        let p = product_image(&ProductParams::new(1.0, 0.0, 1.0).unwrap());
        assert_eq!(p, ExtSymParams::new(0.0, -0.25, 0.25, -0.25));

        assert!(matches!(
            ProductParams::new(1.2, 0.0, 0.0),
            Err(TwirlError::ModulusRange { index: 1, .. })
        ));
    }

    #[test]
    fn product_images_are_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..2000 {
            let a = ProductParams::new(
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
            )
            .unwrap();
            let p = product_image(&a);
            assert!(validate_extended(&p).valid);
        }
    }
}
