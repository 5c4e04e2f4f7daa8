//! Monte-Carlo exploration of the 4-D parameter polytope and the LP-based
//! brute-force separability oracle.
//!
//! All randomness flows through explicitly seeded ChaCha streams, so every
//! report is reproducible bit for bit from `(n, seed)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    fig4_polygon, slice_boundary, stationary_moduli, witness_trace_at, ClassVerdict, ClassifyError,
    ClassifyOptions, FigVertex, SliceKind, WitnessKind,
};
use crate::fp;
use crate::numerics::{lp_maximize, LpOutcome};
use crate::states::{validate_extended, ExtSymParams};
use crate::twirl::{product_image, ProductParams};

/// Sampled product images: the 8 corner states plus uniformly drawn moduli.
/// Columns for the hull LP are built from these entries and their
/// x-reflections; stationary moduli for the query point are injected per
/// call so that desk-scale budgets reach tight bounds.
#[derive(Debug, Clone)]
pub struct ImageSet {
    entries: Vec<(ProductParams, ExtSymParams)>,
    n_images: usize,
    seed: u64,
}

impl ImageSet {
    pub fn sample(n_images: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut entries = Vec::with_capacity(n_images + 8);
        for corner in 0..8usize {
            let a = ProductParams::new(
                ((corner >> 2) & 1) as f64,
                ((corner >> 1) & 1) as f64,
                (corner & 1) as f64,
            )
            .expect("corner moduli in range");
            entries.push((a, product_image(&a)));
        }
        for _ in 0..n_images {
            let a = ProductParams::new(
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
            )
            .expect("sampled moduli in range");
            entries.push((a, product_image(&a)));
        }
        Self {
            entries,
            n_images,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_images(&self) -> usize {
        self.n_images
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Outcome of the hull oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HullMembership {
    /// Certified lower bound on the separable maximum of `x` at the target.
    Bound(f64),
    /// The target y-triple is not in the hull of the sampled images;
    /// callers may retry with a larger budget.
    Infeasible,
}

/// LP-based separability oracle: maximize the mixture coherence
/// `sum w_j x_j` over mixtures of product images that hit the target
/// y-triple exactly.
pub fn hull_membership_xmax(
    y1: f64,
    y2: f64,
    y3: f64,
    n_images: usize,
    seed: u64,
) -> Result<HullMembership, ClassifyError> {
    let set = ImageSet::sample(n_images, seed);
    hull_membership_with(&set, y1, y2, y3)
}

/// Same LP over a pre-sampled image set (shared across many targets).
pub fn hull_membership_with(
    set: &ImageSet,
    y1: f64,
    y2: f64,
    y3: f64,
) -> Result<HullMembership, ClassifyError> {
    let base = ExtSymParams::new(0.0, y1, y2, y3);
    if !validate_extended(&base).valid {
        return Err(ClassifyError::InfeasibleY { y1, y2, y3 });
    }

    let mut images: Vec<ExtSymParams> = set.entries.iter().map(|(_, img)| *img).collect();
    if let Some(branches) = stationary_moduli(y1, y2, y3) {
        for b in &branches {
            images.push(product_image(b));
        }
    }

    let n = 2 * images.len(); // each image plus its x-reflection
    let mut objective = Vec::with_capacity(n);
    let mut rows: [Vec<f64>; 4] = [
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    ];
    for img in &images {
        for sign in [1.0, -1.0] {
            objective.push(sign * img.x);
            rows[0].push(img.y1);
            rows[1].push(img.y2);
            rows[2].push(img.y3);
            rows[3].push(1.0);
        }
    }
    let constraints: Vec<Vec<f64>> = rows.into_iter().collect();
    match lp_maximize(&objective, &constraints, &[y1, y2, y3, 1.0])? {
        LpOutcome::Optimal { objective, .. } => Ok(HullMembership::Bound(objective)),
        LpOutcome::Infeasible => Ok(HullMembership::Infeasible),
        LpOutcome::Unbounded => Err(ClassifyError::HullOracle(
            "unbounded LP on a weight simplex",
        )),
    }
}

/// Uniform rejection sample of the physical polytope, deterministic in the
/// seed. The bounding box is `x` in [-1/2, 1/2], `y_i` in [-1/4, 1/4].
pub fn sample_polytope(n: usize, seed: u64) -> Vec<ExtSymParams> {
    sample_polytope_counted(n, seed).0
}

fn sample_polytope_counted(n: usize, seed: u64) -> (Vec<ExtSymParams>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut draws = 0u64;
    while out.len() < n {
        draws += 1;
        let p = ExtSymParams::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.25..0.25),
            rng.gen_range(-0.25..0.25),
            rng.gen_range(-0.25..0.25),
        );
        if validate_extended(&p).valid {
            out.push(p);
        }
    }
    (out, draws)
}

/// Verdict-interval frequencies over a polytope sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    /// Bounding-box draws, including rejected ones.
    pub n_total: u64,
    /// Accepted (physical) samples; equals the requested count.
    pub n_valid: u64,
    pub seed: u64,
    /// Fractions over valid samples, keyed `"<lower>..<upper>"`.
    pub fractions: BTreeMap<String, f64>,
}

pub fn estimate_volumes(n: usize, seed: u64) -> Result<SampleReport, ClassifyError> {
    estimate_volumes_with(n, seed, &ClassifyOptions::default())
}

pub fn estimate_volumes_with(
    n: usize,
    seed: u64,
    opts: &ClassifyOptions,
) -> Result<SampleReport, ClassifyError> {
    let (samples, n_total) = sample_polytope_counted(n, seed);
    let set = ImageSet::sample(opts.hull_images, opts.seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for p in &samples {
        let verdict = classify_with_set(p, opts, &set)?;
        *counts.entry(verdict_key(&verdict)).or_insert(0) += 1;
    }
    let fractions = counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / n as f64))
        .collect();
    Ok(SampleReport {
        n_total,
        n_valid: n as u64,
        seed,
        fractions,
    })
}

fn verdict_key(v: &ClassVerdict) -> String {
    format!("{}..{}", v.lower.name(), v.upper.name())
}

fn classify_with_set(
    p: &ExtSymParams,
    opts: &ClassifyOptions,
    set: &ImageSet,
) -> Result<ClassVerdict, ClassifyError> {
    crate::classify::classify_with_image_set(p, opts, set)
}

/// Scan for dependence on the individual `y_j` at fixed `(x, y1+y2+y3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub n_pairs: usize,
    pub seed: u64,
    /// Largest witness-trace difference over all pairs and witnesses;
    /// the traces depend on the y-sum only, so this is zero up to rounding.
    pub witness_max_discrepancy: f64,
    /// Pairs whose PPT bound `min(alpha)` differs, with the difference.
    pub ppt_bound_discrepancies: Vec<(usize, f64)>,
    /// Pairs whose hull-oracle separability bound differs, with the
    /// difference.
    pub separability_bound_discrepancies: Vec<(usize, f64)>,
    /// Pairs whose classification intervals differ.
    pub verdict_mismatches: Vec<usize>,
}

pub fn conjecture_scan(n_pairs: usize, seed: u64) -> Result<ConjectureReport, ClassifyError> {
    conjecture_scan_with(n_pairs, seed, &ClassifyOptions::default())
}

pub fn conjecture_scan_with(
    n_pairs: usize,
    seed: u64,
    opts: &ClassifyOptions,
) -> Result<ConjectureReport, ClassifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set = ImageSet::sample(opts.hull_images, opts.seed);
    let witnesses = [
        WitnessKind::BisepVsSep,
        WitnessKind::WVsBisep,
        WitnessKind::GhzVsW { v0: opts.v0 },
    ];

    let mut witness_max_discrepancy = 0.0f64;
    let mut ppt_bound_discrepancies = Vec::new();
    let mut separability_bound_discrepancies = Vec::new();
    let mut verdict_mismatches = Vec::new();

    let mut made = 0usize;
    while made < n_pairs {
        let base = draw_valid(&mut rng);
        let y_sum = base.y_sum();
        // Resplit the y-sum twice; skip bases whose cross-section is too
        // thin to hit by rejection.
        let Some(a) = resplit(y_sum, base.x, &mut rng) else {
            continue;
        };
        let Some(b) = resplit(y_sum, base.x, &mut rng) else {
            continue;
        };
        let idx = made;
        made += 1;

        for w in &witnesses {
            let d =
                fp::abs(witness_trace_at(w, a.x, a.y_sum()) - witness_trace_at(w, b.x, b.y_sum()));
            witness_max_discrepancy = witness_max_discrepancy.max(d);
        }

        let ppt_a = crate::classify::ppt_report(&a)?.x_max;
        let ppt_b = crate::classify::ppt_report(&b)?.x_max;
        let d = fp::abs(ppt_a - ppt_b);
        if d > 1e-12 {
            ppt_bound_discrepancies.push((idx, d));
        }

        let hull_a = hull_bound_value(&set, &a)?;
        let hull_b = hull_bound_value(&set, &b)?;
        let d = fp::abs(hull_a - hull_b);
        if d > 1e-9 {
            separability_bound_discrepancies.push((idx, d));
        }

        let va = classify_with_set(&a, opts, &set)?;
        let vb = classify_with_set(&b, opts, &set)?;
        if va.lower != vb.lower || va.upper != vb.upper {
            verdict_mismatches.push(idx);
        }
    }

    Ok(ConjectureReport {
        n_pairs,
        seed,
        witness_max_discrepancy,
        ppt_bound_discrepancies,
        separability_bound_discrepancies,
        verdict_mismatches,
    })
}

fn hull_bound_value(set: &ImageSet, p: &ExtSymParams) -> Result<f64, ClassifyError> {
    match hull_membership_with(set, p.y1, p.y2, p.y3)? {
        HullMembership::Bound(v) => Ok(v),
        HullMembership::Infeasible => Ok(0.0),
    }
}

fn draw_valid(rng: &mut ChaCha8Rng) -> ExtSymParams {
    loop {
        let p = ExtSymParams::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.25..0.25),
            rng.gen_range(-0.25..0.25),
            rng.gen_range(-0.25..0.25),
        );
        if validate_extended(&p).valid {
            return p;
        }
    }
}

/// Draw a valid y-split of the given sum, keeping the coherence.
fn resplit(y_sum: f64, x: f64, rng: &mut ChaCha8Rng) -> Option<ExtSymParams> {
    for _ in 0..5000 {
        let y1 = rng.gen_range(-0.25..0.25);
        let y2 = rng.gen_range(-0.25..0.25);
        let y3 = y_sum - y1 - y2;
        let p = ExtSymParams::new(x, y1, y2, y3);
        if fp::abs(y3) <= 0.25 && validate_extended(&p).valid {
            return Some(p);
        }
    }
    None
}

/// Which figure-style dataset to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4,
}

impl FigureId {
    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
            FigureId::Fig4 => "fig4",
        }
    }
}

/// One row of a slice figure: the slice-boundary columns plus the
/// LP hull-oracle overlay.
#[derive(Debug, Clone, PartialEq)]
pub struct FigRow {
    pub y: f64,
    pub x_stationary: Option<f64>,
    pub x_hull: f64,
    pub x_ppt: f64,
    pub x_phys: f64,
    pub x_hull_lp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureTable {
    Slice {
        kind: SliceKind,
        seed: u64,
        n_images: usize,
        rows: Vec<FigRow>,
    },
    Polygon {
        v0: f64,
        vertices: Vec<FigVertex>,
        /// Zero lines of the three witnesses sampled over the physical
        /// triangle, keyed by witness name.
        lines: Vec<(String, Vec<(f64, f64)>)>,
    },
}

/// Figure data: slice tables carry an LP overlay column, the polygon table
/// carries the witness zero-line geometry.
pub fn figure_table(
    id: FigureId,
    resolution: usize,
    seed: u64,
    n_images: usize,
    v0: f64,
) -> Result<FigureTable, ClassifyError> {
    let kind = match id {
        FigureId::Fig3a => SliceKind::Equal,
        FigureId::Fig3b => SliceKind::Anti,
        FigureId::Fig3c => SliceKind::Axis,
        FigureId::Fig4 => {
            return figure_polygon(resolution, v0);
        }
    };
    let table = slice_boundary(kind, resolution)?;
    let set = ImageSet::sample(n_images, seed);
    let mut rows = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let (y1, y2, y3) = kind.triple(row.y);
        let x_hull_lp = match hull_membership_with(&set, y1, y2, y3)? {
            HullMembership::Bound(v) => v,
            HullMembership::Infeasible => 0.0,
        };
        rows.push(FigRow {
            y: row.y,
            x_stationary: row.x_stationary,
            x_hull: row.x_hull,
            x_ppt: row.x_ppt,
            x_phys: row.x_phys,
            x_hull_lp,
        });
    }
    Ok(FigureTable::Slice {
        kind,
        seed,
        n_images,
        rows,
    })
}

fn figure_polygon(resolution: usize, v0: f64) -> Result<FigureTable, ClassifyError> {
    if resolution < 2 {
        return Err(ClassifyError::Resolution(resolution));
    }
    let vertices = fig4_polygon(v0);
    let kinds = [
        ("bisep_vs_sep", WitnessKind::BisepVsSep),
        ("w_vs_bisep", WitnessKind::WVsBisep),
        ("ghz_vs_w", WitnessKind::GhzVsW { v0 }),
    ];
    let mut lines = Vec::new();
    for (name, kind) in kinds {
        let mut pts = Vec::new();
        for i in 0..resolution {
            let y_sum = -0.25 + (0.75 + 0.25) * i as f64 / (resolution - 1) as f64;
            // Solve trace(y_sum, x) = 0 for x; every witness is linear in x
            // with a strictly negative x-coefficient.
            let at0 = witness_trace_at(&kind, 0.0, y_sum);
            let at1 = witness_trace_at(&kind, 1.0, y_sum);
            let slope = at1 - at0;
            let x = -at0 / slope;
            let phys = 0.125 + y_sum / 2.0;
            if x >= -1e-12 && x <= phys + 1e-12 {
                pts.push((y_sum, x));
            }
        }
        lines.push((String::from(name), pts));
    }
    Ok(FigureTable::Polygon {
        v0,
        vertices,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Class;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_polytope(1000, 9);
        let b = sample_polytope(1000, 9);
        assert_eq!(a, b);
        for p in &a {
            assert!(validate_extended(p).valid);
        }
        let c = sample_polytope(1000, 10);
        assert_ne!(a, c);
    }

    /// The acceptance rate estimates the volume ratio: the y-tetrahedron has
    /// volume 1/24, the x-slab height integrates to 1/4 of it, and the box
    /// has volume 1/8, so the rate is (1/96)/(1/8) = 1/12.
    #[test]
    fn acceptance_rate_matches_volume_ratio() {
        let expected = 1.0 / 12.0;
        for seed in [1u64, 2, 3] {
            let (_, draws) = sample_polytope_counted(2000, seed);
            let rate = 2000.0 / draws as f64;
            let sigma = libm::sqrt(expected * (1.0 - expected) / draws as f64);
            assert!(
                fp::abs(rate - expected) < 3.0 * sigma + 0.01,
                "seed {seed}: rate {rate} vs {expected}"
            );
        }
    }

    #[test]
    fn hull_oracle_at_the_origin_is_tight() {
        match hull_membership_xmax(0.0, 0.0, 0.0, 10_000, 2).unwrap() {
            HullMembership::Bound(v) => {
                assert!(v >= 0.12, "bound {v}");
                assert!(v <= 0.125 + 1e-9, "bound {v}");
            }
            HullMembership::Infeasible => panic!("origin must be representable"),
        }
    }

    #[test]
    fn hull_oracle_at_the_tetrahedron_corner_is_zero() {
        match hull_membership_xmax(0.25, 0.25, 0.25, 500, 3).unwrap() {
            HullMembership::Bound(v) => assert_close(v, 0.0, 1e-9),
            HullMembership::Infeasible => panic!("corner is itself an image"),
        }
    }

    #[test]
    fn hull_oracle_on_the_equal_slice_tracks_the_hull_value() {
        match hull_membership_xmax(0.125, 0.125, 0.125, 10_000, 4).unwrap() {
            HullMembership::Bound(v) => {
                assert!(v <= 0.0625 + 1e-9, "bound {v}");
                assert!(v >= 0.0625 - 0.005, "bound {v}");
            }
            HullMembership::Infeasible => panic!("equal-slice point must be representable"),
        }
    }

    #[test]
    fn hull_oracle_rejects_infeasible_targets() {
        assert!(matches!(
            hull_membership_xmax(0.3, 0.3, 0.0, 100, 5),
            Err(ClassifyError::InfeasibleY { .. })
        ));
    }

    #[test]
    fn volume_report_is_reproducible_and_normalized() {
        let opts = ClassifyOptions {
            hull_images: 512,
            ..ClassifyOptions::default()
        };
        let a = estimate_volumes_with(300, 11, &opts).unwrap();
        let b = estimate_volumes_with(300, 11, &opts).unwrap();
        assert_eq!(a, b);
        let total: f64 = a.fractions.values().sum();
        assert_close(total, 1.0, 1e-12);
        assert_eq!(a.n_valid, 300);
        assert!(a.n_total >= 300);
        // some fraction of the polytope is certified separable
        let sep = a
            .fractions
            .get("Separable..Separable")
            .copied()
            .unwrap_or(0.0);
        assert!(sep > 0.0);
    }

    #[test]
    fn ghz_witness_negative_samples_lie_in_the_ghz_region() {
        let opts = ClassifyOptions {
            hull_images: 256,
            ..ClassifyOptions::default()
        };
        let samples = sample_polytope(2000, 13);
        let kind = WitnessKind::GhzVsW { v0: opts.v0 };
        for p in &samples {
            let t = witness_trace_at(&kind, fp::abs(p.x), p.y_sum());
            if t < 0.0 {
                let v = classify_with_set(p, &opts, &ImageSet::sample(64, 1)).unwrap();
                assert_eq!(v.lower, Class::Ghz);
            }
        }
    }

    #[test]
    fn conjecture_scan_flags_ppt_but_not_witnesses() {
        let opts = ClassifyOptions {
            hull_images: 512,
            ..ClassifyOptions::default()
        };
        let report = conjecture_scan_with(200, 17, &opts).unwrap();
        assert_eq!(report.n_pairs, 200);
        assert!(report.witness_max_discrepancy < 1e-12);
        assert!(!report.ppt_bound_discrepancies.is_empty());
        let again = conjecture_scan_with(200, 17, &opts).unwrap();
        assert_eq!(report, again);
    }

    #[test]
    fn figure_tables_have_expected_shape() {
        let t = figure_table(FigureId::Fig3a, 41, 7, 512, 0.981).unwrap();
        match t {
            FigureTable::Slice { kind, rows, .. } => {
                assert_eq!(kind, SliceKind::Equal);
                assert_eq!(rows.len(), 41);
                let last = rows.last().unwrap();
                assert_close(last.x_hull, 0.0, 1e-9);
                assert_close(last.x_ppt, 0.0, 1e-12);
                for row in &rows {
                    assert!(row.x_hull_lp <= row.x_ppt + 1e-9);
                }
            }
            _ => panic!("expected slice table"),
        }

        let t = figure_table(FigureId::Fig3c, 41, 7, 512, 0.981).unwrap();
        match t {
            FigureTable::Slice { rows, .. } => {
                // y = -1/8 at index 10 of 41 over [-1/4, 1/4]
                let row = &rows[10];
                assert_close(row.y, -0.125, 1e-15);
                assert_close(row.x_ppt, 0.0625, 1e-14);
            }
            _ => panic!("expected slice table"),
        }

        let t = figure_table(FigureId::Fig4, 41, 7, 512, 0.981).unwrap();
        match t {
            FigureTable::Polygon {
                vertices, lines, ..
            } => {
                assert_eq!(lines.len(), 3);
                let has = |ys: f64, x: f64| {
                    vertices
                        .iter()
                        .any(|v| fp::abs(v.y_sum - ys) < 1e-9 && fp::abs(v.x - x) < 1e-9)
                };
                assert!(has(0.0, 0.125));
                assert!(has(0.25, 0.25));
                assert!(has(0.75, 0.0));
            }
            _ => panic!("expected polygon"),
        }
    }
}
