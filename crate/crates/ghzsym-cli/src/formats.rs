//! File formats: the shared JSON state schema, report serialization, and
//! CSV tables. All numbers are emitted with 12 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use ghzsym::classify::{ClassVerdict, PptReport, SliceRow, SliceTable};
use ghzsym::explore::{ConjectureReport, FigRow, FigureTable, SampleReport};
use ghzsym::numerics::Polyline2D;
use ghzsym::states::{ExtSymParams, GhzSymParams};
use ghzsym::Complex64;

/// Round to 12 significant decimal digits (exact via decimal round trip).
pub fn round_sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

/// Shortest decimal text of the 12-significant-digit rounding.
pub fn fmt_f64(v: f64) -> String {
    format!("{}", round_sig12(v))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsDto {
    pub x: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl ParamsDto {
    pub fn from_params(p: &ExtSymParams) -> Self {
        Self {
            x: round_sig12(p.x),
            y1: round_sig12(p.y1),
            y2: round_sig12(p.y2),
            y3: round_sig12(p.y3),
        }
    }

    pub fn to_params(&self) -> ExtSymParams {
        ExtSymParams::new(self.x, self.y1, self.y2, self.y3)
    }
}

/// Shared state schema: exactly one of `params`, `matrix`, `pure`.
/// Matrices are 8x8 arrays of `[re, im]` pairs; pure states are 8 pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure: Option<Vec<[f64; 2]>>,
}

/// A state file resolved into one of its three payloads.
pub enum StatePayload {
    Params(ExtSymParams),
    Matrix(ghzsym::ComplexMatrix),
    Pure(ghzsym::PureState3),
}

pub fn load_state_file(path: &Path) -> Result<StatePayload, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: cannot read state file: {e}", path.display()))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| format!("{}: invalid state JSON: {e}", path.display()))?;
    let present = [
        file.params.is_some(),
        file.matrix.is_some(),
        file.pure.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if present != 1 {
        return Err(format!(
            "{}: state file must contain exactly one of the fields \
             \"params\", \"matrix\", \"pure\" ({present} present)",
            path.display()
        ));
    }
    if let Some(p) = file.params {
        return Ok(StatePayload::Params(p.to_params()));
    }
    if let Some(rows) = file.matrix {
        if rows.len() != 8 {
            return Err(format!(
                "{}: field \"matrix\" must have 8 rows, got {}",
                path.display(),
                rows.len()
            ));
        }
        let mut m = ghzsym::ComplexMatrix::zeros(8);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != 8 {
                return Err(format!(
                    "{}: field \"matrix\" row {i} must have 8 entries, got {}",
                    path.display(),
                    row.len()
                ));
            }
            for (j, [re, im]) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(*re, *im));
            }
        }
        return Ok(StatePayload::Matrix(m));
    }
    let pure = file.pure.expect("one field present");
    if pure.len() != 8 {
        return Err(format!(
            "{}: field \"pure\" must have 8 amplitude pairs, got {}",
            path.display(),
            pure.len()
        ));
    }
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (a, [re, im]) in amps.iter_mut().zip(pure.iter()) {
        *a = Complex64::new(*re, *im);
    }
    let psi = ghzsym::PureState3::new(amps)
        .map_err(|e| format!("{}: field \"pure\": {e}", path.display()))?;
    Ok(StatePayload::Pure(psi))
}

#[derive(Debug, Serialize)]
pub struct EvidenceDto {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Serialize)]
pub struct VerdictDto {
    pub lower: String,
    pub upper: String,
    pub evidence: Vec<EvidenceDto>,
}

impl VerdictDto {
    pub fn from_verdict(v: &ClassVerdict) -> Self {
        Self {
            lower: v.lower.name().to_string(),
            upper: v.upper.name().to_string(),
            evidence: v
                .evidence
                .iter()
                .map(|e| EvidenceDto {
                    name: e.name.to_string(),
                    value: round_sig12(e.value),
                    threshold: round_sig12(e.threshold),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PptDto {
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    pub x_max: f64,
    pub margin: f64,
    pub numeric_min_eig: f64,
}

impl PptDto {
    pub fn from_report(r: &PptReport) -> Self {
        Self {
            alpha2: round_sig12(r.alpha2),
            alpha3: round_sig12(r.alpha3),
            alpha4: round_sig12(r.alpha4),
            x_max: round_sig12(r.x_max),
            margin: round_sig12(r.margin),
            numeric_min_eig: round_sig12(r.numeric_min_eig),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessOutDto {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    pub params: ParamsDto,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct SampleDto {
    pub n_total: u64,
    pub n_valid: u64,
    pub seed: u64,
    pub fractions: BTreeMap<String, f64>,
}

impl SampleDto {
    pub fn from_report(r: &SampleReport) -> Self {
        Self {
            n_total: r.n_total,
            n_valid: r.n_valid,
            seed: r.seed,
            fractions: r
                .fractions
                .iter()
                .map(|(k, v)| (k.clone(), round_sig12(*v)))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairDeltaDto {
    pub pair: usize,
    pub delta: f64,
}

#[derive(Debug, Serialize)]
pub struct ConjectureDto {
    pub n_pairs: usize,
    pub seed: u64,
    pub witness_max_discrepancy: f64,
    pub ppt_bound_discrepancies: Vec<PairDeltaDto>,
    pub separability_bound_discrepancies: Vec<PairDeltaDto>,
    pub verdict_mismatches: Vec<usize>,
}

impl ConjectureDto {
    pub fn from_report(r: &ConjectureReport) -> Self {
        let deltas = |v: &Vec<(usize, f64)>| {
            v.iter()
                .map(|(pair, delta)| PairDeltaDto {
                    pair: *pair,
                    delta: round_sig12(*delta),
                })
                .collect()
        };
        Self {
            n_pairs: r.n_pairs,
            seed: r.seed,
            witness_max_discrepancy: round_sig12(r.witness_max_discrepancy),
            ppt_bound_discrepancies: deltas(&r.ppt_bound_discrepancies),
            separability_bound_discrepancies: deltas(&r.separability_bound_discrepancies),
            verdict_mismatches: r.verdict_mismatches.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FourQubitDto {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub beta: f64,
    pub constraint_residual: f64,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct GhzParamsDto {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Serialize)]
pub struct GhzTwirlDto {
    pub ghz_params: GhzParamsDto,
}

impl GhzTwirlDto {
    pub fn from_params(q: &GhzSymParams) -> Self {
        Self {
            ghz_params: GhzParamsDto {
                x: round_sig12(q.x),
                y: round_sig12(q.y),
            },
        }
    }
}

/// Wrapper so `twirl --family extended` output is itself a valid state file.
#[derive(Debug, Serialize)]
pub struct ParamsFileDto {
    pub params: ParamsDto,
}

#[derive(Debug, Serialize)]
pub struct FigVertexDto {
    pub y_sum: f64,
    pub x: f64,
    pub label: String,
}

#[derive(Debug, Serialize)]
pub struct FigLineDto {
    pub name: String,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Fig4Dto {
    pub v0: f64,
    pub vertices: Vec<FigVertexDto>,
    pub lines: Vec<FigLineDto>,
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub const SLICE_CSV_HEADER: &str = "y,x_stationary,x_hull,x_ppt,x_phys";

fn slice_row_csv(out: &mut String, y: f64, st: Option<f64>, hull: f64, ppt: f64, phys: f64) {
    let stationary = st.map(fmt_f64).unwrap_or_default();
    let _ = writeln!(
        out,
        "{},{},{},{},{}",
        fmt_f64(y),
        stationary,
        fmt_f64(hull),
        fmt_f64(ppt),
        fmt_f64(phys)
    );
}

pub fn slice_table_csv(table: &SliceTable) -> String {
    let mut out = String::new();
    out.push_str(SLICE_CSV_HEADER);
    out.push('\n');
    for SliceRow {
        y,
        x_stationary,
        x_hull,
        x_ppt,
        x_phys,
    } in &table.rows
    {
        slice_row_csv(&mut out, *y, *x_stationary, *x_hull, *x_ppt, *x_phys);
    }
    out
}

pub fn figure_slice_csv(seed: u64, n_images: usize, rows: &[FigRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# seed: {seed}");
    let _ = writeln!(out, "# images: {n_images}");
    out.push_str(SLICE_CSV_HEADER);
    out.push_str(",x_hull_lp\n");
    for row in rows {
        let stationary = row.x_stationary.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(row.y),
            stationary,
            fmt_f64(row.x_hull),
            fmt_f64(row.x_ppt),
            fmt_f64(row.x_phys),
            fmt_f64(row.x_hull_lp)
        );
    }
    out
}

pub fn polyline_csv(line: &Polyline2D) -> String {
    let mut out = String::from("y,x\n");
    for (h, v) in line.vertices() {
        let _ = writeln!(out, "{},{}", fmt_f64(*h), fmt_f64(*v));
    }
    out
}

pub fn figure_to_text(table: &FigureTable) -> String {
    match table {
        FigureTable::Slice {
            seed,
            n_images,
            rows,
            ..
        } => figure_slice_csv(*seed, *n_images, rows),
        FigureTable::Polygon {
            v0,
            vertices,
            lines,
        } => {
            let dto = Fig4Dto {
                v0: round_sig12(*v0),
                vertices: vertices
                    .iter()
                    .map(|v| FigVertexDto {
                        y_sum: round_sig12(v.y_sum),
                        x: round_sig12(v.x),
                        label: v.label.clone(),
                    })
                    .collect(),
                lines: lines
                    .iter()
                    .map(|(name, pts)| FigLineDto {
                        name: name.clone(),
                        points: pts
                            .iter()
                            .map(|(y, x)| [round_sig12(*y), round_sig12(*x)])
                            .collect(),
                    })
                    .collect(),
            };
            to_json_pretty(&dto)
        }
    }
}
