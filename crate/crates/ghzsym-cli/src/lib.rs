//! Command-line front end for the `ghzsym` library: every operation exposed
//! with file-based input and output for reproducible runs.
//!
//! Exit codes: 0 on success, 1 on validation/data errors, 2 on usage
//! errors. Incoming parameters are canonicalized to 12 significant digits
//! (the output precision), so feeding a printed result back in reproduces
//! the same bytes.

pub mod formats;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use formats::{
    load_state_file, round_sig12, slice_table_csv, to_json_pretty, ConjectureDto, FourQubitDto,
    GhzTwirlDto, ParamsDto, ParamsFileDto, PptDto, SampleDto, StatePayload, VerdictDto,
    WitnessOutDto,
};
use ghzsym::classify::{
    classify_extended_with, ghz_symmetric_separable_boundary, ppt_report, slice_boundary,
    witness_trace, ClassifyOptions, SliceKind, WitnessKind, DEFAULT_V0,
};
use ghzsym::explore::{conjecture_scan_with, estimate_volumes_with, figure_table, FigureId};
use ghzsym::states::{validate_extended, ExtSymParams, FourQubitParams};
use ghzsym::twirl::{project_to_ghz, twirl_density_extended, twirl_pure_extended, twirl_pure_ghz};
use ghzsym::{Complex64, PureState3};

const SAMPLE_HULL_IMAGES: usize = 1024;
const FIGURE_HULL_IMAGES: usize = 4096;

#[derive(Parser)]
#[command(
    name = "ghzsym",
    version,
    about = "Construct, twirl, and classify extended GHZ-symmetric three-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Extended,
    Ghz,
}

#[derive(Clone, Copy, ValueEnum)]
enum SliceArg {
    Equal,
    Anti,
    Axis,
}

impl SliceArg {
    fn kind(self) -> SliceKind {
        match self {
            SliceArg::Equal => SliceKind::Equal,
            SliceArg::Anti => SliceKind::Anti,
            SliceArg::Axis => SliceKind::Axis,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessArg {
    /// Biseparable-or-higher vs separable.
    Bisep,
    /// W-or-higher vs biseparable.
    W,
    /// GHZ vs W.
    Ghz,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4,
}

impl FigureArg {
    fn id(self) -> FigureId {
        match self {
            FigureArg::Fig3a => FigureId::Fig3a,
            FigureArg::Fig3b => FigureId::Fig3b,
            FigureArg::Fig3c => FigureId::Fig3c,
            FigureArg::Fig4 => FigureId::Fig4,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a state into the hierarchy S ⊂ B ⊂ W ⊂ GHZ (verdict JSON).
    #[command(group(ArgGroup::new("input").required(true).args(["params", "state"])))]
    Classify {
        /// Family coordinates x,y1,y2,y3 (decimals or fractions like 1/8).
        #[arg(long, value_name = "X,Y1,Y2,Y3", allow_hyphen_values = true)]
        params: Option<String>,
        /// JSON state file (shared schema: params, matrix, or pure).
        #[arg(long, value_name = "FILE")]
        state: Option<PathBuf>,
        /// Seed of the separability hull oracle.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Steering parameter of the GHZ-vs-W witness.
        #[arg(long, default_value_t = DEFAULT_V0)]
        v0: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Project a state into a symmetric family (params JSON).
    #[command(group(ArgGroup::new("input").required(true).args(["pure", "state"])))]
    Twirl {
        /// JSON state file (shared schema: params, matrix, or pure).
        #[arg(long, value_name = "FILE")]
        state: Option<PathBuf>,
        /// Pure-state amplitudes: 16 comma-separated numbers
        /// (re,im for each of the 8 basis states).
        #[arg(long, value_name = "RE,IM,...", allow_hyphen_values = true)]
        pure: Option<String>,
        #[arg(long, value_enum, default_value = "extended")]
        family: FamilyArg,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Separability boundary table along a slice (CSV).
    Boundary {
        #[arg(long, value_enum)]
        slice: SliceArg,
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// PPT report for a state (JSON).
    #[command(group(ArgGroup::new("input").required(true).args(["params", "state"])))]
    Ppt {
        #[arg(long, value_name = "X,Y1,Y2,Y3", allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, value_name = "FILE")]
        state: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Witness expectation value for a state (JSON).
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessArg,
        #[arg(long, value_name = "X,Y1,Y2,Y3", allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = DEFAULT_V0)]
        v0: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Sample the polytope and tabulate verdict fractions (JSON).
    Sample {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_V0)]
        v0: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Scan pairs with equal (x, y1+y2+y3) for indicator divergences (JSON).
    Conjecture {
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_V0)]
        v0: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Figure datasets: slice tables with an LP overlay (CSV) or the
    /// witness polygon (JSON).
    Figure {
        #[arg(long, value_enum)]
        id: FigureArg,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_V0)]
        v0: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Separable boundary curve of the permutation-symmetric family (CSV).
    GhzBoundary {
        #[arg(long, default_value_t = 2001)]
        resolution: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Four-qubit GHZ-like-symmetric state: construction and spectrum (JSON).
    FourQubit {
        /// Diagonal weights alpha1,alpha2,alpha3 (decimals or fractions).
        #[arg(long, value_name = "A1,A2,A3", allow_hyphen_values = true)]
        alphas: String,
        /// Coherence between |0000> and |1111>.
        #[arg(long, value_name = "B", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

struct CommandOutput {
    text: String,
    out: Option<PathBuf>,
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(output) => match output.out {
            Some(path) => match std::fs::write(&path, &output.text) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    1
                }
            },
            None => {
                print!("{}", output.text);
                0
            }
        },
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

/// Parse a decimal or a simple fraction like "1/8" or "-1/12".
fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid number {s:?}"))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid number {s:?}"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(n / d)
    } else {
        s.parse().map_err(|_| format!("invalid number {s:?}"))
    }
}

fn parse_numbers(s: &str, expected: usize, what: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != expected {
        return Err(format!(
            "{what} needs {expected} comma-separated values, got {}",
            parts.len()
        ));
    }
    parts.iter().map(|p| parse_number(p)).collect()
}

/// Canonicalize parameters to the output precision so that printed values
/// fed back in reproduce identical results.
fn canonical(p: ExtSymParams) -> ExtSymParams {
    ExtSymParams::new(
        round_sig12(p.x),
        round_sig12(p.y1),
        round_sig12(p.y2),
        round_sig12(p.y3),
    )
}

fn parse_params(s: &str) -> Result<ExtSymParams, String> {
    let v = parse_numbers(s, 4, "--params")?;
    Ok(canonical(ExtSymParams::new(v[0], v[1], v[2], v[3])))
}

/// Resolve `--params`/`--state` input into (possibly twirled) family
/// coordinates.
fn resolve_params(params: Option<&str>, state: Option<&PathBuf>) -> Result<ExtSymParams, String> {
    if let Some(text) = params {
        let p = parse_params(text)?;
        validate_extended(&p)
            .into_result()
            .map_err(|e| e.to_string())?;
        return Ok(p);
    }
    let path = state.expect("clap group guarantees one input");
    let p = match load_state_file(path)? {
        StatePayload::Params(p) => {
            validate_extended(&p)
                .into_result()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            p
        }
        StatePayload::Matrix(m) => {
            twirl_density_extended(&m).map_err(|e| format!("{}: {e}", path.display()))?
        }
        StatePayload::Pure(psi) => twirl_pure_extended(&psi),
    };
    Ok(canonical(p))
}

fn parse_pure(list: &str) -> Result<PureState3, String> {
    let v = parse_numbers(list, 16, "--pure")?;
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (i, a) in amps.iter_mut().enumerate() {
        *a = Complex64::new(v[2 * i], v[2 * i + 1]);
    }
    PureState3::new(amps).map_err(|e| e.to_string())
}

fn execute(command: Command) -> Result<CommandOutput, String> {
    match command {
        Command::Classify {
            params,
            state,
            seed,
            v0,
            out,
        } => {
            let p = resolve_params(params.as_deref(), state.as_ref())?;
            let opts = ClassifyOptions {
                v0,
                seed,
                ..ClassifyOptions::default()
            };
            let verdict = classify_extended_with(&p, &opts).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: to_json_pretty(&VerdictDto::from_verdict(&verdict)),
                out,
            })
        }
        Command::Twirl {
            state,
            pure,
            family,
            out,
        } => {
            let text = match family {
                FamilyArg::Extended => {
                    let p = match &pure {
                        Some(list) => twirl_pure_extended(&parse_pure(list)?),
                        None => resolve_params(None, state.as_ref())?,
                    };
                    to_json_pretty(&ParamsFileDto {
                        params: ParamsDto::from_params(&p),
                    })
                }
                FamilyArg::Ghz => {
                    let q = match &pure {
                        Some(list) => twirl_pure_ghz(&parse_pure(list)?),
                        None => {
                            let p = resolve_params(None, state.as_ref())?;
                            project_to_ghz(&p).map_err(|e| e.to_string())?
                        }
                    };
                    to_json_pretty(&GhzTwirlDto::from_params(&q))
                }
            };
            Ok(CommandOutput { text, out })
        }
        Command::Boundary {
            slice,
            resolution,
            out,
        } => {
            let table = slice_boundary(slice.kind(), resolution).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: slice_table_csv(&table),
                out,
            })
        }
        Command::Ppt { params, state, out } => {
            let p = resolve_params(params.as_deref(), state.as_ref())?;
            let report = ppt_report(&p).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: to_json_pretty(&PptDto::from_report(&report)),
                out,
            })
        }
        Command::Witness {
            kind,
            params,
            v0,
            out,
        } => {
            let p = parse_params(&params)?;
            let (witness, kind_name, v0_field) = match kind {
                WitnessArg::Bisep => (WitnessKind::BisepVsSep, "bisep", None),
                WitnessArg::W => (WitnessKind::WVsBisep, "w", None),
                WitnessArg::Ghz => (WitnessKind::GhzVsW { v0 }, "ghz", Some(round_sig12(v0))),
            };
            let value = witness_trace(&witness, &p).map_err(|e| e.to_string())?;
            let dto = WitnessOutDto {
                kind: kind_name.to_string(),
                v0: v0_field,
                params: ParamsDto::from_params(&p),
                value: round_sig12(value),
            };
            Ok(CommandOutput {
                text: to_json_pretty(&dto),
                out,
            })
        }
        Command::Sample { n, seed, v0, out } => {
            if n == 0 {
                return Err("--n must be at least 1".to_string());
            }
            let opts = ClassifyOptions {
                v0,
                hull_images: SAMPLE_HULL_IMAGES,
                seed,
            };
            let report = estimate_volumes_with(n, seed, &opts).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: to_json_pretty(&SampleDto::from_report(&report)),
                out,
            })
        }
        Command::Conjecture {
            pairs,
            seed,
            v0,
            out,
        } => {
            if pairs == 0 {
                return Err("--pairs must be at least 1".to_string());
            }
            let opts = ClassifyOptions {
                v0,
                hull_images: SAMPLE_HULL_IMAGES,
                seed,
            };
            let report = conjecture_scan_with(pairs, seed, &opts).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: to_json_pretty(&ConjectureDto::from_report(&report)),
                out,
            })
        }
        Command::Figure {
            id,
            resolution,
            seed,
            v0,
            out,
        } => {
            let table = figure_table(id.id(), resolution, seed, FIGURE_HULL_IMAGES, v0)
                .map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: formats::figure_to_text(&table),
                out,
            })
        }
        Command::GhzBoundary { resolution, out } => {
            let line = ghz_symmetric_separable_boundary(resolution).map_err(|e| e.to_string())?;
            Ok(CommandOutput {
                text: formats::polyline_csv(&line),
                out,
            })
        }
        Command::FourQubit { alphas, beta, out } => {
            let a = parse_numbers(&alphas, 3, "--alphas")?;
            let b = parse_number(&beta)?;
            let f = FourQubitParams::new(
                round_sig12(a[0]),
                round_sig12(a[1]),
                round_sig12(a[2]),
                round_sig12(b),
            )
            .map_err(|e| e.to_string())?;
            let m = ghzsym::states::make_four_qubit(&f).map_err(|e| e.to_string())?;
            let eigs = ghzsym::numerics::eig_hermitian(&m).map_err(|e| e.to_string())?;
            let dto = FourQubitDto {
                alpha1: round_sig12(f.alpha1),
                alpha2: round_sig12(f.alpha2),
                alpha3: round_sig12(f.alpha3),
                beta: round_sig12(f.beta),
                constraint_residual: round_sig12(f.constraint_residual()),
                eigenvalues: eigs.into_iter().map(round_sig12).collect(),
            };
            Ok(CommandOutput {
                text: to_json_pretty(&dto),
                out,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_parser_accepts_fractions() {
        assert_eq!(parse_number("1/8").unwrap(), 0.125);
        assert_eq!(parse_number("-1/12").unwrap(), -1.0 / 12.0);
        assert_eq!(parse_number(" 0.25 ").unwrap(), 0.25);
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("abc").is_err());
    }

    #[test]
    fn params_parser_counts_fields() {
        assert!(parse_params("0,0,0").is_err());
        let p = parse_params("1/2,1/4,1/4,1/4").unwrap();
        assert_eq!(p, ExtSymParams::new(0.5, 0.25, 0.25, 0.25));
    }
}
