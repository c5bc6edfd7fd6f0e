//! Command-line front end: decide unit-regularity for problem files and run
//! exhaustive validation sweeps.

pub mod error;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ureg_core::balance::{self, census, Universe};
use ureg_core::scan::{self, Bounds};
use ureg_core::{
    lvw, txy, Error, FFMatrix, InvariantSetPair, InvariantSubspacePair, PrimeField, Transformation,
};

pub use error::{CliError, Result};
use problem::{Element, ProblemFile};
use report::{
    CheckReport, Decision, Details, Exhaustive, LinearDims, MapValue, OracleReport, ScanReport,
    SemigroupReport, SubsetValue, TransformSets, WitnessReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "ureg",
    version,
    about = "Unit-regularity of maps that preserve a subset or subspace"
)]
pub struct Cli {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Enumeration bound: the largest degree n for transformations, and the
    /// largest number of matrices p^(n²) or vectors p^n for linear maps.
    #[arg(long, global = true, env = "UREG_BOUND")]
    pub bound: Option<u128>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide unit-regularity of the map in a problem file.
    Check {
        file: PathBuf,
        /// Also run the brute-force oracle and report agreement.
        #[arg(long)]
        oracle: bool,
        /// Also print the constructed unit with f·g and f·g·f.
        #[arg(long)]
        witness: bool,
    },
    /// Construct and verify a unit g with fgf = f.
    Witness { file: PathBuf },
    /// Search the unit group exhaustively for g with fgf = f.
    Oracle { file: PathBuf },
    /// Cross-validate criterion, oracle and witness over whole universes.
    Scan {
        #[arg(long, value_enum)]
        kind: ScanKind,
        /// Largest n to enumerate [default: 4 for transform, 2 for linear].
        #[arg(long)]
        max_n: Option<usize>,
        /// Field size for linear scans.
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Semigroup-level predicates for a subset or subspace.
    Semigroup(SemigroupArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Transform,
    Linear,
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    /// Problem file; `f` may be omitted.
    #[arg(conflicts_with_all = ["n", "y", "p", "w"])]
    pub file: Option<PathBuf>,
    #[arg(long, required_unless_present = "file")]
    pub n: Option<usize>,
    /// Points of Y, comma-separated.
    #[arg(long, conflicts_with_all = ["p", "w"], required_unless_present_any = ["file", "p"])]
    pub y: Option<String>,
    /// Field size; selects a linear problem.
    #[arg(long, requires = "w")]
    pub p: Option<u32>,
    /// Spanning rows of W, `;`-separated; empty for {0}.
    #[arg(long, requires = "p", allow_hyphen_values = true)]
    pub w: Option<String>,
}

/// What to print and the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn report(stdout: String, ok: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if ok { 0 } else { 6 },
        }
    }
}

/// Parses `args`, runs the command and returns what to print.
pub fn run<I, T>(args: I) -> std::result::Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    })
}

fn bounds(cli: &Cli) -> Bounds {
    cli.bound.map(Bounds::uniform).unwrap_or_default()
}

fn load(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    problem::parse(&text)
}

fn emit<T: serde::Serialize>(
    cli: &Cli,
    report: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<String> {
    if cli.json {
        Ok(report::to_json(report)? + "\n")
    } else {
        Ok(text(report))
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let bounds = bounds(cli);
    match &cli.command {
        Command::Check {
            file,
            oracle,
            witness,
        } => {
            let problem = load(file)?;
            let report = check_report(problem.element()?, &bounds, *oracle, *witness)?;
            let disagree = report.oracle.as_ref().is_some_and(|o| !o.agrees);
            let output = emit(cli, &report, CheckReport::render)?;
            Ok(Outcome::report(output, !disagree))
        }
        Command::Witness { file } => {
            let problem = load(file)?;
            let report = check_report(problem.element()?, &bounds, false, true)?;
            if !report.decision.unit_regular {
                return Err(Error::NotUnitRegular.into());
            }
            let verified = report.witness.as_ref().is_some_and(|w| w.verified);
            let output = emit(cli, &report, CheckReport::render)?;
            Ok(Outcome::report(output, verified))
        }
        Command::Oracle { file } => {
            let problem = load(file)?;
            let report = check_report(problem.element()?, &bounds, true, false)?;
            let agrees = report.oracle.as_ref().is_some_and(|o| o.agrees);
            let output = emit(cli, &report, CheckReport::render)?;
            Ok(Outcome::report(output, agrees))
        }
        Command::Scan { kind, max_n, p } => {
            let summary = match kind {
                ScanKind::Transform => scan::scan_transforms(max_n.unwrap_or(4), &bounds)?,
                ScanKind::Linear => {
                    let field =
                        PrimeField::new(*p).map_err(|e| CliError::parse_global(e.to_string()))?;
                    scan::scan_linear(field, max_n.unwrap_or(2), &bounds)?
                }
            };
            let report = ScanReport::from(&summary);
            let output = emit(cli, &report, ScanReport::render)?;
            Ok(Outcome::report(output, report.clean))
        }
        Command::Semigroup(args) => {
            let universe = match &args.file {
                Some(path) => load(path)?.universe,
                None => universe_from_args(args)?,
            };
            let report = semigroup_report(&universe, &bounds)?;
            let agrees = report.exhaustive.as_ref().is_none_or(|e| e.agrees);
            let output = emit(cli, &report, SemigroupReport::render)?;
            Ok(Outcome::report(output, agrees))
        }
    }
}

fn universe_from_args(args: &SemigroupArgs) -> Result<Universe> {
    let n = args.n.expect("required by clap");
    if n == 0 {
        return Err(CliError::parse_global("--n must be positive"));
    }
    let text = match (&args.p, &args.w, &args.y) {
        (Some(p), Some(w), _) => format!("kind = linear\np = {p}\nn = {n}\nW = {w}\n"),
        (_, _, Some(y)) => format!("kind = transform\nn = {n}\nY = {y}\n"),
        _ => return Err(CliError::parse_global("give --y, or --p with --w")),
    };
    problem::parse(&text).map(|p| p.universe)
}

fn check_report(
    element: &Element,
    bounds: &Bounds,
    oracle: bool,
    witness: bool,
) -> Result<CheckReport> {
    match element {
        Element::Transform(pair) => transform_report(pair, bounds, oracle, witness),
        Element::Linear(pair) => linear_report(pair, bounds, oracle, witness),
    }
}

fn transform_products(pair: &InvariantSetPair, g: &Transformation) -> Result<WitnessReport> {
    let f = pair.map();
    let fg = f.compose(g)?;
    let fgf = fg.compose(f)?;
    Ok(WitnessReport {
        unit: g.into(),
        fg: (&fg).into(),
        fgf: (&fgf).into(),
        verified: txy::verify_witness(pair, g),
    })
}

fn transform_report(
    pair: &InvariantSetPair,
    bounds: &Bounds,
    oracle: bool,
    witness: bool,
) -> Result<CheckReport> {
    let d = txy::check(pair);
    let witness = match (&d.witness, witness) {
        (Some(g), true) => Some(transform_products(pair, g)?),
        _ => None,
    };
    let oracle = if oracle {
        let found = txy::oracle(pair, bounds.transform_degree)?;
        Some(OracleReport {
            unit_regular: found.is_some(),
            agrees: found.is_some() == d.unit_regular,
            unit: found.as_ref().map(MapValue::from),
        })
    } else {
        None
    };
    Ok(CheckReport {
        kind: "transform",
        p: None,
        n: pair.degree(),
        subset: SubsetValue::Points(pair.subset().to_vec()),
        map: pair.map().into(),
        decision: Decision {
            unit_regular: d.unit_regular,
            cond_i: d.cond_i,
            cond_ii: d.cond_ii,
            cond_iii: d.cond_iii,
            details: Details::Transform(TransformSets {
                transversal: d.transversal,
                restricted_transversal: d.restricted_transversal,
                collapse_set: d.collapse_set,
                restricted_collapse_set: d.restricted_collapse_set,
                defect_set: d.defect_set,
                restricted_defect_set: d.restricted_defect_set,
            }),
        },
        balance: balance::balance_transform(pair.map()).into(),
        materialized_balance: None,
        witness,
        oracle,
    })
}

fn linear_products(pair: &InvariantSubspacePair, g: &FFMatrix) -> Result<WitnessReport> {
    let f = pair.map();
    let fg = f.mul(g)?;
    let fgf = fg.mul(f)?;
    Ok(WitnessReport {
        unit: g.into(),
        fg: (&fg).into(),
        fgf: (&fgf).into(),
        verified: lvw::verify_witness(pair, g),
    })
}

fn linear_report(
    pair: &InvariantSubspacePair,
    bounds: &Bounds,
    oracle: bool,
    witness: bool,
) -> Result<CheckReport> {
    let d = lvw::check(pair);
    let witness = match (&d.witness, witness) {
        (Some(g), true) => Some(linear_products(pair, g)?),
        _ => None,
    };
    let oracle = if oracle {
        let found = lvw::oracle(pair, bounds.linear_matrices)?;
        Some(OracleReport {
            unit_regular: found.is_some(),
            agrees: found.is_some() == d.unit_regular,
            unit: found.as_ref().map(MapValue::from),
        })
    } else {
        None
    };
    let materialized = match balance::materialized_balance(pair.map(), bounds.materialize_points) {
        Ok(b) => Some(b.into()),
        Err(Error::BoundExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let diag = d.diagnostics;
    Ok(CheckReport {
        kind: "linear",
        p: Some(pair.field().modulus()),
        n: pair.dim(),
        subset: pair.subspace().into(),
        map: pair.map().into(),
        decision: Decision {
            unit_regular: d.unit_regular,
            cond_i: d.cond_i,
            cond_ii: d.cond_ii,
            cond_iii: d.cond_iii,
            details: Details::Linear(LinearDims {
                dim_w: diag.dim_w,
                rank: diag.rank,
                restricted_rank: diag.restricted_rank,
                dim_w_cap_range: diag.dim_w_cap_range,
                restricted_nullity: diag.restricted_nullity,
                restricted_corank: diag.restricted_corank,
                codim_w_plus_transversal: diag.codim_w_plus_transversal,
                codim_w_plus_range: diag.codim_w_plus_range,
                transversal: d.transversal.basis_rows(),
                restricted_transversal: d.restricted_transversal.basis_rows(),
            }),
        },
        balance: balance::balance_linear(pair.map())?.into(),
        materialized_balance: materialized,
        witness,
        oracle,
    })
}

fn semigroup_report(universe: &Universe, bounds: &Bounds) -> Result<SemigroupReport> {
    let (kind, p, n, subset, unit_regular, unit_regular_reason, semi_balanced_reason) =
        match universe {
            Universe::Transform { n, y } => {
                let ureg = txy::semigroup_unit_regular(*n, y)?;
                let reason = if y.len() == 1 {
                    "|Y| = 1"
                } else if y.len() == *n {
                    "Y = X"
                } else {
                    "|Y| > 1 and Y ≠ X"
                };
                (
                    "transform",
                    None,
                    *n,
                    SubsetValue::Points(y.clone()),
                    ureg,
                    reason,
                    "X is finite",
                )
            }
            Universe::Linear { w } => {
                let reason = if w.is_zero() {
                    "W = {0}"
                } else if w.is_full() {
                    "W = V"
                } else {
                    "W is nontrivial"
                };
                (
                    "linear",
                    Some(w.field().modulus()),
                    w.ambient(),
                    SubsetValue::from(w),
                    lvw::semigroup_unit_regular(w),
                    reason,
                    "V is finite-dimensional",
                )
            }
        };
    // every element of a finite universe is semi-balanced
    let semi_balanced = true;
    let exhaustive = match census(universe, bounds) {
        Ok(c) => {
            let all_unit_regular = c.unit_regular == c.total;
            let all_semi_balanced = c.semi_balanced == c.total;
            Some(Exhaustive {
                total: c.total,
                unit_regular: c.unit_regular,
                semi_balanced: c.semi_balanced,
                all_unit_regular,
                all_semi_balanced,
                agrees: all_unit_regular == unit_regular
                    && all_semi_balanced == semi_balanced
                    && c.ureg_subset_balanced(),
            })
        }
        Err(Error::BoundExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(SemigroupReport {
        kind,
        p,
        n,
        subset,
        unit_regular,
        unit_regular_reason: unit_regular_reason.to_string(),
        semi_balanced,
        semi_balanced_reason: semi_balanced_reason.to_string(),
        exhaustive,
    })
}
