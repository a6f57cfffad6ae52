//! Command-line frontend: witness certificates, parameter sweeps, the
//! closed-form bound catalog, and boundary sup norms.
//!
//! Exit codes follow a fixed contract: 0 on success, 2 for rejected input,
//! 3 when an internal invariant fails. Identical invocations emit
//! byte-identical output.

mod ranges;
mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kspectral::{
    bound_table, evaluate_certificate, sup_norm_sampled, sweep, AnnulusParams, BoundValue,
    CertificateParams, CertificateResult, Error as CoreError, LaurentPolynomial, SweepCell,
    DEFAULT_GAMMA_RTOL,
};

use report::{Field, Report};

const CERTIFY_COLUMNS: &[&str] = &[
    "R",
    "n",
    "m",
    "h_norm",
    "image_norm",
    "ratio",
    "closed_form",
    "paper_chain_value",
    "window_lo",
    "window_hi",
];

const SWEEP_COLUMNS: &[&str] = &[
    "R",
    "n",
    "m",
    "h_norm",
    "image_norm",
    "ratio",
    "closed_form",
    "paper_chain_value",
    "window_lo",
    "window_hi",
    "error",
];

const BOUNDS_COLUMNS: &[&str] = &[
    "R",
    "name",
    "kind",
    "value",
    "truncation_terms",
    "flags",
    "ordering_ok",
];

const SUPNORM_COLUMNS: &[&str] = &[
    "R",
    "samples_per_circle",
    "value",
    "argmax_radius",
    "argmax_angle",
];

#[derive(Parser)]
#[command(
    name = "kspectral",
    version,
    about = "Witness certificates and closed-form bounds for the annulus spectral constant K(R)"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one witness certificate at (R, n, m)
    Certify {
        /// Outer radius R of the annulus; must exceed 1
        #[arg(long = "R", value_name = "REAL")]
        radius: f64,
        /// Shift order; at least 2
        #[arg(long)]
        n: u32,
        /// Witness parameter; at least 3
        #[arg(long)]
        m: u32,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Evaluate certificates over an (R, n, m) grid
    Sweep {
        /// Radii: single value, comma list, or inclusive range lo:hi:step
        #[arg(long = "R", value_name = "SPEC")]
        radii: String,
        /// Orders: single value, comma list, or inclusive range lo..hi
        #[arg(long = "n", value_name = "SPEC")]
        orders: String,
        /// Witness parameters: single value, comma list, or inclusive range lo..hi
        #[arg(long = "m", value_name = "SPEC")]
        witness: String,
        /// Write the report to this file instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Print the closed-form bound catalog at one radius
    Bounds {
        /// Outer radius R of the annulus; must exceed 1
        #[arg(long = "R", value_name = "REAL")]
        radius: f64,
        /// Relative truncation tolerance for the γ infinite product
        #[arg(long = "gamma-tol", value_name = "REAL", default_value_t = DEFAULT_GAMMA_RTOL)]
        gamma_tol: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sample |p| on both boundary circles and report the maximum
    Supnorm {
        /// Laurent terms as degree:coefficient pairs, e.g. -2:0.25,2:0.25
        #[arg(long, value_name = "TERMS", allow_hyphen_values = true)]
        coeffs: String,
        /// Outer radius R of the annulus; must exceed 1
        #[arg(long = "R", value_name = "REAL")]
        radius: f64,
        /// Samples per circle; even and at least 16
        #[arg(long, value_name = "COUNT", default_value_t = 4096)]
        samples: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

/// CLI failure carrying the exit-code contract.
#[derive(Debug)]
enum CliError {
    /// Rejected input; exit 2.
    Usage(String),
    /// A library invariant failed; exit 3 so pipelines notice a bug.
    Internal(CoreError),
    /// Filesystem failure on --out; exit 2.
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Internal(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvariantViolation { .. }
            | CoreError::ConsistencyViolation { .. }
            | CoreError::EmptyWindow { .. }
            | CoreError::WindowOverflow { .. }
            | CoreError::WindowTooShort { .. }
            | CoreError::WindowTooNarrow { .. }
            | CoreError::WindowMismatch { .. } => CliError::Internal(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Certify {
            radius,
            n,
            m,
            format,
        } => cmd_certify(radius, n, m, format),
        Cmd::Sweep {
            radii,
            orders,
            witness,
            out,
            format,
        } => cmd_sweep(&radii, &orders, &witness, out.as_deref(), format),
        Cmd::Bounds {
            radius,
            gamma_tol,
            format,
        } => cmd_bounds(radius, gamma_tol, format),
        Cmd::Supnorm {
            coeffs,
            radius,
            samples,
            format,
        } => cmd_supnorm(&coeffs, radius, samples, format),
    }
}

fn cmd_certify(radius: f64, n: u32, m: u32, format: Format) -> Result<(), CliError> {
    let annulus = AnnulusParams::new(radius)?;
    let params = CertificateParams::new(n, m, annulus)?;
    let result = evaluate_certificate(&params)?;
    let mut report = Report::new(CERTIFY_COLUMNS);
    report.push(certificate_fields(radius, &result));
    print!("{}", render_single(&report, format));
    Ok(())
}

fn cmd_sweep(
    radii: &str,
    orders: &str,
    witness: &str,
    out: Option<&Path>,
    format: SweepFormat,
) -> Result<(), CliError> {
    let rs = ranges::parse_reals(radii).map_err(CliError::Usage)?;
    let ns = ranges::parse_ints(orders).map_err(CliError::Usage)?;
    let ms = ranges::parse_ints(witness).map_err(CliError::Usage)?;
    let cells = sweep(&ns, &ms, &rs);

    let mut report = Report::new(SWEEP_COLUMNS);
    for cell in &cells {
        report.push(sweep_row(cell));
    }
    let rendered = match format {
        SweepFormat::Csv => report.csv(),
        SweepFormat::Json => report.json_array(),
    };
    match out {
        Some(path) => fs::write(path, rendered).map_err(CliError::Io)?,
        None => print!("{rendered}"),
    }

    if cells.iter().all(|c| c.outcome.is_err()) {
        let first = cells
            .iter()
            .find_map(|c| c.outcome.as_ref().err())
            .expect("sweep over nonempty lists has cells");
        return Err(CliError::Usage(format!(
            "all {} sweep cells failed; first error: {first}",
            cells.len()
        )));
    }
    Ok(())
}

fn cmd_bounds(radius: f64, gamma_tol: f64, format: Format) -> Result<(), CliError> {
    let annulus = AnnulusParams::new(radius)?;
    let table = bound_table(&annulus, gamma_tol)?;
    let mut report = Report::new(BOUNDS_COLUMNS);
    for bound in &table {
        report.push(bound_fields(radius, bound));
    }
    let rendered = match format {
        Format::Table => report.aligned(),
        Format::Csv => report.csv(),
        Format::Json => report.json_array(),
    };
    print!("{rendered}");
    Ok(())
}

fn cmd_supnorm(coeffs: &str, radius: f64, samples: usize, format: Format) -> Result<(), CliError> {
    let terms = ranges::parse_coeffs(coeffs).map_err(CliError::Usage)?;
    let poly = LaurentPolynomial::from_terms(terms);
    let annulus = AnnulusParams::new(radius)?;
    let result = sup_norm_sampled(&poly, &annulus, samples)?;
    let mut report = Report::new(SUPNORM_COLUMNS);
    report.push(vec![
        Field::Real(radius),
        Field::UInt(result.samples_per_circle as u64),
        Field::Real(result.value),
        Field::Real(result.argmax_radius),
        Field::Real(result.argmax_angle),
    ]);
    print!("{}", render_single(&report, format));
    Ok(())
}

fn render_single(report: &Report, format: Format) -> String {
    match format {
        Format::Table => report.vertical(),
        Format::Csv => report.csv(),
        Format::Json => report.json_single(),
    }
}

fn certificate_fields(radius: f64, result: &CertificateResult) -> Vec<Field> {
    vec![
        Field::Real(radius),
        Field::UInt(result.params.n().into()),
        Field::UInt(result.params.m().into()),
        Field::Real(result.h_norm),
        Field::Real(result.image_norm),
        Field::Real(result.ratio),
        Field::Real(result.closed_form),
        Field::Real(result.paper_chain_value),
        Field::Int(result.window.lo()),
        Field::Int(result.window.hi()),
    ]
}

fn sweep_row(cell: &SweepCell) -> Vec<Field> {
    match &cell.outcome {
        Ok(result) => {
            let mut row = certificate_fields(cell.radius, result);
            row.push(Field::Text(String::new()));
            row
        }
        Err(e) => {
            let mut row = vec![
                Field::Real(cell.radius),
                Field::UInt(cell.n.into()),
                Field::UInt(cell.m.into()),
            ];
            row.extend(std::iter::repeat_with(|| Field::Missing).take(7));
            row.push(Field::Text(e.to_string()));
            row
        }
    }
}

fn bound_fields(radius: f64, bound: &BoundValue) -> Vec<Field> {
    let flags = bound
        .flags
        .iter()
        .map(|f| f.as_str())
        .collect::<Vec<_>>()
        .join(";");
    vec![
        Field::Real(radius),
        Field::Text(bound.name.as_str().to_string()),
        Field::Text(bound.kind.as_str().to_string()),
        Field::Real(bound.value),
        match bound.truncation_terms {
            Some(terms) => Field::UInt(terms as u64),
            None => Field::Missing,
        },
        if flags.is_empty() {
            Field::Missing
        } else {
            Field::Text(flags)
        },
        // bound_table errors out on an ordering violation, so an emitted
        // table always carries an affirmative verdict.
        Field::Bool(true),
    ]
}
