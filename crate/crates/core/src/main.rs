//! `ocl-forge`: command-line surface over the library. All verbs read and
//! write the plain-text formats defined in `textio`; output is deterministic
//! for identical inputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ocl_forge::error::Error;
use ocl_forge::reduce::{double_reduce, reciprocal_then_reduce, reduce, ReducedMatrix};
use ocl_forge::search::{delta_filter, histogram, sweep, Metric};
use ocl_forge::seq::BitSymbolSequence;
use ocl_forge::textio::{
    format_exp, format_reduction_report, histogram_csv, parse_grid,
    parse_poly_matrix, per_pattern_csv, GridFile, ReportStyle,
};
use ocl_forge::trellis::{build_error_trellis, enumerate_paths, min_weight_path, TrellisOptions};
use ocl_forge::{Gf2PolyMatrix, ShiftVector};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "ocl-forge", disable_help_subcommand = true)]
#[command(about = "Constraint-length reduction and error-trellis tools for QC-derived LDPC convolutional codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a QC matrix of circulant shift indices to its exponent matrix
    Unwrap {
        #[arg(long)]
        qc: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclically shift the block rows of a QC matrix
    Shift {
        #[arg(long)]
        qc: PathBuf,
        /// One shift per block row, comma separated (e.g. 1,5,25)
        #[arg(long)]
        shifts: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor row/column delays out and report the reduced matrix
    Reduce {
        #[arg(long, conflicts_with = "exp")]
        poly: Option<PathBuf>,
        #[arg(long)]
        exp: Option<PathBuf>,
        /// Reduce the reciprocal dual form instead (the eta pipeline)
        #[arg(long)]
        reciprocal: bool,
        /// Reduce, take the reciprocal, reduce again (the mu' pipeline)
        #[arg(long, conflicts_with = "reciprocal")]
        double: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every canonical shift pattern of a QC matrix
    Sweep {
        #[arg(long)]
        qc: PathBuf,
        /// Write one CSV row per pattern
        #[arg(long)]
        per_pattern: Option<PathBuf>,
        /// metric=FILE, metric one of mu|eta|delta_mu; repeatable
        #[arg(long = "hist")]
        hist: Vec<String>,
        /// Keep only patterns whose every column spread is at most N
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Run a symbol sequence through the syndrome former
    Syndrome {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Error-trellis construction for a given syndrome
    Trellis {
        #[command(subcommand)]
        action: TrellisAction,
    },
}

#[derive(Args)]
struct TrellisArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long, conflicts_with = "received")]
    syndrome: Option<String>,
    /// Received data; its syndrome is computed first
    #[arg(long)]
    received: Option<String>,
    /// Require the zero former state at the start (the default)
    #[arg(long)]
    start_zero: bool,
    /// Require the zero former state at the end (the default)
    #[arg(long)]
    end_zero: bool,
    #[arg(long, default_value_t = 1 << 20)]
    state_cap: u64,
    #[arg(long, default_value_t = 1 << 16)]
    path_cap: usize,
    /// Trailing symbols pinned to the zero error (imaginary received data)
    #[arg(long, default_value_t = 1)]
    flush: usize,
}

#[derive(Subcommand)]
enum TrellisAction {
    /// List every admissible error path
    Paths(TrellisArgs),
    /// Report the minimum-weight admissible error path
    Decode(TrellisArgs),
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_INPUT,
            Error::TrellisTooLarge { .. } | Error::TooManyPaths { .. } | Error::NoAdmissiblePath => {
                EXIT_INFEASIBLE
            }
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Unwrap { qc, out } => {
            let q = read_qc(&qc)?;
            emit(out.as_deref(), format_exp(&q.unwrap()))
        }
        Command::Shift { qc, shifts, out } => {
            let q = read_qc(&qc)?;
            let parsed: Result<Vec<usize>, _> = shifts.split(',').map(|t| t.trim().parse()).collect();
            let parsed = parsed.map_err(|_| Failure::input(format!("bad --shifts value '{}'", shifts)))?;
            let sv = ShiftVector::new(q.m(), parsed)?;
            emit(out.as_deref(), format_exp(&q.shift_block_rows(&sv)?.unwrap()))
        }
        Command::Reduce { poly, exp, reciprocal, double, out } => {
            let (matrix, style) = match (poly, exp) {
                (Some(path), None) => (parse_poly_matrix(&read(&path)?)?, ReportStyle::Poly),
                (None, Some(path)) => match parse_grid(&read(&path)?)? {
                    GridFile::Exp(e) => (e.to_poly(), ReportStyle::Exp { m: e.m() }),
                    GridFile::Qc(_) => {
                        return Err(Failure::input("--exp expects an 'exp' file; run unwrap first"))
                    }
                },
                _ => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "exactly one of --poly or --exp is required".into(),
                    })
                }
            };
            let mut report = String::new();
            let reduced: ReducedMatrix = if double {
                let d = double_reduce(&matrix)?;
                report.push_str(&format!("mu: {}\nmu_prime: {}\n", d.mu, d.mu_prime));
                d.final_matrix
            } else if reciprocal {
                reciprocal_then_reduce(&matrix)?
            } else {
                reduce(&matrix)?
            };
            let body = format_reduction_report(&reduced, style_for(&reduced.matrix, style))?;
            emit(out.as_deref(), format!("{}{}", body, report))
        }
        Command::Sweep { qc, per_pattern, hist, delta } => {
            let base = read_qc(&qc)?.unwrap();
            let report = sweep(&base)?;
            let selected: Vec<_> = match delta {
                Some(d) => delta_filter(&report, d),
                None => report.records.iter().collect(),
            };
            if let Some(path) = per_pattern {
                write_file(&path, per_pattern_csv(selected.iter().copied(), base.rows()))?;
            }
            for spec in hist {
                let (name, file) = spec
                    .split_once('=')
                    .ok_or_else(|| Failure::input(format!("--hist expects metric=FILE, found '{}'", spec)))?;
                let metric = Metric::parse(name)
                    .ok_or_else(|| Failure::input(format!("unknown metric '{}'", name)))?;
                write_file(Path::new(file), histogram_csv(&histogram(&report, metric)))?;
            }
            let mut summary = format!("patterns: {}\n", report.records.len());
            for metric in [Metric::Mu, Metric::Eta, Metric::DeltaMu] {
                if let Some((lo, hi)) = report.min_max(metric) {
                    summary.push_str(&format!("{}: min {} max {}\n", metric.name(), lo, hi));
                }
            }
            if let Some(d) = delta {
                summary.push_str(&format!(
                    "delta: {} admits {} of {}\n",
                    d,
                    selected.len(),
                    report.records.len()
                ));
            }
            print!("{}", summary);
            Ok(())
        }
        Command::Syndrome { poly, input } => {
            let matrix = parse_poly_matrix(&read(&poly)?)?;
            let e = BitSymbolSequence::parse(&input)?;
            let zeta = matrix.convolve_syndrome(&e)?;
            println!("{}", zeta);
            Ok(())
        }
        Command::Trellis { action } => {
            let (args, decode) = match action {
                TrellisAction::Paths(a) => (a, false),
                TrellisAction::Decode(a) => (a, true),
            };
            let matrix = parse_poly_matrix(&read(&args.poly)?)?;
            let (zeta, received) = match (&args.syndrome, &args.received) {
                (Some(s), None) => (BitSymbolSequence::parse(s)?, None),
                (None, Some(z)) => {
                    let z = BitSymbolSequence::parse(z)?;
                    (matrix.convolve_syndrome(&z)?, Some(z))
                }
                _ => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "exactly one of --syndrome or --received is required".into(),
                    })
                }
            };
            // --start-zero/--end-zero pin what is already the default; the
            // CLI only supports zero boundary states
            let _ = (args.start_zero, args.end_zero);
            let opts = TrellisOptions {
                state_cap: args.state_cap,
                path_cap: args.path_cap,
                forced_zero_tail: args.flush,
                ..Default::default()
            };
            let trellis = build_error_trellis(&matrix, &zeta, &opts)?;
            if decode {
                let (weight, path) = min_weight_path(&trellis)?;
                println!("w={} {}", weight, path);
                if let Some(z) = received {
                    println!("decoded: {}", z.xor(&path)?);
                }
            } else {
                for path in enumerate_paths(&trellis)? {
                    println!("w={} {}", path.weight(), path);
                }
            }
            Ok(())
        }
    }
}

/// Monomial matrices keep the exponent rendering; anything else falls back to
/// the polynomial format.
fn style_for(matrix: &Gf2PolyMatrix, requested: ReportStyle) -> ReportStyle {
    match requested {
        ReportStyle::Exp { m }
            if ocl_forge::ExponentMatrix::from_poly(matrix, m).is_ok() =>
        {
            ReportStyle::Exp { m }
        }
        ReportStyle::Exp { .. } => ReportStyle::Poly,
        other => other,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {}", path.display(), e)))
}

fn read_qc(path: &Path) -> Result<ocl_forge::QcMatrix, Failure> {
    match parse_grid(&read(path)?)? {
        GridFile::Qc(q) => Ok(q),
        GridFile::Exp(_) => Err(Failure::input(format!(
            "{}: expected a 'qc' file, found 'exp'",
            path.display()
        ))),
    }
}

fn write_file(path: &Path, content: String) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure::input(format!("{}: {}", path.display(), e)))
}

fn emit(out: Option<&Path>, content: String) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, content),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}
