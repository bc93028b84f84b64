//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/output error, 3 validation
//! failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{ArgAction, Args, Parser, Subcommand};

use crate::candidates::SymbolMatrix;
use crate::dataset::{load_dataset, SubsetOverrides};
use crate::error::{Error, Result};
use crate::memory::MotifReport;
use crate::oracle::{brute_force_motifs_with_limit, validate_report, BRUTE_FORCE_LIMIT};
use crate::preprocess::{Alphabet, Params, TimeSeries};
use crate::tracker::run_observed;

/// Environment variable naming the dataset cache directory (default `data`).
pub const CACHE_ENV_VAR: &str = "MOTIF_TRACKER_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "motif-tracker",
    version,
    about = "Variable-length repeating-pattern discovery in univariate time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discover motifs and write a JSON report
    Discover(DiscoverArgs),
    /// Exhaustive brute-force pair scan, written as CSV
    Oracle(OracleArgs),
    /// Run discovery, then check the report against ground truth
    Validate(CommonArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Input file, or a dataset preset name (steamgen, powerdemand)
    #[arg(short = 'i', long)]
    pub input: String,

    /// Output file (stdout when omitted)
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,

    /// Data points per symbol
    #[arg(short = 's', long)]
    pub symbol_length: usize,

    /// Alphabet size
    #[arg(short = 'a', long, default_value_t = 6)]
    pub alphabet: usize,

    /// Match threshold per data point
    #[arg(short = 'r', long)]
    pub threshold: f64,

    /// Cap on the number of generations
    #[arg(long)]
    pub max_generations: Option<usize>,

    /// Skip z-normalization; distances stay in original units
    #[arg(long)]
    pub no_normalize: bool,

    /// Keep every n-th input value
    #[arg(long)]
    pub stride: Option<usize>,

    /// Skip this many input values first
    #[arg(long)]
    pub offset: Option<usize>,

    /// Keep at most this many input values
    #[arg(long)]
    pub length: Option<usize>,

    /// Increase verbosity (-v per-generation trace, -vv matrix dumps)
    #[arg(short = 'v', action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Args, Debug)]
pub struct DiscoverArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Also write one CSV per motif with the raw-value segments of its
    /// occurrences (requires --output)
    #[arg(long)]
    pub emit_plot_data: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Largest span to scan, in data points (defaults to the whole series)
    #[arg(long)]
    pub max_span: Option<usize>,

    /// Override the series-length guard for the quadratic scan
    #[arg(long)]
    pub guard: Option<usize>,
}

/// Parse arguments and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidAlphabet { .. } | Error::InvalidParams(_) => 1,
        _ => 2,
    }
}

fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

fn build_params(common: &CommonArgs) -> Result<Params> {
    Ok(Params::new(common.symbol_length, common.alphabet, common.threshold)?
        .with_max_generations(common.max_generations))
}

fn load_input(common: &CommonArgs) -> Result<TimeSeries> {
    let overrides = SubsetOverrides {
        offset: common.offset,
        stride: common.stride,
        length: common.length,
    };
    load_dataset(
        &common.input,
        overrides,
        &cache_dir(),
        !common.no_normalize,
    )
}

fn write_or_print(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn discover(series: &TimeSeries, params: &Params, verbose: u8) -> Result<MotifReport> {
    if verbose >= 2 {
        let alphabet = Alphabet::new(params.a)?;
        let matrix = SymbolMatrix::build(series, params, &alphabet)?;
        let stderr = std::io::stderr();
        let mut lock = stderr.lock();
        let _ = writeln!(lock, "# symbol matrix S ({} windows)", matrix.len());
        let _ = matrix.dump(&mut lock);
    }
    run_observed(series, params, |ev| {
        if verbose >= 1 {
            eprintln!(
                "{{\"generation\":{},\"candidates\":{},\"survivors\":{},\"motifs_stored\":{}}}",
                ev.generation,
                ev.candidates.words.len(),
                ev.survivors.len(),
                ev.motifs_stored
            );
        }
        if verbose >= 2 {
            let stderr = std::io::stderr();
            let mut lock = stderr.lock();
            let _ = writeln!(lock, "# candidate matrix M, generation {}", ev.generation);
            let _ = ev.candidates.dump(&mut lock);
        }
    })
}

fn run_command(command: Command) -> Result<i32> {
    match command {
        Command::Discover(args) => {
            if args.emit_plot_data && args.common.output.is_none() {
                return Err(Error::InvalidParams(
                    "--emit-plot-data requires -o/--output".into(),
                ));
            }
            let params = build_params(&args.common)?;
            let series = load_input(&args.common)?;
            let started = Instant::now();
            let report = discover(&series, &params, args.common.verbose)?;
            let elapsed = started.elapsed();
            write_or_print(args.common.output.as_deref(), &report.to_json())?;
            if args.emit_plot_data {
                let output = args.common.output.as_deref().expect("checked above");
                emit_plot_data(output, &report, &series)?;
            }
            eprintln!(
                "discover: {} values in, {} motifs out, {} ms",
                series.raw.len(),
                report.motifs.len(),
                elapsed.as_millis()
            );
            Ok(0)
        }
        Command::Oracle(args) => {
            let params = build_params(&args.common)?;
            let series = load_input(&args.common)?;
            let max_span = args.max_span.unwrap_or(series.norm.len());
            let guard = args.guard.unwrap_or(BRUTE_FORCE_LIMIT);
            let started = Instant::now();
            let set = brute_force_motifs_with_limit(&series, &params, max_span, guard)?;
            let elapsed = started.elapsed();
            write_or_print(args.common.output.as_deref(), &set.to_csv())?;
            eprintln!(
                "oracle: {} values in, {} pairs out, {} ms",
                series.raw.len(),
                set.entries.len(),
                elapsed.as_millis()
            );
            Ok(0)
        }
        Command::Validate(common) => {
            let params = build_params(&common)?;
            let series = load_input(&common)?;
            let started = Instant::now();
            let report = discover(&series, &params, common.verbose)?;
            let verdict = validate_report(&report, &series, &params)?;
            let elapsed = started.elapsed();
            if let Some(path) = common.output.as_deref() {
                write_or_print(Some(path), &report.to_json())?;
            }
            println!("{verdict}");
            eprintln!(
                "validate: {} values in, {} motifs, {} ms",
                series.raw.len(),
                report.motifs.len(),
                elapsed.as_millis()
            );
            Ok(if verdict.passed() { 0 } else { 3 })
        }
    }
}

/// One CSV per motif: a column per occurrence holding its raw-value segment.
fn emit_plot_data(output: &Path, report: &MotifReport, series: &TimeSeries) -> Result<()> {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".to_string());
    let dir = output.parent().unwrap_or_else(|| Path::new("."));
    for (idx, motif) in report.motifs.iter().enumerate() {
        let mut csv = String::from("offset");
        for start in &motif.starts_raw_coords {
            csv.push_str(&format!(",start_{start}"));
        }
        csv.push('\n');
        for off in 0..motif.span_points {
            csv.push_str(&off.to_string());
            for &start in &motif.starts_raw_coords {
                csv.push_str(&format!(",{}", series.raw[start + off]));
            }
            csv.push('\n');
        }
        let path = dir.join(format!("{stem}_motif{idx:03}.csv"));
        fs::write(&path, csv).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    #[test]
    fn parses_discovery_run() {
        let cli = parse(&[
            "motif-tracker",
            "discover",
            "-i",
            "steamgen.csv",
            "-s",
            "10",
            "-a",
            "6",
            "-r",
            "0.5",
        ]);
        let Command::Discover(args) = cli.command else {
            panic!("expected discover");
        };
        assert_eq!(args.common.input, "steamgen.csv");
        assert_eq!(args.common.symbol_length, 10);
        assert_eq!(args.common.alphabet, 6);
        assert_eq!(args.common.threshold, 0.5);
        assert!(!args.common.no_normalize);
        assert!(!args.emit_plot_data);
    }

    #[test]
    fn parses_long_span_run() {
        let cli = parse(&[
            "motif-tracker",
            "discover",
            "-i",
            "power.csv",
            "-s",
            "500",
            "-a",
            "6",
            "-r",
            "4",
        ]);
        let Command::Discover(args) = cli.command else {
            panic!("expected discover");
        };
        assert_eq!(args.common.symbol_length, 500);
        assert_eq!(args.common.threshold, 4.0);
    }

    #[test]
    fn alphabet_defaults_to_six() {
        let cli = parse(&[
            "motif-tracker",
            "validate",
            "-i",
            "x.txt",
            "-s",
            "5",
            "-r",
            "1",
        ]);
        let Command::Validate(common) = cli.command else {
            panic!("expected validate");
        };
        assert_eq!(common.alphabet, 6);
    }

    #[test]
    fn invalid_alphabet_is_usage_error() {
        let cli = parse(&[
            "motif-tracker",
            "discover",
            "-i",
            "x.txt",
            "-s",
            "5",
            "-a",
            "1",
            "-r",
            "1",
        ]);
        let Command::Discover(args) = cli.command else {
            panic!("expected discover");
        };
        let err = build_params(&args.common).unwrap_err();
        assert_eq!(exit_code_for(&err), 1);
    }

    #[test]
    fn missing_subcommand_fails_parse() {
        assert!(Cli::try_parse_from(["motif-tracker"]).is_err());
    }

    #[test]
    fn io_errors_map_to_exit_two() {
        let err = Error::Io {
            path: "nope".into(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "nope"),
        };
        assert_eq!(exit_code_for(&err), 2);
        assert_eq!(exit_code_for(&Error::TooShort { len: 0 }), 2);
    }
}
