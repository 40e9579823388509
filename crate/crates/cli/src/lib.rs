//! Front end for `qrl`: argument parsing, sweep configs, CSV and SVG output.

pub mod error;
pub mod output;
pub mod spec;
pub mod svg;
pub mod sweep_config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qrl_core::{run_ensemble_with_threads, EnsembleStatsF64};

pub use error::CliError;
pub use output::{emit_csv, format_sig, read_csv_column, write_csv};
pub use spec::{Noise, RunSpec};
pub use svg::{emit_svg, render_svg, LabeledSeries};
pub use sweep_config::{parse_sweep, to_sweep_text};

use spec::{parse_positive_count, parse_punish, parse_reward, parse_tdec, parse_ttau};

pub const THREADS_ENV: &str = "QRL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "qrl",
    version,
    about = "Noisy single-qubit reinforcement learning ensembles"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Debug, Subcommand)]
enum Commands {
    /// Run one ensemble and write its per-iteration means as CSV.
    Run(RunArgs),
    /// Run every block of a sweep config file.
    Sweep(SweepArgs),
    /// Plot one column from one or more CSV files as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Noise kind: none, pdn or adn.
    #[arg(long, default_value = "none")]
    noise: Noise,
    /// Dimensionless evolution time ωτ (`2pi` accepted).
    #[arg(long, default_value = "1", value_parser = parse_ttau, allow_hyphen_values = true)]
    ttau: f64,
    /// Dimensionless decoherence time ωT_D, or `inf`.
    #[arg(long, default_value = "inf", value_parser = parse_tdec, allow_hyphen_values = true)]
    tdec: f64,
    /// Reward rate r in (0, 1).
    #[arg(long, default_value = "0.9", value_parser = parse_reward, allow_hyphen_values = true)]
    reward: f64,
    /// Punishment rate p > 1.
    #[arg(long, default_value = "1.5", value_parser = parse_punish, allow_hyphen_values = true)]
    punish: f64,
    /// Iterations per realization.
    #[arg(long, default_value = "500", value_parser = parse_positive_count)]
    iters: usize,
    /// Number of realizations.
    #[arg(long, default_value = "1000", value_parser = parse_positive_count)]
    realizations: usize,
    /// Master seed.
    #[arg(long, default_value_t = spec::DEFAULT_SEED)]
    seed: u64,
    /// Also record fidelities of D_k|1⟩.
    #[arg(long)]
    dual_basis: bool,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot of the fidelity curves.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Sweep file: blank-line separated blocks of `key = value` lines
    #[arg(long)]
    config: PathBuf,
    /// Directory that relative `out`/`svg` paths are resolved against.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// CSV files written by `run` or `sweep`
    #[arg(long, num_args = 1.., required = true)]
    csv: Vec<PathBuf>,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
    /// CSV column to plot.
    #[arg(long, default_value = "F_max")]
    column: String,
    /// Legend labels, one per CSV (defaults to file stems).
    #[arg(long, num_args = 1..)]
    label: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub config: PathBuf,
    pub out_dir: PathBuf,
    pub runs: Vec<RunSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub csv: Vec<PathBuf>,
    pub out: PathBuf,
    pub column: String,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Run(RunSpec),
    Sweep(SweepSpec),
    Plot(PlotSpec),
}

/// Outcome of argument parsing that is not a command.
#[derive(Debug)]
pub enum ParseExit {
    /// `--help` or `--version` text; print and exit 0.
    Info(String),
    Error(CliError),
}

impl From<CliError> for ParseExit {
    fn from(e: CliError) -> Self {
        ParseExit::Error(e)
    }
}

/// Parses `argv` (including the program name) into a validated command.
pub fn parse_args<I, T>(argv: I) -> Result<Command, ParseExit>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            ParseExit::Info(e.to_string())
        }
        clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ParseExit::Error(
            CliError::Usage("missing subcommand (run, sweep or plot); see `qrl --help`".into()),
        ),
        _ => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            ParseExit::Error(CliError::Usage(
                first.trim_start_matches("error: ").to_string(),
            ))
        }
    })?;
    match cli.command {
        Commands::Run(a) => {
            let spec = RunSpec {
                noise: a.noise,
                ttau: a.ttau,
                tdec: a.tdec,
                reward: a.reward,
                punish: a.punish,
                iters: a.iters,
                realizations: a.realizations,
                seed: a.seed,
                dual_basis: a.dual_basis,
                out: a.out,
                svg: a.svg,
            };
            spec.validate()?;
            Ok(Command::Run(spec))
        }
        Commands::Sweep(a) => {
            let text =
                std::fs::read_to_string(&a.config).map_err(|e| CliError::io(&a.config, e))?;
            let runs = parse_sweep(&text).map_err(|e| match e {
                CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", a.config.display())),
                other => other,
            })?;
            Ok(Command::Sweep(SweepSpec {
                config: a.config,
                out_dir: a.out_dir,
                runs,
            }))
        }
        Commands::Plot(a) => {
            if !a.label.is_empty() && a.label.len() != a.csv.len() {
                return Err(CliError::Usage(format!(
                    "got {} labels for {} CSV files",
                    a.label.len(),
                    a.csv.len()
                ))
                .into());
            }
            Ok(Command::Plot(PlotSpec {
                csv: a.csv,
                out: a.out,
                column: a.column,
                labels: a.label,
            }))
        }
    }
}

/// Worker count from `QRL_THREADS` (unset or 0 = automatic).
pub fn threads_from_env() -> Result<usize, CliError> {
    parse_threads(std::env::var(THREADS_ENV).ok().as_deref())
}

pub fn parse_threads(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
    }
}

fn fidelity_series(stats: &EnsembleStatsF64) -> Vec<LabeledSeries> {
    let mut out = vec![
        LabeledSeries {
            label: "F_max".into(),
            values: stats.f_max.mean.clone(),
        },
        LabeledSeries {
            label: "F_e".into(),
            values: stats.f_e.mean.clone(),
        },
        LabeledSeries {
            label: "F_g".into(),
            values: stats.f_g.mean.clone(),
        },
    ];
    if let Some(d) = &stats.dual {
        out.push(LabeledSeries {
            label: "F_e (|1>)".into(),
            values: d.f_e.mean.clone(),
        });
        out.push(LabeledSeries {
            label: "F_g (|1>)".into(),
            values: d.f_g.mean.clone(),
        });
    }
    out
}

fn resolve(dir: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        dir.join(p)
    }
}

/// Runs one spec and writes its outputs; CSV goes to `stdout` when the spec
/// has no `out` path.
pub fn execute_run(
    spec: &RunSpec,
    threads: usize,
    stdout: &mut dyn Write,
) -> Result<EnsembleStatsF64, CliError> {
    let cfg = spec.to_config()?;
    let stats = run_ensemble_with_threads(&cfg, threads)?;
    match &spec.out {
        Some(path) => emit_csv(&stats, path)?,
        None => write_csv(&stats, &mut *stdout).map_err(|e| CliError::Data {
            path: PathBuf::from("<stdout>"),
            message: e.to_string(),
        })?,
    }
    if let Some(svg) = &spec.svg {
        emit_svg(&fidelity_series(&stats), "mean fidelity", svg)?;
    }
    Ok(stats)
}

/// Runs every block; failures are reported on `stderr` and the first one is
/// returned after the remaining blocks have been attempted.
pub fn execute_sweep(
    sweep: &SweepSpec,
    threads: usize,
    stderr: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(&sweep.out_dir).map_err(|e| CliError::io(&sweep.out_dir, e))?;
    let mut written = Vec::new();
    let mut first_err = None;
    for (i, run) in sweep.runs.iter().enumerate() {
        let mut spec = run.clone();
        let out = spec
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("run{:02}.csv", i + 1)));
        spec.out = Some(resolve(&sweep.out_dir, &out));
        spec.svg = spec.svg.map(|p| resolve(&sweep.out_dir, &p));
        match execute_run(&spec, threads, &mut std::io::sink()) {
            Ok(_) => written.push(spec.out.clone().expect("set above")),
            Err(e) => {
                let _ = writeln!(stderr, "qrl: block {} ({}): {e}", i + 1, run.label());
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(written),
    }
}

pub fn execute_plot(plot: &PlotSpec) -> Result<(), CliError> {
    let series = plot
        .csv
        .iter()
        .enumerate()
        .map(|(i, path)| {
            let label = plot.labels.get(i).cloned().unwrap_or_else(|| {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string())
            });
            Ok(LabeledSeries {
                label,
                values: read_csv_column(path, &plot.column)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit_svg(&series, &plot.column, &plot.out)
}

pub fn execute(cmd: &Command, threads: usize) -> Result<(), CliError> {
    match cmd {
        Command::Run(spec) => execute_run(spec, threads, &mut std::io::stdout().lock()).map(|_| ()),
        Command::Sweep(sweep) => {
            execute_sweep(sweep, threads, &mut std::io::stderr().lock()).map(|_| ())
        }
        Command::Plot(plot) => execute_plot(plot),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn parse(args: &[&str]) -> Result<Command, ParseExit> {
        parse_args(std::iter::once("qrl").chain(args.iter().copied()))
    }

    fn usage_error(args: &[&str]) -> String {
        match parse(args) {
            Err(ParseExit::Error(e)) => {
                assert_eq!(e.exit_code(), 2);
                e.to_string()
            }
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn run_flags_map_to_spec() {
        let Command::Run(spec) = parse(&[
            "run",
            "--noise",
            "adn",
            "--ttau",
            "6.5",
            "--tdec",
            "1",
            "--seed",
            "42",
            "--out",
            "fig1_br.csv",
        ])
        .unwrap() else {
            panic!("expected run");
        };
        assert_eq!(spec.noise, Noise::Adn);
        assert_eq!(spec.ttau, 6.5);
        assert_eq!(spec.tdec, 1.0);
        assert_eq!(spec.seed, 42);
        assert_eq!(spec.out, Some(PathBuf::from("fig1_br.csv")));
        assert_eq!(spec.channel_kind(), qrl_core::NoiseKind::AmplitudeDamping);
    }

    #[test]
    fn defaults_and_infinite_tdec() {
        let Command::Run(spec) = parse(&["run", "--tdec", "inf"]).unwrap() else {
            panic!("expected run");
        };
        assert_eq!(spec, RunSpec::default());
        assert_eq!(spec.channel_kind(), qrl_core::NoiseKind::Noiseless);
        let Command::Run(spec) =
            parse(&["run", "--noise", "pdn", "--ttau", "2pi", "--tdec", "inf"]).unwrap()
        else {
            panic!("expected run");
        };
        assert_eq!(spec.ttau, TAU);
        assert_eq!(spec.channel_kind(), qrl_core::NoiseKind::Noiseless);
    }

    #[test]
    fn invalid_flags_are_one_line_usage_errors() {
        let msg = usage_error(&["run", "--reward", "1.5"]);
        assert!(msg.contains("reward"), "{msg}");
        assert!(!msg.contains('\n'));
        usage_error(&["run", "--punish", "0.5"]);
        usage_error(&["run", "--noise", "thermal"]);
        usage_error(&["run", "--bogus"]);
        usage_error(&["run", "--iters", "0"]);
        usage_error(&["run", "--ttau", "-1"]);
        usage_error(&["run", "--tdec", "5"]);
        usage_error(&["frobnicate"]);
        usage_error(&[
            "plot", "--csv", "a.csv", "b.csv", "--out", "x.svg", "--label", "only-one",
        ]);
    }

    #[test]
    fn help_is_not_an_error() {
        assert!(matches!(parse(&["--help"]), Err(ParseExit::Info(_))));
        assert!(matches!(parse(&["run", "--help"]), Err(ParseExit::Info(_))));
    }

    #[test]
    fn threads_value_parsing() {
        assert_eq!(parse_threads(None).unwrap(), 0);
        assert_eq!(parse_threads(Some(" ")).unwrap(), 0);
        assert_eq!(parse_threads(Some("4")).unwrap(), 4);
        assert_eq!(parse_threads(Some("-1")).unwrap_err().exit_code(), 2);
    }
}
