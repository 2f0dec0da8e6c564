//! The `domgame` command line: `solve`, `enumerate`, `check` and `report`.
//!
//! Exit codes: 0 success, 1 usage error or malformed input, 2 validation
//! failure, 3 dynamics did not converge, 4 search space over the cap,
//! 5 a `check` assertion failed. A `--delta` flag overrides the delta in
//! the instance (or report) file.

mod check;
mod instance;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dynamics::{run_dynamics, DynamicsError, Schedule, ScheduleKind};
use crate::game_core::{Delta, StrategyProfile};
use crate::oracle::{equilibrium_catalog, OracleError, DEFAULT_CAP};

pub use check::{check_profile, CheckOutcome};
pub use instance::{
    CostModelRecord, InstanceFile, LoadedInstance, NodeRecord, PlayerRecord, FORMAT_VERSION,
};
pub use report::{
    catalog_record, profile_record, render_dot, resolve_profile, summary, trace_lines,
    CatalogRecord, CostRecord, EdgeUsageRecord, PathRecord, PlayerCostRecord, ProfileRecord,
    RunReport, Summary, TraceRecord,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("dynamics did not converge within {0} iterations")]
    NotConverged(usize),
    #[error("search space of {0} profiles exceeds the cap")]
    SearchSpaceTooLarge(u128),
    #[error("{0} check(s) failed")]
    CheckFailed(usize),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Malformed(_) | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::SearchSpaceTooLarge(_) => 4,
            CliError::CheckFailed(_) => 5,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SearchSpaceTooLarge(n) => CliError::SearchSpaceTooLarge(n),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "domgame",
    version,
    about = "Shapley network-design game over DOM forests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run best-response dynamics to a pure Nash equilibrium.
    Solve(SolveArgs),
    /// Enumerate every pure equilibrium, the optimum, PoA and PoS.
    Enumerate(EnumerateArgs),
    /// Re-verify the profile(s) of a report against an instance.
    Check(CheckArgs),
    /// Render a report as DOT or a JSON summary.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    RoundRobin,
    Random,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance file (JSON).
    #[arg(long)]
    pub instance: PathBuf,
    /// Document text for the document form; `-` reads standard input.
    #[arg(long)]
    pub document: Option<PathBuf>,
    /// Overrides the delta stored in the file.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "round-robin")]
    pub schedule: ScheduleArg,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Write one JSON record per activation to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Report produced by `solve` or `enumerate`.
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => cmd_solve(&args, stdout),
        Command::Enumerate(args) => cmd_enumerate(&args, stdout),
        Command::Check(args) => cmd_check(&args, stdout),
        Command::Report(args) => cmd_report(&args, stdout),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn load(input: &InstanceArgs, delta: Option<f64>) -> Result<LoadedInstance, CliError> {
    let file = InstanceFile::parse(&read_file(&input.instance)?)?;
    let document = match &input.document {
        None => None,
        Some(p) if p.as_os_str() == "-" => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Some(text)
        }
        Some(p) => Some(read_file(p)?),
    };
    file.load(document.as_deref(), delta.or(input.delta))
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Dot => render_dot(&report.result),
    }
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if args.max_iters == 0 {
        return Err(CliError::Usage("--max-iters must be at least 1".into()));
    }
    let inst = load(&args.input, None)?;
    let kind = match args.schedule {
        ScheduleArg::RoundRobin => ScheduleKind::RoundRobin,
        ScheduleArg::Random => ScheduleKind::Random,
    };
    let schedule = Schedule {
        kind,
        seed: args.seed,
    };
    let (trace, converged) =
        match run_dynamics(&inst.game, inst.delta, schedule, args.max_iters, None) {
            Ok(trace) => (trace, true),
            Err(DynamicsError::NotConverged { trace, .. }) => (*trace, false),
            Err(e) => return Err(CliError::Validation(e.to_string())),
        };
    if let Some(path) = &args.trace {
        write_file(path, &trace_lines(inst.game.graph(), &trace))?;
    }
    let report = RunReport {
        format_version: FORMAT_VERSION,
        command: "solve".into(),
        delta: inst.delta.get(),
        seed: Some(args.seed),
        schedule: Some(kind),
        max_iters: Some(args.max_iters),
        converged: Some(converged),
        iterations: Some(trace.iterations()),
        trace_file: args.trace.as_ref().map(|p| p.display().to_string()),
        result: profile_record(&inst.game, &trace.final_profile, inst.delta),
        catalog: None,
    };
    emit(args.out.as_deref(), &render(&report, args.format), stdout)?;
    if converged {
        Ok(())
    } else {
        Err(CliError::NotConverged(args.max_iters))
    }
}

pub fn cmd_enumerate(args: &EnumerateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let inst = load(&args.input, None)?;
    let catalog = equilibrium_catalog(&inst.game, inst.delta, args.cap)?;
    // The headline profile is the cheapest equilibrium (the one PoS measures).
    let best = catalog
        .equilibria
        .iter()
        .min_by(|a, b| a.report.page_cost.total_cmp(&b.report.page_cost))
        .map(|e| e.profile.clone())
        .unwrap_or_else(StrategyProfile::new);
    let report = RunReport {
        format_version: FORMAT_VERSION,
        command: "enumerate".into(),
        delta: inst.delta.get(),
        seed: None,
        schedule: None,
        max_iters: None,
        converged: None,
        iterations: None,
        trace_file: None,
        result: profile_record(&inst.game, &best, inst.delta),
        catalog: Some(catalog_record(&inst.game, &catalog, inst.delta)),
    };
    emit(args.out.as_deref(), &render(&report, args.format), stdout)
}

pub fn cmd_check(args: &CheckArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = RunReport::parse(&read_file(&args.report)?)?;
    let delta = args.input.delta.unwrap_or(report.delta);
    let inst = load(&args.input, Some(delta))?;
    let delta: Delta = inst.delta;

    let mut targets = vec![("result".to_owned(), &report.result)];
    if let Some(catalog) = &report.catalog {
        targets.extend(
            catalog
                .equilibria
                .iter()
                .enumerate()
                .map(|(i, e)| (format!("equilibrium {}", i + 1), e)),
        );
    }

    let mut failed = 0;
    let mut text = String::new();
    for (name, record) in targets {
        let profile = resolve_profile(&inst.game, record)?;
        for outcome in check_profile(&inst.game, &profile, delta)? {
            if !outcome.passed {
                failed += 1;
            }
            text.push_str(&format!("[{name}] {}\n", outcome.line()));
        }
    }
    emit(None, &text, stdout)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failed))
    }
}

pub fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = RunReport::parse(&read_file(&args.report)?)?;
    let text = match args.format {
        Format::Dot => render_dot(&report.result),
        Format::Json => {
            serde_json::to_string_pretty(&summary(&report)).expect("summary serializes") + "\n"
        }
    };
    emit(args.out.as_deref(), &text, stdout)
}
