//! Library behind the `nk-lab` binary: configuration, checks and reports.

pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;

pub use config::{Cli, CommandKind, Format, RunConfig, XiSpec};
pub use error::CliError;
pub use report::{Check, McEntry, Report, Status};

pub const THREADS_ENV: &str = "NK_LAB_THREADS";

/// Worker cap from `NK_LAB_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Run one command on a pool of `threads` workers (the global pool if `None`).
pub fn execute(cfg: &RunConfig, threads: Option<usize>) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?
            .install(|| suites::run(cfg))?,
        None => suites::run(cfg)?,
    };
    if cfg.timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv(),
    }
}

/// Parse arguments, run, write the report; returns the process exit code.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nk-lab: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: &Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let threads = threads_from_env()?;
    let report = execute(&cfg, threads)?;
    let text = render(&report, cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if let Some(a) = &report.advisory {
        eprintln!("nk-lab: {a}");
    }
    Ok(report.exit_code())
}
