//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, 3 computation,
//! 4 I/O.

mod commands;
mod output;
mod scenario;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_compare, cmd_simulate, cmd_solve, cmd_verify, design_for, dump_config, Check, CompareReport, RunSummary,
    Variant, VerifyReport, PMP_GAP_THRESHOLD, SUMMARY_HEADER,
};
pub use output::{format_float, trajectory_csv, write_atomic, TRAJECTORY_HEADER};
pub use scenario::{Scenario, CONFIG_FILE_NAME};
pub use svg::{LinePlot, Series};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Computation(#[from] crate::Error),
    #[error("i/o error on {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Computation(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "epioptic", version, about = "Exponential vaccination control for an SIR outbreak")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Calibrate the control and print its parameters.
    Solve(ScenarioArgs),
    /// Write trajectories as CSV.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Under the calibrated control (default when no variant is given).
        #[arg(long)]
        controlled: bool,
        /// Without control.
        #[arg(long)]
        uncontrolled: bool,
        /// Under a constant vaccination rate.
        #[arg(long, value_name = "U")]
        constant: Option<f64>,
    },
    /// Compare controlled and uncontrolled runs; write plots and a summary.
    Compare(ScenarioArgs),
    /// Run numerical cross-checks and the Pontryagin reference solver.
    Verify(ScenarioArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Scenario file with `key = value` lines.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub s0: Option<f64>,
    #[arg(long)]
    pub i0: Option<f64>,
    #[arg(long)]
    pub r0: Option<f64>,
    /// Horizon in days.
    #[arg(long)]
    pub t: Option<f64>,
    /// Attenuation of the control at half the horizon.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long = "u-max")]
    pub u_max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// classical or rk4
    #[arg(long)]
    pub method: Option<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Treat an inadmissible U0 as a failure.
    #[arg(long)]
    pub strict: bool,
    /// Write the effective scenario to scenario.cfg in the output directory.
    #[arg(long)]
    pub dump_config: bool,
}

impl ScenarioArgs {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<Scenario, CliError> {
        let mut s = Scenario::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            s.apply_config(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        }
        let numeric = [
            (self.beta, &mut s.beta),
            (self.mu, &mut s.mu),
            (self.s0, &mut s.s0),
            (self.i0, &mut s.i0),
            (self.r0, &mut s.r0),
            (self.t, &mut s.t_horizon),
            (self.q, &mut s.q),
            (self.u_max, &mut s.u_max),
            (self.step, &mut s.step),
        ];
        for (flag, field) in numeric {
            if let Some(v) = flag {
                *field = v;
            }
        }
        if let Some(m) = &self.method {
            s.method = m.parse().map_err(|e: crate::Error| CliError::Usage(e.to_string()))?;
        }
        if let Some(out) = &self.out {
            s.output_dir = out.clone();
        }
        s.validate().map_err(CliError::Usage)?;
        Ok(s)
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command) -> Result<(), CliError> {
    let args = match command {
        Command::Solve(a) | Command::Compare(a) | Command::Verify(a) => a,
        Command::Simulate { scenario, .. } => scenario,
    };
    let s = args.resolve()?;
    if args.dump_config {
        let path = dump_config(&s)?;
        println!("wrote {}", path.display());
    }

    match command {
        Command::Solve(_) => {
            let summary = cmd_solve(&s)?;
            print!("{}", summary.report(s.u_max));
            strict_gate(args.strict, &summary)
        }
        Command::Simulate { controlled, uncontrolled, constant, .. } => {
            let mut variants = Vec::new();
            if *controlled || (!*uncontrolled && constant.is_none()) {
                variants.push(Variant::Controlled);
            }
            if *uncontrolled {
                variants.push(Variant::Uncontrolled);
            }
            if let Some(u) = constant {
                variants.push(Variant::Constant(*u));
            }
            for path in cmd_simulate(&s, &variants)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Compare(_) => {
            let report = cmd_compare(&s)?;
            print!("{}", report.summary.report(s.u_max));
            for path in &report.files {
                println!("wrote {}", path.display());
            }
            for v in &report.violations {
                println!("VIOLATION {v}");
            }
            if !report.violations.is_empty() {
                return Err(CliError::Verification(format!(
                    "{} comparison properties violated",
                    report.violations.len()
                )));
            }
            strict_gate(args.strict, &report.summary)
        }
        Command::Verify(_) => {
            let report = cmd_verify(&s, args.strict)?;
            for c in &report.checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if let Some(gap) = report.pmp_gap {
                let note = if gap > PMP_GAP_THRESHOLD { " (above the 5% approximation threshold)" } else { "" };
                println!("pmp relative J-gap {}{note}", format_float(gap));
            }
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(failed.join(", ")))
            }
        }
    }
}

fn strict_gate(strict: bool, summary: &RunSummary) -> Result<(), CliError> {
    if strict && !summary.admissible {
        Err(CliError::Verification("U0 exceeds u_max".into()))
    } else {
        Ok(())
    }
}
