use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fgn_entropy::cli::{self, SweepConfig, VerifyConfig};
use fgn_entropy::exec::configure_threads;
use fgn_entropy::{Error, Execution, QuadratureSpec};

/// Entropy of fractional Gaussian noise over a grid of Hurst indices.
#[derive(Parser)]
#[command(name = "fgn-entropy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// det and log det of the covariance block: h,n,det,log_det
    SweepDet(CommonArgs),
    /// Block entropies: h,n,entropy,reduced_entropy,normalized_entropy
    SweepEntropy(CommonArgs),
    /// Spectral entropy rate, its lower bound and normalized block entropies
    Rate(CommonArgs),
    /// Covariance functionals F1, F2, E1, E2 with the E1 asymptotic regime
    Functionals(CommonArgs),
    /// Run the invariant checks; exits 1 on any violation
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 0.01)]
    h_min: f64,
    #[arg(long, default_value_t = 0.99)]
    h_max: f64,
    #[arg(long, default_value_t = 0.01)]
    h_step: f64,
    /// Emit every n in 1..=n-max (ignored when --n-list is given).
    #[arg(long, default_value_t = 100)]
    n_max: usize,
    /// Comma-separated, strictly increasing n values.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// Absolute tolerance of the spectral quadrature.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Scale factor applied to every check tolerance.
    #[arg(long, default_value_t = 1.0)]
    check_tol: f64,
}

impl CommonArgs {
    fn config(&self, default_list: Option<&[usize]>) -> Result<SweepConfig, Error> {
        if let Some(t) = self.threads {
            configure_threads(t).map_err(Error::Config)?;
        }
        let n_values = match (&self.n_list, default_list) {
            (Some(list), _) => list.clone(),
            (None, Some(list)) => list.to_vec(),
            (None, None) => (1..=self.n_max).collect(),
        };
        let cfg = SweepConfig {
            h_min: self.h_min,
            h_max: self.h_max,
            h_step: self.h_step,
            n_values,
            quad: QuadratureSpec::absolute(self.tol)?,
            exec: Execution::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let (common, text, code) = match &cli.command {
        Command::SweepDet(a) => (a, cli::sweep_det(&a.config(None)?)?, 0),
        Command::SweepEntropy(a) => (a, cli::sweep_entropy(&a.config(None)?)?, 0),
        Command::Rate(a) => (a, cli::rate(&a.config(Some(&[10, 50, 100]))?)?, 0),
        Command::Functionals(a) => (a, cli::functionals(&a.config(None)?)?, 0),
        Command::Verify(v) => {
            let report = cli::verify(&VerifyConfig {
                sweep: v.common.config(Some(&[v.common.n_max]))?,
                tolerance_scale: v.check_tol,
            })?;
            (&v.common, report.render(), report.exit_code() as u8)
        }
    };
    if let Err(e) = emit(&common.out, &text) {
        eprintln!("fgn-entropy: cannot write output: {e}");
        return Ok(2);
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fgn-entropy: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
