//! Batch front end: one experiment per invocation.
//!
//! `pqlab <experiment-kind> --config <file.json> [--out <dir>]
//! [--format json|csv]` parses a strict-JSON config, dispatches to the
//! library crates, and writes a `summary.json` (resolved config, version,
//! verdict, details) plus the experiment's data artifacts into the output
//! directory.  Exit codes: 0 = pass, 1 = the experiment failed its
//! declared verdict, 2 = invalid config or execution error.  Runs are
//! deterministic: identical configs produce byte-identical outputs.
//! `PQLAB_THREADS` caps the thread pool used by parallel sweeps.

mod config;
mod experiments;
mod output;

use std::env;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use config::ExperimentConfig;
use output::{Format, OutDir, Summary};

#[derive(Parser)]
#[command(name = "pqlab", version, about = "Numerical laboratory for coupled p/q-Laplace systems")]
struct Cli {
    #[command(subcommand)]
    experiment: Experiment,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's `out_dir`; default `.`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Data artifact format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Experiment {
    /// Derived exponents and identity residuals for a parameter set.
    Exponents(RunArgs),
    /// Existence regimes plus the particular power-pair amplitudes.
    Classify(RunArgs),
    /// Radial shooting solve of the coupled system.
    Solve(RunArgs),
    /// Radial solve of the scalar absorption equation.
    ScalarSolve(RunArgs),
    /// Fixed-point catalog: coordinates, eigenvalues, admissibility.
    PhaseFixedPoints(RunArgs),
    /// Trajectory shot from a cataloged fixed point.
    PhaseShoot(RunArgs),
    /// Blow-up envelope constants along a family of initial data.
    VerifyKo(RunArgs),
    /// Ball/annulus oscillation ratios of a profile's two components.
    VerifyHarnack(RunArgs),
    /// Weighted punctual ratio of the two components across scales.
    VerifyPunctual(RunArgs),
    /// Cutoff energy-ratio constants across dyadic scales.
    VerifyCaccioppoli(RunArgs),
    /// Potential-vs-oscillation bound constants across scales.
    VerifyWolff(RunArgs),
    /// Iteration-lemma certificate on a synthetic power family.
    VerifyBootstrap(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(err) = init_threads() {
        eprintln!("pqlab: {err:#}");
        return ExitCode::from(2);
    }
    match run(cli.experiment) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("pqlab: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Apply `PQLAB_THREADS` to the global worker pool before any sweep runs.
fn init_threads() -> Result<()> {
    match env::var("PQLAB_THREADS") {
        Ok(text) => {
            let threads: usize = text
                .parse()
                .context("PQLAB_THREADS must be a positive integer")?;
            if threads == 0 {
                bail!("PQLAB_THREADS must be a positive integer, got 0");
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .context("thread pool initialization")?;
            Ok(())
        }
        Err(env::VarError::NotPresent) => Ok(()),
        Err(err) => Err(err).context("PQLAB_THREADS is not valid unicode"),
    }
}

fn run(experiment: Experiment) -> Result<bool> {
    match experiment {
        Experiment::Exponents(args) => drive("exponents", &args, experiments::exponents),
        Experiment::Classify(args) => drive("classify", &args, experiments::classify),
        Experiment::Solve(args) => drive("solve", &args, experiments::solve),
        Experiment::ScalarSolve(args) => drive("scalar-solve", &args, experiments::scalar_solve),
        Experiment::PhaseFixedPoints(args) => {
            drive("phase-fixed-points", &args, experiments::phase_fixed_points)
        }
        Experiment::PhaseShoot(args) => drive("phase-shoot", &args, experiments::phase_shoot),
        Experiment::VerifyKo(args) => drive("verify-ko", &args, experiments::verify_ko),
        Experiment::VerifyHarnack(args) => {
            drive("verify-harnack", &args, experiments::verify_harnack)
        }
        Experiment::VerifyPunctual(args) => {
            drive("verify-punctual", &args, experiments::verify_punctual)
        }
        Experiment::VerifyCaccioppoli(args) => {
            drive("verify-caccioppoli", &args, experiments::verify_caccioppoli)
        }
        Experiment::VerifyWolff(args) => drive("verify-wolff", &args, experiments::verify_wolff),
        Experiment::VerifyBootstrap(args) => {
            drive("verify-bootstrap", &args, experiments::verify_bootstrap)
        }
    }
}

/// Load the config, run the experiment, write the summary, report pass.
fn drive<C, F>(kind: &'static str, args: &RunArgs, runner: F) -> Result<bool>
where
    C: DeserializeOwned + Serialize + ExperimentConfig,
    F: FnOnce(&C, &mut OutDir, Format) -> Result<(bool, serde_json::Value)>,
{
    let config: C = config::load(&args.config, kind)?;
    let dir = args
        .out
        .clone()
        .or_else(|| config.out_dir().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let mut out = OutDir::new(&dir)?;
    let (pass, details) = runner(&config, &mut out, args.format)?;
    let mut outputs: Vec<String> = out.written().to_vec();
    outputs.push("summary.json".to_owned());
    let summary = Summary {
        tool: "pqlab",
        version: env!("CARGO_PKG_VERSION"),
        experiment: kind,
        verdict: if pass { "pass" } else { "fail" },
        config: serde_json::to_value(&config).context("config echo")?,
        details,
        outputs,
    };
    out.write("summary.json", &output::to_json(&summary)?)?;
    println!(
        "{kind}: {} (summary -> {})",
        if pass { "pass" } else { "FAIL" },
        out.path("summary.json").display()
    );
    Ok(pass)
}
