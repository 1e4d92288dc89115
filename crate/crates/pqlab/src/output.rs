//! Deterministic artifact writing.
//!
//! CSV schemas are fixed per artifact kind — profiles `r,u,v,du,dv`,
//! trajectories `t,X,Y,Z,W`, reports `scale,lhs,rhs,constant`, fixed
//! points `label` + coordinates + split complex eigenvalues +
//! `unstable_dim` — with every float printed to 17 significant digits.
//! The JSON format serializes the same typed objects through serde, so a
//! round-trip parse reproduces them exactly.  Identical inputs produce
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use pqlab_estimates::EstimateReport;
use pqlab_phase::{FixedPointInfo, PhaseState};
use pqlab_radial::RadialSolution;
use serde::Serialize;

/// Data-artifact format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Output directory plus the record of files written into it.
pub struct OutDir {
    dir: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .with_context(|| format!("cannot write {}", path.display()))?;
        self.written.push(name.to_owned());
        Ok(())
    }

    /// Names of the files written so far, in order.
    pub fn written(&self) -> &[String] {
        &self.written
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

/// 17-significant-digit decimal form, the shortest that round-trips f64.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialize any value as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("JSON serialization")?;
    text.push('\n');
    Ok(text)
}

fn profile_csv(sol: &RadialSolution) -> String {
    let mut text = String::from("r,u,v,du,dv\n");
    for i in 0..sol.len() {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            float(sol.r()[i]),
            float(sol.u()[i]),
            float(sol.v()[i]),
            float(sol.du()[i]),
            float(sol.dv()[i]),
        );
    }
    text
}

fn trajectory_csv(states: &[PhaseState]) -> String {
    let mut text = String::from("t,X,Y,Z,W\n");
    for state in states {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            float(state.t),
            float(state.x),
            float(state.y),
            float(state.z),
            float(state.w),
        );
    }
    text
}

fn report_csv(report: &EstimateReport) -> String {
    let mut text = String::from("scale,lhs,rhs,constant\n");
    for record in &report.records {
        let _ = writeln!(
            text,
            "{},{},{},{}",
            float(record.scale),
            float(record.lhs),
            float(record.rhs),
            float(record.constant),
        );
    }
    text
}

fn fixed_points_csv(points: &[FixedPointInfo]) -> String {
    let mut text = String::from(
        "label,x,y,z,w,eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im,eig4_re,eig4_im,unstable_dim\n",
    );
    for info in points {
        let _ = write!(text, "{}", info.label);
        for c in info.coords {
            let _ = write!(text, ",{}", float(c));
        }
        for e in info.eigenvalues {
            let _ = write!(text, ",{},{}", float(e.re), float(e.im));
        }
        let _ = writeln!(text, ",{}", info.unstable_dim);
    }
    text
}

/// Write a radial profile as `<stem>.csv` or `<stem>.json`.
pub fn emit_profile(
    out: &mut OutDir,
    format: Format,
    stem: &str,
    sol: &RadialSolution,
) -> Result<()> {
    let name = format!("{stem}.{}", format.extension());
    let contents = match format {
        Format::Csv => profile_csv(sol),
        Format::Json => to_json(sol)?,
    };
    out.write(&name, &contents)
}

/// Write a phase trajectory as `<stem>.csv` or `<stem>.json`.
pub fn emit_trajectory(
    out: &mut OutDir,
    format: Format,
    stem: &str,
    states: &[PhaseState],
) -> Result<()> {
    let name = format!("{stem}.{}", format.extension());
    let contents = match format {
        Format::Csv => trajectory_csv(states),
        Format::Json => to_json(&states)?,
    };
    out.write(&name, &contents)
}

/// Write an estimate report as `<stem>.csv` or `<stem>.json`.
pub fn emit_report(
    out: &mut OutDir,
    format: Format,
    stem: &str,
    report: &EstimateReport,
) -> Result<()> {
    let name = format!("{stem}.{}", format.extension());
    let contents = match format {
        Format::Csv => report_csv(report),
        Format::Json => to_json(report)?,
    };
    out.write(&name, &contents)
}

/// Write the fixed-point catalog as `<stem>.csv` or `<stem>.json`.
pub fn emit_fixed_points(
    out: &mut OutDir,
    format: Format,
    stem: &str,
    points: &[FixedPointInfo],
) -> Result<()> {
    let name = format!("{stem}.{}", format.extension());
    let contents = match format {
        Format::Csv => fixed_points_csv(points),
        Format::Json => to_json(&points)?,
    };
    out.write(&name, &contents)
}

/// The `summary.json` payload every run produces: tool identity, the
/// resolved config, a verdict, experiment details, and the artifact list.
#[derive(Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: &'static str,
    pub verdict: &'static str,
    pub config: serde_json::Value,
    pub details: serde_json::Value,
    pub outputs: Vec<String>,
}
