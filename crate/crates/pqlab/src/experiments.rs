//! Experiment runners: one function per CLI subcommand.
//!
//! Every runner takes its parsed config, writes data artifacts through
//! [`output`], and returns `(pass, details)`; `details` lands in
//! `summary.json`.  Verification experiments derive `pass` from their
//! declared verdict; descriptive experiments (exponents, solves, phase
//! portraits) pass whenever they complete.  Any library error bubbles up
//! as a config-level failure (exit 2) — the one exception is a bootstrap
//! hypothesis violation, which is a negative result, not a broken config.

use anyhow::{Context, Result};
use serde_json::{json, Value};

use pqlab_estimates::{
    bootstrap_certificate, caccioppoli_ratio, harnack_ratios, ko_envelope, ko_envelope_scalar,
    punctual_ratio, wolff_bound_check, EstimateError, EstimateReport, KoRay, Verdict,
};
use pqlab_exponents::{
    classify_regimes, compute_exponents, particular_coefficients, SystemParams,
};
use pqlab_phase::{
    catalog_point, fixed_point_catalog, reconstruct_uv, shoot_combination, shoot_unstable,
    FixedPointInfo, ShotTrajectory,
};
use pqlab_radial::{
    solve_regular, solve_scalar, Problem, RadialSolution, SolutionStatus,
};

use crate::config::{
    ClassifyConfig, ExponentsConfig, KoRayKind, PhaseFixedPointsConfig, PhaseShootConfig,
    ProfileSource, ScalarSolveConfig, ShotSpec, SolveConfig, VerifyBootstrapConfig,
    VerifyCaccioppoliConfig, VerifyHarnackConfig, VerifyKoConfig, VerifyPunctualConfig,
    VerifyWolffConfig,
};
use crate::output::{
    emit_fixed_points, emit_profile, emit_report, emit_trajectory, Format, OutDir,
};

/// Relative residual of `lhs = rhs`, on the scale of the larger side.
fn identity_residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

pub fn exponents(config: &ExponentsConfig, _out: &mut OutDir, _format: Format) -> Result<(bool, Value)> {
    let params = &config.system;
    let exps = compute_exponents(params);
    let (p, q) = (params.p(), params.q());
    let (a, b) = (params.a(), params.b());
    let first = identity_residual(
        params.delta() * exps.xi_ab,
        (p - 1.0) * exps.gamma_ab + p + a,
    );
    let second = identity_residual(
        params.mu() * exps.gamma_ab,
        (q - 1.0) * exps.xi_ab + q + b,
    );
    let details = json!({
        "exponents": exps,
        "identity_residuals": { "first": first, "second": second },
    });
    Ok((true, details))
}

pub fn classify(config: &ClassifyConfig, _out: &mut OutDir, _format: Format) -> Result<(bool, Value)> {
    let params = &config.system;
    let exps = compute_exponents(params);
    let flags = classify_regimes(params, &exps);
    let (particular, particular_error) = match particular_coefficients(params, &exps) {
        Ok(sol) => (serde_json::to_value(sol)?, Value::Null),
        Err(err) => (Value::Null, Value::String(err.to_string())),
    };
    let details = json!({
        "exponents": exps,
        "regimes": flags,
        "particular": particular,
        "particular_error": particular_error,
    });
    Ok((true, details))
}

fn solution_details(sol: &RadialSolution) -> Result<Value> {
    Ok(json!({
        "status": sol.status(),
        "stats": sol.stats(),
        "samples": sol.len(),
        "r_min": sol.r_min(),
        "r_max": sol.r_max(),
    }))
}

pub fn solve(config: &SolveConfig, out: &mut OutDir, format: Format) -> Result<(bool, Value)> {
    let sol = solve_regular(&config.system, config.u0, config.v0, config.r_max, config.tol)?;
    emit_profile(out, format, "profile", &sol)?;
    Ok((true, solution_details(&sol)?))
}

pub fn scalar_solve(
    config: &ScalarSolveConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let sol = solve_scalar(&config.scalar, config.u0, config.r_max, config.tol)?;
    emit_profile(out, format, "profile", &sol)?;
    Ok((true, solution_details(&sol)?))
}

pub fn phase_fixed_points(
    config: &PhaseFixedPointsConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let catalog = fixed_point_catalog(&config.system)?;
    emit_fixed_points(out, format, "fixed_points", &catalog)?;
    Ok((true, json!({ "catalog": catalog })))
}

/// Launch the trajectory a [`ShotSpec`] describes.
fn run_shot(params: &SystemParams, spec: &ShotSpec) -> Result<(FixedPointInfo, ShotTrajectory)> {
    let point = catalog_point(params, spec.label())?;
    let traj = match (&spec.eig_index, &spec.combination) {
        (Some(index), None) => {
            shoot_unstable(&point, *index, spec.side.into(), params, spec.t_span, spec.eta)?
        }
        (None, Some(weights)) => {
            shoot_combination(&point, weights, params, spec.t_span, spec.eta)?
        }
        _ => unreachable!("config validation enforces exactly one shot mode"),
    };
    Ok((point, traj))
}

pub fn phase_shoot(
    config: &PhaseShootConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let (point, traj) = run_shot(&config.system, &config.shot)?;
    emit_trajectory(out, format, "trajectory", &traj.states)?;
    let mut details = json!({
        "point": point,
        "eigenvalue": traj.eigenvalue,
        "escape_time": traj.escape_time,
        "sign_pattern": traj.sign_pattern,
        "states": traj.states.len(),
    });
    if let Some(anchor) = config.shot.anchor {
        let sol = reconstruct_uv(&traj.states, &config.system, anchor)?;
        emit_profile(out, format, "profile", &sol)?;
        details["profile"] = solution_details(&sol)?;
    }
    Ok((true, details))
}

/// Materialize the radial profile a verification experiment works on.
fn build_profile(params: &SystemParams, source: &ProfileSource) -> Result<RadialSolution> {
    match source {
        ProfileSource::Particular(grid) => {
            let exps = compute_exponents(params);
            let particular = particular_coefficients(params, &exps)?;
            let n = grid.points;
            let step = (grid.r_max / grid.r_min).ln() / (n - 1) as f64;
            let r: Vec<f64> = (0..n)
                .map(|i| grid.r_min * (step * i as f64).exp())
                .collect();
            let u = r.iter().map(|&x| particular.u(x)).collect();
            let v = r.iter().map(|&x| particular.v(x)).collect();
            let du = r.iter().map(|&x| particular.du(x)).collect();
            let dv = r.iter().map(|&x| particular.dv(x)).collect();
            RadialSolution::from_samples(
                Problem::System { params: *params },
                r,
                u,
                v,
                du,
                dv,
                f64::INFINITY,
                f64::INFINITY,
                SolutionStatus::Completed { r_max: grid.r_max },
            )
            .context("analytic profile assembly")
        }
        ProfileSource::Solve(data) => {
            Ok(solve_regular(params, data.u0, data.v0, data.r_max, data.tol)?)
        }
        ProfileSource::Shot(spec) => {
            let (_, traj) = run_shot(params, spec)?;
            Ok(reconstruct_uv(&traj.states, params, spec.anchor.unwrap_or(1.0))?)
        }
    }
}

/// Compact JSON view of a report for the summary file.
fn report_details(report: &EstimateReport) -> Value {
    json!({
        "label": report.label,
        "verdict": report.verdict,
        "min_constant": report.min_constant,
        "max_constant": report.max_constant,
        "ratio": report.ratio(),
        "ratio_bound": report.ratio_bound,
        "records": report.records.len(),
    })
}

/// `Bounded` plus an optional extra gate on the constants' spread.
fn gated_pass(report: &EstimateReport, max_ratio: Option<f64>) -> bool {
    report.verdict == Verdict::Bounded && max_ratio.is_none_or(|gate| report.ratio() <= gate)
}

pub fn verify_ko(config: &VerifyKoConfig, out: &mut OutDir, format: Format) -> Result<(bool, Value)> {
    let report = match (&config.system, &config.scalar) {
        (Some(params), None) => {
            let ray_cfg = config.ray.as_ref().expect("validation requires a ray");
            let ray = match ray_cfg.kind {
                KoRayKind::Scaling => KoRay::Scaling {
                    u_base: ray_cfg.u_base,
                    v_base: ray_cfg.v_base,
                },
                KoRayKind::Doubling => KoRay::Doubling {
                    u_base: ray_cfg.u_base,
                    v_base: ray_cfg.v_base,
                },
            };
            ko_envelope(params, &ray, config.count)?
        }
        (None, Some(scalar)) => {
            let u_base = config.u_base.expect("validation requires u_base");
            ko_envelope_scalar(scalar, u_base, config.count)?
        }
        _ => unreachable!("config validation enforces exactly one sweep kind"),
    };
    emit_report(out, format, "report", &report)?;
    let pass = gated_pass(&report, config.max_ratio);
    Ok((pass, json!({ "report": report_details(&report), "max_ratio": config.max_ratio })))
}

pub fn verify_harnack(
    config: &VerifyHarnackConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let sol = build_profile(&config.system, &config.source)?;
    let bounded = harnack_ratios(&sol, config.bounded_component.into(), &config.radii)?;
    let singular = harnack_ratios(&sol, config.singular_component.into(), &config.radii)?;
    let bounded_name = config.bounded_component.as_str();
    let singular_name = config.singular_component.as_str();
    emit_report(out, format, &format!("harnack_{bounded_name}_ball"), &bounded.ball)?;
    emit_report(out, format, &format!("harnack_{bounded_name}_annulus"), &bounded.annulus)?;
    emit_report(out, format, &format!("harnack_{singular_name}_ball"), &singular.ball)?;
    emit_report(out, format, &format!("harnack_{singular_name}_annulus"), &singular.annulus)?;
    let bounded_ok = bounded.ball.verdict == Verdict::Bounded;
    let singular_ok = singular.ball.max_constant > config.singular_min;
    let details = json!({
        "bounded": {
            "component": bounded_name,
            "ball": report_details(&bounded.ball),
            "annulus": report_details(&bounded.annulus),
            "ok": bounded_ok,
        },
        "singular": {
            "component": singular_name,
            "ball": report_details(&singular.ball),
            "annulus": report_details(&singular.annulus),
            "min_required": config.singular_min,
            "ok": singular_ok,
        },
    });
    Ok((bounded_ok && singular_ok, details))
}

pub fn verify_punctual(
    config: &VerifyPunctualConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let sol = build_profile(&config.system, &config.source)?;
    let report = punctual_ratio(&sol)?;
    emit_report(out, format, "report", &report)?;
    let pass = gated_pass(&report, config.max_ratio);
    Ok((pass, json!({ "report": report_details(&report), "max_ratio": config.max_ratio })))
}

pub fn verify_caccioppoli(
    config: &VerifyCaccioppoliConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let sol = build_profile(&config.system, &config.source)?;
    let report = caccioppoli_ratio(&sol, config.ell, config.rho, config.eps)?;
    emit_report(out, format, "report", &report)?;
    let pass = report.verdict == Verdict::Bounded;
    Ok((pass, json!({ "report": report_details(&report) })))
}

pub fn verify_wolff(
    config: &VerifyWolffConfig,
    out: &mut OutDir,
    format: Format,
) -> Result<(bool, Value)> {
    let sol = build_profile(&config.system, &config.source)?;
    let report = wolff_bound_check(&sol, &config.rho_list)?;
    emit_report(out, format, "report", &report)?;
    let pass = report.verdict == Verdict::Bounded;
    Ok((pass, json!({ "report": report_details(&report) })))
}

pub fn verify_bootstrap(
    config: &VerifyBootstrapConfig,
    _out: &mut OutDir,
    _format: Format,
) -> Result<(bool, Value)> {
    let n = config.points;
    let step = (config.rho_max / config.rho_min).ln() / (n - 1) as f64;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let rho = config.rho_min * (step * i as f64).exp();
            (rho, config.y.eval(rho))
        })
        .collect();
    let phi = |rho: f64| config.phi.eval(rho);
    match bootstrap_certificate(
        &samples,
        phi,
        config.d,
        config.h,
        config.big_k,
        config.big_m,
        config.eps0,
    ) {
        Ok(certificate) => {
            let pass = certificate.passes;
            Ok((pass, json!({ "certificate": certificate })))
        }
        Err(EstimateError::HypothesisViolated { inequality, rho }) => Ok((
            false,
            json!({ "hypothesis_violation": { "inequality": inequality, "rho": rho } }),
        )),
        Err(err) => Err(err.into()),
    }
}
