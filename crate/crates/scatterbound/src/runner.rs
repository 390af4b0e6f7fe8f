//! Sweep orchestration and report serialization.
//!
//! One [`SweepRow`] per energy combines the exact solve with the bound
//! evaluation; rows are computed in parallel but always emitted in
//! ascending energy order, with floats printed to 17 significant digits so
//! reruns diff bit-for-bit.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bogoliubov_bounds, theta_bound};
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::perturb;
use crate::potential::Potential;
use crate::solver::{compose_bogoliubov, solve_ab_system, solve_direct};

/// Tolerance slack applied to the sandwich test `T_lower <= T <= T_upper`.
pub const SANDWICH_TOL: f64 = 1e-6;

/// One energy point of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub e: f64,
    pub t_exact: f64,
    pub t0: f64,
    pub theta_bound: f64,
    pub t_lower: f64,
    pub t_upper: f64,
    pub upper_valid: bool,
    pub alpha_abs: f64,
    pub beta_abs: f64,
    pub alpha_upper: f64,
    pub alpha_lower: f64,
    pub sandwich_ok: bool,
    pub status: String,
}

impl SweepRow {
    fn failed(e: f64, err: &Error) -> Self {
        SweepRow {
            e,
            t_exact: f64::NAN,
            t0: f64::NAN,
            theta_bound: f64::NAN,
            t_lower: f64::NAN,
            t_upper: f64::NAN,
            upper_valid: false,
            alpha_abs: f64::NAN,
            beta_abs: f64::NAN,
            alpha_upper: f64::NAN,
            alpha_lower: f64::NAN,
            sandwich_ok: false,
            status: err.to_string().replace([',', '\n'], ";"),
        }
    }

    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

fn sweep_row(config: &ScenarioConfig, energy: f64) -> SweepRow {
    match sweep_row_inner(config, energy) {
        Ok(row) => row,
        Err(e) => SweepRow::failed(energy, &e),
    }
}

fn sweep_row_inner(config: &ScenarioConfig, energy: f64) -> Result<SweepRow> {
    let comparison = config.comparison.build(energy)?;
    let exact = solve_direct(&config.potential, energy, &config.solver)?;
    let tb = theta_bound(&config.potential, &comparison, energy, config.quad_tol)?;
    let report = bogoliubov_bounds(tb, &comparison);

    let upper = if report.upper_valid { report.t_upper } else { 1.0 };
    let sandwich_ok =
        report.t_lower - SANDWICH_TOL <= exact.t && exact.t <= upper + SANDWICH_TOL;

    Ok(SweepRow {
        e: energy,
        t_exact: exact.t,
        t0: comparison.t0,
        theta_bound: tb,
        t_lower: report.t_lower,
        t_upper: report.t_upper,
        upper_valid: report.upper_valid,
        alpha_abs: exact.alpha.norm(),
        beta_abs: exact.beta.norm(),
        alpha_upper: report.alpha_upper,
        alpha_lower: report.alpha_lower,
        sandwich_ok,
        status: "ok".into(),
    })
}

/// Runs the sweep over the configured energy grid. Per-row failures are
/// recorded in the row's status, not raised.
pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let energies = config.energies.expand()?;
    Ok(energies
        .par_iter()
        .map(|&e| sweep_row(config, e))
        .collect())
}

/// One epsilon rung of a perturbation ladder.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbRow {
    pub epsilon: f64,
    pub b_tilde_abs: f64,
    pub b_exact_abs: f64,
    pub b_abs_bound: f64,
    pub delta_t_est: f64,
    pub delta_t_exact: f64,
    pub delta_t_bound: f64,
    pub delta_n_bound: f64,
    /// |b| error ratio versus the previous (larger) epsilon; NaN on the first row.
    pub b_err_ratio: f64,
    /// delta-T error ratio versus the previous epsilon; NaN on the first row.
    pub delta_t_err_ratio: f64,
    pub status: String,
}

impl PerturbRow {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Runs the epsilon ladder for a `shifted` potential: distorted-Born
/// estimates and bounds against the exact solver, with error-scaling
/// ratios between adjacent rungs.
pub fn run_perturb(config: &ScenarioConfig) -> Result<Vec<PerturbRow>> {
    config.validate()?;
    let ladder = config
        .epsilon
        .clone()
        .ok_or_else(|| Error::Config("perturb mode requires an `epsilon` ladder".into()))?;
    let Potential::Shifted { base, delta_v, .. } = &config.potential else {
        return Err(Error::Config(
            "perturb mode requires a potential of kind `shifted`".into(),
        ));
    };
    if **base != config.comparison.potential() {
        return Err(Error::Config(
            "the shifted base must equal the comparison potential".into(),
        ));
    }
    let energies = config.energies.expand()?;
    let energy = energies[0];
    let comparison = config.comparison.build(energy)?;

    let mut rows: Vec<PerturbRow> = Vec::with_capacity(ladder.len());
    let mut prev_errs: Option<(f64, f64)> = None;
    for &eps in &ladder {
        let spec = Potential::shifted((**base).clone(), (**delta_v).clone(), eps);
        let row = (|| -> Result<PerturbRow> {
            let report = perturb::perturbation_report(&comparison, delta_v, eps, config.quad_tol)?;
            let traj = solve_ab_system(&spec, &comparison, energy, &config.solver)?;
            let b_exact = traj.final_state().b;
            let t_exact = compose_bogoliubov(&comparison, &traj.final_state()).t;
            let delta_t_exact = t_exact - comparison.t0;

            let b_err = (report.b_infinity_est.norm() - b_exact.norm()).abs();
            let dt_err = (report.delta_t_est - delta_t_exact).abs();
            let (b_ratio, dt_ratio) = match prev_errs {
                Some((pb, pdt)) => (pb / b_err, pdt / dt_err),
                None => (f64::NAN, f64::NAN),
            };
            prev_errs = Some((b_err, dt_err));

            Ok(PerturbRow {
                epsilon: eps,
                b_tilde_abs: report.b_infinity_est.norm(),
                b_exact_abs: b_exact.norm(),
                b_abs_bound: report.b_abs_bound,
                delta_t_est: report.delta_t_est,
                delta_t_exact,
                delta_t_bound: report.delta_t_bound,
                delta_n_bound: report.delta_n_bound,
                b_err_ratio: b_ratio,
                delta_t_err_ratio: dt_ratio,
                status: "ok".into(),
            })
        })();
        match row {
            Ok(r) => rows.push(r),
            Err(e) => rows.push(PerturbRow {
                epsilon: eps,
                b_tilde_abs: f64::NAN,
                b_exact_abs: f64::NAN,
                b_abs_bound: f64::NAN,
                delta_t_est: f64::NAN,
                delta_t_exact: f64::NAN,
                delta_t_bound: f64::NAN,
                delta_n_bound: f64::NAN,
                b_err_ratio: f64::NAN,
                delta_t_err_ratio: f64::NAN,
                status: e.to_string().replace([',', '\n'], ";"),
            }),
        }
    }
    Ok(rows)
}

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub const SWEEP_HEADER: &str = "E,T_exact,T0,theta_bound,T_lower,T_upper,upper_valid,\
alpha_abs,beta_abs,alpha_upper,alpha_lower,sandwich_ok,status";

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.e),
            fmt_f64(r.t_exact),
            fmt_f64(r.t0),
            fmt_f64(r.theta_bound),
            fmt_f64(r.t_lower),
            fmt_f64(r.t_upper),
            r.upper_valid,
            fmt_f64(r.alpha_abs),
            fmt_f64(r.beta_abs),
            fmt_f64(r.alpha_upper),
            fmt_f64(r.alpha_lower),
            r.sandwich_ok,
            r.status,
        )?;
    }
    Ok(())
}

pub const PERTURB_HEADER: &str = "epsilon,b_tilde_abs,b_exact_abs,b_abs_bound,delta_T_est,\
delta_T_exact,delta_T_bound,delta_N_bound,b_err_ratio,delta_T_err_ratio,status";

pub fn write_perturb_csv<W: Write>(mut w: W, rows: &[PerturbRow]) -> Result<()> {
    writeln!(w, "{PERTURB_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.epsilon),
            fmt_f64(r.b_tilde_abs),
            fmt_f64(r.b_exact_abs),
            fmt_f64(r.b_abs_bound),
            fmt_f64(r.delta_t_est),
            fmt_f64(r.delta_t_exact),
            fmt_f64(r.delta_t_bound),
            fmt_f64(r.delta_n_bound),
            fmt_f64(r.b_err_ratio),
            fmt_f64(r.delta_t_err_ratio),
            r.status,
        )?;
    }
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, rows: &[T]) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(&mut w)?;
    Ok(())
}
