//! Batch interface over the library: solve one energy, sweep a grid,
//! evaluate bounds without solving, run a perturbation ladder, or run the
//! built-in verification corpus.
//!
//! Exit codes: 0 all checks pass, 1 config error, 2 numerical failure,
//! 3 bound violation detected.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scatterbound::bounds::{bogoliubov_bounds, theta_bound};
use scatterbound::config::{OutputFormat, ScenarioConfig};
use scatterbound::error::Error;
use scatterbound::runner::{
    self, fmt_f64, run_perturb, run_sweep, write_perturb_csv, write_sweep_csv,
};
use scatterbound::solver::solve_direct;
use scatterbound::verify;

const EXIT_OK: u8 = 0;
const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "scatterbound", version, about = "Transmission probabilities and analytic bounds for 1D scattering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Scenario description (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of the config's output path / stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format; overrides the config.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Suppress progress output on stderr.
    #[arg(long)]
    quiet: bool,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format `{other}` (expected csv or json)")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single energy in full detail.
    Solve(CommonOpts),
    /// Sweep the configured energy grid and emit one row per energy.
    Sweep(CommonOpts),
    /// Evaluate the bounds only, without the exact solve.
    Bounds(CommonOpts),
    /// Run the epsilon ladder for a shifted potential.
    Perturb(CommonOpts),
    /// Run the built-in verification corpus.
    Verify {
        /// Suppress the per-criterion lines.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(opts) => with_config(&opts, cmd_solve),
        Command::Sweep(opts) => with_config(&opts, cmd_sweep),
        Command::Bounds(opts) => with_config(&opts, cmd_bounds),
        Command::Perturb(opts) => with_config(&opts, cmd_perturb),
        Command::Verify { quiet } => cmd_verify(quiet),
    };
    ExitCode::from(code)
}

fn with_config(opts: &CommonOpts, run: fn(&CommonOpts, &ScenarioConfig) -> u8) -> u8 {
    if let Some(jobs) = opts.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match ScenarioConfig::load(&opts.config) {
        Ok(config) => run(opts, &config),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

/// Resolves the output target and format from flags and config.
fn open_output(opts: &CommonOpts, config: &ScenarioConfig) -> std::io::Result<(Box<dyn Write>, OutputFormat)> {
    let cfg_out = config.output.as_ref();
    let format = opts
        .format
        .or(cfg_out.map(|o| o.format))
        .unwrap_or_default();
    let path = opts
        .output
        .clone()
        .or_else(|| cfg_out.and_then(|o| o.path.clone()));
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    Ok((sink, format))
}

fn cmd_sweep(opts: &CommonOpts, config: &ScenarioConfig) -> u8 {
    let rows = match run_sweep(config) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let (mut out, format) = match open_output(opts, config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERICAL;
        }
    };
    let written = match format {
        OutputFormat::Csv => write_sweep_csv(&mut out, &rows),
        OutputFormat::Json => runner::write_json(&mut out, &rows),
    };
    if let Err(e) = written.and_then(|_| out.flush().map_err(Error::from)) {
        eprintln!("error: {e}");
        return EXIT_NUMERICAL;
    }

    let failures = rows.iter().filter(|r| !r.ok()).count();
    let violations = rows.iter().filter(|r| r.ok() && !r.sandwich_ok).count();
    if !opts.quiet {
        eprintln!(
            "{} rows, {} solver failures, {} bound violations",
            rows.len(),
            failures,
            violations
        );
    }
    if violations > 0 {
        EXIT_VIOLATION
    } else if failures > 0 {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    }
}

fn cmd_solve(opts: &CommonOpts, config: &ScenarioConfig) -> u8 {
    let energies = match config.energies.expand() {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    if energies.len() != 1 {
        eprintln!("error: `solve` expects exactly one energy, got {}", energies.len());
        return EXIT_CONFIG;
    }
    let energy = energies[0];

    let detail = (|| -> scatterbound::Result<String> {
        let comparison = config.comparison.build(energy)?;
        let exact = solve_direct(&config.potential, energy, &config.solver)?;
        let tb = theta_bound(&config.potential, &comparison, energy, config.quad_tol)?;
        let report = bogoliubov_bounds(tb, &comparison);
        let upper = if report.upper_valid { report.t_upper } else { 1.0 };
        let sandwich_ok = report.t_lower - runner::SANDWICH_TOL <= exact.t
            && exact.t <= upper + runner::SANDWICH_TOL;
        Ok(format!(
            "E            = {}\n\
             T_exact      = {}\n\
             R_exact      = {}\n\
             alpha        = {} + {}i  (|alpha| = {})\n\
             beta         = {} + {}i  (|beta| = {})\n\
             flux_defect  = {:.3e}\n\
             T0           = {}\n\
             theta0       = {}\n\
             theta_bound  = {}\n\
             T_lower      = {}\n\
             T_upper      = {}{}\n\
             alpha_upper  = {}\n\
             alpha_lower  = {}\n\
             sandwich_ok  = {}\n",
            fmt_f64(energy),
            fmt_f64(exact.t),
            fmt_f64(exact.r),
            fmt_f64(exact.alpha.re),
            fmt_f64(exact.alpha.im),
            fmt_f64(exact.alpha.norm()),
            fmt_f64(exact.beta.re),
            fmt_f64(exact.beta.im),
            fmt_f64(exact.beta.norm()),
            exact.flux_defect(),
            fmt_f64(comparison.t0),
            fmt_f64(report.theta0),
            fmt_f64(tb),
            fmt_f64(report.t_lower),
            fmt_f64(report.t_upper),
            if report.upper_valid { "" } else { "  (trivial)" },
            fmt_f64(report.alpha_upper),
            fmt_f64(report.alpha_lower),
            sandwich_ok,
        ))
    })();

    match detail {
        Ok(text) => {
            let (mut out, _) = match open_output(opts, config) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_NUMERICAL;
                }
            };
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_NUMERICAL;
            }
            if text.contains("sandwich_ok  = false") {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_bounds(opts: &CommonOpts, config: &ScenarioConfig) -> u8 {
    let run = (|| -> scatterbound::Result<String> {
        let energies = config.energies.expand()?;
        let mut text = String::from("E,T0,theta0,theta_bound,T_lower,T_upper,upper_valid,alpha_upper,alpha_lower\n");
        for &energy in &energies {
            let comparison = config.comparison.build(energy)?;
            let tb = theta_bound(&config.potential, &comparison, energy, config.quad_tol)?;
            let report = bogoliubov_bounds(tb, &comparison);
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                fmt_f64(energy),
                fmt_f64(comparison.t0),
                fmt_f64(report.theta0),
                fmt_f64(tb),
                fmt_f64(report.t_lower),
                fmt_f64(report.t_upper),
                report.upper_valid,
                fmt_f64(report.alpha_upper),
                fmt_f64(report.alpha_lower),
            ));
        }
        Ok(text)
    })();

    match run {
        Ok(text) => {
            let (mut out, _) = match open_output(opts, config) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_NUMERICAL;
                }
            };
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_NUMERICAL;
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_perturb(opts: &CommonOpts, config: &ScenarioConfig) -> u8 {
    let rows = match run_perturb(config) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let (mut out, format) = match open_output(opts, config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERICAL;
        }
    };
    let written = match format {
        OutputFormat::Csv => write_perturb_csv(&mut out, &rows),
        OutputFormat::Json => runner::write_json(&mut out, &rows),
    };
    if let Err(e) = written.and_then(|_| out.flush().map_err(Error::from)) {
        eprintln!("error: {e}");
        return EXIT_NUMERICAL;
    }
    if rows.iter().any(|r| !r.ok()) {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    }
}

fn cmd_verify(quiet: bool) -> u8 {
    let outcomes = verify::run_all();
    let mut all_passed = true;
    let mut any_error = false;
    for o in &outcomes {
        all_passed &= o.passed;
        any_error |= o.detail.starts_with("error:");
        if !quiet {
            println!(
                "criterion {} [{}] {} — {}",
                o.id,
                if o.passed { "PASS" } else { "FAIL" },
                o.label,
                o.detail
            );
        }
    }
    if !quiet {
        println!(
            "{}/{} criteria passed",
            outcomes.iter().filter(|o| o.passed).count(),
            outcomes.len()
        );
    }
    if all_passed {
        EXIT_OK
    } else if any_error {
        EXIT_NUMERICAL
    } else {
        EXIT_VIOLATION
    }
}
