//! Command-line front end: parameter sweeps, CFW curves, cumulant tables,
//! exact-diagonalization runs, and Fock-oracle comparisons.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;

use workquench::ed::{cfw_ed, work_distribution, ChainSpec};
use workquench::fock::gq_oracle;
use workquench::io::{fmt17, write_csv};
use workquench::luttinger::{luttinger_params, solve_mode, ModeSolverOptions};
use workquench::workstats::{
    cfw_ground, cfw_thermal, cumulant_integrals_ground, cumulants_thermal,
    fit_scaling, gq_mode_factor, CfwCurve, ModeSet, ModeSource, ScalingFit,
};
use workquench::{alpha_preset, Beta, QuenchProtocol, WqError};

#[derive(Parser)]
#[command(name = "workquench", version, about = "Work statistics of finite-rate quenches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Luttinger parameters v/J and K for a given anisotropy.
    Params {
        /// Anisotropy Delta, must lie in (-1, 1].
        delta: f64,
    },
    /// Solve Bogoliubov modes on a q-grid and write them as CSV.
    Modes(Run),
    /// Write the characteristic function of work G(u) as CSV.
    Cfw(Run),
    /// Compute work cumulants and print them as JSON.
    Cumulants(Run),
    /// Sweep tau_Q, fit scaling exponents, write CSV + JSON.
    Sweep(Run),
    /// Exact diagonalization: write the work distribution as CSV.
    Ed(Run),
    /// Compare the analytic per-mode factor against the Fock-space oracle.
    Oracle(Run),
}

#[derive(Args, Clone)]
struct Run {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (CSV or JSON depending on the command); default stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Curve source.
    #[arg(long, value_parser = ["analytic", "ed"])]
    source: Option<String>,
    /// Worker threads for sweeps.
    #[arg(long)]
    workers: Option<usize>,
    /// UV cutoff alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Chain length N (even).
    #[arg(long)]
    n: Option<usize>,
    /// Inverse temperature (a float, or "inf" for the ground state).
    #[arg(long)]
    beta: Option<String>,
}

/// One JSON document per run; every field optional, flags win.
#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    j: Option<f64>,
    delta_f: Option<f64>,
    tau_q: Option<f64>,
    beta: Option<serde_json::Value>,
    n: Option<usize>,
    alpha: Option<f64>,
    source: Option<String>,
    workers: Option<usize>,
    out: Option<String>,
    /// u-grid spec for `cfw`.
    u_min: Option<f64>,
    u_max: Option<f64>,
    u_points: Option<usize>,
    /// q-grid spec for `modes`.
    q_min: Option<f64>,
    q_max: Option<f64>,
    q_points: Option<usize>,
    /// tau_Q sweep spec for `sweep`.
    tau_min: Option<f64>,
    tau_max: Option<f64>,
    tau_points: Option<usize>,
    log_spaced: Option<bool>,
    /// "fast" (renormalize by the sudden values) or "slow" (by the plateau).
    branch: Option<String>,
    /// Oracle grid.
    oracle_q: Option<Vec<f64>>,
    oracle_u: Option<Vec<f64>>,
    oracle_beta: Option<Vec<f64>>,
    n_max: Option<usize>,
    tolerance: Option<f64>,
}

struct Resolved {
    protocol: QuenchProtocol,
    n: usize,
    alpha: f64,
    source: String,
    out: Option<PathBuf>,
    cfg: RunConfig,
}

fn parse_beta(text: &str) -> Result<Beta, WqError> {
    if text.eq_ignore_ascii_case("inf") {
        return Ok(Beta::Infinite);
    }
    let b: f64 = text
        .parse()
        .map_err(|_| WqError::Domain(format!("cannot parse beta from {text:?}")))?;
    Ok(Beta::Finite(b))
}

fn resolve(run: &Run) -> Result<Resolved, WqError> {
    let cfg: RunConfig = match &run.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| WqError::Domain(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| WqError::Domain(format!("bad config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    let beta = match (&run.beta, &cfg.beta) {
        (Some(text), _) => parse_beta(text)?,
        (None, Some(serde_json::Value::String(s))) => parse_beta(s)?,
        (None, Some(serde_json::Value::Number(x))) => Beta::Finite(
            x.as_f64()
                .ok_or_else(|| WqError::Domain("bad beta in config".into()))?,
        ),
        (None, Some(other)) => {
            return Err(WqError::Domain(format!("bad beta in config: {other}")))
        }
        (None, None) => Beta::Infinite,
    };
    let protocol = QuenchProtocol::new(
        cfg.j.unwrap_or(1.0),
        cfg.delta_f.unwrap_or(0.1),
        cfg.tau_q.unwrap_or(10.0),
        beta,
    )?;
    let n = run.n.or(cfg.n).unwrap_or(12);
    let alpha = run.alpha.or(cfg.alpha).unwrap_or_else(|| alpha_preset(n).unwrap_or(workquench::ALPHA_DEFAULT));
    let source = run
        .source
        .clone()
        .or_else(|| cfg.source.clone())
        .unwrap_or_else(|| "analytic".into());
    if source != "analytic" && source != "ed" {
        return Err(WqError::Domain(format!("unknown source {source:?}")));
    }
    let out = run
        .out
        .clone()
        .or_else(|| cfg.out.as_ref().map(PathBuf::from));
    if let Some(w) = run.workers.or(cfg.workers) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .ok();
    }
    Ok(Resolved {
        protocol,
        n,
        alpha,
        source,
        out,
        cfg,
    })
}

fn emit_csv(out: &Option<PathBuf>, header: &[&str], rows: &[Vec<f64>]) -> Result<(), WqError> {
    match out {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| WqError::Domain(format!("cannot create {}: {e}", path.display())))?;
            workquench::io::write_csv(BufWriter::new(f), header, rows)
        }
        None => write_csv(std::io::stdout().lock(), header, rows),
    }
}

fn emit_text(out: &Option<PathBuf>, text: &str) -> Result<(), WqError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| WqError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn linspace(a: f64, b: f64, points: usize, log: bool) -> Result<Vec<f64>, WqError> {
    if points < 2 || !(b > a) {
        return Err(WqError::Domain("degenerate grid spec".into()));
    }
    let out = (0..points)
        .map(|k| {
            let t = k as f64 / (points - 1) as f64;
            if log {
                (a.ln() + t * (b.ln() - a.ln())).exp()
            } else {
                a + t * (b - a)
            }
        })
        .collect();
    Ok(out)
}

fn curve_rows(curve: &CfwCurve) -> Vec<Vec<f64>> {
    curve
        .u_grid
        .iter()
        .zip(&curve.values)
        .map(|(&u, g)| vec![u, g.re, g.im])
        .collect()
}

fn cmd_params(delta: f64) -> Result<(), WqError> {
    let lp = luttinger_params(1.0, delta)?;
    println!("v/J={} K={}", fmt17(lp.v), fmt17(lp.k));
    Ok(())
}

fn cmd_modes(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let q_grid = linspace(
        r.cfg.q_min.unwrap_or(0.05),
        r.cfg.q_max.unwrap_or(std::f64::consts::PI),
        r.cfg.q_points.unwrap_or(64),
        false,
    )?;
    let opts = ModeSolverOptions::default();
    let rows: Vec<Vec<f64>> = q_grid
        .par_iter()
        .map(|&q| {
            let m = solve_mode(q, &r.protocol, &opts)?;
            Ok(vec![
                q, m.x1.re, m.x1.im, m.x2.re, m.x2.im, m.y1.re, m.y1.im, m.y2.re, m.y2.im, m.p_q,
            ])
        })
        .collect::<Result<_, WqError>>()?;
    emit_csv(
        &r.out,
        &[
            "q", "re_x1", "im_x1", "re_x2", "im_x2", "re_y1", "im_y1", "re_y2", "im_y2", "p_q",
        ],
        &rows,
    )
}

fn analytic_cfw(r: &Resolved, u_grid: &[f64]) -> Result<CfwCurve, WqError> {
    let source = ModeSource::Ode(ModeSolverOptions::default());
    if r.protocol.beta.is_finite() {
        cfw_thermal(u_grid, &r.protocol, r.n, r.alpha, &source, ModeSet::Continuum)
    } else {
        cfw_ground(u_grid, &r.protocol, r.n, r.alpha, &source, ModeSet::Continuum)
    }
}

fn cmd_cfw(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let u_grid = linspace(
        r.cfg.u_min.unwrap_or(-2.0 / r.protocol.j),
        r.cfg.u_max.unwrap_or(2.0 / r.protocol.j),
        r.cfg.u_points.unwrap_or(201),
        false,
    )?;
    let curve = if r.source == "ed" {
        cfw_ed(ChainSpec::zero_sector(r.n)?, &r.protocol, &u_grid)?
    } else {
        analytic_cfw(&r, &u_grid)?
    };
    emit_csv(&r.out, &["u", "re_g", "im_g"], &curve_rows(&curve))
}

fn fit_json(fit: &ScalingFit) -> serde_json::Value {
    serde_json::json!({
        "exponent": fit.exponent,
        "log_correction": fit.log_correction,
        "r_squared": fit.r_squared,
        "window": [fit.window.0, fit.window.1],
    })
}

fn cumulants_for(r: &Resolved, tau_q: f64) -> Result<Vec<f64>, WqError> {
    let p = QuenchProtocol::new(r.protocol.j, r.protocol.delta_f, tau_q, r.protocol.beta)?;
    if r.source == "ed" {
        let wd = work_distribution(ChainSpec::zero_sector(r.n)?, &p)?;
        Ok(wd.cumulants(3).kappas)
    } else if p.beta.is_finite() {
        Ok(cumulants_thermal(&p, r.alpha, r.n, &ModeSource::Ode(ModeSolverOptions::default()))?.kappas)
    } else {
        Ok(cumulant_integrals_ground(&p, r.alpha, r.n)?.kappas)
    }
}

fn cmd_cumulants(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let kappas = cumulants_for(&r, r.protocol.tau_q)?;
    let text = serde_json::json!({
        "source": r.source,
        "n": r.n,
        "alpha": r.alpha,
        "tau_q": r.protocol.tau_q,
        "kappas": kappas,
    });
    emit_text(&r.out, &serde_json::to_string_pretty(&text).unwrap())
}

fn cmd_sweep(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let taus = linspace(
        r.cfg.tau_min.unwrap_or(10.0 / r.protocol.j),
        r.cfg.tau_max.unwrap_or(1000.0 / r.protocol.j),
        r.cfg.tau_points.unwrap_or(13),
        r.cfg.log_spaced.unwrap_or(true),
    )?;
    if taus.last().unwrap() / taus[0] < 10.0 {
        return Err(WqError::Domain("sweep must span at least one decade".into()));
    }
    let branch = r.cfg.branch.clone().unwrap_or_else(|| "slow".into());
    // reference values the cumulants are renormalized against
    let reference: Vec<f64> = match branch.as_str() {
        "fast" => cumulants_for(&r, 0.0)?,
        "slow" => {
            if r.source == "ed" {
                let h = workquench::ed::build_sector(ChainSpec::zero_sector(r.n)?, r.protocol.j)?;
                let (e0, _) = workquench::ed::ground_state(&h, 0.0)?;
                let (ef, _) = workquench::ed::ground_state(&h, r.protocol.delta_f)?;
                vec![ef - e0, 0.0, 0.0]
            } else {
                let mu = workquench::workstats::mu_cutoff(&r.protocol, r.alpha)?;
                vec![r.n as f64 * mu, 0.0, 0.0]
            }
        }
        other => return Err(WqError::Domain(format!("unknown branch {other:?}"))),
    };
    let table: Vec<Vec<f64>> = taus
        .par_iter()
        .map(|&tau| {
            let k = cumulants_for(&r, tau)?;
            Ok(vec![
                tau,
                k[0],
                k[1],
                k[2],
                (k[0] - reference[0]).abs(),
                (k[1] - reference[1]).abs(),
                (k[2] - reference[2]).abs(),
            ])
        })
        .collect::<Result<_, WqError>>()?;
    emit_csv(
        &r.out,
        &["tau_q", "kappa1", "kappa2", "kappa3", "res1", "res2", "res3"],
        &table,
    )?;
    let mut fits = serde_json::Map::new();
    for (i, name) in ["kappa1", "kappa2", "kappa3"].iter().enumerate() {
        let pts: Vec<(f64, f64)> = table.iter().map(|row| (row[0], row[4 + i])).collect();
        match fit_scaling(&pts, true) {
            Ok(fit) => fits.insert(name.to_string(), fit_json(&fit)),
            Err(e) => fits.insert(name.to_string(), serde_json::json!({"error": e.to_string()})),
        };
    }
    let report = serde_json::json!({
        "source": r.source, "branch": branch, "n": r.n, "alpha": r.alpha, "fits": fits,
    });
    let text = serde_json::to_string_pretty(&report).unwrap();
    match &r.out {
        Some(path) => {
            let mut fit_path = path.clone();
            fit_path.set_extension("fits.json");
            std::fs::write(&fit_path, text)
                .map_err(|e| WqError::Domain(format!("cannot write fits: {e}")))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_ed(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let wd = work_distribution(ChainSpec::zero_sector(r.n)?, &r.protocol)?;
    let rows: Vec<Vec<f64>> = wd.entries.iter().map(|&(w, p)| vec![w, p]).collect();
    emit_csv(&r.out, &["w", "prob"], &rows)
}

fn cmd_oracle(run: &Run) -> Result<(), WqError> {
    let r = resolve(run)?;
    let qs = r.cfg.oracle_q.clone().unwrap_or_else(|| vec![0.4, 0.8, 1.6]);
    let us = r.cfg.oracle_u.clone().unwrap_or_else(|| vec![0.0, 0.7, 1.4]);
    let betas = r
        .cfg
        .oracle_beta
        .clone()
        .unwrap_or_else(|| vec![1.5, 2.5, 4.0]);
    let n_max = r.cfg.n_max.unwrap_or(32);
    let tol = r.cfg.tolerance.unwrap_or(1e-6);
    let opts = ModeSolverOptions::default();
    let v_tau = luttinger_params(r.protocol.j, r.protocol.delta_f)?.v;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for &q in &qs {
        let mode = solve_mode(q, &r.protocol, &opts)?;
        for &beta in &betas {
            let p = QuenchProtocol::new(
                r.protocol.j,
                r.protocol.delta_f,
                r.protocol.tau_q,
                Beta::Finite(beta / (r.protocol.j * q)),
            )?;
            for &u in &us {
                let got = gq_oracle(q, &p, &mode, u, n_max)?;
                let want = gq_mode_factor(
                    q,
                    Complex64::new(u, 0.0),
                    mode.p_q,
                    v_tau,
                    r.protocol.j,
                    beta / (r.protocol.j * q),
                )?;
                let dev = (got - want).norm() / want.norm().max(1e-300);
                worst = worst.max(dev);
                rows.push(vec![q, u, beta, dev]);
            }
        }
    }
    emit_csv(&r.out, &["q", "u", "beta_eps", "rel_dev"], &rows)?;
    eprintln!("max relative deviation: {worst:.3e} (tolerance {tol:.1e})");
    if worst > tol {
        return Err(WqError::Tolerance(format!(
            "oracle deviation {worst:.3e} exceeds {tol:.1e}"
        )));
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), WqError> {
    match cli.command {
        Command::Params { delta } => cmd_params(delta),
        Command::Modes(run) => cmd_modes(&run),
        Command::Cfw(run) => cmd_cfw(&run),
        Command::Cumulants(run) => cmd_cumulants(&run),
        Command::Sweep(run) => cmd_sweep(&run),
        Command::Ed(run) => cmd_ed(&run),
        Command::Oracle(run) => cmd_oracle(&run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ WqError::Domain(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
