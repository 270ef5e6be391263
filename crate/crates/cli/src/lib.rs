//! Command implementations behind the `ri` binary. Each command is a pure
//! function of the [`RunConfig`] and returns the text it would emit.

pub mod config;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use ri_core::indices::{analytic_indices, estimate_indices, weights};
use ri_core::spectra::{self, classify_lambda, probe_lower_bound, residual_curve, LambdaClass, ProbeConfig, ProbeResult};
use ri_core::witness::{best_window_position, build_witness, distortion, standard_probes};
use ri_core::shift::right_inverse_t;
use ri_core::{FnSpec, IndexSet, Seq, SpectrumReport};

pub use config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ri_core::Error> for CliError {
    fn from(e: ri_core::Error) -> Self {
        match e {
            ri_core::Error::Invalid { .. } | ri_core::Error::Window(_) => CliError::Config(e.to_string()),
            ri_core::Error::Divergence(_) | ri_core::Error::Numerical(_) => CliError::Numerical(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

pub fn estimated_indices(cfg: &RunConfig) -> Result<IndexSet> {
    let w = weights(&cfg.space, -cfg.k_radius, cfg.k_radius)?;
    Ok(estimate_indices(&w, cfg.n_max)?)
}

fn delta(est: &IndexSet, ana: &IndexSet) -> Value {
    let names = ["alpha", "beta", "alpha0", "beta0", "alphaInf", "betaInf"];
    let mut m = serde_json::Map::new();
    for (name, (e, a)) in names.iter().zip(est.as_array().iter().zip(ana.as_array())) {
        m.insert((*name).into(), json!(e - a));
    }
    m.insert("max_abs".into(), json!(est.max_abs_diff(ana)));
    Value::Object(m)
}

fn indices_value(cfg: &RunConfig) -> Result<(IndexSet, Value)> {
    let est = estimated_indices(cfg)?;
    let ana = analytic_indices(&cfg.space);
    let value = json!({
        "estimated": est,
        "analytic": ana,
        "delta": ana.as_ref().map(|a| delta(&est, a)),
    });
    Ok((est, value))
}

/// `indices`: estimated exponents, closed forms when available, and deltas.
pub fn cmd_indices(cfg: &RunConfig) -> Result<String> {
    let (_, mut v) = indices_value(cfg)?;
    v["config"] = json!(cfg);
    Ok(to_json(&v))
}

pub fn spectrum_report(cfg: &RunConfig, ix: &IndexSet) -> Result<SpectrumReport> {
    let mut report = spectra::approx_eigenvalue_set(ix)?;
    report.assumes_fundamental_type = matches!(cfg.space.generator(), FnSpec::Table { .. });
    Ok(report)
}

fn classification(cfg: &RunConfig, ix: &IndexSet) -> Result<Vec<LambdaClass>> {
    cfg.lambdas()
        .into_iter()
        .map(|l| classify_lambda(ix, l).map_err(CliError::from))
        .collect()
}

/// `spectrum`: eigenvalue set in `θ`, `F(X)` in `p`, and the per-λ verdicts.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<String> {
    let (est, idx) = indices_value(cfg)?;
    let report = spectrum_report(cfg, &est)?;
    Ok(to_json(&json!({
        "config": cfg,
        "indices": idx,
        "spectrum": report,
        "classification": classification(cfg, &est)?,
    })))
}

fn probe_config(cfg: &RunConfig, ix: &IndexSet) -> ProbeConfig {
    ProbeConfig {
        k_range: cfg.probe_range(),
        n_list: cfg.probe.n_list.clone(),
        n_random: cfg.probe.n_random,
        seed: cfg.seed,
        ..ProbeConfig::standard(ix)
    }
}

pub fn probe_results(cfg: &RunConfig) -> Result<Vec<ProbeResult>> {
    let ix = estimated_indices(cfg)?;
    let pc = probe_config(cfg, &ix);
    cfg.lambdas()
        .into_iter()
        .map(|l| probe_lower_bound(&cfg.space, l, &pc).map_err(CliError::from))
        .collect()
}

pub const PROBE_HEADER: &str = "lambda,theta,min_ratio,n,residual,argmin_k";

/// `probe`: one CSV row per `(λ, n)`.
pub fn cmd_probe(cfg: &RunConfig) -> Result<String> {
    let mut out = String::from(PROBE_HEADER);
    out.push('\n');
    for r in probe_results(cfg)? {
        for p in &r.residuals {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.lambda, r.theta, r.min_ratio, p.n, p.residual, p.argmin_k);
        }
    }
    Ok(out)
}

pub const RESIDUALS_HEADER: &str = "lambda,theta,n,residual,argmin_k,construction";

/// `residuals`: approximate-eigenvector residual curves only.
pub fn cmd_residuals(cfg: &RunConfig) -> Result<String> {
    let (lo, hi) = cfg.probe_range();
    let mut out = String::from(RESIDUALS_HEADER);
    out.push('\n');
    for l in cfg.lambdas() {
        let r = residual_curve(&cfg.space, l, &cfg.probe.n_list, lo..=hi)?;
        for p in &r.residuals {
            let c = serde_json::to_value(p.construction).expect("enum serializes");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.lambda,
                r.theta,
                p.n,
                p.residual,
                p.argmin_k,
                c.as_str().unwrap_or_default()
            );
        }
    }
    Ok(out)
}

fn witness_value(cfg: &RunConfig) -> Result<Option<Value>> {
    let Some(w) = &cfg.witness else {
        return Ok(None);
    };
    let lambda = w.theta.exp2();
    let probes = standard_probes(w.n_copies, w.theta, w.n_random, cfg.seed);
    let mut rows = Vec::new();
    for &window_n in &w.windows {
        let k = match w.k {
            Some(k) => k,
            None => best_window_position(&cfg.space, lambda, window_n, cfg.probe_range())?,
        };
        let fam = build_witness(&cfg.space, lambda, w.n_copies, window_n, k)?;
        rows.push(json!({
            "window_n": window_n,
            "k": k,
            "base_atoms": fam.base.atoms().len(),
            "distortion": distortion(&fam, &probes)?,
        }));
    }
    Ok(Some(json!({
        "theta": w.theta,
        "p": spectra::PValue::from_theta(w.theta),
        "lambda": lambda,
        "n_copies": w.n_copies,
        "probe_count": probes.len(),
        "distortion_table": rows,
    })))
}

/// `witness`: distortion of the disjoint family for each window size.
pub fn cmd_witness(cfg: &RunConfig) -> Result<String> {
    let Some(v) = witness_value(cfg)? else {
        return Err(CliError::Config("invalid `witness`: section required for this command".into()));
    };
    Ok(to_json(&json!({ "config": cfg, "witness": v })))
}

/// Whether the right inverse `T` converges on `e_0` at each grid point.
fn right_inverse_rows(cfg: &RunConfig) -> Result<Vec<Value>> {
    let e0 = Seq::unit(0);
    cfg.lambdas()
        .into_iter()
        .map(|l| match right_inverse_t(&e0, l, cfg.probe.t_tol, &cfg.space) {
            Ok(t) => Ok(json!({
                "lambda": l,
                "converged": true,
                "window": t.window,
                "tail_bound": t.tail_bound,
            })),
            Err(ri_core::Error::Divergence(msg)) => Ok(json!({ "lambda": l, "converged": false, "reason": msg })),
            Err(e) => Err(e.into()),
        })
        .collect()
}

/// `report`: every pipeline in one JSON document.
pub fn cmd_report(cfg: &RunConfig) -> Result<String> {
    let (est, idx) = indices_value(cfg)?;
    Ok(to_json(&json!({
        "config": cfg,
        "indices": idx,
        "spectrum": spectrum_report(cfg, &est)?,
        "classification": classification(cfg, &est)?,
        "probes": probe_results(cfg)?,
        "right_inverse": right_inverse_rows(cfg)?,
        "witness": witness_value(cfg)?,
    })))
}
