//! Approximate eigenvalues of the doubling operator, the set `F(X)`, per-λ
//! classification of `τ_λ` and numerical probes on `E_X`.
//!
//! All arithmetic is done in the exponent coordinate `θ = log₂ λ`; `p = 1/θ`
//! only appears in rendered reports, with `θ = 0` shown as `p = ∞`.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::{IndexSet, WeightSeq};
use crate::shift::{geometric_window, squared_window, tau_lambda, Seq};
use crate::spaces::{ex_norm, SpaceSpec};

/// Two exponents closer than this are treated as equal.
pub const THETA_EQ_TOL: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::invalid("interval", format!("need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")));
        }
        Ok(ThetaInterval { lo, hi })
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo - THETA_EQ_TOL <= theta && theta <= self.hi + THETA_EQ_TOL
    }

    /// The corresponding closed `p`-interval `[1/hi, 1/lo]`.
    pub fn to_p(&self) -> PInterval {
        PInterval { lo: PValue::from_theta(self.hi), hi: PValue::from_theta(self.lo) }
    }
}

/// A value of `p ∈ [1, ∞]`: numeric value (`None` for `∞`) and a rendering
/// that shows small-denominator fractions exactly, e.g. `"4/3"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PValue {
    pub p: Option<f64>,
    pub text: String,
}

impl PValue {
    pub fn from_theta(theta: f64) -> Self {
        if theta <= 0.0 {
            return PValue { p: None, text: "∞".into() };
        }
        let p = 1.0 / theta;
        PValue { p: Some(p), text: render_fraction(p) }
    }
}

fn render_fraction(x: f64) -> String {
    for den in 1..=64u32 {
        let num = (x * den as f64).round();
        if num >= 1.0 && (x - num / den as f64).abs() <= 1e-9 * x {
            return if den == 1 { format!("{num}") } else { format!("{num}/{den}") };
        }
    }
    format!("{x}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PInterval {
    pub lo: PValue,
    pub hi: PValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `α∞ ≤ β⁰`: one interval `[α, β]`.
    #[serde(rename = "(i)")]
    Single,
    /// `α∞ > β⁰`: `[α, β⁰] ∪ [α∞, β]`.
    #[serde(rename = "(ii)")]
    Split,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Approximate eigenvalues `λ = 2^θ` of the doubling operator, in `θ`.
    pub eigen_set: Vec<ThetaInterval>,
    /// `F(X)` in `p = 1/θ`, one entry per `eigen_set` interval.
    pub frep_set: Vec<PInterval>,
    pub case_tag: Case,
    pub sufficient_only: bool,
    /// `|α∞ − β⁰|` is within twice the estimation error, so the case split
    /// itself is uncertain.
    pub split_uncertain: bool,
    pub assumes_fundamental_type: bool,
    pub source: IndexSet,
}

impl SpectrumReport {
    /// Whether `λ = 2^θ` lies in the eigenvalue set.
    pub fn contains_theta(&self, theta: f64) -> bool {
        self.eigen_set.iter().any(|iv| iv.contains(theta))
    }
}

fn assemble(ix: &IndexSet, sufficient_only: bool) -> Result<SpectrumReport> {
    ix.check()?;
    let (case_tag, eigen_set) = if ix.alpha_inf <= ix.beta0 {
        (Case::Single, vec![ThetaInterval::new(ix.alpha, ix.beta)?])
    } else {
        (
            Case::Split,
            vec![ThetaInterval::new(ix.alpha, ix.beta0)?, ThetaInterval::new(ix.alpha_inf, ix.beta)?],
        )
    };
    let err = ix.meta.as_ref().map_or(0.0, |m| m.error_estimate);
    // p-intervals listed in increasing p
    let frep_set = eigen_set.iter().rev().map(ThetaInterval::to_p).collect();
    Ok(SpectrumReport {
        eigen_set,
        frep_set,
        case_tag,
        sufficient_only,
        split_uncertain: (ix.alpha_inf - ix.beta0).abs() < 2.0 * err,
        assumes_fundamental_type: false,
        source: ix.clone(),
    })
}

/// The set of approximate eigenvalues, as one interval `[α, β]` when
/// `α∞ ≤ β⁰` and as `[α, β⁰] ∪ [α∞, β]` otherwise. Endpoints included.
pub fn approx_eigenvalue_set(ix: &IndexSet) -> Result<SpectrumReport> {
    assemble(ix, false)
}

/// `F(X)`: the eigenvalue set re-expressed in `p = 1/θ`. Same report as
/// [`approx_eigenvalue_set`]; provided under its own name for callers that
/// only care about the `p` side.
pub fn frep_set(ix: &IndexSet) -> Result<SpectrumReport> {
    assemble(ix, false)
}

/// Interval assembly from the dilation exponents of the fundamental function
/// alone. Without fundamental type this is only a sufficient set.
pub fn sufficient_set_general(ix_phi: &IndexSet) -> Result<SpectrumReport> {
    assemble(ix_phi, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Isomorphism onto `E`.
    IsoOnto,
    /// Isomorphism onto the codimension-one subspace `Σ λ^k a_k = 0`.
    IsoOntoCodim1,
    /// Onto but with a nontrivial kernel spanned by `(λ^{-n})`.
    SurjectiveNotInjective,
    /// Range not closed.
    NotClosed,
    /// `θ` equals one of the exponents: not an isomorphism and not closed.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaClass {
    pub lambda: f64,
    pub theta: f64,
    pub verdict: Verdict,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda", format!("must be a positive finite real, got {lambda}")))
    }
}

/// Classifies `τ_λ` on `E_X` from the position of `θ = log₂ λ` relative to
/// the six exponents.
pub fn classify_lambda(ix: &IndexSet, lambda: f64) -> Result<LambdaClass> {
    check_lambda(lambda)?;
    let theta = lambda.log2();
    let eq = |x: f64| (theta - x).abs() <= THETA_EQ_TOL;
    let verdict = if theta < ix.alpha - THETA_EQ_TOL || theta > ix.beta + THETA_EQ_TOL {
        Verdict::IsoOnto
    } else if ix.as_array().into_iter().any(eq) {
        Verdict::Boundary
    } else if ix.beta0 < theta && theta < ix.alpha_inf {
        Verdict::IsoOntoCodim1
    } else if ix.beta_inf < theta && theta < ix.alpha0 {
        Verdict::SurjectiveNotInjective
    } else {
        Verdict::NotClosed
    };
    Ok(LambdaClass { lambda, theta, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Geometric,
    /// `‖τ_λ a‖/‖a‖` for a squared window `a`.
    SquaredFirst,
    /// `‖τ_λ² a‖/‖τ_λ a‖` for a squared window `a`.
    SquaredSecond,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualPoint {
    pub n: u32,
    pub residual: f64,
    pub argmin_k: i64,
    pub construction: Construction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeMeta {
    pub k_range: (i64, i64),
    pub n_list: Vec<u32>,
    pub probe_count: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub lambda: f64,
    pub theta: f64,
    /// Smallest `‖τ_λ a‖_{E_X}/‖a‖_{E_X}` seen; an upper bound on the
    /// lower isomorphism constant.
    pub min_ratio: f64,
    /// Best approximate-eigenvector residual per window size, `n` increasing.
    pub residuals: Vec<ResidualPoint>,
    pub meta: ProbeMeta,
}

fn ratio(space: &SpaceSpec, num: &Seq, den: &Seq) -> f64 {
    let d = ex_norm(space, den);
    if d == 0.0 {
        return f64::INFINITY;
    }
    ex_norm(space, num) / d
}

/// Best (ratio, construction) for windows of size `n` at `k` built with `mu`,
/// measured against `τ_λ`.
fn window_ratios(space: &SpaceSpec, lambda: f64, mu: f64, k: i64, n: u32) -> Result<(f64, Construction)> {
    let g = geometric_window(mu, k, n);
    let mut best = (ratio(space, &tau_lambda(&g, lambda)?, &g), Construction::Geometric);
    let a = squared_window(mu, k, n);
    let once = tau_lambda(&a, lambda)?;
    let twice = tau_lambda(&once, lambda)?;
    for (r, c) in [
        (ratio(space, &once, &a), Construction::SquaredFirst),
        (ratio(space, &twice, &once), Construction::SquaredSecond),
    ] {
        if r < best.0 {
            best = (r, c);
        }
    }
    Ok(best)
}

/// For each `n`, the smallest `‖τ_λ a‖/‖a‖` over `k ∈ k_search` and over the
/// geometric and squared windows built at `λ` (the squared window counts with
/// the smaller of its first- and second-step ratios). Ties keep the first `k`.
pub fn residual_curve(
    space: &SpaceSpec,
    lambda: f64,
    n_list: &[u32],
    k_search: RangeInclusive<i64>,
) -> Result<ProbeResult> {
    check_lambda(lambda)?;
    if k_search.is_empty() {
        return Err(Error::invalid("k_search", "empty search range"));
    }
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.first() == Some(&0) {
        return Err(Error::invalid("n_list", "window sizes must be positive"));
    }
    let mut residuals = Vec::with_capacity(ns.len());
    for &n in &ns {
        let mut best = ResidualPoint { n, residual: f64::INFINITY, argmin_k: *k_search.start(), construction: Construction::Geometric };
        for k in k_search.clone() {
            let (r, c) = window_ratios(space, lambda, lambda, k, n)?;
            if r < best.residual {
                best = ResidualPoint { n, residual: r, argmin_k: k, construction: c };
            }
        }
        residuals.push(best);
    }
    let min_ratio = residuals.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
    Ok(ProbeResult {
        lambda,
        theta: lambda.log2(),
        min_ratio,
        residuals,
        meta: ProbeMeta {
            k_range: (*k_search.start(), *k_search.end()),
            probe_count: ns.len() * (k_search.end() - k_search.start() + 1) as usize * 3,
            n_list: ns,
            seed: None,
        },
    })
}

/// Probe suite for [`probe_lower_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub k_range: (i64, i64),
    pub n_list: Vec<u32>,
    /// Additional window parameters `λ'`, typically `2^α` and `2^β`.
    pub extra_lambdas: Vec<f64>,
    pub n_random: usize,
    pub random_max_len: usize,
    pub seed: u64,
}

impl ProbeConfig {
    /// Defaults: `k ∈ [−128, 128]`, `n ∈ {8, 16, 32, 64}`, 200 random
    /// sequences of length ≤ 32, seed `0x5EED`, windows also at `2^α`, `2^β`.
    pub fn standard(ix: &IndexSet) -> Self {
        ProbeConfig {
            k_range: (-128, 128),
            n_list: vec![8, 16, 32, 64],
            extra_lambdas: vec![ix.alpha.exp2(), ix.beta.exp2()],
            n_random: 200,
            random_max_len: 32,
            seed: DEFAULT_SEED,
        }
    }
}

/// Seeded random finite sequences supported in `k_range`. Depends only on
/// the configuration, so every λ sees the identical suite.
pub fn random_probes(cfg: &ProbeConfig) -> Vec<Seq> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.k_range;
    let width = (hi - lo + 1).max(1) as usize;
    let max_len = cfg.random_max_len.clamp(1, width);
    (0..cfg.n_random)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let start = lo + rng.gen_range(0..=(width - len)) as i64;
            let vals: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            Seq::from_slice(start, &vals)
        })
        .collect()
}

/// Minimum of `‖τ_λ a‖/‖a‖` over unit vectors, geometric and squared windows
/// at `λ` and at each extra `λ'`, and the seeded random sequences. The result
/// only upper-bounds the true lower constant and is meant for comparisons.
/// `residuals` carries the [`residual_curve`] at `λ` over the same range.
pub fn probe_lower_bound(space: &SpaceSpec, lambda: f64, cfg: &ProbeConfig) -> Result<ProbeResult> {
    check_lambda(lambda)?;
    let (k_lo, k_hi) = cfg.k_range;
    let curve = residual_curve(space, lambda, &cfg.n_list, k_lo..=k_hi)?;
    let mut min_ratio = curve.min_ratio;
    let mut count = curve.meta.probe_count;

    for k in k_lo..=k_hi {
        let e = Seq::unit(k);
        min_ratio = min_ratio.min(ratio(space, &tau_lambda(&e, lambda)?, &e));
        count += 1;
    }
    for &mu in &cfg.extra_lambdas {
        check_lambda(mu)?;
        if (mu - lambda).abs() <= f64::EPSILON * lambda {
            continue;
        }
        for &n in &curve.meta.n_list {
            for k in k_lo..=k_hi {
                min_ratio = min_ratio.min(window_ratios(space, lambda, mu, k, n)?.0);
                count += 3;
            }
        }
    }
    for a in random_probes(cfg) {
        min_ratio = min_ratio.min(ratio(space, &tau_lambda(&a, lambda)?, &a));
        count += 1;
    }
    Ok(ProbeResult {
        min_ratio,
        meta: ProbeMeta { probe_count: count, seed: Some(cfg.seed), ..curve.meta.clone() },
        ..curve
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalBound {
    pub converged: bool,
    pub partial: f64,
    pub last_increment: f64,
    /// Per-step geometric decay rates of the terms on the positive and
    /// negative side, measured between `|k| = M/2` and `|k| = M`.
    pub decay_rates: (f64, f64),
}

/// Largest per-step decay rate still counted as geometric decay.
pub const GEOMETRIC_DECAY_MAX: f64 = 0.999;

/// Partial sums of `Σ_{|k|≤M} λ^k / s_k`, which is finite exactly when the
/// functional `(λ^k)` is bounded on the lattice. Convergence is declared when
/// the last increment is below `1e−9` of the partial sum, or when the terms on
/// both sides decay at a geometric rate `≤ GEOMETRIC_DECAY_MAX` per step.
pub fn functional_bound_test(w: &WeightSeq, lambda: f64, m: u32) -> Result<FunctionalBound> {
    check_lambda(lambda)?;
    let m = m as i64;
    if m < 2 || -m < w.k_min || m > w.k_max {
        return Err(Error::Window(format!("M={m} outside weight window [{}, {}]", w.k_min, w.k_max)));
    }
    let term = |k: i64| lambda.powf(k as f64) / w.get(k);
    let partial: f64 = (-m..=m).map(term).sum();
    let last_increment = term(m) + term(-m);
    let half = m / 2;
    let rate = |far: f64, near: f64| (far / near).powf(1.0 / (m - half) as f64);
    let decay_rates = (rate(term(m), term(half)), rate(term(-m), term(-half)));
    let converged = last_increment <= 1e-9 * partial
        || (decay_rates.0 <= GEOMETRIC_DECAY_MAX && decay_rates.1 <= GEOMETRIC_DECAY_MAX);
    Ok(FunctionalBound { converged, partial, last_increment, decay_rates })
}

/// `|Σ λ^k (τ_λ a)_k| / max(1, Σ λ^k |a_k|)`; vanishes up to rounding since
/// the range of `τ_λ` lies in the kernel of `(λ^k)`.
pub fn range_identity_check(a: &Seq, lambda: f64) -> Result<f64> {
    let img = tau_lambda(a, lambda)?;
    let s: f64 = img.iter().map(|(k, v)| lambda.powf(k as f64) * v).sum();
    let scale: f64 = a.iter().map(|(k, v)| lambda.powf(k as f64) * v.abs()).sum();
    Ok(s.abs() / scale.max(1.0))
}

/// `‖Σ_{|n|≤M} λ^{-n} e_n‖_{E_X}` for each `M`: partial norms of the kernel
/// candidate `(λ^{-n})_{n∈ℤ}`.
pub fn kernel_witness_norms(space: &SpaceSpec, lambda: f64, ms: &[u32]) -> Result<Vec<(u32, f64)>> {
    check_lambda(lambda)?;
    Ok(ms
        .iter()
        .map(|&m| {
            let m_i = m as i64;
            let a = Seq::from_pairs((-m_i..=m_i).map(|n| (n, lambda.powf(-(n as f64)))));
            (m, ex_norm(space, &a))
        })
        .collect())
}
