//! Families of pairwise-disjoint equimeasurable functions and their `ℓ^p`
//! distortion.
//!
//! Members share one base distribution and disjointness is handled at the
//! distribution level through [`disjoint_sum`], so supports are never
//! positioned explicitly. The base is the approximate eigenvector profile
//! `S(Σ_{j≤n} λ^{-j} e_{k+j})` at `λ = 2^{1/p}`; this is a heuristic choice
//! and measured distortions are lower bounds, not certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{disjoint_sum, embed_s, Distribution};
use crate::shift::{geometric_window, tau_lambda};
use crate::spaces::{ex_norm, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFamily {
    pub space: SpaceSpec,
    /// Common distribution of every member, normalized to unit norm.
    pub base: Distribution,
    pub n_copies: usize,
    /// `θ = 1/p`; zero stands for `p = ∞`.
    pub theta: f64,
    pub lambda: f64,
    pub window_n: u32,
    pub k: i64,
}

/// Builds the family for `p = 1/log₂ λ` from a geometric window at `k`.
pub fn build_witness(space: &SpaceSpec, lambda: f64, n_copies: usize, window_n: u32, k: i64) -> Result<WitnessFamily> {
    if !(lambda.is_finite() && (1.0..=2.0).contains(&lambda)) {
        return Err(Error::invalid("lambda", format!("must lie in [1, 2] so that 1/p is in [0, 1], got {lambda}")));
    }
    if n_copies == 0 {
        return Err(Error::invalid("n_copies", "must be positive"));
    }
    if window_n == 0 {
        return Err(Error::invalid("window_n", "must be positive"));
    }
    let step = embed_s(&geometric_window(lambda, k, window_n)).distribution();
    let norm = space.norm(&step);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Numerical(format!("base norm is {norm}")));
    }
    Ok(WitnessFamily {
        space: space.clone(),
        base: step.scaled(norm.recip()),
        n_copies,
        theta: lambda.log2().clamp(0.0, 1.0),
        lambda,
        window_n,
        k,
    })
}

/// The window position `k ∈ k_range` whose geometric window has the smallest
/// `‖τ_λ w‖/‖w‖`; ties keep the smallest `k`.
pub fn best_window_position(space: &SpaceSpec, lambda: f64, window_n: u32, k_range: (i64, i64)) -> Result<i64> {
    let mut best = (f64::INFINITY, k_range.0);
    for k in k_range.0..=k_range.1 {
        let w = geometric_window(lambda, k, window_n);
        let r = ex_norm(space, &tau_lambda(&w, lambda)?) / ex_norm(space, &w);
        if r < best.0 {
            best = (r, k);
        }
    }
    Ok(best.1)
}

/// `‖a‖_p` with `p = 1/θ`; `θ = 0` is the max-norm.
pub fn lp_norm(a: &[f64], theta: f64) -> f64 {
    if theta == 0.0 {
        return a.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    let p = 1.0 / theta;
    a.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(theta)
}

/// `max over probes of max(R, 1/R)` with `R = ‖Σ a_i x_i‖_X / ‖a‖_p`. Zero
/// probes are skipped.
pub fn distortion(fam: &WitnessFamily, probes: &[Vec<f64>]) -> Result<f64> {
    let mut d = 1.0f64;
    for (i, a) in probes.iter().enumerate() {
        if a.len() != fam.n_copies {
            return Err(Error::invalid(
                "probe_coeffs",
                format!("probe {i} has length {}, family has {} copies", a.len(), fam.n_copies),
            ));
        }
        let lp = lp_norm(a, fam.theta);
        if lp == 0.0 {
            continue;
        }
        let r = fam.space.norm(&disjoint_sum(a, &fam.base)) / lp;
        d = d.max(r).max(r.recip());
    }
    Ok(d)
}

/// Unit vectors, all-ones, alternating signs, the geometric vector
/// `(2^{-j/p})_j`, and `n_random` seeded uniform vectors in `[−1, 1]`.
pub fn standard_probes(n_copies: usize, theta: f64, n_random: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut probes = Vec::with_capacity(n_copies + 3 + n_random);
    for i in 0..n_copies {
        let mut e = vec![0.0; n_copies];
        e[i] = 1.0;
        probes.push(e);
    }
    probes.push(vec![1.0; n_copies]);
    probes.push((0..n_copies).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect());
    probes.push((0..n_copies).map(|j| (-(j as f64) * theta).exp2()).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        probes.push((0..n_copies).map(|_| rng.gen_range(-1.0..1.0)).collect());
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::FnSpec;

    #[test]
    fn p_from_lambda() {
        let l2 = SpaceSpec::lorentz(2.0, FnSpec::PurePower { a: 1.0 }).unwrap();
        for (lambda, p) in [(2.0, 1.0), (0.5f64.exp2(), 2.0), (0.25f64.exp2(), 4.0)] {
            let fam = build_witness(&l2, lambda, 4, 3, 0).unwrap();
            assert!((1.0 / fam.theta - p).abs() < 1e-12);
        }
        let fam = build_witness(&l2, 1.0, 4, 3, 0).unwrap();
        assert_eq!(fam.theta, 0.0);
    }

    #[test]
    fn base_shape() {
        let l2 = SpaceSpec::lorentz(2.0, FnSpec::PurePower { a: 1.0 }).unwrap();
        for n in [1u32, 5, 17] {
            let fam = build_witness(&l2, 1.3, 2, n, -4).unwrap();
            assert_eq!(fam.base.atoms().len(), n as usize + 1);
            assert!((l2.norm(&fam.base) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let l2 = SpaceSpec::lorentz(2.0, FnSpec::PurePower { a: 1.0 }).unwrap();
        assert!(matches!(build_witness(&l2, 2.5, 4, 3, 0), Err(Error::Invalid { field: "lambda", .. })));
        assert!(build_witness(&l2, 0.5, 4, 3, 0).is_err());
        assert!(build_witness(&l2, 1.5, 0, 3, 0).is_err());
        let fam = build_witness(&l2, 1.5, 3, 3, 0).unwrap();
        assert!(matches!(distortion(&fam, &[vec![1.0, 2.0]]), Err(Error::Invalid { field: "probe_coeffs", .. })));
    }

    #[test]
    fn lp_norms() {
        assert_eq!(lp_norm(&[3.0, -4.0], 0.5), 5.0);
        assert_eq!(lp_norm(&[3.0, -4.0], 0.0), 4.0);
        assert_eq!(lp_norm(&[3.0, -4.0], 1.0), 7.0);
    }
}
