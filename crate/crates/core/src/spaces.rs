//! Generating functions `ψ` (Lorentz) and `N` (Orlicz), fundamental functions
//! and norm evaluators for `Λ_q(ψ)`, `L_N`, `ℓ^q(ψ)`, `U_N` and `E_X`.
//!
//! JSON encoding (see `docs/space-spec.schema.json`):
//!
//! ```text
//! {"type":"lorentz","q":1,"psi":{"kind":"piecewise_power","a0":0.25,"a_inf":0.75}}
//! {"type":"orlicz","N":{"kind":"pure_power","a":2}}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{embed_s, pow2, rearrange, Distribution};
use crate::shift::Seq;

/// Relative accuracy of the Luxemburg root.
pub const TOL_LUX: f64 = 1e-12;
/// Relative accuracy of the generic `N^{-1}` bisection.
pub const TOL_INV: f64 = 1e-12;
const MAX_BISECT: usize = 200;
/// Dyadic exponents used by the construction-time shape checks.
const CHECK_GRID: std::ops::RangeInclusive<i64> = -64..=64;
const SHAPE_TOL: f64 = 1e-12;

/// A generating function on `(0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FnSpec {
    /// `t^a`.
    PurePower { a: f64 },
    /// `t^{a0}` on `(0, 1]`, `t^{a_inf}` on `[1, ∞)`.
    PiecewisePower { a0: f64, a_inf: f64 },
    /// `t^a (1 + ln(1 + t))^c`.
    PowerLog { a: f64, c: f64 },
    /// Sorted `(t, value)` samples, interpolated linearly in log-log
    /// coordinates and extrapolated with the boundary slopes.
    Table { points: Vec<(f64, f64)> },
}

/// Which role a [`FnSpec`] plays; decides the shape checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Lorentz `ψ`: quasi-concave.
    Psi,
    /// Orlicz `N`: convex with `N(0) = 0` and `N(∞) = ∞`.
    Young,
}

impl FnSpec {
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            FnSpec::PurePower { a } => t.powf(*a),
            FnSpec::PiecewisePower { a0, a_inf } => {
                if t <= 1.0 {
                    t.powf(*a0)
                } else {
                    t.powf(*a_inf)
                }
            }
            FnSpec::PowerLog { a, c } => t.powf(*a) * (1.0 + t.ln_1p()).powf(*c),
            FnSpec::Table { .. } => self.log2_eval(t.log2()).exp2(),
        }
    }

    /// `log₂ f(2^x)`, evaluated without forming `2^x` where possible.
    pub fn log2_eval(&self, x: f64) -> f64 {
        match self {
            FnSpec::PurePower { a } => a * x,
            FnSpec::PiecewisePower { a0, a_inf } => {
                if x <= 0.0 {
                    a0 * x
                } else {
                    a_inf * x
                }
            }
            FnSpec::PowerLog { a, c } => {
                let ln1p = if x > 60.0 {
                    x * std::f64::consts::LN_2 + (-x).exp2().ln_1p()
                } else {
                    x.exp2().ln_1p()
                };
                a * x + c * (1.0 + ln1p).log2()
            }
            FnSpec::Table { points } => table_log2_eval(points, x),
        }
    }

    fn check_params(&self, role: Role) -> Result<()> {
        let finite = |field: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(field, format!("must be finite, got {v}")))
            }
        };
        match (self, role) {
            (FnSpec::PurePower { a }, Role::Psi) => in_unit(a, "a"),
            (FnSpec::PurePower { a }, Role::Young) => at_least_one(a, "a"),
            (FnSpec::PiecewisePower { a0, a_inf }, Role::Psi) => {
                in_unit(a0, "a0")?;
                in_unit(a_inf, "a_inf")
            }
            (FnSpec::PiecewisePower { a0, a_inf }, Role::Young) => {
                at_least_one(a0, "a0")?;
                at_least_one(a_inf, "a_inf")?;
                if a0 > a_inf {
                    return Err(Error::invalid(
                        "a_inf",
                        format!("an Orlicz function needs a0 <= a_inf for convexity, got a0={a0}, a_inf={a_inf}"),
                    ));
                }
                Ok(())
            }
            (FnSpec::PowerLog { a, c }, _) => {
                finite("a", *a)?;
                finite("c", *c)?;
                if *a <= 0.0 {
                    return Err(Error::invalid("a", "must be positive"));
                }
                Ok(())
            }
            (FnSpec::Table { points }, _) => {
                if points.len() < 2 {
                    return Err(Error::invalid("points", "a table needs at least two samples"));
                }
                for &(t, v) in points {
                    if !(t.is_finite() && t > 0.0 && v.is_finite() && v > 0.0) {
                        return Err(Error::invalid("points", format!("samples must be positive and finite, got ({t}, {v})")));
                    }
                }
                if points.windows(2).any(|w| !(w[0].0 < w[1].0 && w[0].1 < w[1].1)) {
                    return Err(Error::invalid("points", "t and value must both be strictly increasing"));
                }
                Ok(())
            }
        }
    }

    /// Validates parameters and the role's shape conditions on a dyadic grid.
    pub fn validate(&self, role: Role) -> Result<()> {
        self.check_params(role)?;
        let grid: Vec<(f64, f64)> = CHECK_GRID.map(|k| (pow2(k), self.eval(pow2(k)))).collect();
        let field = match role {
            Role::Psi => "psi",
            Role::Young => "N",
        };
        for w in grid.windows(2) {
            let ((t0, f0), (t1, f1)) = (w[0], w[1]);
            if !(f0.is_finite() && f1.is_finite() && f1 > f0 && f0 > 0.0) {
                return Err(Error::invalid(field, format!("not strictly increasing and positive near t={t0}")));
            }
            if role == Role::Psi && f1 / t1 > f0 / t0 * (1.0 + SHAPE_TOL) {
                return Err(Error::invalid(field, format!("psi(t)/t increases near t={t0}; psi must be quasi-concave")));
            }
        }
        if role == Role::Young {
            let mut prev = grid[0].1 / grid[0].0;
            for w in grid.windows(2) {
                let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                if slope < prev * (1.0 - SHAPE_TOL) {
                    return Err(Error::invalid("N", format!("not convex near t={}", w[0].0)));
                }
                prev = slope;
            }
        }
        Ok(())
    }

    /// Whether the closed-form index formulas apply.
    pub fn is_power_family(&self) -> bool {
        matches!(self, FnSpec::PurePower { .. } | FnSpec::PiecewisePower { .. })
    }
}

fn in_unit(v: &f64, field: &'static str) -> Result<()> {
    if v.is_finite() && *v > 0.0 && *v <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("a psi exponent must lie in (0, 1], got {v}")))
    }
}

fn at_least_one(v: &f64, field: &'static str) -> Result<()> {
    if v.is_finite() && *v >= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("an Orlicz exponent must be >= 1, got {v}")))
    }
}

fn table_log2_eval(points: &[(f64, f64)], x: f64) -> f64 {
    let lx = |i: usize| points[i].0.log2();
    let ly = |i: usize| points[i].1.log2();
    let n = points.len();
    let seg = if x <= lx(0) {
        0
    } else if x >= lx(n - 1) {
        n - 2
    } else {
        points.partition_point(|p| p.0.log2() <= x).saturating_sub(1).min(n - 2)
    };
    let slope = (ly(seg + 1) - ly(seg)) / (lx(seg + 1) - lx(seg));
    ly(seg) + slope * (x - lx(seg))
}

/// A Lorentz space `Λ_q(ψ)` or an Orlicz space `L_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields, try_from = "RawSpaceSpec")]
pub enum SpaceSpec {
    Lorentz {
        q: f64,
        psi: FnSpec,
    },
    Orlicz {
        #[serde(rename = "N")]
        n: FnSpec,
    },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawSpaceSpec {
    Lorentz {
        q: f64,
        psi: FnSpec,
    },
    Orlicz {
        #[serde(rename = "N")]
        n: FnSpec,
    },
}

impl TryFrom<RawSpaceSpec> for SpaceSpec {
    type Error = Error;
    fn try_from(raw: RawSpaceSpec) -> Result<Self> {
        match raw {
            RawSpaceSpec::Lorentz { q, psi } => SpaceSpec::lorentz(q, psi),
            RawSpaceSpec::Orlicz { n } => SpaceSpec::orlicz(n),
        }
    }
}

impl SpaceSpec {
    pub fn lorentz(q: f64, psi: FnSpec) -> Result<Self> {
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::invalid("q", format!("must be a finite real >= 1, got {q}")));
        }
        psi.validate(Role::Psi)?;
        Ok(SpaceSpec::Lorentz { q, psi })
    }

    pub fn orlicz(n: FnSpec) -> Result<Self> {
        n.validate(Role::Young)?;
        Ok(SpaceSpec::Orlicz { n })
    }

    /// The generating function, whichever role it plays.
    pub fn generator(&self) -> &FnSpec {
        match self {
            SpaceSpec::Lorentz { psi, .. } => psi,
            SpaceSpec::Orlicz { n } => n,
        }
    }

    /// Norm of any function with distribution `d`.
    pub fn norm(&self, d: &Distribution) -> f64 {
        match self {
            SpaceSpec::Lorentz { q, psi } => lorentz_norm(d, *q, psi),
            SpaceSpec::Orlicz { n } => luxemburg_norm(d, |t| n.eval(t)),
        }
    }
}

/// `N^{-1}(u)`: closed form for power families, bisection otherwise.
pub fn eval_inverse_n(n: &FnSpec, u: f64) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid("u", format!("must be positive and finite, got {u}")));
    }
    Ok(match n {
        FnSpec::PurePower { a } => u.powf(1.0 / a),
        FnSpec::PiecewisePower { a0, a_inf } => {
            if u <= 1.0 {
                u.powf(1.0 / a0)
            } else {
                u.powf(1.0 / a_inf)
            }
        }
        _ => log2_inverse_bisect(n, u.log2())?.exp2(),
    })
}

/// `log₂ N^{-1}(2^m)`.
fn log2_inverse_n(n: &FnSpec, m: f64) -> Result<f64> {
    match n {
        FnSpec::PurePower { a } => Ok(m / a),
        FnSpec::PiecewisePower { a0, a_inf } => Ok(if m <= 0.0 { m / a0 } else { m / a_inf }),
        _ => log2_inverse_bisect(n, m),
    }
}

fn log2_inverse_bisect(n: &FnSpec, m: f64) -> Result<f64> {
    // x ↦ log₂ N(2^x) is increasing
    let f = |x: f64| n.log2_eval(x) - m;
    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut steps = 0;
    while f(lo) > 0.0 {
        lo *= 2.0;
        steps += 1;
        if steps > 64 {
            return Err(Error::Numerical(format!("cannot bracket N^-1 at 2^{m}")));
        }
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 128 {
            return Err(Error::Numerical(format!("cannot bracket N^-1 at 2^{m}")));
        }
    }
    for _ in 0..MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= TOL_INV * 0.5 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The fundamental function `φ_X(t)`: `ψ(t)^{1/q}` for `Λ_q(ψ)` and
/// `1/N^{-1}(1/t)` for `L_N`.
pub fn fundamental(space: &SpaceSpec, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", format!("must be positive and finite, got {t}")));
    }
    match space {
        SpaceSpec::Lorentz { q, psi } => Ok(psi.eval(t).powf(1.0 / q)),
        SpaceSpec::Orlicz { n } => Ok(1.0 / eval_inverse_n(n, 1.0 / t)?),
    }
}

/// `log₂ φ_X(2^k) = log₂ ‖e_k‖_{E_X}`, finite for every `k`.
pub fn log2_fundamental_pow2(space: &SpaceSpec, k: i64) -> Result<f64> {
    match space {
        SpaceSpec::Lorentz { q, psi } => Ok(psi.log2_eval(k as f64) / q),
        SpaceSpec::Orlicz { n } => Ok(-log2_inverse_n(n, -(k as f64))?),
    }
}

/// `(∫ (x*)^q dψ)^{1/q}`, evaluated exactly on the rearranged profile as
/// `Σ v_i^q (ψ(T_i) − ψ(T_{i−1}))`.
pub fn lorentz_norm(d: &Distribution, q: f64, psi: &FnSpec) -> f64 {
    let mut prev = 0.0;
    let mut sum = 0.0;
    for piece in rearrange(d) {
        let cur = psi.eval(piece.end);
        sum += piece.value.powf(q) * (cur - prev);
        prev = cur;
    }
    sum.powf(1.0 / q)
}

/// Root `u` of the strictly decreasing modular `Σ m_i N(v_i/u) = 1` over
/// `(value, weight)` pairs, by bracketing and bisection on `log₂ u`.
fn luxemburg_root<N: Fn(f64) -> f64>(pairs: &[(f64, f64)], n: N) -> f64 {
    let scale = pairs.iter().fold(0.0f64, |m, p| m.max(p.0));
    if scale == 0.0 {
        return 0.0;
    }
    let modular = |log_u: f64| {
        let u = log_u.exp2();
        pairs.iter().map(|&(v, m)| m * n(v / u)).sum::<f64>()
    };
    let base = scale.log2();
    let (mut lo, mut hi) = (base - 60.0, base + 60.0);
    // lo: modular > 1, hi: modular ≤ 1
    while modular(hi) > 1.0 {
        hi += 60.0;
    }
    while modular(lo) <= 1.0 {
        lo -= 60.0;
    }
    for _ in 0..MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if modular(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= TOL_LUX * 1e-2 {
            break;
        }
    }
    (0.5 * (lo + hi)).exp2()
}

/// Modular `Σ m_i N(v_i/u)` of a distribution.
pub fn modular<N: Fn(f64) -> f64>(d: &Distribution, n: N, u: f64) -> f64 {
    d.atoms().iter().map(|a| a.measure * n(a.value / u)).sum()
}

/// Luxemburg norm `inf{u > 0 : ∫ N(|x|/u) ≤ 1}`. Generic over the Orlicz
/// function so that closed forms outside [`FnSpec`] can be used directly.
pub fn luxemburg_norm<N: Fn(f64) -> f64>(d: &Distribution, n: N) -> f64 {
    let pairs: Vec<(f64, f64)> = d.atoms().iter().map(|a| (a.value, a.measure)).collect();
    luxemburg_root(&pairs, n)
}

/// `(Σ_k |a_k|^q ψ(2^k))^{1/q}`.
pub fn seq_norm_lorentz(a: &Seq, q: f64, psi: &FnSpec) -> f64 {
    a.iter()
        .map(|(k, v)| v.abs().powf(q) * psi.eval(pow2(k)))
        .sum::<f64>()
        .powf(1.0 / q)
}

/// `U_N` norm `inf{u > 0 : Σ_k 2^k N(|a_k|/u) ≤ 1}`.
pub fn seq_norm_orlicz(a: &Seq, n: &FnSpec) -> f64 {
    let pairs: Vec<(f64, f64)> = a.iter().map(|(k, v)| (v.abs(), pow2(k))).collect();
    luxemburg_root(&pairs, |t| n.eval(t))
}

/// `‖a‖_{E_X} = ‖Sa‖_X`.
pub fn ex_norm(space: &SpaceSpec, a: &Seq) -> f64 {
    space.norm(&embed_s(a).distribution())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[(f64, f64)]) -> Distribution {
        Distribution::new(p.iter().copied()).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    const T: FnSpec = FnSpec::PurePower { a: 1.0 };
    const SQ: FnSpec = FnSpec::PurePower { a: 2.0 };

    #[test]
    fn inverse_n_examples() {
        assert!(rel(eval_inverse_n(&SQ, 4.0).unwrap(), 2.0) < 1e-15);
        let pw = FnSpec::PiecewisePower { a0: 1.5, a_inf: 3.0 };
        assert!(rel(eval_inverse_n(&pw, 8.0).unwrap(), 2.0) < 1e-15);
        assert!(rel(eval_inverse_n(&pw, 0.125).unwrap(), 0.25) < 1e-15);
        assert!(matches!(eval_inverse_n(&SQ, 0.0), Err(Error::Invalid { field: "u", .. })));
        assert!(eval_inverse_n(&SQ, -1.0).is_err());
    }

    #[test]
    fn inverse_n_bisection_residual() {
        let n = FnSpec::PowerLog { a: 2.0, c: 1.0 };
        for &u in &[1e-6, 0.3, 1.0, 7.0, 1e8] {
            let t = eval_inverse_n(&n, u).unwrap();
            assert!((n.eval(t) - u).abs() <= 1e-11 * u, "u={u}");
        }
    }

    #[test]
    fn fundamental_examples() {
        let l2 = SpaceSpec::lorentz(2.0, T).unwrap();
        assert!(rel(fundamental(&l2, 4.0).unwrap(), 2.0) < 1e-15);
        let o2 = SpaceSpec::orlicz(SQ).unwrap();
        assert!(rel(fundamental(&o2, 4.0).unwrap(), 2.0) < 1e-15);
        let l1h = SpaceSpec::lorentz(1.0, FnSpec::PurePower { a: 0.5 }).unwrap();
        assert!(rel(fundamental(&l1h, 16.0).unwrap(), 4.0) < 1e-15);
        assert!(fundamental(&l1h, 0.0).is_err());
    }

    #[test]
    fn lorentz_norm_examples() {
        let d = dist(&[(2.0, 1.0), (1.0, 2.0)]);
        assert!(rel(lorentz_norm(&d, 1.0, &T), 4.0) < 1e-15);
        assert!(rel(lorentz_norm(&d, 2.0, &T), 6f64.sqrt()) < 1e-15);
        let sqrt = FnSpec::PurePower { a: 0.5 };
        assert!(rel(lorentz_norm(&d, 1.0, &sqrt), 1.0 + 3f64.sqrt()) < 1e-15);
        assert_eq!(lorentz_norm(&Distribution::empty(), 1.0, &T), 0.0);
    }

    #[test]
    fn luxemburg_examples() {
        assert!(rel(luxemburg_norm(&dist(&[(1.0, 4.0)]), |t| t * t), 2.0) < 1e-12);
        assert!(rel(luxemburg_norm(&dist(&[(3.0, 1.0)]), |t| t * t), 3.0) < 1e-12);
        let u = luxemburg_norm(&dist(&[(1.0, 1.0)]), |t: f64| t.exp_m1());
        assert!(rel(u, 1.0 / std::f64::consts::LN_2) < 1e-12);
        assert_eq!(luxemburg_norm(&Distribution::empty(), |t| t * t), 0.0);
    }

    #[test]
    fn luxemburg_residual() {
        let n = FnSpec::PiecewisePower { a0: 1.5, a_inf: 3.0 };
        let d = dist(&[(5.0, 0.01), (0.3, 17.0), (1e-3, 1e4)]);
        let u = luxemburg_norm(&d, |t| n.eval(t));
        assert!((modular(&d, |t| n.eval(t), u) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn seq_norm_examples() {
        let a = Seq::from_pairs([(0, 1.0), (1, 1.0)]);
        assert!(rel(seq_norm_lorentz(&a, 1.0, &T), 3.0) < 1e-15);
        let psi = FnSpec::PurePower { a: 0.3 };
        for k in -5..5 {
            let e = Seq::unit(k);
            assert!(rel(seq_norm_lorentz(&e, 2.5, &psi), psi.eval(pow2(k)).powf(1.0 / 2.5)) < 1e-14);
        }
        assert!(rel(seq_norm_lorentz(&Seq::from_pairs([(-1, 2.0)]), 2.0, &T), 2f64.sqrt()) < 1e-15);

        for k in -3..4 {
            let u = seq_norm_orlicz(&Seq::unit(k), &SQ);
            assert!(rel(u, 2f64.powf(k as f64 / 2.0)) < 1e-12);
            assert!(rel(u, 1.0 / eval_inverse_n(&SQ, pow2(-k)).unwrap()) < 1e-12);
        }
        assert_eq!(seq_norm_orlicz(&Seq::zero(), &SQ), 0.0);
        assert!(rel(seq_norm_orlicz(&Seq::from_pairs([(0, 3.0)]), &SQ), 3.0) < 1e-12);
    }

    #[test]
    fn ex_norm_examples() {
        let l1 = SpaceSpec::lorentz(1.0, T).unwrap();
        let a = Seq::from_pairs([(0, 1.0), (1, 1.0)]);
        assert!(rel(ex_norm(&l1, &a), 3.0) < 1e-15);
        assert!(rel(ex_norm(&l1, &a), seq_norm_lorentz(&a, 1.0, &T)) < 1e-15);
        let o2 = SpaceSpec::orlicz(SQ).unwrap();
        for k in -4..5 {
            assert!(rel(ex_norm(&o2, &Seq::unit(k)), 2f64.powf(k as f64 / 2.0)) < 1e-12);
        }
        assert_eq!(ex_norm(&l1, &Seq::zero()), 0.0);
        assert_eq!(ex_norm(&o2, &Seq::zero()), 0.0);
    }

    #[test]
    fn role_checks() {
        assert!(SpaceSpec::lorentz(0.5, T).is_err());
        assert!(SpaceSpec::lorentz(1.0, FnSpec::PurePower { a: 1.5 }).is_err());
        assert!(SpaceSpec::orlicz(FnSpec::PurePower { a: 0.5 }).is_err());
        let err = SpaceSpec::orlicz(FnSpec::PiecewisePower { a0: 3.0, a_inf: 1.5 }).unwrap_err();
        assert!(matches!(err, Error::Invalid { field: "a_inf", .. }));
        // t(1+ln(1+t)) grows faster than t: not quasi-concave
        assert!(SpaceSpec::lorentz(1.0, FnSpec::PowerLog { a: 1.0, c: 1.0 }).is_err());
        assert!(SpaceSpec::lorentz(1.0, FnSpec::PowerLog { a: 0.5, c: 0.5 }).is_ok());
        assert!(SpaceSpec::orlicz(FnSpec::PowerLog { a: 2.0, c: 1.0 }).is_ok());
        // decreasing table
        assert!(SpaceSpec::lorentz(1.0, FnSpec::Table { points: vec![(1.0, 2.0), (2.0, 1.0)] }).is_err());
    }

    #[test]
    fn table_interpolates_log_log() {
        let tab = FnSpec::Table { points: vec![(1.0, 1.0), (4.0, 2.0), (16.0, 8.0)] };
        assert!(rel(tab.eval(2.0), 2f64.sqrt()) < 1e-14);
        assert!(rel(tab.eval(8.0), 4.0) < 1e-14);
        // extrapolation keeps the boundary slopes
        assert!(rel(tab.eval(0.25), 0.5) < 1e-14);
        assert!(rel(tab.eval(64.0), 32.0) < 1e-14);
        assert!(SpaceSpec::lorentz(1.0, tab).is_ok());
        let convex = FnSpec::Table { points: vec![(1.0, 1.0), (2.0, 4.0)] };
        assert!(SpaceSpec::lorentz(1.0, convex.clone()).is_err());
        assert!(SpaceSpec::orlicz(convex).is_ok());
        let psi = FnSpec::Table { points: vec![(1.0, 1.0), (4.0, 2.0), (16.0, 3.0)] };
        assert!(SpaceSpec::lorentz(1.0, psi).is_ok());
    }

    #[test]
    fn json_encoding() {
        let s: SpaceSpec =
            serde_json::from_str(r#"{"type":"lorentz","q":1,"psi":{"kind":"piecewise_power","a0":0.25,"a_inf":0.75}}"#)
                .unwrap();
        assert_eq!(s, SpaceSpec::lorentz(1.0, FnSpec::PiecewisePower { a0: 0.25, a_inf: 0.75 }).unwrap());
        let o: SpaceSpec =
            serde_json::from_str(r#"{"type":"orlicz","N":{"kind":"piecewise_power","a0":1.5,"a_inf":3.0}}"#).unwrap();
        let back = serde_json::to_string(&o).unwrap();
        assert_eq!(back, r#"{"type":"orlicz","N":{"kind":"piecewise_power","a0":1.5,"a_inf":3.0}}"#);
        let err = serde_json::from_str::<SpaceSpec>(r#"{"type":"lorentz","psi":{"kind":"pure_power","a":0.5}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("`q`"), "{err}");
        let err = serde_json::from_str::<SpaceSpec>(r#"{"type":"lorentz","q":0.5,"psi":{"kind":"pure_power","a":0.5}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("`q`"), "{err}");
        let err = serde_json::from_str::<SpaceSpec>(r#"{"type":"lorentz","q":1,"psi":{"kind":"pure_power","b":0.5}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("`b`"), "{err}");
    }
}
