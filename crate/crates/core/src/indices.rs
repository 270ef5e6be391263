//! Weight sequences `s_k = φ_X(2^k) = ‖e_k‖_{E_X}` and the six dilation
//! exponents `α, β, α⁰, β⁰, α∞, β∞`.
//!
//! Region convention: "zero" is the behaviour of the function space near
//! `t = 0`, i.e. weights with both indices `≤ 0`; "infinity" uses indices
//! `≥ 0`. With it
//!
//! ```text
//! β  = lim (1/n) log₂ sup_k      s_{k+n}/s_k      α  = −lim (1/n) log₂ sup_k      s_k/s_{k+n}
//! β⁰ = lim (1/n) log₂ sup_{k≤0}  s_k/s_{k−n}      α⁰ = −lim (1/n) log₂ sup_{k≤0}  s_{k−n}/s_k
//! β∞ = lim (1/n) log₂ sup_{k≥0}  s_{k+n}/s_k      α∞ = −lim (1/n) log₂ sup_{k≥0}  s_k/s_{k+n}
//! ```
//!
//! The ratio suprema are submultiplicative in `n`, so each limit equals an
//! infimum over `n` (Fekete) and the running infimum is a one-sided bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{fundamental, FnSpec, SpaceSpec};

const SHAPE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSeq {
    pub k_min: i64,
    pub k_max: i64,
    pub s: Vec<f64>,
}

impl WeightSeq {
    /// Checks positivity and the quasi-concavity shape (`s_k` nondecreasing,
    /// `s_k / 2^k` nonincreasing).
    pub fn new(k_min: i64, s: Vec<f64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid("s", "empty weight sequence"));
        }
        if s.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::invalid("s", "weights must be positive and finite"));
        }
        for (i, w) in s.windows(2).enumerate() {
            let k = k_min + i as i64;
            if w[1] < w[0] * (1.0 - SHAPE_TOL) {
                return Err(Error::invalid("s", format!("weights decrease at k={k}")));
            }
            if w[1] > 2.0 * w[0] * (1.0 + SHAPE_TOL) {
                return Err(Error::invalid("s", format!("s_k/2^k increases at k={k}")));
            }
        }
        let k_max = k_min + s.len() as i64 - 1;
        Ok(WeightSeq { k_min, k_max, s })
    }

    pub fn get(&self, k: i64) -> f64 {
        self.s[(k - self.k_min) as usize]
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// `s_k = φ_X(2^k)` for `k ∈ [k_min, k_max]`.
pub fn weights(space: &SpaceSpec, k_min: i64, k_max: i64) -> Result<WeightSeq> {
    if k_min > k_max {
        return Err(Error::invalid("k_min", format!("k_min={k_min} exceeds k_max={k_max}")));
    }
    let s = (k_min..=k_max)
        .map(|k| fundamental(space, crate::functions::pow2(k)))
        .collect::<Result<Vec<_>>>()?;
    WeightSeq::new(k_min, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    All,
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `sup s_{k+n}/s_k`
    Up,
    /// `sup s_k/s_{k+n}`
    Down,
}

/// Supremum of `s_{j+n}/s_j` (up) or `s_j/s_{j+n}` (down) over pairs
/// `(j, j+n)` inside the window and, for a half-axis region, with both
/// indices on that half-axis.
pub fn ratio_sup(w: &WeightSeq, n: u32, region: Region, direction: Direction) -> Result<f64> {
    let n = n as i64;
    if n < 1 || 2 * n > w.k_max - w.k_min {
        return Err(Error::Window(format!(
            "n={n} needs a window of width >= {}, have [{}, {}]",
            2 * n,
            w.k_min,
            w.k_max
        )));
    }
    let (lo, hi) = match region {
        Region::All => (w.k_min, w.k_max - n),
        Region::Zero => (w.k_min, (-n).min(w.k_max - n)),
        Region::Infinity => (w.k_min.max(0), w.k_max - n),
    };
    if lo > hi {
        return Err(Error::Window(format!("no pairs at distance {n} in the {region:?} region")));
    }
    Ok((lo..=hi)
        .map(|j| {
            let r = w.get(j + n) / w.get(j);
            match direction {
                Direction::Up => r,
                Direction::Down => r.recip(),
            }
        })
        .fold(0.0, f64::max))
}

/// Per-`n` values `log₂ ratio_sup` for the six exponents, in the order
/// `α, β, α⁰, β⁰, α∞, β∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: u32,
    pub log2_ratios: [f64; 6],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexMeta {
    pub method: String,
    pub n_max: u32,
    pub k_range: (i64, i64),
    /// Exponent values `±r(n_max)/n_max` (the right end of the Fekete bracket).
    pub at_n_max: [f64; 6],
    /// Least-squares slope of `±r(n)` over `n ∈ [n_max/2, n_max]`; diagnostic.
    pub regression: [f64; 6],
    /// Largest gap between the Fekete bound and the `n_max/2` bound.
    pub error_estimate: f64,
    pub table: Vec<RatioRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSet {
    pub alpha: f64,
    pub beta: f64,
    pub alpha0: f64,
    pub beta0: f64,
    #[serde(rename = "alphaInf")]
    pub alpha_inf: f64,
    #[serde(rename = "betaInf")]
    pub beta_inf: f64,
    pub meta: Option<IndexMeta>,
}

impl IndexSet {
    /// An index set given by its six exponents.
    pub fn from_values(alpha: f64, beta: f64, alpha0: f64, beta0: f64, alpha_inf: f64, beta_inf: f64) -> Result<Self> {
        let ix = IndexSet { alpha, beta, alpha0, beta0, alpha_inf, beta_inf, meta: None };
        ix.check()?;
        Ok(ix)
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.alpha, self.beta, self.alpha0, self.beta0, self.alpha_inf, self.beta_inf]
    }

    /// `0 ≤ α ≤ α⁰ ≤ β⁰ ≤ β ≤ 1` and `α ≤ α∞ ≤ β∞ ≤ β`.
    pub fn check(&self) -> Result<()> {
        let v = self.as_array();
        if v.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::invalid("indices", "every exponent must lie in [0, 1]"));
        }
        let ordered = self.alpha <= self.alpha0
            && self.alpha0 <= self.beta0
            && self.beta0 <= self.beta
            && self.alpha <= self.alpha_inf
            && self.alpha_inf <= self.beta_inf
            && self.beta_inf <= self.beta;
        if !ordered {
            return Err(Error::invalid("indices", format!("ordering violated: {v:?}")));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &IndexSet) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

const SLOTS: [(Region, Direction); 6] = [
    (Region::All, Direction::Down),
    (Region::All, Direction::Up),
    (Region::Zero, Direction::Down),
    (Region::Zero, Direction::Up),
    (Region::Infinity, Direction::Down),
    (Region::Infinity, Direction::Up),
];

/// Fekete estimates of the six exponents from `w`.
///
/// Up-direction exponents (`β`s) are `inf_{n ≤ n_max} r(n)/n`; down-direction
/// exponents (`α`s) are `sup_{n ≤ n_max} −r(n)/n`. Results are clamped into
/// `[0, 1]` and then forced into the index ordering.
pub fn estimate_indices(w: &WeightSeq, n_max: u32) -> Result<IndexSet> {
    if n_max < 1 || 4 * n_max as i64 > w.k_max - w.k_min {
        return Err(Error::Window(format!(
            "n_max={n_max} needs a window of width >= {}, have [{}, {}]",
            4 * n_max,
            w.k_min,
            w.k_max
        )));
    }
    let table = (1..=n_max)
        .map(|n| {
            let mut row = [0.0; 6];
            for (slot, &(region, dir)) in SLOTS.iter().enumerate() {
                row[slot] = ratio_sup(w, n, region, dir)?.log2();
            }
            Ok(RatioRow { n, log2_ratios: row })
        })
        .collect::<Result<Vec<_>>>()?;

    // exponent value contributed by row `n` for slot `i`
    let value = |row: &RatioRow, i: usize| {
        let r = row.log2_ratios[i] / row.n as f64;
        if SLOTS[i].1 == Direction::Up {
            r
        } else {
            -r
        }
    };
    let fekete = |i: usize, upto: u32| {
        let it = table.iter().take(upto as usize).map(|row| value(row, i));
        if SLOTS[i].1 == Direction::Up {
            it.fold(f64::INFINITY, f64::min)
        } else {
            it.fold(f64::NEG_INFINITY, f64::max)
        }
    };
    let mut est = [0.0; 6];
    let mut at_n_max = [0.0; 6];
    let mut regression = [0.0; 6];
    let mut error_estimate = 0.0f64;
    let last = table.last().expect("n_max >= 1");
    for i in 0..6 {
        est[i] = fekete(i, n_max);
        at_n_max[i] = value(last, i);
        error_estimate = error_estimate.max((est[i] - fekete(i, (n_max / 2).max(1))).abs());
        let sign = if SLOTS[i].1 == Direction::Up { 1.0 } else { -1.0 };
        let pts: Vec<(f64, f64)> = table
            .iter()
            .filter(|row| row.n >= n_max / 2)
            .map(|row| (row.n as f64, sign * row.log2_ratios[i]))
            .collect();
        regression[i] = ls_slope(&pts);
    }
    let mut e = est.map(|x| x.clamp(0.0, 1.0));
    // α = min(α⁰, α∞), β = max(β⁰, β∞) on exact data; enforce the ordering.
    for (lo, hi) in [(2, 3), (4, 5)] {
        if e[lo] > e[hi] {
            let mid = 0.5 * (e[lo] + e[hi]);
            e[lo] = mid;
            e[hi] = mid;
        }
    }
    e[0] = e[0].min(e[2]).min(e[4]);
    e[1] = e[1].max(e[3]).max(e[5]);

    let ix = IndexSet {
        alpha: e[0],
        beta: e[1],
        alpha0: e[2],
        beta0: e[3],
        alpha_inf: e[4],
        beta_inf: e[5],
        meta: Some(IndexMeta {
            method: "fekete".into(),
            n_max,
            k_range: (w.k_min, w.k_max),
            at_n_max,
            regression,
            error_estimate,
            table,
        }),
    };
    ix.check()?;
    Ok(ix)
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let m = pts.len() as f64;
    if pts.len() < 2 {
        return pts.first().map_or(0.0, |p| p.1 / p.0);
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Closed-form exponents for power-family generators; `None` otherwise.
pub fn analytic_indices(space: &SpaceSpec) -> Option<IndexSet> {
    // (zero-region exponent, infinity-region exponent)
    let (z, i) = match space {
        SpaceSpec::Lorentz { q, psi } => match psi {
            FnSpec::PurePower { a } => (a / q, a / q),
            FnSpec::PiecewisePower { a0, a_inf } => (a0 / q, a_inf / q),
            _ => return None,
        },
        SpaceSpec::Orlicz { n } => match n {
            FnSpec::PurePower { a } => (1.0 / a, 1.0 / a),
            FnSpec::PiecewisePower { a0, a_inf } => (1.0 / a_inf, 1.0 / a0),
            _ => return None,
        },
    };
    Some(IndexSet {
        alpha: z.min(i),
        beta: z.max(i),
        alpha0: z,
        beta0: z,
        alpha_inf: i,
        beta_inf: i,
        meta: None,
    })
}
