//! Sequence algebra on `ℤ`: shifts, `τ_λ` and its dual, approximate
//! eigenvector windows and the right inverse `T`.
//!
//! Conventions: `shift(a, n)_k = a_{k-n}`, so `τ = shift(·, 1)` moves mass
//! towards larger indices, and `τ_λ a = τa − λa`, i.e.
//! `(τ_λ a)_k = a_{k-1} − λ a_k`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{self, SpaceSpec};

/// Finitely supported real sequence indexed by `ℤ`. Exact zeros are never
/// stored.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Seq {
    coeffs: BTreeMap<i64, f64>,
}

impl Seq {
    pub fn zero() -> Self {
        Seq::default()
    }

    /// The standard unit vector `e_k`.
    pub fn unit(k: i64) -> Self {
        let mut s = Seq::zero();
        s.set(k, 1.0);
        s
    }

    /// Sequence with `values[i]` at index `start + i`.
    pub fn from_slice(start: i64, values: &[f64]) -> Self {
        let mut s = Seq::zero();
        for (i, &v) in values.iter().enumerate() {
            s.set(start + i as i64, v);
        }
        s
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Self {
        let mut s = Seq::zero();
        for (k, v) in pairs {
            s.add_at(k, v);
        }
        s
    }

    pub fn get(&self, k: i64) -> f64 {
        self.coeffs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, k: i64, v: f64) {
        if v == 0.0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn add_at(&mut self, k: i64, v: f64) {
        let next = self.get(k) + v;
        self.set(k, next);
    }

    /// Nonzero entries in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest and largest index carrying a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, c: f64) -> Seq {
        Seq::from_pairs(self.iter().map(|(k, v)| (k, c * v)))
    }
}

impl Add for &Seq {
    type Output = Seq;
    fn add(self, rhs: &Seq) -> Seq {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_at(k, v);
        }
        out
    }
}

impl Sub for &Seq {
    type Output = Seq;
    fn sub(self, rhs: &Seq) -> Seq {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_at(k, -v);
        }
        out
    }
}

impl Neg for &Seq {
    type Output = Seq;
    fn neg(self) -> Seq {
        self.scale(-1.0)
    }
}

impl Mul<&Seq> for f64 {
    type Output = Seq;
    fn mul(self, rhs: &Seq) -> Seq {
        rhs.scale(self)
    }
}

/// A truncated infinite-support sequence together with a bound on the summed
/// `E_X`-norms of the discarded terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeq {
    pub seq: Seq,
    pub tail_bound: f64,
    /// Inclusive index window `[lo, hi]` kept after truncation.
    pub window: (i64, i64),
}

/// `τ_n a`, with coefficient `a_{k-n}` at `k`.
pub fn shift(a: &Seq, n: i64) -> Seq {
    Seq {
        coeffs: a.coeffs.iter().map(|(&k, &v)| (k + n, v)).collect(),
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda", format!("must be a positive finite real, got {lambda}")))
    }
}

/// `τ_λ a = τa − λa`.
pub fn tau_lambda(a: &Seq, lambda: f64) -> Result<Seq> {
    check_lambda(lambda)?;
    Ok(&shift(a, 1) - &a.scale(lambda))
}

/// The dual operator `τ_λ* = τ_{-1} − λI`, with coefficient `a_{k+1} − λ a_k`.
pub fn tau_lambda_dual(a: &Seq, lambda: f64) -> Result<Seq> {
    check_lambda(lambda)?;
    Ok(&shift(a, -1) - &a.scale(lambda))
}

/// `Σ_{j=0}^{n} λ^{-j} e_{k+j}`. Its image under `τ_λ` telescopes to
/// `−λ e_k + λ^{-n} e_{k+n+1}`.
pub fn geometric_window(lambda: f64, k: i64, n: u32) -> Seq {
    let r = lambda.recip();
    let mut c = 1.0;
    let mut s = Seq::zero();
    for j in 0..=n as i64 {
        s.set(k + j, c);
        c *= r;
    }
    s
}

fn tent(j: i64, n: i64) -> f64 {
    if j <= n {
        (j + 1) as f64
    } else {
        (2 * n + 1 - j) as f64
    }
}

/// `(I + λ^{-1}τ + … + λ^{-n}τ^n)² e_k`, built from its closed-form
/// coefficients `(j+1)λ^{-j}` for `j ≤ n` and `(2n+1−j)λ^{-j}` for
/// `n < j ≤ 2n` at index `k + j`.
pub fn squared_window(lambda: f64, k: i64, n: u32) -> Seq {
    let n = n as i64;
    let r = lambda.recip();
    let mut pow = 1.0;
    let mut s = Seq::zero();
    for j in 0..=2 * n {
        s.set(k + j, tent(j, n) * pow);
        pow *= r;
    }
    s
}

/// Mirror image of [`squared_window`] around `e_{k+n}`:
/// `(I + λ^{-1}τ_{-1} + … + λ^{-n}τ_{-n})² e_{k+n}`.
pub fn squared_window_dual(lambda: f64, k: i64, n: u32) -> Seq {
    let n = n as i64;
    let r = lambda.recip();
    let mut pow = 1.0;
    let mut s = Seq::zero();
    for j in 0..=2 * n {
        s.set(k + n - j, tent(j, n) * pow);
        pow *= r;
    }
    s
}

/// Index beyond which the tail scan gives up and reports divergence.
pub const T_SCAN_LIMIT: i64 = 10_000;

/// Right inverse of `τ_λ`:
///
/// ```text
/// Ta = −Σ_{n≥1} Σ_{i=1}^{n} λ^{i−n−1} a_i e_n  +  Σ_{n≥1} Σ_{i=1}^{n} λ^{n−i} a_{1−i} e_{−n}
/// ```
///
/// Coefficients follow the recurrences `b_n = (b_{n−1} − a_n)/λ` for `n ≥ 1`
/// and `b_{−n} = λ b_{−n+1} + a_{1−n}`, with `b_0 = 0`. Beyond the support of
/// `a` both sides are geometric; each side is cut at the last index whose
/// unit-vector term `|b_n|·‖e_n‖_{E_X}` is at least `tol`, and the discarded
/// terms out to [`T_SCAN_LIMIT`] are summed into `tail_bound`. Term norms are
/// tracked in `log₂` so that far-out weights cannot overflow.
///
/// `τ_λ` of the result equals `a` at every index strictly inside the kept
/// window; the only defects sit at the two window edges.
pub fn right_inverse_t(a: &Seq, lambda: f64, tol: f64, space: &SpaceSpec) -> Result<TruncatedSeq> {
    check_lambda(lambda)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let Some((lo, hi)) = a.support() else {
        return Ok(TruncatedSeq {
            seq: Seq::zero(),
            tail_bound: 0.0,
            window: (0, 0),
        });
    };
    let log2_lambda = lambda.log2();
    let log2_tol = tol.log2();
    let mut out = Seq::zero();
    let mut tail = 0.0;

    // Positive side: explicit recurrence over the support, then geometric.
    let pos_end = hi.max(0);
    let mut b = 0.0;
    for n in 1..=pos_end {
        b = (b - a.get(n)) / lambda;
        out.set(n, b);
    }
    let (keep_hi, tail_pos) = scan_tail(space, b, pos_end, 1, -log2_lambda, log2_tol, "positive")?;
    for n in (pos_end + 1)..=keep_hi {
        out.set(n, b * lambda.powf(-((n - pos_end) as f64)));
    }
    tail += tail_pos;

    // Negative side: b_{-n} = λ b_{-n+1} + a_{1-n}.
    let neg_end = (1 - lo).max(0);
    let mut b = 0.0;
    for n in 1..=neg_end {
        b = lambda * b + a.get(1 - n);
        out.set(-n, b);
    }
    let (keep_lo_mag, tail_neg) = scan_tail(space, b, neg_end, -1, log2_lambda, log2_tol, "negative")?;
    for n in (neg_end + 1)..=keep_lo_mag {
        out.set(-n, b * lambda.powf((n - neg_end) as f64));
    }
    tail += tail_neg;

    Ok(TruncatedSeq {
        seq: out,
        tail_bound: tail,
        window: (-keep_lo_mag, keep_hi),
    })
}

/// Scans the geometric continuation `|b|·2^{m·step_log2}` weighted by
/// `‖e_{dir·(start+m)}‖` for `m = 1, 2, …`. Returns the last magnitude index to
/// keep and the summed norm of the discarded terms.
fn scan_tail(
    space: &SpaceSpec,
    b: f64,
    start: i64,
    dir: i64,
    step_log2: f64,
    log2_tol: f64,
    side: &str,
) -> Result<(i64, f64)> {
    if b == 0.0 || start >= T_SCAN_LIMIT {
        return Ok((start, 0.0));
    }
    let log2_b = b.abs().log2();
    let mut terms = Vec::new();
    let mut last_big = start;
    for idx in (start + 1)..=T_SCAN_LIMIT {
        let m = (idx - start) as f64;
        let log_term = log2_b + m * step_log2 + spaces::log2_fundamental_pow2(space, dir * idx)?;
        if log_term >= log2_tol {
            last_big = idx;
        }
        terms.push(log_term);
    }
    let final_term = *terms.last().unwrap_or(&f64::NEG_INFINITY);
    if last_big == T_SCAN_LIMIT || final_term >= log2_tol {
        return Err(Error::Divergence(format!(
            "{side} tail of T does not decay below tolerance by index {T_SCAN_LIMIT}"
        )));
    }
    let tail: f64 = terms[(last_big - start) as usize..]
        .iter()
        .map(|&l| l.exp2())
        .sum();
    Ok((last_big, tail))
}
