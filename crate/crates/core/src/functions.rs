//! Step functions on `(0, ∞)` known up to equimeasurability, the dyadic
//! embedding `S`, dilation by powers of two and the averaging projection `Q`.
//!
//! Dyadic blocks are `Δ_k = [2^k, 2^{k+1})`. Block measures are produced by
//! [`pow2`], which builds the float directly from the exponent and is exact for
//! `|k| ≤ 1022`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shift::{self, Seq};

/// Relative tolerance used when merging atoms and comparing distributions.
pub const EPS_MEAS: f64 = 1e-12;

/// Smallest block exponent materialized by [`project_q`].
pub const MIN_BLOCK_EXP: i64 = -1022;

/// `2^k` for integer `k`, exact in the normal range.
pub fn pow2(k: i64) -> f64 {
    if (-1022..=1023).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        2f64.powf(k as f64)
    }
}

fn rel_eq(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * a.abs().max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub value: f64,
    pub measure: f64,
}

/// Distribution of a nonnegative step function: a finite multiset of
/// `(value, measure)` atoms, kept sorted by value descending with equal values
/// merged. The empty distribution is the zero function.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct Distribution {
    atoms: Vec<Atom>,
}

impl TryFrom<Vec<(f64, f64)>> for Distribution {
    type Error = Error;
    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        Distribution::new(v)
    }
}

impl From<Distribution> for Vec<(f64, f64)> {
    fn from(d: Distribution) -> Self {
        d.atoms.iter().map(|a| (a.value, a.measure)).collect()
    }
}

impl Distribution {
    pub fn empty() -> Self {
        Distribution::default()
    }

    /// Builds the canonical form from `(value, measure)` pairs. Zero values
    /// are dropped; negative values are taken in absolute value since only
    /// `|x|` matters.
    pub fn new<I: IntoIterator<Item = (f64, f64)>>(pairs: I) -> Result<Self> {
        let mut atoms = Vec::new();
        for (value, measure) in pairs {
            if !value.is_finite() {
                return Err(Error::invalid("value", format!("atom value must be finite, got {value}")));
            }
            if !(measure.is_finite() && measure > 0.0) {
                return Err(Error::invalid("measure", format!("atom measure must be positive and finite, got {measure}")));
            }
            if value != 0.0 {
                atoms.push(Atom { value: value.abs(), measure });
            }
        }
        Ok(Self::canonicalize(atoms))
    }

    fn canonicalize(mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if rel_eq(last.value, atom.value, EPS_MEAS) => last.measure += atom.measure,
                _ => merged.push(atom),
            }
        }
        Distribution { atoms: merged }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.atoms.iter().map(|a| a.measure).sum()
    }

    /// `‖x‖_∞`, zero for the empty distribution.
    pub fn sup(&self) -> f64 {
        self.atoms.first().map_or(0.0, |a| a.value)
    }

    /// Distribution of `c·x`.
    pub fn scaled(&self, c: f64) -> Distribution {
        if c == 0.0 {
            return Distribution::empty();
        }
        let c = c.abs();
        Distribution {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { value: a.value * c, measure: a.measure })
                .collect(),
        }
    }

    /// Value of the decreasing rearrangement `x*` at `t ≥ 0` (right-continuous).
    pub fn rearranged_at(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for a in &self.atoms {
            acc += a.measure;
            if t < acc {
                return a.value;
            }
        }
        0.0
    }
}

/// One constancy interval `[start, end)` of `x*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePiece {
    pub value: f64,
    pub start: f64,
    pub end: f64,
}

/// The decreasing rearrangement `x*` as consecutive constancy intervals
/// starting at 0.
pub fn rearrange(d: &Distribution) -> Vec<ProfilePiece> {
    let mut t = 0.0;
    d.atoms
        .iter()
        .map(|a| {
            let start = t;
            t += a.measure;
            ProfilePiece { value: a.value, start, end: t }
        })
        .collect()
}

/// Rebuilds a distribution from a rearranged profile.
pub fn from_profile(profile: &[ProfilePiece]) -> Distribution {
    Distribution::canonicalize(
        profile
            .iter()
            .map(|p| Atom { value: p.value, measure: p.end - p.start })
            .collect(),
    )
}

pub fn equimeasurable(d1: &Distribution, d2: &Distribution) -> bool {
    d1.atoms.len() == d2.atoms.len()
        && d1
            .atoms
            .iter()
            .zip(&d2.atoms)
            .all(|(a, b)| rel_eq(a.value, b.value, EPS_MEAS) && rel_eq(a.measure, b.measure, EPS_MEAS))
}

/// `Σ a_k χ_{Δ_k}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DyadicStep {
    pub coeffs: Seq,
}

impl DyadicStep {
    /// Atoms `(|a_k|, 2^k)` for each nonzero `a_k`.
    pub fn distribution(&self) -> Distribution {
        Distribution::canonicalize(
            self.coeffs
                .iter()
                .map(|(k, v)| Atom { value: v.abs(), measure: pow2(k) })
                .collect(),
        )
    }

    /// Value at `t > 0`.
    pub fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        self.coeffs.get(block_of(t))
    }
}

/// Index `k` with `t ∈ Δ_k`.
pub fn block_of(t: f64) -> i64 {
    let mut k = t.log2().floor() as i64;
    // log2 rounding near block boundaries
    if pow2(k) > t {
        k -= 1;
    } else if pow2(k + 1) <= t {
        k += 1;
    }
    k
}

/// The step embedding `S`.
pub fn embed_s(a: &Seq) -> DyadicStep {
    DyadicStep { coeffs: a.clone() }
}

/// `σ_{2^n} x`, i.e. `x(t / 2^n)`: the coefficient at `k` becomes the former
/// coefficient at `k − n`.
pub fn dilate(x: &DyadicStep, n: i64) -> DyadicStep {
    DyadicStep { coeffs: shift::shift(&x.coeffs, n) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub left: f64,
    pub right: f64,
    pub value: f64,
}

/// Piecewise-constant function with pairwise-disjoint pieces `[left, right)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PositionedStep {
    pieces: Vec<Piece>,
}

impl PositionedStep {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        for p in &pieces {
            if !(p.left.is_finite() && p.right.is_finite() && p.value.is_finite()) {
                return Err(Error::invalid("pieces", "non-finite piece"));
            }
            if p.left < 0.0 {
                return Err(Error::invalid("left", format!("piece starts at {} < 0", p.left)));
            }
            if p.left >= p.right {
                return Err(Error::invalid("right", format!("empty piece [{}, {})", p.left, p.right)));
            }
        }
        pieces.sort_by(|a, b| a.left.total_cmp(&b.left));
        if pieces.windows(2).any(|w| w[0].right > w[1].left) {
            return Err(Error::invalid("pieces", "pieces overlap"));
        }
        Ok(PositionedStep { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Distribution of `|x|`.
    pub fn distribution(&self) -> Distribution {
        Distribution::canonicalize(
            self.pieces
                .iter()
                .filter(|p| p.value != 0.0)
                .map(|p| Atom { value: p.value.abs(), measure: p.right - p.left })
                .collect(),
        )
    }
}

/// The averaging projection `Qx = Σ_k (2^{-k} ∫_{Δ_k} x) χ_{Δ_k}`.
///
/// Pieces reaching down to 0 meet infinitely many blocks; blocks below
/// `2^{MIN_BLOCK_EXP}` are not materialized.
pub fn project_q(x: &PositionedStep) -> DyadicStep {
    let mut out = Seq::zero();
    for p in &x.pieces {
        if p.value == 0.0 {
            continue;
        }
        let k_lo = if p.left <= pow2(MIN_BLOCK_EXP) { MIN_BLOCK_EXP } else { block_of(p.left) };
        // right endpoint is open
        let mut k_hi = block_of(p.right);
        if pow2(k_hi) >= p.right {
            k_hi -= 1;
        }
        for k in k_lo..=k_hi {
            let (a, b) = (pow2(k), pow2(k + 1));
            let overlap = p.right.min(b) - p.left.max(a);
            if overlap > 0.0 {
                out.add_at(k, p.value * overlap / a);
            }
        }
    }
    DyadicStep { coeffs: out }
}

/// Distribution of `Σ c_k x_k` for pairwise-disjoint copies `x_k` of `d`.
pub fn disjoint_sum(coeffs: &[f64], d: &Distribution) -> Distribution {
    Distribution::canonicalize(
        coeffs
            .iter()
            .filter(|c| **c != 0.0)
            .flat_map(|&c| {
                d.atoms
                    .iter()
                    .map(move |a| Atom { value: a.value * c.abs(), measure: a.measure })
            })
            .collect(),
    )
}

/// Distribution of the dyadic majorant `Σ_{k∈ℤ} x*(2^k) χ_{Δ_k}` of `x*`.
///
/// For `2^k` below the first breakpoint of `x*` every coefficient equals
/// `‖x‖_∞`, so the infinitely many low blocks collapse into one atom of
/// measure `2^{k0}` where `k0` is the first block reaching that breakpoint.
pub fn dyadic_majorant(d: &Distribution) -> Distribution {
    let Some(first) = d.atoms.first() else {
        return Distribution::empty();
    };
    let total = d.total_measure();
    // k0: smallest k with 2^k >= first breakpoint.
    let mut k0 = block_of(first.measure);
    if pow2(k0) < first.measure {
        k0 += 1;
    }
    let mut atoms = vec![Atom { value: first.value, measure: pow2(k0) }];
    let mut k = k0;
    while pow2(k) < total {
        let v = d.rearranged_at(pow2(k));
        if v > 0.0 {
            atoms.push(Atom { value: v, measure: pow2(k) });
        }
        k += 1;
    }
    Distribution::canonicalize(atoms)
}

/// The sequence `(x*(2^k))_{k ≥ k_min}`; entries below `k_min` are dropped.
pub fn dyadic_samples(d: &Distribution, k_min: i64) -> Seq {
    let total = d.total_measure();
    let mut s = Seq::zero();
    let mut k = k_min;
    while pow2(k) < total {
        s.set(k, d.rearranged_at(pow2(k)));
        k += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[(f64, f64)]) -> Distribution {
        Distribution::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn rearrange_examples() {
        let r = rearrange(&dist(&[(1.0, 2.0), (3.0, 1.0)]));
        assert_eq!(
            r,
            vec![
                ProfilePiece { value: 3.0, start: 0.0, end: 1.0 },
                ProfilePiece { value: 1.0, start: 1.0, end: 3.0 }
            ]
        );
        assert!(rearrange(&Distribution::empty()).is_empty());
        let r = rearrange(&dist(&[(2.0, 0.5), (2.0, 0.5), (1.0, 1.0)]));
        assert_eq!(
            r,
            vec![
                ProfilePiece { value: 2.0, start: 0.0, end: 1.0 },
                ProfilePiece { value: 1.0, start: 1.0, end: 2.0 }
            ]
        );
    }

    #[test]
    fn equimeasurable_examples() {
        assert!(equimeasurable(&dist(&[(1.0, 2.0), (3.0, 1.0)]), &dist(&[(3.0, 1.0), (1.0, 2.0)])));
        assert!(!equimeasurable(&dist(&[(1.0, 2.0)]), &dist(&[(1.0, 1.0)])));
        assert!(!equimeasurable(&dist(&[(2.0, 1.0)]), &dist(&[(2.0, 1.0), (2.0, 1.0)])));
    }

    #[test]
    fn construction_drops_zero_values_and_rejects_bad_measures() {
        assert_eq!(dist(&[(0.0, 3.0), (1.0, 1.0)]).atoms().len(), 1);
        assert!(Distribution::new([(1.0, 0.0)]).is_err());
        assert!(Distribution::new([(1.0, -1.0)]).is_err());
        assert!(Distribution::new([(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn embed_examples() {
        let x = embed_s(&Seq::unit(0));
        assert_eq!(x.eval(1.0), 1.0);
        assert_eq!(x.eval(1.999), 1.0);
        assert_eq!(x.eval(2.0), 0.0);
        let x = embed_s(&Seq::from_pairs([(0, 1.0), (1, 2.0)]));
        assert_eq!(x.eval(1.5), 1.0);
        assert_eq!(x.eval(3.0), 2.0);
        assert_eq!(x.distribution(), dist(&[(2.0, 2.0), (1.0, 1.0)]));
        assert!(embed_s(&Seq::zero()).distribution().is_empty());
    }

    #[test]
    fn dilate_examples() {
        let x = embed_s(&Seq::unit(0));
        assert_eq!(dilate(&x, 1), embed_s(&Seq::unit(1)));
        assert_eq!(dilate(&x, 0), x);
        let y = embed_s(&Seq::from_pairs([(-3, 1.5), (2, -4.0)]));
        assert_eq!(dilate(&dilate(&y, 7), -7), y);
    }

    #[test]
    fn project_q_examples() {
        let pos = |pieces: &[(f64, f64, f64)]| {
            PositionedStep::new(pieces.iter().map(|&(left, right, value)| Piece { left, right, value }).collect()).unwrap()
        };
        assert_eq!(project_q(&pos(&[(1.0, 2.0, 1.0)])).coeffs, Seq::unit(0));
        assert_eq!(project_q(&pos(&[(1.0, 1.5, 1.0)])).coeffs, Seq::from_pairs([(0, 0.5)]));
        assert_eq!(project_q(&pos(&[(2.0, 3.0, 2.0)])).coeffs, Seq::from_pairs([(1, 1.0)]));
        assert!(PositionedStep::new(vec![Piece { left: -1.0, right: 1.0, value: 1.0 }]).is_err());
        assert!(PositionedStep::new(vec![
            Piece { left: 0.0, right: 2.0, value: 1.0 },
            Piece { left: 1.0, right: 3.0, value: 1.0 }
        ])
        .is_err());
    }

    #[test]
    fn project_q_piece_touching_zero() {
        let x = PositionedStep::new(vec![Piece { left: 0.0, right: 4.0, value: 3.0 }]).unwrap();
        let q = project_q(&x).coeffs;
        assert_eq!(q.get(1), 3.0);
        assert_eq!(q.get(-40), 3.0);
        assert_eq!(q.get(2), 0.0);
        assert_eq!(q.support(), Some((MIN_BLOCK_EXP, 1)));
    }

    #[test]
    fn disjoint_sum_examples() {
        let d = dist(&[(1.0, 1.0)]);
        assert_eq!(disjoint_sum(&[1.0, 1.0], &d), dist(&[(1.0, 2.0)]));
        assert_eq!(disjoint_sum(&[2.0, 1.0], &d), dist(&[(2.0, 1.0), (1.0, 1.0)]));
        assert!(disjoint_sum(&[0.0], &dist(&[(3.0, 1.0)])).is_empty());
    }

    #[test]
    fn dyadic_majorant_of_indicator() {
        // χ_[0,3): x*(2^k) = 1 for 2^k < 3, so the majorant is 1 on (0, 4).
        let m = dyadic_majorant(&dist(&[(1.0, 3.0)]));
        assert_eq!(m, dist(&[(1.0, 4.0)]));
        let s = dyadic_samples(&dist(&[(1.0, 3.0)]), -3);
        assert_eq!(s.support(), Some((-3, 1)));
    }

    #[test]
    fn pow2_is_exact() {
        for k in -1022..=1023 {
            assert_eq!(pow2(k), 2f64.powi(k as i32));
        }
        assert_eq!(block_of(1.0), 0);
        assert_eq!(block_of(0.75), -1);
        assert_eq!(block_of(pow2(-700)), -700);
    }
}
