//! Numerical toolkit for rearrangement-invariant function spaces on `(0, ∞)`.
//!
//! The crate computes dilation (Boyd) indices of Lorentz and Orlicz spaces
//! from their fundamental functions, assembles the approximate point spectrum
//! of the doubling operator together with the set of `p` for which `ℓ^p` is
//! symmetrically finitely represented, and runs finite-truncation probes of the
//! shift operators `τ_λ = τ − λI` acting on the dyadic sequence lattice `E_X`.
//!
//! Module map:
//!
//! - [`functions`]: distributions, rearrangement, the dyadic embedding `S`,
//!   dilation and the averaging projection `Q`.
//! - [`spaces`]: generating functions `ψ`/`N` and every norm evaluator.
//! - [`shift`]: finitely supported sequences on `ℤ`, shifts, `τ_λ`, window
//!   constructions and the right inverse `T`.
//! - [`indices`]: weight sequences and the six dilation exponents.
//! - [`spectra`]: spectrum assembly, per-λ classification and numerical probes.
//! - [`witness`]: disjoint equimeasurable families and their `ℓ^p` distortion.

pub mod error;
pub mod functions;
pub mod indices;
pub mod shift;
pub mod spaces;
pub mod spectra;
pub mod witness;

pub use error::{Error, Result};
pub use functions::{Atom, Distribution, DyadicStep, PositionedStep};
pub use indices::{IndexSet, WeightSeq};
pub use shift::{Seq, TruncatedSeq};
pub use spaces::{FnSpec, SpaceSpec};
pub use spectra::{LambdaClass, ProbeResult, SpectrumReport, ThetaInterval, Verdict};
pub use witness::WitnessFamily;
