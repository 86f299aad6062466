//! Inexact-Hessian strategies.
//!
//! Finite-sum objectives admit the subsampled Hessian
//! `Ĥ(x) = (1/|S_H|) Σ_{j∈S_H} ∇²f_j(x)` over a uniform subset `S_H` drawn
//! without replacement. Each [`HessianMode`] pairs a construction with the
//! error level `μ_t` it certifies for the outer algorithms:
//!
//! | mode                 | returned matrix | `μ_t` | error assumption satisfied    |
//! |----------------------|-----------------|-------|-------------------------------|
//! | `Exact`              | `∇²f(x)`        | 0     | all (zero error)              |
//! | `SubsampledShiftedA1`| `Ĥ + δI`        | 2δ    | `0 ⪯ H−∇²f ⪯ μI`              |
//! | `SubsampledShiftedA4`| `Ĥ + 3δI`       | 4δ    | `(μ/2)I ⪯ H−∇²f ⪯ μI`         |
//! | `SubsampledRaw`      | `Ĥ`             | δ     | `‖H−∇²f‖ ≤ μ`, `H ⪰ 0`        |
//! | `ScaledIdentity`     | `L·I`           | L     | `0 ⪯ H−∇²f ⪯ μI`              |
//!
//! The shift-based guarantees hold whenever the draw achieves spectral error
//! `‖Ĥ−∇²f‖ ≤ δ`, which [`sample_size_bound`] makes a high-probability
//! event.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::ObjectiveOracle;
use crate::{linalg, Error, Result};

/// How the per-iteration Hessian approximation is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HessianMode {
    Exact,
    SubsampledShiftedA1,
    SubsampledShiftedA4,
    SubsampledRaw,
    ScaledIdentity,
}

impl HessianMode {
    pub fn is_subsampled(self) -> bool {
        matches!(
            self,
            HessianMode::SubsampledShiftedA1
                | HessianMode::SubsampledShiftedA4
                | HessianMode::SubsampledRaw
        )
    }
}

/// A seeded, reproducible recipe for Hessian approximations.
///
/// Draws are indexed by an explicit counter (the outer iteration number):
/// draw `t` uses ChaCha stream `t` of `rng_seed`, so concurrent or repeated
/// runs see identical subsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianStrategy {
    pub mode: HessianMode,
    /// `|S_H|`; ignored by `Exact` and `ScaledIdentity`.
    pub sample_count: usize,
    /// Spectral error target δ for subsampled modes.
    pub delta: f64,
    pub rng_seed: u64,
}

impl HessianStrategy {
    pub fn exact() -> Self {
        Self {
            mode: HessianMode::Exact,
            sample_count: 0,
            delta: 0.0,
            rng_seed: 0,
        }
    }

    pub fn scaled_identity() -> Self {
        Self {
            mode: HessianMode::ScaledIdentity,
            sample_count: 0,
            delta: 0.0,
            rng_seed: 0,
        }
    }

    pub fn subsampled(mode: HessianMode, sample_count: usize, delta: f64, rng_seed: u64) -> Self {
        Self {
            mode,
            sample_count,
            delta,
            rng_seed,
        }
    }

    /// The error level `μ_t` this strategy reports to the outer algorithm.
    pub fn mu(&self, oracle: &dyn ObjectiveOracle) -> f64 {
        match self.mode {
            HessianMode::Exact => 0.0,
            HessianMode::SubsampledShiftedA1 => 2.0 * self.delta,
            HessianMode::SubsampledShiftedA4 => 4.0 * self.delta,
            HessianMode::SubsampledRaw => self.delta,
            HessianMode::ScaledIdentity => scaled_identity_level(oracle),
        }
    }

    /// Produces `(H_t, μ_t)` at `x` for the given draw counter.
    pub fn approximate(
        &self,
        oracle: &dyn ObjectiveOracle,
        x: &DVector<f64>,
        draw: u64,
    ) -> Result<(DMatrix<f64>, f64)> {
        match self.mode {
            HessianMode::Exact => Ok((oracle.hessian(x), 0.0)),
            HessianMode::ScaledIdentity => {
                let l = scaled_identity_level(oracle);
                let n = oracle.dim();
                Ok((DMatrix::from_diagonal_element(n, n, l), l))
            }
            _ => subsampled_hessian(oracle, x, self, draw),
        }
    }
}

fn scaled_identity_level(oracle: &dyn ObjectiveOracle) -> f64 {
    oracle
        .smoothness()
        .grad_lipschitz
        .expect("scaled-identity strategy requires a gradient Lipschitz constant")
}

/// Subsampled Hessian with the mode's shift applied, plus the certified
/// `μ_t`.
///
/// `S_H` is drawn uniformly without replacement from `{0..m-1}` using ChaCha
/// stream `draw` of the strategy seed. Requires a subsampled or
/// scaled-identity mode and `1 ≤ sample_count ≤ m`.
pub fn subsampled_hessian(
    oracle: &dyn ObjectiveOracle,
    x: &DVector<f64>,
    strategy: &HessianStrategy,
    draw: u64,
) -> Result<(DMatrix<f64>, f64)> {
    let m = oracle.component_count();
    match strategy.mode {
        HessianMode::ScaledIdentity => {
            let l = scaled_identity_level(oracle);
            let n = oracle.dim();
            return Ok((DMatrix::from_diagonal_element(n, n, l), l));
        }
        HessianMode::Exact => {
            return Err(Error::config(
                "subsampled_hessian called with the exact mode; use approximate()",
            ))
        }
        _ => {}
    }
    if strategy.sample_count < 1 || strategy.sample_count > m {
        return Err(Error::config(format!(
            "sample count {} outside [1, {m}]",
            strategy.sample_count
        )));
    }
    if !(strategy.delta > 0.0) {
        return Err(Error::config("subsampled modes require delta > 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.rng_seed);
    rng.set_stream(draw);
    let chosen = rand::seq::index::sample(&mut rng, m, strategy.sample_count);
    let mut h = mean_component_hessian(oracle, x, chosen.iter());
    let (shift, mu) = match strategy.mode {
        HessianMode::SubsampledShiftedA1 => (strategy.delta, 2.0 * strategy.delta),
        HessianMode::SubsampledShiftedA4 => (3.0 * strategy.delta, 4.0 * strategy.delta),
        HessianMode::SubsampledRaw => (0.0, strategy.delta),
        _ => unreachable!(),
    };
    if shift != 0.0 {
        for i in 0..h.nrows() {
            h[(i, i)] += shift;
        }
    }
    Ok((h, mu))
}

/// Mean of the component Hessians over an explicit index set (no shift).
/// This is the deterministic kernel behind [`subsampled_hessian`]; tests
/// enumerate subsets through it.
pub fn mean_component_hessian(
    oracle: &dyn ObjectiveOracle,
    x: &DVector<f64>,
    indices: impl IntoIterator<Item = usize>,
) -> DMatrix<f64> {
    let n = oracle.dim();
    let mut h = DMatrix::zeros(n, n);
    let mut count = 0usize;
    for j in indices {
        h += oracle.component_hessian(j, x);
        count += 1;
    }
    assert!(count > 0, "empty index set");
    h /= count as f64;
    linalg::symmetrize(&mut h);
    h
}

/// Subsample size guaranteeing spectral error ≤ δ with probability ≥ 1−Λ:
/// `⌈c·L²·ln(2n/Λ)/δ²⌉` with `c = 16`, reduced to `c = 4` when every
/// component is convex.
pub fn sample_size_bound(
    grad_lipschitz: f64,
    delta: f64,
    failure_prob: f64,
    dim: usize,
    components_convex: bool,
) -> Result<usize> {
    if !(failure_prob > 0.0 && failure_prob < 1.0) {
        return Err(Error::config(format!(
            "failure probability must lie in (0,1), got {failure_prob}"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::config("delta must be positive"));
    }
    if !(grad_lipschitz > 0.0) || dim < 1 {
        return Err(Error::config("need L > 0 and n >= 1"));
    }
    let c = if components_convex { 4.0 } else { 16.0 };
    let bound =
        c * grad_lipschitz * grad_lipschitz * (2.0 * dim as f64 / failure_prob).ln() / (delta * delta);
    Ok(bound.ceil() as usize)
}
