//! The inexact Newton method with cubic regularization (INCR).
//!
//! Each iteration approximates the Hessian via the configured
//! [`HessianStrategy`], minimizes the cubic model
//! `f(x_t) + ⟨∇f(x_t),x−x_t⟩ + ½⟨H_t(x−x_t),x−x_t⟩ + (η_t/6)‖x−x_t‖³`,
//! and steps to its minimizer. With `η_t = γ` (the Hessian-Lipschitz
//! constant) and one-sided error `0 ⪯ H_t−∇²f(x_t) ⪯ μ_tI`, the objective
//! decreases monotonically; when only `‖H_t−∇²f(x_t)‖ ≤ μ_t` holds, the
//! adaptive schedule `η_t = γ + 2μ_u/(α_t R)` restores the guarantees.

use std::time::Instant;

use nalgebra::DVector;

use crate::oracle::{ObjectiveOracle, SmoothnessInfo};
use crate::subproblem::{solve_exact, solve_lanczos, CubicModel, CubicSolution};
use crate::subsample::HessianStrategy;
use crate::trace::{IterateTrace, TraceRow};
use crate::{Error, Result};

/// Cubic weights are floored here so quadratic fixtures (γ = 0) keep the
/// model well posed.
pub const ETA_FLOOR: f64 = 1e-12;

/// Krylov dimension cap used by [`SolveMethod::Auto`].
pub const DEFAULT_LANCZOS_DIM: usize = 50;

/// How outer iterations minimize their cubic models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Eigendecomposition + secular equation.
    Exact,
    /// Krylov reduction with the given dimension cap.
    Lanczos { max_dim: usize },
    /// Exact below the dimension threshold, Lanczos above it.
    Auto { dim_threshold: usize },
}

impl Default for SolveMethod {
    fn default() -> Self {
        SolveMethod::Auto { dim_threshold: 64 }
    }
}

impl SolveMethod {
    pub fn solve(&self, model: &CubicModel, tol: f64) -> Result<CubicSolution> {
        match *self {
            SolveMethod::Exact => solve_exact(model, tol),
            SolveMethod::Lanczos { max_dim } => solve_lanczos(model, max_dim, tol),
            SolveMethod::Auto { dim_threshold } => {
                if model.dim() > dim_threshold {
                    solve_lanczos(model, DEFAULT_LANCZOS_DIM.min(model.dim()), tol)
                } else {
                    solve_exact(model, tol)
                }
            }
        }
    }
}

/// Cubic-regularization weight schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaPolicy {
    /// `η_t = γ` for all `t`.
    FixedGamma,
    /// `η_t = γ + 2μ_u/(α_t·R)` where `R` bounds `‖x_t − x*‖`.
    Adaptive { mu_u: f64, radius: f64 },
}

/// α-sequence used by the adaptive η schedule and by the rate bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaSchedule {
    /// `α_t = 3/(t+3)`.
    Convex,
    /// The constant `ᾱ = min{1/3, λ/(6μ_u), √(2λ/(γR))}`.
    StronglyConvex,
}

#[derive(Debug, Clone)]
pub struct IncrConfig {
    pub eta_policy: EtaPolicy,
    pub alpha_schedule: AlphaSchedule,
    pub hessian: HessianStrategy,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub smoothness: SmoothnessInfo,
    pub subproblem: SolveMethod,
    pub subproblem_tol: f64,
}

impl IncrConfig {
    /// Fixed `η_t = γ` with default stopping (`‖∇f‖ ≤ 1e-8`, 500 iterations).
    pub fn fixed_eta(smoothness: SmoothnessInfo, hessian: HessianStrategy) -> Self {
        Self {
            eta_policy: EtaPolicy::FixedGamma,
            alpha_schedule: AlphaSchedule::Convex,
            hessian,
            max_iters: 500,
            grad_tol: 1e-8,
            smoothness,
            subproblem: SolveMethod::default(),
            subproblem_tol: 1e-10,
        }
    }

    /// Adaptive `η_t = γ + 2μ_u/(α_t R)`.
    pub fn adaptive_eta(
        smoothness: SmoothnessInfo,
        hessian: HessianStrategy,
        mu_u: f64,
        radius: f64,
    ) -> Result<Self> {
        if mu_u < 0.0 || !(radius > 0.0) {
            return Err(Error::config(
                "adaptive eta requires mu_u >= 0 and a positive radius",
            ));
        }
        Ok(Self {
            eta_policy: EtaPolicy::Adaptive { mu_u, radius },
            ..Self::fixed_eta(smoothness, hessian)
        })
    }

    fn validate(&self) -> Result<()> {
        if !(self.grad_tol > 0.0) {
            return Err(Error::config("gradient tolerance must be positive"));
        }
        if let EtaPolicy::Adaptive { mu_u, radius } = self.eta_policy {
            if mu_u < 0.0 || !(radius > 0.0) {
                return Err(Error::config(
                    "adaptive eta requires mu_u >= 0 and a positive radius",
                ));
            }
        }
        Ok(())
    }
}

/// `ᾱ = min{1/3, λ/(6μ_u), √(2λ/(γR))}`; the middle term drops out when
/// `μ_u = 0`, the last when `γ = 0`.
pub fn alpha_strong(lambda: f64, mu_u: f64, gamma: f64, radius: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::config(
            "the strongly convex schedule requires lambda > 0",
        ));
    }
    if mu_u < 0.0 || gamma < 0.0 || !(radius > 0.0) {
        return Err(Error::config("alpha_strong parameters out of range"));
    }
    let mut alpha: f64 = 1.0 / 3.0;
    if mu_u > 0.0 {
        alpha = alpha.min(lambda / (6.0 * mu_u));
    }
    if gamma > 0.0 {
        alpha = alpha.min((2.0 * lambda / (gamma * radius)).sqrt());
    }
    Ok(alpha)
}

/// `α_t = 3/(t+3)`, so `α₀ = 1`.
pub fn alpha_convex(t: usize) -> f64 {
    3.0 / (t as f64 + 3.0)
}

/// The cubic weight for iteration `t` under the configured policy, floored
/// at [`ETA_FLOOR`].
pub fn eta_schedule(t: usize, config: &IncrConfig) -> Result<f64> {
    let gamma = config.smoothness.hessian_lipschitz;
    let eta = match config.eta_policy {
        EtaPolicy::FixedGamma => gamma,
        EtaPolicy::Adaptive { mu_u, radius } => {
            if mu_u == 0.0 {
                gamma
            } else {
                let alpha = match config.alpha_schedule {
                    AlphaSchedule::Convex => alpha_convex(t),
                    AlphaSchedule::StronglyConvex => alpha_strong(
                        config.smoothness.strong_convexity,
                        mu_u,
                        gamma,
                        radius,
                    )?,
                };
                gamma + 2.0 * mu_u / (alpha * radius)
            }
        }
    };
    Ok(eta.max(ETA_FLOOR))
}

/// Per-step diagnostics surfaced in the trace.
#[derive(Debug, Clone, Copy)]
pub struct StepDiagnostics {
    pub eta: f64,
    pub mu: f64,
    pub step_norm: f64,
    pub kkt_residual: f64,
    pub converged: bool,
}

/// One INCR step from `x_t` with a freshly computed gradient.
pub fn incr_step(
    x: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &IncrConfig,
    t: usize,
) -> Result<(DVector<f64>, StepDiagnostics)> {
    step_from_gradient(x, oracle.gradient(x), oracle, config, t)
}

fn step_from_gradient(
    x: &DVector<f64>,
    gradient: DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &IncrConfig,
    t: usize,
) -> Result<(DVector<f64>, StepDiagnostics)> {
    let eta = eta_schedule(t, config)?;
    incr_step_with_eta(
        x,
        gradient,
        oracle,
        &config.hessian,
        eta,
        config.subproblem,
        config.subproblem_tol,
        t as u64,
    )
}

/// One cubic-model step with an explicitly chosen weight `η`.
///
/// This is the kernel behind [`incr_step`]; it also serves schedules that
/// depend on quantities outside the solver's knowledge, such as the
/// distance-based `η_t = γ + 2μ_t/(α_t‖x*−x_t‖)` exercised in tests.
#[allow(clippy::too_many_arguments)]
pub fn incr_step_with_eta(
    x: &DVector<f64>,
    gradient: DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    hessian: &HessianStrategy,
    eta: f64,
    method: SolveMethod,
    subproblem_tol: f64,
    draw: u64,
) -> Result<(DVector<f64>, StepDiagnostics)> {
    let (h, mu) = hessian.approximate(oracle, x, draw)?;
    let model = CubicModel::new(gradient, h, eta.max(ETA_FLOOR), x.clone())?;
    let sol = method.solve(&model, subproblem_tol)?;
    let next = &model.anchor + &sol.step;
    Ok((
        next,
        StepDiagnostics {
            eta: model.reg,
            mu,
            step_norm: sol.step.norm(),
            kkt_residual: sol.kkt_residual,
            converged: sol.converged,
        },
    ))
}

/// Result of an INCR run.
#[derive(Debug, Clone)]
pub struct SolverRun {
    pub trace: IterateTrace,
    pub final_point: DVector<f64>,
}

/// Runs INCR until `‖∇f(x_t)‖ ≤ grad_tol` or the iteration budget is spent.
pub fn run_incr(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &IncrConfig,
) -> Result<SolverRun> {
    run_incr_with(x0, oracle, config, |_, _| {})
}

/// [`run_incr`] with a hook invoked once per recorded row, receiving the
/// iterate the row describes. Callers attach classification metrics or
/// harvest iterates through it.
pub fn run_incr_with(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &IncrConfig,
    mut on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<SolverRun> {
    config.validate()?;
    let start = Instant::now();
    let mut trace = IterateTrace::new("incr");
    let mut x = x0.clone();
    for t in 0..=config.max_iters {
        let gradient = oracle.gradient(&x);
        let grad_norm = gradient.norm();
        let mut row = TraceRow::new(t, oracle.value(&x), grad_norm);
        row.eta = eta_schedule(t, config)?;
        if grad_norm <= config.grad_tol || t == config.max_iters {
            row.time_s = start.elapsed().as_secs_f64();
            on_row(&x, &mut row);
            trace.push(row);
            break;
        }
        let (next, diag) = step_from_gradient(&x, gradient, oracle, config, t)?;
        row.mu = diag.mu;
        row.step_norm = diag.step_norm;
        row.time_s = start.elapsed().as_secs_f64();
        on_row(&x, &mut row);
        trace.push(row);
        x = next;
    }
    Ok(SolverRun {
        trace,
        final_point: x,
    })
}
