//! The accelerated inexact Newton method with cubic regularization (AINCR).
//!
//! The method maintains three points: the main iterate `x_t`, the estimate-
//! sequence minimizer `y_t`, and their combination
//! `w_t = (1−α_t)x_t + α_t y_t` at which the cubic model is minimized. The
//! estimate functions
//!
//! ```text
//! φ_{t+1}(x) = φ_t(x) + ((μ̄_t−μ̄_{t−1})/2)‖x−x₀‖²
//!            + (α_t/A_t)[f(x_{t+1}) + ⟨∇f(x_{t+1}),x−x_{t+1}⟩ + (λ/2)‖x−x_{t+1}‖²]
//! ```
//!
//! collapse to `const + ⟨v,x−x₀⟩ + (b/2)‖x−x₀‖² + (β/6)‖x−x₀‖³`, so their
//! minimizer `y_{t+1}` has the closed form implemented in [`y_update`]. When
//! the conditions checked by [`check_conditions`] hold, the sandwich
//! `f(x_t)/A_{t−1} ≤ φ_t* ≤ φ_t(x*)` drives the accelerated rates.

use std::time::Instant;

use nalgebra::DVector;

use crate::incr::{SolveMethod, ETA_FLOOR};
use crate::oracle::ObjectiveOracle;
use crate::subproblem::CubicModel;
use crate::subsample::HessianStrategy;
use crate::trace::{IterateTrace, TraceRow};
use crate::{Error, Result};

/// Parameter set for one AINCR run.
///
/// Both schedules use `η = 4γ`; the initial model solve uses `η = γ`. The
/// convex schedule is `α_t = 3/(t+3)`, `μ̄_t = 2μ_u(t+2)`, `β = 96γ`; the
/// strongly convex schedule holds `α_t = α̂`, `μ̄_t = λ/4`, `β = 3λ/(2R̄)`.
#[derive(Debug, Clone, Copy)]
pub struct AincrParams {
    pub lambda: f64,
    pub gamma: f64,
    /// Cubic weight of the per-iteration model (`4γ`, floored).
    pub eta: f64,
    /// Cubic weight of the estimate sequence.
    pub beta: f64,
    /// Cubic weight of the initial model solve (`γ`, floored).
    pub init_eta: f64,
    schedule: Schedule,
}

#[derive(Debug, Clone, Copy)]
enum Schedule {
    Convex { mu_u: f64 },
    StronglyConvex { alpha_hat: f64 },
}

impl AincrParams {
    /// Convex-mode parameters (`λ = 0`).
    pub fn convex(gamma: f64, mu_u: f64) -> Self {
        Self {
            lambda: 0.0,
            gamma,
            eta: (4.0 * gamma).max(ETA_FLOOR),
            beta: (96.0 * gamma).max(ETA_FLOOR),
            init_eta: gamma.max(ETA_FLOOR),
            schedule: Schedule::Convex { mu_u },
        }
    }

    /// Strongly convex parameters with constant
    /// `α̂ = min{8/9, √(λ/(18√3·μ_u)), ¼(λ/(γR̄))^{1/3}}`. `r_bar` must upper
    /// bound every `R_t` of the run; prefer the multi-stage method, which
    /// only needs an initial distance bound.
    pub fn strongly_convex(gamma: f64, lambda: f64, mu_u: f64, r_bar: f64) -> Result<Self> {
        if !(lambda > 0.0) || !(r_bar > 0.0) || mu_u < 0.0 || gamma < 0.0 {
            return Err(Error::config(
                "strongly convex AINCR needs lambda > 0, r_bar > 0, mu_u >= 0, gamma >= 0",
            ));
        }
        let mut alpha_hat: f64 = 8.0 / 9.0;
        if mu_u > 0.0 {
            alpha_hat = alpha_hat.min((lambda / (18.0 * 3f64.sqrt() * mu_u)).sqrt());
        }
        if gamma > 0.0 {
            alpha_hat = alpha_hat.min(0.25 * (lambda / (gamma * r_bar)).cbrt());
        }
        Ok(Self {
            lambda,
            gamma,
            eta: (4.0 * gamma).max(ETA_FLOOR),
            beta: (1.5 * lambda / r_bar).max(ETA_FLOOR),
            init_eta: gamma.max(ETA_FLOOR),
            schedule: Schedule::StronglyConvex { alpha_hat },
        })
    }

    /// `α_t` for `t ≥ 1` (`α₀ = 1` is implicit in `A₀ = 1`).
    pub fn alpha(&self, t: usize) -> f64 {
        match self.schedule {
            Schedule::Convex { .. } => 3.0 / (t as f64 + 3.0),
            Schedule::StronglyConvex { alpha_hat } => alpha_hat,
        }
    }

    /// `μ̄_t`, nondecreasing in `t`.
    pub fn mu_bar(&self, t: usize) -> f64 {
        match self.schedule {
            Schedule::Convex { mu_u } => 2.0 * mu_u * (t as f64 + 2.0),
            Schedule::StronglyConvex { .. } => self.lambda / 4.0,
        }
    }
}

/// `A_t = ∏_{i=1}^t (1−α_i)` with `A₀ = 1`. For the convex schedule this
/// equals `6/((t+1)(t+2)(t+3))` up to roundoff.
pub fn a_sequence(t: usize, params: &AincrParams) -> f64 {
    let mut a = 1.0;
    for i in 1..=t {
        a *= 1.0 - params.alpha(i);
    }
    a
}

/// `w_t = (1−α_t)x_t + α_t y_t`.
pub fn w_update(x: &DVector<f64>, y: &DVector<f64>, alpha: f64) -> DVector<f64> {
    x * (1.0 - alpha) + y * alpha
}

/// Closed-form minimizer of `⟨v,x−x₀⟩ + (b/2)‖x−x₀‖² + (β/6)‖x−x₀‖³`:
/// `x₀ − 2v/(b + √(b² + 2β‖v‖))`, and `x₀` itself when `v = 0`.
pub fn y_update(x0: &DVector<f64>, v: &DVector<f64>, b: f64, beta: f64) -> DVector<f64> {
    assert!(b >= 0.0, "negative quadratic coefficient b = {b}");
    let v_norm = v.norm();
    if v_norm == 0.0 {
        return x0.clone();
    }
    let denom = b + (b * b + 2.0 * beta * v_norm).sqrt();
    assert!(denom > 0.0, "estimate-sequence minimizer is undefined");
    x0 - v * (2.0 / denom)
}

/// Margins of the two sufficient conditions backing the sandwich lemma:
/// `α_t²/A_t ≤ (2μ̄_{t−1}+λ̄_t)/(√3·μ_t)` and
/// `α_t³/A_t ≤ 9(β+3λ̄_t/R_t)/(32(2γ+η))`.
#[derive(Debug, Clone, Copy)]
pub struct ConditionReport {
    pub first_lhs: f64,
    pub first_rhs: f64,
    pub second_lhs: f64,
    pub second_rhs: f64,
    /// `R_t = α_t A_t⁻¹‖∇f(x_{t+1})‖/(μ̄_{t−1}+λ̄_t)`, infinite when the
    /// denominator vanishes.
    pub r_t: f64,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.first_lhs <= self.first_rhs && self.second_lhs <= self.second_rhs
    }
}

/// Evaluates the sufficient conditions at iteration `t ≥ 1`. Diagnostic
/// only: the theory is sufficient, not necessary, so failures are reported,
/// never fatal.
#[allow(clippy::too_many_arguments)]
pub fn check_conditions(
    alpha_t: f64,
    a_t: f64,
    a_prev: f64,
    mu_bar_prev: f64,
    mu_t: f64,
    params: &AincrParams,
    grad_next_norm: f64,
) -> ConditionReport {
    let lambda_bar = 0.5 * params.lambda * (1.0 / a_prev - 1.0);
    let first_lhs = alpha_t * alpha_t / a_t;
    let first_rhs = if mu_t == 0.0 {
        f64::INFINITY
    } else {
        (2.0 * mu_bar_prev + lambda_bar) / (3f64.sqrt() * mu_t)
    };
    let denom = mu_bar_prev + lambda_bar;
    let r_t = if denom > 0.0 {
        alpha_t / a_t * grad_next_norm / denom
    } else {
        f64::INFINITY
    };
    let shrink = if lambda_bar == 0.0 {
        0.0
    } else if r_t == 0.0 {
        f64::INFINITY
    } else {
        3.0 * lambda_bar / r_t
    };
    let second_lhs = alpha_t.powi(3) / a_t;
    let second_rhs = 9.0 * (params.beta + shrink) / (32.0 * (2.0 * params.gamma + params.eta));
    ConditionReport {
        first_lhs,
        first_rhs,
        second_lhs,
        second_rhs,
        r_t,
    }
}

/// Mutable state of an AINCR run after producing `x_t` and `y_t`.
#[derive(Debug, Clone)]
pub struct AincrState {
    /// Index of the current iterate; starts at 1 after [`aincr_init`].
    pub t: usize,
    pub x: DVector<f64>,
    pub y: DVector<f64>,
    pub x0: DVector<f64>,
    /// `A_{t−1}`.
    pub a_prev: f64,
    /// `μ̄_{t−1}`.
    pub mu_bar_prev: f64,
    /// Accumulator `v_{t−1} = Σ_{τ=1}^{t−1} (α_τ/A_τ)[∇f(x_{τ+1}) + λ(x₀−x_{τ+1})]`.
    v: DVector<f64>,
    /// Constant term of `φ_t`.
    phi_const: f64,
    /// Cached `f(x_t)` and `∇f(x_t)`.
    pub f_x: f64,
    pub grad_x: DVector<f64>,
    /// Diagnostics of the step that produced `x_t`.
    pub last_eta: f64,
    pub last_mu: f64,
    pub last_step_norm: f64,
    pub last_conditions: Option<ConditionReport>,
}

impl AincrState {
    /// Quadratic coefficient `b_{t−1} = μ̄_{t−1} + λ(A_{t−1}⁻¹ − 1)` of `φ_t`.
    pub fn phi_quadratic_coefficient(&self, params: &AincrParams) -> f64 {
        self.mu_bar_prev + params.lambda * (1.0 / self.a_prev - 1.0)
    }

    /// `φ_t(x)` through the collapsed closed form.
    pub fn phi_at(&self, x: &DVector<f64>, params: &AincrParams) -> f64 {
        let d = x - &self.x0;
        let b = self.phi_quadratic_coefficient(params);
        self.phi_const + self.v.dot(&d) + 0.5 * b * d.norm_squared()
            + params.beta / 6.0 * d.norm().powi(3)
    }

    /// `φ_t* = φ_t(y_t)`, the estimate-sequence minimum.
    pub fn phi_star(&self, params: &AincrParams) -> f64 {
        self.phi_at(&self.y, params)
    }

    /// `Σ_{τ=1}^{t−1} α_τ/A_τ`, which telescopes to `A_{t−1}⁻¹ − 1`.
    pub fn accumulator_weight(&self) -> f64 {
        1.0 / self.a_prev - 1.0
    }
}

/// Step 0: `x₁ = argmin f̃_γ(x;x₀)`, `y₁ = x₀`.
pub fn aincr_init(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    params: &AincrParams,
    hessian: &HessianStrategy,
    method: SolveMethod,
    subproblem_tol: f64,
) -> Result<AincrState> {
    let (h0, mu0) = hessian.approximate(oracle, x0, 0)?;
    let model = CubicModel::new(oracle.gradient(x0), h0, params.init_eta, x0.clone())?;
    let sol = method.solve(&model, subproblem_tol)?;
    let x1 = x0 + &sol.step;
    let f_x = oracle.value(&x1);
    let grad_x = oracle.gradient(&x1);
    Ok(AincrState {
        t: 1,
        x: x1,
        y: x0.clone(),
        x0: x0.clone(),
        a_prev: 1.0,
        mu_bar_prev: params.mu_bar(0),
        v: DVector::zeros(x0.len()),
        phi_const: f_x,
        f_x,
        grad_x,
        last_eta: params.init_eta,
        last_mu: mu0,
        last_step_norm: sol.step.norm(),
        last_conditions: None,
    })
}

/// Steps 1–4: advance the state from `(x_t, y_t)` to `(x_{t+1}, y_{t+1})`.
pub fn aincr_iterate(
    state: &mut AincrState,
    oracle: &dyn ObjectiveOracle,
    params: &AincrParams,
    hessian: &HessianStrategy,
    method: SolveMethod,
    subproblem_tol: f64,
) -> Result<()> {
    let t = state.t;
    let alpha = params.alpha(t);
    let w = w_update(&state.x, &state.y, alpha);
    let (h, mu) = hessian.approximate(oracle, &w, t as u64)?;
    let model = CubicModel::new(oracle.gradient(&w), h, params.eta, w)?;
    let sol = method.solve(&model, subproblem_tol)?;
    let x_next = &model.anchor + &sol.step;

    let a_t = (1.0 - alpha) * state.a_prev;
    let grad_next = oracle.gradient(&x_next);
    let f_next = oracle.value(&x_next);
    let weight = alpha / a_t;
    let offset = &state.x0 - &x_next;
    state.v += (&grad_next + &offset * params.lambda) * weight;
    state.phi_const += weight
        * (f_next + grad_next.dot(&offset) + 0.5 * params.lambda * offset.norm_squared());

    let report = check_conditions(
        alpha,
        a_t,
        state.a_prev,
        state.mu_bar_prev,
        mu,
        params,
        grad_next.norm(),
    );
    if !report.passed() {
        log::warn!(
            "estimate-sequence conditions failed at t={t}: \
             {:.3e} vs {:.3e}, {:.3e} vs {:.3e}",
            report.first_lhs,
            report.first_rhs,
            report.second_lhs,
            report.second_rhs
        );
    }

    let b_t = params.mu_bar(t) + params.lambda * (1.0 / a_t - 1.0);
    state.last_step_norm = (&x_next - &state.x).norm();
    state.y = y_update(&state.x0, &state.v, b_t, params.beta);
    state.x = x_next;
    state.f_x = f_next;
    state.grad_x = grad_next;
    state.a_prev = a_t;
    state.mu_bar_prev = params.mu_bar(t);
    state.last_eta = params.eta;
    state.last_mu = mu;
    state.last_conditions = Some(report);
    state.t = t + 1;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct AincrConfig {
    pub params: AincrParams,
    pub hessian: HessianStrategy,
    /// Budget counted in x-indices: the run stops once `x_{max_iters}` is
    /// produced.
    pub max_iters: usize,
    /// Early exit on `‖∇f(x_t)‖`; `None` runs the full budget.
    pub grad_tol: Option<f64>,
    pub subproblem: SolveMethod,
    pub subproblem_tol: f64,
}

impl AincrConfig {
    pub fn new(params: AincrParams, hessian: HessianStrategy) -> Self {
        Self {
            params,
            hessian,
            max_iters: 500,
            grad_tol: Some(1e-8),
            subproblem: SolveMethod::default(),
            subproblem_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AincrRun {
    pub trace: IterateTrace,
    pub final_point: DVector<f64>,
}

/// Runs AINCR from `x0`, recording one row per iterate `x₀, x₁, …`.
pub fn run_aincr(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &AincrConfig,
) -> Result<AincrRun> {
    run_aincr_with(x0, oracle, config, |_, _| {})
}

/// [`run_aincr`] with a per-row hook (same contract as
/// [`crate::incr::run_incr_with`]).
pub fn run_aincr_with(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &AincrConfig,
    mut on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<AincrRun> {
    if config.max_iters < 1 {
        return Err(Error::config("AINCR needs a budget of at least one index"));
    }
    let start = Instant::now();
    let mut trace = IterateTrace::new("aincr");

    let grad0 = oracle.gradient(x0);
    let mut row = TraceRow::new(0, oracle.value(x0), grad0.norm());
    row.eta = config.params.init_eta;
    if config.grad_tol.is_some_and(|tol| grad0.norm() <= tol) {
        row.time_s = start.elapsed().as_secs_f64();
        on_row(x0, &mut row);
        trace.push(row);
        return Ok(AincrRun {
            trace,
            final_point: x0.clone(),
        });
    }

    let mut state = aincr_init(
        x0,
        oracle,
        &config.params,
        &config.hessian,
        config.subproblem,
        config.subproblem_tol,
    )?;
    row.mu = state.last_mu;
    row.step_norm = state.last_step_norm;
    row.time_s = start.elapsed().as_secs_f64();
    on_row(x0, &mut row);
    trace.push(row);

    loop {
        let done = state.t >= config.max_iters
            || config
                .grad_tol
                .is_some_and(|tol| state.grad_x.norm() <= tol);
        let mut row = TraceRow::new(state.t, state.f_x, state.grad_x.norm());
        row.eta = state.last_eta;
        row.mu = state.last_mu;
        if done {
            row.time_s = start.elapsed().as_secs_f64();
            on_row(&state.x, &mut row);
            trace.push(row);
            break;
        }
        let x_t = state.x.clone();
        aincr_iterate(
            &mut state,
            oracle,
            &config.params,
            &config.hessian,
            config.subproblem,
            config.subproblem_tol,
        )?;
        row.step_norm = state.last_step_norm;
        row.time_s = start.elapsed().as_secs_f64();
        on_row(&x_t, &mut row);
        trace.push(row);
    }
    Ok(AincrRun {
        trace,
        final_point: state.x,
    })
}
