//! First-order baselines: Cubic-GD (the inexact Newton scheme with
//! `H_t = L·I`, whose cubic model has a closed-form radial minimizer) and a
//! constant-step Nesterov accelerated-gradient method.

use std::time::Instant;

use nalgebra::DVector;

use crate::oracle::ObjectiveOracle;
use crate::trace::{IterateTrace, TraceRow};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMethod {
    CubicGd,
    NesterovAg,
}

#[derive(Debug, Clone, Copy)]
pub struct BaselineConfig {
    pub method: BaselineMethod,
    /// Gradient Lipschitz constant L > 0.
    pub grad_lipschitz: f64,
    /// Strong-convexity modulus; λ > 0 selects the strongly convex momentum
    /// `(√L−√λ)/(√L+√λ)`, λ = 0 the `t/(t+3)` schedule.
    pub lambda: f64,
    /// Cubic weight for Cubic-GD.
    pub eta: f64,
    pub max_iters: usize,
    pub grad_tol: f64,
}

impl BaselineConfig {
    pub fn new(method: BaselineMethod, grad_lipschitz: f64, lambda: f64) -> Self {
        Self {
            method,
            grad_lipschitz,
            lambda,
            eta: 1.0,
            max_iters: 10_000,
            grad_tol: 1e-8,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.grad_lipschitz > 0.0) {
            return Err(Error::config("baselines require L > 0"));
        }
        if self.lambda < 0.0 || self.lambda > self.grad_lipschitz {
            return Err(Error::config("need 0 <= lambda <= L"));
        }
        if self.method == BaselineMethod::CubicGd && !(self.eta > 0.0) {
            return Err(Error::config("Cubic-GD requires eta > 0"));
        }
        Ok(())
    }
}

/// Minimizer of the cubic model with `H = L·I`: a step of length
/// `τ = 2‖g‖/(L + √(L² + 2η‖g‖))` along `−g` (the rationalized root of
/// `Lτ + (η/2)τ² = ‖g‖`), and zero when `g = 0`.
pub fn cubic_gd_step(gradient: &DVector<f64>, grad_lipschitz: f64, eta: f64) -> DVector<f64> {
    let g_norm = gradient.norm();
    if g_norm == 0.0 {
        return DVector::zeros(gradient.len());
    }
    let tau = 2.0 * g_norm
        / (grad_lipschitz
            + (grad_lipschitz * grad_lipschitz + 2.0 * eta * g_norm).sqrt());
    gradient * (-tau / g_norm)
}

#[derive(Debug, Clone)]
pub struct BaselineRun {
    pub trace: IterateTrace,
    pub final_point: DVector<f64>,
}

/// Runs the configured baseline from `x0`.
pub fn run_baseline(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &BaselineConfig,
) -> Result<BaselineRun> {
    run_baseline_with(x0, oracle, config, |_, _| {})
}

/// [`run_baseline`] with a per-row hook (same contract as
/// [`crate::incr::run_incr_with`]).
pub fn run_baseline_with(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &BaselineConfig,
    on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<BaselineRun> {
    config.validate()?;
    match config.method {
        BaselineMethod::CubicGd => run_cubic_gd(x0, oracle, config, on_row),
        BaselineMethod::NesterovAg => run_nesterov_ag(x0, oracle, config, on_row),
    }
}

fn run_cubic_gd(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &BaselineConfig,
    mut on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<BaselineRun> {
    let start = Instant::now();
    let mut trace = IterateTrace::new("cubic_gd");
    let mut x = x0.clone();
    for t in 0..=config.max_iters {
        let gradient = oracle.gradient(&x);
        let grad_norm = gradient.norm();
        let mut row = TraceRow::new(t, oracle.value(&x), grad_norm);
        row.eta = config.eta;
        row.mu = config.grad_lipschitz;
        if grad_norm <= config.grad_tol || t == config.max_iters {
            row.time_s = start.elapsed().as_secs_f64();
            on_row(&x, &mut row);
            trace.push(row);
            break;
        }
        let step = cubic_gd_step(&gradient, config.grad_lipschitz, config.eta);
        row.step_norm = step.norm();
        row.time_s = start.elapsed().as_secs_f64();
        on_row(&x, &mut row);
        trace.push(row);
        x += step;
    }
    Ok(BaselineRun {
        trace,
        final_point: x,
    })
}

fn run_nesterov_ag(
    x0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &BaselineConfig,
    mut on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<BaselineRun> {
    let start = Instant::now();
    let mut trace = IterateTrace::new("ag");
    let step = 1.0 / config.grad_lipschitz;
    let strong_momentum = (config.lambda > 0.0).then(|| {
        let sl = config.grad_lipschitz.sqrt();
        let sm = config.lambda.sqrt();
        (sl - sm) / (sl + sm)
    });

    let mut x = x0.clone();
    let mut y = x0.clone();
    for t in 0..=config.max_iters {
        let grad_x = oracle.gradient(&x);
        let grad_norm = grad_x.norm();
        let mut row = TraceRow::new(t, oracle.value(&x), grad_norm);
        if grad_norm <= config.grad_tol || t == config.max_iters {
            row.time_s = start.elapsed().as_secs_f64();
            on_row(&x, &mut row);
            trace.push(row);
            break;
        }
        // The extrapolation point carries its own gradient except at y = x.
        let grad_y = if y == x { grad_x } else { oracle.gradient(&y) };
        let x_next = &y - &grad_y * step;
        let momentum =
            strong_momentum.unwrap_or_else(|| t as f64 / (t as f64 + 3.0));
        y = &x_next + (&x_next - &x) * momentum;
        row.step_norm = (&x_next - &x).norm();
        row.time_s = start.elapsed().as_secs_f64();
        on_row(&x, &mut row);
        trace.push(row);
        x = x_next;
    }
    Ok(BaselineRun {
        trace,
        final_point: x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::QuadraticProblem;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    #[test]
    fn cubic_gd_step_closed_form() {
        assert_eq!(
            cubic_gd_step(&DVector::zeros(3), 1.0, 2.0),
            DVector::zeros(3)
        );
        // L = 1, η = 2, ‖g‖ = 4 → τ = (−1+√17)/2
        let g = DVector::from_vec(vec![4.0, 0.0]);
        let h = cubic_gd_step(&g, 1.0, 2.0);
        assert_relative_eq!(h[0], -(17f64.sqrt() - 1.0) / 2.0, epsilon = 1e-12);
        assert_eq!(h[1], 0.0);
    }

    #[test]
    fn vanishing_eta_recovers_a_gradient_step() {
        let g = DVector::from_vec(vec![3.0, -4.0]);
        let l = 2.0;
        let h = cubic_gd_step(&g, l, 1e-12);
        let plain = &g * (-1.0 / l);
        assert!((h - plain).norm() <= 1e-6 * (g.norm() / l));
    }

    #[test]
    fn ag_on_identity_quadratic_converges_quickly() {
        let p = QuadraticProblem::new(DMatrix::identity(3, 3), DVector::zeros(3)).unwrap();
        let mut config = BaselineConfig::new(BaselineMethod::NesterovAg, 1.0, 1.0);
        config.max_iters = 60;
        let x0 = DVector::from_vec(vec![9.0, -3.0, 1.0]);
        let run = run_baseline(&x0, &p, &config).unwrap();
        let last = run.trace.last().unwrap();
        assert!(last.grad_norm <= 1e-8, "‖∇f‖ = {}", last.grad_norm);
        assert!(last.iter <= 60);
    }

    #[test]
    fn perfectly_conditioned_strong_momentum_is_gradient_descent() {
        // λ = L makes the momentum coefficient zero, so AG and plain GD
        // coincide.
        let q = DMatrix::identity(2, 2) * 2.0;
        let p = QuadraticProblem::new(q, DVector::from_vec(vec![2.0, -4.0])).unwrap();
        let config = BaselineConfig::new(BaselineMethod::NesterovAg, 2.0, 2.0);
        let x0 = DVector::from_vec(vec![5.0, 5.0]);
        let run = run_baseline(&x0, &p, &config).unwrap();

        let mut x = x0;
        for row in run.trace.rows.iter().take(run.trace.len() - 1) {
            assert_relative_eq!(row.f, p.value(&x), epsilon = 1e-12);
            x = &x - p.gradient(&x) * (1.0 / 2.0);
        }
    }

    #[test]
    fn cubic_gd_descends_monotonically_on_quadratics() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 2.0]));
        let p = QuadraticProblem::new(q, DVector::from_vec(vec![1.0, -1.0])).unwrap();
        let mut config = BaselineConfig::new(BaselineMethod::CubicGd, 2.0, 0.5);
        config.eta = 0.3;
        config.max_iters = 200;
        let run = run_baseline(&DVector::from_vec(vec![4.0, 4.0]), &p, &config).unwrap();
        for pair in run.trace.rows.windows(2) {
            assert!(pair[1].f <= pair[0].f + 1e-12);
        }
    }

    #[test]
    fn config_validation() {
        assert!(BaselineConfig::new(BaselineMethod::CubicGd, 0.0, 0.0)
            .validate()
            .is_err());
        assert!(BaselineConfig::new(BaselineMethod::NesterovAg, 1.0, 2.0)
            .validate()
            .is_err());
        let mut bad_eta = BaselineConfig::new(BaselineMethod::CubicGd, 1.0, 0.0);
        bad_eta.eta = 0.0;
        assert!(bad_eta.validate().is_err());
    }
}
