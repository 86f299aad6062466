//! Multi-stage AINCR: restarting the convex-mode accelerated method with
//! geometrically shrinking distance bounds turns its sublinear rate into
//! linear convergence under strong convexity.
//!
//! Stage `s` runs AINCR with convex parameters for
//! `T_s = ⌈2·max{(196γR_{s−1}/λ)^{1/3}, 2(6μ_u/λ)^{1/2}}⌉` iterations from
//! the previous stage's output, with `R_s = R₀/2ˢ`. Each stage halves the
//! squared distance to the optimum and quarters the optimality gap.

use nalgebra::DVector;

use crate::aincr::{run_aincr_with, AincrConfig, AincrParams};
use crate::incr::SolveMethod;
use crate::oracle::{ObjectiveOracle, SmoothnessInfo};
use crate::subsample::HessianStrategy;
use crate::trace::{IterateTrace, TraceRow};
use crate::{Error, Result};

/// `T_s` for a stage entered with distance bound `r_prev`, floored at 1.
pub fn stage_length(gamma: f64, r_prev: f64, lambda: f64, mu_u: f64) -> Result<usize> {
    if !(lambda > 0.0) {
        return Err(Error::config("multi-stage restarting requires lambda > 0"));
    }
    if gamma < 0.0 || mu_u < 0.0 || !(r_prev > 0.0) {
        return Err(Error::config("stage_length parameters out of range"));
    }
    let cubic_term = (196.0 * gamma * r_prev / lambda).cbrt();
    let error_term = 2.0 * (6.0 * mu_u / lambda).sqrt();
    let t = 2.0 * cubic_term.max(error_term);
    Ok((t.ceil() as usize).max(1))
}

/// When to stop adding stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultistageGoal {
    /// Run exactly this many stages.
    Stages(usize),
    /// Add stages until `‖∇f(z_s)‖` falls below the tolerance (capped at 60
    /// stages).
    GradTol(f64),
}

#[derive(Debug, Clone)]
pub struct MultistageConfig {
    pub smoothness: SmoothnessInfo,
    pub hessian: HessianStrategy,
    /// Initial distance bound: `‖z₀ − x*‖ ≤ R₀` is the caller's obligation.
    pub r0: f64,
    pub goal: MultistageGoal,
    /// Optional in-stage early exit; stages are purely count-based when
    /// `None` (the default).
    pub stage_grad_tol: Option<f64>,
    pub subproblem: SolveMethod,
    pub subproblem_tol: f64,
}

impl MultistageConfig {
    pub fn new(
        smoothness: SmoothnessInfo,
        hessian: HessianStrategy,
        r0: f64,
        goal: MultistageGoal,
    ) -> Self {
        Self {
            smoothness,
            hessian,
            r0,
            goal,
            stage_grad_tol: None,
            subproblem: SolveMethod::default(),
            subproblem_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultistageRun {
    pub trace: IterateTrace,
    pub final_point: DVector<f64>,
    /// `z_1, z_2, …`: the output of each stage.
    pub stage_points: Vec<DVector<f64>>,
    pub stage_lengths: Vec<usize>,
}

/// Runs the restart loop from `z0`.
pub fn run_multistage(
    z0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &MultistageConfig,
) -> Result<MultistageRun> {
    run_multistage_with(z0, oracle, config, |_, _| {})
}

/// [`run_multistage`] with a per-row hook (same contract as
/// [`crate::incr::run_incr_with`]).
pub fn run_multistage_with(
    z0: &DVector<f64>,
    oracle: &dyn ObjectiveOracle,
    config: &MultistageConfig,
    mut on_row: impl FnMut(&DVector<f64>, &mut TraceRow),
) -> Result<MultistageRun> {
    if !(config.r0 > 0.0) {
        return Err(Error::config("multi-stage restarting needs R0 > 0"));
    }
    let lambda = config.smoothness.strong_convexity;
    let gamma = config.smoothness.hessian_lipschitz;
    let mu_u = config.hessian.mu(oracle);
    let max_stages = match config.goal {
        MultistageGoal::Stages(s) => {
            if s == 0 {
                return Err(Error::config("stage count must be positive"));
            }
            s
        }
        MultistageGoal::GradTol(_) => 60,
    };

    let mut trace = IterateTrace::new("multistage");
    let mut z = z0.clone();
    let mut stage_points = Vec::new();
    let mut stage_lengths = Vec::new();
    let mut iter_offset = 0usize;
    let mut time_offset = 0.0f64;
    for s in 1..=max_stages {
        let r_prev = config.r0 / 2f64.powi(s as i32 - 1);
        let t_s = stage_length(gamma, r_prev, lambda, mu_u)?;
        stage_lengths.push(t_s);

        let params = AincrParams::convex(gamma, mu_u);
        let stage_config = AincrConfig {
            params,
            hessian: config.hessian,
            max_iters: t_s,
            grad_tol: config.stage_grad_tol,
            subproblem: config.subproblem,
            subproblem_tol: config.subproblem_tol,
        };
        let run = run_aincr_with(&z, oracle, &stage_config, |x, row| {
            row.stage = Some(s);
            on_row(x, row);
        })?;

        // The first row of a follow-up stage duplicates the previous stage's
        // final point.
        let skip = usize::from(s > 1);
        let stage_time = run.trace.rows.last().map_or(0.0, |r| r.time_s);
        for mut row in run.trace.rows.into_iter().skip(skip) {
            row.iter += iter_offset;
            row.time_s += time_offset;
            trace.push(row);
        }
        iter_offset = trace.rows.last().map_or(0, |r| r.iter);
        time_offset += stage_time;

        z = run.final_point;
        stage_points.push(z.clone());
        if let MultistageGoal::GradTol(tol) = config.goal {
            if oracle.gradient(&z).norm() <= tol {
                break;
            }
        }
    }
    Ok(MultistageRun {
        trace,
        final_point: z,
        stage_points,
        stage_lengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::QuadraticProblem;
    use nalgebra::DMatrix;

    #[test]
    fn stage_length_reference_values() {
        assert_eq!(stage_length(1.0, 1.0, 1.0, 0.0).unwrap(), 12);
        assert_eq!(stage_length(0.0, 1.0, 1.0, 1.0).unwrap(), 10);
        assert_eq!(stage_length(0.0, 1.0, 1.0, 0.0).unwrap(), 1);
        assert!(stage_length(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn starting_at_the_optimum_stays_there() {
        let q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0]));
        let b = nalgebra::DVector::from_vec(vec![2.0, 1.0]);
        let p = QuadraticProblem::new(q, b).unwrap();
        let x_star = p.minimizer().unwrap();
        let config = MultistageConfig::new(
            p.smoothness(),
            HessianStrategy::exact(),
            1.0,
            MultistageGoal::Stages(3),
        );
        let run = run_multistage(&x_star, &p, &config).unwrap();
        for z in &run.stage_points {
            assert!((z - &x_star).norm() <= 1e-9);
        }
        assert_eq!(run.stage_points.len(), 3);
    }

    #[test]
    fn stage_markers_and_iteration_numbering_are_consistent() {
        let q = DMatrix::identity(2, 2);
        let p = QuadraticProblem::new(q, nalgebra::DVector::zeros(2)).unwrap();
        let config = MultistageConfig::new(
            p.smoothness(),
            HessianStrategy::exact(),
            4.0,
            MultistageGoal::Stages(2),
        );
        let run = run_multistage(&nalgebra::DVector::from_vec(vec![3.0, 0.0]), &p, &config)
            .unwrap();
        let mut prev = None;
        for row in &run.trace.rows {
            assert!(row.stage.is_some());
            if let Some(p) = prev {
                assert!(row.iter > p);
            }
            prev = Some(row.iter);
        }
    }
}
