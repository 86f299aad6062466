//! Newton-type solvers with cubic regularization under inexact second-order
//! information.
//!
//! The crate provides three families of building blocks:
//!
//! * **Problem oracles** ([`oracle`], [`subsample`]): objective abstractions
//!   for finite sums, a numerically careful logistic-regression problem,
//!   quadratic test fixtures, and seeded subsampled-Hessian strategies with
//!   the spectral shifts that keep the outer algorithms' error assumptions
//!   satisfied.
//! * **The cubic subproblem** ([`subproblem`]): global minimization of
//!   `⟨g,h⟩ + ½⟨Hh,h⟩ + (η/6)‖h‖³` via the secular equation in
//!   eigencoordinates, via a Lanczos reduction, or via gradient descent,
//!   each returning an optimality certificate.
//! * **Outer algorithms** ([`incr`], [`aincr`], [`multistage`],
//!   [`baselines`]): the inexact Newton method with cubic regularization,
//!   its estimate-sequence accelerated variant, multi-stage restarting for
//!   strongly convex problems, and first-order baselines.
//!
//! [`data`] parses LIBSVM-format text and [`trace`] records per-iteration
//! convergence data in a fixed CSV schema shared by every solver.
//!
//! ```
//! use cubic_newton::oracle::{ObjectiveOracle, QuadraticProblem};
//! use cubic_newton::subsample::HessianStrategy;
//! use cubic_newton::incr::{run_incr, IncrConfig};
//! use nalgebra::{DMatrix, DVector};
//!
//! let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0]));
//! let b = DVector::from_vec(vec![1.0, 4.0]);
//! let problem = QuadraticProblem::new(q, b).unwrap();
//!
//! let config = IncrConfig::fixed_eta(problem.smoothness(), HessianStrategy::exact());
//! let run = run_incr(&DVector::zeros(2), &problem, &config).unwrap();
//! let x = run.final_point;
//! assert!((x[0] - 1.0).abs() < 1e-8 && (x[1] - 1.0).abs() < 1e-8);
//! ```

pub mod aincr;
pub mod baselines;
pub mod data;
mod error;
pub mod incr;
pub mod linalg;
pub mod multistage;
pub mod oracle;
pub mod subproblem;
pub mod subsample;
pub mod synthetic;
pub mod trace;

pub use error::{Error, Result};

/// The guide chapters double as doctests so their code blocks stay honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cubic-subproblem.md")]
    mod cubic_subproblem {}
    #[doc = include_str!("../../../book/src/inexact-newton.md")]
    mod inexact_newton {}
    #[doc = include_str!("../../../book/src/acceleration.md")]
    mod acceleration {}
    #[doc = include_str!("../../../book/src/restarts.md")]
    mod restarts {}
    #[doc = include_str!("../../../book/src/subsampled-hessians.md")]
    mod subsampled_hessians {}
    #[doc = include_str!("../../../book/src/benchmarking.md")]
    mod benchmarking {}
}
