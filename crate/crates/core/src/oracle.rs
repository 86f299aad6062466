//! Objective-function oracles.
//!
//! An [`ObjectiveOracle`] evaluates `f`, `∇f`, and `∇²f` and reports the
//! smoothness constants the solvers schedule against. Finite-sum objectives
//! `f = (1/m) Σᵢ fᵢ` additionally expose per-component Hessians, which is
//! what the subsampling machinery in [`crate::subsample`] averages.

use nalgebra::{DMatrix, DVector};

use crate::data::Dataset;
use crate::linalg;
use crate::{Error, Result};

/// Smoothness metadata attached to a problem instance.
///
/// `strong_convexity` is the modulus λ ≥ 0 (λ = 0 means plain convexity),
/// `hessian_lipschitz` is the spectral-norm Lipschitz constant γ of `∇²f`,
/// and `grad_lipschitz` is the gradient Lipschitz constant L when known
/// (required by the scaled-identity Hessian strategy, the first-order
/// baselines, and the subsample-size bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessInfo {
    pub strong_convexity: f64,
    pub hessian_lipschitz: f64,
    pub grad_lipschitz: Option<f64>,
}

impl SmoothnessInfo {
    pub fn new(
        strong_convexity: f64,
        hessian_lipschitz: f64,
        grad_lipschitz: Option<f64>,
    ) -> Result<Self> {
        if strong_convexity < 0.0 || hessian_lipschitz < 0.0 {
            return Err(Error::config(
                "smoothness constants must be nonnegative",
            ));
        }
        if let Some(l) = grad_lipschitz {
            if l < 0.0 {
                return Err(Error::config("gradient Lipschitz constant must be nonnegative"));
            }
            if strong_convexity > l {
                return Err(Error::config(format!(
                    "strong convexity {strong_convexity} exceeds gradient Lipschitz constant {l}"
                )));
            }
        }
        Ok(Self {
            strong_convexity,
            hessian_lipschitz,
            grad_lipschitz,
        })
    }

    /// L, or an estimate by power iteration on `∇²f(x0)` when absent
    /// (20 iterations, relative tolerance 1e-6).
    pub fn grad_lipschitz_or_estimate(
        &self,
        oracle: &dyn ObjectiveOracle,
        x0: &DVector<f64>,
    ) -> f64 {
        self.grad_lipschitz
            .unwrap_or_else(|| estimate_grad_lipschitz(oracle, x0))
    }
}

/// Estimates the gradient Lipschitz constant as the spectral norm of the
/// Hessian at `x0` by power iteration (20 iterations, tolerance 1e-6).
pub fn estimate_grad_lipschitz(oracle: &dyn ObjectiveOracle, x0: &DVector<f64>) -> f64 {
    linalg::spectral_norm_power(&oracle.hessian(x0), 20, 1e-6)
}

/// Evaluation surface shared by every problem the solvers accept.
///
/// Implementations must be deterministic pure functions of `x`; all methods
/// take `&self` and instances are safe to share across threads.
pub trait ObjectiveOracle: Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &DVector<f64>) -> f64;

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64>;

    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64>;

    fn smoothness(&self) -> SmoothnessInfo;

    /// Number of summands `m` for finite-sum objectives; 1 otherwise.
    fn component_count(&self) -> usize {
        1
    }

    /// Hessian of the `i`-th summand. For finite sums,
    /// `hessian(x) = (1/m) Σᵢ component_hessian(i, x)`.
    fn component_hessian(&self, i: usize, x: &DVector<f64>) -> DMatrix<f64> {
        assert_eq!(i, 0, "non-finite-sum oracle has a single component");
        self.hessian(x)
    }
}

fn assert_dim(expected: usize, x: &DVector<f64>) {
    assert_eq!(
        expected,
        x.len(),
        "oracle dimension mismatch: problem has n = {expected}, point has n = {}",
        x.len()
    );
}

/// Quadratic fixture `f(x) = ½ xᵀQx − bᵀx` with exact derivatives.
///
/// The Hessian is constant, so the reported Hessian-Lipschitz constant is
/// zero and smoothness carries `λ = λ_min(Q)`, `L = λ_max(Q)`.
#[derive(Debug, Clone)]
pub struct QuadraticProblem {
    q: DMatrix<f64>,
    b: DVector<f64>,
    smoothness: SmoothnessInfo,
}

impl QuadraticProblem {
    /// Builds the fixture. `q` must be symmetric (1e-12 per entry) and PSD.
    pub fn new(q: DMatrix<f64>, b: DVector<f64>) -> Result<Self> {
        if !linalg::is_symmetric(&q, linalg::SYMMETRY_TOL) {
            return Err(Error::config("quadratic matrix is not symmetric"));
        }
        if q.nrows() != b.len() {
            return Err(Error::config(format!(
                "quadratic matrix is {}x{} but the linear term has length {}",
                q.nrows(),
                q.ncols(),
                b.len()
            )));
        }
        let eigs = q.clone().symmetric_eigen().eigenvalues;
        let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        let max = eigs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min < -1e-10 * max.abs().max(1.0) {
            return Err(Error::config(format!(
                "quadratic matrix is not positive semidefinite (λ_min = {min:.3e})"
            )));
        }
        let smoothness = SmoothnessInfo::new(min.max(0.0), 0.0, Some(max.max(0.0)))?;
        Ok(Self { q, b, smoothness })
    }

    /// Minimizer from the linear solve `Qx = b` (requires Q nonsingular).
    pub fn minimizer(&self) -> Option<DVector<f64>> {
        self.q.clone().lu().solve(&self.b)
    }
}

impl ObjectiveOracle for QuadraticProblem {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn value(&self, x: &DVector<f64>) -> f64 {
        assert_dim(self.dim(), x);
        0.5 * x.dot(&(&self.q * x)) - self.b.dot(x)
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        assert_dim(self.dim(), x);
        &self.q * x - &self.b
    }

    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        assert_dim(self.dim(), x);
        self.q.clone()
    }

    fn smoothness(&self) -> SmoothnessInfo {
        self.smoothness
    }
}

/// Numerically stable `log(1 + e^z)` via `max(z,0) + log1p(e^{−|z|})`.
#[inline]
pub fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// Numerically stable logistic sigmoid `1/(1 + e^{−z})`.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ℓ2-regularized logistic regression over sparse samples:
/// `f(x) = (1/m) Σᵢ log(1 + exp(−vⁱ⟨uⁱ,x⟩)) + (λ/2)‖x‖²`.
#[derive(Debug, Clone)]
pub struct LogisticProblem {
    rows: Vec<SparseRow>,
    reg: f64,
    dim: usize,
    smoothness: SmoothnessInfo,
    mean_curvature_bound: f64,
    mean_hessian_lipschitz: f64,
}

#[derive(Debug, Clone)]
struct SparseRow {
    /// 0-based feature indices, strictly increasing.
    indices: Vec<usize>,
    values: Vec<f64>,
    label: f64,
}

impl SparseRow {
    fn dot(&self, x: &DVector<f64>) -> f64 {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&i, &v)| v * x[i])
            .sum()
    }

    fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// `|σ''|` peaks at `1/(6√3)`; multiplied by `‖u‖³` it bounds the
/// per-sample Hessian-Lipschitz contribution.
const SIGMOID_CURVATURE_BOUND: f64 = 0.09622504486493763; // 1/(6·√3)

impl LogisticProblem {
    /// Builds the problem from `(indices, values)` sparse feature rows with
    /// 0-based indices, ±1 labels, dimension `dim`, and regularizer
    /// `reg = λ > 0`.
    ///
    /// Smoothness constants are computed on construction: the reported
    /// `L = λ + (1/4)·maxᵢ‖uⁱ‖²` and `γ = (1/(6√3))·maxᵢ‖uⁱ‖³` are the
    /// conservative max-based bounds, with the mean-based variants exposed
    /// through [`LogisticProblem::mean_curvature_bound`] and
    /// [`LogisticProblem::mean_hessian_lipschitz`].
    pub fn new(
        rows: Vec<(Vec<usize>, Vec<f64>)>,
        labels: Vec<f64>,
        dim: usize,
        reg: f64,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::config("logistic problem needs at least one sample"));
        }
        if rows.len() != labels.len() {
            return Err(Error::config("sample/label count mismatch"));
        }
        if !(reg >= 0.0) {
            return Err(Error::config("regularization parameter must be nonnegative"));
        }
        let mut built = Vec::with_capacity(rows.len());
        for ((indices, values), label) in rows.into_iter().zip(labels) {
            if label != 1.0 && label != -1.0 {
                return Err(Error::config(format!("label {label} is not ±1")));
            }
            if indices.len() != values.len() {
                return Err(Error::config("index/value length mismatch"));
            }
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::config("feature indices must be strictly increasing"));
            }
            if indices.last().is_some_and(|&i| i >= dim) {
                return Err(Error::config("feature index exceeds problem dimension"));
            }
            built.push(SparseRow {
                indices,
                values,
                label,
            });
        }
        let m = built.len() as f64;
        let mut max_sq = 0.0f64;
        let mut sum_sq = 0.0f64;
        let mut max_cube = 0.0f64;
        let mut sum_cube = 0.0f64;
        for row in &built {
            let sq = row.norm_squared();
            let cube = sq * sq.sqrt();
            max_sq = max_sq.max(sq);
            sum_sq += sq;
            max_cube = max_cube.max(cube);
            sum_cube += cube;
        }
        let grad_lipschitz = reg + 0.25 * max_sq;
        let hessian_lipschitz = SIGMOID_CURVATURE_BOUND * max_cube;
        let smoothness = SmoothnessInfo::new(reg, hessian_lipschitz, Some(grad_lipschitz))?;
        Ok(Self {
            rows: built,
            reg,
            dim,
            smoothness,
            mean_curvature_bound: reg + 0.25 * sum_sq / m,
            mean_hessian_lipschitz: SIGMOID_CURVATURE_BOUND * sum_cube / m,
        })
    }

    /// Builds the problem from a parsed dataset with `reg` defaulting to
    /// `1/m` when `None`.
    pub fn from_dataset(dataset: &Dataset, reg: Option<f64>) -> Result<Self> {
        let reg = reg.unwrap_or(1.0 / dataset.len() as f64);
        let mut rows = Vec::with_capacity(dataset.len());
        let mut labels = Vec::with_capacity(dataset.len());
        for sample in dataset.samples() {
            // LIBSVM indices are 1-based.
            rows.push((
                sample.indices.iter().map(|&i| i - 1).collect(),
                sample.values.clone(),
            ));
            labels.push(sample.label);
        }
        Self::new(rows, labels, dataset.dim(), reg)
    }

    pub fn reg(&self) -> f64 {
        self.reg
    }

    /// `λ + (1/4m)·Σᵢ‖uⁱ‖²`: the mean curvature bound, a tighter but still
    /// valid gradient Lipschitz constant.
    pub fn mean_curvature_bound(&self) -> f64 {
        self.mean_curvature_bound
    }

    /// `(1/(6√3 m))·Σᵢ‖uⁱ‖³`: the mean-based Hessian-Lipschitz bound.
    pub fn mean_hessian_lipschitz(&self) -> f64 {
        self.mean_hessian_lipschitz
    }
}

impl ObjectiveOracle for LogisticProblem {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &DVector<f64>) -> f64 {
        assert_dim(self.dim, x);
        let m = self.rows.len() as f64;
        let loss: f64 = self
            .rows
            .iter()
            .map(|row| softplus(-row.label * row.dot(x)))
            .sum();
        loss / m + 0.5 * self.reg * x.norm_squared()
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        assert_dim(self.dim, x);
        let m = self.rows.len() as f64;
        let mut g = x * self.reg;
        for row in &self.rows {
            let coef = -row.label * sigmoid(-row.label * row.dot(x)) / m;
            for (&i, &v) in row.indices.iter().zip(&row.values) {
                g[i] += coef * v;
            }
        }
        g
    }

    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        assert_dim(self.dim, x);
        let m = self.rows.len() as f64;
        let mut h = DMatrix::from_diagonal_element(self.dim, self.dim, self.reg);
        for row in &self.rows {
            let s = sigmoid(row.dot(x));
            let coef = s * (1.0 - s) / m;
            accumulate_outer(&mut h, row, coef);
        }
        linalg::symmetrize(&mut h);
        h
    }

    fn smoothness(&self) -> SmoothnessInfo {
        self.smoothness
    }

    fn component_count(&self) -> usize {
        self.rows.len()
    }

    fn component_hessian(&self, i: usize, x: &DVector<f64>) -> DMatrix<f64> {
        assert_dim(self.dim, x);
        let row = &self.rows[i];
        let s = sigmoid(row.dot(x));
        let mut h = DMatrix::from_diagonal_element(self.dim, self.dim, self.reg);
        accumulate_outer(&mut h, row, s * (1.0 - s));
        h
    }
}

fn accumulate_outer(h: &mut DMatrix<f64>, row: &SparseRow, coef: f64) {
    for (a, &i) in row.indices.iter().enumerate() {
        let vi = row.values[a];
        for (b, &j) in row.indices.iter().enumerate() {
            h[(i, j)] += coef * vi * row.values[b];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn toy_logistic() -> LogisticProblem {
        LogisticProblem::new(
            vec![(vec![0], vec![1.0]), (vec![1], vec![1.0])],
            vec![1.0, -1.0],
            2,
            2.0,
        )
        .unwrap()
    }

    #[test]
    fn logistic_value_at_zero_is_ln_two() {
        let p = LogisticProblem::new(vec![(vec![0], vec![1.0])], vec![1.0], 2, 0.0).unwrap();
        let v = p.value(&DVector::zeros(2));
        assert_relative_eq!(v, std::f64::consts::LN_2, epsilon = 1e-15);
    }

    #[test]
    fn logistic_value_softplus_tail_does_not_overflow() {
        let p = LogisticProblem::new(vec![(vec![0], vec![1.0])], vec![1.0], 2, 0.0).unwrap();
        let v = p.value(&DVector::from_vec(vec![50.0, 0.0]));
        // log1p(exp(-50)) = 1.928749847963918e-22
        assert!(v > 0.0 && v < 1e-21, "expected softplus tail, got {v}");
        assert_relative_eq!(v, 1.928749847963918e-22, max_relative = 1e-12);
    }

    #[test]
    fn logistic_value_two_sample_reference() {
        // (1/2)[ln(1+e^{-1}) + ln(1+e)] + (2/2)·2, high-precision reference.
        let p = toy_logistic();
        let v = p.value(&DVector::from_vec(vec![1.0, 1.0]));
        assert_relative_eq!(v, 2.8132616875182228, epsilon = 1e-15);
    }

    #[test]
    fn logistic_gradient_and_hessian_at_zero() {
        let p = LogisticProblem::new(vec![(vec![0], vec![1.0])], vec![1.0], 2, 0.0).unwrap();
        let g = p.gradient(&DVector::zeros(2));
        assert_relative_eq!(g[0], -0.5, epsilon = 1e-15);
        assert_relative_eq!(g[1], 0.0, epsilon = 1e-15);
        let h = p.hessian(&DVector::zeros(2));
        assert_relative_eq!(h[(0, 0)], 0.25, epsilon = 1e-15);
        assert_eq!((h[(0, 1)], h[(1, 0)], h[(1, 1)]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn degenerate_all_zero_features_give_zero_derivatives() {
        let p = LogisticProblem::new(
            vec![(vec![], vec![]), (vec![], vec![])],
            vec![1.0, -1.0],
            3,
            0.0,
        )
        .unwrap();
        let x = DVector::from_vec(vec![0.3, -0.7, 2.0]);
        assert_eq!(p.gradient(&x), DVector::zeros(3));
        assert_eq!(p.hessian(&x), DMatrix::zeros(3, 3));
    }

    #[test]
    fn finite_sum_consistency() {
        let p = toy_logistic();
        let x = DVector::from_vec(vec![0.4, -1.2]);
        let mean = (p.component_hessian(0, &x) + p.component_hessian(1, &x)) / 2.0;
        let h = p.hessian(&x);
        for i in 0..2 {
            for j in 0..2 {
                assert!((mean[(i, j)] - h[(i, j)]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn quadratic_identity_fixture() {
        let q = DMatrix::identity(2, 2);
        let p = QuadraticProblem::new(q, DVector::zeros(2)).unwrap();
        let x = DVector::from_vec(vec![2.0, -1.0]);
        assert_relative_eq!(p.value(&x), 2.5);
        assert_eq!(p.gradient(&x), x);
        assert_eq!(p.hessian(&x), DMatrix::identity(2, 2));
        assert_eq!(p.smoothness().strong_convexity, 1.0);
        assert_eq!(p.smoothness().grad_lipschitz, Some(1.0));
    }

    #[test]
    fn quadratic_minimizer_solves_linear_system() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0]));
        let b = DVector::from_vec(vec![1.0, 4.0]);
        let p = QuadraticProblem::new(q, b).unwrap();
        let x = p.minimizer().unwrap();
        assert_relative_eq!(x, DVector::from_vec(vec![1.0, 1.0]), epsilon = 1e-14);
    }

    #[test]
    fn quadratic_rejects_asymmetric_matrix() {
        let mut q = DMatrix::identity(2, 2);
        q[(0, 1)] = 0.5;
        assert!(QuadraticProblem::new(q, DVector::zeros(2)).is_err());
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn dimension_mismatch_panics() {
        let p = toy_logistic();
        p.value(&DVector::zeros(3));
    }

    #[test]
    fn smoothness_rejects_lambda_above_l() {
        assert!(SmoothnessInfo::new(2.0, 1.0, Some(1.0)).is_err());
        assert!(SmoothnessInfo::new(1.0, 0.0, Some(1.0)).is_ok());
    }
}
