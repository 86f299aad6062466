//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector};

/// Absolute per-entry symmetry tolerance used by matrix validators.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Returns true when `m` is square and `|m[i,j] - m[j,i]| <= tol` for all
/// entries.
pub fn is_symmetric(m: &DMatrix<f64>, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if (m[(i, j)] - m[(j, i)]).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Symmetrizes in place: `m ← (m + mᵀ)/2`. Accumulated outer-product sums
/// carry roundoff asymmetries of order 1e-16 that violate the eigensolver
/// input contract.
pub fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Spectral norm of a symmetric matrix by power iteration.
///
/// Runs at most `max_iters` iterations, returning early once the Rayleigh
/// quotient stabilizes to relative `tol`. The start vector is deterministic
/// (all ones), so repeated calls agree bit for bit.
pub fn spectral_norm_power(m: &DMatrix<f64>, max_iters: usize, tol: f64) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "spectral_norm_power requires a square matrix");
    if n == 0 {
        return 0.0;
    }
    let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut estimate = 0.0f64;
    for _ in 0..max_iters {
        let w = m * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = v.dot(&w).abs();
        v = w / norm;
        if (next - estimate).abs() <= tol * next.max(1.0) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Eigendecomposition wrapper returning `(eigenvalues, eigenvectors)` with
/// eigenvalues sorted ascending and eigenvector columns permuted to match.
pub fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Spectral norm (largest absolute eigenvalue) of a symmetric matrix.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symmetry_check_catches_asymmetric_entries() {
        let mut m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0]));
        assert!(is_symmetric(&m, SYMMETRY_TOL));
        m[(0, 1)] = 1e-9;
        assert!(!is_symmetric(&m, SYMMETRY_TOL));
        symmetrize(&mut m);
        assert!(is_symmetric(&m, 0.0));
        assert_relative_eq!(m[(0, 1)], 5e-10);
    }

    #[test]
    fn power_iteration_matches_eigendecomposition() {
        let m = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 1.0]);
        let exact = spectral_norm(&m);
        let approx = spectral_norm_power(&m, 200, 1e-12);
        assert_relative_eq!(exact, approx, max_relative = 1e-8);
    }

    #[test]
    fn sorted_eigen_is_ascending_and_reconstructs() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let (vals, vecs) = sorted_symmetric_eigen(&m);
        assert!(vals[0] <= vals[1] && vals[1] <= vals[2]);
        let rebuilt = &vecs * DMatrix::from_diagonal(&vals) * vecs.transpose();
        assert_relative_eq!(rebuilt, m, epsilon = 1e-12);
    }
}
