//! Seeded synthetic fixtures: sparse classification datasets shaped like the
//! LIBSVM binaries, plus random PSD matrices for subproblem tests.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::{Dataset, SparseSample};
use crate::linalg;

/// Specification of a synthetic binary-classification dataset.
///
/// Features are `nnz_per_row` entries at random positions, either all-ones
/// (one-hot style, like Mushrooms) or standard normal. Labels come from a
/// planted separator with a `label_flip` fraction of sign flips, which keeps
/// the unregularized logistic problem bounded below.
#[derive(Debug, Clone, Copy)]
pub struct SyntheticSpec {
    pub samples: usize,
    pub dim: usize,
    pub nnz_per_row: usize,
    pub binary_features: bool,
    pub label_flip: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Mushrooms-shaped default: n = 112 one-hot features.
    pub fn mushrooms_like(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            dim: 112,
            nnz_per_row: 22,
            binary_features: true,
            label_flip: 0.05,
            seed,
        }
    }

    pub fn generate(&self) -> Dataset {
        assert!(self.dim >= 1 && self.samples >= 1);
        assert!(self.nnz_per_row >= 1 && self.nnz_per_row <= self.dim);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let separator: Vec<f64> = (0..self.dim).map(|_| standard_normal(&mut rng)).collect();
        let mut samples = Vec::with_capacity(self.samples);
        for _ in 0..self.samples {
            let mut indices: Vec<usize> =
                rand::seq::index::sample(&mut rng, self.dim, self.nnz_per_row).into_vec();
            indices.sort_unstable();
            let values: Vec<f64> = indices
                .iter()
                .map(|_| {
                    if self.binary_features {
                        1.0
                    } else {
                        standard_normal(&mut rng)
                    }
                })
                .collect();
            let margin: f64 = indices
                .iter()
                .zip(&values)
                .map(|(&i, &v)| v * separator[i])
                .sum();
            let mut label = if margin >= 0.0 { 1.0 } else { -1.0 };
            if rng.gen::<f64>() < self.label_flip {
                label = -label;
            }
            samples.push(SparseSample {
                indices: indices.iter().map(|&i| i + 1).collect(),
                values,
                label,
            });
        }
        Dataset::new(samples, Some(self.dim), "synthetic")
    }
}

/// Standard normal draw by Box–Muller.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random PSD matrix `A Aᵀ / n` with standard-normal `A`.
pub fn random_psd(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| standard_normal(rng));
    let mut m = &a * a.transpose() / n as f64;
    linalg::symmetrize(&mut m);
    m
}

/// Random orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| standard_normal(rng));
    a.qr().q()
}

/// Symmetric PSD matrix with the given eigenvalues in a random orthogonal
/// frame.
pub fn psd_with_spectrum(eigenvalues: &[f64], rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let n = eigenvalues.len();
    let q = random_orthogonal(n, rng);
    let d = DMatrix::from_diagonal(&DVector::from_row_slice(eigenvalues));
    let mut m = &q * d * q.transpose();
    linalg::symmetrize(&mut m);
    m
}

/// Random vector with i.i.d. standard-normal entries.
pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(n, |_, _| standard_normal(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_well_formed() {
        let spec = SyntheticSpec::mushrooms_like(50, 3);
        let a = spec.generate();
        let b = spec.generate();
        assert_eq!(a.samples(), b.samples());
        assert_eq!(a.dim(), 112);
        for s in a.samples() {
            assert_eq!(s.indices.len(), 22);
            assert!(s.indices.windows(2).all(|w| w[0] < w[1]));
            assert!(s.label == 1.0 || s.label == -1.0);
            assert!(s.values.iter().all(|&v| v == 1.0));
        }
    }

    #[test]
    fn gaussian_features_and_flips_produce_both_classes() {
        let spec = SyntheticSpec {
            samples: 200,
            dim: 10,
            nnz_per_row: 10,
            binary_features: false,
            label_flip: 0.2,
            seed: 9,
        };
        let d = spec.generate();
        let pos = d.samples().iter().filter(|s| s.label > 0.0).count();
        assert!(pos > 20 && pos < 180, "labels are degenerate: {pos}/200");
    }

    #[test]
    fn psd_with_spectrum_reproduces_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let eigs = [0.5, 2.0, 7.5];
        let m = psd_with_spectrum(&eigs, &mut rng);
        let (vals, _) = linalg::sorted_symmetric_eigen(&m);
        for (got, want) in vals.iter().zip(eigs.iter()) {
            approx::assert_relative_eq!(got, want, max_relative = 1e-10);
        }
    }
}
