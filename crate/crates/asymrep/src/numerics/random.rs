//! Seeded random matrices for the property harnesses and tests.
//!
//! All sampling goes through [`SeededGaussian`] so every harness run is
//! reproducible from its reported seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ComplexMatrix;

/// Deterministic source of complex Gaussian matrices.
pub struct SeededGaussian {
    rng: ChaCha8Rng,
}

impl SeededGaussian {
    pub fn new(seed: u64) -> Self {
        SeededGaussian {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// One standard complex Gaussian sample (Box-Muller).
    pub fn sample(&mut self) -> Complex64 {
        let u1: f64 = self.rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = self.rng.gen_range(0.0..1.0);
        let r = (-2.0 * u1.ln()).sqrt();
        Complex64::from_polar(r, 2.0 * std::f64::consts::PI * u2)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn pick(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn matrix(&mut self, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| self.sample())
    }
}

/// Haar-ish random unitary via twice-iterated modified Gram-Schmidt on a
/// Gaussian matrix. Orthonormal to well below the tolerances used anywhere.
pub fn random_unitary(rng: &mut SeededGaussian, dim: usize) -> ComplexMatrix {
    let g = rng.matrix(dim);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for _pass in 0..2 {
        for j in 0..dim {
            for k in 0..j {
                let proj: Complex64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..dim {
                    let t = proj * cols[k][i];
                    cols[j][i] -= t;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// A random unitary with `||U - I|| <= eps` (spectral phases bounded by the
/// rotation angle `eps` of a normalized Hermitian generator).
pub fn unitary_near_identity(rng: &mut SeededGaussian, dim: usize, eps: f64) -> ComplexMatrix {
    let g = rng.matrix(dim);
    let h = g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0));
    let norm = h.op_norm();
    if norm == 0.0 {
        return ComplexMatrix::identity(dim);
    }
    // eigenphases of eps*H/||H|| lie in [-eps, eps], so ||U - I|| = 2 sin(theta_max/2) <= eps
    h.scale(Complex64::new(0.0, eps / norm)).exp()
}
