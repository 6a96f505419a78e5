//! Dense square complex matrices and generalized permutation matrices.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::eigen;
use super::NumericsError;

/// Dense square matrix over `Complex64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * z).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            let row_out = &mut out.data[i * d..(i + 1) * d];
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::ZERO {
                    continue;
                }
                let row_b = &other.data[k * d..(k + 1) * d];
                for j in 0..d {
                    row_out[j] += a * row_b[j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product; the basis ordering matches the lexicographic
    /// element order used for group enumeration (`(i,k) -> i*dim_b + k`).
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self.get(i, j);
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out.set(i * db + k, j * db + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest singular value.
    ///
    /// For `dim <= 256` this computes the full spectrum of `A* A` (a complete
    /// singular-value computation); above that it runs a deterministic power
    /// iteration on `A* A` with a `1e-12` stabilization criterion.
    pub fn op_norm(&self) -> f64 {
        eigen::op_norm(self)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .mul(self)
            .sub(&Self::identity(self.dim))
            .op_norm()
            <= tol
    }

    /// Inverse by LU decomposition with partial pivoting.
    pub fn inverse(&self) -> Result<Self, NumericsError> {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(d);
        for col in 0..d {
            let mut piv = col;
            let mut best = a[col * d + col].norm();
            for r in (col + 1)..d {
                let v = a[r * d + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-300 {
                return Err(NumericsError::Singular);
            }
            if piv != col {
                for j in 0..d {
                    a.swap(col * d + j, piv * d + j);
                    inv.data.swap(col * d + j, piv * d + j);
                }
            }
            let p = a[col * d + col];
            for j in 0..d {
                a[col * d + j] /= p;
                inv.data[col * d + j] /= p;
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let f = a[r * d + col];
                if f == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    let t = f * a[col * d + j];
                    a[r * d + j] -= t;
                    let t = f * inv.data[col * d + j];
                    inv.data[r * d + j] -= t;
                }
            }
        }
        Ok(inv)
    }

    /// Principal matrix logarithm.
    ///
    /// Normal matrices are diagonalized unitarily and the principal scalar
    /// logarithm is applied to the eigenvalues; this covers every unitary
    /// whose spectrum stays off the closed negative real axis. Non-normal
    /// matrices within operator distance `0.7` of the identity fall back to
    /// the alternating power series.
    pub fn principal_log(&self) -> Result<Self, NumericsError> {
        eigen::principal_log(self)
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series.
    pub fn exp(&self) -> Self {
        eigen::exp(self)
    }

    /// Flat JSON dump: `{dim, entries: [[re, im], ...]}` row-major.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "entries": self.data.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        })
    }
}

/// A unitary of the form (permutation) x (diagonal phases): column `c` holds
/// `phase[c]` in row `perm[c]`. This is the exact shape of every matrix the
/// representation formula produces, and composing two of them is `O(dim)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePerm {
    perm: Vec<usize>,
    phase: Vec<Complex64>,
}

impl PhasePerm {
    pub fn new(perm: Vec<usize>, phase: Vec<Complex64>) -> Self {
        assert_eq!(perm.len(), phase.len());
        debug_assert!({
            let mut seen = vec![false; perm.len()];
            perm.iter().all(|&p| {
                let fresh = !seen[p];
                seen[p] = true;
                fresh
            })
        });
        PhasePerm { perm, phase }
    }

    pub fn identity(dim: usize) -> Self {
        PhasePerm {
            perm: (0..dim).collect(),
            phase: vec![Complex64::ONE; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phase(&self) -> &[Complex64] {
        &self.phase
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &PhasePerm) -> PhasePerm {
        assert_eq!(self.dim(), rhs.dim());
        let dim = self.dim();
        let mut perm = vec![0usize; dim];
        let mut phase = vec![Complex64::ONE; dim];
        for c in 0..dim {
            let mid = rhs.perm[c];
            perm[c] = self.perm[mid];
            phase[c] = rhs.phase[c] * self.phase[mid];
        }
        PhasePerm::new(perm, phase)
    }

    pub fn inverse(&self) -> PhasePerm {
        let dim = self.dim();
        let mut perm = vec![0usize; dim];
        let mut phase = vec![Complex64::ONE; dim];
        for c in 0..dim {
            perm[self.perm[c]] = c;
            phase[self.perm[c]] = Complex64::ONE / self.phase[c];
        }
        PhasePerm::new(perm, phase)
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let dim = self.dim();
        let mut m = ComplexMatrix::zeros(dim);
        for c in 0..dim {
            m.set(self.perm[c], c, self.phase[c]);
        }
        m
    }

    /// True when this is `z * Id` for a single scalar `z` (within `tol`).
    pub fn scalar_value(&self, tol: f64) -> Option<Complex64> {
        let z = self.phase[0];
        for c in 0..self.dim() {
            if self.perm[c] != c || (self.phase[c] - z).norm() > tol {
                return None;
            }
        }
        Some(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn op_norm_examples() {
        assert!((ComplexMatrix::identity(5).op_norm() - 1.0).abs() < 1e-12);

        let phases: Vec<Complex64> = (0..6)
            .map(|k| Complex64::from_polar(1.0, 0.7 * k as f64))
            .collect();
        let d = ComplexMatrix::from_diag(&phases);
        assert!((d.op_norm() - 1.0).abs() < 1e-12);

        let mut r = ComplexMatrix::zeros(2);
        r.set(0, 1, c(2.0, 0.0));
        assert!((r.op_norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_round_trip() {
        let mut a = ComplexMatrix::identity(4);
        a.set(0, 1, c(0.3, -0.2));
        a.set(2, 3, c(-0.1, 0.4));
        a.set(3, 0, c(0.05, 0.0));
        let inv = a.inverse().unwrap();
        let err = a.mul(&inv).sub(&ComplexMatrix::identity(4)).max_abs();
        assert!(err < 1e-12, "err = {err}");
        assert!(ComplexMatrix::zeros(3).inverse().is_err());
    }

    #[test]
    fn kron_identity_and_mixed_product() {
        let i2 = ComplexMatrix::identity(2);
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i2.kron(&i3), ComplexMatrix::identity(6));

        let a = ComplexMatrix::from_fn(2, |i, j| c((i + 2 * j) as f64, 0.5));
        let b = ComplexMatrix::from_fn(2, |i, j| c(1.0 - i as f64, j as f64));
        let cc = ComplexMatrix::from_fn(2, |i, j| c(0.2 * i as f64, -(j as f64)));
        let dd = ComplexMatrix::from_fn(2, |i, j| c((i * j) as f64, 0.3));
        let lhs = a.kron(&b).mul(&cc.kron(&dd));
        let rhs = a.mul(&cc).kron(&b.mul(&dd));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn phase_perm_matches_dense_algebra() {
        let p = PhasePerm::new(
            vec![2, 0, 1],
            vec![c(0.0, 1.0), c(1.0, 0.0), Complex64::from_polar(1.0, 2.2)],
        );
        let q = PhasePerm::new(
            vec![1, 2, 0],
            vec![
                Complex64::from_polar(1.0, -0.4),
                c(-1.0, 0.0),
                Complex64::from_polar(1.0, 0.9),
            ],
        );
        let dense = p.compose(&q).to_dense();
        let expected = p.to_dense().mul(&q.to_dense());
        assert!(dense.sub(&expected).max_abs() < 1e-15);

        let id = p.compose(&p.inverse()).to_dense();
        assert!(id.sub(&ComplexMatrix::identity(3)).max_abs() < 1e-15);

        assert!(p.scalar_value(1e-12).is_none());
        let s = PhasePerm::new(vec![0, 1], vec![c(0.0, 1.0), c(0.0, 1.0)]);
        assert_eq!(s.scalar_value(1e-12), Some(c(0.0, 1.0)));
    }
}
