//! Eigen machinery: cyclic Jacobi for complex Hermitian matrices, unitary
//! diagonalization of normal matrices, the operator norm, principal
//! logarithm, and matrix exponential.
//!
//! Everything here is deterministic: fixed sweep orders, fixed starting
//! vectors, fixed mixing angles. No randomness enters the numeric paths.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::NumericsError;

/// Sum of squared moduli off the diagonal.
fn off_diag_sqr(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += m.get(i, j).norm_sqr();
            }
        }
    }
    acc
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, V)` with `V` unitary and `V* H V` diagonal; the
/// eigenvalues are the real diagonal after convergence, in sweep order (not
/// sorted).
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), NumericsError> {
    let d = h.dim();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(d);
    if d <= 1 {
        return Ok(((0..d).map(|i| a.get(i, i).re).collect(), v));
    }
    let scale = a.frob_norm().max(1e-300);
    let target = (1e-14 * scale) * (1e-14 * scale);
    for _sweep in 0..64 {
        if off_diag_sqr(&a) <= target {
            break;
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a.get(p, q);
                let abs = apq.norm();
                if abs <= 1e-300 {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let u = apq / abs; // unit phase of the off-diagonal entry
                let theta = (app - aqq) / (2.0 * abs);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // columns p and q of A <- A J
                for r in 0..d {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, c * arp + s * u.conj() * arq);
                    a.set(r, q, -s * u * arp + c * arq);
                }
                // rows p and q of A <- J* A
                for r in 0..d {
                    let apr = a.get(p, r);
                    let aqr = a.get(q, r);
                    a.set(p, r, c * apr + s * u * aqr);
                    a.set(q, r, -s * u.conj() * apr + c * aqr);
                }
                // accumulate V <- V J
                for r in 0..d {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, c * vrp + s * u.conj() * vrq);
                    v.set(r, q, -s * u * vrp + c * vrq);
                }
            }
        }
    }
    if off_diag_sqr(&a) > target * 1e6 {
        return Err(NumericsError::NoConvergence(
            "Jacobi sweeps did not reduce the off-diagonal mass".into(),
        ));
    }
    Ok(((0..d).map(|i| a.get(i, i).re).collect(), v))
}

/// Mixing angles used to split a normal matrix into a generic Hermitian
/// combination; retried in order if an angle happens to collide eigenvalues.
const MIX_ANGLES: [f64; 5] = [0.739_085_133_215_160_6, 1.234_567_89, 2.030_405_06, 0.318_309_886, 2.718_281_828];

/// Unitary diagonalization of a normal matrix: returns `(eigenvalues, V)`
/// with `V` unitary and `V* A V` diagonal.
///
/// Works by Jacobi-diagonalizing a generic real-linear combination of the
/// Hermitian and skew-Hermitian parts (which commute exactly when `A` is
/// normal) and verifying that the resulting basis diagonalizes `A`.
pub fn diagonalize_normal(
    a: &ComplexMatrix,
) -> Result<(Vec<Complex64>, ComplexMatrix), NumericsError> {
    let d = a.dim();
    let adj = a.adjoint();
    let h1 = a.add(&adj).scale(Complex64::new(0.5, 0.0));
    let h2 = a.sub(&adj).scale(Complex64::new(0.0, -0.5));
    let scale = a.frob_norm().max(1.0);
    let mut best: Option<(f64, Vec<Complex64>, ComplexMatrix)> = None;
    for &angle in &MIX_ANGLES {
        let m = h1
            .scale(Complex64::new(angle.cos(), 0.0))
            .add(&h2.scale(Complex64::new(angle.sin(), 0.0)));
        let (_, v) = hermitian_eigen(&m)?;
        let diag = v.adjoint().mul(a).mul(&v);
        let off = off_diag_sqr(&diag).sqrt();
        let evals: Vec<Complex64> = (0..d).map(|i| diag.get(i, i)).collect();
        if off <= 1e-11 * scale {
            return Ok((evals, v));
        }
        if best.as_ref().map_or(true, |(b, _, _)| off < *b) {
            best = Some((off, evals, v));
        }
    }
    Err(NumericsError::NonNormal {
        defect: best.map(|(off, _, _)| off).unwrap_or(f64::NAN),
    })
}

/// Largest singular value; see [`ComplexMatrix::op_norm`].
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    if d == 0 {
        return 0.0;
    }
    if a.max_abs() == 0.0 {
        return 0.0;
    }
    if d <= 256 {
        let b = a.adjoint().mul(a);
        let (evals, _) = hermitian_eigen(&b).expect("Gram matrices are Hermitian");
        evals.into_iter().fold(0.0f64, f64::max).max(0.0).sqrt()
    } else {
        power_iteration_norm(a)
    }
}

fn power_iteration_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    // deterministic start with energy in every coordinate
    let mut x: Vec<Complex64> = (0..d)
        .map(|i| Complex64::new(1.0 / ((i + 1) as f64).sqrt(), 0.3 / ((i + 2) as f64)))
        .collect();
    normalize(&mut x);
    let mut lambda = 0.0f64;
    let mut stable = 0;
    for _ in 0..100_000 {
        let y = apply(a, &x, false);
        let mut z = apply(a, &y, true);
        let new_lambda: f64 = y.iter().map(|v| v.norm_sqr()).sum();
        let nz = normalize(&mut z);
        if nz == 0.0 {
            return new_lambda.sqrt();
        }
        x = z;
        if (new_lambda - lambda).abs() <= 1e-12 * new_lambda.max(1e-300) {
            stable += 1;
            if stable >= 3 {
                return new_lambda.sqrt();
            }
        } else {
            stable = 0;
        }
        lambda = new_lambda;
    }
    lambda.sqrt()
}

fn apply(a: &ComplexMatrix, x: &[Complex64], adjoint: bool) -> Vec<Complex64> {
    let d = a.dim();
    let mut out = vec![Complex64::ZERO; d];
    for i in 0..d {
        for j in 0..d {
            if adjoint {
                out[i] += a.get(j, i).conj() * x[j];
            } else {
                out[i] += a.get(i, j) * x[j];
            }
        }
    }
    out
}

fn normalize(x: &mut [Complex64]) -> f64 {
    let n = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
    n
}

/// Principal matrix logarithm; see [`ComplexMatrix::principal_log`].
pub fn principal_log(a: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    let d = a.dim();
    let frob = a.frob_norm();
    let adj = a.adjoint();
    let normal_defect = a.mul(&adj).sub(&adj.mul(a)).frob_norm();
    if normal_defect <= 1e-10 * (1.0 + frob * frob) {
        let (evals, v) = diagonalize_normal(a)?;
        for z in &evals {
            if z.re <= 0.0 && z.im.abs() <= 1e-12 * (1.0 + z.norm()) {
                return Err(NumericsError::TooFarFromIdentity {
                    distance: (z - Complex64::ONE).norm(),
                });
            }
        }
        let logs: Vec<Complex64> = evals.iter().map(|z| z.ln()).collect();
        let l = v.mul(&ComplexMatrix::from_diag(&logs)).mul(&v.adjoint());
        Ok(l)
    } else {
        // non-normal input: alternating series around the identity
        let x = a.sub(&ComplexMatrix::identity(d));
        let r = x.op_norm();
        if r > 0.7 {
            return Err(NumericsError::NonNormal { defect: normal_defect });
        }
        let mut acc = ComplexMatrix::zeros(d);
        let mut power = x.clone();
        for k in 1..=400usize {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&power.scale(Complex64::new(sign / k as f64, 0.0)));
            if r.powi(k as i32 + 1) / (k as f64 + 1.0) < 1e-18 {
                break;
            }
            power = power.mul(&x);
        }
        Ok(acc)
    }
}

/// Matrix exponential; see [`ComplexMatrix::exp`].
pub fn exp(a: &ComplexMatrix) -> ComplexMatrix {
    let d = a.dim();
    let norm = a.frob_norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale(Complex64::new(1.0 / f64::powi(2.0, s as i32), 0.0));
    let mut acc = ComplexMatrix::identity(d);
    let mut term = ComplexMatrix::identity(d);
    for k in 1..=40u32 {
        term = term.mul(&b).scale(Complex64::new(1.0 / k as f64, 0.0));
        acc = acc.add(&term);
        if term.frob_norm() < 1e-18 {
            break;
        }
    }
    let mut out = acc;
    for _ in 0..s {
        out = out.mul(&out);
    }
    out
}
