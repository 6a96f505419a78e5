//! Exact integer, rational, and modular arithmetic.
//!
//! Everything at the cohomology layer is computed here without floating
//! point: cocycle values are [`Rational`]s in lowest terms, quotient
//! reductions go through [`rational_mod_reduce`], and the cat-map machinery
//! (`T^k`, the partial sums [`s_k`], orders mod `n`) works on [`IntMatrix`]
//! with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("denominator {denominator} is not invertible mod {modulus}")]
    NonInvertibleDenominator { denominator: BigInt, modulus: u64 },
    #[error("binomial polynomial degree {degree} not supported (max 3)")]
    UnsupportedDegree { degree: u32 },
    #[error("matrix determinant is not invertible mod {modulus}")]
    NotInvertibleMod { modulus: u64 },
    #[error("no power of the matrix reached the identity within {cap} steps")]
    NoOrderFound { cap: u64 },
    #[error("matrix is not invertible over the integers (|det| != 1)")]
    NonUnimodular,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus must be at least 1, got {0}")]
    BadModulus(u64),
}

/// A residue class `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: &BigInt, modulus: u64) -> Result<Self, ExactError> {
        if modulus == 0 {
            return Err(ExactError::BadModulus(modulus));
        }
        let m = BigInt::from(modulus);
        let v = value.mod_floor(&m);
        Ok(Residue {
            value: v.to_u64().expect("reduced residue fits in u64"),
            modulus,
        })
    }

    pub fn from_i64(value: i64, modulus: u64) -> Result<Self, ExactError> {
        Self::new(&BigInt::from(value), modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Modular inverse by extended Euclid; `None` when `gcd(a, n) != 1`.
fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// Reduces an exact rational mod `n`: returns `numerator * denominator^{-1} (mod n)`.
///
/// Fails with [`ExactError::NonInvertibleDenominator`] when the denominator
/// shares a factor with `n`; that is how an inadmissible modulus for one of
/// the example quotients shows up at this layer.
pub fn rational_mod_reduce(q: &Rational, n: u64) -> Result<Residue, ExactError> {
    if n == 0 {
        return Err(ExactError::BadModulus(n));
    }
    let denom = q.denom();
    let d_mod = denom.mod_floor(&BigInt::from(n)).to_u64().expect("fits");
    match mod_inverse(d_mod, n) {
        None => Err(ExactError::NonInvertibleDenominator {
            denominator: denom.clone(),
            modulus: n,
        }),
        Some(inv) => {
            let num = Residue::new(q.numer(), n)?;
            let v = (u128::from(num.value()) * u128::from(inv) % u128::from(n)) as u64;
            Ok(Residue { value: v, modulus: n })
        }
    }
}

/// The polynomial extension of the binomial coefficient `C(j, k)` for
/// `k <= 3`, defined for every integer `j` (e.g. `C(j,3) = j(j-1)(j-2)/6`).
/// Always integer-valued.
pub fn binomial_poly(j: i64, k: u32) -> Result<BigInt, ExactError> {
    let j = BigInt::from(j);
    let one = BigInt::one();
    match k {
        0 => Ok(BigInt::one()),
        1 => Ok(j),
        2 => Ok(&j * (&j - &one) / BigInt::from(2)),
        3 => Ok(&j * (&j - &one) * (&j - BigInt::from(2)) / BigInt::from(6)),
        _ => Err(ExactError::UnsupportedDegree { degree: k }),
    }
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = IntMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Determinant by cofactor expansion; the matrices here are at most 4x4.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        match n {
            0 => BigInt::one(),
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => {
                let mut acc = BigInt::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let m = self.minor(0, j).det();
                    if j % 2 == 0 {
                        acc += a * m;
                    } else {
                        acc -= a * m;
                    }
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.rows;
        let mut out = IntMatrix::zeros(n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == col {
                    continue;
                }
                out.set(r, c, self.get(i, j).clone());
                c += 1;
            }
            r += 1;
        }
        out
    }

    /// Exact inverse over the integers. Defined only when `|det| = 1`.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, ExactError> {
        assert!(self.is_square());
        let d = self.det();
        if !d.abs().is_one() {
            return Err(ExactError::NonUnimodular);
        }
        let n = self.rows;
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                let signed = if (i + j) % 2 == 0 { c } else { -c };
                // adjugate is the transpose of the cofactor matrix
                adj.set(j, i, signed);
            }
        }
        if d == BigInt::from(-1) {
            adj = adj.neg();
        }
        Ok(adj)
    }

    /// Integer power; negative exponents require `|det| = 1`.
    pub fn pow(&self, k: i64) -> Result<IntMatrix, ExactError> {
        assert!(self.is_square());
        let base = if k < 0 { self.inverse_unimodular()? } else { self.clone() };
        let mut acc = IntMatrix::identity(self.rows);
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Entrywise reduction into `[0, n)`.
    pub fn mod_reduce(&self, n: u64) -> IntMatrix {
        let m = BigInt::from(n);
        let data = self.data.iter().map(|a| a.mod_floor(&m)).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }
}

/// The partial geometric sum of `T (x) T`:
///
/// ```text
/// S_k = sum_{j=0}^{k-1} (T(x)T)^j      for k >= 0
/// S_k = -sum_{j=k}^{-1} (T(x)T)^j      for k <  0
/// ```
///
/// so that `S_{k1+k2} = S_{k1} + (T(x)T)^{k1} S_{k2}` and
/// `(T(x)T - 1) S_k = (T(x)T)^k - 1` hold for all integers. A closed form via
/// the geometric series is unavailable because `T(x)T - 1` is singular.
pub fn s_k(t: &IntMatrix, k: i64) -> Result<IntMatrix, ExactError> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(ExactError::ShapeMismatch(format!(
            "s_k expects a 2x2 matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let tt = t.kron(t);
    let mut acc = IntMatrix::zeros(4, 4);
    if k >= 0 {
        let mut p = IntMatrix::identity(4);
        for _ in 0..k {
            acc = acc.add(&p);
            p = p.mul(&tt);
        }
        Ok(acc)
    } else {
        let inv = tt.inverse_unimodular()?;
        let mut p = IntMatrix::identity(4);
        for _ in 0..(-k) {
            p = p.mul(&inv);
            acc = acc.add(&p);
        }
        Ok(acc.neg())
    }
}

/// Smallest `m >= 1` with `M^m = Id (mod n)`, by plain iteration with a cap
/// (default `n^4`; the true order always divides the order of `GL_2(Z/n)`,
/// so hitting the cap signals a bug rather than a large order).
pub fn matrix_order_mod(m: &IntMatrix, n: u64) -> Result<u64, ExactError> {
    matrix_order_mod_with_cap(m, n, n.saturating_pow(4).max(4))
}

pub fn matrix_order_mod_with_cap(m: &IntMatrix, n: u64, cap: u64) -> Result<u64, ExactError> {
    if n < 2 {
        return Err(ExactError::BadModulus(n));
    }
    assert!(m.is_square());
    let det = m.det().mod_floor(&BigInt::from(n)).to_u64().expect("fits");
    if num_integer::gcd(det, n) != 1 {
        return Err(ExactError::NotInvertibleMod { modulus: n });
    }
    let base = m.mod_reduce(n);
    let mut p = base.clone();
    for ord in 1..=cap {
        if p.is_identity() {
            return Ok(ord);
        }
        p = p.mul(&base).mod_reduce(n);
    }
    Err(ExactError::NoOrderFound { cap })
}

/// Arnold's cat map `[[2,1],[1,1]]`, the twist used by the polycyclic example.
pub fn cat_map() -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_mod_reduce_matches_residue_scan() {
        // oracle: scan residues for the inverse of 2 mod 5
        let inv2 = (0..5).find(|r| (2 * r) % 5 == 1).unwrap();
        assert_eq!(inv2, 3);
        let r = rational_mod_reduce(&rat(1, 2), 5).unwrap();
        assert_eq!(r.value(), 3);

        let r = rational_mod_reduce(&rat(3, 1), 7).unwrap();
        assert_eq!(r.value(), 3);

        let err = rational_mod_reduce(&rat(1, 6), 4).unwrap_err();
        assert!(matches!(err, ExactError::NonInvertibleDenominator { .. }));
    }

    #[test]
    fn rational_mod_reduce_inverts_denominator() {
        for num in -20i64..20 {
            for den in 1i64..12 {
                for n in 2u64..12 {
                    let q = rat(num, den);
                    match rational_mod_reduce(&q, n) {
                        Ok(r) => {
                            // r * den == num (mod n)
                            let lhs = (r.value() as i128) * (q.denom().to_i64().unwrap() as i128);
                            let rhs = q.numer().to_i64().unwrap() as i128;
                            assert_eq!(lhs.rem_euclid(n as i128), rhs.rem_euclid(n as i128));
                        }
                        Err(_) => {
                            assert_ne!(num_integer::gcd(q.denom().to_u64().unwrap(), n), 1);
                        }
                    }
                }
            }
        }
    }

    fn factorial_binomial(j: i64, k: u32) -> BigInt {
        // only valid for j >= k >= 0; used as the oracle on that range
        let mut num = BigInt::one();
        for i in 0..k as i64 {
            num *= BigInt::from(j - i);
        }
        let mut den = BigInt::one();
        for i in 1..=k as i64 {
            den *= BigInt::from(i);
        }
        num / den
    }

    #[test]
    fn binomial_poly_examples() {
        assert_eq!(binomial_poly(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial_poly(4, 3).unwrap(), BigInt::from(4));
        assert_eq!(binomial_poly(-1, 2).unwrap(), BigInt::from(1));
        assert!(matches!(
            binomial_poly(3, 4),
            Err(ExactError::UnsupportedDegree { degree: 4 })
        ));
    }

    #[test]
    fn binomial_poly_agrees_with_factorials() {
        for j in 0..=20 {
            for k in 0..=3u32 {
                assert_eq!(binomial_poly(j, k).unwrap(), factorial_binomial(j, k));
            }
        }
    }

    #[test]
    fn s_k_small_cases() {
        let t = cat_map();
        assert_eq!(s_k(&t, 0).unwrap(), IntMatrix::zeros(4, 4));
        assert_eq!(s_k(&t, 1).unwrap(), IntMatrix::identity(4));
        let tt = t.kron(&t);
        let tt_inv = tt.inverse_unimodular().unwrap();
        assert_eq!(s_k(&t, -1).unwrap(), tt_inv.neg());
    }

    #[test]
    fn s_k_identities_exact() {
        let t = cat_map();
        let tt = t.kron(&t);
        let one = IntMatrix::identity(4);
        for k1 in -5..=5i64 {
            // (T(x)T - 1) S_k = (T(x)T)^k - 1
            let lhs = tt.sub(&one).mul(&s_k(&t, k1).unwrap());
            let rhs = tt.pow(k1).unwrap().sub(&one);
            assert_eq!(lhs, rhs, "second identity fails at k={k1}");
            for k2 in -5..=5i64 {
                let lhs = s_k(&t, k1 + k2).unwrap();
                let rhs = s_k(&t, k1)
                    .unwrap()
                    .add(&tt.pow(k1).unwrap().mul(&s_k(&t, k2).unwrap()));
                assert_eq!(lhs, rhs, "cocycle identity fails at k1={k1}, k2={k2}");
            }
        }
    }

    #[test]
    fn matrix_order_examples() {
        let t = cat_map();
        // oracle: brute-force powers of T mod 2 by hand-rolled loop
        let mut p = t.mod_reduce(2);
        let mut ord = 1;
        while !p.is_identity() {
            p = p.mul(&t).mod_reduce(2);
            ord += 1;
            assert!(ord < 100);
        }
        assert_eq!(ord, 3);
        assert_eq!(matrix_order_mod(&t, 2).unwrap(), 3);

        assert_eq!(matrix_order_mod(&IntMatrix::identity(2), 5).unwrap(), 1);

        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]); // det 2
        assert!(matches!(
            matrix_order_mod(&m, 4),
            Err(ExactError::NotInvertibleMod { modulus: 4 })
        ));

        assert!(matches!(
            matrix_order_mod_with_cap(&t, 5, 2),
            Err(ExactError::NoOrderFound { cap: 2 })
        ));
    }

    #[test]
    fn pow_and_inverse() {
        let t = cat_map();
        let t3 = t.pow(3).unwrap();
        let tm3 = t.pow(-3).unwrap();
        assert!(t3.mul(&tm3).is_identity());
        let i = t.inverse_unimodular().unwrap();
        assert!(t.mul(&i).is_identity());
        assert!(i.mul(&t).is_identity());
    }

    #[test]
    fn kron_mixed_product() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let c = IntMatrix::from_i64_rows(&[&[2, -1], &[0, 5]]);
        let d = IntMatrix::from_i64_rows(&[&[1, 1], &[-2, 3]]);
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        assert_eq!(lhs, rhs);
    }
}
