//! The concrete groups: exponent-vector canonical forms with polynomial
//! multiplication maps, and their finite quotients.
//!
//! Three infinite groups are built in:
//! * `z2` — rank 2, free abelian;
//! * `nilpotent5` — rank 5, three-step nilpotent, multiplication given by the
//!   polynomials `eta_1..eta_5`;
//! * `catmap` — rank 3, `Z^2 ⋊ Z` where the generator of the last coordinate
//!   acts on the first two by Arnold's cat map `T = [[2,1],[1,1]]`.
//!
//! A finite quotient reduces each exponent coordinate by a modulus. For
//! `nilpotent5` the multiplication polynomials have denominators 2 and 3, so
//! the modulus must be coprime to 6; for `catmap` the last coordinate is
//! reduced modulo a period `m` of the twist, which must be a multiple of the
//! order of `T` mod `n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{cat_map, matrix_order_mod, s_k};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus {n} violates the quotient constraint: {requirement}")]
    CoprimalityViolation { n: u64, requirement: String },
    #[error("period {m} is not a multiple of the order {order} of the twist mod n")]
    BadPeriod { m: u64, order: u64 },
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("exponent vector has length {got}, expected rank {expected}")]
    RankMismatch { got: usize, expected: usize },
    #[error("group {0} has no finite quotient constructor")]
    NoQuotientRule(String),
}

/// Which multiplication law a descriptor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Law {
    Z2,
    Nilpotent5,
    Catmap,
    /// `(x, y, z)` with `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+y1*x2)`,
    /// the central extension of `z2` used by the induced-representation check.
    Heisenberg,
}

/// A finitely generated group presented as exponent vectors with polynomial
/// multiplication. Immutable after construction; shared via `Arc`.
pub struct GroupDescriptor {
    name: String,
    rank: usize,
    law: Law,
    /// Per-coordinate moduli; `None` means the infinite group.
    moduli: Option<Vec<u64>>,
}

impl fmt::Debug for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupDescriptor({})", self.name)
    }
}

/// An element of a [`GroupDescriptor`], stored in canonical form: exponents
/// reduced into `[0, modulus)` when the group is finite.
#[derive(Clone)]
pub struct GroupElement {
    desc: Arc<GroupDescriptor>,
    exps: Vec<i64>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.exps, self.desc.name)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.desc.name == other.desc.name && self.exps == other.exps
    }
}
impl Eq for GroupElement {}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.desc
            .name
            .cmp(&other.desc.name)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.desc.name.hash(state);
        self.exps.hash(state);
    }
}

fn c2(y: i64) -> i64 {
    y * (y - 1) / 2
}

/// Integer 2x2 power of the cat map, for desk-scale exponents.
fn cat_pow_i64(k: i64) -> [[i64; 2]; 2] {
    let (base, steps) = if k >= 0 {
        ([[2, 1], [1, 1]], k)
    } else {
        ([[1, -1], [-1, 2]], -k)
    };
    let mut acc = [[1i64, 0], [0, 1]];
    for _ in 0..steps {
        acc = mat2_mul(acc, base);
    }
    acc
}

fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat2_mod(a: [[i64; 2]; 2], n: i64) -> [[i64; 2]; 2] {
    [
        [a[0][0].rem_euclid(n), a[0][1].rem_euclid(n)],
        [a[1][0].rem_euclid(n), a[1][1].rem_euclid(n)],
    ]
}

/// Cat-map power mod n, exponent first reduced mod the period `m`.
fn cat_pow_mod(k: i64, n: i64, m: i64) -> [[i64; 2]; 2] {
    let steps = k.rem_euclid(m);
    let base = mat2_mod([[2, 1], [1, 1]], n);
    let mut acc = [[1i64, 0], [0, 1]];
    for _ in 0..steps {
        acc = mat2_mod(mat2_mul(acc, base), n);
    }
    acc
}

impl GroupDescriptor {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> Option<&[u64]> {
        self.moduli.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.is_some()
    }

    /// Number of elements of a finite group.
    pub fn order(&self) -> Option<u128> {
        self.moduli
            .as_ref()
            .map(|m| m.iter().map(|&x| x as u128).product())
    }

    fn reduce_in_place(&self, exps: &mut [i64]) {
        if let Some(moduli) = &self.moduli {
            for (x, &m) in exps.iter_mut().zip(moduli) {
                *x = x.rem_euclid(m as i64);
            }
        }
    }

    fn multiply_raw(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = match self.law {
            Law::Z2 => vec![a[0] + b[0], a[1] + b[1]],
            Law::Nilpotent5 => {
                let (x1, x2, x3, x4, x5) = (a[0], a[1], a[2], a[3], a[4]);
                let (y1, y2, y3, y4, y5) = (b[0], b[1], b[2], b[3], b[4]);
                vec![
                    x1 + y1,
                    x2 + y2,
                    x3 + y3 + x2 * y1,
                    x4 + y4 + 2 * x3 * y1 + 2 * x2 * c2(y1),
                    x5 + y5 + y1 * c2(x2) + x3 * y2 + x2 * y1 * y2,
                ]
            }
            Law::Catmap => {
                let t = match &self.moduli {
                    None => cat_pow_i64(a[2]),
                    Some(m) => cat_pow_mod(a[2], m[0] as i64, m[2] as i64),
                };
                vec![
                    a[0] + t[0][0] * b[0] + t[0][1] * b[1],
                    a[1] + t[1][0] * b[0] + t[1][1] * b[1],
                    a[2] + b[2],
                ]
            }
            Law::Heisenberg => vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[1] * b[0]],
        };
        self.reduce_in_place(&mut out);
        out
    }

    fn inverse_raw(&self, a: &[i64]) -> Vec<i64> {
        let mut out = match self.law {
            Law::Catmap => {
                let t_inv = match &self.moduli {
                    None => cat_pow_i64(-a[2]),
                    Some(m) => {
                        let period = m[2] as i64;
                        cat_pow_mod(-a[2], m[0] as i64, period)
                    }
                };
                vec![
                    -(t_inv[0][0] * a[0] + t_inv[0][1] * a[1]),
                    -(t_inv[1][0] * a[0] + t_inv[1][1] * a[1]),
                    -a[2],
                ]
            }
            // the other laws are coordinate-triangular: eta_i = x_i + y_i + f_i(lower coords),
            // so the inverse follows by back-substitution
            _ => {
                let mut h = vec![0i64; self.rank];
                for i in 0..self.rank {
                    let p = self.multiply_raw(a, &h);
                    h[i] -= match &self.moduli {
                        None => p[i],
                        Some(m) => {
                            // stay reduced while solving
                            let v = p[i].rem_euclid(m[i] as i64);
                            v
                        }
                    };
                }
                h
            }
        };
        self.reduce_in_place(&mut out);
        out
    }

    /// Lexicographic index of a canonical element of a finite group.
    pub fn canonical_index(&self, g: &GroupElement) -> usize {
        let moduli = self.moduli.as_ref().expect("finite group");
        let mut idx: usize = 0;
        for (x, &m) in g.exps.iter().zip(moduli) {
            idx = idx * (m as usize) + (*x as usize);
        }
        idx
    }
}

/// Descriptor-level smart constructors keep names unique so element equality
/// can compare by name.
fn descriptor(name: String, rank: usize, law: Law, moduli: Option<Vec<u64>>) -> Arc<GroupDescriptor> {
    Arc::new(GroupDescriptor { name, rank, law, moduli })
}

/// Rank-2 free abelian group.
pub fn make_z2() -> Arc<GroupDescriptor> {
    descriptor("z2".into(), 2, Law::Z2, None)
}

/// The rank-5 three-step nilpotent group with relations
/// `a2*a1 = a1*a2*a3`, `a3*a1 = a1*a3*a4^2`, `a3*a2 = a2*a3*a5`
/// (all other generator pairs commute), realized on `Z^5` by the
/// multiplication polynomials `eta_1..eta_5`.
pub fn make_nilpotent5() -> Arc<GroupDescriptor> {
    descriptor("nilpotent5".into(), 5, Law::Nilpotent5, None)
}

/// `Z^2 ⋊ Z`, the semidirect product twisted by Arnold's cat map:
/// `(v1,k1)*(v2,k2) = (v1 + T^{k1} v2, k1+k2)`.
pub fn make_catmap() -> Arc<GroupDescriptor> {
    descriptor("catmap".into(), 3, Law::Catmap, None)
}

/// Integer Heisenberg-type central extension of `z2` (used finite, mod `n`).
pub(crate) fn make_heisenberg(n: u64) -> Arc<GroupDescriptor> {
    descriptor(
        format!("heisenberg mod {n}"),
        3,
        Law::Heisenberg,
        Some(vec![n, n, n]),
    )
}

impl GroupElement {
    pub fn new(desc: &Arc<GroupDescriptor>, exps: Vec<i64>) -> Result<Self, GroupError> {
        if exps.len() != desc.rank {
            return Err(GroupError::RankMismatch {
                got: exps.len(),
                expected: desc.rank,
            });
        }
        let mut exps = exps;
        desc.reduce_in_place(&mut exps);
        Ok(GroupElement { desc: desc.clone(), exps })
    }

    pub fn identity(desc: &Arc<GroupDescriptor>) -> Self {
        GroupElement {
            desc: desc.clone(),
            exps: vec![0; desc.rank],
        }
    }

    pub fn descriptor(&self) -> &Arc<GroupDescriptor> {
        &self.desc
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(
            self.desc.name, other.desc.name,
            "elements from different groups"
        );
        GroupElement {
            desc: self.desc.clone(),
            exps: self.desc.multiply_raw(&self.exps, &other.exps),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            desc: self.desc.clone(),
            exps: self.desc.inverse_raw(&self.exps),
        }
    }

    /// `self * other * self^{-1} * other^{-1}`.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }
}

/// Coordinate-wise reduction map from an infinite group onto a finite quotient.
#[derive(Clone)]
pub struct QuotientMap {
    source: Arc<GroupDescriptor>,
    target: Arc<GroupDescriptor>,
}

impl QuotientMap {
    pub fn source(&self) -> &Arc<GroupDescriptor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GroupDescriptor> {
        &self.target
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        assert_eq!(g.desc.name, self.source.name, "element not from the source group");
        GroupElement::new(&self.target, g.exps.clone()).expect("rank preserved")
    }
}

/// Period of the pair `(T^k mod n, S_k mod n)` in `k`.
///
/// The order `m0` of `T` mod `n` makes the *group* quotient well defined, but
/// the cat-map cocycle also feeds `k` into `S_k`, whose reduction mod `n`
/// repeats with period `m0 * (additive order of S_{m0} mod n)`. Quotients
/// used to build representations must reduce `k` by this longer period.
pub fn catmap_cocycle_period(n: u64) -> Result<u64, GroupError> {
    let t = cat_map();
    let m0 = matrix_order_mod(&t, n).map_err(|_| GroupError::CoprimalityViolation {
        n,
        requirement: "T must be invertible mod n".into(),
    })?;
    let s_m0 = s_k(&t, m0 as i64).expect("cat map is 2x2").mod_reduce(n);
    let mut g = n;
    for i in 0..4 {
        for j in 0..4 {
            let e = s_m0.get(i, j).to_u64().expect("reduced");
            g = num_integer::gcd(g, e);
            if g == 1 {
                break;
            }
        }
    }
    Ok(m0 * (n / g.max(1)))
}

/// Builds the finite quotient of one of the example groups by reducing each
/// exponent coordinate. `m` only applies to `catmap` (the modulus of the last
/// coordinate) and defaults to [`catmap_cocycle_period`].
pub fn finite_quotient(
    desc: &Arc<GroupDescriptor>,
    n: u64,
    m: Option<u64>,
) -> Result<(Arc<GroupDescriptor>, QuotientMap), GroupError> {
    if desc.is_finite() {
        return Err(GroupError::NoQuotientRule(desc.name.clone()));
    }
    if n < 2 {
        return Err(GroupError::CoprimalityViolation {
            n,
            requirement: "modulus must be at least 2".into(),
        });
    }
    let target = match desc.law {
        Law::Z2 => descriptor(format!("z2 mod {n}"), 2, Law::Z2, Some(vec![n, n])),
        Law::Nilpotent5 => {
            if num_integer::gcd(n, 6) != 1 {
                return Err(GroupError::CoprimalityViolation {
                    n,
                    requirement: "nilpotent5 needs n coprime to 6".into(),
                });
            }
            descriptor(
                format!("nilpotent5 mod {n}"),
                5,
                Law::Nilpotent5,
                Some(vec![n; 5]),
            )
        }
        Law::Catmap => {
            if n % 2 == 0 {
                return Err(GroupError::CoprimalityViolation {
                    n,
                    requirement: "catmap needs odd n".into(),
                });
            }
            let order = matrix_order_mod(&cat_map(), n).expect("T invertible for odd n");
            let m = match m {
                Some(m) => m,
                None => catmap_cocycle_period(n)?,
            };
            if m == 0 || m % order != 0 {
                return Err(GroupError::BadPeriod { m, order });
            }
            descriptor(
                format!("catmap mod ({n},{m})"),
                3,
                Law::Catmap,
                Some(vec![n, n, m]),
            )
        }
        Law::Heisenberg => return Err(GroupError::NoQuotientRule(desc.name.clone())),
    };
    let map = QuotientMap {
        source: desc.clone(),
        target: target.clone(),
    };
    Ok((target, map))
}

/// Every element of a finite group, in lexicographic order of exponents.
pub fn enumerate(desc: &Arc<GroupDescriptor>) -> Result<Vec<GroupElement>, GroupError> {
    let moduli = desc.moduli.clone().ok_or(GroupError::InfiniteGroup)?;
    let total: u128 = moduli.iter().map(|&m| m as u128).product();
    let total = usize::try_from(total).expect("desk-scale group");
    let mut out = Vec::with_capacity(total);
    let mut exps = vec![0i64; desc.rank];
    loop {
        out.push(GroupElement {
            desc: desc.clone(),
            exps: exps.clone(),
        });
        // odometer increment, last coordinate fastest
        let mut i = desc.rank;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < moduli[i] as i64 {
                break;
            }
            exps[i] = 0;
        }
        if exps.iter().all(|&x| x == 0) {
            return Ok(out);
        }
    }
}

/// All elements with each exponent in `[-radius, radius]` (infinite groups).
pub fn exponent_box(desc: &Arc<GroupDescriptor>, radius: i64) -> Vec<GroupElement> {
    let ranges = vec![(-radius, radius); desc.rank];
    coordinate_box(desc, &ranges)
}

/// All elements with exponent `i` in `ranges[i]` (inclusive).
pub fn coordinate_box(desc: &Arc<GroupDescriptor>, ranges: &[(i64, i64)]) -> Vec<GroupElement> {
    assert_eq!(ranges.len(), desc.rank);
    let mut out = vec![vec![]];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for prefix in &out {
            for v in lo..=hi {
                let mut p: Vec<i64> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|exps| GroupElement::new(desc, exps).expect("rank matches"))
        .collect()
}

/// Cache of cat-map powers used by hot loops over a fixed exponent range.
pub(crate) struct CatPowers {
    cache: HashMap<i64, [[i64; 2]; 2]>,
}

impl CatPowers {
    pub fn new(range: std::ops::RangeInclusive<i64>) -> Self {
        let mut cache = HashMap::new();
        for k in range {
            cache.insert(k, cat_pow_i64(k));
        }
        CatPowers { cache }
    }

    pub fn get(&self, k: i64) -> [[i64; 2]; 2] {
        match self.cache.get(&k) {
            Some(m) => *m,
            None => cat_pow_i64(k),
        }
    }
}
