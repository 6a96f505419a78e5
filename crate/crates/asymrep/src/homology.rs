//! Bar-resolution chains and cochains with exact coefficients.
//!
//! Degree-2 chains are finite integer combinations of pairs `[g|h]`; cochains
//! are rational-valued evaluators. The boundary and coboundary operators are
//!
//! ```text
//! d2 [g1|g2]    = [g1] - [g1 g2] + [g2]
//! d3 [g1|g2|g3] = -[g1|g2] + [g1|g2 g3] - [g1 g2|g3] + [g2|g3]
//! (d^1 a)(g1,g2)    = a(g1) - a(g1 g2) + a(g2)
//! (d^2 s)(g1,g2,g3) = -s(g1,g2) + s(g1,g2 g3) - s(g1 g2,g3) + s(g2,g3)
//! ```
//!
//! and the bilinear pairing evaluates a cochain on a chain term by term.
//! Cocycle verification is exhaustive over configurable exponent boxes: the
//! groups are infinite, so identities are checked on boxes rather than
//! globally.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{binomial_poly, cat_map, rat_int, s_k, Rational};
use crate::groups::{coordinate_box, exponent_box, GroupDescriptor, GroupElement};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("commutator word does not multiply to the identity, so it is not a relator")]
    NotARelator,
    #[error("malformed chain JSON: {0}")]
    BadChainJson(String),
}

macro_rules! chain_type {
    ($name:ident, $key:ty, $doc:expr) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            desc: Arc<GroupDescriptor>,
            terms: BTreeMap<$key, i64>,
        }

        impl $name {
            pub fn zero(desc: &Arc<GroupDescriptor>) -> Self {
                Self {
                    desc: desc.clone(),
                    terms: BTreeMap::new(),
                }
            }

            pub fn descriptor(&self) -> &Arc<GroupDescriptor> {
                &self.desc
            }

            pub fn add_term(&mut self, key: $key, coeff: i64) {
                if coeff == 0 {
                    return;
                }
                let entry = self.terms.entry(key);
                match entry {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let v = o.get() + coeff;
                        if v == 0 {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(coeff);
                    }
                }
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$key, i64)> {
                self.terms.iter().map(|(k, &v)| (k, v))
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn scaled(&self, by: i64) -> Self {
                let mut out = Self::zero(&self.desc);
                for (k, v) in self.terms() {
                    out.add_term(k.clone(), v * by);
                }
                out
            }

            pub fn plus(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (k, v) in other.terms() {
                    out.add_term(k.clone(), v);
                }
                out
            }
        }
    };
}

chain_type!(Chain1, GroupElement, "Formal integer combination of `[g]` terms.");
chain_type!(
    Chain2,
    (GroupElement, GroupElement),
    "Formal integer combination of `[g|h]` terms."
);
chain_type!(
    Chain3,
    (GroupElement, GroupElement, GroupElement),
    "Formal integer combination of `[g|h|k]` terms."
);

impl Chain2 {
    pub fn from_terms(
        desc: &Arc<GroupDescriptor>,
        terms: impl IntoIterator<Item = ((GroupElement, GroupElement), i64)>,
    ) -> Self {
        let mut c = Chain2::zero(desc);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    /// The ordered pairs carrying nonzero coefficients.
    pub fn support(&self) -> Vec<(GroupElement, GroupElement)> {
        self.terms.keys().cloned().collect()
    }

    /// All group elements `{a, b, ab}` appearing in the support.
    pub fn boundary_support(&self) -> Vec<GroupElement> {
        let mut set = std::collections::BTreeSet::new();
        for (a, b) in self.terms.keys() {
            set.insert(a.clone());
            set.insert(b.clone());
            set.insert(a.mul(b));
        }
        set.into_iter().collect()
    }
}

/// Rational-valued 1-cochain, stored as an evaluator (the groups are infinite).
#[derive(Clone)]
pub struct Cochain1 {
    name: String,
    f: Arc<dyn Fn(&GroupElement) -> Rational + Send + Sync>,
}

impl Cochain1 {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&GroupElement) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Cochain1 { name: name.into(), f: Arc::new(f) }
    }

    pub fn zero() -> Self {
        Self::new("zero", |_| Rational::zero())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, g: &GroupElement) -> Rational {
        (self.f)(g)
    }
}

/// Rational-valued 2-cochain, stored as an evaluator.
#[derive(Clone)]
pub struct Cochain2 {
    name: String,
    f: Arc<dyn Fn(&GroupElement, &GroupElement) -> Rational + Send + Sync>,
}

impl Cochain2 {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&GroupElement, &GroupElement) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Cochain2 { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Rational {
        (self.f)(g, h)
    }
}

/// `d2`, extended linearly.
pub fn boundary2(c: &Chain2) -> Chain1 {
    let mut out = Chain1::zero(c.descriptor());
    for ((g, h), x) in c.terms() {
        out.add_term(g.clone(), x);
        out.add_term(g.mul(h), -x);
        out.add_term(h.clone(), x);
    }
    out
}

/// `d3`, extended linearly.
pub fn boundary3(d: &Chain3) -> Chain2 {
    let mut out = Chain2::zero(d.descriptor());
    for ((g1, g2, g3), x) in d.terms() {
        out.add_term((g1.clone(), g2.clone()), -x);
        out.add_term((g1.clone(), g2.mul(g3)), x);
        out.add_term((g1.mul(g2), g3.clone()), -x);
        out.add_term((g2.clone(), g3.clone()), x);
    }
    out
}

/// `d^1`: the coboundary of a 1-cochain.
pub fn coboundary1(alpha: &Cochain1) -> Cochain2 {
    let a = alpha.clone();
    Cochain2::new(format!("d({})", alpha.name()), move |g1, g2| {
        a.eval(g1) - a.eval(&g1.mul(g2)) + a.eval(g2)
    })
}

/// `d^2`: the coboundary of a 2-cochain, as a pointwise evaluator on triples.
pub fn coboundary2(
    sigma: &Cochain2,
) -> impl Fn(&GroupElement, &GroupElement, &GroupElement) -> Rational + Send + Sync {
    let s = sigma.clone();
    move |g1, g2, g3| {
        -s.eval(g1, g2) + s.eval(g1, &g2.mul(g3)) - s.eval(&g1.mul(g2), g3) + s.eval(g2, g3)
    }
}

/// The bilinear pairing `<sigma, sum x_i [a_i|b_i]> = sum x_i sigma(a_i, b_i)`.
pub fn pair(sigma: &Cochain2, c: &Chain2) -> Rational {
    let mut acc = Rational::zero();
    for ((a, b), x) in c.terms() {
        acc += sigma.eval(a, b) * rat_int(x);
    }
    acc
}

/// Enumeration plan for an exhaustive cocycle check: one element list per
/// argument slot of the coboundary.
pub struct TriplePlan {
    pub slots: [Vec<GroupElement>; 3],
}

impl TriplePlan {
    /// Full exponent box `[-radius, radius]^rank` in every slot.
    pub fn full(desc: &Arc<GroupDescriptor>, radius: i64) -> Self {
        let b = exponent_box(desc, radius);
        TriplePlan { slots: [b.clone(), b.clone(), b] }
    }

    pub fn triple_count(&self) -> u64 {
        self.slots.iter().map(|s| s.len() as u64).product()
    }
}

/// First counterexample to the cocycle condition, if any.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub g1: GroupElement,
    pub g2: GroupElement,
    pub g3: GroupElement,
    pub value: Rational,
}

#[derive(Debug, Clone)]
pub struct CocycleReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub triples_checked: u64,
}

fn check_pair_block(
    sigma: &Cochain2,
    g1: &GroupElement,
    g2: &GroupElement,
    slot3: &[GroupElement],
) -> Option<Counterexample> {
    // amortize the two evaluations that do not involve g3
    let s12 = sigma.eval(g1, g2);
    let g12 = g1.mul(g2);
    for g3 in slot3 {
        let value = -s12.clone() + sigma.eval(g1, &g2.mul(g3)) - sigma.eval(&g12, g3)
            + sigma.eval(g2, g3);
        if !value.is_zero() {
            return Some(Counterexample {
                g1: g1.clone(),
                g2: g2.clone(),
                g3: g3.clone(),
                value,
            });
        }
    }
    None
}

/// Sequential exhaustive check of `d^2 sigma = 0` over the plan.
pub fn is_cocycle_seq(sigma: &Cochain2, plan: &TriplePlan) -> CocycleReport {
    let [s1, s2, s3] = &plan.slots;
    for g1 in s1 {
        for g2 in s2 {
            if let Some(ce) = check_pair_block(sigma, g1, g2, s3) {
                return CocycleReport {
                    holds: false,
                    counterexample: Some(ce),
                    triples_checked: plan.triple_count(),
                };
            }
        }
    }
    CocycleReport {
        holds: true,
        counterexample: None,
        triples_checked: plan.triple_count(),
    }
}

/// Parallel exhaustive check; the reported counterexample is the first in
/// lexicographic slot order, so results are deterministic.
#[cfg(feature = "parallel")]
pub fn is_cocycle_par(sigma: &Cochain2, plan: &TriplePlan) -> CocycleReport {
    let [s1, s2, s3] = &plan.slots;
    let n2 = s2.len();
    let ce = (0..s1.len() * n2)
        .into_par_iter()
        .find_map_first(|idx| check_pair_block(sigma, &s1[idx / n2], &s2[idx % n2], s3));
    CocycleReport {
        holds: ce.is_none(),
        counterexample: ce,
        triples_checked: plan.triple_count(),
    }
}

/// Exhaustive check of the cocycle condition over the plan, parallel when the
/// `parallel` feature is enabled.
pub fn is_cocycle(sigma: &Cochain2, plan: &TriplePlan) -> CocycleReport {
    #[cfg(feature = "parallel")]
    {
        is_cocycle_par(sigma, plan)
    }
    #[cfg(not(feature = "parallel"))]
    {
        is_cocycle_seq(sigma, plan)
    }
}

/// The 2-cycle attached to a product of commutators that is a relator.
///
/// For a word `[a_1,b_1]...[a_N,b_N]` whose product is the identity, with
/// prefix products `I_i = [a_1,b_1]...[a_i,b_i]`, the cycle is
///
/// ```text
/// sum_i  [I_{i-1}|a_i] + [I_{i-1} a_i|b_i] - [I_{i-1} a_i b_i a_i^{-1}|a_i] - [I_i|b_i]
/// ```
///
/// Degenerate terms such as `[e|a]` are kept, not stripped; they do not
/// change pairings against normalized cocycles.
pub fn hopf_cycle(
    desc: &Arc<GroupDescriptor>,
    word: &[(GroupElement, GroupElement)],
) -> Result<Chain2, HomologyError> {
    let mut prefix = GroupElement::identity(desc);
    let mut out = Chain2::zero(desc);
    let mut prefixes = Vec::with_capacity(word.len() + 1);
    prefixes.push(prefix.clone());
    for (a, b) in word {
        prefix = prefix.mul(&a.commutator(b));
        prefixes.push(prefix.clone());
    }
    if !prefix.is_identity() {
        return Err(HomologyError::NotARelator);
    }
    for (i, (a, b)) in word.iter().enumerate() {
        let before = &prefixes[i];
        let after = &prefixes[i + 1];
        let ba = before.mul(a);
        let conj = ba.mul(b).mul(&a.inverse());
        out.add_term((before.clone(), a.clone()), 1);
        out.add_term((ba, b.clone()), 1);
        out.add_term((conj, a.clone()), -1);
        out.add_term((after.clone(), b.clone()), -1);
    }
    Ok(out)
}

/// `sigma((x1,x2),(y1,y2)) = x2*y1` on `z2`; pairs to 1 with
/// `[b|a] - [a|b]`.
pub fn sigma_z2() -> Cochain2 {
    Cochain2::new("z2", |x, y| rat_int(x.exponents()[1] * y.exponents()[0]))
}

/// `sigma(x,y) = x4*y1 + 2*x3*C(y1,2) + 2*x2*C(y1,3)` on `nilpotent5`.
/// Integer-valued despite the rational coefficients hidden in `C(.,3)`.
pub fn sigma_nilpotent5() -> Cochain2 {
    Cochain2::new("nilpotent5", |x, y| {
        let xe = x.exponents();
        let y1 = y.exponents()[0];
        let v = BigInt::from(xe[3]) * BigInt::from(y1)
            + BigInt::from(2 * xe[2]) * binomial_poly(y1, 2).expect("degree 2")
            + BigInt::from(2 * xe[1]) * binomial_poly(y1, 3).expect("degree 3");
        Rational::from_integer(v)
    })
}

/// Per-exponent data for the cat-map cocycle: `T^k`, `S_k`, and
/// `(T-1)^{-1} (T^k - 1)`, all integer matrices.
struct CatKData {
    t_k: [[i64; 2]; 2],
    s_k: [[i64; 4]; 4],
    c_k: [[i64; 2]; 2],
}

fn cat_k_data(k: i64) -> CatKData {
    let t = cat_map();
    let to2 = |m: &crate::exact::IntMatrix| {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = m.get(i, j).to_i64().expect("desk-scale exponent");
            }
        }
        out
    };
    let to4 = |m: &crate::exact::IntMatrix| {
        let mut out = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = m.get(i, j).to_i64().expect("desk-scale exponent");
            }
        }
        out
    };
    let t_k = t.pow(k).expect("det T = 1");
    let sk = s_k(&t, k).expect("2x2");
    // (T-1)^{-1} is integer because det(T-1) = -1
    let c = t
        .sub(&crate::exact::IntMatrix::identity(2))
        .inverse_unimodular()
        .expect("det(T-1) = -1")
        .mul(&t_k.sub(&crate::exact::IntMatrix::identity(2)));
    CatKData { t_k: to2(&t_k), s_k: to4(&sk), c_k: to2(&c) }
}

/// The cat-map cocycle `sigma = sigma_1 + sigma_2 + sigma_3 - sigma_4` on
/// elements `(v, k)` of `catmap`, built from the forms
///
/// ```text
/// alpha(u (x) w) = u^1 w^2        beta(u (x) w) = u^1 w^1 + (1/2) u^2 w^2
/// gamma(w)       = w^1 + (1/2) w^2
/// sigma_1 = alpha(T^{k1} v2 (x) v1)         sigma_2 = alpha(S_{k1} (v2 (x) v2))
/// sigma_3 = beta(S_{k1} (v2 (x) v2))        sigma_4 = gamma((T-1)^{-1}(T^{k1}-1) v2)
/// ```
///
/// The value is always an integer even though `beta` and `gamma` are
/// half-integral. Only the first argument's last coordinate enters through
/// `T^k`/`S_k`, so powers are cached for the exponents hot loops touch.
pub fn sigma_catmap() -> Cochain2 {
    let cache: HashMap<i64, CatKData> = (-20..=20).map(|k| (k, cat_k_data(k))).collect();
    Cochain2::new("catmap", move |g1, g2| {
        let (v1, k1) = (&g1.exponents()[0..2], g1.exponents()[2]);
        let v2 = &g2.exponents()[0..2];
        let local;
        let data = match cache.get(&k1) {
            Some(d) => d,
            None => {
                local = cat_k_data(k1);
                &local
            }
        };
        // sigma_1 = alpha(T^{k1} v2 (x) v1)
        let u0 = data.t_k[0][0] * v2[0] + data.t_k[0][1] * v2[1];
        let s1 = u0 * v1[1];
        // w = v2 (x) v2 in Kronecker order (u1w1, u1w2, u2w1, u2w2)
        let w = [v2[0] * v2[0], v2[0] * v2[1], v2[1] * v2[0], v2[1] * v2[1]];
        let sw: Vec<i64> = (0..4)
            .map(|i| (0..4).map(|j| data.s_k[i][j] * w[j]).sum())
            .collect();
        // sigma_2 + sigma_3 = (alpha + beta)(S_{k1} w) = sw[1] + sw[0] + sw[3]/2
        let s23_twice = 2 * (sw[1] + sw[0]) + sw[3];
        // sigma_4 = gamma(C_{k1} v2) = cv[0] + cv[1]/2
        let cv0 = data.c_k[0][0] * v2[0] + data.c_k[0][1] * v2[1];
        let cv1 = data.c_k[1][0] * v2[0] + data.c_k[1][1] * v2[1];
        let s4_twice = 2 * cv0 + cv1;
        Rational::new(
            BigInt::from(2 * s1 + s23_twice - s4_twice),
            BigInt::from(2),
        )
    })
}

/// A deliberately broken cochain on `z2` (`x1*y1^3`), used to exercise the
/// counterexample path of the cocycle checker.
pub fn sigma_synthetic_noncocycle() -> Cochain2 {
    Cochain2::new("synthetic-cube", |x, y| {
        let a = x.exponents()[0];
        let b = y.exponents()[0];
        rat_int(a * b * b * b)
    })
}

/// Cocycle by name, as exposed on the CLI.
pub fn sigma_by_name(name: &str) -> Option<Cochain2> {
    match name {
        "z2" => Some(sigma_z2()),
        "nilpotent5" => Some(sigma_nilpotent5()),
        "catmap" => Some(sigma_catmap()),
        "synthetic-cube" => Some(sigma_synthetic_noncocycle()),
        _ => None,
    }
}

/// Verification plan sized for each example cocycle.
///
/// For `z2` and `catmap` the full box is swept. For `nilpotent5` the full
/// radius-3 box has `16807^3` triples, so the sweep is restricted to the
/// coordinates the coboundary actually reads: the cocycle is a function of
/// `(x2,x3,x4)` of its first argument and `y1` of its second, and the
/// multiplication polynomials produce those coordinates of `g1*g2` and
/// `g2*g3` from `(x2,x3,x4)`, `(y1..y4)`, `(z1)` alone. Sweeping those eight
/// coordinates over the box and pinning the rest to zero therefore covers
/// every value the coboundary attains on the full box.
pub fn cocycle_plan(desc: &Arc<GroupDescriptor>, radius: i64) -> TriplePlan {
    match desc.name() {
        "nilpotent5" => {
            let r = radius;
            let slot1 = coordinate_box(desc, &[(0, 0), (-r, r), (-r, r), (-r, r), (0, 0)]);
            let slot2 = coordinate_box(desc, &[(-r, r), (-r, r), (-r, r), (-r, r), (0, 0)]);
            let slot3 = coordinate_box(desc, &[(-r, r), (0, 0), (0, 0), (0, 0), (0, 0)]);
            TriplePlan { slots: [slot1, slot2, slot3] }
        }
        _ => TriplePlan::full(desc, radius),
    }
}

/// Chain serialization: a list of `{pair: [exponents, exponents], coeff}`.
pub fn chain2_to_json(c: &Chain2) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|((a, b), x)| {
            json!({
                "pair": [a.exponents(), b.exponents()],
                "coeff": x,
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn chain2_from_json(desc: &Arc<GroupDescriptor>, v: &Value) -> Result<Chain2, HomologyError> {
    let arr = v
        .as_array()
        .ok_or_else(|| HomologyError::BadChainJson("expected a JSON array".into()))?;
    let mut out = Chain2::zero(desc);
    for term in arr {
        let pair = term
            .get("pair")
            .and_then(Value::as_array)
            .ok_or_else(|| HomologyError::BadChainJson("term missing 'pair'".into()))?;
        if pair.len() != 2 {
            return Err(HomologyError::BadChainJson("'pair' must have two entries".into()));
        }
        let coeff = term
            .get("coeff")
            .and_then(Value::as_i64)
            .ok_or_else(|| HomologyError::BadChainJson("term missing integer 'coeff'".into()))?;
        let parse = |v: &Value| -> Result<GroupElement, HomologyError> {
            let exps: Vec<i64> = v
                .as_array()
                .ok_or_else(|| HomologyError::BadChainJson("exponents must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| HomologyError::BadChainJson("exponent must be an integer".into()))
                })
                .collect::<Result<_, _>>()?;
            GroupElement::new(desc, exps)
                .map_err(|e| HomologyError::BadChainJson(format!("bad element: {e}")))
        };
        out.add_term((parse(&pair[0])?, parse(&pair[1])?), coeff);
    }
    Ok(out)
}

/// The commutator chain `[b|a] - [a|b]` for two elements.
pub fn commutator_chain(a: &GroupElement, b: &GroupElement) -> Chain2 {
    Chain2::from_terms(
        a.descriptor(),
        [((b.clone(), a.clone()), 1), ((a.clone(), b.clone()), -1)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_catmap, make_nilpotent5, make_z2};
    use proptest::prelude::*;

    fn el(desc: &Arc<GroupDescriptor>, exps: &[i64]) -> GroupElement {
        GroupElement::new(desc, exps.to_vec()).unwrap()
    }

    #[test]
    fn boundary2_examples() {
        let z2 = make_z2();
        let e = GroupElement::identity(&z2);
        let a = el(&z2, &[1, 0]);
        let b = el(&z2, &[0, 1]);

        // [g|e] -> [g] - [g] + [e] = [e]
        let c = Chain2::from_terms(&z2, [((a.clone(), e.clone()), 1)]);
        let mut expected = Chain1::zero(&z2);
        expected.add_term(e.clone(), 1);
        assert_eq!(boundary2(&c), expected);

        // [b|a] - [a|b] is a cycle since ab = ba
        assert!(boundary2(&commutator_chain(&a, &b)).is_zero());

        // [a|a] -> 2[a] - [a^2]
        let c = Chain2::from_terms(&z2, [((a.clone(), a.clone()), 1)]);
        let mut expected = Chain1::zero(&z2);
        expected.add_term(a.clone(), 2);
        expected.add_term(a.mul(&a), -1);
        assert_eq!(boundary2(&c), expected);
    }

    #[test]
    fn boundary3_examples() {
        let z2 = make_z2();
        let e = GroupElement::identity(&z2);
        let mut d = Chain3::zero(&z2);
        d.add_term((e.clone(), e.clone(), e.clone()), 1);
        assert!(boundary3(&d).is_zero());

        // d3 [a|b|a] expanded term by term
        let a = el(&z2, &[1, 0]);
        let b = el(&z2, &[0, 1]);
        let mut d = Chain3::zero(&z2);
        d.add_term((a.clone(), b.clone(), a.clone()), 1);
        let got = boundary3(&d);
        let expected = Chain2::from_terms(
            &z2,
            [
                ((a.clone(), b.clone()), -1),
                ((a.clone(), b.mul(&a)), 1),
                ((a.mul(&b), a.clone()), -1),
                ((b.clone(), a.clone()), 1),
            ],
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn coboundary1_examples() {
        let z2 = make_z2();
        let zero = coboundary1(&Cochain1::zero());
        let a = el(&z2, &[2, -1]);
        let b = el(&z2, &[1, 3]);
        assert!(zero.eval(&a, &b).is_zero());

        // a homomorphism has zero coboundary
        let hom = Cochain1::new("first-coordinate", |g| rat_int(g.exponents()[0]));
        assert!(coboundary1(&hom).eval(&a, &b).is_zero());

        // alpha(g) = g1^2 gives (d alpha)(x,y) = -2 x1 y1
        let sq = Cochain1::new("square", |g| rat_int(g.exponents()[0] * g.exponents()[0]));
        let d = coboundary1(&sq);
        for x in exponent_box(&z2, 3) {
            for y in exponent_box(&z2, 3) {
                assert_eq!(
                    d.eval(&x, &y),
                    rat_int(-2 * x.exponents()[0] * y.exponents()[0])
                );
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let z2 = make_z2();
        let a = el(&z2, &[1, 0]);
        let b = el(&z2, &[0, 1]);
        let sigma = sigma_z2();
        assert_eq!(sigma.eval(&b, &a), rat_int(1));
        assert_eq!(pair(&sigma, &commutator_chain(&a, &b)), rat_int(1));
        assert!(pair(&sigma, &Chain2::zero(&z2)).is_zero());

        let cat = make_catmap();
        let a1 = el(&cat, &[1, 0, 0]);
        let a2 = el(&cat, &[0, 1, 0]);
        assert_eq!(pair(&sigma_catmap(), &commutator_chain(&a1, &a2)), rat_int(1));

        let n5 = make_nilpotent5();
        let a1 = el(&n5, &[1, 0, 0, 0, 0]);
        let a4 = el(&n5, &[0, 0, 0, 1, 0]);
        assert_eq!(
            pair(&sigma_nilpotent5(), &commutator_chain(&a1, &a4)),
            rat_int(1)
        );
    }

    #[test]
    fn example_cocycles_hold_on_small_boxes() {
        let z2 = make_z2();
        let rep = is_cocycle(&sigma_z2(), &TriplePlan::full(&z2, 3));
        assert!(rep.holds, "witness: {:?}", rep.counterexample);

        let cat = make_catmap();
        let rep = is_cocycle(&sigma_catmap(), &TriplePlan::full(&cat, 1));
        assert!(rep.holds, "witness: {:?}", rep.counterexample);

        let n5 = make_nilpotent5();
        let rep = is_cocycle(&sigma_nilpotent5(), &cocycle_plan(&n5, 1));
        assert!(rep.holds, "witness: {:?}", rep.counterexample);
    }

    #[test]
    fn non_cocycle_found_with_witness() {
        let z2 = make_z2();
        let sigma = sigma_synthetic_noncocycle();
        let rep = is_cocycle(&sigma, &TriplePlan::full(&z2, 2));
        assert!(!rep.holds);
        let ce = rep.counterexample.expect("witness");
        // the witness really violates the identity
        let d2 = coboundary2(&sigma);
        assert_eq!(d2(&ce.g1, &ce.g2, &ce.g3), ce.value);
        assert!(!ce.value.is_zero());
        // parallel and sequential agree on the first witness
        let seq = is_cocycle_seq(&sigma, &TriplePlan::full(&z2, 2));
        let sce = seq.counterexample.unwrap();
        assert_eq!((ce.g1, ce.g2, ce.g3), (sce.g1, sce.g2, sce.g3));
    }

    #[test]
    fn constant_cochains_are_cocycles() {
        // the alternating sum kills constants, so a constant is a (trivial) cocycle
        let z2 = make_z2();
        let c7 = Cochain2::new("const-7", |_, _| rat_int(7));
        assert!(is_cocycle(&c7, &TriplePlan::full(&z2, 2)).holds);
    }

    #[test]
    fn hopf_cycle_z2() {
        let z2 = make_z2();
        let e = GroupElement::identity(&z2);
        let a = el(&z2, &[1, 0]);
        let b = el(&z2, &[0, 1]);
        let c = hopf_cycle(&z2, &[(a.clone(), b.clone())]).unwrap();
        let expected = Chain2::from_terms(
            &z2,
            [
                ((e.clone(), a.clone()), 1),
                ((a.clone(), b.clone()), 1),
                ((b.clone(), a.clone()), -1),
                ((e.clone(), b.clone()), -1),
            ],
        );
        assert_eq!(c, expected);
        assert!(boundary2(&c).is_zero());

        // orientation: this cycle pairs to -1 against sigma_z2 (the
        // commutator chain [b|a]-[a|b] pairs to +1); certificates compare
        // magnitudes and document the sign
        assert_eq!(pair(&sigma_z2(), &c), rat_int(-1));

        // empty word gives the zero chain
        assert!(hopf_cycle(&z2, &[]).unwrap().is_zero());

        // [(a,a)] is a relator whose chain cancels entirely
        let c = hopf_cycle(&z2, &[(a.clone(), a.clone())]).unwrap();
        assert!(c.is_zero());
        assert!(boundary2(&c).is_zero());
    }

    #[test]
    fn hopf_cycle_rejects_non_relators() {
        let cat = make_catmap();
        let a1 = el(&cat, &[1, 0, 0]);
        let a3 = el(&cat, &[0, 0, 1]);
        assert!(matches!(
            hopf_cycle(&cat, &[(a1, a3)]),
            Err(HomologyError::NotARelator)
        ));
    }

    #[test]
    fn hopf_cycles_are_cycles_in_all_groups() {
        let cat = make_catmap();
        let a1 = el(&cat, &[1, 0, 0]);
        let a2 = el(&cat, &[0, 1, 0]);
        let c = hopf_cycle(&cat, &[(a1.clone(), a2.clone())]).unwrap();
        assert!(boundary2(&c).is_zero());
        assert_eq!(pair(&sigma_catmap(), &c).abs(), rat_int(1));

        let n5 = make_nilpotent5();
        let a1 = el(&n5, &[1, 0, 0, 0, 0]);
        let a4 = el(&n5, &[0, 0, 0, 1, 0]);
        let c = hopf_cycle(&n5, &[(a4.clone(), a1.clone()), (a1.clone(), a4.clone())]).unwrap();
        assert!(boundary2(&c).is_zero());
    }

    #[test]
    fn sigma_values_and_normalization() {
        let z2 = make_z2();
        assert_eq!(sigma_z2().eval(&el(&z2, &[0, 1]), &el(&z2, &[1, 0])), rat_int(1));

        let n5 = make_nilpotent5();
        let s5 = sigma_nilpotent5();
        let e5 = GroupElement::identity(&n5);
        for x in exponent_box(&n5, 2) {
            assert!(s5.eval(&x, &e5).is_zero());
            assert!(s5.eval(&e5, &x).is_zero());
        }

        let cat = make_catmap();
        let scat = sigma_catmap();
        let ecat = GroupElement::identity(&cat);
        for g in exponent_box(&cat, 2) {
            assert!(scat.eval(&ecat, &g).is_zero());
            assert!(scat.eval(&g, &ecat).is_zero());
        }
    }

    #[test]
    fn catmap_sigma_matches_printed_phase_polynomial() {
        // sigma(a3, ((j,k), l)) = jk + j^2 + k^2/2 - j - k/2
        let cat = make_catmap();
        let a3 = el(&cat, &[0, 0, 1]);
        let s = sigma_catmap();
        for j in -4i64..=4 {
            for k in -4i64..=4 {
                let g = el(&cat, &[j, k, 0]);
                let expected = crate::exact::rat(2 * (j * k + j * j - j) + k * k - k, 2);
                assert_eq!(s.eval(&a3, &g), expected);
            }
        }
    }

    #[test]
    fn integer_valuedness_on_boxes() {
        let cat = make_catmap();
        let s = sigma_catmap();
        for g in exponent_box(&cat, 2) {
            for h in exponent_box(&cat, 2) {
                assert!(s.eval(&g, &h).is_integer(), "non-integer at {g:?}, {h:?}");
            }
        }
        let n5 = make_nilpotent5();
        let s = sigma_nilpotent5();
        for g in exponent_box(&n5, 1) {
            for h in exponent_box(&n5, 1) {
                assert!(s.eval(&g, &h).is_integer());
            }
        }
    }

    #[test]
    fn chain_json_round_trip() {
        let z2 = make_z2();
        let a = el(&z2, &[1, 0]);
        let b = el(&z2, &[0, 1]);
        let c = commutator_chain(&a, &b);
        let v = chain2_to_json(&c);
        let back = chain2_from_json(&z2, &v).unwrap();
        assert_eq!(c, back);
        assert!(chain2_from_json(&z2, &json!({"not": "a chain"})).is_err());
    }

    proptest! {
        #[test]
        fn d2_after_d3_vanishes(
            a in proptest::collection::vec(-2i64..=2, 5),
            b in proptest::collection::vec(-2i64..=2, 5),
            c in proptest::collection::vec(-2i64..=2, 5),
            x in -3i64..=3,
        ) {
            let n5 = make_nilpotent5();
            let mut d = Chain3::zero(&n5);
            d.add_term((el(&n5, &a), el(&n5, &b), el(&n5, &c)), x);
            prop_assert!(boundary2(&boundary3(&d)).is_zero());
        }

        #[test]
        fn coboundaries_are_cocycles_pointwise(
            coeffs in proptest::collection::vec(-3i64..=3, 4),
            g1 in proptest::collection::vec(-3i64..=3, 2),
            g2 in proptest::collection::vec(-3i64..=3, 2),
            g3 in proptest::collection::vec(-3i64..=3, 2),
        ) {
            let z2 = make_z2();
            let alpha = Cochain1::new("poly", move |g| {
                let x = g.exponents();
                rat_int(coeffs[0]*x[0] + coeffs[1]*x[1] + coeffs[2]*x[0]*x[0] + coeffs[3]*x[0]*x[1])
            });
            let d2 = coboundary2(&coboundary1(&alpha));
            prop_assert!(d2(&el(&z2, &g1), &el(&z2, &g2), &el(&z2, &g3)).is_zero());
        }

        #[test]
        fn coboundaries_pair_to_zero_on_cycles(
            coeffs in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let z2 = make_z2();
            let a = el(&z2, &[1, 0]);
            let b = el(&z2, &[0, 1]);
            let alpha = Cochain1::new("poly", move |g| {
                let x = g.exponents();
                rat_int(coeffs[0]*x[0]*x[1] + coeffs[1]*x[1]*x[1] + coeffs[2]*x[0])
            });
            let dalpha = coboundary1(&alpha);
            let hopf = hopf_cycle(&z2, &[(a.clone(), b.clone())]).unwrap();
            prop_assert!(pair(&dalpha, &hopf).is_zero());
            prop_assert!(pair(&dalpha, &commutator_chain(&a, &b)).is_zero());
        }

        #[test]
        fn cocycles_kill_boundaries(
            a in proptest::collection::vec(-2i64..=2, 3),
            b in proptest::collection::vec(-2i64..=2, 3),
            c in proptest::collection::vec(-2i64..=2, 3),
            x in -3i64..=3,
        ) {
            let cat = make_catmap();
            let mut d = Chain3::zero(&cat);
            d.add_term((el(&cat, &a), el(&cat, &b), el(&cat, &c)), x);
            prop_assert!(pair(&sigma_catmap(), &boundary3(&d)).is_zero());
        }
    }
}
