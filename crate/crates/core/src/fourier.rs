//! Exact Fourier analysis of integer masks on `Z_n^d`.
//!
//! For a multiset `A` and frequency `x`, the coefficient
//! `Σ_a mul(a)·e^{2πi<a,x>/n}` is `P(ω_n)` where the pairing polynomial `P`
//! buckets multiplicities by `<a,x> mod n`. All zero tests reduce `P` modulo
//! `Φ_n`; floating evaluation is provided only as a diagnostic.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::cyclotomic::reduce_mod_cyclotomic;
use crate::error::{Error, Result};
use crate::group::{
    elem_order, orthogonal_group, project_int, CyclicClass, GroupContext, GroupElement,
    PrimePowerSplit, SubgroupDesc,
};

/// A finite multiset of group elements with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMultiset {
    ctx: GroupContext,
    entries: BTreeMap<GroupElement, u64>,
    total: u64,
}

impl PointMultiset {
    pub fn empty(ctx: &GroupContext) -> Self {
        PointMultiset {
            ctx: ctx.clone(),
            entries: BTreeMap::new(),
            total: 0,
        }
    }

    /// Counts repeated elements as multiplicities.
    pub fn from_elements<I>(ctx: &GroupContext, elems: I) -> Self
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut out = Self::empty(ctx);
        for x in elems {
            out.insert(x, 1);
        }
        out
    }

    /// A plain set; repeated elements are rejected.
    pub fn from_set<I>(ctx: &GroupContext, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut out = Self::empty(ctx);
        for x in elems {
            if out.entries.contains_key(&x) {
                return Err(Error::Precondition(format!("duplicate element {x} in a set")));
            }
            out.insert(x, 1);
        }
        Ok(out)
    }

    /// Reduces integer points mod `n`; the flag is true when no two points collide.
    pub fn from_int_points(ctx: &GroupContext, points: &[Vec<i64>]) -> Result<(Self, bool)> {
        let mut out = Self::empty(ctx);
        for p in points {
            if p.len() != ctx.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.dim(),
                    found: p.len(),
                });
            }
            out.insert(project_int(p, ctx.modulus()), 1);
        }
        let injective = out.is_set();
        Ok((out, injective))
    }

    pub fn insert(&mut self, x: GroupElement, mult: u64) {
        assert!(self.ctx.contains(&x), "element {x} not canonical in Z_{}^{}", self.ctx.modulus(), self.ctx.dim());
        if mult == 0 {
            return;
        }
        *self.entries.entry(x).or_insert(0) += mult;
        self.total += mult;
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    /// `Σ mul(a)`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn multiplicity(&self, x: &GroupElement) -> u64 {
        self.entries.get(x).copied().unwrap_or(0)
    }

    /// Distinct elements in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> {
        self.entries.iter().map(|(x, &m)| (x, m))
    }

    pub fn to_vec(&self) -> Vec<GroupElement> {
        self.entries.keys().cloned().collect()
    }

    pub fn translate(&self, t: &GroupElement) -> Self {
        let mut out = Self::empty(&self.ctx);
        for (x, m) in self.iter() {
            out.insert(self.ctx.add(x, t), m);
        }
        out
    }

    /// Coordinatewise reduction into `Z_target^d` (`target | n`), keeping multiplicities.
    pub fn project(&self, target: u64) -> Result<Self> {
        let tctx = self.ctx.with_modulus(target)?;
        let mut out = Self::empty(&tctx);
        for (x, m) in self.iter() {
            out.insert(crate::group::project(&self.ctx, x, target)?, m);
        }
        Ok(out)
    }
}

/// An integer-valued function on `Z_n^d`, stored by its nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFunction {
    ctx: GroupContext,
    values: BTreeMap<GroupElement, i64>,
}

impl SignedFunction {
    pub fn new(ctx: &GroupContext) -> Self {
        SignedFunction {
            ctx: ctx.clone(),
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, x: GroupElement, v: i64) {
        assert!(self.ctx.contains(&x));
        if v == 0 {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    pub fn get(&self, x: &GroupElement) -> i64 {
        self.values.get(x).copied().unwrap_or(0)
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `1_A − c·1_G`.
    pub fn mask_minus_constant(a: &PointMultiset, c: i64) -> Result<Self> {
        let mut f = SignedFunction::new(a.ctx());
        for x in a.ctx().elements()? {
            let v = a.multiplicity(&x) as i64 - c;
            f.set(x, v);
        }
        Ok(f)
    }
}

impl From<&PointMultiset> for SignedFunction {
    fn from(a: &PointMultiset) -> Self {
        SignedFunction {
            ctx: a.ctx.clone(),
            values: a.iter().map(|(x, m)| (x.clone(), m as i64)).collect(),
        }
    }
}

/// Anything with integer weights on group elements.
pub trait Mask {
    fn ctx(&self) -> &GroupContext;
    fn weights(&self) -> Box<dyn Iterator<Item = (&GroupElement, i64)> + '_>;
}

impl Mask for PointMultiset {
    fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    fn weights(&self) -> Box<dyn Iterator<Item = (&GroupElement, i64)> + '_> {
        Box::new(self.entries.iter().map(|(x, &m)| (x, m as i64)))
    }
}

impl Mask for SignedFunction {
    fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    fn weights(&self) -> Box<dyn Iterator<Item = (&GroupElement, i64)> + '_> {
        Box::new(self.values.iter().map(|(x, &v)| (x, v)))
    }
}

/// Coefficients `c_j = Σ {weight(a) : <a,x> ≡ j mod n}`, `j = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingPolynomial {
    pub coeffs: Vec<i64>,
}

impl PairingPolynomial {
    /// Floating evaluation at `e^{2πi/n}`.
    pub fn eval_float(&self) -> Complex64 {
        let n = self.coeffs.len() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, 2.0 * PI * j as f64 / n))
            .sum()
    }

    /// `P mod Φ_n`.
    pub fn reduced(&self) -> Vec<BigInt> {
        reduce_mod_cyclotomic(&self.coeffs, self.coeffs.len() as u64)
    }

    pub fn vanishes(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }
}

pub fn pairing_poly<M: Mask + ?Sized>(a: &M, x: &GroupElement) -> PairingPolynomial {
    let ctx = a.ctx();
    let mut coeffs = vec![0i64; ctx.modulus() as usize];
    for (y, w) in a.weights() {
        coeffs[ctx.inner(y, x) as usize] += w;
    }
    PairingPolynomial { coeffs }
}

/// Exact test for `1̂_A(x) = 0`.
pub fn ft_is_zero<M: Mask + ?Sized>(a: &M, x: &GroupElement) -> bool {
    pairing_poly(a, x).vanishes()
}

/// Floating evaluation of the Fourier sum. Advisory only; never used as ground truth.
pub fn ft_value_float<M: Mask + ?Sized>(a: &M, x: &GroupElement) -> Complex64 {
    pairing_poly(a, x).eval_float()
}

/// `Z(1̂_A)`, sorted.
pub fn zero_set<M: Mask + ?Sized>(a: &M) -> Result<Vec<GroupElement>> {
    Ok(a.ctx().elements()?.filter(|x| ft_is_zero(a, x)).collect())
}

/// `supp(f̂)`, sorted.
pub fn fourier_support<M: Mask + ?Sized>(a: &M) -> Result<Vec<GroupElement>> {
    Ok(a.ctx().elements()?.filter(|x| !ft_is_zero(a, x)).collect())
}

/// Whether `1̂_A` vanishes on the whole class, decided at the canonical member.
///
/// With `verify` set every member is tested too, and a disagreement is reported
/// as an internal inconsistency.
pub fn class_annihilated<M: Mask + ?Sized>(a: &M, class: &CyclicClass, verify: bool) -> Result<bool> {
    let at_canonical = ft_is_zero(a, &class.canonical);
    if verify {
        if let Some(y) = class.members.iter().find(|y| ft_is_zero(a, y) != at_canonical) {
            return Err(Error::InternalInconsistency(format!(
                "zero status at {y} differs from canonical member {}",
                class.canonical
            )));
        }
    }
    Ok(at_canonical)
}

/// Checks `1̂_H = |H|·1_{H⊥}` exactly at every frequency.
pub fn poisson_check(ctx: &GroupContext, h: &SubgroupDesc) -> Result<bool> {
    let mask = PointMultiset::from_set(ctx, h.members.iter().cloned())?;
    let perp = orthogonal_group(ctx, h)?;
    let order = h.order() as i64;
    for x in ctx.elements()? {
        let mut poly = pairing_poly(&mask, &x);
        if perp.contains(&x) {
            poly.coeffs[0] -= order;
        }
        if !poly.vanishes() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|supp f| · |supp f̂|` for a nonzero integer-valued `f`.
pub fn uncertainty_product(f: &SignedFunction) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let spectral = fourier_support(f)?.len() as u64;
    Ok(f.support_size() as u64 * spectral)
}

/// Outcome of testing whether a mask annihilating every nonzero frequency is flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalVerdict {
    /// Some nonzero frequency is not annihilated.
    PremiseFails { witness: GroupElement },
    /// Every nonzero frequency is annihilated and every element has this multiplicity.
    Constant { multiplicity: u64 },
}

/// If `1̂_A` vanishes on `Z_n^d ∖ {0}` then `1_A` must be a constant multiple of
/// `1_{Z_n^d}`; anything else is reported as an arithmetic inconsistency.
pub fn check_annihilating_is_flat(a: &PointMultiset) -> Result<MinimalVerdict> {
    if a.is_empty() {
        return Err(Error::Precondition("empty multiset".into()));
    }
    let ctx = a.ctx();
    for x in ctx.elements()?.filter(|x| !x.is_zero()) {
        if !ft_is_zero(a, &x) {
            return Ok(MinimalVerdict::PremiseFails { witness: x });
        }
    }
    let m = a.multiplicity(&ctx.zero());
    if let Some(x) = ctx.elements()?.find(|x| a.multiplicity(x) != m) {
        return Err(Error::InternalInconsistency(format!(
            "all nonzero frequencies vanish but mul({x}) = {} ≠ {m}",
            a.multiplicity(&x)
        )));
    }
    Ok(MinimalVerdict::Constant { multiplicity: m })
}

/// Exact comparison of `1̂_A(x)` over `Z_n^d`, `f̂(x)` for `A' = π_{p^k}(A)` sitting
/// in `Z_n^d`, and `ĝ(x')` for `A'` in `Z_{p^k}^d`, where `x = m·x'` has order `p^t`, `t ≥ 1`.
///
/// `ĝ(x')` is `Q(ω_{p^k}) = Q(ω_n^m)`, so `Q(z^m)` is compared with the other two
/// pairing polynomials modulo `Φ_n`.
pub fn projection_identity_holds(a: &PointMultiset, split: &PrimePowerSplit, x: &GroupElement) -> Result<bool> {
    let ctx = a.ctx();
    let n = ctx.modulus();
    if split.modulus() != n {
        return Err(Error::Precondition(format!(
            "split p^k·m = {} does not match modulus {n}",
            split.modulus()
        )));
    }
    let ord = elem_order(ctx, x);
    if !crate::arith::is_power_of(ord, split.p) {
        return Err(Error::Precondition(format!(
            "order {ord} of {x} is not a positive power of {}",
            split.p
        )));
    }
    let pk = split.prime_power();
    let small = ctx.with_modulus(pk)?;
    // x has p-power order, so each coordinate is a multiple of m.
    let x_small = small.canonical(x.coords().iter().map(|&c| (c / split.m) % pk).collect())?;
    if crate::group::lift_p_power(split, &x_small) != *x {
        return Err(Error::InternalInconsistency(format!("{x} is not m·x' for x' = {x_small}")));
    }

    let projected = a.project(pk)?;
    let mut residues_in_big = PointMultiset::empty(ctx);
    for (r, m) in projected.iter() {
        residues_in_big.insert(ctx.canonical(r.coords().to_vec())?, m);
    }

    let full = pairing_poly(a, x);
    let f_hat = pairing_poly(&residues_in_big, x);
    let g_hat = pairing_poly(&projected, &x_small);
    let mut g_rescaled = vec![0i64; n as usize];
    for (j, &c) in g_hat.coeffs.iter().enumerate() {
        g_rescaled[(j as u64 * split.m % n) as usize] += c;
    }

    let diff = |p: &[i64], q: &[i64]| -> bool {
        let d: Vec<i64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
        reduce_mod_cyclotomic(&d, n).iter().all(Zero::is_zero)
    };
    let values_agree = diff(&full.coeffs, &f_hat.coeffs) && diff(&full.coeffs, &g_rescaled);
    let zero_status_agrees = full.vanishes() == g_hat.vanishes();
    Ok(values_agree && zero_status_agrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_span, equivalence_classes, subgroup_span};

    fn z(n: u64, d: usize) -> GroupContext {
        GroupContext::new(n, d).unwrap()
    }

    fn set(ctx: &GroupContext, pts: &[&[i64]]) -> PointMultiset {
        PointMultiset::from_set(ctx, pts.iter().map(|p| ctx.element(p).unwrap())).unwrap()
    }

    fn el(ctx: &GroupContext, c: &[i64]) -> GroupElement {
        ctx.element(c).unwrap()
    }

    #[test]
    fn pairing_poly_examples() {
        let g = z(3, 1);
        let a = set(&g, &[&[0], &[1], &[2]]);
        assert_eq!(pairing_poly(&a, &el(&g, &[1])).coeffs, vec![1, 1, 1]);
        let g = z(12, 1);
        let a = set(&g, &[&[0], &[3], &[4]]);
        let p = pairing_poly(&a, &el(&g, &[4])).coeffs;
        assert_eq!((p[0], p[4], p.iter().sum::<i64>()), (2, 1, 3));
        let p = pairing_poly(&a, &g.zero()).coeffs;
        assert_eq!(p[0], 3);
    }

    #[test]
    fn zero_test_examples() {
        let g = z(3, 1);
        let a = set(&g, &[&[0], &[1], &[2]]);
        assert!(ft_is_zero(&a, &el(&g, &[1])));
        assert!(!ft_is_zero(&a, &g.zero()));
        let g = z(12, 1);
        let a = set(&g, &[&[0], &[3], &[4]]);
        assert!(!ft_is_zero(&a, &el(&g, &[4])));
        assert!(ft_value_float(&a, &el(&g, &[4])).norm() > 1.0);
    }

    #[test]
    fn float_examples() {
        let g = z(2, 1);
        let v = ft_value_float(&set(&g, &[&[0], &[1]]), &el(&g, &[1]));
        assert!(v.norm() < 1e-12);
        let g = z(5, 2);
        let v = ft_value_float(&set(&g, &[&[0, 0]]), &el(&g, &[3, 4]));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let g = z(4, 1);
        let v = ft_value_float(&set(&g, &[&[0], &[1], &[2]]), &el(&g, &[1]));
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_set_examples() {
        let g = z(4, 1);
        assert_eq!(zero_set(&set(&g, &[&[0], &[2]])).unwrap(), vec![el(&g, &[1]), el(&g, &[3])]);
        for n in 1..=12 {
            let g = z(n, 1);
            let full = PointMultiset::from_set(&g, g.elements().unwrap()).unwrap();
            let nonzero: Vec<_> = g.elements().unwrap().skip(1).collect();
            assert_eq!(zero_set(&full).unwrap(), nonzero);
        }
        assert!(zero_set(&set(&g, &[&[0]])).unwrap().is_empty());
    }

    #[test]
    fn class_annihilation_examples() {
        let g = z(6, 1);
        let a = set(&g, &[&[0], &[1], &[5]]);
        let classes = equivalence_classes(&g).unwrap();
        let find = |c: i64| classes.iter().find(|e| e.members.contains(&el(&g, &[c]))).unwrap();
        assert!(class_annihilated(&a, find(2), true).unwrap());
        assert!(!class_annihilated(&a, find(3), true).unwrap());
        assert!(!class_annihilated(&a, find(0), true).unwrap());
    }

    #[test]
    fn poisson_examples() {
        let g = z(4, 1);
        assert!(poisson_check(&g, &cyclic_span(&g, &el(&g, &[2]))).unwrap());
        assert!(poisson_check(&g, &subgroup_span(&g, &[]).unwrap()).unwrap());
        let g = z(3, 2);
        let h = cyclic_span(&g, &el(&g, &[1, 1]));
        assert!(poisson_check(&g, &h).unwrap());
    }

    #[test]
    fn poisson_rejects_a_non_subgroup() {
        let g = z(4, 1);
        let fake = SubgroupDesc {
            generators: vec![el(&g, &[1])],
            members: vec![g.zero(), el(&g, &[1])],
        };
        assert!(!poisson_check(&g, &fake).unwrap());
    }

    #[test]
    fn uncertainty_examples() {
        let g = z(12, 1);
        let delta = SignedFunction::from(&set(&g, &[&[0]]));
        assert_eq!(uncertainty_product(&delta).unwrap(), 12);
        let flat = SignedFunction::from(&PointMultiset::from_set(&g, g.elements().unwrap()).unwrap());
        assert_eq!(uncertainty_product(&flat).unwrap(), 12);
        let g = z(4, 1);
        let f = SignedFunction::from(&set(&g, &[&[0], &[2]]));
        assert_eq!(uncertainty_product(&f).unwrap(), 4);
        assert_eq!(uncertainty_product(&SignedFunction::new(&g)), Err(Error::ZeroFunction));
    }

    #[test]
    fn lemma_minimal_examples() {
        let g = z(4, 1);
        let mut twice = PointMultiset::empty(&g);
        for x in g.elements().unwrap() {
            twice.insert(x, 2);
        }
        assert_eq!(check_annihilating_is_flat(&twice).unwrap(), MinimalVerdict::Constant { multiplicity: 2 });

        let g = z(2, 1);
        let a = PointMultiset::from_elements(&g, [g.zero(), g.zero(), el(&g, &[1])]);
        assert_eq!(
            check_annihilating_is_flat(&a).unwrap(),
            MinimalVerdict::PremiseFails { witness: el(&g, &[1]) }
        );

        let g = z(3, 2);
        let full = PointMultiset::from_set(&g, g.elements().unwrap()).unwrap();
        assert_eq!(check_annihilating_is_flat(&full).unwrap(), MinimalVerdict::Constant { multiplicity: 1 });
    }

    #[test]
    fn projection_identity_examples() {
        let g = z(6, 1);
        let split = PrimePowerSplit::new(6, 3).unwrap();
        let a = set(&g, &[&[0], &[1], &[5]]);
        assert!(projection_identity_holds(&a, &split, &el(&g, &[2])).unwrap());
        assert!(ft_is_zero(&a, &el(&g, &[2])));
        assert!(projection_identity_holds(&a, &split, &g.zero()).is_err());

        let g = z(12, 1);
        let split = PrimePowerSplit::new(12, 2).unwrap();
        let a = set(&g, &[&[0], &[1], &[2], &[3]]);
        assert!(projection_identity_holds(&a, &split, &el(&g, &[3])).unwrap());
        // Order 3 is not a power of 2.
        assert!(projection_identity_holds(&a, &split, &el(&g, &[4])).is_err());
    }

    #[test]
    fn projection_identity_detects_a_wrong_lift() {
        // Exponent rescaling by m is what makes the identity hold: comparing the raw
        // Z_{p^k} polynomial against Z_n evaluations would fail for this set.
        let g = z(12, 1);
        let a = set(&g, &[&[0], &[1], &[5]]);
        let x = el(&g, &[3]);
        let p = pairing_poly(&a, &x);
        let raw = {
            let small = z(4, 1);
            let mut q = vec![0i64; 12];
            for (j, c) in pairing_poly(&a.project(4).unwrap(), &el(&small, &[1])).coeffs.iter().enumerate() {
                q[j] += c;
            }
            q
        };
        let d: Vec<i64> = p.coeffs.iter().zip(&raw).map(|(a, b)| a - b).collect();
        assert!(!reduce_mod_cyclotomic(&d, 12).iter().all(Zero::is_zero));
        let split = PrimePowerSplit::new(12, 2).unwrap();
        assert!(projection_identity_holds(&a, &split, &x).unwrap());
    }

    #[test]
    fn multiset_basics() {
        let g = z(5, 1);
        assert!(PointMultiset::from_set(&g, [g.zero(), g.zero()]).is_err());
        let pts = vec![vec![1], vec![6], vec![-3]];
        let (m, injective) = PointMultiset::from_int_points(&g, &pts).unwrap();
        assert!(!injective);
        assert_eq!((m.total(), m.distinct(), m.multiplicity(&el(&g, &[1]))), (3, 2, 2));
        let t = m.translate(&el(&g, &[4]));
        assert_eq!(t.multiplicity(&g.zero()), 2);
    }
}
