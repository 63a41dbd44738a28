//! The group `Z_n^d`: elements, cyclic and general subgroups, orthogonal groups,
//! the "generates the same cyclic subgroup" equivalence, derived sets and the
//! reduction maps between moduli.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_power_of, is_prime, rem_euclid, smallest_prime_factor};
use crate::error::{Error, Result};

/// Default cap on the number of group elements a whole-group scan may visit.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

/// The ambient group `Z_n^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupContext {
    n: u64,
    d: usize,
    bound: u64,
}

/// An element of `Z_n^d` with every coordinate in `[0, n)`.
///
/// The derived `Ord` is lexicographic on coordinates, which is the iteration
/// order used everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl GroupContext {
    pub fn new(n: u64, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("modulus n must be at least 1".into()));
        }
        if d == 0 {
            return Err(Error::InvalidGroup("dimension d must be at least 1".into()));
        }
        Ok(GroupContext {
            n,
            d,
            bound: DEFAULT_ENUMERATION_BOUND,
        })
    }

    /// Replaces the enumeration bound used by whole-group scans.
    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `n^d`, exactly.
    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.n).pow(self.d as u32)
    }

    /// `n^d` as a machine integer, or an error when it exceeds the enumeration bound.
    pub fn size(&self) -> Result<usize> {
        let order = self.group_order();
        match order.to_u64() {
            Some(s) if s <= self.bound => Ok(s as usize),
            _ => Err(Error::EnumerationBound {
                order,
                bound: self.bound,
            }),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.d])
    }

    /// Builds an element from arbitrary integers, reducing each coordinate mod `n`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_dim(coords.len())?;
        Ok(GroupElement(
            coords.iter().map(|&c| rem_euclid(c, self.n)).collect(),
        ))
    }

    /// Builds an element from coordinates that must already lie in `[0, n)`.
    pub fn canonical(&self, coords: Vec<u64>) -> Result<GroupElement> {
        self.check_dim(coords.len())?;
        if let Some(&c) = coords.iter().find(|&&c| c >= self.n) {
            return Err(Error::Precondition(format!(
                "coordinate {c} outside [0, {})",
                self.n
            )));
        }
        Ok(GroupElement(coords))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.d && x.0.iter().all(|&c| c < self.n)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found,
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| ((a as u128 + b as u128) % self.n as u128) as u64)
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| ((a as u128 + (self.n - b) as u128) % self.n as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().map(|&a| (self.n - a) % self.n).collect())
    }

    pub fn scale(&self, x: &GroupElement, k: u64) -> GroupElement {
        let k = (k % self.n) as u128;
        GroupElement(
            x.0.iter()
                .map(|&a| (a as u128 * k % self.n as u128) as u64)
                .collect(),
        )
    }

    /// `<x, y> mod n`.
    pub fn inner(&self, x: &GroupElement, y: &GroupElement) -> u64 {
        let n = self.n as u128;
        (x.0.iter()
            .zip(&y.0)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % n)) as u64
    }

    /// Position of `x` in lexicographic order.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter()
            .fold(0usize, |acc, &c| acc * self.n as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0u64; self.d];
        for slot in coords.iter_mut().rev() {
            *slot = (index % self.n as usize) as u64;
            index /= self.n as usize;
        }
        GroupElement(coords)
    }

    /// Every element, in lexicographic order. Fails if `n^d` exceeds the bound.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let size = self.size()?;
        Ok((0..size).map(move |i| self.element_at(i)))
    }

    /// The same dimension and bound with a different modulus.
    pub fn with_modulus(&self, n: u64) -> Result<GroupContext> {
        Ok(GroupContext::new(n, self.d)?.with_bound(self.bound))
    }
}

/// `n = p^k · m` with `p` prime, `k >= 1` and `gcd(p, m) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerSplit {
    pub p: u64,
    pub k: u32,
    pub m: u64,
}

impl PrimePowerSplit {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || n % p != 0 {
            return Err(Error::PrimeNotDividing { p, n });
        }
        let (mut k, mut m) = (0, n);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        Ok(PrimePowerSplit { p, k, m })
    }

    /// `p^k`.
    pub fn prime_power(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> u64 {
        self.prime_power() * self.m
    }
}

/// A subgroup given by generators together with its sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDesc {
    pub generators: Vec<GroupElement>,
    pub members: Vec<GroupElement>,
}

impl SubgroupDesc {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

/// An equivalence class of elements generating the same cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicClass {
    /// Lexicographically smallest member.
    pub canonical: GroupElement,
    pub order: u64,
    pub members: Vec<GroupElement>,
}

/// Least `t > 0` with `t·x = 0`, i.e. `n / gcd(n, x_1, …, x_d)`.
pub fn elem_order(ctx: &GroupContext, x: &GroupElement) -> u64 {
    let g = x.coords().iter().fold(ctx.modulus(), |g, &c| gcd(g, c));
    ctx.modulus() / g
}

/// `{0, x, 2x, …}`, sorted, with `x` as the single generator.
pub fn cyclic_span(ctx: &GroupContext, x: &GroupElement) -> SubgroupDesc {
    let ord = elem_order(ctx, x);
    let mut members: Vec<GroupElement> = (0..ord).map(|j| ctx.scale(x, j)).collect();
    members.sort();
    SubgroupDesc {
        generators: vec![x.clone()],
        members,
    }
}

/// `H + <g>` for a subgroup `H` given by its members.
fn extend_span(ctx: &GroupContext, members: &[GroupElement], g: &GroupElement) -> Vec<GroupElement> {
    let ord = elem_order(ctx, g);
    let mut seen: HashSet<GroupElement> = members.iter().cloned().collect();
    let mut out = members.to_vec();
    let mut shift = g.clone();
    for _ in 1..ord {
        if seen.contains(&shift) {
            // Every later multiple already lies in H + (earlier multiples).
            break;
        }
        for h in members {
            let y = ctx.add(h, &shift);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        shift = ctx.add(&shift, g);
    }
    out.sort();
    out
}

/// The subgroup generated by `gens`, built as a sum of cyclic subgroups.
pub fn subgroup_span(ctx: &GroupContext, gens: &[GroupElement]) -> Result<SubgroupDesc> {
    ctx.size()?;
    let mut members = vec![ctx.zero()];
    for g in gens {
        if members.binary_search(g).is_err() {
            members = extend_span(ctx, &members, g);
        }
    }
    Ok(SubgroupDesc {
        generators: gens.to_vec(),
        members,
    })
}

/// Greedy generating set for a sorted member list that is known to be a subgroup.
fn greedy_generators(ctx: &GroupContext, members: &[GroupElement]) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let mut span = vec![ctx.zero()];
    for x in members {
        if span.binary_search(x).is_err() {
            span = extend_span(ctx, &span, x);
            gens.push(x.clone());
        }
        if span.len() == members.len() {
            break;
        }
    }
    gens
}

/// `H⊥ = {x : <x, h> ≡ 0 (mod n) for all h ∈ H}`, tested against the generators of `H`.
pub fn orthogonal_group(ctx: &GroupContext, h: &SubgroupDesc) -> Result<SubgroupDesc> {
    let members: Vec<GroupElement> = ctx
        .elements()?
        .filter(|x| h.generators.iter().all(|g| ctx.inner(x, g) == 0))
        .collect();
    let generators = greedy_generators(ctx, &members);
    Ok(SubgroupDesc {
        generators,
        members,
    })
}

/// All classes of the equivalence "generates the same cyclic subgroup", sorted by
/// `(order, canonical)`.
pub fn equivalence_classes(ctx: &GroupContext) -> Result<Vec<CyclicClass>> {
    classes_where(ctx, |_| true)
}

/// Equivalence classes whose order satisfies `keep`, sorted by `(order, canonical)`.
///
/// Each class is read off the cyclic span of its first (smallest) member: the
/// class consists of the span's elements of full order.
pub fn classes_where(
    ctx: &GroupContext,
    keep: impl Fn(u64) -> bool,
) -> Result<Vec<CyclicClass>> {
    let size = ctx.size()?;
    let mut seen = vec![false; size];
    let mut classes = Vec::new();
    for idx in 0..size {
        if seen[idx] {
            continue;
        }
        let x = ctx.element_at(idx);
        let ord = elem_order(ctx, &x);
        if !keep(ord) {
            seen[idx] = true;
            continue;
        }
        let span = cyclic_span(ctx, &x);
        let members: Vec<GroupElement> = span
            .members
            .into_iter()
            .filter(|y| elem_order(ctx, y) == ord)
            .collect();
        for y in &members {
            seen[ctx.index_of(y)] = true;
        }
        classes.push(CyclicClass {
            canonical: members[0].clone(),
            order: ord,
            members,
        });
    }
    classes.sort_by(|a, b| (a.order, &a.canonical).cmp(&(b.order, &b.canonical)));
    Ok(classes)
}

/// `{0, h, 2h, …, (p−1)h}` for the canonical member `h` of `class`.
///
/// `p` must be the smallest prime divisor of the class order.
pub fn derived_set(ctx: &GroupContext, class: &CyclicClass, p: u64) -> Result<Vec<GroupElement>> {
    if class.order <= 1 {
        return Err(Error::Precondition("derived set of the trivial class".into()));
    }
    if smallest_prime_factor(class.order) != Some(p) {
        return Err(Error::Precondition(format!(
            "{p} is not the smallest prime divisor of the class order {}",
            class.order
        )));
    }
    let mut out: Vec<GroupElement> = (0..p).map(|j| ctx.scale(&class.canonical, j)).collect();
    out.sort();
    Ok(out)
}

/// Coordinatewise reduction of an integer vector into `Z_target^d`.
pub fn project_int(x: &[i64], target: u64) -> GroupElement {
    GroupElement(x.iter().map(|&c| rem_euclid(c, target)).collect())
}

/// Reduction `Z_n^d → Z_target^d`; requires `target | n`.
pub fn project(ctx: &GroupContext, x: &GroupElement, target: u64) -> Result<GroupElement> {
    if target == 0 || ctx.modulus() % target != 0 {
        return Err(Error::InvalidModulus {
            modulus: ctx.modulus(),
            target,
        });
    }
    Ok(GroupElement(x.coords().iter().map(|&c| c % target).collect()))
}

/// `x' ↦ m·x'`, embedding `Z_{p^k}^d` into `Z_n^d` with order preserved.
pub fn lift_p_power(split: &PrimePowerSplit, x: &GroupElement) -> GroupElement {
    let n = split.modulus();
    GroupElement(
        x.coords()
            .iter()
            .map(|&c| ((c as u128 * split.m as u128) % n as u128) as u64)
            .collect(),
    )
}

/// `ΔS = {s − s' : s ≠ s'}`, sorted and deduplicated.
pub fn difference_set(ctx: &GroupContext, s: &[GroupElement]) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            if i != j {
                out.push(ctx.sub(a, b));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every subgroup of the group, sorted by member list.
///
/// Grows the family by adjoining single elements until it stops changing, so
/// non-cyclic subgroups are reached through their cyclic pieces.
pub fn enumerate_subgroups(ctx: &GroupContext) -> Result<Vec<SubgroupDesc>> {
    let all: Vec<GroupElement> = ctx.elements()?.collect();
    let trivial = SubgroupDesc {
        generators: Vec::new(),
        members: vec![ctx.zero()],
    };
    let mut found: BTreeMap<Vec<GroupElement>, SubgroupDesc> = BTreeMap::new();
    found.insert(trivial.members.clone(), trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in &all {
            if h.contains(g) {
                continue;
            }
            let members = extend_span(ctx, &h.members, g);
            if !found.contains_key(&members) {
                let mut generators = h.generators.clone();
                generators.push(g.clone());
                let desc = SubgroupDesc {
                    generators,
                    members: members.clone(),
                };
                found.insert(members, desc.clone());
                frontier.push(desc);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// True when every element of the class has order a power of `p` (with exponent ≥ 1).
pub fn is_p_power_order(order: u64, p: u64) -> bool {
    is_power_of(order, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, d: usize) -> GroupContext {
        GroupContext::new(n, d).unwrap()
    }

    fn el(ctx: &GroupContext, c: &[i64]) -> GroupElement {
        ctx.element(c).unwrap()
    }

    fn els(ctx: &GroupContext, cs: &[&[i64]]) -> Vec<GroupElement> {
        cs.iter().map(|c| el(ctx, c)).collect()
    }

    fn brute_order(ctx: &GroupContext, x: &GroupElement) -> u64 {
        (1..=ctx.modulus())
            .find(|&t| ctx.scale(x, t).is_zero())
            .unwrap()
    }

    #[test]
    fn rejects_degenerate_groups() {
        assert!(GroupContext::new(0, 1).is_err());
        assert!(GroupContext::new(3, 0).is_err());
        let ctx = z(10, 8).with_bound(1000);
        assert!(matches!(ctx.size(), Err(Error::EnumerationBound { .. })));
        assert_eq!(ctx.group_order(), BigUint::from(10u64).pow(8));
    }

    #[test]
    fn element_order_examples() {
        let g = z(6, 2);
        assert_eq!(elem_order(&g, &el(&g, &[0, 0])), 1);
        assert_eq!(elem_order(&g, &el(&g, &[2, 3])), 6);
        assert_eq!(brute_order(&g, &el(&g, &[2, 3])), 6);
        let c = z(6, 1);
        assert_eq!(elem_order(&c, &el(&c, &[3])), 2);
    }

    #[test]
    fn element_order_matches_brute_force() {
        for (n, d) in [(6, 2), (4, 2), (12, 1), (5, 2), (36, 2), (6, 4)] {
            let ctx = z(n, d);
            assert!(ctx.size().unwrap() <= 1296);
            for x in ctx.elements().unwrap() {
                assert_eq!(elem_order(&ctx, &x), brute_order(&ctx, &x));
            }
        }
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let ctx = z(5, 3);
        let all: Vec<_> = ctx.elements().unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(ctx.index_of(x), i);
        }
    }

    #[test]
    fn cyclic_span_examples() {
        let g = z(4, 1);
        assert_eq!(cyclic_span(&g, &el(&g, &[2])).members, els(&g, &[&[0], &[2]]));
        let g = z(3, 2);
        assert_eq!(
            cyclic_span(&g, &el(&g, &[1, 1])).members,
            els(&g, &[&[0, 0], &[1, 1], &[2, 2]])
        );
        let g = z(6, 1);
        assert_eq!(cyclic_span(&g, &el(&g, &[1])).order(), 6);
    }

    #[test]
    fn subgroup_span_examples() {
        let g = z(4, 2);
        let h = subgroup_span(&g, &els(&g, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(h.members, els(&g, &[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]));
        assert_eq!(subgroup_span(&g, &[]).unwrap().members, vec![g.zero()]);
        let g = z(3, 2);
        let h = subgroup_span(&g, &els(&g, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(h.order(), 9);
    }

    #[test]
    fn orthogonal_group_examples() {
        let g = z(4, 1);
        let h = cyclic_span(&g, &el(&g, &[2]));
        assert_eq!(orthogonal_group(&g, &h).unwrap().members, els(&g, &[&[0], &[2]]));
        let trivial = subgroup_span(&g, &[]).unwrap();
        assert_eq!(orthogonal_group(&g, &trivial).unwrap().order(), 4);
        let g = z(3, 2);
        let h = cyclic_span(&g, &el(&g, &[1, 1]));
        assert_eq!(
            orthogonal_group(&g, &h).unwrap().members,
            els(&g, &[&[0, 0], &[1, 2], &[2, 1]])
        );
    }

    #[test]
    fn orthogonal_group_is_an_involution() {
        for (n, d) in [(6, 2), (4, 2), (8, 1)] {
            let ctx = z(n, d);
            for h in enumerate_subgroups(&ctx).unwrap() {
                let perp = orthogonal_group(&ctx, &h).unwrap();
                // |H|·|H⊥| = n^d in Z_n^d.
                assert_eq!(h.order() * perp.order(), ctx.size().unwrap());
                let back = orthogonal_group(&ctx, &perp).unwrap();
                assert_eq!(back.members, h.members);
            }
        }
    }

    #[test]
    fn enumerated_subgroups_are_closed() {
        let ctx = z(4, 2);
        let subs = enumerate_subgroups(&ctx).unwrap();
        // Z_4^2 has 15 subgroups.
        assert_eq!(subs.len(), 15);
        for h in &subs {
            assert!(h.contains(&ctx.zero()));
            for a in &h.members {
                assert!(h.contains(&ctx.neg(a)));
                for b in &h.members {
                    assert!(h.contains(&ctx.add(a, b)));
                }
            }
        }
    }

    #[test]
    fn class_examples() {
        let g = z(4, 1);
        let classes = equivalence_classes(&g).unwrap();
        let shape: Vec<(u64, Vec<GroupElement>)> =
            classes.iter().map(|c| (c.order, c.members.clone())).collect();
        assert_eq!(
            shape,
            vec![
                (1, els(&g, &[&[0]])),
                (2, els(&g, &[&[2]])),
                (4, els(&g, &[&[1], &[3]])),
            ]
        );
        let g = z(2, 1);
        assert_eq!(equivalence_classes(&g).unwrap().len(), 2);
        let g = z(3, 2);
        let classes = equivalence_classes(&g).unwrap();
        assert_eq!(classes.len(), 5);
        assert!(classes[1..].iter().all(|c| c.order == 3 && c.members.len() == 2));
    }

    #[test]
    fn classes_partition_the_group() {
        for (n, d) in [(12, 1), (6, 2), (4, 2), (9, 2), (2, 3)] {
            let ctx = z(n, d);
            let classes = equivalence_classes(&ctx).unwrap();
            let total: usize = classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, ctx.size().unwrap());
            let mut all: Vec<_> = classes.iter().flat_map(|c| c.members.clone()).collect();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), total);
            for c in &classes {
                assert_eq!(c.members.len() as u64, crate::arith::totient(c.order));
                assert_eq!(c.canonical, c.members[0]);
                let span = cyclic_span(&ctx, &c.canonical).members;
                for y in &c.members {
                    assert_eq!(cyclic_span(&ctx, y).members, span);
                }
            }
        }
    }

    #[test]
    fn derived_set_examples() {
        let g = z(4, 1);
        let classes = equivalence_classes(&g).unwrap();
        let e = &classes[2];
        let ds = derived_set(&g, e, 2).unwrap();
        assert_eq!(ds, els(&g, &[&[0], &[1]]));
        assert_eq!(difference_set(&g, &ds), e.members);

        let g = z(9, 1);
        let e = equivalence_classes(&g).unwrap().pop().unwrap();
        assert_eq!(e.order, 9);
        let ds = derived_set(&g, &e, 3).unwrap();
        assert_eq!(ds, els(&g, &[&[0], &[1], &[2]]));
        let delta = difference_set(&g, &ds);
        assert_eq!(delta, els(&g, &[&[1], &[2], &[7], &[8]]));
        assert!(delta.iter().all(|x| e.members.contains(x)));

        let g = z(2, 1);
        let e = &equivalence_classes(&g).unwrap()[1];
        assert_eq!(derived_set(&g, e, 2).unwrap(), els(&g, &[&[0], &[1]]));
    }

    #[test]
    fn derived_set_rejects_wrong_prime() {
        let g = z(6, 1);
        let e = equivalence_classes(&g).unwrap().pop().unwrap();
        assert_eq!(e.order, 6);
        assert!(derived_set(&g, &e, 3).is_err());
        assert!(derived_set(&g, &equivalence_classes(&g).unwrap()[0], 2).is_err());
    }

    #[test]
    fn derived_sets_of_every_class() {
        for (n, d) in [(12, 1), (6, 2), (9, 2), (15, 1)] {
            let ctx = z(n, d);
            for class in equivalence_classes(&ctx).unwrap().iter().skip(1) {
                let p = smallest_prime_factor(class.order).unwrap();
                let ds = derived_set(&ctx, class, p).unwrap();
                assert_eq!(ds.len() as u64, p);
                assert!(ds.iter().all(|x| x.is_zero() || class.members.contains(x)));
                assert!(difference_set(&ctx, &ds)
                    .iter()
                    .all(|x| class.members.contains(x)));
            }
        }
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_int(&[5, -1], 3).coords(), &[2, 2]);
        let g = z(12, 1);
        assert_eq!(project(&g, &el(&g, &[7]), 4).unwrap().coords(), &[3]);
        assert!(matches!(
            project(&g, &el(&g, &[7]), 5),
            Err(Error::InvalidModulus { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let split = PrimePowerSplit::new(6, 3).unwrap();
        assert_eq!((split.k, split.m), (1, 2));
        let small = z(3, 1);
        let big = z(6, 1);
        let y = lift_p_power(&split, &el(&small, &[1]));
        assert_eq!(y.coords(), &[2]);
        assert_eq!(brute_order(&big, &y), 3);
        assert!(lift_p_power(&split, &small.zero()).is_zero());

        let split = PrimePowerSplit::new(12, 2).unwrap();
        assert_eq!((split.k, split.m), (2, 3));
        let y = lift_p_power(&split, &el(&z(4, 1), &[2]));
        assert_eq!(y.coords(), &[6]);
        assert_eq!(brute_order(&z(12, 1), &y), 2);
    }

    #[test]
    fn lift_preserves_order_exhaustively() {
        for n in [6u64, 12] {
            for p in crate::arith::factorize(n).into_iter().map(|(p, _)| p) {
                let split = PrimePowerSplit::new(n, p).unwrap();
                for d in 1..=2 {
                    let small = z(split.prime_power(), d);
                    let big = z(n, d);
                    for x in small.elements().unwrap() {
                        let y = lift_p_power(&split, &x);
                        assert_eq!(elem_order(&small, &x), brute_order(&big, &y));
                    }
                }
            }
        }
    }

    #[test]
    fn split_validation() {
        assert!(matches!(PrimePowerSplit::new(12, 4), Err(Error::NotPrime(4))));
        assert!(matches!(
            PrimePowerSplit::new(12, 5),
            Err(Error::PrimeNotDividing { .. })
        ));
        let s = PrimePowerSplit::new(72, 2).unwrap();
        assert_eq!((s.p, s.k, s.m, s.prime_power()), (2, 3, 9, 8));
    }

    #[test]
    fn difference_set_examples() {
        let g = z(4, 1);
        assert_eq!(difference_set(&g, &els(&g, &[&[0], &[1]])), els(&g, &[&[1], &[3]]));
        let g = z(3, 2);
        assert_eq!(
            difference_set(&g, &els(&g, &[&[0, 0], &[1, 1], &[2, 2]])),
            els(&g, &[&[1, 1], &[2, 2]])
        );
        assert!(difference_set(&g, &els(&g, &[&[1, 2]])).is_empty());
    }
}
