//! Exact permutation-group engine.
//!
//! Groups are kept in two forms: a base and strong generating set (always
//! available, gives order and membership) and, when the order is below the
//! materialization cap, the full element list. Centralizers, normalizers,
//! stabilizers and fingerprints are computed by scanning materialized
//! elements; quotients are realized as the action on cosets.

mod bsgs;
mod named;
mod perm;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bsgs::Bsgs;
pub use named::{
    asl2_f3, cyclic, direct_product, named_group, orthogonal_f3_model, small_groups_up_to_12,
    symmetric, NamedGroup, OrthogonalAction,
};
pub use perm::{Permutation, MAX_DEGREE};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a bijection: {0:?}")]
    NotABijection(Vec<usize>),
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("group of order {order} exceeds materialization cap {cap}")]
    NotMaterialized { order: u128, cap: u64 },
    #[error("element is not central")]
    NotCentral,
    #[error("element does not have order 2")]
    NotAnInvolution,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not contained in the ambient group")]
    NotASubgroup,
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("multiplication table does not define a group: {0}")]
    InvalidTable(String),
}

#[derive(Debug)]
struct Elements {
    list: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl Elements {
    fn identity(degree: usize) -> Elements {
        let id = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        Elements {
            list: vec![id],
            index,
        }
    }

    fn insert(&mut self, p: Permutation) -> bool {
        if self.index.contains_key(&p) {
            return false;
        }
        self.index.insert(p.clone(), self.list.len() as u32);
        self.list.push(p);
        true
    }

    /// Extends the closed set to the closure under `gens`, where `fresh` are
    /// the generators not yet accounted for.
    fn close(&mut self, old_gens: &[Permutation], fresh: &[Permutation]) {
        let all: Vec<&Permutation> = old_gens.iter().chain(fresh.iter()).collect();
        let old_len = self.list.len();
        for k in 0..old_len {
            for g in fresh {
                let p = self.list[k].then(g);
                self.insert(p);
            }
        }
        let mut k = old_len;
        while k < self.list.len() {
            for g in &all {
                let p = self.list[k].then(g);
                self.insert(p);
            }
            k += 1;
        }
    }
}

/// A finitely generated permutation group of fixed degree.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: u128,
    bsgs: Arc<Bsgs>,
    elements: Option<Arc<Elements>>,
}

impl PermGroup {
    /// Generates the group with the default materialization cap.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        Self::generate(degree, generators, DEFAULT_CAP)
    }

    /// Generates the group; the element list is materialized when the order
    /// does not exceed `cap`.
    pub fn generate(
        degree: usize,
        generators: Vec<Permutation>,
        cap: u64,
    ) -> Result<PermGroup, GroupError> {
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let bsgs = Bsgs::new(degree, &generators);
        let order = bsgs.order();
        let elements = if order <= cap as u128 {
            let mut el = Elements::identity(degree);
            el.close(&[], &generators);
            debug_assert_eq!(el.list.len() as u128, order);
            Some(Arc::new(el))
        } else {
            None
        };
        Ok(PermGroup {
            degree,
            generators,
            order,
            bsgs: Arc::new(bsgs),
            elements,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    /// Builds the group generated by an arbitrary list, choosing a small
    /// generating subset greedily in list order.
    pub fn generated_by_all(
        degree: usize,
        perms: &[Permutation],
    ) -> Result<PermGroup, GroupError> {
        let mut el = Elements::identity(degree);
        let mut gens: Vec<Permutation> = Vec::new();
        for p in perms {
            if p.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
            if el.index.contains_key(p) {
                continue;
            }
            el.close(&gens, std::slice::from_ref(p));
            gens.push(p.clone());
        }
        let bsgs = Bsgs::new(degree, &gens);
        let order = bsgs.order();
        debug_assert_eq!(order, el.list.len() as u128);
        Ok(PermGroup {
            degree,
            generators: gens,
            order,
            bsgs: Arc::new(bsgs),
            elements: Some(Arc::new(el)),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.is_some()
    }

    pub fn elements(&self) -> Result<&[Permutation], GroupError> {
        self.elements
            .as_ref()
            .map(|e| e.list.as_slice())
            .ok_or(GroupError::NotMaterialized {
                order: self.order,
                cap: DEFAULT_CAP,
            })
    }

    /// Position of `g` in the materialized element list.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements
            .as_ref()
            .and_then(|e| e.index.get(g).map(|&i| i as usize))
    }

    pub fn bsgs(&self) -> &Bsgs {
        &self.bsgs
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match &self.elements {
            Some(e) => e.index.contains_key(g),
            None => self.bsgs.contains(g),
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Group generated by `self` together with extra elements.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(self.degree, gens)
    }

    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        Self::new(self.degree, gens)
    }

    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup, GroupError> {
        Self::new(
            self.degree,
            self.generators.iter().map(|h| h.conjugate_by(g)).collect(),
        )
    }

    fn filtered(&self, keep: impl Fn(&Permutation) -> bool) -> Result<PermGroup, GroupError> {
        let kept: Vec<Permutation> = self.elements()?.iter().filter(|g| keep(g)).cloned().collect();
        Self::generated_by_all(self.degree, &kept)
    }

    /// Elements mapping `subset` onto itself.
    pub fn set_stabilizer(&self, subset: &[usize]) -> Result<PermGroup, GroupError> {
        if let Some(&bad) = subset.iter().find(|&&p| p >= self.degree) {
            return Err(GroupError::PointOutOfRange(bad));
        }
        let mut set = subset.to_vec();
        set.sort_unstable();
        set.dedup();
        self.filtered(|g| g.image_of_set(&set) == set)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup, GroupError> {
        self.set_stabilizer(&[point])
    }

    /// Stabilizer of a family of sets (each set mapped to some set of the family).
    pub fn family_stabilizer(&self, family: &[Vec<usize>]) -> Result<PermGroup, GroupError> {
        let mut fam: Vec<Vec<usize>> = family
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s
            })
            .collect();
        fam.sort();
        self.filtered(|g| {
            let mut img: Vec<Vec<usize>> = fam.iter().map(|s| g.image_of_set(s)).collect();
            img.sort();
            img == fam
        })
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in &self.generators {
                let q = g.image(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    fn check_same_degree(&self, other: &PermGroup) -> Result<(), GroupError> {
        if self.degree != other.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    /// Centralizer of `sub` in `self`, by element scan.
    pub fn centralizer(&self, sub: &PermGroup) -> Result<PermGroup, GroupError> {
        self.check_same_degree(sub)?;
        self.filtered(|g| sub.generators.iter().all(|h| g.commutes_with(h)))
    }

    /// Normalizer of `sub` in `self`, by element scan.
    pub fn normalizer(&self, sub: &PermGroup) -> Result<PermGroup, GroupError> {
        self.check_same_degree(sub)?;
        self.filtered(|g| sub.generators.iter().all(|h| sub.contains(&h.conjugate_by(g))))
    }

    pub fn center(&self) -> Result<PermGroup, GroupError> {
        self.centralizer(self)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether `sub` is a normal subgroup of `self`.
    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.is_subgroup_of(self)
            && self
                .generators
                .iter()
                .all(|g| sub.generators.iter().all(|h| sub.contains(&h.conjugate_by(g))))
    }

    /// Normal closure of a set of elements of `self`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut closure = PermGroup::new(self.degree, elems.to_vec())?;
        loop {
            let mut extra = Vec::new();
            for g in &self.generators {
                for h in closure.generators() {
                    let c = h.conjugate_by(g);
                    if !closure.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(closure);
            }
            closure = closure.join(&extra)?;
        }
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        let gens = &self.generators;
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Subgroup generated by the derived subgroup and all squares; its index-2
    /// overgroups are exactly the index-2 subgroups of `self`.
    pub fn squares_subgroup(&self) -> Result<PermGroup, GroupError> {
        let derived = self.derived_subgroup()?;
        let mut gens = derived.generators.clone();
        for g in self.elements()? {
            let sq = g.compose(g);
            if !sq.is_identity() {
                gens.push(sq);
            }
        }
        Self::generated_by_all(self.degree, &gens)
    }

    /// Quotient by a normal subgroup, realized as the action on right cosets.
    /// Returns the quotient group together with the coset index of every
    /// materialized element (in element-list order).
    pub fn quotient(&self, normal: &PermGroup) -> Result<Quotient, GroupError> {
        self.check_same_degree(normal)?;
        if !normal.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        if !self.is_normal_subgroup(normal) {
            return Err(GroupError::NotNormal);
        }
        let mut reps: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        let find = |reps: &[Permutation], x: &Permutation| -> Option<usize> {
            reps.iter()
                .position(|r| normal.contains(&x.then(&r.inverse())))
        };
        let mut actions: Vec<Vec<usize>> = vec![Vec::new(); self.generators.len()];
        let mut k = 0;
        while k < reps.len() {
            for (gi, s) in self.generators.iter().enumerate() {
                let x = reps[k].then(s);
                let j = match find(&reps, &x) {
                    Some(j) => j,
                    None => {
                        reps.push(x);
                        reps.len() - 1
                    }
                };
                actions[gi].push(j);
            }
            k += 1;
        }
        let index = reps.len();
        let gens = actions
            .iter()
            .map(|a| Permutation::from_images(a))
            .collect::<Result<Vec<_>, _>>()?;
        let group = PermGroup::new(index, gens)?;
        Ok(Quotient {
            group,
            coset_representatives: reps,
        })
    }

    /// Histogram of element orders.
    pub fn element_order_histogram(&self) -> Result<BTreeMap<u64, u64>, GroupError> {
        let mut hist = BTreeMap::new();
        for g in self.elements()? {
            *hist.entry(g.order()).or_insert(0) += 1;
        }
        Ok(hist)
    }

    pub fn has_element_of_order(&self, k: u64) -> Result<bool, GroupError> {
        Ok(self.elements()?.iter().any(|g| g.order() == k))
    }

    pub fn exponent(&self) -> Result<u64, GroupError> {
        Ok(self
            .element_order_histogram()?
            .keys()
            .fold(1, |acc, &o| perm::lcm(acc, o)))
    }

    /// Elementary divisors (prime powers, ascending) of the abelianization.
    pub fn abelian_invariants(&self) -> Result<Vec<u64>, GroupError> {
        let derived = self.derived_subgroup()?;
        let d = derived.order() as u64;
        // order of gD in G/D for every g, counted per coset
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for g in self.elements()? {
            let o = g.order();
            let q = divisors(o)
                .into_iter()
                .find(|&m| derived.contains(&g.pow(m as i64)))
                .unwrap_or(o);
            *hist.entry(q).or_insert(0) += 1;
        }
        for v in hist.values_mut() {
            *v /= d;
        }
        let quotient_order = self.order as u64 / d;
        Ok(elementary_divisors(quotient_order, &hist))
    }

    pub fn fingerprint(&self) -> Result<GroupFingerprint, GroupError> {
        Ok(GroupFingerprint {
            order: self.order as u64,
            center_order: self.center()?.order() as u64,
            abelianization_invariants: self.abelian_invariants()?,
            element_order_histogram: self.element_order_histogram()?,
            is_abelian: self.is_abelian(),
        })
    }

    /// Multiplication table `t[i][j] = index(e_i ∘ e_j)` over the element list.
    pub fn multiplication_table(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        let els = self.elements()?;
        Ok(els
            .iter()
            .map(|a| {
                els.iter()
                    .map(|b| self.index_of(&a.compose(b)).expect("closed"))
                    .collect()
            })
            .collect())
    }

    pub fn report(&self) -> Result<GroupReport, GroupError> {
        Ok(GroupReport {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images()).collect(),
            order: self.order as u64,
            fingerprint: self.fingerprint()?,
        })
    }
}

/// Quotient group acting on cosets of a normal subgroup.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    pub coset_representatives: Vec<Permutation>,
}

/// Isomorphism-invariant summary used to compare groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub center_order: u64,
    pub abelianization_invariants: Vec<u64>,
    pub element_order_histogram: BTreeMap<u64, u64>,
    pub is_abelian: bool,
}

/// JSON form of a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub order: u64,
    pub fingerprint: GroupFingerprint,
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Elementary divisors of an abelian group from its element-order histogram.
fn elementary_divisors(order: u64, hist: &BTreeMap<u64, u64>) -> Vec<u64> {
    let mut out = Vec::new();
    for p in prime_factors(order) {
        // c[k] = log_p #{x : x^(p^k) = 1}
        let mut c = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count: u64 = hist
                .iter()
                .filter(|(o, _)| pk.is_multiple_of(**o))
                .map(|(_, n)| n)
                .sum();
            let mut e = 0;
            let mut m = count;
            while m > 1 {
                m /= p;
                e += 1;
            }
            if e == *c.last().unwrap() {
                break;
            }
            c.push(e);
        }
        // number of cyclic factors of exponent >= k is c[k] - c[k-1]
        let at_least: Vec<u32> = (1..c.len()).map(|k| c[k] - c[k - 1]).collect();
        for k in 1..=at_least.len() {
            let ge = at_least[k - 1];
            let gt = at_least.get(k).copied().unwrap_or(0);
            for _ in 0..(ge - gt) {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Outcome of testing whether `1 → ⟨z⟩ → G → G/⟨z⟩ → 1` splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVerdict {
    /// A complement exists (the extension is a direct product).
    Split,
    /// `G` has an element of order 8 but `G/⟨z⟩` has none.
    NonsplitByOrder8,
    /// `z` lies in every index-2 subgroup, so no complement exists.
    NonsplitNoComplement,
    Inconclusive,
}

/// Decides splitting of the central extension of `big / ⟨center_gen⟩` by the
/// order-2 central subgroup `⟨center_gen⟩`.
pub fn split_central_extension_check(
    big: &PermGroup,
    center_gen: &Permutation,
) -> Result<SplitVerdict, GroupError> {
    if !big.contains(center_gen) {
        return Err(GroupError::NotASubgroup);
    }
    if center_gen.order() != 2 {
        return Err(GroupError::NotAnInvolution);
    }
    if !big.generators().iter().all(|g| g.commutes_with(center_gen)) {
        return Err(GroupError::NotCentral);
    }
    if !big.is_materialized() {
        return Ok(SplitVerdict::Inconclusive);
    }
    let z = PermGroup::new(big.degree(), vec![center_gen.clone()])?;
    let quotient = big.quotient(&z)?;
    if big.has_element_of_order(8)? && !quotient.group.has_element_of_order(8)? {
        return Ok(SplitVerdict::NonsplitByOrder8);
    }
    // A complement of a central C2 is an index-2 subgroup avoiding z; those
    // exist iff z is outside the subgroup generated by commutators and squares.
    let frattini2 = big.squares_subgroup()?;
    if frattini2.contains(center_gen) {
        Ok(SplitVerdict::NonsplitNoComplement)
    } else {
        Ok(SplitVerdict::Split)
    }
}

/// Image of the regular representation `g ↦ σ_g`, `g·g_i = g_{σ_g(i)}`, of the
/// group given by a multiplication table over a fixed enumeration.
pub fn diagonal_quotient_stabilizer(table: &[Vec<usize>]) -> Result<PermGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::InvalidTable("empty table".into()));
    }
    for row in table {
        if row.len() != n {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
        .ok_or_else(|| GroupError::InvalidTable("no identity".into()))?;
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == identity) {
            return Err(GroupError::InvalidTable(format!("element {g} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            if ab >= n {
                return Err(GroupError::InvalidTable("entry out of range".into()));
            }
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::InvalidTable("not associative".into()));
                }
            }
        }
    }
    let sigmas = table
        .iter()
        .map(|row| {
            Permutation::from_images(row)
                .map_err(|_| GroupError::InvalidTable("row is not a permutation".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::generated_by_all(n, &sigmas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = PermGroup::new(27, vec![]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn s3_from_transposition_and_three_cycle() {
        let g = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.point_stabilizer(0).unwrap().order(), 2);
        assert_eq!(g.set_stabilizer(&[0, 1, 2]).unwrap().order(), 6);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let r = PermGroup::new(4, vec![cyc(3, &[&[0, 1]])]);
        assert!(matches!(r, Err(GroupError::DegreeMismatch { .. })));
    }

    #[test]
    fn cap_skips_materialization_but_keeps_order() {
        let gens = vec![
            cyc(10, &[&[0, 1]]),
            Permutation::from_images(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 0]).unwrap(),
        ];
        let g = PermGroup::generate(10, gens, 1000).unwrap();
        assert_eq!(g.order(), 3_628_800);
        assert!(!g.is_materialized());
        assert!(g.contains(&cyc(10, &[&[3, 7]])));
        assert!(g.centralizer(&PermGroup::trivial(10)).is_err());
    }

    #[test]
    fn centralizer_of_trivial_is_whole_group() {
        let s4 = symmetric(4);
        let c = s4.centralizer(&PermGroup::trivial(4)).unwrap();
        assert_eq!(c.order(), 24);
    }

    #[test]
    fn quotient_of_s4_by_klein_four() {
        let s4 = symmetric(4);
        let v4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])])
            .unwrap();
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert_eq!(q.group.degree(), 6);
        assert!(!q.group.is_abelian());
        let not_normal = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(s4.quotient(&not_normal).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn abelian_invariants_of_small_groups() {
        let c4 = cyclic(4);
        assert_eq!(c4.abelian_invariants().unwrap(), vec![4]);
        let c6 = cyclic(6);
        assert_eq!(c6.abelian_invariants().unwrap(), vec![2, 3]);
        let s4 = symmetric(4);
        assert_eq!(s4.abelian_invariants().unwrap(), vec![2]);
        let k = direct_product(&[cyclic(2), cyclic(4), cyclic(2)]).unwrap();
        assert_eq!(k.abelian_invariants().unwrap(), vec![2, 2, 4]);
        let a4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])])
            .unwrap();
        assert_eq!(a4.abelian_invariants().unwrap(), vec![3]);
    }

    #[test]
    fn fingerprint_of_klein_four() {
        let fp = named_group(NamedGroup::C2xC2).fingerprint().unwrap();
        assert_eq!(fp.order, 4);
        assert!(fp.is_abelian);
        assert_eq!(fp.center_order, 4);
        assert_eq!(fp.element_order_histogram, BTreeMap::from([(1, 1), (2, 3)]));
        let trivial = PermGroup::trivial(3).fingerprint().unwrap();
        assert_eq!(trivial.element_order_histogram, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn split_checks() {
        let v4 = named_group(NamedGroup::C2xC2);
        let z = v4.generators()[0].clone();
        assert_eq!(split_central_extension_check(&v4, &z).unwrap(), SplitVerdict::Split);

        let c4 = cyclic(4);
        let sq = c4.generators()[0].pow(2);
        assert_eq!(
            split_central_extension_check(&c4, &sq).unwrap(),
            SplitVerdict::NonsplitNoComplement
        );

        let s3 = symmetric(3);
        let t = cyc(3, &[&[0, 1]]);
        assert_eq!(split_central_extension_check(&s3, &t), Err(GroupError::NotCentral));
    }

    #[test]
    fn regular_representation_examples() {
        let c2 = diagonal_quotient_stabilizer(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!((c2.degree(), c2.order()), (2, 2));

        let s3 = symmetric(3);
        let r = diagonal_quotient_stabilizer(&s3.multiplication_table().unwrap()).unwrap();
        assert_eq!((r.degree(), r.order()), (6, 6));
        assert!(!r.is_abelian());

        // C4: identity, one involution, two generators
        let c4 = diagonal_quotient_stabilizer(&[
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ])
        .unwrap();
        assert_eq!(
            c4.element_order_histogram().unwrap(),
            BTreeMap::from([(1, 1), (2, 1), (4, 2)])
        );
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!(diagonal_quotient_stabilizer(&[]).is_err());
        assert!(diagonal_quotient_stabilizer(&[vec![0, 1], vec![0, 1]]).is_err());
        // Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(diagonal_quotient_stabilizer(&loop5).is_err());
    }
}
