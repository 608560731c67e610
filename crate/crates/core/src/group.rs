//! Finite permutation groups with an explicit, sorted element table.
//!
//! Elements are addressed by their index in the sorted table; index 0 is
//! always the identity (it is the lexicographically smallest image array).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 10080;
/// Groups up to this order get a full Cayley table on first use.
const TABLE_LIMIT: usize = 2048;

pub struct Group {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    inverses: Vec<usize>,
    table: OnceLock<Vec<u32>>,
    classes: OnceLock<Vec<Vec<usize>>>,
    orders: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl Group {
    pub fn from_generators(gens: Vec<Permutation>, degree: usize) -> Result<Self> {
        Self::from_generators_capped(gens, degree, DEFAULT_ORDER_CAP)
    }

    /// Breadth-first closure of `gens`; fails once more than `cap` elements appear.
    pub fn from_generators_capped(gens: Vec<Permutation>, degree: usize, cap: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            limit: cap,
                            actual: seen.len() + 1,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let inverses = elements
            .iter()
            .map(|p| elements.binary_search(&p.inverse()).expect("closed under inverse"))
            .collect();
        Ok(Group {
            name: String::new(),
            degree,
            generators: gens,
            elements,
            inverses,
            table: OnceLock::new(),
            classes: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(Vec::new(), degree).expect("trivial group")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generator in group"))
            .collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    fn table(&self) -> Option<&[u32]> {
        if self.order() > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let n = self.order();
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    let c = self.elements[a].compose(&self.elements[b]);
                    t[a * n + b] = self.elements.binary_search(&c).expect("closed") as u32;
                }
            }
            t
        }))
    }

    /// Index of `a * b` (apply `b` first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let c = self.elements[a].compose(&self.elements[b]);
                self.elements.binary_search(&c).expect("closed")
            }
        }
    }

    /// `g x g^-1`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders.get_or_init(|| self.elements.iter().map(|p| p.order()).collect())[a]
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            set: ElemSet::full(self.order()),
            gens: self.generator_indices(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            set: ElemSet::from_indices(self.order(), [0]),
            gens: Vec::new(),
        }
    }

    /// Smallest subgroup containing the given element indices.
    pub fn generate(&self, seeds: &[usize]) -> Subgroup {
        let mut set = ElemSet::new(self.order());
        set.insert(0);
        let mut queue = vec![0usize];
        let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        Subgroup { set, gens }
    }

    /// `⟨K ∪ {g}⟩`, reusing the generating set stored in `k`.
    pub fn join_element(&self, k: &Subgroup, g: usize) -> Subgroup {
        if k.contains(g) {
            return k.clone();
        }
        let mut seeds = k.gens.clone();
        seeds.push(g);
        self.generate(&seeds)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if b.set.is_subset(&a.set) {
            return a.clone();
        }
        let mut seeds = a.gens.clone();
        seeds.extend(b.gens.iter().copied().filter(|&g| !a.contains(g)));
        self.generate(&seeds)
    }

    pub fn meet(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_set(self, a.set.intersection(&b.set))
    }

    pub fn subgroup_generated(&self, seed: &[Permutation]) -> Result<Subgroup> {
        let idx = seed
            .iter()
            .map(|p| {
                if p.degree() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: p.degree(),
                    });
                }
                self.index_of(p)
                    .ok_or_else(|| Error::ElementNotInGroup(p.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&idx))
    }

    /// Validates that `set` is a subgroup and wraps it.
    pub fn subgroup_from_set(&self, set: ElemSet) -> Result<Subgroup> {
        if !set.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        let members: Vec<usize> = set.iter().collect();
        for &a in &members {
            if !set.contains(self.inv(a)) {
                return Err(Error::NotSubgroup("not closed under inverse".into()));
            }
            for &b in &members {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under product".into()));
                }
            }
        }
        Ok(Subgroup::from_set(self, set))
    }

    /// Conjugacy classes; identity class first, then by element order, class size and
    /// smallest member. Computed once and cached.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let gens = self.generator_indices();
            let mut assigned = vec![false; self.order()];
            let mut classes = Vec::new();
            for start in 0..self.order() {
                if assigned[start] {
                    continue;
                }
                assigned[start] = true;
                let mut class = vec![start];
                let mut queue = vec![start];
                while let Some(x) = queue.pop() {
                    for &s in &gens {
                        let y = self.conjugate(s, x);
                        if !assigned[y] {
                            assigned[y] = true;
                            class.push(y);
                            queue.push(y);
                        }
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
            classes
        })
    }

    /// Class index of every element.
    pub fn class_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.order()];
        for (ci, class) in self.conjugacy_classes().iter().enumerate() {
            for &x in class {
                map[x] = ci;
            }
        }
        map
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.generator_indices()
            .iter()
            .all(|&g| k.elements().all(|x| k.contains(self.conjugate(g, x))))
    }

    /// Largest normal subgroup contained in `h`: the intersection of all conjugates.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let mut set = h.set.clone();
        for g in 0..self.order() {
            let mut conj = ElemSet::new(self.order());
            for x in h.elements() {
                conj.insert(self.conjugate(g, x));
            }
            set = set.intersection(&conj);
        }
        Subgroup::from_set(self, set)
    }

    /// `G/N` as the permutation group induced on left cosets of `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<Group> {
        Ok(self.quotient_with_projection(n)?.0)
    }

    /// Quotient group together with the projection `G → G/N` on element indices.
    pub fn quotient_with_projection(&self, n: &Subgroup) -> Result<(Group, Vec<usize>)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset[g] != usize::MAX {
                continue;
            }
            for x in n.elements() {
                coset[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let action = |g: usize| -> Permutation {
            Permutation::from_images(reps.iter().map(|&r| coset[self.mul(g, r)]).collect())
                .expect("coset action is a permutation")
        };
        let gens: Vec<Permutation> = self
            .generator_indices()
            .into_iter()
            .map(action)
            .filter(|p| !p.is_identity())
            .collect();
        let q = Group::from_generators_capped(gens, reps.len(), usize::MAX)?
            .with_name(format!("{}/N{}", self.name, n.order()));
        let proj = (0..self.order())
            .map(|g| q.index_of(&action(g)).expect("image in quotient"))
            .collect();
        Ok((q, proj))
    }

    /// The subgroup `k` as a standalone group on the same points.
    pub fn subgroup_as_group(&self, k: &Subgroup) -> Group {
        let gens = k.generators(self).into_iter().map(|i| self.elements[i].clone()).collect();
        Group::from_generators_capped(gens, self.degree, usize::MAX)
            .expect("subgroup closure")
            .with_name(format!("{}<{}>", self.name, k.order()))
    }

    /// Greedy small generating set: repeatedly add the element enlarging the
    /// generated subgroup the most.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        while cur.order() < self.order() {
            let mut best: Option<Subgroup> = None;
            let mut best_g = 0;
            for g in 0..self.order() {
                if cur.contains(g) {
                    continue;
                }
                let cand = self.join_element(&cur, g);
                if best.as_ref().is_none_or(|b| cand.order() > b.order()) {
                    best_g = g;
                    let full = cand.order() == self.order();
                    best = Some(cand);
                    if full {
                        break;
                    }
                }
            }
            gens.push(best_g);
            cur = best.expect("proper subgroup has an outside element");
        }
        gens
    }

    /// Every element of the set, in cycle notation.
    pub fn describe(&self, k: &Subgroup) -> String {
        let gens = k.generators(self);
        if gens.is_empty() {
            return "e".into();
        }
        gens.iter()
            .map(|&i| self.elements[i].to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A subgroup of a [`Group`], stored as a set of element indices of the parent.
///
/// Equality, hashing and ordering depend only on the element set; `gens` is a
/// cached generating set used to speed up joins.
#[derive(Clone)]
pub struct Subgroup {
    set: ElemSet,
    gens: Vec<usize>,
}

impl Subgroup {
    /// Trusted constructor; `set` must already be a subgroup.
    pub(crate) fn from_set(g: &Group, set: ElemSet) -> Subgroup {
        let mut sub = Subgroup { set, gens: Vec::new() };
        sub.gens = sub.compute_generators(g);
        sub
    }

    fn compute_generators(&self, g: &Group) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = g.trivial_subgroup();
        // Largest element orders first keeps the set short.
        let mut members: Vec<usize> = self.set.iter().collect();
        members.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        for x in members {
            if cur.order() == self.order() {
                break;
            }
            if !cur.contains(x) {
                cur = g.join_element(&cur, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// A generating set (indices into the parent group).
    pub fn generators(&self, g: &Group) -> Vec<usize> {
        if self.gens.is_empty() && !self.is_trivial() {
            return self.compute_generators(g);
        }
        self.gens.clone()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.set.hash(state)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.set.cmp(&other.set)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn sym(n: usize) -> Group {
        let mut cyc: Vec<usize> = (1..n).collect();
        cyc.push(0);
        Group::from_generators(
            vec![p("(0 1)", n), Permutation::from_images(cyc).unwrap()],
            n,
        )
        .unwrap()
    }

    /// Independent closure: keep multiplying everything by everything.
    fn naive_closure(gens: &[Permutation], n: usize) -> usize {
        let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
        set.extend(gens.iter().cloned());
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                return before;
            }
        }
    }

    #[test]
    fn closure_orders() {
        let c30 = Permutation::from_images((1..30).chain([0]).collect()).unwrap();
        assert_eq!(Group::from_generators(vec![c30], 30).unwrap().order(), 30);
        let s3 = vec![p("(0 1)", 3), p("(0 1 2)", 3)];
        assert_eq!(naive_closure(&s3, 3), 6);
        assert_eq!(Group::from_generators(s3, 3).unwrap().order(), 6);
        assert_eq!(Group::from_generators(vec![], 4).unwrap().order(), 1);
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            Group::from_generators(vec![p("(0 1)", 3)], 4),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            Group::from_generators_capped(sym(5).generators().to_vec(), 5, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn identity_is_index_zero_and_table_closed() {
        let g = sym(4);
        assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            for b in 0..g.order() {
                let c = g.element(a).compose(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &c);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn generated_subgroups() {
        let s3 = sym(3);
        assert_eq!(s3.subgroup_generated(&[p("(0 1)", 3)]).unwrap().order(), 2);
        assert_eq!(s3.subgroup_generated(&[]).unwrap().order(), 1);
        let s4 = sym(4);
        let all = s4
            .subgroup_generated(&[p("(0 1)", 4), p("(0 1 2 3)", 4)])
            .unwrap();
        assert_eq!(all.order(), naive_closure(&[p("(0 1)", 4), p("(0 1 2 3)", 4)], 4));
        assert_eq!(all.order(), 24);
        assert!(matches!(
            s3.subgroup_generated(&[p("(0 1)", 4)]),
            Err(Error::DegreeMismatch { .. })
        ));
        let a3 = Group::from_generators(vec![p("(0 1 2)", 3)], 3).unwrap();
        assert!(matches!(
            a3.subgroup_generated(&[p("(0 1)", 3)]),
            Err(Error::ElementNotInGroup(_))
        ));
    }

    /// Orbit computation by conjugating with every element.
    fn brute_classes(g: &Group) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut sizes = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let orbit: HashSet<usize> = (0..g.order()).map(|y| g.conjugate(y, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            sizes.push(orbit.len());
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn conjugacy_classes_match_orbits() {
        let s3 = sym(3);
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(brute_classes(&s3), vec![1, 2, 3]);
        let s4 = sym(4);
        assert_eq!(s4.conjugacy_classes().len(), 5);
        let mut sizes: Vec<usize> = s4.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, brute_classes(&s4));
        let c5 = Group::from_generators(vec![p("(0 1 2 3 4)", 5)], 5).unwrap();
        assert!(c5.conjugacy_classes().iter().all(|c| c.len() == 1));
        assert_eq!(c5.conjugacy_classes().len(), 5);
        assert_eq!(s4.conjugacy_classes()[0], vec![0]);
    }

    #[test]
    fn cores_and_normality() {
        let s3 = sym(3);
        let h = s3.subgroup_generated(&[p("(0 1)", 3)]).unwrap();
        assert!(s3.core(&h).is_trivial());
        assert!(!s3.is_normal(&h));
        let a3 = s3.subgroup_generated(&[p("(0 1 2)", 3)]).unwrap();
        assert_eq!(s3.core(&a3), a3);

        let s4 = sym(4);
        let v4 = s4
            .subgroup_generated(&[p("(0 1)(2 3)", 4), p("(0 2)(1 3)", 4)])
            .unwrap();
        assert_eq!(s4.core(&v4), v4);
        let a4 = s4
            .subgroup_generated(&[p("(0 1 2)", 4), p("(1 2 3)", 4)])
            .unwrap();
        assert!(s4.is_normal(&a4));
        assert!(s4.is_normal(&s4.whole()));
    }

    #[test]
    fn quotients() {
        let s4 = sym(4);
        let v4 = s4
            .subgroup_generated(&[p("(0 1)(2 3)", 4), p("(0 2)(1 3)", 4)])
            .unwrap();
        let (q, proj) = s4.quotient_with_projection(&v4).unwrap();
        assert_eq!(q.order(), 6);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(proj[s4.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        assert_eq!(s4.quotient(&s4.whole()).unwrap().order(), 1);
        assert_eq!(s4.quotient(&s4.trivial_subgroup()).unwrap().order(), 24);
        let h = s4.subgroup_generated(&[p("(0 1)", 4)]).unwrap();
        assert_eq!(s4.quotient(&h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn subgroup_validation() {
        let s3 = sym(3);
        // index 1 is (1 2), the lexicographically next permutation
        assert_eq!(s3.element(1).to_string(), "(1 2)");
        assert_eq!(s3.subgroup_from_set(ElemSet::from_indices(6, [0, 1])).unwrap().order(), 2);
        assert!(s3.subgroup_from_set(ElemSet::from_indices(6, [0, 3])).is_err());
        assert!(s3.subgroup_from_set(ElemSet::from_indices(6, [1])).is_err());
        assert!(s3.subgroup_from_set(ElemSet::full(6)).is_ok());
    }

    #[test]
    fn small_generating_sets_generate() {
        for g in [sym(3), sym(4), sym(5)] {
            let gens = g.small_generating_set();
            assert!(gens.len() <= 2);
            assert_eq!(g.generate(&gens).order(), g.order());
        }
    }
}
