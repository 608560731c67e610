//! Finite lattices with explicit order, meet and join tables.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from an order relation, computing meets and joins.
    /// Fails unless `leq` is a partial order in which every pair has a glb and lub.
    pub fn from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotALattice("empty".into()));
        }
        let rel: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        let le = |a: usize, b: usize| rel[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::NotALattice(format!("{a} not reflexive")));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotALattice(format!("{a},{b} antisymmetry")));
                }
                if le(a, b) {
                    for c in 0..n {
                        if le(b, c) && !le(a, c) {
                            return Err(Error::NotALattice(format!("{a},{b},{c} transitivity")));
                        }
                    }
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&x| le(x, a) && le(x, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&x| lower.iter().all(|&y| le(y, x)))
                    .ok_or_else(|| Error::NotALattice(format!("no meet for {a},{b}")))?;
                let upper: Vec<usize> = (0..n).filter(|&x| le(a, x) && le(b, x)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&x| upper.iter().all(|&y| le(x, y)))
                    .ok_or_else(|| Error::NotALattice(format!("no join for {a},{b}")))?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| le(x, y))).expect("lattice has bottom");
        let top = (0..n).find(|&x| (0..n).all(|y| le(y, x))).expect("lattice has top");
        Ok(FiniteLattice {
            n,
            leq: rel,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn chain(len: usize) -> Self {
        Self::from_order(len, |a, b| a <= b).expect("chain")
    }

    /// Subsets of a `rank`-element set.
    pub fn boolean(rank: usize) -> Self {
        Self::from_order(1 << rank, |a, b| a & !b == 0).expect("boolean lattice")
    }

    /// Divisors of `m` ordered by divisibility, listed in increasing order.
    pub fn divisors(m: u64) -> (Self, Vec<u64>) {
        let divs: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        let l = Self::from_order(divs.len(), |a, b| divs[b].is_multiple_of(divs[a])).expect("divisor lattice");
        (l, divs)
    }

    /// The diamond: bottom, three pairwise incomparable atoms, top.
    pub fn m3() -> Self {
        Self::from_order(5, |a, b| a == b || a == 0 || b == 4).expect("M3")
    }

    /// The pentagon: 0 < 1 < 2 < 4 and 0 < 3 < 4.
    pub fn n5() -> Self {
        let edges = [(0, 1), (1, 2), (0, 2), (0, 3), (2, 4), (1, 4), (3, 4), (0, 4)];
        Self::from_order(5, |a, b| a == b || edges.contains(&(a, b))).expect("N5")
    }

    pub fn reversed(&self) -> Self {
        let n = self.n;
        FiniteLattice {
            n,
            leq: (0..n * n).map(|k| self.leq[(k % n) * n + k / n]).collect(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        let m = other.n;
        Self::from_order(self.n * m, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("product of lattices")
    }

    /// Glues the top of `self` to the bottom of `other`.
    pub fn concatenation(&self, other: &Self) -> Self {
        let n1 = self.n;
        // indices: self nodes except top → [0, n1-1), then other nodes in order, where
        // self's top is identified with other's bottom.
        let lower: Vec<usize> = (0..n1).filter(|&x| x != self.top).collect();
        let total = lower.len() + other.n;
        let place = |i: usize| -> (bool, usize) {
            if i < lower.len() {
                (true, lower[i])
            } else {
                (false, i - lower.len())
            }
        };
        Self::from_order(total, |a, b| match (place(a), place(b)) {
            ((true, x), (true, y)) => self.leq(x, y),
            ((true, _), (false, _)) => true,
            ((false, _), (true, _)) => false,
            ((false, x), (false, y)) => other.leq(x, y),
        })
        .expect("concatenation")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    /// Exhaustive check of the lattice axioms on the stored tables.
    pub fn validate(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            self.meet(a, a) == a
                && self.join(a, a) == a
                && (0..n).all(|b| {
                    self.meet(a, b) == self.meet(b, a)
                        && self.join(a, b) == self.join(b, a)
                        && (self.leq(a, b) == (self.meet(a, b) == a))
                        && (self.leq(a, b) == (self.join(a, b) == b))
                        && (0..n).all(|c| {
                            self.meet(a, self.meet(b, c)) == self.meet(self.meet(a, b), c)
                                && self.join(a, self.join(b, c)) == self.join(self.join(a, b), c)
                        })
                })
        })
    }

    /// Sublattice `[a, b]` together with the parent index of each node.
    pub fn interval(&self, a: usize, b: usize) -> (Self, Vec<usize>) {
        assert!(self.leq(a, b), "interval endpoints must be ordered");
        let nodes: Vec<usize> = (0..self.n)
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in nodes.iter().enumerate() {
            pos[x] = i;
        }
        let m = nodes.len();
        let mut leq = vec![false; m * m];
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for (i, &x) in nodes.iter().enumerate() {
            for (j, &y) in nodes.iter().enumerate() {
                leq[i * m + j] = self.leq(x, y);
                meet[i * m + j] = pos[self.meet(x, y)];
                join[i * m + j] = pos[self.join(x, y)];
            }
        }
        let sub = FiniteLattice {
            n: m,
            leq,
            meet,
            join,
            bottom: pos[a],
            top: pos[b],
        };
        (sub, nodes)
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.covers_of(self.bottom)
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| x != self.top && self.is_cover(x, self.top))
            .collect()
    }

    fn is_cover(&self, lo: usize, hi: usize) -> bool {
        lo != hi
            && self.leq(lo, hi)
            && (0..self.n).all(|z| z == lo || z == hi || !(self.leq(lo, z) && self.leq(z, hi)))
    }

    pub fn covers_of(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.is_cover(x, y)).collect()
    }

    pub fn complements(&self, x: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
            .collect()
    }

    /// Distributive and complemented.
    pub fn is_boolean(&self) -> bool {
        self.is_distributive() && (0..self.n).all(|x| !self.complements(x).is_empty())
    }

    /// Second characterisation: `n = 2^#atoms` and atom subsets ↦ joins is a bijection.
    pub fn is_boolean_by_atoms(&self) -> bool {
        let atoms = self.atoms();
        if atoms.len() >= usize::BITS as usize - 1 || self.n != 1 << atoms.len() {
            return false;
        }
        let mut hit = vec![false; self.n];
        for mask in 0usize..(1 << atoms.len()) {
            let x = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(self.bottom, |acc, (_, &a)| self.join(acc, a));
            if std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        true
    }

    /// Longest strict chain length.
    pub fn height(&self) -> usize {
        // nodes sorted by number of elements below is a linear extension
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (0..self.n).filter(|&y| self.leq(y, x)).count());
        let mut h = vec![0usize; self.n];
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[..i] {
                if y != x && self.leq(y, x) {
                    h[x] = h[x].max(h[y] + 1);
                }
            }
        }
        h[self.top]
    }

    /// Meet of all coatoms (the top itself for a one-element lattice).
    pub fn coatom_meet(&self) -> usize {
        self.coatoms().into_iter().fold(self.top, |acc, c| self.meet(acc, c))
    }

    /// Join of all atoms.
    pub fn atom_join(&self) -> usize {
        self.atoms().into_iter().fold(self.bottom, |acc, c| self.join(acc, c))
    }

    pub fn top_interval(&self) -> (Self, Vec<usize>) {
        self.interval(self.coatom_meet(), self.top)
    }

    pub fn bottom_interval(&self) -> (Self, Vec<usize>) {
        self.interval(self.bottom, self.atom_join())
    }

    pub fn is_top_boolean(&self) -> bool {
        self.top_interval().0.is_boolean()
    }

    pub fn is_bottom_boolean(&self) -> bool {
        self.reversed().is_top_boolean()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributivity_examples() {
        assert!(FiniteLattice::divisors(30).0.is_distributive());
        assert!(!FiniteLattice::m3().is_distributive());
        assert!(!FiniteLattice::n5().is_distributive());
        assert!(FiniteLattice::chain(1).is_distributive());
    }

    #[test]
    fn boolean_examples() {
        let (d30, _) = FiniteLattice::divisors(30);
        assert!(d30.is_boolean() && d30.is_boolean_by_atoms());
        let c3 = FiniteLattice::chain(3);
        assert!(!c3.is_boolean() && !c3.is_boolean_by_atoms());
        let c2 = FiniteLattice::chain(2);
        assert!(c2.is_boolean() && c2.is_boolean_by_atoms());
        assert!(FiniteLattice::chain(1).is_boolean());
        assert!(!FiniteLattice::m3().is_boolean_by_atoms());
    }

    #[test]
    fn atoms_coatoms_and_height() {
        let b3 = FiniteLattice::boolean(3);
        assert_eq!(b3.atoms().len(), 3);
        assert_eq!(b3.coatoms().len(), 3);
        assert_eq!(b3.height(), 3);
        assert_eq!(FiniteLattice::chain(4).atoms(), vec![1]);
        assert_eq!(FiniteLattice::chain(1).height(), 0);
        let (d30, divs) = FiniteLattice::divisors(30);
        let mut co: Vec<u64> = d30.coatoms().iter().map(|&i| divs[i]).collect();
        co.sort();
        assert_eq!(co, vec![6, 10, 15]);
        assert_eq!(d30.height(), 3);
    }

    #[test]
    fn top_intervals() {
        let b2 = FiniteLattice::boolean(2);
        assert_eq!(b2.top_interval().0.len(), 4);
        assert!(b2.is_top_boolean());
        let chain = FiniteLattice::chain(5);
        let (top, _) = chain.top_interval();
        assert_eq!(top.len(), 2);
        assert!(top.is_boolean());
        assert!(!FiniteLattice::m3().is_top_boolean());
        let (d12, _) = FiniteLattice::divisors(12);
        assert!(d12.is_top_boolean() && d12.is_bottom_boolean());
    }

    #[test]
    fn complements_examples() {
        let b3 = FiniteLattice::boolean(3);
        assert!((0..8).all(|x| b3.complements(x).len() == 1));
        assert_eq!(b3.complements(b3.bottom()), vec![b3.top()]);
        assert!(FiniteLattice::chain(3).complements(1).is_empty());
        assert_eq!(FiniteLattice::m3().complements(1).len(), 2);
    }

    #[test]
    fn rejects_non_lattices() {
        // two incomparable maximal elements
        assert!(FiniteLattice::from_order(3, |a, b| a == b || a == 0).is_err());
        assert!(FiniteLattice::from_order(2, |_, _| true).is_err());
    }

    #[test]
    fn constructions_are_valid() {
        let d = FiniteLattice::divisors(12).0;
        for l in [
            d.reversed(),
            d.product(&FiniteLattice::chain(2)),
            d.concatenation(&FiniteLattice::m3()),
            FiniteLattice::m3(),
            FiniteLattice::n5(),
        ] {
            assert!(l.validate());
        }
        assert_eq!(d.concatenation(&FiniteLattice::chain(3)).len(), 6 + 2);
    }
}
