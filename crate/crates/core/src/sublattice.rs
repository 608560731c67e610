//! Subgroup lattices and intervals `[H, G]`.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::iso::{for_each_isomorphism, DEFAULT_ISO_CAP};
use crate::lattice::FiniteLattice;

pub const DEFAULT_SUBGROUP_CAP: usize = 720;

/// All subgroups of a group, sorted by `(order, element list)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<Group>,
    nodes: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    lattice: FiniteLattice,
}

/// Enumerates subgroups by layered cyclic extension: start from the cyclic
/// subgroups and keep joining every new subgroup with every cyclic subgroup.
pub fn all_subgroups(g: Arc<Group>) -> Result<SubgroupLattice> {
    all_subgroups_capped(g, DEFAULT_SUBGROUP_CAP)
}

pub fn all_subgroups_capped(g: Arc<Group>, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration order",
            limit: cap,
            actual: g.order(),
        });
    }
    let mut found: HashMap<ElemSet, Subgroup> = HashMap::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for x in 0..g.order() {
        let c = g.generate(&[x]);
        if !found.contains_key(c.set()) {
            found.insert(c.set().clone(), c.clone());
            cyclic.push((x, c));
        }
    }
    let mut frontier: Vec<Subgroup> = cyclic.iter().map(|(_, c)| c.clone()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in &frontier {
            for (x, c) in &cyclic {
                if c.is_subgroup_of(k) {
                    continue;
                }
                let j = g.join_element(k, *x);
                if !found.contains_key(j.set()) {
                    found.insert(j.set().clone(), j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut nodes: Vec<Subgroup> = found.into_values().collect();
    nodes.sort();
    SubgroupLattice::from_nodes(g, nodes)
}

impl SubgroupLattice {
    fn from_nodes(group: Arc<Group>, nodes: Vec<Subgroup>) -> Result<Self> {
        let lattice =
            FiniteLattice::from_order(nodes.len(), |a, b| nodes[a].is_subgroup_of(&nodes[b]))?;
        let index = nodes.iter().enumerate().map(|(i, k)| (k.set().clone(), i)).collect();
        Ok(SubgroupLattice {
            group,
            nodes,
            index,
            lattice,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn index_of(&self, k: &Subgroup) -> Option<usize> {
        self.index.get(k.set()).copied()
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `[lo, hi]` as node indices of this lattice.
    pub fn interval_between(&self, lo: usize, hi: usize) -> IntervalOfGroups {
        let (lattice, parent) = self.lattice.interval(lo, hi);
        let subgroups = parent.iter().map(|&i| self.nodes[i].clone()).collect();
        IntervalOfGroups {
            group: self.group.clone(),
            subgroups,
            parent,
            lattice,
        }
    }

    /// `[H, G]`.
    pub fn interval(&self, h: &Subgroup) -> Result<IntervalOfGroups> {
        let lo = self
            .index_of(h)
            .ok_or_else(|| Error::NotSubgroup("not a subgroup of this group".into()))?;
        Ok(self.interval_between(lo, self.top_index()))
    }
}

/// The interval `[H, G]` with its lattice; node 0.. are subgroups sorted by order.
#[derive(Debug, Clone)]
pub struct IntervalOfGroups {
    group: Arc<Group>,
    subgroups: Vec<Subgroup>,
    parent: Vec<usize>,
    lattice: FiniteLattice,
}

impl IntervalOfGroups {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Index of each node in the enclosing subgroup lattice.
    pub fn parent_indices(&self) -> &[usize] {
        &self.parent
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.subgroups[self.lattice.bottom()]
    }

    pub fn top(&self) -> &Subgroup {
        &self.subgroups[self.lattice.top()]
    }

    pub fn position(&self, k: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == k)
    }
}

/// Convenience: `[H, G]` computed from scratch.
pub fn interval(g: Arc<Group>, h: &Subgroup) -> Result<IntervalOfGroups> {
    all_subgroups(g)?.interval(h)
}

/// Core quotient `B/A_B` and the image of `A` in it.
fn core_quotient(iv: &IntervalOfGroups) -> Result<(Group, ElemSet)> {
    let g = iv.group();
    let top = g.subgroup_as_group(iv.top());
    let a = iv.bottom();
    let a_in_top = top.generate(
        &a.elements()
            .map(|x| top.index_of(g.element(x)).expect("bottom inside top"))
            .collect::<Vec<_>>(),
    );
    let core = top.core(&a_in_top);
    let (q, proj) = top.quotient_with_projection(&core)?;
    let image = ElemSet::from_indices(q.order(), a_in_top.elements().map(|x| proj[x]));
    Ok((q, image))
}

/// Intervals `[A,B]`, `[C,D]` are equivalent when some isomorphism
/// `B/A_B → D/C_D` carries `A/A_B` onto `C/C_D`.
pub fn interval_equivalent(i1: &IntervalOfGroups, i2: &IntervalOfGroups) -> Result<bool> {
    let (q1, a1) = core_quotient(i1)?;
    let (q2, a2) = core_quotient(i2)?;
    if q1.order() != q2.order() || a1.len() != a2.len() {
        return Ok(false);
    }
    let mut equivalent = false;
    for_each_isomorphism(&q1, &q2, DEFAULT_ISO_CAP, |iso| {
        if a1.iter().all(|x| a2.contains(iso.map[x])) {
            equivalent = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(equivalent)
}
