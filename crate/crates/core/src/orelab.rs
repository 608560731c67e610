//! Cyclicity of intervals `[H, G]`: Ore witnesses, Dedekind and coatom
//! criteria, the dual (representation-side) checks and chain bounds.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::chartable::CharacterTable;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::lattice::FiniteLattice;
use crate::sublattice::{IntervalOfGroups, SubgroupLattice};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Coatoms `M` of `[H, G]`, weighted by `1/|G:M|`.
    Up,
    /// Atoms `M` of `[H, G]`, weighted by `1/|M:H|`.
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    Distributive,
    BottomBoolean,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DualOreVerdict {
    /// Some irreducible character has `G_(V^H) = H`.
    Holds { character: usize, degree: u64 },
    Counterexample,
}

impl DualOreVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DualOreVerdict::Holds { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub min_faithful: usize,
    pub chain_length: usize,
    pub ok: bool,
}

pub(crate) fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    pub id: String,
    pub group: String,
    pub group_order: usize,
    pub subgroup: String,
    pub subgroup_order: usize,
    pub lattice_size: usize,
    pub height: usize,
    pub coatoms: usize,
    pub atoms: usize,
    pub core_free: bool,
    pub distributive: bool,
    pub boolean: bool,
    pub top_boolean: bool,
    pub bottom_boolean: bool,
    pub dedekind: bool,
    pub cyclic: bool,
    pub h_cyclic: bool,
    pub linearly_primitive: bool,
    pub dual_side_linearly_primitive: bool,
    pub witness: Option<String>,
    pub ore_witness: Option<String>,
    #[serde(serialize_with = "ser_ratio")]
    pub coatom_sum_up: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub coatom_sum_down: Rational,
    pub dual_ore: Option<DualOreVerdict>,
}

impl IntervalReport {
    /// The implications every report must satisfy by construction.
    pub fn is_consistent(&self) -> bool {
        (!self.cyclic || (self.dedekind && self.distributive))
            && (self.h_cyclic == self.witness.is_some())
            && (!self.boolean || (self.distributive && self.top_boolean && self.bottom_boolean))
            && (self.ore_witness.is_some() == self.distributive)
            && (self.dual_ore.is_some() == self.distributive)
    }
}

fn generates(g: &Group, h: &Subgroup, x: usize, target: &Subgroup) -> bool {
    g.join_element(h, x) == *target
}

/// Some `g` with `⟨H, g⟩ = G`, scanning one representative per double coset `HgH`.
pub fn is_h_cyclic(g: &Group, h: &Subgroup) -> Option<usize> {
    let whole = g.whole();
    if *h == whole {
        return Some(g.identity());
    }
    let mut seen = ElemSet::new(g.order());
    for x in 0..g.order() {
        if seen.contains(x) {
            continue;
        }
        if generates(g, h, x, &whole) {
            return Some(x);
        }
        for a in h.elements() {
            let ax = g.mul(a, x);
            for b in h.elements() {
                seen.insert(g.mul(ax, b));
            }
        }
    }
    None
}

/// Reference scan over every element.
pub fn is_h_cyclic_exhaustive(g: &Group, h: &Subgroup) -> Option<usize> {
    let whole = g.whole();
    (0..g.order()).find(|&x| generates(g, h, x, &whole))
}

/// Witness for `[lo, hi]` (nodes of `iv`) assuming the subinterval is boolean.
fn boolean_witness(iv: &IntervalOfGroups, lo: usize, hi: usize) -> Result<usize> {
    let g = iv.group();
    let low = iv.subgroup(lo);
    let high = iv.subgroup(hi);
    if lo == hi {
        return Ok(g.identity());
    }
    let (sub, parent) = iv.lattice().interval(lo, hi);
    let coatoms = sub.coatoms();
    let witness = if coatoms == [sub.bottom()] {
        // maximal step: anything outside the bottom
        high.elements()
            .find(|&x| !low.contains(x))
            .expect("proper inclusion")
    } else {
        let m = coatoms[0];
        let mc = *sub
            .complements(m)
            .first()
            .ok_or_else(|| Error::WitnessVerificationFailed("coatom without complement".into()))?;
        let a = boolean_witness(iv, lo, parent[m])?;
        let b = boolean_witness(iv, lo, parent[mc])?;
        g.mul(a, b)
    };
    if !generates(g, low, witness, high) {
        return Err(Error::WitnessVerificationFailed(format!(
            "{} does not generate {} over {}",
            g.element(witness),
            g.describe(high),
            g.describe(low)
        )));
    }
    Ok(witness)
}

/// Constructive Ore witness for a distributive interval: pass to the top
/// interval `[K, G]` (`K` the meet of the coatoms, boolean), split along a
/// coatom and its complement, and multiply the two witnesses.
pub fn ore_witness_distributive(iv: &IntervalOfGroups) -> Result<usize> {
    let lattice = iv.lattice();
    if !lattice.is_distributive() {
        return Err(Error::NotDistributive);
    }
    let k = lattice.coatom_meet();
    let (top, _) = lattice.interval(k, lattice.top());
    if !top.is_boolean() {
        return Err(Error::WitnessVerificationFailed("top interval is not boolean".into()));
    }
    let witness = boolean_witness(iv, k, lattice.top())?;
    let g = iv.group();
    if !generates(g, iv.bottom(), witness, iv.top()) {
        return Err(Error::WitnessVerificationFailed(format!(
            "top-interval witness {} does not generate over the bottom",
            g.element(witness)
        )));
    }
    Ok(witness)
}

fn double_coset(g: &Group, a: &Subgroup, x: usize, b: &Subgroup) -> ElemSet {
    let mut set = ElemSet::new(g.order());
    for s in a.elements() {
        let sx = g.mul(s, x);
        for t in b.elements() {
            set.insert(g.mul(sx, t));
        }
    }
    set
}

/// `HgK = KgH` for every `K` in `[H, top]` and every `g` in the top group.
pub fn is_dedekind_interval(iv: &IntervalOfGroups) -> bool {
    let g = iv.group();
    let h = iv.bottom();
    let top = iv.top();
    iv.subgroups().iter().all(|k| {
        top.elements()
            .all(|x| double_coset(g, h, x, k) == double_coset(g, k, x, h))
    })
}

pub fn is_cyclic_interval(iv: &IntervalOfGroups) -> bool {
    iv.lattice().is_distributive() && is_dedekind_interval(iv)
}

pub fn coatom_index_sum(iv: &IntervalOfGroups, side: Side) -> Rational {
    let lattice = iv.lattice();
    if lattice.len() == 1 {
        return Rational::from_integer(0);
    }
    match side {
        Side::Up => {
            let top = iv.top().order() as u64;
            lattice
                .coatoms()
                .into_iter()
                .map(|m| Rational::new(iv.subgroup(m).order() as u64, top))
                .sum()
        }
        Side::Down => {
            let bottom = iv.bottom().order() as u64;
            lattice
                .atoms()
                .into_iter()
                .map(|m| Rational::new(bottom, iv.subgroup(m).order() as u64))
                .sum()
        }
    }
}

/// Irreducible `V` with `G_(V^H) = H` on a distributive interval.
pub fn dual_ore_check(iv: &IntervalOfGroups, table: &CharacterTable) -> Result<DualOreVerdict> {
    if !iv.lattice().is_distributive() {
        return Err(Error::NotDistributive);
    }
    let chars = table.stabilizer_characters(iv.bottom())?;
    Ok(match chars.first() {
        Some(&i) => DualOreVerdict::Holds {
            character: i,
            degree: table.degree(i),
        },
        None => DualOreVerdict::Counterexample,
    })
}

fn step_ok(lattice: &FiniteLattice, mode: ChainMode) -> bool {
    match mode {
        ChainMode::Distributive => lattice.is_distributive(),
        ChainMode::BottomBoolean => lattice.is_distributive() || lattice.is_bottom_boolean(),
    }
}

/// Fewest steps `{e} = H_0 < … < H_ℓ = G` with every `[H_i, H_{i+1}]`
/// satisfying the mode predicate.
pub fn distributive_chain_length(sl: &SubgroupLattice, mode: ChainMode) -> Result<usize> {
    let start = sl.trivial_index();
    let goal = sl.top_index();
    let lattice = sl.lattice();
    let mut dist = vec![usize::MAX; sl.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        if a == goal {
            return Ok(dist[a]);
        }
        // try the largest targets first so the goal is reached early
        for b in (0..sl.len()).rev() {
            if b == a || dist[b] != usize::MAX || !lattice.leq(a, b) {
                continue;
            }
            if step_ok(&lattice.interval(a, b).0, mode) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    Err(Error::NoChain)
}

pub fn check_upper_bound(sl: &SubgroupLattice, table: &CharacterTable) -> Result<BoundCheck> {
    let min_faithful = table.min_faithful_components()?;
    let chain_length = distributive_chain_length(sl, ChainMode::Distributive)?;
    Ok(BoundCheck {
        min_faithful,
        chain_length,
        ok: min_faithful <= chain_length,
    })
}

/// `G / core(H)` admits a faithful irreducible: some character kernel is exactly the core.
pub fn dual_side_linearly_primitive(table: &CharacterTable, h: &Subgroup) -> Result<bool> {
    let core = table.group().core(h);
    Ok(table.kernels()?.contains(&core))
}

pub fn classify_interval(iv: &IntervalOfGroups, table: &CharacterTable) -> Result<IntervalReport> {
    let g = iv.group();
    let h = iv.bottom();
    let lattice = iv.lattice();
    let distributive = lattice.is_distributive();
    let boolean = lattice.is_boolean();
    let dedekind = is_dedekind_interval(iv);
    let witness = is_h_cyclic(g, h);
    let ore_witness = if distributive {
        Some(ore_witness_distributive(iv)?)
    } else {
        None
    };
    let dual_ore = if distributive {
        Some(dual_ore_check(iv, table)?)
    } else {
        None
    };
    let subgroup = g.describe(h);
    let report = IntervalReport {
        id: format!("{}:[{}]", g.name(), subgroup),
        group: g.name().to_string(),
        group_order: g.order(),
        subgroup,
        subgroup_order: h.order(),
        lattice_size: lattice.len(),
        height: lattice.height(),
        coatoms: if lattice.len() == 1 { 0 } else { lattice.coatoms().len() },
        atoms: if lattice.len() == 1 { 0 } else { lattice.atoms().len() },
        core_free: g.core(h).is_trivial(),
        distributive,
        boolean,
        top_boolean: lattice.is_top_boolean(),
        bottom_boolean: lattice.is_bottom_boolean(),
        dedekind,
        cyclic: distributive && dedekind,
        h_cyclic: witness.is_some(),
        linearly_primitive: table.is_linearly_primitive_interval(h)?,
        dual_side_linearly_primitive: dual_side_linearly_primitive(table, h)?,
        witness: witness.map(|x| g.element(x).to_string()),
        ore_witness: ore_witness.map(|x| g.element(x).to_string()),
        coatom_sum_up: coatom_index_sum(iv, Side::Up),
        coatom_sum_down: coatom_index_sum(iv, Side::Down),
        dual_ore,
    };
    if !report.is_consistent() {
        return Err(Error::WitnessVerificationFailed(format!(
            "inconsistent report for {}",
            report.id
        )));
    }
    Ok(report)
}
