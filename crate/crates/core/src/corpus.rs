//! Catalog scans: every interval `[H, G]` of every catalog group, classified,
//! checked against the theorems and screened for conjecture counterexamples.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::boxmodel::is_w_cyclic_model;
use crate::catalog::{parse_entry, Catalog};
use crate::chartable::CharacterTable;
use crate::error::Result;
use crate::group::{Group, DEFAULT_ORDER_CAP};
use crate::orelab::{
    check_upper_bound, classify_interval, is_cyclic_interval, ore_witness_distributive,
    DualOreVerdict, IntervalReport, Rational,
};
use crate::sublattice::{all_subgroups_capped, SubgroupLattice, DEFAULT_SUBGROUP_CAP};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub order_cap: usize,
    pub subgroup_cap: usize,
    /// Flips the first dual-Ore verdict to a counterexample, to exercise the
    /// reporting path. Marked in the report.
    pub mock_counterexample: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            order_cap: DEFAULT_ORDER_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            mock_counterexample: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogDescription {
    pub entries: Vec<String>,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub entry: String,
    pub name: String,
    pub order: usize,
    pub subgroups: usize,
    pub cyclic_group: bool,
    pub cyclic_lattice: bool,
    pub w_cyclic_model: bool,
    pub faithful_irreducible: bool,
    pub linearly_primitive_by_stabilizer: bool,
    pub min_faithful_components: usize,
    pub distributive_chain_length: usize,
    pub bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub statement: String,
    pub id: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub conjecture: String,
    pub id: String,
    pub synthetic: bool,
    pub context: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupError {
    pub entry: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counts {
    pub groups: usize,
    pub intervals: usize,
    pub cyclic: usize,
    pub distributive: usize,
    pub h_cyclic: usize,
    pub linearly_primitive: usize,
    pub dual_ore_holds: usize,
    pub dual_ore_counterexamples: usize,
    pub bound_ok: usize,
    pub bound_counterexamples: usize,
    /// `cyclic / intervals` in lowest terms.
    pub cyclic_fraction: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub tool_version: String,
    pub catalog: CatalogDescription,
    pub mock: bool,
    pub counts: Counts,
    pub groups: Vec<GroupSummary>,
    pub rows: Vec<IntervalReport>,
    pub violations: Vec<Violation>,
    pub counterexamples: Vec<Counterexample>,
    pub errors: Vec<GroupError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl CorpusReport {
    /// 0 clean, 2 conjecture counterexample, 1 theorem violation or failure.
    pub fn exit_status(&self) -> i32 {
        if !self.violations.is_empty() || !self.errors.is_empty() {
            1
        } else if !self.counterexamples.is_empty() {
            2
        } else {
            0
        }
    }

    /// Aggregate counts recomputed from the rows and group summaries.
    pub fn tally(rows: &[IntervalReport], groups: &[GroupSummary]) -> Counts {
        let count = |f: &dyn Fn(&IntervalReport) -> bool| rows.iter().filter(|r| f(r)).count();
        let cyclic = count(&|r| r.cyclic);
        let fraction = if rows.is_empty() {
            "0/0".to_string()
        } else {
            Rational::new(cyclic as u64, rows.len() as u64).to_string()
        };
        Counts {
            groups: groups.len(),
            intervals: rows.len(),
            cyclic,
            distributive: count(&|r| r.distributive),
            h_cyclic: count(&|r| r.h_cyclic),
            linearly_primitive: count(&|r| r.linearly_primitive),
            dual_ore_holds: count(&|r| r.dual_ore.as_ref().is_some_and(DualOreVerdict::holds)),
            dual_ore_counterexamples: count(&|r| {
                r.dual_ore.as_ref().is_some_and(|v| !v.holds())
            }),
            bound_ok: groups.iter().filter(|g| g.bound_ok).count(),
            bound_counterexamples: groups.iter().filter(|g| !g.bound_ok).count(),
            cyclic_fraction: fraction,
        }
    }

    pub fn counts_match_rows(&self) -> bool {
        let t = Self::tally(&self.rows, &self.groups);
        serde_json::to_value(&t).ok() == serde_json::to_value(&self.counts).ok()
    }
}

/// Theorem-backed implications for one interval; returns the names of the
/// statements that fail.
pub fn interval_violations(r: &IntervalReport) -> Vec<&'static str> {
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    let lp = r.linearly_primitive;
    let checks: [(&'static str, bool); 13] = [
        ("ore: distributive implies H-cyclic", !r.distributive || (r.h_cyclic && r.ore_witness.is_some())),
        ("distributive implies top and bottom boolean", !r.distributive || (r.top_boolean && r.bottom_boolean)),
        ("coatom sum at most 1 implies H-cyclic", r.coatom_sum_up > one || r.h_cyclic),
        ("atom sum at most 1 implies linearly primitive", r.coatom_sum_down > one || lp),
        ("at most two coatoms implies H-cyclic", r.coatoms > 2 || r.h_cyclic),
        ("at most two atoms implies linearly primitive", r.atoms > 2 || lp),
        ("distributive with coatom sum at most 2 implies H-cyclic", !r.distributive || r.coatom_sum_up > two || r.h_cyclic),
        ("distributive with atom sum at most 2 implies linearly primitive", !r.distributive || r.coatom_sum_down > two || lp),
        ("distributive with fewer than 32 nodes is w-cyclic on both sides", !r.distributive || r.lattice_size >= 32 || (r.h_cyclic && lp)),
        ("linearly primitive interval implies linearly primitive core quotient", !lp || r.dual_side_linearly_primitive),
        ("maximal interval is cyclic", r.lattice_size != 2 || r.cyclic),
        ("cyclic implies Dedekind and distributive", !r.cyclic || (r.dedekind && r.distributive)),
        ("report consistency", r.is_consistent()),
    ];
    checks.iter().filter(|c| !c.1).map(|c| c.0).collect()
}

struct GroupScan {
    summary: GroupSummary,
    rows: Vec<IntervalReport>,
    violations: Vec<Violation>,
}

fn scan_group(entry: &str, opts: &ScanOptions) -> Result<GroupScan> {
    let group = parse_entry(entry)?;
    if group.order() > opts.order_cap {
        return Err(crate::error::Error::CapExceeded {
            what: "group order",
            limit: opts.order_cap,
            actual: group.order(),
        });
    }
    let group = Arc::new(group);
    let sl = all_subgroups_capped(group.clone(), opts.subgroup_cap)?;
    let table = CharacterTable::new(group.clone())?;
    let mut rows = Vec::with_capacity(sl.len());
    let mut violations = Vec::new();
    for i in 0..sl.len() {
        let iv = sl.interval_between(i, sl.top_index());
        let row = classify_interval(&iv, &table)?;
        for statement in interval_violations(&row) {
            violations.push(Violation {
                statement: statement.to_string(),
                id: row.id.clone(),
            });
        }
        if row.distributive {
            // the constructive witness must also be reproducible on its own
            ore_witness_distributive(&iv)?;
        }
        rows.push(row);
    }
    let summary = summarize(entry, &group, &sl, &table)?;
    let gid = group.name().to_string();
    let group_checks = [
        ("ore: cyclic lattice iff cyclic group", summary.cyclic_lattice == summary.cyclic_group),
        ("w-cyclic model iff cyclic group", summary.w_cyclic_model == summary.cyclic_group),
        (
            "faithful irreducible iff trivial interval linearly primitive",
            summary.faithful_irreducible == summary.linearly_primitive_by_stabilizer,
        ),
    ];
    for (statement, ok) in group_checks {
        if !ok {
            violations.push(Violation {
                statement: statement.to_string(),
                id: gid.clone(),
            });
        }
    }
    Ok(GroupScan {
        summary,
        rows,
        violations,
    })
}

fn summarize(
    entry: &str,
    group: &Arc<Group>,
    sl: &SubgroupLattice,
    table: &CharacterTable,
) -> Result<GroupSummary> {
    let bottom = sl.interval_between(sl.trivial_index(), sl.top_index());
    let bound = check_upper_bound(sl, table)?;
    Ok(GroupSummary {
        entry: entry.to_string(),
        name: group.name().to_string(),
        order: group.order(),
        subgroups: sl.len(),
        cyclic_group: group.is_cyclic(),
        cyclic_lattice: is_cyclic_interval(&bottom),
        w_cyclic_model: is_w_cyclic_model(group)?,
        faithful_irreducible: table.has_faithful_irreducible()?,
        linearly_primitive_by_stabilizer: table
            .is_linearly_primitive_interval(&group.trivial_subgroup())?,
        min_faithful_components: bound.min_faithful,
        distributive_chain_length: bound.chain_length,
        bound_ok: bound.ok,
    })
}

pub fn scan(catalog: &Catalog, opts: &ScanOptions) -> CorpusReport {
    let results: Vec<(String, Result<GroupScan>)> = catalog
        .entries
        .par_iter()
        .map(|e| (e.clone(), scan_group(e, opts)))
        .collect();
    let mut groups = Vec::new();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    for (entry, res) in results {
        match res {
            Ok(scan) => {
                groups.push(scan.summary);
                rows.extend(scan.rows);
                violations.extend(scan.violations);
            }
            Err(e) => errors.push(GroupError {
                entry,
                error: e.to_string(),
            }),
        }
    }
    if opts.mock_counterexample {
        if let Some(r) = rows.iter_mut().find(|r| r.distributive) {
            r.dual_ore = Some(DualOreVerdict::Counterexample);
        }
    }
    let mut counterexamples = Vec::new();
    for r in &rows {
        if r.dual_ore == Some(DualOreVerdict::Counterexample) {
            counterexamples.push(Counterexample {
                conjecture: "distributive interval admits V with G_(V^H) = H".into(),
                id: r.id.clone(),
                synthetic: opts.mock_counterexample,
                context: serde_json::to_value(r).expect("row serializes"),
            });
        }
    }
    for g in &groups {
        if !g.bound_ok {
            counterexamples.push(Counterexample {
                conjecture: "faithful components at most distributive chain length".into(),
                id: g.name.clone(),
                synthetic: false,
                context: serde_json::to_value(g).expect("summary serializes"),
            });
        }
    }
    let counts = CorpusReport::tally(&rows, &groups);
    CorpusReport {
        tool_version: TOOL_VERSION.to_string(),
        catalog: CatalogDescription {
            entries: catalog.entries.clone(),
            sha256: catalog.hash(),
        },
        mock: opts.mock_counterexample,
        counts,
        groups,
        rows,
        violations,
        counterexamples,
        errors,
        timing_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(text: &str) -> Catalog {
        Catalog::parse(text)
    }

    #[test]
    fn empty_catalog() {
        let r = scan(&cat(""), &ScanOptions::default());
        assert_eq!(r.counts.intervals, 0);
        assert_eq!(r.exit_status(), 0);
        assert!(r.counts_match_rows());
    }

    #[test]
    fn small_scan_is_clean() {
        let r = scan(&cat("S3\nC6\nZ/2×Z/2\n"), &ScanOptions::default());
        assert_eq!(r.counts.groups, 3);
        assert_eq!(r.counts.intervals, 6 + 4 + 5);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.exit_status(), 0);
        assert!(r.counts_match_rows());
    }

    #[test]
    fn maximal_interval_counts_as_cyclic() {
        // C2 has two intervals: the maximal [e, C2] and the degenerate one
        let r = scan(&cat("C2"), &ScanOptions::default());
        assert_eq!(r.counts.intervals, 2);
        assert_eq!(r.counts.cyclic, 2);
        let maximal: Vec<_> = r.rows.iter().filter(|r| r.lattice_size == 2).collect();
        assert_eq!(maximal.len(), 1);
        assert!(maximal[0].cyclic);
    }

    #[test]
    fn mock_triggers_exit_two() {
        let opts = ScanOptions {
            mock_counterexample: true,
            ..ScanOptions::default()
        };
        let r = scan(&cat("C4"), &opts);
        assert_eq!(r.exit_status(), 2);
        assert!(r.counterexamples[0].synthetic);
    }

    #[test]
    fn bad_entry_is_recorded() {
        let r = scan(&cat("C4\nNOPE\n"), &ScanOptions::default());
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.counts.groups, 1);
        assert_eq!(r.exit_status(), 1);
    }
}
