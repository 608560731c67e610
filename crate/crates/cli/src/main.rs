use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use orelab_core::boxmodel::{enumerate_biprojections, w_cyclic_witness};
use orelab_core::catalog::parse_entry;
use orelab_core::iso::are_isomorphic;
use orelab_core::orelab::ore_witness_distributive;
use orelab_core::sublattice::all_subgroups_capped;
use orelab_core::{
    builtin, classify_interval, scan, Catalog, CharacterTable, FusionRing, Group, IntervalReport,
    Permutation, ScanOptions, Subgroup, SubgroupLattice, TwoBox,
};

#[derive(Parser)]
#[command(name = "orelab", version, about = "Ore-type cyclicity checks on intervals of finite groups")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest group order accepted.
    #[arg(long, global = true, env = "ORELAB_CAP_ORDER", default_value_t = 10080)]
    cap_order: usize,
    /// Largest group order for subgroup enumeration.
    #[arg(long, global = true, env = "ORELAB_CAP_SUBGROUPS", default_value_t = 720)]
    cap_subgroups: usize,
}

#[derive(Args)]
struct GroupArgs {
    /// Builtin name (C12, S4, Z/2×Z/2, SL(2,3), ...) or `name; degree; generators`.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct SubgroupArgs {
    /// `e`, or generators in cycle notation, e.g. "(0 1),(1 2 3)".
    #[arg(long, conflicts_with = "subgroup_catalog")]
    subgroup: Option<String>,
    /// First subgroup (in lattice order) isomorphic to this builtin group.
    #[arg(long)]
    subgroup_catalog: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one interval [H, G] and print its report as JSON.
    AnalyzeInterval {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// Scan every interval of every catalog group.
    ScanCorpus {
        /// Catalog file, one group per line; builtin catalog when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// CSV summary, one line per interval.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timing (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        #[arg(long, hide = true)]
        mock_counterexample: bool,
    },
    /// Character table over F_p as JSON.
    CharTable {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Constructive witness g with ⟨H, g⟩ = G for a distributive interval.
    OreWitness {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// Box-model checks: w-cyclicity and biprojections.
    BoxCheck {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Verify fusion-ring axioms from a JSON list of matrices.
    FusionVerify { path: PathBuf },
    /// Export the lattice of [H, G] as JSON adjacency.
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
}

fn load_group(spec: &str, caps: &Caps) -> Result<Arc<Group>> {
    let g = parse_entry(spec).with_context(|| format!("group `{spec}`"))?;
    if g.order() > caps.cap_order {
        bail!("group order {} exceeds cap {}", g.order(), caps.cap_order);
    }
    Ok(Arc::new(g))
}

fn lattice_of(g: &Arc<Group>, caps: &Caps) -> Result<SubgroupLattice> {
    Ok(all_subgroups_capped(g.clone(), caps.cap_subgroups)?)
}

fn resolve_subgroup(g: &Group, sl: &SubgroupLattice, args: &SubgroupArgs) -> Result<Subgroup> {
    match (&args.subgroup, &args.subgroup_catalog) {
        (Some(spec), None) => {
            let spec = spec.trim();
            if spec == "e" || spec == "()" {
                return Ok(g.trivial_subgroup());
            }
            let gens = Permutation::parse_list(spec, g.degree())?;
            Ok(g.subgroup_generated(&gens)?)
        }
        (None, Some(name)) => {
            let target = builtin(name)?;
            for k in sl.nodes() {
                if k.order() == target.order()
                    && are_isomorphic(&g.subgroup_as_group(k), &target)?.is_some()
                {
                    return Ok(k.clone());
                }
            }
            bail!("no subgroup of {} isomorphic to {name}", g.name())
        }
        _ => bail!("give exactly one of --subgroup or --subgroup-catalog"),
    }
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    group: &'a str,
    subgroup: &'a str,
    subgroup_order: usize,
    lattice_size: usize,
    height: usize,
    distributive: bool,
    boolean: bool,
    top_boolean: bool,
    bottom_boolean: bool,
    dedekind: bool,
    cyclic: bool,
    h_cyclic: bool,
    linearly_primitive: bool,
    dual_side_linearly_primitive: bool,
    coatom_sum_up: String,
    coatom_sum_down: String,
    dual_ore: &'a str,
}

fn csv_row(r: &IntervalReport) -> CsvRow<'_> {
    CsvRow {
        id: &r.id,
        group: &r.group,
        subgroup: &r.subgroup,
        subgroup_order: r.subgroup_order,
        lattice_size: r.lattice_size,
        height: r.height,
        distributive: r.distributive,
        boolean: r.boolean,
        top_boolean: r.top_boolean,
        bottom_boolean: r.bottom_boolean,
        dedekind: r.dedekind,
        cyclic: r.cyclic,
        h_cyclic: r.h_cyclic,
        linearly_primitive: r.linearly_primitive,
        dual_side_linearly_primitive: r.dual_side_linearly_primitive,
        coatom_sum_up: r.coatom_sum_up.to_string(),
        coatom_sum_down: r.coatom_sum_down.to_string(),
        dual_ore: match &r.dual_ore {
            None => "",
            Some(v) if v.holds() => "holds",
            Some(_) => "counterexample",
        },
    }
}

fn scan_corpus(
    caps: &Caps,
    catalog: Option<PathBuf>,
    csv: bool,
    out: Option<PathBuf>,
    timing: bool,
    mock: bool,
) -> Result<i32> {
    let catalog = match catalog {
        Some(path) => Catalog::parse(
            &fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?,
        ),
        None => Catalog::builtin(),
    };
    let opts = ScanOptions {
        order_cap: caps.cap_order,
        subgroup_cap: caps.cap_subgroups,
        mock_counterexample: mock,
    };
    let start = Instant::now();
    let mut report = scan(&catalog, &opts);
    if timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let body = if csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &report.rows {
            w.serialize(csv_row(r))?;
        }
        String::from_utf8(w.into_inner()?)?
    } else {
        serde_json::to_string_pretty(&report)? + "\n"
    };
    match out {
        Some(path) => fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    let c = &report.counts;
    eprintln!(
        "catalog {} | {} groups, {} intervals, cyclic {} ({}), distributive {}, violations {}, counterexamples {}, errors {}",
        &report.catalog.sha256[..12],
        c.groups,
        c.intervals,
        c.cyclic,
        c.cyclic_fraction,
        c.distributive,
        report.violations.len(),
        report.counterexamples.len(),
        report.errors.len()
    );
    for e in &report.errors {
        eprintln!("error: {}: {}", e.entry, e.error);
    }
    for v in &report.violations {
        eprintln!("violation: {}: {}", v.id, v.statement);
    }
    Ok(report.exit_status())
}

fn run(cli: Cli) -> Result<i32> {
    let caps = &cli.caps;
    match cli.command {
        Command::AnalyzeInterval { group, subgroup } => {
            let g = load_group(&group.group, caps)?;
            let sl = lattice_of(&g, caps)?;
            let h = resolve_subgroup(&g, &sl, &subgroup)?;
            let table = CharacterTable::new(g.clone())?;
            let report = classify_interval(&sl.interval(&h)?, &table)?;
            print_json(&report)?;
        }
        Command::ScanCorpus {
            catalog,
            json: _,
            csv,
            out,
            timing,
            mock_counterexample,
        } => return scan_corpus(caps, catalog, csv, out, timing, mock_counterexample),
        Command::CharTable { group } => {
            let g = load_group(&group.group, caps)?;
            print_json(&CharacterTable::new(g)?.to_json())?;
        }
        Command::OreWitness { group, subgroup } => {
            let g = load_group(&group.group, caps)?;
            let sl = lattice_of(&g, caps)?;
            let h = resolve_subgroup(&g, &sl, &subgroup)?;
            let iv = sl.interval(&h)?;
            let w = ore_witness_distributive(&iv)?;
            let verified = g.join_element(&h, w) == g.whole();
            print_json(&serde_json::json!({
                "group": g.name(),
                "subgroup": g.describe(&h),
                "witness": g.element(w).to_string(),
                "witness_order": g.element_order(w),
                "verified": verified,
            }))?;
            if !verified {
                bail!("witness failed verification");
            }
        }
        Command::BoxCheck { group } => {
            let g = load_group(&group.group, caps)?;
            let witness = w_cyclic_witness(&g)?;
            let e1 = TwoBox::e1(g.clone());
            let id = TwoBox::id(g.clone());
            let mut out = serde_json::json!({
                "group": g.name(),
                "order": g.order(),
                "w_cyclic": witness.is_some(),
                "witness": witness.map(|w| g.element(w).to_string()),
                "cyclic_group": g.is_cyclic(),
                "trace_e1": e1.trace().to_string(),
                "trace_id": id.trace().to_string(),
                "delta": e1.delta().to_string(),
            });
            if g.order() <= 24 {
                let biprojections: Vec<BTreeMap<String, String>> =
                    enumerate_biprojections(&g)?.iter().map(TwoBox::to_literal).collect();
                let subgroups = lattice_of(&g, caps)?.len();
                out["biprojections"] = serde_json::json!(biprojections.len());
                out["subgroups"] = serde_json::json!(subgroups);
                out["biprojection_supports"] = serde_json::json!(biprojections);
            }
            print_json(&out)?;
        }
        Command::FusionVerify { path } => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let ring = FusionRing::from_json(&text)?;
            let dims = ring.fp_dimensions()?;
            let subrings = ring.fusion_subrings()?;
            print_json(&serde_json::json!({
                "valid": true,
                "rank": ring.rank(),
                "duals": ring.duals(),
                "dims": dims,
                "global_dimension": dims.iter().map(|d| d * d).sum::<u64>(),
                "subrings": subrings,
                "simple": ring.is_simple()?,
            }))?;
        }
        Command::Lattice { group, subgroup } => {
            let g = load_group(&group.group, caps)?;
            let sl = lattice_of(&g, caps)?;
            let h = if subgroup.subgroup.is_none() && subgroup.subgroup_catalog.is_none() {
                g.trivial_subgroup()
            } else {
                resolve_subgroup(&g, &sl, &subgroup)?
            };
            let iv = sl.interval(&h)?;
            let lat = iv.lattice();
            let nodes: Vec<_> = iv
                .subgroups()
                .iter()
                .enumerate()
                .map(|(i, k)| {
                    serde_json::json!({
                        "id": i,
                        "order": k.order(),
                        "generators": g.describe(k),
                        "covers": lat.covers_of(i),
                    })
                })
                .collect();
            print_json(&serde_json::json!({
                "group": g.name(),
                "bottom": g.describe(&h),
                "distributive": lat.is_distributive(),
                "nodes": nodes,
            }))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let closed_pipe = e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe);
            if closed_pipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
