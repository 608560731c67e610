use std::sync::Arc;

use orelab_core::catalog::{builtin, BUILTIN_CATALOG};
use orelab_core::modp::Fp;
use orelab_core::{all_subgroups, CharacterTable, Group, Subgroup};

fn table(name: &str) -> CharacterTable {
    CharacterTable::new(Arc::new(builtin(name).unwrap())).unwrap()
}

fn commutator_subgroup(g: &Group) -> Subgroup {
    let mut comms = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            comms.push(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
        }
    }
    comms.sort_unstable();
    comms.dedup();
    g.generate(&comms)
}

fn orbit_count(g: &Group, k: &Subgroup) -> u64 {
    let mut seen = vec![false; g.degree()];
    let mut orbits = 0;
    for start in 0..g.degree() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for h in k.elements() {
                let y = g.element(h).apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

#[test]
fn degrees_square_sum_and_counts() {
    for name in BUILTIN_CATALOG {
        let t = table(name);
        let g = t.group();
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), g.order() as u64, "{name}");
        assert_eq!(t.num_characters(), g.conjugacy_classes().len(), "{name}");
        let linear = t.degrees().iter().filter(|&&d| d == 1).count();
        assert_eq!(linear * commutator_subgroup(g).order(), g.order(), "{name}");
        for i in 0..t.num_characters() {
            assert!(g.is_normal(&t.character_kernel(i).unwrap()));
        }
    }
}

/// Orbits of `K` on points = `dim` of the `K`-fixed space of the permutation
/// module = `Σ_i ⟨π, χ_i⟩ dim V_i^K`.
#[test]
fn fixed_point_dims_reproduce_orbit_counts() {
    for name in ["S3", "D4", "Q8", "A4", "D5", "S4", "A5", "SL(2,3)", "C12", "Z/2×Z/2"] {
        let t = table(name);
        let g = t.group().clone();
        let f = Fp::new(t.prime());
        let n = g.order() as u64;
        let mult: Vec<u64> = (0..t.num_characters())
            .map(|i| {
                let s = (0..g.order()).fold(0, |acc, x| {
                    let fix = (0..g.degree()).filter(|&p| g.element(x).apply(p) == p).count();
                    f.add(acc, f.mul(fix as u64, t.value(i, g.inv(x))))
                });
                f.div(s, n % t.prime())
            })
            .collect();
        let sl = all_subgroups(g.clone()).unwrap();
        for k in sl.nodes() {
            let total: u64 = (0..t.num_characters())
                .map(|i| mult[i] * t.fixed_point_dim(i, k).unwrap())
                .sum();
            assert_eq!(total, orbit_count(&g, k), "{name} {}", g.describe(k));
        }
    }
}

#[test]
fn fixed_spaces_shrink_along_inclusions() {
    for name in ["S3", "D4", "A4", "D6", "S4", "SL(2,3)", "A5"] {
        let t = table(name);
        let sl = all_subgroups(t.group().clone()).unwrap();
        let lat = sl.lattice();
        for a in 0..sl.len() {
            for b in 0..sl.len() {
                if lat.leq(a, b) {
                    for i in 0..t.num_characters() {
                        assert!(
                            t.fixed_point_dim(i, sl.node(b)).unwrap()
                                <= t.fixed_point_dim(i, sl.node(a)).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn linear_primitivity_paths_agree() {
    for name in BUILTIN_CATALOG {
        let t = table(name);
        let g = t.group().clone();
        let by_kernel = t.has_faithful_irreducible().unwrap();
        let by_stabilizer = t.is_linearly_primitive_interval(&g.trivial_subgroup()).unwrap();
        let by_count = t.min_faithful_components().unwrap() <= 1;
        assert_eq!(by_kernel, by_stabilizer, "{name}");
        assert_eq!(by_kernel, by_count, "{name}");
        // core-free linearly primitive intervals force a faithful irreducible
        let sl = all_subgroups(g.clone()).unwrap();
        for h in sl.nodes() {
            if g.core(h).is_trivial() && t.is_linearly_primitive_interval(h).unwrap() {
                assert!(by_kernel, "{name} {}", g.describe(h));
            }
        }
    }
}

#[test]
fn faithful_component_fixtures() {
    assert_eq!(table("Z/2×Z/2").min_faithful_components().unwrap(), 2);
    assert_eq!(table("S3").min_faithful_components().unwrap(), 1);
    assert_eq!(table("Q8").min_faithful_components().unwrap(), 1);
    assert_eq!(table("C2×C2×C2×C2").min_faithful_components().unwrap(), 4);
}
