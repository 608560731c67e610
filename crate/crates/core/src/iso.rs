//! Isomorphism search between small permutation groups.
//!
//! Backtracking over images of a small generating set of the source group.
//! Candidate images must share element order and conjugacy-class size; each
//! partial assignment is extended to the subgroup it generates and rejected as
//! soon as it fails to be a well-defined injective homomorphism.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::group::Group;

pub const DEFAULT_ISO_CAP: usize = 720;

/// An isomorphism given as a full element map `source index -> target index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub generators: Vec<usize>,
    pub images: Vec<usize>,
    pub map: Vec<usize>,
}

impl Isomorphism {
    /// Re-checks bijectivity and the homomorphism property on all pairs.
    pub fn verify(&self, src: &Group, dst: &Group) -> bool {
        if self.map.len() != src.order() || src.order() != dst.order() {
            return false;
        }
        let mut hit = vec![false; dst.order()];
        for &y in &self.map {
            if std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..src.order()).all(|a| {
            (0..src.order()).all(|b| self.map[src.mul(a, b)] == dst.mul(self.map[a], self.map[b]))
        })
    }
}

fn class_sizes(g: &Group) -> Vec<usize> {
    let mut sizes = vec![0; g.order()];
    for class in g.conjugacy_classes() {
        for &x in class {
            sizes[x] = class.len();
        }
    }
    sizes
}

fn order_profile(g: &Group) -> Vec<(usize, usize)> {
    let sizes = class_sizes(g);
    let mut v: Vec<(usize, usize)> = (0..g.order()).map(|x| (g.element_order(x), sizes[x])).collect();
    v.sort_unstable();
    v
}

/// Calls `visit` on every isomorphism `src -> dst` until it returns `Break`.
pub fn for_each_isomorphism<F>(src: &Group, dst: &Group, cap: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&Isomorphism) -> ControlFlow<()>,
{
    for g in [src, dst] {
        if g.order() > cap {
            return Err(Error::CapExceeded {
                what: "isomorphism test order",
                limit: cap,
                actual: g.order(),
            });
        }
    }
    if src.order() != dst.order() || order_profile(src) != order_profile(dst) {
        return Ok(());
    }
    let gens = src.small_generating_set();
    let src_sizes = class_sizes(src);
    let dst_sizes = class_sizes(dst);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..dst.order())
                .filter(|&t| {
                    dst.element_order(t) == src.element_order(s) && dst_sizes[t] == src_sizes[s]
                })
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    let _ = search(src, dst, &gens, &candidates, &mut images, &mut visit);
    Ok(())
}

fn search<F>(
    src: &Group,
    dst: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Isomorphism) -> ControlFlow<()>,
{
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend(src, dst, gens, images) {
            if map.iter().all(|&y| y != usize::MAX) {
                return visit(&Isomorphism {
                    generators: gens.to_vec(),
                    images: images.clone(),
                    map,
                });
            }
        }
        return ControlFlow::Continue(());
    }
    for &t in &candidates[k] {
        images.push(t);
        if extend(src, dst, &gens[..=k], images).is_some() {
            search(src, dst, gens, candidates, images, visit)?;
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

/// Extends generator images to `⟨gens⟩`; `None` if inconsistent or not injective.
fn extend(src: &Group, dst: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    let mut used = vec![false; dst.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = dst.mul(map[x], t);
            if map[y] == usize::MAX {
                if std::mem::replace(&mut used[fy], true) {
                    return None;
                }
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Some isomorphism `g1 -> g2`, verified before it is returned.
pub fn are_isomorphic(g1: &Group, g2: &Group) -> Result<Option<Isomorphism>> {
    are_isomorphic_capped(g1, g2, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_capped(g1: &Group, g2: &Group, cap: usize) -> Result<Option<Isomorphism>> {
    let mut found = None;
    for_each_isomorphism(g1, g2, cap, |iso| {
        found = Some(iso.clone());
        ControlFlow::Break(())
    })?;
    if let Some(iso) = &found {
        if !iso.verify(g1, g2) {
            return Err(Error::WitnessVerificationFailed("isomorphism check".into()));
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn grp(gens: &[&str], n: usize) -> Group {
        Group::from_generators(
            gens.iter().map(|s| Permutation::parse_cycles(s, n).unwrap()).collect(),
            n,
        )
        .unwrap()
    }

    #[test]
    fn distinguishes_small_groups() {
        let c6 = grp(&["(0 1 2 3 4 5)"], 6);
        let s3 = grp(&["(0 1)", "(0 1 2)"], 3);
        assert!(are_isomorphic(&c6, &s3).unwrap().is_none());
        let v4 = grp(&["(0 1)(2 3)", "(0 2)(1 3)"], 4);
        let c4 = grp(&["(0 1 2 3)"], 4);
        assert!(are_isomorphic(&v4, &c4).unwrap().is_none());
        let iso = are_isomorphic(&s3, &s3).unwrap().unwrap();
        assert!(iso.verify(&s3, &s3));
        // C6 ≅ C2 × C3 on different points
        let c2c3 = grp(&["(0 1)", "(2 3 4)"], 5);
        assert!(are_isomorphic(&c6, &c2c3).unwrap().is_some());
    }

    #[test]
    fn counts_automorphisms() {
        let s3 = grp(&["(0 1)", "(0 1 2)"], 3);
        let mut n = 0;
        for_each_isomorphism(&s3, &s3, 720, |_| {
            n += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(n, 6);
        let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
        let mut n = 0;
        for_each_isomorphism(&s4, &s4, 720, |_| {
            n += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(n, 24);
    }

    #[test]
    fn respects_cap() {
        let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
        assert!(matches!(
            are_isomorphic_capped(&s4, &s4, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
