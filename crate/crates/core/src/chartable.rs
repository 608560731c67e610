//! Character tables over F_p by simultaneous diagonalisation of class matrices,
//! and the fixed-point dimension calculus built on them.
//!
//! Every quantity exposed here (degrees, `dim V^K`, kernels, stabilisers) is a
//! rational integer bounded by `|G| < p/2`, so it is recovered exactly from its
//! residue.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup, DEFAULT_ORDER_CAP};
use crate::modp::{primes_congruent_one, Fp};

const SPLIT_SEED: u64 = 0x5eed_c4a2;
const RANDOM_SPLIT_ATTEMPTS: usize = 16;
const PRIME_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    pub inverse_class: usize,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<Group>,
    field: Fp,
    classes: Vec<ClassInfo>,
    class_of: Vec<usize>,
    /// `values[i][j]` = χ_i on class j, as a residue.
    values: Vec<Vec<u64>>,
    degrees: Vec<u64>,
}

/// `dim V_i^K` for one irreducible character and subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedPointProfile {
    pub character: usize,
    pub subgroup_order: usize,
    pub dim: u64,
}

/// Basis rows kept in reduced echelon form.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(f: &Fp, mut basis: Vec<Vec<u64>>) -> Self {
        let pivots = f.rref(&mut basis);
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn apply(f: &Fp, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

/// Splits `space` into eigenspaces of `m`; `None` if `m` is not diagonalisable on it.
fn split_space(f: &Fp, m: &[Vec<u64>], space: Space) -> Option<Vec<Space>> {
    let d = space.dim();
    if d == 1 {
        return Some(vec![space]);
    }
    let images: Vec<Vec<u64>> = space.basis.iter().map(|b| apply(f, m, b)).collect();
    // restricted[t][s] = coordinate t of M b_s
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|t| (0..d).map(|s| images[s][space.pivots[t]]).collect())
        .collect();
    let roots = f.roots(&f.charpoly(&restricted));
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|t| {
                (0..d)
                    .map(|s| {
                        let diag = if s == t { lambda } else { 0 };
                        f.sub(restricted[t][s], diag)
                    })
                    .collect()
            })
            .collect();
        let coords = f.nullspace(&shifted, d);
        total += coords.len();
        let vectors = coords
            .iter()
            .map(|c| {
                let mut v = vec![0; space.basis[0].len()];
                for (ct, bt) in c.iter().zip(&space.basis) {
                    for (x, &y) in v.iter_mut().zip(bt) {
                        *x = f.add(*x, f.mul(*ct, y));
                    }
                }
                v
            })
            .collect();
        parts.push(Space::new(f, vectors));
    }
    (total == d).then_some(parts)
}

fn int_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl CharacterTable {
    pub fn new(group: Arc<Group>) -> Result<Self> {
        if group.order() > DEFAULT_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "character table order",
                limit: DEFAULT_ORDER_CAP,
                actual: group.order(),
            });
        }
        let n = group.order() as u64;
        let exponent = group.exponent() as u64;
        for p in primes_congruent_one(exponent, 2 * n).take(PRIME_ATTEMPTS) {
            if let Some(table) = Self::with_prime(group.clone(), p) {
                return Ok(table);
            }
        }
        Err(Error::NoSuitablePrime)
    }

    fn with_prime(group: Arc<Group>, p: u64) -> Option<Self> {
        let f = Fp::new(p);
        let raw = group.conjugacy_classes();
        let class_of = group.class_map();
        let r = raw.len();
        let classes: Vec<ClassInfo> = raw
            .iter()
            .map(|c| ClassInfo {
                representative: c[0],
                size: c.len(),
                element_order: group.element_order(c[0]),
                inverse_class: class_of[group.inv(c[0])],
            })
            .collect();

        // class_matrices[j][k][l] = #{(x, y) : x ∈ C_j, y ∈ C_k, xy = rep_l}
        let mut class_matrices = vec![vec![vec![0u64; r]; r]; r];
        for (l, cl) in classes.iter().enumerate() {
            let z = cl.representative;
            for x in 0..group.order() {
                let y = group.mul(group.inv(x), z);
                class_matrices[class_of[x]][class_of[y]][l] += 1;
            }
        }
        for m in class_matrices.iter_mut().flatten().flatten() {
            *m %= p;
        }

        let identity: Vec<Vec<u64>> =
            (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
        let mut spaces = vec![Space::new(&f, identity)];
        for m in class_matrices.iter().skip(1) {
            if spaces.iter().all(|s| s.dim() == 1) {
                break;
            }
            let mut next = Vec::new();
            for s in spaces {
                next.extend(split_space(&f, m, s)?);
            }
            spaces = next;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut attempts = 0;
        while spaces.iter().any(|s| s.dim() > 1) {
            attempts += 1;
            if attempts > RANDOM_SPLIT_ATTEMPTS {
                return None;
            }
            let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
            let mut combo = vec![vec![0u64; r]; r];
            for (c, m) in coeffs.iter().zip(&class_matrices) {
                for (row, mrow) in combo.iter_mut().zip(m) {
                    for (x, &y) in row.iter_mut().zip(mrow) {
                        *x = f.add(*x, f.mul(*c, y));
                    }
                }
            }
            let mut next = Vec::new();
            for s in spaces {
                next.extend(split_space(&f, &combo, s)?);
            }
            spaces = next;
        }
        if spaces.len() != r {
            return None;
        }

        let order = group.order() as u64;
        let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
        for s in &spaces {
            let w0 = s.basis[0][0];
            if w0 == 0 {
                return None;
            }
            let inv0 = f.inv(w0);
            let w: Vec<u64> = s.basis[0].iter().map(|&x| f.mul(x, inv0)).collect();
            // Σ_j ω_j ω_{j*} / |C_j| = |G| / d²
            let sum = classes.iter().enumerate().fold(0, |acc, (j, c)| {
                let t = f.mul(w[j], w[c.inverse_class]);
                f.add(acc, f.div(t, c.size as u64 % p))
            });
            if sum == 0 {
                return None;
            }
            let d_sq = f.div(order % p, sum);
            let degree = (1..=int_sqrt(order)).find(|&d| f.mul(d, d) == d_sq && order.is_multiple_of(d))?;
            let values = classes
                .iter()
                .enumerate()
                .map(|(j, c)| f.div(f.mul(w[j], degree), c.size as u64 % p))
                .collect();
            rows.push((degree, values));
        }
        rows.sort_by(|a, b| {
            let trivial_a = a.1.iter().all(|&x| x == 1);
            let trivial_b = b.1.iter().all(|&x| x == 1);
            trivial_b.cmp(&trivial_a).then(a.cmp(b))
        });
        let table = CharacterTable {
            group,
            field: f,
            classes,
            class_of,
            degrees: rows.iter().map(|r| r.0).collect(),
            values: rows.into_iter().map(|r| r.1).collect(),
        };
        table.verify(&class_matrices).then_some(table)
    }

    /// Orthogonality relations, Σ d² = |G|, and the class-matrix eigen-equations.
    fn verify(&self, class_matrices: &[Vec<Vec<u64>>]) -> bool {
        let f = &self.field;
        let r = self.classes.len();
        let order = self.group.order() as u64;
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != order
            || self.degrees.iter().any(|d| !order.is_multiple_of(*d))
        {
            return false;
        }
        for a in 0..r {
            for b in 0..r {
                let s = (0..r).fold(0, |acc, j| {
                    let c = &self.classes[j];
                    let t = f.mul(self.values[a][j], self.values[b][c.inverse_class]);
                    f.add(acc, f.mul(t, c.size as u64))
                });
                if s != if a == b { order % f.modulus() } else { 0 } {
                    return false;
                }
                // column orthogonality: Σ_i χ_i(a) χ_i(b*) = δ_ab |G|/|C_a|
                let s = (0..r).fold(0, |acc, i| {
                    let t = self.values[i][a];
                    f.add(acc, f.mul(t, self.values[i][self.classes[b].inverse_class]))
                });
                let expected = if a == b {
                    (order / self.classes[a].size as u64) % f.modulus()
                } else {
                    0
                };
                if s != expected {
                    return false;
                }
            }
        }
        // central character ω_j = |C_j| χ(g_j) / χ(1) solves M_j ω = ω_j ω
        for i in 0..r {
            let omega: Vec<u64> = (0..r)
                .map(|j| {
                    f.div(
                        f.mul(self.classes[j].size as u64, self.values[i][j]),
                        self.degrees[i],
                    )
                })
                .collect();
            for (j, m) in class_matrices.iter().enumerate() {
                let lhs = apply(f, m, &omega);
                if lhs.iter().zip(&omega).any(|(&x, &w)| x != f.mul(omega[j], w)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_characters(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// χ_i(x) as a residue.
    pub fn value(&self, i: usize, x: usize) -> u64 {
        self.values[i][self.class_of[x]]
    }

    /// `dim V_i^K = |K|⁻¹ Σ_{k∈K} χ_i(k)`, lifted from F_p into `[0, deg χ_i]`.
    pub fn fixed_point_dim(&self, i: usize, k: &Subgroup) -> Result<u64> {
        let f = &self.field;
        let mut counts = vec![0u64; self.classes.len()];
        for x in k.elements() {
            counts[self.class_of[x]] += 1;
        }
        let sum = counts
            .iter()
            .zip(&self.values[i])
            .fold(0, |acc, (&c, &v)| f.add(acc, f.mul(c % f.modulus(), v)));
        let residue = f.div(sum, k.order() as u64 % f.modulus());
        if residue > self.degrees[i] {
            return Err(Error::LiftOutOfRange {
                residue,
                degree: self.degrees[i],
            });
        }
        Ok(residue)
    }

    pub fn fixed_point_profile(&self, i: usize, k: &Subgroup) -> Result<FixedPointProfile> {
        Ok(FixedPointProfile {
            character: i,
            subgroup_order: k.order(),
            dim: self.fixed_point_dim(i, k)?,
        })
    }

    /// `{g : dim V_i^⟨g⟩ = deg χ_i}`.
    pub fn character_kernel(&self, i: usize) -> Result<Subgroup> {
        let g = &self.group;
        let mut set = ElemSet::new(g.order());
        for x in 0..g.order() {
            if self.fixed_point_dim(i, &g.generate(&[x]))? == self.degrees[i] {
                set.insert(x);
            }
        }
        let kernel = g.subgroup_from_set(set)?;
        if !g.is_normal(&kernel) {
            return Err(Error::WitnessVerificationFailed(format!(
                "kernel of character {i} is not normal"
            )));
        }
        Ok(kernel)
    }

    pub fn kernels(&self) -> Result<Vec<Subgroup>> {
        (0..self.num_characters()).map(|i| self.character_kernel(i)).collect()
    }

    /// The distinct subgroups `⟨H, g⟩` for `g ∉ H`.
    fn one_step_overgroups(&self, h: &Subgroup) -> Vec<Subgroup> {
        let g = &self.group;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let k = g.join_element(h, x);
            if seen.insert(k.set().clone()) {
                out.push(k);
            }
        }
        out
    }

    fn stabilizer_is_h(&self, i: usize, h: &Subgroup, overgroups: &[Subgroup]) -> Result<bool> {
        let base = self.fixed_point_dim(i, h)?;
        for k in overgroups {
            if self.fixed_point_dim(i, k)? >= base {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the pointwise stabiliser of `V_i^H` is exactly `H`: every
    /// `g ∉ H` strictly shrinks the fixed space.
    pub fn pointwise_stabilizer_is_h(&self, i: usize, h: &Subgroup) -> Result<bool> {
        self.stabilizer_is_h(i, h, &self.one_step_overgroups(h))
    }

    /// Characters realising `G_(V^H) = H`.
    pub fn stabilizer_characters(&self, h: &Subgroup) -> Result<Vec<usize>> {
        let over = self.one_step_overgroups(h);
        let mut out = Vec::new();
        for i in 0..self.num_characters() {
            if self.stabilizer_is_h(i, h, &over)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn is_linearly_primitive_interval(&self, h: &Subgroup) -> Result<bool> {
        let over = self.one_step_overgroups(h);
        for i in 0..self.num_characters() {
            if self.stabilizer_is_h(i, h, &over)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Smallest number of irreducible constituents of a faithful representation:
    /// the least `r` such that some `r` character kernels meet trivially.
    pub fn min_faithful_components(&self) -> Result<usize> {
        let mut kernels: Vec<ElemSet> = Vec::new();
        for k in self.kernels()? {
            if !kernels.contains(k.set()) {
                kernels.push(k.set().clone());
            }
        }
        let n = self.group.order();
        let whole = ElemSet::full(n);
        for r in 0..=kernels.len() {
            if meets_trivially(&kernels, r, 0, &whole) {
                return Ok(r);
            }
        }
        unreachable!("the intersection of all kernels is trivial")
    }

    /// A faithful irreducible character exists (kernel route).
    pub fn has_faithful_irreducible(&self) -> Result<bool> {
        Ok(self.kernels()?.iter().any(Subgroup::is_trivial))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        serde_json::json!({
            "group": g.name(),
            "order": g.order(),
            "prime": self.prime(),
            "classes": self.classes.iter().map(|c| serde_json::json!({
                "representative": g.element(c.representative).to_string(),
                "size": c.size,
                "element_order": c.element_order,
            })).collect::<Vec<_>>(),
            "values": self.values,
            "degrees": self.degrees,
        })
    }
}

fn meets_trivially(kernels: &[ElemSet], r: usize, start: usize, acc: &ElemSet) -> bool {
    if r == 0 {
        return acc.len() == 1;
    }
    (start..kernels.len()).any(|i| meets_trivially(kernels, r - 1, i + 1, &acc.intersection(&kernels[i])))
}
