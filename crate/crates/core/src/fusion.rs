//! Fusion rings given by structure constants: axiom checks, integral
//! Frobenius–Perron dimensions and fusion subrings.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_SUBRING_RANK: usize = 20;

/// `N[i][j][k]` = multiplicity of `x_k` in `x_i · x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionRing {
    n: Vec<Vec<Vec<u64>>>,
    dual: Vec<usize>,
}

fn violation(kind: &str, indices: Vec<usize>) -> Error {
    Error::AxiomViolation {
        kind: kind.to_string(),
        indices,
    }
}

impl FusionRing {
    pub fn from_matrices(n: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let r = n.len();
        if r == 0 {
            return Err(violation("empty", vec![]));
        }
        for (i, m) in n.iter().enumerate() {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(violation("shape", vec![i]));
            }
        }
        for j in 0..r {
            for k in 0..r {
                let unit = u64::from(j == k);
                if n[0][j][k] != unit {
                    return Err(violation("left unit", vec![j, k]));
                }
                if n[j][0][k] != unit {
                    return Err(violation("right unit", vec![j, k]));
                }
            }
        }
        let mut dual = vec![0; r];
        for i in 0..r {
            let hits: Vec<usize> = (0..r).filter(|&j| n[i][j][0] != 0).collect();
            match hits.as_slice() {
                [j] if n[i][*j][0] == 1 => dual[i] = *j,
                _ => return Err(violation("duality", vec![i])),
            }
        }
        for i in 0..r {
            if dual[dual[i]] != i {
                return Err(violation("duality involution", vec![i, dual[i]]));
            }
        }
        let ring = FusionRing { n, dual };
        ring.check_associativity()?;
        Ok(ring)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mats: Vec<Vec<Vec<u64>>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_matrices(mats)
    }

    /// `(x_i x_j) x_l = x_i (x_j x_l)` coefficientwise, all `r⁴` quadruples.
    fn check_associativity(&self) -> Result<()> {
        let n = &self.n;
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                for l in 0..r {
                    for m in 0..r {
                        let lhs: u64 = (0..r).map(|t| n[i][j][t] * n[t][l][m]).sum();
                        let rhs: u64 = (0..r).map(|t| n[j][l][t] * n[i][t][m]).sum();
                        if lhs != rhs {
                            return Err(violation("associativity", vec![i, j, l, m]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n.len()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    /// Perron vector of `Σ_i N_i` (plus identity, to break periodicity).
    fn perron_seed(&self) -> Vec<f64> {
        let r = self.rank();
        let mut a = vec![vec![0f64; r]; r];
        for m in &self.n {
            for (j, row) in m.iter().enumerate() {
                for (k, &x) in row.iter().enumerate() {
                    a[j][k] += x as f64;
                }
            }
        }
        for (j, row) in a.iter_mut().enumerate() {
            row[j] += 1.0;
        }
        let mut v = vec![1f64; r];
        for _ in 0..500 {
            let w: Vec<f64> = a
                .iter()
                .map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum())
                .collect();
            let scale = w[0];
            v = w.iter().map(|x| x / scale).collect();
        }
        v
    }

    /// The integral dimension vector with `d_0 = 1` and
    /// `d_i d_j = Σ_k N_i[j][k] d_k`, verified exactly.
    pub fn fp_dimensions(&self) -> Result<Vec<u64>> {
        let seed = self.perron_seed();
        let d: Vec<u64> = seed.iter().map(|x| x.round().max(0.0) as u64).collect();
        let r = self.rank();
        let exact = d.iter().all(|&x| x >= 1)
            && (0..r).all(|i| {
                (0..r).all(|j| {
                    d[i] * d[j] == (0..r).map(|k| self.n[i][j][k] * d[k]).sum::<u64>()
                })
            });
        if exact {
            Ok(d)
        } else {
            Err(Error::NonIntegralDims(seed))
        }
    }

    pub fn global_dimension(&self) -> Result<u64> {
        Ok(self.fp_dimensions()?.iter().map(|d| d * d).sum())
    }

    /// All subsets containing the unit that are closed under duality and
    /// fusion, including `{0}` and the whole basis. Sorted by bitmask.
    pub fn fusion_subrings(&self) -> Result<Vec<Vec<usize>>> {
        let r = self.rank();
        if r > MAX_SUBRING_RANK {
            return Err(Error::CapExceeded {
                what: "fusion subring rank",
                limit: MAX_SUBRING_RANK,
                actual: r,
            });
        }
        let mut out = Vec::new();
        for mask in 0u32..1 << (r - 1) {
            let members: Vec<usize> = std::iter::once(0)
                .chain((1..r).filter(|i| mask >> (i - 1) & 1 == 1))
                .collect();
            let inside = |k: usize| k == 0 || mask >> (k - 1) & 1 == 1;
            let closed = members.iter().all(|&i| inside(self.dual[i]))
                && members.iter().all(|&i| {
                    members
                        .iter()
                        .all(|&j| (0..r).all(|k| self.n[i][j][k] == 0 || inside(k)))
                });
            if closed {
                out.push(members);
            }
        }
        Ok(out)
    }

    /// No fusion subring other than `{0}` and the whole ring.
    pub fn is_simple(&self) -> Result<bool> {
        let r = self.rank();
        Ok(self
            .fusion_subrings()?
            .iter()
            .all(|s| s.len() == 1 || s.len() == r))
    }

    /// Group ring of `Z/m`: `x_i x_j = x_{i+j mod m}`.
    pub fn cyclic_group_ring(m: usize) -> Self {
        let n = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| u64::from((i + j) % m == k)).collect())
                    .collect()
            })
            .collect();
        Self::from_matrices(n).expect("group ring axioms")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_cyclic_rings() {
        let one = FusionRing::from_matrices(vec![vec![vec![1]]]).unwrap();
        assert_eq!(one.fp_dimensions().unwrap(), vec![1]);
        assert_eq!(one.fusion_subrings().unwrap().len(), 1);
        let z2 = FusionRing::cyclic_group_ring(2);
        assert_eq!(z2.fp_dimensions().unwrap(), vec![1, 1]);
        let z4 = FusionRing::cyclic_group_ring(4);
        assert_eq!(z4.fusion_subrings().unwrap(), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert!(!z4.is_simple().unwrap());
        assert_eq!(z4.duals(), &[0, 3, 2, 1]);
    }

    #[test]
    fn axiom_violations() {
        let bad_unit = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]];
        assert!(matches!(
            FusionRing::from_matrices(bad_unit),
            Err(Error::AxiomViolation { kind, .. }) if kind == "left unit"
        ));
        let shape = vec![vec![vec![1]], vec![vec![1]]];
        assert!(matches!(
            FusionRing::from_matrices(shape),
            Err(Error::AxiomViolation { kind, .. }) if kind == "shape"
        ));
        // x1² = 2·x0 breaks duality multiplicity
        let dual = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![2, 0]]];
        assert!(matches!(
            FusionRing::from_matrices(dual),
            Err(Error::AxiomViolation { kind, .. }) if kind == "duality"
        ));
    }

    #[test]
    fn fibonacci_is_not_integral() {
        let fib = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let ring = FusionRing::from_matrices(fib).unwrap();
        assert!(matches!(ring.fp_dimensions(), Err(Error::NonIntegralDims(_))));
        assert!(ring.is_simple().unwrap());
    }
}
