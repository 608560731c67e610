//! Arithmetic and linear algebra over a prime field F_p (p < 2^31).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 31 && is_prime(p));
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Reduces `rows` in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : A x = 0}` for an `m × n` matrix given by rows.
    pub fn nullspace(&self, a: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; ncols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(rows[r][f]);
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, a: &[Vec<u64>]) -> u64 {
        let n = a.len();
        let mut m = a.to_vec();
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
                return 0;
            };
            if pr != c {
                m.swap(pr, c);
                det = self.neg(det);
            }
            det = self.mul(det, m[c][c]);
            let inv = self.inv(m[c][c]);
            for i in c + 1..n {
                let f = self.mul(m[i][c], inv);
                if f != 0 {
                    for j in c..n {
                        let t = self.mul(f, m[c][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients from constant term up,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(u, h[m][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[i]);
                    row[m] = self.add(row[m], t);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut poly = vec![0; m + 1];
            for (k, &c) in prev.iter().enumerate() {
                poly[k + 1] = self.add(poly[k + 1], c);
                let t = self.mul(h[m - 1][m - 1], c);
                poly[k] = self.sub(poly[k], t);
            }
            let mut t = 1;
            for i in 1..m {
                t = self.mul(t, h[m - i][m - i - 1]);
                let coef = self.mul(t, h[m - i - 1][m - 1]);
                for (k, &c) in polys[m - i - 1].iter().enumerate() {
                    let s = self.mul(coef, c);
                    poly[k] = self.sub(poly[k], s);
                }
            }
            polys.push(poly);
        }
        polys.pop().expect("charpoly")
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in F_p, by exhaustive evaluation.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p ≡ 1 (mod m)` with `p > lower`, in increasing order.
pub fn primes_congruent_one(m: u64, lower: u64) -> impl Iterator<Item = u64> {
    let start = lower.div_ceil(m.max(1));
    (start..).map(move |k| k * m + 1).filter(|&p| is_prime(p))
}
