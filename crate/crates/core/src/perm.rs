//! Dense permutations on `{0, .., degree-1}`.
//!
//! Composition convention: `(p * q)(x) = p(q(x))`, i.e. `q` acts first.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Parse(format!("point {x} out of range for degree {degree}")));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::Parse(format!("point {x} repeated in cycles")));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `e` and `()` give the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &open[..close];
            let cycle = body
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{t}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    /// Parses a comma-separated generator list, e.g. `(0 1),(0 1 2 3)`.
    pub fn parse_list(text: &str, degree: usize) -> Result<Vec<Self>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    out.push(Self::parse_cycles(&text[start..i], degree)?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(Self::parse_cycles(&text[start..], degree)?);
        Ok(out)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Shifts the support by `offset` inside a permutation of `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let p = Permutation::parse_cycles("(0 1)", 3).unwrap();
        let q = Permutation::parse_cycles("(1 2)", 3).unwrap();
        // (p*q)(1) = p(q(1)) = p(2) = 2
        assert_eq!(p.compose(&q).apply(1), 2);
        assert_eq!(p.compose(&q).apply(0), 1);
    }

    #[test]
    fn cycle_round_trip_and_order() {
        let p = Permutation::parse_cycles("(0 3 1)(2 4)", 6).unwrap();
        assert_eq!(p.to_string(), "(0 3 1)(2 4)");
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::parse_cycles("e", 4).unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles("0 1", 3).is_err());
    }

    #[test]
    fn parses_generator_lists() {
        let gens = Permutation::parse_list("(0 1),(0 1 2 3)", 4).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].order(), 4);
        let gens = Permutation::parse_list("(0 1)(2 3), (0 2)(1 3)", 4).unwrap();
        assert_eq!(gens.len(), 2);
    }
}
