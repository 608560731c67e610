//! Named groups and the text catalog format.
//!
//! A catalog line is either a builtin name (`S4`, `C30`, `Q8`, `SL(2,3)`,
//! `Z/2×Z/2`, `S3xC2`, …) or an explicit block `name; degree; generators`,
//! e.g. `S4; 4; (0 1),(0 1 2 3)`. Blank lines and `#` comments are ignored.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

const MAX_SYMMETRIC_DEGREE: usize = 7;

/// Groups scanned by the corpus runner, in report order.
pub const BUILTIN_CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14",
    "C15", "C16", "C17", "C18", "C19", "C20", "C21", "C22", "C23", "C24", "C25", "C26", "C27",
    "C28", "C29", "C30", "Z/2×Z/2", "S3", "D4", "Q8", "A4", "D5", "D6", "SL(2,3)", "S4", "A5",
    "S5",
];

fn cycle(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("cycle")
}

fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::UnknownGroup("C0".into()));
    }
    Group::from_generators(vec![cycle(n)], n)
}

fn dihedral(n: usize) -> Result<Group> {
    if n < 3 {
        return Err(Error::UnknownGroup(format!("D{n}")));
    }
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Group::from_generators(vec![cycle(n), reflection], n)
}

fn symmetric(n: usize) -> Result<Group> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnknownGroup(format!("S{n}")));
    }
    if n == 1 {
        return Group::from_generators(vec![], 1);
    }
    Group::from_generators(vec![Permutation::from_cycles(n, &[vec![0, 1]])?, cycle(n)], n)
}

fn alternating(n: usize) -> Result<Group> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnknownGroup(format!("A{n}")));
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    Group::from_generators(gens, n)
}

/// Left regular representation of the quaternion group on
/// `1, -1, i, -i, j, -j, k, -k` (points 0..8).
fn quaternion() -> Result<Group> {
    let i = Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4])?;
    let j = Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3])?;
    Group::from_generators(vec![i, j], 8)
}

/// SL(2,3) acting on the eight nonzero vectors of F_3^2.
fn sl23() -> Result<Group> {
    let vectors: Vec<(u8, u8)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[u8; 2]; 2]| -> Result<Permutation> {
        let images = vectors
            .iter()
            .map(|&(x, y)| {
                let w = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                vectors.iter().position(|&v| v == w).expect("nonzero image")
            })
            .collect();
        Permutation::from_images(images)
    };
    Group::from_generators(vec![act([[1, 1], [0, 1]])?, act([[0, 2], [1, 0]])?], 8)
}

fn klein() -> Result<Group> {
    Group::from_generators(
        vec![
            Permutation::parse_cycles("(0 1)(2 3)", 4)?,
            Permutation::parse_cycles("(0 2)(1 3)", 4)?,
        ],
        4,
    )
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.padded(degree)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), degree)));
    Ok(Group::from_generators(gens, degree)?.with_name(format!("{}×{}", a.name(), b.name())))
}

fn split_product(name: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            'x' | '×' if depth == 0 => {
                parts.push(&name[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&name[start..]);
    parts
}

fn numeric_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Builds a builtin group by name.
pub fn builtin(name: &str) -> Result<Group> {
    let name = name.trim();
    let parts = split_product(name);
    if parts.len() > 1 {
        let mut acc = builtin(parts[0])?;
        for p in &parts[1..] {
            acc = direct_product(&acc, &builtin(p)?)?;
        }
        return Ok(acc.with_name(name));
    }
    let group = match name {
        "Q8" => quaternion()?,
        "SL(2,3)" => sl23()?,
        "V4" => klein()?,
        "e" | "1" => Group::trivial(1),
        _ => {
            if let Some(n) = numeric_suffix(name, "C").or_else(|| numeric_suffix(name, "Z/")) {
                cyclic(n)?
            } else if let Some(n) = numeric_suffix(name, "D") {
                dihedral(n)?
            } else if let Some(n) = numeric_suffix(name, "S") {
                symmetric(n)?
            } else if let Some(n) = numeric_suffix(name, "A") {
                alternating(n)?
            } else {
                return Err(Error::UnknownGroup(name.to_string()));
            }
        }
    };
    Ok(group.with_name(name))
}

/// One catalog line: builtin name or `name; degree; generators`.
pub fn parse_entry(line: &str) -> Result<Group> {
    let fields: Vec<&str> = line.split(';').map(str::trim).collect();
    match fields.as_slice() {
        [name] => builtin(name),
        [name, degree, gens] => {
            let degree: usize = degree
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree `{degree}`")))?;
            let gens = Permutation::parse_list(gens, degree)?;
            Ok(Group::from_generators(gens, degree)?.with_name(*name))
        }
        _ => Err(Error::Parse(format!("bad catalog entry `{line}`"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<String>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog {
            entries: BUILTIN_CATALOG.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect();
        Catalog { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical text: one entry per line.
    pub fn canonical_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    /// SHA-256 of the canonical text, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let cases = [
            ("C30", 30),
            ("Z/7", 7),
            ("D4", 8),
            ("D6", 12),
            ("S4", 24),
            ("S7", 5040),
            ("A4", 12),
            ("A5", 60),
            ("A1", 1),
            ("Q8", 8),
            ("SL(2,3)", 24),
            ("Z/2×Z/2", 4),
            ("S3xC2", 12),
            ("V4", 4),
            ("C1", 1),
        ];
        for (name, order) in cases {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.name(), name);
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = builtin("Q8").unwrap();
        let involutions = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 4).count(), 6);
    }

    #[test]
    fn sl23_is_not_s4() {
        let g = builtin("SL(2,3)").unwrap();
        let involutions = (0..24).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(builtin("S8").is_err());
        assert!(builtin("M11").is_err());
        assert!(builtin("D2").is_err());
    }

    #[test]
    fn parses_catalog_text() {
        let cat = Catalog::parse("# demo\nS4; 4; (0 1),(0 1 2 3)\n\nC6\n");
        assert_eq!(cat.entries.len(), 2);
        let g = parse_entry(&cat.entries[0]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.name(), "S4");
        assert_eq!(parse_entry("C6").unwrap().order(), 6);
        assert!(parse_entry("X; 3").is_err());
        assert_ne!(cat.hash(), Catalog::builtin().hash());
        assert_eq!(Catalog::builtin().hash(), Catalog::builtin().hash());
    }
}
