//! Finite groups given by an explicit multiplication table.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;

use super::GroupError;

/// A finite group as a validated Cayley table. Element 0 is the identity.
#[derive(Clone)]
pub struct FiniteTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    source: Option<String>,
}

impl PartialEq for FiniteTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table
    }
}

impl Eq for FiniteTable {}

impl Hash for FiniteTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTable")
            .field("names", &self.names)
            .field("source", &self.source)
            .finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FiniteTable {
    /// Validates a table: names are distinct identifiers, the table is a Latin
    /// square, element 0 is a two-sided identity and the law is associative.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let q = names.len();
        if q == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(GroupError::InvalidTable(format!(
                    "element name {name:?} is not an identifier"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(GroupError::InvalidTable(format!("duplicate element name {name:?}")));
            }
        }
        if table.len() != q || table.iter().any(|row| row.len() != q) {
            return Err(GroupError::InvalidTable(format!("table must be {q}x{q}")));
        }
        if table.iter().flatten().any(|&k| k >= q) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        for i in 0..q {
            let mut row_seen = vec![false; q];
            let mut col_seen = vec![false; q];
            for j in 0..q {
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(GroupError::InvalidTable(format!(
                    "not a Latin square at row/column {}",
                    names[i]
                )));
            }
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return Err(GroupError::InvalidTable(format!(
                    "{} is not a two-sided identity",
                    names[0]
                )));
            }
        }
        for i in 0..q {
            for j in 0..q {
                let ij = table[i][j];
                for k in 0..q {
                    if table[ij][k] != table[i][table[j][k]] {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails for ({}, {}, {})",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let inverses = (0..q)
            .map(|i| (0..q).find(|&j| table[i][j] == 0).expect("Latin square row contains identity"))
            .collect();
        Ok(FiniteTable { names, table, inverses, source: None })
    }

    /// Builds a table from a product function on indices.
    pub fn from_fn<F>(names: Vec<String>, product: F) -> Result<Self, GroupError>
    where
        F: Fn(usize, usize) -> usize,
    {
        let q = names.len();
        let table = (0..q).map(|i| (0..q).map(|j| product(i, j)).collect()).collect();
        Self::new(names, table)
    }

    /// Parses the text format: the order, the element names (identity first),
    /// then one row of names per element.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let q: usize = lines
            .next()
            .ok_or_else(|| GroupError::InvalidTable("missing order line".into()))?
            .parse()
            .map_err(|_| GroupError::InvalidTable("first line must be the group order".into()))?;
        let names: Vec<String> = lines
            .next()
            .ok_or_else(|| GroupError::InvalidTable("missing element names".into()))?
            .split_whitespace()
            .map(String::from)
            .collect();
        if names.len() != q {
            return Err(GroupError::InvalidTable(format!(
                "expected {q} element names, found {}",
                names.len()
            )));
        }
        let mut table = Vec::with_capacity(q);
        for r in 0..q {
            let line = lines
                .next()
                .ok_or_else(|| GroupError::InvalidTable(format!("missing table row {}", r + 1)))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    names
                        .iter()
                        .position(|n| n == tok)
                        .ok_or_else(|| GroupError::InvalidTable(format!("unknown element {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        if lines.next().is_some() {
            return Err(GroupError::InvalidTable("trailing lines after table".into()));
        }
        Self::new(names, table)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, GroupError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::InvalidTable(format!("{}: {e}", path.display())))?;
        let mut t = Self::parse(&text)?;
        t.source = Some(path.display().to_string());
        Ok(t)
    }

    /// Writes the table back in the text format accepted by [`FiniteTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n{}\n", self.order(), self.names.join(" "));
        for row in &self.table {
            let line: Vec<&str> = row.iter().map(|&k| self.names[k].as_str()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub(crate) fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub(crate) fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// The cyclic group of order `n` with elements `e, g, g2, ..`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        Self::from_fn(names, |i, j| (i + j) % n)
            .expect("cyclic table is a group")
            .with_source(format!("C{n}"))
    }

    /// The Klein four-group `{e, x, y, xy}`.
    pub fn klein_four() -> Self {
        let names = ["e", "x", "y", "xy"].map(String::from).to_vec();
        Self::from_fn(names, |i, j| i ^ j)
            .expect("Klein table is a group")
            .with_source("V4")
    }

    /// The symmetric group on three letters, elements `r^i s^j` named
    /// `e, r, r2, s, rs, r2s`.
    pub fn symmetric3() -> Self {
        // r = (0 1 2), s = (1 2); (g*h)(x) = g(h(x))
        let r = [1usize, 2, 0];
        let s = [0usize, 2, 1];
        let compose = |g: &[usize; 3], h: &[usize; 3]| [g[h[0]], g[h[1]], g[h[2]]];
        let id = [0usize, 1, 2];
        let r2 = compose(&r, &r);
        let perms = [id, r, r2, s, compose(&r, &s), compose(&r2, &s)];
        let names = ["e", "r", "r2", "s", "rs", "r2s"].map(String::from).to_vec();
        Self::from_fn(names, |i, j| {
            let p = compose(&perms[i], &perms[j]);
            perms.iter().position(|x| *x == p).expect("closed under composition")
        })
        .expect("S3 table is a group")
        .with_source("S3")
    }
}
