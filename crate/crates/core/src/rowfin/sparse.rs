//! Sparse triple text format:
//!
//! ```text
//! ring GF:5
//! 1 2 3
//! 4 4 1
//! ```
//!
//! One `<row> <col> <element>` per line after the `ring` header. Blank lines
//! and lines starting with `#` are ignored. Rows not mentioned are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap, Window};
use crate::Index;

/// Builds a finite-support map from `(row, col, element text)` triples.
pub fn from_triples(ring: &BaseRing, triples: &[(Index, Index, String)]) -> Result<RowFiniteMap> {
    from_numbered(ring, triples.iter().map(|(a, b, t)| (0, *a, *b, t.as_str())))
}

fn from_numbered<'a>(
    ring: &BaseRing,
    triples: impl Iterator<Item = (usize, Index, Index, &'a str)>,
) -> Result<RowFiniteMap> {
    let mut rows: BTreeMap<Index, FinVec> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line, a, b, text) in triples {
        if a == 0 || b == 0 {
            return Err(Error::SparseFormat { line, msg: "coordinates start at 1".into() });
        }
        if !seen.insert((a, b)) {
            return Err(Error::DuplicateCoordinate(a, b));
        }
        let c = ring.parse_elem(text)?;
        rows.entry(a).or_insert_with(|| FinVec::zero(ring)).add_at(b, &c);
    }
    rows.retain(|_, v| !v.is_zero());
    Ok(RowFiniteMap::from_rows(ring, "sparse", rows))
}

pub fn parse_sparse(text: &str) -> Result<RowFiniteMap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::SparseFormat { line: 0, msg: "missing `ring` header".into() })?;
    let spec = header
        .strip_prefix("ring")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .ok_or(Error::SparseFormat { line: hline, msg: "expected `ring <spec>`".into() })?;
    let ring = BaseRing::parse(spec.trim())?;
    let mut parsed = Vec::new();
    for (line, l) in lines {
        let mut parts = l.splitn(3, char::is_whitespace);
        let mut coord = || -> Result<Index> {
            parts
                .next()
                .and_then(|p| p.trim().parse().ok())
                .ok_or(Error::SparseFormat { line, msg: format!("bad coordinate in `{l}`") })
        };
        let (a, b) = (coord()?, coord()?);
        let text = parts.next().map(str::trim).filter(|t| !t.is_empty());
        let text = text.ok_or(Error::SparseFormat { line, msg: format!("missing element in `{l}`") })?;
        parsed.push((line, a, b, text));
    }
    from_numbered(&ring, parsed.into_iter())
}

/// Rows `1..=n` of `f` in the sparse format.
pub fn write_sparse(f: &RowFiniteMap, w: Window) -> String {
    let mut out = format!("ring {}\n", f.ring());
    for (a, b, c) in f.to_triples(w) {
        let _ = writeln!(out, "{a} {b} {}", f.ring().format_elem(&c));
    }
    out
}
