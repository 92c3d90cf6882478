//! Table, graph, DFA and identity file formats.
//!
//! Text tables (`.mt`): the order `n`, then `n` rows of `n` entries in
//! `0..=n`, with `0` for an undefined product. `#` starts a comment and
//! blank lines are skipped.
//!
//! Packed tables (`.mtb`): `n` as a big-endian `u64`, then the `n²` entries
//! row-major in `b` bits each, most significant bit first, where `b` is the
//! bit length of `n`. The stream is zero-padded to a whole byte. Stored
//! values above `n` read as `0`.

use std::fs;
use std::path::Path;

use fomember_core::algebra::AlgebraError;
use fomember_core::gen::{Dfa, GenError, UndirectedGraph};
use fomember_core::omega::{parse_basis, OmegaError};
use fomember_core::{OmegaIdentity, PartialGroupoid};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("packed table: {0}")]
    Packed(String),
    #[error(transparent)]
    Table(#[from] AlgebraError),
    #[error(transparent)]
    Instance(#[from] GenError),
    #[error(transparent)]
    Identity(#[from] OmegaError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Packed,
}

impl TableFormat {
    /// `.mtb` is packed, anything else is text.
    pub fn from_path(path: &Path) -> TableFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtb") => TableFormat::Packed,
            _ => TableFormat::Text,
        }
    }
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, message: message.into() }
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| malformed(line, format!("'{w}' is not a number"))))
        .collect()
}

pub fn parse_text(src: &str) -> Result<PartialGroupoid, FormatError> {
    let mut lines = content_lines(src);
    let (first, header) = lines.next().ok_or_else(|| malformed(1, "missing order"))?;
    let header = numbers(first, header)?;
    let [n] = header[..] else {
        return Err(malformed(first, "first line must hold only the order"));
    };
    if n == 0 {
        return Err(malformed(first, "order must be at least 1"));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, text) in lines {
        if rows == n {
            return Err(malformed(line, format!("more than {n} rows")));
        }
        let row = numbers(line, text)?;
        if row.len() != n {
            return Err(malformed(line, format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v > n) {
            return Err(malformed(line, format!("entry {v} is not in 0..={n}")));
        }
        entries.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(malformed(src.lines().count().max(1), format!("{rows} rows, expected {n}")));
    }
    Ok(PartialGroupoid::from_flat(n, entries)?)
}

pub fn to_text(g: &PartialGroupoid) -> String {
    let n = g.order();
    let width = n.to_string().len();
    let mut out = format!("{n}\n");
    for x in g.elements() {
        let row: Vec<String> = g.row(x).iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn bit_length(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

pub fn parse_packed(bytes: &[u8]) -> Result<PartialGroupoid, FormatError> {
    let header: [u8; 8] = bytes
        .get(..8)
        .and_then(|h| h.try_into().ok())
        .ok_or_else(|| FormatError::Packed("missing 8-byte header".into()))?;
    let n = u64::from_be_bytes(header);
    if n == 0 {
        return Err(FormatError::Packed("order must be at least 1".into()));
    }
    let n = usize::try_from(n)
        .ok()
        .filter(|&n| n.checked_mul(n).is_some_and(|c| c.checked_mul(bit_length(n)).is_some()))
        .ok_or_else(|| FormatError::Packed(format!("order {n} is too large")))?;
    let b = bit_length(n);
    let body = &bytes[8..];
    let expected = (n * n * b).div_ceil(8);
    if body.len() != expected {
        return Err(FormatError::Packed(format!("body has {} bytes, expected {expected}", body.len())));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut bit = 0;
    for _ in 0..n * n {
        let mut v = 0usize;
        for _ in 0..b {
            let set = body[bit / 8] >> (7 - bit % 8) & 1;
            v = v << 1 | set as usize;
            bit += 1;
        }
        entries.push(if v > n { 0 } else { v });
    }
    Ok(PartialGroupoid::from_flat(n, entries)?)
}

pub fn to_packed(g: &PartialGroupoid) -> Vec<u8> {
    let n = g.order();
    let b = bit_length(n);
    let mut out = (n as u64).to_be_bytes().to_vec();
    out.resize(8 + (n * n * b).div_ceil(8), 0);
    let mut bit = 0;
    for v in g.entries() {
        for k in (0..b).rev() {
            if v >> k & 1 == 1 {
                out[8 + bit / 8] |= 1 << (7 - bit % 8);
            }
            bit += 1;
        }
    }
    out
}

pub fn parse_table(bytes: &[u8], format: TableFormat) -> Result<PartialGroupoid, FormatError> {
    match format {
        TableFormat::Packed => parse_packed(bytes),
        TableFormat::Text => {
            let text = std::str::from_utf8(bytes).map_err(|_| malformed(1, "not UTF-8 text"))?;
            parse_text(text)
        }
    }
}

pub fn serialize_table(g: &PartialGroupoid, format: TableFormat) -> Vec<u8> {
    match format {
        TableFormat::Text => to_text(g).into_bytes(),
        TableFormat::Packed => to_packed(g),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, FormatError> {
    fs::read(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn read_string(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Reads a table, choosing the format by extension unless one is given.
pub fn read_table(path: &Path, format: Option<TableFormat>) -> Result<PartialGroupoid, FormatError> {
    let format = format.unwrap_or_else(|| TableFormat::from_path(path));
    parse_table(&read(path)?, format)
}

pub fn write_table(path: &Path, g: &PartialGroupoid, format: Option<TableFormat>) -> Result<(), FormatError> {
    let format = format.unwrap_or_else(|| TableFormat::from_path(path));
    fs::write(path, serialize_table(g, format))
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// `v s t` on the first line, then one `x y` edge per line; vertices are
/// numbered from 0.
pub fn parse_graph(src: &str) -> Result<UndirectedGraph, FormatError> {
    let mut lines = content_lines(src);
    let (first, header) = lines.next().ok_or_else(|| malformed(1, "missing 'v s t' header"))?;
    let [v, s, t] = numbers(first, header)?[..] else {
        return Err(malformed(first, "header must be 'v s t'"));
    };
    let mut edges = Vec::new();
    for (line, text) in lines {
        let [x, y] = numbers(line, text)?[..] else {
            return Err(malformed(line, "edge must be 'x y'"));
        };
        edges.push((x, y));
    }
    Ok(UndirectedGraph::new(v, edges, s, t)?)
}

pub fn graph_to_text(g: &UndirectedGraph) -> String {
    let mut out = format!("{} {} {}\n", g.vertex_count(), g.s(), g.t());
    for (x, y) in g.edges() {
        out.push_str(&format!("{x} {y}\n"));
    }
    out
}

/// `<states> <letters>` on the first line, e.g. `3 ab`, then one row per
/// state listing its successor under each letter; states are numbered
/// from 0.
pub fn parse_dfa(src: &str) -> Result<Dfa, FormatError> {
    let mut lines = content_lines(src);
    let (first, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let mut words = header.split_whitespace();
    let (Some(states), Some(alphabet), None) = (words.next(), words.next(), words.next()) else {
        return Err(malformed(first, "header must be '<states> <letters>'"));
    };
    let states: usize =
        states.parse().map_err(|_| malformed(first, format!("'{states}' is not a number")))?;
    let letters: Vec<char> = alphabet.chars().collect();
    let mut delta = vec![Vec::with_capacity(states); letters.len()];
    let mut rows = 0;
    for (line, text) in lines {
        let row = numbers(line, text)?;
        if row.len() != letters.len() {
            return Err(malformed(line, format!("row has {} targets, expected {}", row.len(), letters.len())));
        }
        for (l, q) in row.into_iter().enumerate() {
            delta[l].push(q);
        }
        rows += 1;
    }
    if rows != states {
        return Err(malformed(first, format!("{rows} transition rows, expected {states}")));
    }
    Ok(Dfa::new(states, letters, delta)?)
}

pub fn read_graph(path: &Path) -> Result<UndirectedGraph, FormatError> {
    parse_graph(&read_string(path)?)
}

pub fn read_dfa(path: &Path) -> Result<Dfa, FormatError> {
    parse_dfa(&read_string(path)?)
}

/// One identity per line, `;` between identities of a basis, `#` comments.
pub fn read_identities(path: &Path) -> Result<Vec<OmegaIdentity>, FormatError> {
    Ok(parse_basis(&read_string(path)?)?)
}
