//! Plain-text codecs for planes, partial linear spaces and code words, and
//! the JSON mirror of the word format.
//!
//! ```text
//! plane n=2 points=7 lines=7      pls points=8 lines=8      word p=3 len=13
//! 0 1 2                           0 1 3                     0:1
//! ...                             ...                       4:2
//! ```

use std::fmt::Write as _;

use planecode::antipodal::PartialLinearSpace;
use planecode::{CodeWord, GeometryError, Plane};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Antipodal(#[from] planecode::antipodal::AntipodalError),
    #[error(transparent)]
    Code(#[from] planecode::codes::CodeError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `keyword k1=v1 k2=v2 ...` with exactly the given keys, in order.
fn header(line: usize, text: &str, keyword: &str, keys: &[&str]) -> Result<Vec<usize>, FormatError> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(syntax(line, format!("expected header starting with '{keyword}'")));
    }
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        let field = parts.next().ok_or_else(|| syntax(line, format!("missing {key}=")))?;
        let value = field
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| syntax(line, format!("expected {key}=<int>, got '{field}'")))?;
        out.push(value.parse().map_err(|_| syntax(line, format!("bad integer in '{field}'")))?);
    }
    if let Some(extra) = parts.next() {
        return Err(syntax(line, format!("unexpected '{extra}' in header")));
    }
    Ok(out)
}

fn rows(lines: impl Iterator<Item = (usize, impl AsRef<str>)>, expected: usize) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut out = Vec::with_capacity(expected);
    let mut last = 0;
    for (no, text) in lines {
        let row = text
            .as_ref()
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax(no, format!("bad point index '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
        last = no;
    }
    if out.len() != expected {
        return Err(syntax(last, format!("expected {expected} line rows, found {}", out.len())));
    }
    Ok(out)
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let mut first = true;
        for x in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
}

pub fn write_plane(plane: &Plane) -> String {
    let mut s = format!(
        "plane n={} points={} lines={}\n",
        plane.order(),
        plane.num_points(),
        plane.num_lines()
    );
    write_rows(&mut s, &plane.rows());
    s
}

/// Parses and validates a plane file. `id` names the source in the plane.
pub fn read_plane(text: &str, id: &str) -> Result<Plane, FormatError> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(|| syntax(1, "empty plane file"))?;
    let h = header(no, head, "plane", &["n", "points", "lines"])?;
    let (n, points, count) = (h[0], h[1], h[2]);
    if points != n * n + n + 1 || count != points {
        return Err(syntax(no, format!("order {n} needs {} points and lines", n * n + n + 1)));
    }
    let rows = rows(lines, count)?;
    Ok(Plane::from_incidence(&rows, n, id)?)
}

pub fn write_pls(pls: &PartialLinearSpace) -> String {
    let mut s = format!("pls points={} lines={}\n", pls.num_points(), pls.num_lines());
    write_rows(&mut s, &pls.rows());
    s
}

pub fn read_pls(text: &str) -> Result<PartialLinearSpace, FormatError> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(|| syntax(1, "empty pls file"))?;
    let h = header(no, head, "pls", &["points", "lines"])?;
    let rows = rows(lines, h[1])?;
    Ok(PartialLinearSpace::new(h[0], &rows)?)
}

pub fn write_word(w: &CodeWord) -> String {
    let mut s = format!("word p={} len={}\n", w.p(), w.len());
    for &pos in w.support() {
        writeln!(s, "{pos}:{}", w.value(pos)).unwrap();
    }
    s
}

/// Parses a word file. Pairs may be spread over lines in any grouping but
/// must have strictly increasing positions and nonzero symbols below `p`.
pub fn read_word(text: &str) -> Result<CodeWord, FormatError> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(|| syntax(1, "empty word file"))?;
    let h = header(no, head, "word", &["p", "len"])?;
    let (p, len) = (h[0], h[1]);
    if !planecode::field::is_prime(p as u32) || p > 251 {
        return Err(syntax(no, format!("p={p} is not a supported prime")));
    }
    let mut pairs = Vec::new();
    for (no, text) in lines {
        for tok in text.split_whitespace() {
            let (a, b) = tok
                .split_once(':')
                .ok_or_else(|| syntax(no, format!("expected pos:value, got '{tok}'")))?;
            let pos: usize = a.parse().map_err(|_| syntax(no, format!("bad position '{a}'")))?;
            let val: usize = b.parse().map_err(|_| syntax(no, format!("bad value '{b}'")))?;
            if pos >= len {
                return Err(syntax(no, format!("position {pos} is not below len={len}")));
            }
            if val == 0 || val >= p {
                return Err(syntax(no, format!("value {val} is not in 1..{p}")));
            }
            if pairs.last().is_some_and(|&(q, _)| q >= pos) {
                return Err(syntax(no, format!("position {pos} is out of order")));
            }
            pairs.push((pos, val as u8));
        }
    }
    Ok(CodeWord::from_pairs(p as u32, len, pairs)?)
}

/// JSON mirror of the word format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub p: u32,
    pub len: usize,
    /// `[position, symbol]` pairs in position order.
    pub support: Vec<(usize, u8)>,
}

impl From<&CodeWord> for WordJson {
    fn from(w: &CodeWord) -> Self {
        WordJson {
            p: w.p(),
            len: w.len(),
            support: w.support().iter().map(|&i| (i, w.value(i))).collect(),
        }
    }
}

impl WordJson {
    pub fn to_word(&self) -> Result<CodeWord, FormatError> {
        let mut text = format!("word p={} len={}\n", self.p, self.len);
        for (pos, val) in &self.support {
            writeln!(text, "{pos}:{val}").unwrap();
        }
        read_word(&text)
    }
}
