//! Plain-text file formats.
//!
//! Code files: a header line `q n`, then one codeword per line as `n`
//! space-separated coordinates. Coordinates are `1..=q` by default and
//! `0..q` for words of `F_q^n`, which the writer marks with a `# mode: fq`
//! line. Lines starting with `#` are comments everywhere.

use std::fmt::Write as _;
use std::path::Path;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::graph::{GenericGraph, Graph, HammingGraph, Labels, Vertex};
use crate::latin::LatinSquare;
use crate::linear::ParityCheckMatrix;

pub const FQ_MARKER: &str = "# mode: fq";

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::parse(line, format!("{t:?} is not a non-negative integer"))))
        .collect()
}

/// Whether the text carries the F-mode marker.
pub fn has_fq_marker(text: &str) -> bool {
    text.lines().any(|l| l.trim().eq_ignore_ascii_case(FQ_MARKER))
}

/// Serialises a code. `comments` are emitted first, each prefixed by `# `.
pub fn write_code(code: &Code, comments: &[String]) -> String {
    let g = code.graph();
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    if g.labels() == Labels::ZeroBased {
        let _ = writeln!(out, "{FQ_MARKER}");
    }
    let _ = writeln!(out, "{} {}", g.q(), g.n());
    let off = g.labels().offset();
    for &w in code.words() {
        let line: Vec<String> = g.digits(w).iter().map(|d| (d + off).to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Parses a code file. `labels` forces the coordinate convention; otherwise
/// the F-mode marker decides.
pub fn parse_code(text: &str, labels: Option<Labels>) -> Result<Code> {
    let labels = labels.unwrap_or(if has_fq_marker(text) { Labels::ZeroBased } else { Labels::OneBased });
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing \"q n\" header"))?;
    let h = numbers(hl, header)?;
    let [q, n] = h[..] else { return Err(Error::parse(hl, "header must be \"q n\"")) };
    let g = HammingGraph::new(q, n as usize).map_err(|e| Error::parse(hl, e))?.with_labels(labels);
    let off = labels.offset();
    let mut words = Vec::new();
    for (ln, l) in lines {
        let coords = numbers(ln, l)?;
        if coords.len() != n as usize {
            return Err(Error::parse(ln, format!("expected {n} coordinates, found {}", coords.len())));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c < off || c - off >= q) {
            return Err(Error::parse(ln, format!("coordinate {bad} outside {}..={}", off, q - 1 + off)));
        }
        let v = Vertex::from_digits(coords.iter().map(|c| c - off).collect());
        words.push(g.index(&v).map_err(|e| Error::parse(ln, e))?);
    }
    Code::new(g, words)
}

pub fn read_code_file(path: &Path, labels: Option<Labels>) -> Result<Code> {
    parse_code(&std::fs::read_to_string(path)?, labels)
}

/// `q` on the first line, then `q` rows.
pub fn write_latin(square: &LatinSquare) -> String {
    square.to_string()
}

pub fn parse_latin(text: &str) -> Result<LatinSquare> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing order line"))?;
    let h = numbers(hl, header)?;
    let [q] = h[..] else { return Err(Error::parse(hl, "first line must hold the order q")) };
    let mut grid = Vec::new();
    let mut last = hl;
    for (ln, l) in lines {
        let row = numbers(ln, l)?;
        if row.len() != q as usize {
            return Err(Error::parse(ln, format!("expected {q} entries, found {}", row.len())));
        }
        grid.push(row);
        last = ln;
    }
    if grid.len() != q as usize {
        return Err(Error::parse(last, format!("expected {q} rows, found {}", grid.len())));
    }
    LatinSquare::new(grid)
}

/// `q k n`, then `k` rows of `n` field elements.
pub fn write_parity_check(h: &ParityCheckMatrix) -> String {
    h.to_string()
}

pub fn parse_parity_check(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing \"q k n\" header"))?;
    let h = numbers(hl, header)?;
    let [q, k, n] = h[..] else { return Err(Error::parse(hl, "header must be \"q k n\"")) };
    let field = FiniteField::of_order(q).map_err(|e| Error::parse(hl, e))?;
    let mut rows = Vec::new();
    for (ln, l) in lines {
        let row = numbers(ln, l)?;
        if row.len() != n as usize {
            return Err(Error::parse(ln, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != k as usize {
        return Err(Error::parse(hl, format!("header promises {k} rows, found {}", rows.len())));
    }
    ParityCheckMatrix::new(field, rows)
}

/// Edge-list graph: a line with one label declares a vertex, a line with
/// two labels an edge. Vertices are numbered by first appearance.
pub fn parse_graph(text: &str) -> Result<GenericGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let id = |labels: &mut Vec<String>, s: &str| match labels.iter().position(|l| l == s) {
        Some(i) => i,
        None => {
            labels.push(s.to_string());
            labels.len() - 1
        }
    };
    for (ln, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            [v] => {
                id(&mut labels, v);
            }
            [a, b] => {
                let (a, b) = (id(&mut labels, a), id(&mut labels, b));
                if a == b {
                    return Err(Error::parse(ln, "self-loop"));
                }
                edges.push((a, b));
            }
            _ => return Err(Error::parse(ln, "expected a vertex label or two labels")),
        }
    }
    if labels.is_empty() {
        return Err(Error::parse(1, "graph has no vertices"));
    }
    GenericGraph::new(labels, &edges)
}

pub fn write_graph(g: &GenericGraph) -> String {
    let mut out = String::new();
    for l in g.labels_list() {
        let _ = writeln!(out, "{l}");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(a), g.label(b));
    }
    out
}

/// A code on a labelled graph: one label per line.
pub fn write_labelled_code<G: Graph>(code: &Code<G>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for l in code.labels() {
        let _ = writeln!(out, "{l}");
    }
    out
}

pub fn parse_labelled_code(g: &GenericGraph, text: &str) -> Result<Code<GenericGraph>> {
    let mut words = Vec::new();
    for (ln, l) in content_lines(text) {
        let v = g.index_of(l).ok_or_else(|| Error::parse(ln, format!("unknown vertex {l:?}")))?;
        words.push(v);
    }
    Code::new(g.clone(), words)
}
