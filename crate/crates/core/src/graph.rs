//! Hamming graphs `K_q^n` and small explicit graphs.
//!
//! Vertices are addressed by a dense mixed-radix index: the tuple
//! `(d_0, ..., d_{n-1})` of 0-based digits maps to `sum d_i * q^(n-1-i)`, so
//! index order is the lexicographic order of tuples. Codes, I-sets and
//! neighborhoods are all expressed in these indices.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Read-only view of a simple undirected graph over dense indices.
///
/// Indices run over `0..index_bound()`; an index may be absent from the vertex
/// set (deleted vertices of a Hamming graph), which `contains` reports.
pub trait Graph: Sync {
    fn index_bound(&self) -> usize;

    fn contains(&self, v: usize) -> bool;

    fn vertex_count(&self) -> usize;

    /// Calls `f` on every vertex of `N[v]`, including `v` itself.
    fn for_each_closed_neighbor<F: FnMut(usize)>(&self, v: usize, f: F);

    /// `u ∈ N[v]`.
    fn in_closed_neighborhood(&self, u: usize, v: usize) -> bool;

    fn closed_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_closed_neighbor(v, |u| out.push(u));
        out.sort_unstable();
        out
    }

    fn vertices(&self) -> Vec<usize> {
        (0..self.index_bound()).filter(|&v| self.contains(v)).collect()
    }

    /// Human-readable vertex name.
    fn label(&self, v: usize) -> String;
}

/// How coordinates are printed and parsed: `1..=q` for `K_q^n`, `0..q` for
/// words of `F_q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Labels {
    #[default]
    OneBased,
    ZeroBased,
}

impl Labels {
    pub fn offset(self) -> u32 {
        match self {
            Labels::OneBased => 1,
            Labels::ZeroBased => 0,
        }
    }
}

/// A vertex of `K_q^n` stored as 0-based digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn from_digits(digits: Vec<u32>) -> Self {
        Vertex(digits)
    }

    /// Builds a vertex from 1-based coordinates. Panics on a zero coordinate.
    pub fn one_based(coords: &[u32]) -> Self {
        Vertex(
            coords
                .iter()
                .map(|&c| c.checked_sub(1).expect("1-based coordinate must be positive"))
                .collect(),
        )
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.0.iter().map(|d| d + 1).collect()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of coordinates where `self` and `other` differ.
    pub fn distance(&self, other: &Vertex) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn display(&self, labels: Labels) -> VertexDisplay<'_> {
        VertexDisplay { vertex: self, labels }
    }
}

/// 1-based tuple notation `(x,y,z)`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(Labels::OneBased).fmt(f)
    }
}

pub struct VertexDisplay<'a> {
    vertex: &'a Vertex,
    labels: Labels,
}

impl fmt::Display for VertexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let off = self.labels.offset();
        match self.labels {
            Labels::OneBased => {
                f.write_str("(")?;
                for (i, d) in self.vertex.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", d + off)?;
                }
                f.write_str(")")
            }
            Labels::ZeroBased => {
                let sep = if self.vertex.0.iter().any(|&d| d >= 10) { " " } else { "" };
                for (i, d) in self.vertex.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        }
    }
}

/// The Hamming graph `K_q^n`, optionally with a set of vertices deleted.
#[derive(Debug, Clone)]
pub struct HammingGraph {
    q: u32,
    n: usize,
    /// `weights[i] = q^(n-1-i)`.
    weights: Vec<usize>,
    size: usize,
    deleted: Option<Arc<Vec<bool>>>,
    deleted_count: usize,
    labels: Labels,
}

impl PartialEq for HammingGraph {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.n == other.n
            && self.deleted_count == other.deleted_count
            && match (&self.deleted, &other.deleted) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for HammingGraph {}

/// Largest vertex count we are willing to index.
pub const MAX_VERTICES: usize = 1 << 28;

impl HammingGraph {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("alphabet size q={q} must be at least 2")));
        }
        if n < 1 {
            return Err(Error::invalid("dimension n must be at least 1"));
        }
        let mut size: usize = 1;
        for _ in 0..n {
            size = size
                .checked_mul(q as usize)
                .filter(|&s| s <= MAX_VERTICES)
                .ok_or_else(|| Error::TooLarge(format!("K_{q}^{n} exceeds {MAX_VERTICES} vertices")))?;
        }
        let mut weights = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * q as usize;
        }
        Ok(HammingGraph {
            q,
            n,
            weights,
            size,
            deleted: None,
            deleted_count: 0,
            labels: Labels::OneBased,
        })
    }

    /// `F_q^n` as a graph: identical to `K_q^n` but printed with 0-based words.
    pub fn words(q: u32, n: usize) -> Result<Self> {
        Ok(Self::new(q, n)?.with_labels(Labels::ZeroBased))
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    /// Removes `vertices` from the vertex set (the induced subgraph on the rest).
    pub fn with_deleted<I: IntoIterator<Item = usize>>(mut self, vertices: I) -> Result<Self> {
        let mut mask = match self.deleted.take() {
            Some(m) => Arc::unwrap_or_clone(m),
            None => vec![false; self.size],
        };
        for v in vertices {
            if v >= self.size {
                return Err(Error::invalid(format!("deleted vertex index {v} out of range")));
            }
            mask[v] = true;
        }
        self.deleted_count = mask.iter().filter(|&&d| d).count();
        self.deleted = (self.deleted_count > 0).then(|| Arc::new(mask));
        Ok(self)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Labels {
        self.labels
    }

    pub fn has_deletions(&self) -> bool {
        self.deleted_count > 0
    }

    pub fn deleted(&self) -> Vec<usize> {
        match &self.deleted {
            Some(m) => m.iter().enumerate().filter(|(_, &d)| d).map(|(i, _)| i).collect(),
            None => Vec::new(),
        }
    }

    /// Same `q`, `n` and labels, no deletions.
    pub fn full(&self) -> HammingGraph {
        HammingGraph { deleted: None, deleted_count: 0, ..self.clone() }
    }

    /// Total number of tuples `q^n`, including deleted ones.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, v: &Vertex) -> Result<usize> {
        if v.dim() != self.n {
            return Err(Error::invalid(format!(
                "vertex has {} coordinates, graph has dimension {}",
                v.dim(),
                self.n
            )));
        }
        let mut idx = 0usize;
        for (i, &d) in v.digits().iter().enumerate() {
            if d >= self.q {
                return Err(Error::invalid(format!("coordinate {} of {v} is out of range for q={}", i + 1, self.q)));
            }
            idx += d as usize * self.weights[i];
        }
        Ok(idx)
    }

    /// Index of a vertex given in 1-based coordinates.
    pub fn index_one_based(&self, coords: &[u32]) -> Result<usize> {
        if coords.contains(&0) {
            return Err(Error::invalid(format!("coordinates {coords:?} must be 1-based")));
        }
        self.index(&Vertex::one_based(coords))
    }

    /// Index of a vertex that must be present in the vertex set.
    pub fn index_present(&self, v: &Vertex) -> Result<usize> {
        let idx = self.index(v)?;
        if !self.contains(idx) {
            return Err(Error::invalid(format!("vertex {v} is deleted from the graph")));
        }
        Ok(idx)
    }

    pub fn vertex(&self, idx: usize) -> Vertex {
        Vertex(self.digits(idx))
    }

    pub fn digits(&self, idx: usize) -> Vec<u32> {
        self.weights.iter().map(|&w| ((idx / w) % self.q as usize) as u32).collect()
    }

    #[inline]
    pub fn digit(&self, idx: usize, axis: usize) -> u32 {
        ((idx / self.weights[axis]) % self.q as usize) as u32
    }

    #[inline]
    pub fn weight(&self, axis: usize) -> usize {
        self.weights[axis]
    }

    /// Hamming distance between two indices.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.weights
            .iter()
            .filter(|&&w| (u / w) % self.q as usize != (v / w) % self.q as usize)
            .count()
    }

    /// `N[v]` as a set of vertices.
    pub fn closed_neighborhood(&self, v: &Vertex) -> Result<BTreeSet<Vertex>> {
        let idx = self.index_present(v)?;
        let mut out = BTreeSet::new();
        self.for_each_closed_neighbor(idx, |u| {
            out.insert(self.vertex(u));
        });
        Ok(out)
    }

    /// The pipe through `v` whose free coordinate is `free_axis` (0-based),
    /// minus deleted vertices, in increasing index order.
    pub fn pipe_indices(&self, v: usize, free_axis: usize) -> Result<Vec<usize>> {
        if self.n < 2 {
            return Err(Error::invalid("pipes need dimension at least 2"));
        }
        if free_axis >= self.n {
            return Err(Error::invalid(format!("axis {} out of range 1..={}", free_axis + 1, self.n)));
        }
        let w = self.weights[free_axis];
        let base = v - self.digit(v, free_axis) as usize * w;
        Ok((0..self.q as usize).map(|s| base + s * w).filter(|&u| self.contains(u)).collect())
    }

    /// Vertex-level wrapper over [`pipe_indices`](Self::pipe_indices) taking a
    /// 1-based axis.
    pub fn pipe(&self, v: &Vertex, free_axis: usize) -> Result<BTreeSet<Vertex>> {
        let idx = self.index(v)?;
        if free_axis == 0 {
            return Err(Error::invalid("axes are numbered from 1"));
        }
        Ok(self.pipe_indices(idx, free_axis - 1)?.into_iter().map(|u| self.vertex(u)).collect())
    }

    /// Whether `u` and `v` lie in a common pipe (distance at most one).
    pub fn share_pipe(&self, u: usize, v: usize) -> bool {
        self.distance(u, v) <= 1
    }
}

impl Graph for HammingGraph {
    fn index_bound(&self) -> usize {
        self.size
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        v < self.size && self.deleted.as_ref().is_none_or(|m| !m[v])
    }

    fn vertex_count(&self) -> usize {
        self.size - self.deleted_count
    }

    #[inline]
    fn for_each_closed_neighbor<F: FnMut(usize)>(&self, v: usize, mut f: F) {
        if !self.contains(v) {
            return;
        }
        f(v);
        let q = self.q as usize;
        for &w in &self.weights {
            let d = (v / w) % q;
            let base = v - d * w;
            for s in 0..q {
                if s != d {
                    let u = base + s * w;
                    if self.contains(u) {
                        f(u);
                    }
                }
            }
        }
    }

    #[inline]
    fn in_closed_neighborhood(&self, u: usize, v: usize) -> bool {
        self.contains(u) && self.contains(v) && self.distance(u, v) <= 1
    }

    fn label(&self, v: usize) -> String {
        self.vertex(v).display(self.labels).to_string()
    }
}

/// A small explicit graph, used for hand-drawn fixtures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGraph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl GenericGraph {
    pub fn new<S: Into<String>>(labels: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {}", labels[a])));
            }
            if !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(GenericGraph { labels, adj })
    }

    /// Builds a graph from labelled edges; vertices are numbered by first appearance.
    pub fn from_labelled_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let find = |name: &str| {
            vertices
                .iter()
                .position(|&v| v == name)
                .ok_or_else(|| Error::invalid(format!("unknown vertex {name}")))
        };
        let idx: Result<Vec<_>> = edges.iter().map(|&(a, b)| Ok((find(a)?, find(b)?))).collect();
        Self::new(vertices.to_vec(), &idx?)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels_list(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl Graph for GenericGraph {
    fn index_bound(&self) -> usize {
        self.labels.len()
    }

    fn contains(&self, v: usize) -> bool {
        v < self.labels.len()
    }

    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn for_each_closed_neighbor<F: FnMut(usize)>(&self, v: usize, mut f: F) {
        f(v);
        for &u in &self.adj[v] {
            f(u);
        }
    }

    fn in_closed_neighborhood(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[v].binary_search(&u).is_ok()
    }

    fn label(&self, v: usize) -> String {
        self.labels[v].clone()
    }
}

/// The 6-vertex ladder used as the running example for ID, SID and SLD
/// codes: bottom row `a - b - c`, top row `d - e - f`, rungs `a-d`, `b-e`, `c-f`.
pub fn ladder_fixture() -> GenericGraph {
    GenericGraph::from_labelled_edges(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "d"), ("a", "b"), ("b", "c"), ("b", "e"), ("e", "f"), ("c", "f"), ("d", "e")],
    )
    .expect("static fixture")
}
