use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, HammingGraph, Vertex};

/// A set of codewords in an ambient graph.
///
/// Codewords are kept both as a sorted index list and as a membership mask
/// over the graph's index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code<G = HammingGraph> {
    graph: G,
    members: Vec<bool>,
    words: Vec<usize>,
}

impl<G: Graph> Code<G> {
    /// Builds a code from vertex indices. Duplicates collapse; indices
    /// outside the vertex set are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(graph: G, words: I) -> Result<Self> {
        let mut members = vec![false; graph.index_bound()];
        for w in words {
            if !graph.contains(w) {
                return Err(Error::invalid(format!("codeword index {w} is not a vertex of the graph")));
            }
            members[w] = true;
        }
        let words = members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Ok(Code { graph, members, words })
    }

    pub fn graph(&self) -> &G {
        &self.graph
    }

    pub fn words(&self) -> &[usize] {
        &self.words
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    /// `I(v) = N[v] ∩ C`, sorted.
    pub fn i_set_indices(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.graph.for_each_closed_neighbor(v, |u| {
            if self.members[u] {
                out.push(u);
            }
        });
        out.sort_unstable();
        out
    }

    /// `I(U)`: union of the member I-sets.
    pub fn i_set_of_set_indices<I: IntoIterator<Item = usize>>(&self, set: I) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for v in set {
            if !self.graph.contains(v) {
                return Err(Error::invalid(format!("vertex index {v} is not in the graph")));
            }
            out.extend(self.i_set_indices(v));
        }
        Ok(out)
    }

    /// Same codewords placed in another graph with the same index space
    /// (e.g. with vertices deleted).
    pub fn rehome<H: Graph>(&self, graph: H) -> Result<Code<H>> {
        Code::new(graph, self.words.iter().copied())
    }

    pub fn labels(&self) -> Vec<String> {
        self.words.iter().map(|&w| self.graph.label(w)).collect()
    }
}

impl Code<HammingGraph> {
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(graph: HammingGraph, words: I) -> Result<Self> {
        let idx: Result<Vec<usize>> = words.into_iter().map(|v| graph.index_present(&v)).collect();
        Code::new(graph, idx?)
    }

    /// Convenience constructor from 1-based coordinate tuples.
    pub fn from_one_based<T: AsRef<[u32]>>(graph: HammingGraph, words: &[T]) -> Result<Self> {
        Self::from_vertices(graph, words.iter().map(|w| Vertex::one_based(w.as_ref())))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.words.iter().map(|&w| self.graph.vertex(w)).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices().into_iter().collect()
    }

    /// `I(v)` as vertices.
    pub fn i_set(&self, v: &Vertex) -> Result<BTreeSet<Vertex>> {
        let idx = self.graph.index_present(v)?;
        Ok(self.i_set_indices(idx).into_iter().map(|u| self.graph.vertex(u)).collect())
    }

    pub fn i_set_of_set<'a, I: IntoIterator<Item = &'a Vertex>>(&self, set: I) -> Result<BTreeSet<Vertex>> {
        let idx: Result<Vec<usize>> = set.into_iter().map(|v| self.graph.index_present(v)).collect();
        Ok(self.i_set_of_set_indices(idx?)?.into_iter().map(|u| self.graph.vertex(u)).collect())
    }
}
