//! Test-side oracles. Adjacency and I-sets are recomputed here from digit
//! vectors so the library's graph code is not trusted by its own tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use idcodes::{Code, Graph};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).expect("test data file")
}

/// A graph as explicit closed neighbourhoods.
#[derive(Debug, Clone)]
pub struct Naive {
    pub nb: Vec<BTreeSet<usize>>,
    pub words: Vec<Vec<u32>>,
}

/// All words of length `n` over `0..q`, first coordinate most significant.
pub fn all_words(q: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w| (0..q).map(move |d| [w.clone(), vec![d]].concat())).collect();
    }
    out
}

pub fn dist(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl Naive {
    pub fn hamming(q: u32, n: usize) -> Self {
        let words = all_words(q, n);
        let nb = words
            .iter()
            .map(|u| (0..words.len()).filter(|&j| dist(u, &words[j]) <= 1).collect())
            .collect();
        Naive { nb, words }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut nb: Vec<BTreeSet<usize>> = (0..n).map(|v| BTreeSet::from([v])).collect();
        for &(a, b) in edges {
            nb[a].insert(b);
            nb[b].insert(a);
        }
        Naive { nb, words: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nb.len()
    }

    pub fn isets(&self, code: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        self.nb.iter().map(|n| n.intersection(code).copied().collect()).collect()
    }

    pub fn dominating(&self, code: &BTreeSet<usize>) -> bool {
        self.isets(code).iter().all(|s| !s.is_empty())
    }

    pub fn identifying(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        let distinct: BTreeSet<&BTreeSet<usize>> = is.iter().collect();
        is.iter().all(|s| !s.is_empty()) && distinct.len() == is.len()
    }

    /// Identifying, and `I(u) != I(U)` for every `U` with `|U| >= 2`.
    /// The union over `W = {w : I(w) ⊆ I(u)}` is always `I(u)`, so a bad
    /// `U` exists exactly when `|W| >= 2`.
    pub fn sid_by_definition(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        self.identifying(code) && (0..is.len()).all(|u| (0..is.len()).all(|w| w == u || !is[w].is_subset(&is[u])))
    }

    /// Literal subset enumeration; only for graphs of a dozen vertices.
    pub fn sid_by_enumeration(&self, code: &BTreeSet<usize>) -> bool {
        let n = self.len();
        assert!(n <= 16);
        let is = self.isets(code);
        if !self.identifying(code) {
            return false;
        }
        for mask in 1u32..1 << n {
            if mask.count_ones() < 2 {
                continue;
            }
            let union: BTreeSet<usize> =
                (0..n).filter(|&v| mask >> v & 1 == 1).flat_map(|v| is[v].iter().copied()).collect();
            if is.contains(&union) {
                return false;
            }
        }
        true
    }

    fn intersection_is_singleton(&self, u: usize, iu: &BTreeSet<usize>) -> bool {
        if iu.is_empty() {
            return false;
        }
        let mut common: BTreeSet<usize> = self.nb[*iu.iter().next().unwrap()].clone();
        for c in iu {
            common = common.intersection(&self.nb[*c]).copied().collect();
        }
        common == BTreeSet::from([u])
    }

    /// `⋂_{c ∈ I(u)} N[c] = {u}` for every vertex.
    pub fn sid_by_intersection(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        (0..self.len()).all(|u| self.intersection_is_singleton(u, &is[u]))
    }

    /// The defining condition, at non-codewords only.
    pub fn sld_by_definition(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        (0..self.len()).filter(|u| !code.contains(u)).all(|u| self.intersection_is_singleton(u, &is[u]))
    }

    /// `I(u) \ I(v) != ∅` for non-codewords `u` and all `v != u`.
    pub fn sld_by_subsets(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        (0..self.len())
            .filter(|u| !code.contains(u))
            .all(|u| (0..self.len()).all(|v| v == u || !is[u].is_subset(&is[v])))
    }

    pub fn sid_by_subsets(&self, code: &BTreeSet<usize>) -> bool {
        let is = self.isets(code);
        (0..self.len()).all(|u| (0..self.len()).all(|v| v == u || !is[u].is_subset(&is[v])))
    }

    /// `|I(u)| >= 3` with two members at distance 2, for every `u` in
    /// `relevant`. Needs word coordinates.
    pub fn hamming_condition(&self, code: &BTreeSet<usize>, only_non_codewords: bool) -> bool {
        let is = self.isets(code);
        (0..self.len()).filter(|u| !only_non_codewords || !code.contains(u)).all(|u| {
            let s: Vec<usize> = is[u].iter().copied().collect();
            s.len() >= 3 && s.iter().any(|&a| s.iter().any(|&b| dist(&self.words[a], &self.words[b]) == 2))
        })
    }
}

pub fn word_set<G: Graph>(code: &Code<G>) -> BTreeSet<usize> {
    code.words().iter().copied().collect()
}

/// Parses an I-set table line `x y z : a b c; a b c`.
pub fn parse_iset_table(text: &str) -> Vec<([u32; 3], BTreeSet<[u32; 3]>)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (head, tail) = l.split_once(':').expect("colon");
            let triple = |s: &str| -> [u32; 3] {
                let v: Vec<u32> = s.split_whitespace().map(|t| t.parse().unwrap()).collect();
                v.try_into().expect("three coordinates")
            };
            let set = tail.split(';').map(str::trim).filter(|s| !s.is_empty()).map(triple).collect();
            (triple(head), set)
        })
        .collect()
}

/// Parses a picture grid: row `y`, column `x`, cell `z1,z2` or `.`.
pub fn parse_grid_picture(text: &str) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for (y, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        for (x, cell) in line.split_whitespace().enumerate() {
            if cell == "." {
                continue;
            }
            for z in cell.split(',') {
                out.push([x as u32 + 1, y as u32 + 1, z.parse().unwrap()]);
            }
        }
    }
    out
}
