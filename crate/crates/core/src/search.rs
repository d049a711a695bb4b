//! Exhaustive search for codes of a given size on graphs with at most 128
//! vertices.
//!
//! Vertices are decided in index order, inclusion first, so the first code
//! found is the lexicographically least one. A vertex is closed once every
//! member of its closed neighbourhood has been decided; its I-set is then
//! final and is checked against the other closed vertices.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::bounds::lower_bounds;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, HammingGraph};
use crate::verify::{verify, Property};

pub const MAX_SEARCH_VERTICES: usize = 128;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SearchProblem<G> {
    pub graph: G,
    pub property: Property,
    pub size: usize,
    /// Fix the first codeword to vertex 0. Only sound on vertex-transitive
    /// graphs; ignored otherwise.
    pub symmetry: bool,
    pub vertex_transitive: bool,
    pub node_budget: u64,
    /// Where [`optimal_size`] starts counting.
    pub lower_bound: usize,
}

impl<G: Graph + Clone + Send> SearchProblem<G> {
    pub fn new(graph: G, property: Property, size: usize) -> Self {
        SearchProblem {
            graph,
            property,
            size,
            symmetry: false,
            vertex_transitive: false,
            node_budget: DEFAULT_NODE_BUDGET,
            lower_bound: 1,
        }
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    fn symmetric(&self) -> bool {
        self.symmetry && self.vertex_transitive
    }
}

impl SearchProblem<HammingGraph> {
    /// A problem on `K_q^n`, seeded with the matching ball-counting bound.
    /// Graphs with deleted vertices get neither symmetry nor the bound.
    pub fn hamming(graph: HammingGraph, property: Property, size: usize) -> Self {
        let full = !graph.has_deletions();
        let lower_bound = if full { hamming_lower_bound(&graph, property) } else { 1 };
        SearchProblem { vertex_transitive: full, lower_bound, ..SearchProblem::new(graph, property, size) }
    }
}

/// Smallest size the counting bounds allow for `property` in a full `K_q^n`.
pub fn hamming_lower_bound(g: &HammingGraph, property: Property) -> usize {
    let Ok(b) = lower_bounds(g.q() as u64, g.n() as u32) else { return 1 };
    let vol = g.n() * (g.q() as usize - 1) + 1;
    let v = match property {
        Property::Dom => g.size().div_ceil(vol) as u64,
        Property::Id => b.karpovsky,
        Property::Sid => b.sid_lower,
        Property::Sld => b.sld_lower,
    };
    (v as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Search tables over the present vertices, renumbered `0..len`.
struct Instance {
    len: usize,
    /// Original index of each compact vertex.
    original: Vec<usize>,
    /// Closed neighbourhoods as compact index lists.
    neighbors: Vec<Vec<usize>>,
    /// Vertices whose neighbourhood is fully decided after position `p`.
    closing_at: Vec<Vec<usize>>,
    property: Property,
    size: usize,
    budget: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

impl Instance {
    fn build<G: Graph>(g: &G, property: Property, size: usize, budget: u64) -> Result<Self> {
        let original = g.vertices();
        let len = original.len();
        if len > MAX_SEARCH_VERTICES {
            return Err(Error::TooLarge(format!("search handles at most {MAX_SEARCH_VERTICES} vertices, graph has {len}")));
        }
        let mut compact = vec![usize::MAX; g.index_bound()];
        for (i, &v) in original.iter().enumerate() {
            compact[v] = i;
        }
        let neighbors: Vec<Vec<usize>> = original
            .iter()
            .map(|&v| {
                let mut out = Vec::new();
                g.for_each_closed_neighbor(v, |u| {
                    if g.contains(u) {
                        out.push(compact[u]);
                    }
                });
                out.sort_unstable();
                out
            })
            .collect();
        let mut closing_at = vec![Vec::new(); len];
        for (u, nb) in neighbors.iter().enumerate() {
            closing_at[*nb.last().expect("v ∈ N[v]")].push(u);
        }
        Ok(Instance {
            len,
            original,
            neighbors,
            closing_at,
            property,
            size,
            budget,
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
        })
    }
}

#[inline]
fn subset(a: u128, b: u128) -> bool {
    a & !b == 0
}

struct Branch<'a> {
    inst: &'a Instance,
    /// Positions before `first` are excluded, `first` is included.
    first: usize,
    iset: Vec<u128>,
    chosen: u128,
    count: usize,
    closed: Vec<usize>,
    local_nodes: u64,
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

impl<'a> Branch<'a> {
    fn new(inst: &'a Instance, first: usize) -> Self {
        Branch { inst, first, iset: vec![0; inst.len], chosen: 0, count: 0, closed: Vec::new(), local_nodes: 0 }
    }

    fn include(&mut self, v: usize) {
        self.chosen |= 1 << v;
        self.count += 1;
        for &u in &self.inst.neighbors[v] {
            self.iset[u] |= 1 << v;
        }
    }

    fn exclude_undo(&mut self, v: usize) {
        self.chosen &= !(1 << v);
        self.count -= 1;
        for &u in &self.inst.neighbors[v] {
            self.iset[u] &= !(1 << v);
        }
    }

    /// Checks `u`, newly closed, against itself and every closed vertex.
    fn consistent(&self, u: usize) -> bool {
        let iu = self.iset[u];
        if iu == 0 {
            return false;
        }
        let u_word = self.chosen >> u & 1 == 1;
        match self.inst.property {
            Property::Dom => true,
            Property::Id => self.closed.iter().all(|&w| self.iset[w] != iu),
            Property::Sid => self.closed.iter().all(|&w| {
                let iw = self.iset[w];
                !subset(iu, iw) && !subset(iw, iu)
            }),
            Property::Sld => self.closed.iter().all(|&w| {
                let iw = self.iset[w];
                let w_word = self.chosen >> w & 1 == 1;
                !(!u_word && subset(iu, iw)) && !(!w_word && subset(iw, iu))
            }),
        }
    }

    fn close(&mut self, p: usize) -> Option<usize> {
        let before = self.closed.len();
        for &u in &self.inst.closing_at[p] {
            if !self.consistent(u) {
                self.closed.truncate(before);
                return None;
            }
            self.closed.push(u);
        }
        Some(before)
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes & 0x3ff == 0 {
            let total = self.inst.nodes.fetch_add(0x400, Ordering::Relaxed) + 0x400;
            if total > self.inst.budget {
                self.inst.abort.store(true, Ordering::Relaxed);
            }
        }
        !self.inst.abort.load(Ordering::Relaxed)
    }

    fn decide(&mut self, p: usize, include: bool) -> Step {
        if include {
            self.include(p);
        }
        let step = match self.close(p) {
            Some(before) => {
                let s = self.dfs(p + 1);
                if !matches!(s, Step::Found) {
                    self.closed.truncate(before);
                }
                s
            }
            None => Step::Exhausted,
        };
        if include && !matches!(step, Step::Found) {
            self.exclude_undo(p);
        }
        step
    }

    fn dfs(&mut self, p: usize) -> Step {
        if !self.tick() {
            return Step::Aborted;
        }
        if p == self.inst.len {
            return if self.count == self.inst.size { Step::Found } else { Step::Exhausted };
        }
        let remaining = self.inst.len - p;
        if self.count + remaining < self.inst.size {
            return Step::Exhausted;
        }
        let can_include = self.count < self.inst.size && p >= self.first;
        let must_include = p == self.first;
        if can_include {
            match self.decide(p, true) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        if must_include {
            return Step::Exhausted;
        }
        self.decide(p, false)
    }
}

/// A code of exactly `problem.size` codewords with the property, or `None`
/// when none exists. The returned code has been re-verified.
pub fn exists_code<G: Graph + Clone + Send>(problem: &SearchProblem<G>, exec: Exec) -> Result<Option<Code<G>>> {
    exists_code_with_stats(problem, exec).map(|(c, _)| c)
}

pub fn exists_code_with_stats<G: Graph + Clone + Send>(
    problem: &SearchProblem<G>,
    exec: Exec,
) -> Result<(Option<Code<G>>, SearchStats)> {
    let inst = Instance::build(&problem.graph, problem.property, problem.size, problem.node_budget)?;
    if problem.size == 0 || problem.size > inst.len {
        return Ok((None, SearchStats::default()));
    }
    let branches = if problem.symmetric() { 1 } else { inst.len };
    let found = exec.find_first(branches, |first| {
        let mut b = Branch::new(&inst, first);
        let step = b.dfs(0);
        inst.nodes.fetch_add(b.local_nodes & 0x3ff, Ordering::Relaxed);
        match step {
            Step::Found => Some(Ok(b.chosen)),
            Step::Aborted => Some(Err(())),
            Step::Exhausted => None,
        }
    });
    let stats = SearchStats { nodes: inst.nodes.load(Ordering::Relaxed) };
    match found {
        None => Ok((None, stats)),
        Some(Err(())) => Err(Error::BudgetExceeded { nodes: stats.nodes, limit: problem.node_budget }),
        Some(Ok(mask)) => {
            let words = (0..inst.len).filter(|&i| mask >> i & 1 == 1).map(|i| inst.original[i]);
            let code = Code::new(problem.graph.clone(), words)?;
            let report = verify(&code, problem.property, exec)?;
            if !report.holds || code.len() != problem.size {
                return Err(Error::Internal(format!("search produced a code that fails {}", problem.property)));
            }
            Ok((Some(code), stats))
        }
    }
}

/// Smallest size admitting a code with the property, counting up from
/// `problem.lower_bound`, with a witness.
pub fn optimal_size<G: Graph + Clone + Send>(problem: &SearchProblem<G>, exec: Exec) -> Result<(usize, Code<G>)> {
    let n = problem.graph.vertex_count();
    for size in problem.lower_bound.max(1)..=n {
        let p = SearchProblem { size, ..problem.clone() };
        if let Some(code) = exists_code(&p, exec)? {
            return Ok((size, code));
        }
    }
    Err(Error::precondition(format!("no code with property {} exists in this graph", problem.property)))
}
