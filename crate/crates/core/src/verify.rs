//! Deciding domination, identification, self-identification and
//! self-locating-domination.
//!
//! All checks run off an [`ISetTable`] built in one pass over the vertex set.
//! Self-identification and self-location-domination are each decided along
//! two routes (subset tests between I-sets, and intersections of codeword
//! neighborhoods); the routes must agree vertex by vertex or the check
//! returns [`Error::Internal`].

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, HammingGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Dom,
    Id,
    Sid,
    Sld,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Dom => "DOM",
            Property::Id => "ID",
            Property::Sid => "SID",
            Property::Sld => "SLD",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dom" => Ok(Property::Dom),
            "id" => Ok(Property::Id),
            "sid" => Ok(Property::Sid),
            "sld" => Ok(Property::Sld),
            other => Err(Error::invalid(format!("unknown property {other:?}"))),
        }
    }
}

/// A counterexample to one of the properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    EmptyCode,
    /// `I(v) = ∅`.
    Undominated(usize),
    /// `I(u) = I(v)` with `u != v`.
    SameISet(usize, usize),
    /// `I(u) ⊆ I(v)` with `u != v`.
    Contained { u: usize, v: usize },
}

impl Witness {
    /// Re-checks the witness against the raw definitions: returns true iff it
    /// really shows that `property` fails for `code`.
    pub fn refutes<G: Graph>(&self, code: &Code<G>, property: Property) -> bool {
        let g = code.graph();
        match *self {
            Witness::EmptyCode => code.is_empty(),
            Witness::Undominated(v) => {
                g.contains(v)
                    && code.i_set_indices(v).is_empty()
                    && match property {
                        Property::Sld => !code.contains(v),
                        _ => true,
                    }
            }
            Witness::SameISet(u, v) => {
                u != v
                    && g.contains(u)
                    && g.contains(v)
                    && code.i_set_indices(u) == code.i_set_indices(v)
                    && match property {
                        Property::Id | Property::Sid => true,
                        // I(u) = I(v) refutes SLD only if one of them is a non-codeword.
                        Property::Sld => !code.contains(u) || !code.contains(v),
                        Property::Dom => false,
                    }
            }
            Witness::Contained { u, v } => {
                u != v
                    && g.contains(u)
                    && g.contains(v)
                    && is_subset(&code.i_set_indices(u), &code.i_set_indices(v))
                    && match property {
                        Property::Sid => true,
                        Property::Sld => !code.contains(u),
                        Property::Id => code.i_set_indices(u) == code.i_set_indices(v),
                        Property::Dom => false,
                    }
            }
        }
    }

    pub fn describe<G: Graph>(&self, graph: &G) -> String {
        match *self {
            Witness::EmptyCode => "empty code".to_string(),
            Witness::Undominated(v) => format!("I({}) is empty", graph.label(v)),
            Witness::SameISet(u, v) => format!("I({}) = I({})", graph.label(u), graph.label(v)),
            Witness::Contained { u, v } => {
                format!("I({}) is contained in I({})", graph.label(u), graph.label(v))
            }
        }
    }
}

/// Minimum and maximum I-set sizes, overall and split by codeword status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ISetStats {
    pub min: usize,
    pub max: usize,
    pub codeword_min: Option<usize>,
    pub codeword_max: Option<usize>,
    pub non_codeword_min: Option<usize>,
    pub non_codeword_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub stats: ISetStats,
}

impl VerificationReport {
    fn pass(property: Property, stats: ISetStats) -> Self {
        VerificationReport { property, holds: true, witness: None, stats }
    }

    fn fail(property: Property, witness: Witness, stats: ISetStats) -> Self {
        VerificationReport { property, holds: false, witness: Some(witness), stats }
    }
}

/// All I-sets of a code in CSR layout.
#[derive(Debug, Clone)]
pub struct ISetTable {
    offsets: Vec<usize>,
    data: Vec<usize>,
}

impl ISetTable {
    pub fn build<G: Graph>(code: &Code<G>, exec: Exec) -> Self {
        let g = code.graph();
        let lists = exec.map_range(g.index_bound(), |v| {
            if g.contains(v) {
                code.i_set_indices(v)
            } else {
                Vec::new()
            }
        });
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut total = 0;
        for l in &lists {
            total += l.len();
            offsets.push(total);
        }
        let mut data = Vec::with_capacity(total);
        for l in lists {
            data.extend(l);
        }
        ISetTable { offsets, data }
    }

    #[inline]
    pub fn get(&self, v: usize) -> &[usize] {
        &self.data[self.offsets[v]..self.offsets[v + 1]]
    }

    fn stats<G: Graph>(&self, code: &Code<G>) -> ISetStats {
        let mut s = ISetStats { min: usize::MAX, ..Default::default() };
        let upd = |lo: &mut Option<usize>, hi: &mut Option<usize>, k: usize| {
            *lo = Some(lo.map_or(k, |x| x.min(k)));
            *hi = Some(hi.map_or(k, |x| x.max(k)));
        };
        let g = code.graph();
        for v in 0..g.index_bound() {
            if !g.contains(v) {
                continue;
            }
            let k = self.get(v).len();
            s.min = s.min.min(k);
            s.max = s.max.max(k);
            if code.contains(v) {
                upd(&mut s.codeword_min, &mut s.codeword_max, k);
            } else {
                upd(&mut s.non_codeword_min, &mut s.non_codeword_max, k);
            }
        }
        if s.min == usize::MAX {
            s.min = 0;
        }
        s
    }
}

/// Whether sorted `a` is a subset of sorted `b`.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn fingerprint(set: &[usize]) -> u64 {
    let mut h = DefaultHasher::new();
    set.hash(&mut h);
    h.finish()
}

pub fn verify<G: Graph>(code: &Code<G>, property: Property, exec: Exec) -> Result<VerificationReport> {
    let table = ISetTable::build(code, exec);
    verify_with_table(code, &table, property, exec)
}

pub fn verify_with_table<G: Graph>(
    code: &Code<G>,
    table: &ISetTable,
    property: Property,
    exec: Exec,
) -> Result<VerificationReport> {
    let stats = table.stats(code);
    if code.is_empty() {
        return Ok(VerificationReport::fail(property, Witness::EmptyCode, stats));
    }
    Ok(match property {
        Property::Dom => dominating(code, table, stats),
        Property::Id => identifying(code, table, stats, exec),
        Property::Sid => self_identifying(code, table, stats, exec, false)?,
        Property::Sld => self_identifying(code, table, stats, exec, true)?,
    })
}

pub fn is_dominating<G: Graph>(code: &Code<G>) -> VerificationReport {
    verify(code, Property::Dom, Exec::default()).expect("domination check cannot fail internally")
}

pub fn is_identifying<G: Graph>(code: &Code<G>) -> VerificationReport {
    verify(code, Property::Id, Exec::default()).expect("identification check cannot fail internally")
}

pub fn is_self_identifying<G: Graph>(code: &Code<G>) -> Result<VerificationReport> {
    verify(code, Property::Sid, Exec::default())
}

pub fn is_self_locating_dominating<G: Graph>(code: &Code<G>) -> Result<VerificationReport> {
    verify(code, Property::Sld, Exec::default())
}

fn dominating<G: Graph>(code: &Code<G>, table: &ISetTable, stats: ISetStats) -> VerificationReport {
    let g = code.graph();
    match (0..g.index_bound()).find(|&v| g.contains(v) && table.get(v).is_empty()) {
        Some(v) => VerificationReport::fail(Property::Dom, Witness::Undominated(v), stats),
        None => VerificationReport::pass(Property::Dom, stats),
    }
}

fn identifying<G: Graph>(code: &Code<G>, table: &ISetTable, stats: ISetStats, exec: Exec) -> VerificationReport {
    let dom = dominating(code, table, stats);
    if !dom.holds {
        return VerificationReport { property: Property::Id, ..dom };
    }
    let g = code.graph();
    let mut keyed: Vec<(u64, usize)> = exec
        .map_range(g.index_bound(), |v| g.contains(v).then(|| (fingerprint(table.get(v)), v)))
        .into_iter()
        .flatten()
        .collect();
    exec.sort_unstable_by_key(&mut keyed, |&k| k);
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        // Fingerprint collision group: compare explicitly.
        for a in start..end {
            for b in a + 1..end {
                let (u, v) = (keyed[a].1, keyed[b].1);
                if table.get(u) == table.get(v) {
                    return VerificationReport::fail(Property::Id, Witness::SameISet(u, v), stats);
                }
            }
        }
        start = end;
    }
    VerificationReport::pass(Property::Id, stats)
}

/// Per-vertex outcome of a self-identification test at `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LocalVerdict {
    Ok,
    Fails(Witness),
}

/// Subset route: `I(u) \ I(v) != ∅` for every `v != u`. Any `v` with
/// `I(u) ⊆ I(v)` contains the first codeword of `I(u)` in its I-set, so
/// candidates are confined to that codeword's closed neighborhood.
fn subset_route<G: Graph>(g: &G, table: &ISetTable, u: usize) -> LocalVerdict {
    let iu = table.get(u);
    let Some(&c1) = iu.first() else {
        return LocalVerdict::Fails(Witness::Undominated(u));
    };
    let mut candidates = g.closed_neighbors(c1);
    candidates.retain(|&v| v != u);
    for v in candidates {
        if is_subset(iu, table.get(v)) {
            return LocalVerdict::Fails(Witness::Contained { u, v });
        }
    }
    LocalVerdict::Ok
}

/// Intersection route: `⋂_{c ∈ I(u)} N[c] = {u}`.
fn intersection_route<G: Graph>(g: &G, table: &ISetTable, u: usize) -> LocalVerdict {
    let iu = table.get(u);
    let Some((&c1, rest)) = iu.split_first() else {
        return LocalVerdict::Fails(Witness::Undominated(u));
    };
    let mut common = g.closed_neighbors(c1);
    common.retain(|&x| rest.iter().all(|&c| g.in_closed_neighborhood(x, c)));
    match common.iter().find(|&&x| x != u) {
        Some(&x) => LocalVerdict::Fails(Witness::Contained { u, v: x }),
        None if common.contains(&u) => LocalVerdict::Ok,
        None => LocalVerdict::Fails(Witness::Undominated(u)),
    }
}

fn self_identifying<G: Graph>(
    code: &Code<G>,
    table: &ISetTable,
    stats: ISetStats,
    exec: Exec,
    locating_only: bool,
) -> Result<VerificationReport> {
    let property = if locating_only { Property::Sld } else { Property::Sid };
    let g = code.graph();
    let verdicts = exec.map_range(g.index_bound(), |u| {
        if !g.contains(u) || (locating_only && code.contains(u)) {
            return None;
        }
        Some((subset_route(g, table, u), intersection_route(g, table, u)))
    });
    let mut first_failure = None;
    for (u, verdict) in verdicts.iter().enumerate() {
        let Some((a, b)) = verdict else { continue };
        let a_ok = *a == LocalVerdict::Ok;
        let b_ok = *b == LocalVerdict::Ok;
        if a_ok != b_ok {
            return Err(Error::Internal(format!(
                "{property} characterizations disagree at {}: subset route {:?}, intersection route {:?}",
                g.label(u),
                a,
                b
            )));
        }
        if first_failure.is_none() {
            if let LocalVerdict::Fails(w) = a {
                first_failure = Some(*w);
            }
        }
    }
    Ok(match first_failure {
        Some(w) => VerificationReport::fail(property, w, stats),
        None => VerificationReport::pass(property, stats),
    })
}

/// Which vertices a Hamming-space characterization is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HammingMode {
    /// Every word.
    Sid,
    /// Non-codewords only.
    Sld,
}

/// Decides SID or SLD in a full Hamming space by the covering criterion:
/// every relevant word has at least three covering codewords, two of them at
/// distance exactly two.
pub fn hamming_sid_sld_check(code: &Code<HammingGraph>, mode: HammingMode, exec: Exec) -> Result<VerificationReport> {
    let g = code.graph();
    if g.has_deletions() {
        return Err(Error::precondition("the Hamming characterization needs a graph without deleted vertices"));
    }
    let property = match mode {
        HammingMode::Sid => Property::Sid,
        HammingMode::Sld => Property::Sld,
    };
    let table = ISetTable::build(code, exec);
    let stats = table.stats(code);
    if code.is_empty() {
        return Ok(VerificationReport::fail(property, Witness::EmptyCode, stats));
    }
    let failing = exec.find_first(g.size(), |u| {
        if mode == HammingMode::Sld && code.contains(u) {
            return None;
        }
        let iu = table.get(u);
        let has_pair = iu
            .iter()
            .enumerate()
            .any(|(i, &a)| iu[i + 1..].iter().any(|&b| g.distance(a, b) == 2));
        (iu.len() < 3 || !has_pair).then_some(u)
    });
    let Some(u) = failing else {
        return Ok(VerificationReport::pass(property, stats));
    };
    match intersection_route(g, &table, u) {
        LocalVerdict::Fails(w) => Ok(VerificationReport::fail(property, w, stats)),
        LocalVerdict::Ok => Err(Error::Internal(format!(
            "covering criterion fails at {} but its neighborhood intersection is a singleton",
            g.label(u)
        ))),
    }
}

/// Shape of `I(v)` in `K_q^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleCover {
    Empty,
    /// All covering codewords lie in one pipe, which contains the codeword
    /// `anchor`; hence `I(v) ⊆ I(anchor)`.
    WithinPipe { anchor: usize },
    /// Exactly two covers not sharing a pipe; `partner` is the unique other
    /// vertex covered by both.
    Pair { covers: [usize; 2], partner: usize },
    /// At least three covers not within one pipe: `I(v)` is contained in no
    /// other I-set.
    UniquelyIdentified,
}

pub fn triple_cover_structure(code: &Code<HammingGraph>, v: usize) -> Result<TripleCover> {
    let g = code.graph();
    if g.n() != 3 {
        return Err(Error::precondition(format!("pipe structure needs n = 3, got n = {}", g.n())));
    }
    if !g.contains(v) {
        return Err(Error::invalid(format!("vertex index {v} is not in the graph")));
    }
    let iv = code.i_set_indices(v);
    if iv.is_empty() {
        return Ok(TripleCover::Empty);
    }
    // Codewords within one pipe: all agree on two fixed coordinates.
    let within_pipe = (0..3).any(|free| {
        iv.iter().all(|&c| (0..3).filter(|&a| a != free).all(|a| g.digit(c, a) == g.digit(iv[0], a)))
    });
    if within_pipe {
        return Ok(TripleCover::WithinPipe { anchor: iv[0] });
    }
    if iv.len() == 2 {
        let (c1, c2) = (iv[0], iv[1]);
        let mut common: Vec<usize> = g
            .closed_neighbors(c1)
            .into_iter()
            .filter(|&x| g.in_closed_neighborhood(x, c2) && x != v)
            .collect();
        debug_assert_eq!(common.len(), 1);
        let partner = common
            .pop()
            .ok_or_else(|| Error::Internal("two covers at distance two must share exactly two vertices".into()))?;
        return Ok(TripleCover::Pair { covers: [c1, c2], partner });
    }
    Ok(TripleCover::UniquelyIdentified)
}
