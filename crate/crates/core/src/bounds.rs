//! Closed-form bounds, and the layer statistics behind the `q^2 - 3q/2`
//! lower bound for identifying codes in `K_q^3`, evaluated on concrete codes.

use std::collections::BTreeSet;
use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, HammingGraph};
use crate::verify::{verify, Property};

fn div_ceil(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

fn power(q: u64, n: u32) -> Result<u128> {
    (q as u128).checked_pow(n).ok_or_else(|| Error::TooLarge(format!("{q}^{n} overflows")))
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::TooLarge(format!("{x} does not fit in 64 bits")))
}

/// Lower bounds on code sizes in `K_q^n`. The `*3` fields are only set for
/// `n = 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBounds {
    pub q: u64,
    pub n: u32,
    /// `⌈2q^n / (nq - n + 2)⌉`, identifying codes.
    pub karpovsky: u64,
    /// `⌈3q^n / (n(q-1) + 1)⌉`, self-identifying codes.
    pub sid_lower: u64,
    /// `⌈3q^n / (n(q-1) + 3)⌉`, self-locating-dominating codes.
    pub sld_lower: u64,
    /// `⌈q^2 - 3q/2⌉`.
    pub id3_new: Option<u64>,
    /// `⌈q^2 - q√q⌉`.
    pub id3_old: Option<u64>,
    /// `q^2`.
    pub sld3: Option<u64>,
    /// `⌈q^2 / 2⌉`.
    pub dom3: Option<u64>,
}

pub fn lower_bounds(q: u64, n: u32) -> Result<LowerBounds> {
    if q < 2 || n == 0 {
        return Err(Error::invalid("bounds need q >= 2 and n >= 1"));
    }
    let qn = power(q, n)?;
    let (q128, n128) = (q as u128, n as u128);
    let karpovsky = to_u64(div_ceil(2 * qn, n128 * q128 - n128 + 2))?;
    let sid_lower = to_u64(div_ceil(3 * qn, n128 * (q128 - 1) + 1))?;
    let sld_lower = to_u64(div_ceil(3 * qn, n128 * (q128 - 1) + 3))?;
    let (mut id3_new, mut id3_old, mut sld3, mut dom3) = (None, None, None, None);
    if n == 3 {
        let q2 = q128 * q128;
        // ⌈q^2 - 3q/2⌉ = q^2 - ⌊3q/2⌋
        id3_new = Some(to_u64(q2 - 3 * q128 / 2)?);
        // ⌈q^2 - q√q⌉ = q^2 - ⌊√(q^3)⌋
        id3_old = Some(to_u64(q2 - power(q, 3)?.isqrt())?);
        sld3 = Some(to_u64(q2)?);
        dom3 = Some(to_u64(div_ceil(q2, 2))?);
    }
    Ok(LowerBounds { q, n, karpovsky, sid_lower, sld_lower, id3_new, id3_old, sld3, dom3 })
}

impl fmt::Display for LowerBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q={}", self.q)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "karpovsky={}", self.karpovsky)?;
        writeln!(f, "sid_lower={}", self.sid_lower)?;
        writeln!(f, "sld_lower={}", self.sld_lower)?;
        for (name, v) in [("id3_new", self.id3_new), ("id3_old", self.id3_old), ("sld3", self.sld3), ("dom3", self.dom3)] {
            if let Some(v) = v {
                writeln!(f, "{name}={v}")?;
            }
        }
        Ok(())
    }
}

/// `γ^ID(K_q □ K_l □ K_m) = q(m - 1)` for `m > 2l` and `l > 2q`.
pub fn product_id_size(q: u64, l: u64, m: u64) -> Option<u64> {
    (m > 2 * l && l > 2 * q).then(|| q * (m - 1))
}

/// Upper bound `q^{n-k}` from the repeated-column construction against the
/// ball-counting lower bound, at `n = 3(q^k - 1)/(q - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub q: u64,
    pub k: u32,
    pub n: u32,
    pub upper: u64,
    pub karpovsky: u64,
    pub ratio: f64,
    /// `karpovsky >= 2/3 · upper`.
    pub within_three_halves: bool,
}

pub fn ratio_report(q: u64, k: u32) -> Result<RatioReport> {
    if q < 2 || k == 0 {
        return Err(Error::invalid("ratio report needs q >= 2 and k >= 1"));
    }
    let n = to_u64(3 * (power(q, k)? - 1) / (q as u128 - 1))?;
    let n = u32::try_from(n).map_err(|_| Error::TooLarge(format!("length {n}")))?;
    let upper = to_u64(power(q, n - k)?)?;
    let karpovsky = lower_bounds(q, n)?.karpovsky;
    Ok(RatioReport {
        q,
        k,
        n,
        upper,
        karpovsky,
        ratio: upper as f64 / karpovsky as f64,
        within_three_halves: 3 * karpovsky as u128 >= 2 * upper as u128,
    })
}

/// Statistics of a set of cells in a `q × q` grid (a layer viewed as
/// `K_q □ K_q`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridStats {
    pub q: usize,
    pub size: usize,
    pub rows_hit: usize,
    pub cols_hit: usize,
    /// `q - |C|`.
    pub a: i64,
    /// `|M| - q` for a minimum dominating superset `M`.
    pub f: i64,
    /// Cells off the code with an empty row and an empty column.
    pub undominated: Vec<(usize, usize)>,
    /// A minimum dominating set containing the cells: one cell added to
    /// each empty row, or each empty column if more columns are hit.
    pub dominating_superset: Vec<(usize, usize)>,
}

/// Analyses 0-based `(row, col)` cells of a `q × q` grid.
pub fn analyze_grid(q: usize, cells: &[(usize, usize)]) -> Result<GridStats> {
    if let Some(&(r, c)) = cells.iter().find(|&&(r, c)| r >= q || c >= q) {
        return Err(Error::invalid(format!("cell ({r},{c}) lies outside the {q}x{q} grid")));
    }
    let cells: BTreeSet<(usize, usize)> = cells.iter().copied().collect();
    let mut row_hit = vec![false; q];
    let mut col_hit = vec![false; q];
    for &(r, c) in &cells {
        row_hit[r] = true;
        col_hit[c] = true;
    }
    let rows_hit = row_hit.iter().filter(|&&h| h).count();
    let cols_hit = col_hit.iter().filter(|&&h| h).count();
    let mut undominated = Vec::new();
    for r in (0..q).filter(|&r| !row_hit[r]) {
        for c in (0..q).filter(|&c| !col_hit[c]) {
            undominated.push((r, c));
        }
    }
    let mut m: BTreeSet<(usize, usize)> = cells.clone();
    if rows_hit >= cols_hit {
        m.extend((0..q).filter(|&r| !row_hit[r]).map(|r| (r, 0)));
    } else {
        m.extend((0..q).filter(|&c| !col_hit[c]).map(|c| (0, c)));
    }
    let size = cells.len();
    Ok(GridStats {
        q,
        size,
        rows_hit,
        cols_hit,
        a: q as i64 - size as i64,
        f: size as i64 - rows_hit.max(cols_hit) as i64,
        undominated,
        dominating_superset: m.into_iter().collect(),
    })
}

impl GridStats {
    /// Whether `set` dominates the grid: every row or every column is hit.
    pub fn dominates(q: usize, set: &[(usize, usize)]) -> bool {
        let rows: BTreeSet<usize> = set.iter().map(|c| c.0).collect();
        let cols: BTreeSet<usize> = set.iter().map(|c| c.1).collect();
        rows.len() == q || cols.len() == q
    }
}

/// One layer `D^j_i`, `j` the fixed axis (1-based) and `i` its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStats {
    pub axis: usize,
    pub index: u32,
    pub layer_code: Vec<usize>,
    pub grid: GridStats,
    /// Corners of this layer.
    pub k: usize,
    /// `X^j_i`: layer vertices with no codeword neighbour inside the layer.
    pub x_set: Vec<usize>,
    /// `Y^j_i`: layer codewords whose in-layer I-set is just themselves.
    pub y_set: Vec<usize>,
    /// `M^j_i` as vertex indices.
    pub dominating_superset: Vec<usize>,
}

impl LayerStats {
    pub fn a(&self) -> i64 {
        self.grid.a
    }

    pub fn f(&self) -> i64 {
        self.grid.f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Not in `Y`.
    Corner,
    /// In `Y`, with another codeword in its open neighbourhood.
    Fellow,
    Plain,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Corner => "corner",
            Role::Fellow => "fellow",
            Role::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordRole {
    pub codeword: usize,
    pub role: Role,
    /// Layers `(axis, index)` this codeword is a corner of.
    pub layers_cornered: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAnalysis {
    pub q: u32,
    pub layers: Vec<LayerStats>,
    pub roles: Vec<CodewordRole>,
    /// `X` as a set, the union over all layers.
    pub x_union: Vec<usize>,
}

impl LayerAnalysis {
    pub fn role_of(&self, codeword: usize) -> Option<Role> {
        self.roles.binary_search_by_key(&codeword, |r| r.codeword).ok().map(|i| self.roles[i].role)
    }

    pub fn layer(&self, axis: usize, index: u32) -> &LayerStats {
        &self.layers[(axis - 1) * self.q as usize + (index as usize - 1)]
    }

    fn x_members(&self) -> Vec<bool> {
        let size = (self.q as usize).pow(3);
        let mut m = vec![false; size];
        for &v in &self.x_union {
            m[v] = true;
        }
        m
    }
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn require_cube(code: &Code) -> Result<&HammingGraph> {
    let g = code.graph();
    if g.n() != 3 || g.has_deletions() {
        return Err(Error::precondition("layer analysis needs a code in K_q^3 without deletions"));
    }
    Ok(g)
}

/// Layer statistics for all `3q` layers and the role of every codeword.
pub fn layer_analysis(code: &Code, exec: Exec) -> Result<LayerAnalysis> {
    let g = require_cube(code)?;
    let q = g.q() as usize;
    let index_of = |axis: usize, i: usize, r: usize, c: usize| {
        let (ra, ca) = other_axes(axis);
        let mut d = [0usize; 3];
        d[axis] = i;
        d[ra] = r;
        d[ca] = c;
        d[0] * q * q + d[1] * q + d[2]
    };
    // In-layer codeword neighbours of c: along the two pipes inside the layer.
    let pipe_has_other = |c: usize, free: usize| -> bool {
        let base = c - g.digit(c, free) as usize * g.weight(free);
        (0..q).any(|t| {
            let u = base + t * g.weight(free);
            u != c && code.contains(u)
        })
    };
    let layers: Result<Vec<LayerStats>> = exec
        .map_range(3 * q, |slot| {
            let (axis, i) = (slot / q, slot % q);
            let (ra, ca) = other_axes(axis);
            let mut cells = Vec::new();
            let mut layer_code = Vec::new();
            for r in 0..q {
                for c in 0..q {
                    let v = index_of(axis, i, r, c);
                    if code.contains(v) {
                        cells.push((r, c));
                        layer_code.push(v);
                    }
                }
            }
            let grid = analyze_grid(q, &cells)?;
            let x_set = grid.undominated.iter().map(|&(r, c)| index_of(axis, i, r, c)).collect();
            let mut y_set = Vec::new();
            let mut k = 0;
            for &c in &layer_code {
                let (hr, hc) = (pipe_has_other(c, ra), pipe_has_other(c, ca));
                if !hr && !hc {
                    y_set.push(c);
                }
                // Corner of this layer: a corner with codeword neighbours
                // in both in-layer pipes. Such a codeword is never in Y.
                if hr && hc && (0..3).all(|a| a == axis || (0..3).filter(|&b| b != a).any(|b| pipe_has_other(c, b))) {
                    k += 1;
                }
            }
            let dominating_superset =
                grid.dominating_superset.iter().map(|&(r, c)| index_of(axis, i, r, c)).collect();
            Ok(LayerStats {
                axis: axis + 1,
                index: i as u32 + 1,
                layer_code,
                grid,
                k,
                x_set,
                y_set,
                dominating_superset,
            })
        })
        .into_iter()
        .collect();
    let layers = layers?;
    let roles = code
        .words()
        .iter()
        .map(|&c| {
            let free: Vec<bool> = (0..3).map(|a| pipe_has_other(c, a)).collect();
            // c ∈ Y^j iff both pipes inside the j-layer through c are empty.
            let in_y = (0..3).any(|axis| {
                let (ra, ca) = other_axes(axis);
                !free[ra] && !free[ca]
            });
            let role = if !in_y {
                Role::Corner
            } else if free.iter().any(|&b| b) {
                Role::Fellow
            } else {
                Role::Plain
            };
            let layers_cornered = if role == Role::Corner {
                (0..3)
                    .filter(|&axis| {
                        let (ra, ca) = other_axes(axis);
                        free[ra] && free[ca]
                    })
                    .map(|axis| (axis + 1, g.digit(c, axis) + 1))
                    .collect()
            } else {
                Vec::new()
            };
            CodewordRole { codeword: c, role, layers_cornered }
        })
        .collect();
    let x_union: BTreeSet<usize> = layers.iter().flat_map(|l| l.x_set.iter().copied()).collect();
    Ok(LayerAnalysis { q: g.q(), layers, roles, x_union: x_union.into_iter().collect() })
}

/// One evaluated inequality or structural claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Human-readable sides or the first violation.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub analysis: LayerAnalysis,
    pub checks: Vec<LemmaCheck>,
    pub x_size: usize,
    pub sum_k: usize,
    pub sum_f: i64,
    pub sum_a: i64,
    pub sum_af_squared: i64,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.holds { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, holds: bool, detail: String) -> LemmaCheck {
    LemmaCheck { name, holds, detail }
}

/// Evaluates the pipe claims and layer inequalities on an identifying code.
pub fn check_layer_lemmas(code: &Code, exec: Exec) -> Result<LemmaReport> {
    let g = require_cube(code)?.clone();
    let report = verify(code, Property::Id, exec)?;
    if !report.holds {
        let w = report.witness.map(|w| w.describe(&g)).unwrap_or_default();
        return Err(Error::precondition(format!("code is not identifying: {w}")));
    }
    let analysis = layer_analysis(code, exec)?;
    let q = g.q() as usize;
    let in_x = analysis.x_members();
    let role = |c: usize| analysis.role_of(c);
    let mut checks = Vec::new();

    let mut pipe_issue: [Option<String>; 3] = [None, None, None];
    for axis in 0..3 {
        for base in (0..g.size()).filter(|&v| g.digit(v, axis) == 0) {
            let pipe = g.pipe_indices(base, axis)?;
            let fellows = pipe.iter().filter(|&&u| role(u) == Some(Role::Fellow)).count();
            let corners = pipe.iter().filter(|&&u| role(u) == Some(Role::Corner)).count();
            let xs = pipe.iter().filter(|&&u| in_x[u]).count();
            let words = pipe.iter().filter(|&&u| code.contains(u)).count();
            let at = || format!("pipe through {} along axis {}", g.label(base), axis + 1);
            if fellows >= 2 && pipe_issue[0].is_none() {
                pipe_issue[0] = Some(at());
            }
            if corners >= 1 && fellows >= 1 && xs >= 1 && pipe_issue[1].is_none() {
                pipe_issue[1] = Some(at());
            }
            if words >= 1 && xs >= 2 && pipe_issue[2].is_none() {
                pipe_issue[2] = Some(at());
            }
        }
    }
    let names = [
        "no pipe holds two fellows",
        "no pipe holds a corner, a fellow and an X-vertex",
        "no pipe holds a codeword and two X-vertices",
    ];
    for (name, issue) in names.into_iter().zip(pipe_issue) {
        checks.push(match issue {
            None => check(name, true, format!("{} pipes", 3 * q * q)),
            Some(at) => check(name, false, at),
        });
    }

    let unlinked = analysis.x_union.iter().copied().find(|&x| {
        !code.i_set_indices(x).into_iter().any(|c| match role(c) {
            Some(Role::Corner) => true,
            Some(Role::Fellow) => code.i_set_indices(c).into_iter().any(|d| role(d) == Some(Role::Corner)),
            _ => false,
        })
    });
    checks.push(match unlinked {
        None => check("every X-vertex sees a corner or a fellow next to a corner", true, format!("|X| = {}", analysis.x_union.len())),
        Some(x) => check("every X-vertex sees a corner or a fellow next to a corner", false, g.label(x)),
    });

    let x_size = analysis.x_union.len();
    let sum_x_layers: usize = analysis.layers.iter().map(|l| l.x_set.len()).sum();
    let sum_k: usize = analysis.layers.iter().map(|l| l.k).sum();
    let sum_f: i64 = analysis.layers.iter().map(|l| l.f()).sum();
    let sum_a: i64 = analysis.layers.iter().map(|l| l.a()).sum();
    let sum_af_squared: i64 = analysis.layers.iter().map(|l| (l.a() + l.f()).pow(2)).sum();

    checks.push(check(
        "X-sets of distinct layers are disjoint",
        x_size == sum_x_layers,
        format!("|X| = {x_size}, sum |X^j_i| = {sum_x_layers}"),
    ));
    checks.push(check(
        "|C| = q^2 - (sum a)/3",
        3 * (q * q) as i64 - sum_a == 3 * code.len() as i64,
        format!("|C| = {}, sum a = {sum_a}", code.len()),
    ));
    checks.push(check("|X| <= 3 sum k", x_size <= 3 * sum_k, format!("{x_size} <= {}", 3 * sum_k)));
    let bad_fk = analysis.layers.iter().find(|l| 2 * l.f() < l.k as i64);
    checks.push(match bad_fk {
        None => check("2f >= k in every layer", true, format!("{} layers", analysis.layers.len())),
        Some(l) => check("2f >= k in every layer", false, format!("layer ({},{}): f = {}, k = {}", l.axis, l.index, l.f(), l.k)),
    });
    checks.push(check("|X| <= 6 sum f", x_size as i64 <= 6 * sum_f, format!("{x_size} <= {}", 6 * sum_f)));
    checks.push(check(
        "|X| >= sum (a+f)^2",
        x_size as i64 >= sum_af_squared,
        format!("{x_size} >= {sum_af_squared}"),
    ));
    let per_layer: [(&'static str, fn(&LayerStats) -> bool); 3] = [
        ("f >= 0 and a + f >= 0 in every layer", |l| l.f() >= 0 && l.a() + l.f() >= 0),
        ("|X^j_i| >= (a+f)^2 in every layer", |l| l.x_set.len() as i64 >= (l.a() + l.f()).pow(2)),
        ("M^j_i dominates its layer and contains C^j_i", |l| {
            let set = &l.grid.dominating_superset;
            GridStats::dominates(l.grid.q, set)
                && set.len() as i64 == l.grid.q as i64 + l.f()
                && l.layer_code.iter().all(|c| l.dominating_superset.contains(c))
        }),
    ];
    for (name, ok) in per_layer {
        checks.push(match analysis.layers.iter().find(|l| !ok(l)) {
            None => check(name, true, format!("{} layers", analysis.layers.len())),
            Some(l) => check(name, false, format!("layer ({},{})", l.axis, l.index)),
        });
    }
    Ok(LemmaReport { analysis, checks, x_size, sum_k, sum_f, sum_a, sum_af_squared })
}
