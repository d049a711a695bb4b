//! Explicit identifying-code constructions in `K_q^3`.
//!
//! The recursive family `C^t` in `K_{4^t}^3` places copies of the cyclic
//! code `C_{q/4}` into the subcubes picked out by `C_L`, and copies of
//! `C^{t-1}` into the diagonal subcubes. Its size `q^2 - q/4` is below `q^2`.

use crate::code::Code;
use crate::error::{Error, Result};
use crate::graph::{Graph, HammingGraph, Vertex};
use crate::latin::{cyclic_latin, extend_latin};

/// A vertex of `K_{qm}^3` split into an inner position `(x, y, z)` in `1..=q`
/// and an outer subcube `(a, b, c)` in `1..=m`, with `v = x + q(a - 1)` per
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SextupleView {
    pub inner: [u32; 3],
    pub outer: [u32; 3],
}

impl SextupleView {
    /// 1-based flattened coordinates in `1..=q*m`.
    pub fn flatten(&self, q: u32) -> [u32; 3] {
        std::array::from_fn(|i| self.inner[i] + q * (self.outer[i] - 1))
    }

    pub fn split(coords: [u32; 3], q: u32) -> Self {
        SextupleView {
            inner: coords.map(|v| (v - 1) % q + 1),
            outer: coords.map(|v| (v - 1) / q + 1),
        }
    }
}

const C1_WORDS: [[u32; 3]; 15] = [
    [2, 1, 3],
    [2, 1, 4],
    [3, 1, 1],
    [4, 1, 2],
    [1, 2, 2],
    [1, 2, 4],
    [2, 2, 4],
    [3, 2, 2],
    [1, 3, 1],
    [2, 3, 2],
    [3, 3, 3],
    [4, 3, 3],
    [2, 4, 4],
    [4, 4, 1],
    [4, 4, 3],
];

const CL_WORDS: [[u32; 3]; 12] = [
    [2, 1, 3],
    [3, 1, 4],
    [4, 1, 2],
    [1, 2, 4],
    [3, 2, 1],
    [4, 2, 3],
    [1, 3, 2],
    [2, 3, 4],
    [4, 3, 1],
    [1, 4, 3],
    [2, 4, 1],
    [3, 4, 2],
];

/// `C_q = {(a, b, c) : a + b + c ≡ 0 (mod q)}`; every pipe holds one codeword.
pub fn construct_cq(q: u32) -> Result<Code> {
    let g = HammingGraph::new(q, 3)?;
    let mut words = Vec::with_capacity((q * q) as usize);
    for a in 1..=q {
        for b in 1..=q {
            for c in 1..=q {
                if (a + b + c) % q == 0 {
                    words.push(g.index_one_based(&[a, b, c])?);
                }
            }
        }
    }
    Code::new(g, words)
}

/// The sporadic 15-word identifying code in `K_4^3`.
pub fn construct_c1() -> Code {
    Code::from_one_based(HammingGraph::new(4, 3).expect("K_4^3"), &C1_WORDS).expect("static code")
}

/// The diagonal `{(j, j, j)}` of `K_q^3` as indices.
pub fn diagonal_indices(g: &HammingGraph) -> Vec<usize> {
    (1..=g.q()).map(|j| g.index_one_based(&[j, j, j]).expect("diagonal vertex")).collect()
}

/// The diagonal of `K_4^3` as a code.
pub fn diagonal() -> Code {
    let g = HammingGraph::new(4, 3).expect("K_4^3");
    let d = diagonal_indices(&g);
    Code::new(g, d).expect("diagonal")
}

/// `K_4^3` with its diagonal removed.
pub fn k4_without_diagonal() -> HammingGraph {
    let g = HammingGraph::new(4, 3).expect("K_4^3");
    let d = diagonal_indices(&g);
    g.with_deleted(d).expect("diagonal")
}

/// The 12-word code `C_L`, living in `K_4^3` minus the diagonal.
pub fn construct_cl() -> Code {
    Code::from_one_based(k4_without_diagonal(), &CL_WORDS).expect("static code")
}

/// `Ext(C1, C2)`: a copy of `C1` in every subcube of `K_{qm}^3` whose outer
/// coordinates lie in `C2`.
pub fn ext(inner: &Code, outer: &Code) -> Result<Code> {
    let (gi, go) = (inner.graph(), outer.graph());
    if gi.n() != 3 || go.n() != 3 {
        return Err(Error::invalid("Ext combines codes in K_q^3 and K_m^3"));
    }
    let q = gi.q();
    let g = HammingGraph::new(q * go.q(), 3)?;
    let mut words = Vec::with_capacity(inner.len() * outer.len());
    for a in outer.vertices() {
        let outer_c: [u32; 3] = a.to_one_based().try_into().expect("n = 3");
        for x in inner.vertices() {
            let inner_c: [u32; 3] = x.to_one_based().try_into().expect("n = 3");
            let flat = SextupleView { inner: inner_c, outer: outer_c }.flatten(q);
            words.push(g.index_one_based(&flat)?);
        }
    }
    Code::new(g, words)
}

/// `C^t` in `K_{4^t}^3`, of size `16^t - 4^(t-1)`; `C^1` is [`construct_c1`].
pub fn construct_ct(t: u32) -> Result<Code> {
    if t == 0 {
        return Err(Error::precondition("the family starts at t = 1"));
    }
    if t > 5 {
        return Err(Error::TooLarge(format!("C^{t} lives in K_{}^3", 4u64.pow(t))));
    }
    let cl = construct_cl();
    // C_L and Di are used only for their coordinates here; the placement is
    // into the full K_q^3.
    let cl_full = cl.rehome(cl.graph().full())?;
    let di = diagonal();
    let mut current = construct_c1();
    for level in 2..=t {
        let sub = 4u32.pow(level - 1);
        let a = ext(&construct_cq(sub)?, &cl_full)?;
        let b = ext(&current, &di)?;
        current = Code::new(a.graph().clone(), a.words().iter().chain(b.words()).copied())?;
    }
    Ok(current)
}

/// Adds to an identifying code `C` in `K_q^3` every cell `(x, y, z)` of an
/// `r × r` Latin extension of the cyclic square with `max(x, y) > q`. The
/// result has `r^2 - q^2 + |C|` codewords.
pub fn extend_identifying(code: &Code, r: u32) -> Result<Code> {
    let g = code.graph();
    if g.n() != 3 || g.has_deletions() {
        return Err(Error::precondition("expected a code in K_q^3 without deletions"));
    }
    let q = g.q();
    if r < 2 * q {
        return Err(Error::precondition(format!("extension needs r >= 2q = {}, got r = {r}", 2 * q)));
    }
    let square = extend_latin(&cyclic_latin(q as usize), r as usize)?;
    let big = HammingGraph::new(r, 3)?;
    let mut words = Vec::with_capacity((r * r) as usize);
    for v in code.vertices() {
        words.push(big.index(&v)?);
    }
    for x in 1..=r {
        for y in 1..=r {
            if x.max(y) > q {
                words.push(big.index_one_based(&[x, y, square.get(x as usize, y as usize)])?);
            }
        }
    }
    Code::new(big, words)
}

/// Smallest identifying-code size in `K_q^3` attainable by the constructions
/// here: `q^2 - q/4` for `q = 4^t`, `q^2 - 4^(t-1)` for
/// `2·4^t <= q <= 2·4^(t+1) - 1`, and `q^2` otherwise.
pub fn best_known_upper(q: u64) -> u64 {
    let mut best = q * q;
    let mut p = 4u64;
    while p <= q {
        if p == q {
            best = best.min(q * q - q / 4);
        }
        p *= 4;
    }
    let mut t = 1u32;
    loop {
        let lo = 2 * 4u64.pow(t);
        if lo > q {
            break;
        }
        let hi = 2 * 4u64.pow(t + 1) - 1;
        if q <= hi {
            best = best.min(q * q - 4u64.pow(t - 1));
        }
        t += 1;
    }
    best
}

/// Vertex of `K_{qm}^3` for a sextuple, for callers working in inner/outer terms.
pub fn sextuple_vertex(view: SextupleView, q: u32) -> Vertex {
    Vertex::one_based(&view.flatten(q))
}

/// True iff every pipe of the code's graph contains exactly one codeword.
pub fn one_codeword_per_pipe(code: &Code) -> bool {
    let g = code.graph();
    (0..g.n()).all(|axis| {
        (0..g.size()).filter(|&v| g.digit(v, axis) == 0 && g.contains(v)).all(|base| {
            g.pipe_indices(base, axis).map(|p| p.iter().filter(|&&u| code.contains(u)).count() == 1).unwrap_or(false)
        })
    })
}
