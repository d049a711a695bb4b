//! Linear codes over `F_q` given by parity-check matrices, and the SID and
//! SLD constructions built from Hamming codes.
//!
//! Words of `F_q^n` are vertices of [`HammingGraph::words`], whose digits
//! are field elements in the encoding of [`FiniteField`].

use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::FiniteField;
use crate::graph::{Graph, HammingGraph};

/// Default cap on `q^n` for full codeword enumeration.
pub const ENUMERATION_BUDGET: usize = 1 << 24;

pub type Word = Vec<u32>;

/// The word with `value` at coordinate `i` and zeros elsewhere.
pub fn unit_word(n: usize, i: usize, value: u32) -> Word {
    let mut w = vec![0; n];
    w[i] = value;
    w
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    field: FiniteField,
    rows: Vec<Vec<u32>>,
}

impl ParityCheckMatrix {
    pub fn new(field: FiniteField, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::invalid("parity-check matrix needs at least one row and one column"));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::invalid(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
            }
            if let Some(&bad) = r.iter().find(|&&e| e >= field.q()) {
                return Err(Error::invalid(format!("entry {bad} is not an element of F_{}", field.q())));
            }
        }
        Ok(ParityCheckMatrix { field, rows })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns, the code length.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Word {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.n()).any(|j| self.rows.iter().all(|r| r[j] == 0))
    }

    /// `H u^T`.
    pub fn syndrome(&self, u: &[u32]) -> Result<Word> {
        if u.len() != self.n() {
            return Err(Error::invalid(format!("word has length {}, expected {}", u.len(), self.n())));
        }
        Ok(self.syndrome_unchecked(u))
    }

    fn syndrome_unchecked(&self, u: &[u32]) -> Word {
        let f = &self.field;
        self.rows.iter().map(|r| r.iter().zip(u).fold(0, |acc, (&h, &x)| f.add(acc, f.mul(h, x)))).collect()
    }

    pub fn contains(&self, u: &[u32]) -> Result<bool> {
        Ok(self.syndrome(u)?.iter().all(|&s| s == 0))
    }

    /// The ambient space `F_q^n`.
    pub fn ambient(&self) -> Result<HammingGraph> {
        HammingGraph::words(self.q(), self.n())
    }

    /// Repeats column `j` `times[j]` times, consecutively.
    pub fn repeat_columns(&self, times: &[usize]) -> Result<Self> {
        if times.len() != self.n() {
            return Err(Error::invalid("one repeat count per column"));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(times).flat_map(|(&e, &t)| std::iter::repeat_n(e, t)).collect())
            .collect();
        ParityCheckMatrix::new(self.field.clone(), rows)
    }
}

impl fmt::Display for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.q(), self.k(), self.n())?;
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parity-check matrix of the `q`-ary Hamming code with `k` check symbols:
/// one column per one-dimensional subspace of `F_q^k`, normalised so the
/// first nonzero entry is 1, in lexicographic order.
pub fn hamming_parity_check(q: u32, k: usize) -> Result<ParityCheckMatrix> {
    let field = FiniteField::of_order(q)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let total = (q as u64).checked_pow(k as u32).filter(|&t| t <= ENUMERATION_BUDGET as u64);
    let total = total.ok_or_else(|| Error::TooLarge(format!("{q}^{k} candidate columns")))?;
    let mut columns = Vec::new();
    for idx in 1..total {
        let mut v = vec![0u32; k];
        let mut rest = idx;
        for slot in v.iter_mut().rev() {
            *slot = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        if v.iter().find(|&&e| e != 0) == Some(&1) {
            columns.push(v);
        }
    }
    let rows = (0..k).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    ParityCheckMatrix::new(field, rows)
}

/// All words with zero syndrome, as a code in `F_q^n`.
pub fn code_from_parity_check(h: &ParityCheckMatrix, budget: usize, exec: Exec) -> Result<Code> {
    let size = (h.q() as u64).checked_pow(h.n() as u32).filter(|&s| s <= budget as u64);
    if size.is_none() {
        return Err(Error::TooLarge(format!("{}^{} words exceed the enumeration budget {budget}", h.q(), h.n())));
    }
    let g = h.ambient()?;
    let members = exec.map_range(g.size(), |i| h.syndrome_unchecked(&g.digits(i)).iter().all(|&s| s == 0));
    let words: Vec<usize> = members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
    Code::new(g, words)
}

/// `w + C`, coordinatewise in `F_q`.
pub fn translate(code: &Code, shift: &[u32], field: &FiniteField) -> Result<Vec<usize>> {
    let g = code.graph();
    if shift.len() != g.n() {
        return Err(Error::invalid("shift length differs from the code length"));
    }
    code.words()
        .iter()
        .map(|&c| {
            let d: Vec<u32> = g.digits(c).iter().zip(shift).map(|(&a, &b)| field.add(a, b)).collect();
            g.index(&crate::graph::Vertex::from_digits(d))
        })
        .collect()
}

/// `C ∪ (e_1 + C) ∪ (e_2 + C)` for the Hamming code `C` with `k` check
/// symbols; size `3q^{n-k}` where `n = (q^k - 1)/(q - 1)`.
pub fn sid_coset_construction(q: u32, k: usize) -> Result<Code> {
    let h = hamming_parity_check(q, k)?;
    let n = h.n();
    if n < 2 {
        return Err(Error::precondition(format!("code length {n} is below 2; need two unit vectors")));
    }
    let field = h.field().clone();
    let e1 = unit_word(n, 0, 1);
    let e2 = unit_word(n, 1, 1);
    let mut diff = e2.clone();
    diff[0] = field.neg(1);
    for (name, w) in [("e1", &e1), ("e2", &e2), ("e2 - e1", &diff)] {
        if h.contains(w)? {
            return Err(Error::precondition(format!("{name} is a codeword, so the cosets are not distinct")));
        }
    }
    let c = code_from_parity_check(&h, ENUMERATION_BUDGET, Exec::default())?;
    let mut words = c.words().to_vec();
    words.extend(translate(&c, &e1, &field)?);
    words.extend(translate(&c, &e2, &field)?);
    let out = Code::new(c.graph().clone(), words)?;
    if out.len() != 3 * c.len() {
        return Err(Error::Internal("cosets overlap".into()));
    }
    Ok(out)
}

/// `C ⊕ F_q = {(c, λ)}` in `F_q^{n+1}`.
pub fn direct_sum_extend(code: &Code) -> Result<Code> {
    let g = code.graph();
    if g.has_deletions() {
        return Err(Error::precondition("direct sum needs a full ambient space"));
    }
    let q = g.q() as usize;
    let big = HammingGraph::new(g.q(), g.n() + 1)?.with_labels(g.labels());
    Code::new(big, code.words().iter().flat_map(|&c| (0..q).map(move |l| c * q + l)))
}

/// Hamming parity-check matrix with the first column repeated `ell + 3`
/// times and every other column 3 times.
pub fn sld_parity_check(q: u32, k: usize, ell: usize) -> Result<ParityCheckMatrix> {
    let h = hamming_parity_check(q, k)?;
    let mut times = vec![3; h.n()];
    times[0] += ell;
    h.repeat_columns(&times)
}

/// The self-locating-dominating code defined by [`sld_parity_check`], of
/// length `3(q^k - 1)/(q - 1) + ell` and size `q^{n-k}`.
pub fn sld_repeated_column(q: u32, k: usize, ell: usize, budget: usize) -> Result<Code> {
    code_from_parity_check(&sld_parity_check(q, k, ell)?, budget, Exec::default())
}

/// `|N[c1] ∩ N[c2]|` in `F_q^n` (or `K_q^n`) from the distance alone.
pub fn pairwise_neighborhood_intersection(g: &HammingGraph, c1: usize, c2: usize) -> usize {
    match g.distance(c1, c2) {
        0 => g.n() * (g.q() as usize - 1) + 1,
        1 => g.q() as usize,
        2 => 2,
        _ => 0,
    }
}

/// `N[c1] ∩ N[c2] ∩ N[c3]` for distinct words with some pair at distance 2
/// and all three in `N[u]`. The result is always `{u}`; it is computed, not
/// assumed.
pub fn triple_neighborhood_intersection(g: &HammingGraph, c: [usize; 3], u: usize) -> Result<Vec<usize>> {
    let [a, b, d] = c;
    if a == b || a == d || b == d {
        return Err(Error::precondition("the three words must be distinct"));
    }
    if ![(a, b), (a, d), (b, d)].iter().any(|&(x, y)| g.distance(x, y) == 2) {
        return Err(Error::precondition("no pair of the words is at distance 2"));
    }
    if c.iter().any(|&x| g.distance(x, u) > 1) {
        return Err(Error::precondition("the words do not all lie in N[u]"));
    }
    let mut common = g.closed_neighbors(a);
    for &x in &c[1..] {
        common.retain(|&v| g.in_closed_neighborhood(x, v));
    }
    Ok(common)
}
