//! Latin squares, their correspondence with optimal self-locating-dominating
//! codes in `K_q^3`, and extension of a `q × q` square to order `r >= 2q`.

use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::graph::HammingGraph;

/// A `q × q` Latin square with 1-based values. `grid[x-1][y-1] = z` places
/// the codeword `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    grid: Vec<Vec<u32>>,
}

/// Where a grid stops being a Latin square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatinViolation {
    /// `value` occurs twice in row `row` (1-based).
    RowRepeat { row: usize, value: u32 },
    /// `value` occurs twice in column `col` (1-based).
    ColumnRepeat { col: usize, value: u32 },
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinViolation::RowRepeat { row, value } => write!(f, "row {row} repeats {value}"),
            LatinViolation::ColumnRepeat { col, value } => write!(f, "column {col} repeats {value}"),
        }
    }
}

/// Checks row/column uniqueness. Malformed grids (not square, values outside
/// `1..=q`) are an input error rather than a violation.
pub fn validate_latin(grid: &[Vec<u32>]) -> Result<Option<LatinViolation>> {
    let q = grid.len();
    if q == 0 {
        return Err(Error::invalid("empty grid"));
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != q {
            return Err(Error::invalid(format!("row {} has {} entries, expected {q}", i + 1, row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&z| z == 0 || z as usize > q) {
            return Err(Error::invalid(format!("row {} holds {bad}, outside 1..={q}", i + 1)));
        }
    }
    for (i, row) in grid.iter().enumerate() {
        let mut seen = vec![false; q + 1];
        for &z in row {
            if std::mem::replace(&mut seen[z as usize], true) {
                return Ok(Some(LatinViolation::RowRepeat { row: i + 1, value: z }));
            }
        }
    }
    for j in 0..q {
        let mut seen = vec![false; q + 1];
        for row in grid {
            let z = row[j];
            if std::mem::replace(&mut seen[z as usize], true) {
                return Ok(Some(LatinViolation::ColumnRepeat { col: j + 1, value: z }));
            }
        }
    }
    Ok(None)
}

impl LatinSquare {
    pub fn new(grid: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(v) = validate_latin(&grid)? {
            return Err(Error::invalid(format!("not a Latin square: {v}")));
        }
        Ok(LatinSquare { grid })
    }

    pub fn order(&self) -> usize {
        self.grid.len()
    }

    /// Value at 1-based position `(x, y)`.
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.grid[x - 1][y - 1]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.grid
    }

    /// The top-left `k × k` block.
    pub fn block(&self, k: usize) -> Vec<Vec<u32>> {
        self.grid[..k].iter().map(|r| r[..k].to_vec()).collect()
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        for row in &self.grid {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `grid[a][b]` is the unique `c ∈ 1..=q` with `a + b + c ≡ 0 (mod q)`.
pub fn cyclic_latin(q: usize) -> LatinSquare {
    assert!(q >= 1, "order must be positive");
    let grid = (1..=q)
        .map(|a| {
            (1..=q)
                .map(|b| {
                    let c = (2 * q - (a + b) % q) % q;
                    if c == 0 { q as u32 } else { c as u32 }
                })
                .collect()
        })
        .collect();
    LatinSquare { grid }
}

/// `{(x, y, z) : grid[x][y] = z}` as a code in `K_q^3`.
pub fn latin_to_code(square: &LatinSquare) -> Result<Code> {
    let q = square.order() as u32;
    if q < 2 {
        return Err(Error::invalid("K_1^3 is not supported; use order at least 2"));
    }
    let g = HammingGraph::new(q, 3)?;
    let mut words = Vec::with_capacity(square.order() * square.order());
    for x in 1..=square.order() {
        for y in 1..=square.order() {
            words.push(g.index_one_based(&[x as u32, y as u32, square.get(x, y)])?);
        }
    }
    Code::new(g, words)
}

/// Inverse of [`latin_to_code`]. Every pipe of `K_q^3` must hold exactly one
/// codeword.
pub fn code_to_latin(code: &Code) -> Result<LatinSquare> {
    let g = code.graph();
    if g.n() != 3 || g.has_deletions() {
        return Err(Error::precondition("expected a code in K_q^3 without deletions"));
    }
    let q = g.q() as usize;
    // Pipe counts per (axis, fixed pair).
    let mut towers = vec![0usize; q * q];
    let mut columns = vec![0usize; q * q];
    let mut rows = vec![0usize; q * q];
    let mut grid = vec![vec![0u32; q]; q];
    for &w in code.words() {
        let d = g.digits(w);
        let (x, y, z) = (d[0] as usize, d[1] as usize, d[2] as usize);
        towers[x * q + y] += 1;
        columns[x * q + z] += 1;
        rows[y * q + z] += 1;
        grid[x][y] = z as u32 + 1;
    }
    let report = |counts: &[usize], kind: &str, name: &dyn Fn(usize, usize) -> String| -> Result<()> {
        if let Some(pos) = counts.iter().position(|&c| c != 1) {
            return Err(Error::precondition(format!(
                "{kind} {} holds {} codewords; every pipe needs exactly one",
                name(pos / q, pos % q),
                counts[pos]
            )));
        }
        Ok(())
    };
    report(&towers, "tower", &|a, b| format!("({},{},*)", a + 1, b + 1))?;
    report(&columns, "column", &|a, b| format!("({},*,{})", a + 1, b + 1))?;
    report(&rows, "row", &|a, b| format!("(*,{},{})", a + 1, b + 1))?;
    LatinSquare::new(grid)
}

/// Maximum bipartite matching by augmenting paths. Left vertices are tried
/// in index order and each tries its right neighbors in increasing order, so
/// the outcome is deterministic.
fn bipartite_matching(left: usize, right: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Vec<Option<usize>> {
    fn augment(
        l: usize,
        right: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for r in 0..right {
            if allowed(l, r) && !seen[r] {
                seen[r] = true;
                if match_right[r].is_none_or(|l2| augment(l2, right, allowed, seen, match_right)) {
                    match_right[r] = Some(l);
                    return true;
                }
            }
        }
        false
    }
    let mut match_right = vec![None; right];
    for l in 0..left {
        let mut seen = vec![false; right];
        augment(l, right, allowed, &mut seen, &mut match_right);
    }
    let mut match_left = vec![None; left];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = *l {
            match_left[l] = Some(r);
        }
    }
    match_left
}

/// Extends `square` (order `q`) to an `r × r` Latin square whose top-left
/// block is `square`. Requires `r >= 2q`.
///
/// Rows `1..=q` are first completed with the values `q+1..=r` by one perfect
/// matching per row (columns against missing values); the resulting `q × r`
/// Latin rectangle is then completed row by row, again by perfect matchings.
/// Both bipartite graphs are regular, so a perfect matching always exists.
pub fn extend_latin(square: &LatinSquare, r: usize) -> Result<LatinSquare> {
    let q = square.order();
    if r < 2 * q {
        return Err(Error::precondition(format!("extension to order {r} needs r >= 2q = {}", 2 * q)));
    }
    let mut grid = vec![vec![0u32; r]; r];
    let mut in_column = vec![vec![false; r + 1]; r];
    for x in 0..q {
        for y in 0..q {
            let z = square.grid[x][y];
            grid[x][y] = z;
            in_column[y][z as usize] = true;
        }
    }
    let mut fill_row = |x: usize, cols: &[usize], values: &[u32], grid: &mut Vec<Vec<u32>>| -> Result<()> {
        let m = bipartite_matching(cols.len(), values.len(), &|c, v| !in_column[cols[c]][values[v] as usize]);
        for (c, mv) in m.iter().enumerate() {
            let v = mv.ok_or_else(|| Error::Internal(format!("no perfect matching completing row {}", x + 1)))?;
            grid[x][cols[c]] = values[v];
            in_column[cols[c]][values[v] as usize] = true;
        }
        Ok(())
    };
    let outer_cols: Vec<usize> = (q..r).collect();
    let big_values: Vec<u32> = (q as u32 + 1..=r as u32).collect();
    for x in 0..q {
        fill_row(x, &outer_cols, &big_values, &mut grid)?;
    }
    let all_cols: Vec<usize> = (0..r).collect();
    let all_values: Vec<u32> = (1..=r as u32).collect();
    for x in q..r {
        fill_row(x, &all_cols, &all_values, &mut grid)?;
    }
    let out = LatinSquare::new(grid)?;
    debug_assert_eq!(out.block(q), square.grid);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_self_locating_dominating;

    #[test]
    fn cyclic_small_orders() {
        assert_eq!(cyclic_latin(1).rows(), &[vec![1]]);
        assert_eq!(cyclic_latin(2).rows(), &[vec![2, 1], vec![1, 2]]);
        assert_eq!(cyclic_latin(3).rows()[0], vec![1, 3, 2]);
        for q in 1..12 {
            assert_eq!(validate_latin(cyclic_latin(q).rows()).unwrap(), None);
        }
    }

    #[test]
    fn cyclic_matches_congruence() {
        for q in 1..10usize {
            let l = cyclic_latin(q);
            for a in 1..=q {
                for b in 1..=q {
                    assert_eq!((a + b + l.get(a, b) as usize) % q, 0);
                }
            }
        }
    }

    #[test]
    fn validation_reports_violations() {
        assert_eq!(
            validate_latin(&[vec![1, 2], vec![1, 2]]).unwrap(),
            Some(LatinViolation::ColumnRepeat { col: 1, value: 1 })
        );
        assert_eq!(
            validate_latin(&[vec![1, 1], vec![2, 2]]).unwrap(),
            Some(LatinViolation::RowRepeat { row: 1, value: 1 })
        );
        assert!(validate_latin(&[vec![1, 2], vec![2]]).is_err());
        assert!(validate_latin(&[vec![1, 3], vec![3, 1]]).is_err());
        assert!(validate_latin(&[]).is_err());
    }

    #[test]
    fn code_round_trip() {
        for q in 2..=6 {
            let l = cyclic_latin(q);
            let code = latin_to_code(&l).unwrap();
            assert_eq!(code.len(), q * q);
            assert_eq!(code_to_latin(&code).unwrap(), l);
        }
    }

    #[test]
    fn latin_code_is_sld() {
        let code = latin_to_code(&cyclic_latin(3)).unwrap();
        assert_eq!(code.len(), 9);
        assert!(is_self_locating_dominating(&code).unwrap().holds);
    }

    #[test]
    fn empty_tower_rejected() {
        let g = HammingGraph::new(2, 3).unwrap();
        // Four codewords, but tower (1,1,*) holds two and (2,2,*) none.
        let code = Code::from_one_based(g, &[[1, 1, 1], [1, 1, 2], [1, 2, 1], [2, 1, 2]]).unwrap();
        assert!(matches!(code_to_latin(&code), Err(Error::Precondition(_))));
    }

    #[test]
    fn extension_small() {
        let l = cyclic_latin(2);
        let e = extend_latin(&l, 4).unwrap();
        assert_eq!(e.block(2), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(validate_latin(e.rows()).unwrap(), None);
        assert!(extend_latin(&l, 3).is_err());
    }

    #[test]
    fn extension_is_deterministic_and_valid() {
        let l = cyclic_latin(4);
        for r in [8, 9, 10, 13] {
            let a = extend_latin(&l, r).unwrap();
            let b = extend_latin(&l, r).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.order(), r);
            assert_eq!(a.block(4), l.rows());
            // Values 1..=q stay inside the block in the first q rows and columns.
            for x in 1..=4 {
                for y in 5..=r {
                    assert!(a.get(x, y) > 4 && a.get(y, x) > 4);
                }
            }
        }
    }

    #[test]
    fn matching_handles_augmenting_paths() {
        // l0 -> {r0, r1}, l1 -> {r0}: greedy takes r0 for l0, augmenting fixes it.
        let m = bipartite_matching(2, 2, &|l, r| l == 0 || r == 0);
        assert_eq!(m, vec![Some(1), Some(0)]);
    }
}
