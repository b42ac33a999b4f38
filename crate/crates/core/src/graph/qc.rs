//! Quasi-cyclic codes built from circulant permutation matrices.
//!
//! Circulant convention: variable `v = col * p + i` is joined to check
//! `row * p + (shift + i) mod p` for every non-empty base entry
//! `(row, col) = shift`. Blocks are indexed row-major.
//!
//! Base-matrix text format: a `rows cols p` header followed by `rows` lines
//! of `cols` integers, `-1` marking an empty (all-zero) block.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TannerGraph;
use crate::error::{Error, Result};

/// Exponent matrix of a quasi-cyclic code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    p: usize,
    cells: Vec<Option<u32>>,
}

impl BaseMatrix {
    pub fn new(rows: usize, cols: usize, p: usize, cells: Vec<Option<u32>>) -> Result<BaseMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidBase("empty base matrix".into()));
        }
        if p == 0 {
            return Err(Error::InvalidBase(
                "circulant size must be at least 1".into(),
            ));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidBase(format!(
                "expected {} entries, found {}",
                rows * cols,
                cells.len()
            )));
        }
        if let Some(s) = cells.iter().flatten().find(|&&s| s as usize >= p) {
            return Err(Error::InvalidBase(format!(
                "shift {s} out of range for p={p}"
            )));
        }
        let base = BaseMatrix {
            rows,
            cols,
            p,
            cells,
        };
        let weights: Vec<usize> = (0..cols).map(|c| base.column_weight(c)).collect();
        if weights.iter().any(|&w| w != weights[0]) || weights[0] == 0 {
            return Err(Error::InvalidBase(format!(
                "column weights must be uniform and positive, found {weights:?}"
            )));
        }
        Ok(base)
    }

    /// A base with every entry filled by `shift(row, col)` (taken mod p).
    pub fn full(
        rows: usize,
        cols: usize,
        p: usize,
        shift: impl Fn(usize, usize) -> u32,
    ) -> BaseMatrix {
        let cells = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| Some(shift(r, c) % p as u32))
            .collect();
        BaseMatrix {
            rows,
            cols,
            p,
            cells,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.cells[row * self.cols + col]
    }

    fn column_weight(&self, col: usize) -> usize {
        (0..self.rows)
            .filter(|&r| self.get(r, col).is_some())
            .count()
    }

    /// Expands the base into its Tanner graph.
    pub fn build(&self) -> Result<TannerGraph> {
        let p = self.p;
        let var_adj: Vec<Vec<usize>> = (0..self.cols * p)
            .map(|v| {
                let (col, i) = (v / p, v % p);
                (0..self.rows)
                    .filter_map(|r| self.get(r, col).map(|s| r * p + (s as usize + i) % p))
                    .collect()
            })
            .collect();
        TannerGraph::from_var_adj(self.rows * p, &var_adj)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.p);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.get(r, c).map_or("-1".to_string(), |s| s.to_string()))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<BaseMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty base matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::parse(ln, format!("`{t}`: {e}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, p] = dims[..] else {
            return Err(Error::parse(ln, "expected `rows cols p`"));
        };
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing base row {}", r + 1)))?;
            let row: Vec<Option<u32>> = line
                .split_whitespace()
                .map(|t| match t.parse::<i64>() {
                    Ok(-1) => Ok(None),
                    Ok(s) if s >= 0 => Ok(Some(s as u32)),
                    _ => Err(Error::parse(ln, format!("bad shift `{t}`"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::parse(
                    ln,
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            cells.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data after base rows"));
        }
        BaseMatrix::new(rows, cols, p, cells)
    }
}

/// Search configuration for [`find_girth8_shifts`].
#[derive(Clone, Debug)]
pub struct ShiftSearch {
    /// Randomised restarts before giving up.
    pub restarts: usize,
    /// Random candidate columns tried per column before restarting.
    pub tries_per_column: usize,
    /// Use exhaustive search when `p^((rows-1)(cols-1))` is at most this.
    pub exhaustive_limit: u64,
    /// Node budget of the exhaustive fallback run after the randomised
    /// search fails; 0 disables it.
    pub fallback_budget: usize,
}

impl Default for ShiftSearch {
    fn default() -> Self {
        ShiftSearch {
            restarts: 64,
            tries_per_column: 4096,
            exhaustive_limit: 1 << 22,
            fallback_budget: 50_000_000,
        }
    }
}

/// Finds a fully populated `rows x cols` exponent matrix whose code has
/// girth at least 8 (no 4- or 6-cycles).
///
/// Small instances are searched exhaustively with the first row and column
/// normalised to zero (adding a constant to a block row or column only
/// relabels nodes); larger ones by seeded randomised greedy column
/// placement with restarts, then a budgeted exhaustive pass.
pub fn find_girth8_shifts(
    rows: usize,
    cols: usize,
    p: usize,
    seed: u64,
    cfg: &ShiftSearch,
) -> Result<BaseMatrix> {
    if rows == 0 || cols == 0 || p == 0 {
        return Err(Error::InvalidParameter(
            "rows, cols and p must be positive".into(),
        ));
    }
    let space = (p as f64).powi(((rows - 1) * (cols - 1)) as i32);
    let mut shifts = vec![vec![0u32; cols]; rows];
    if space <= cfg.exhaustive_limit as f64 {
        let mut visited = 0usize;
        if exhaustive(&mut shifts, 1, p, &mut visited, usize::MAX) == Some(true) {
            return Ok(BaseMatrix::full(rows, cols, p, |r, c| shifts[r][c]));
        }
        return Err(Error::SearchExhausted { attempts: visited });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..cfg.restarts {
        for col in 1..cols {
            let mut placed = false;
            for _ in 0..cfg.tries_per_column {
                for row in shifts.iter_mut().skip(1) {
                    row[col] = rng.gen_range(0..p as u32);
                }
                if column_ok(&shifts, col, p) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'restart;
            }
        }
        return Ok(BaseMatrix::full(rows, cols, p, |r, c| shifts[r][c]));
    }
    let mut visited = 0usize;
    if cfg.fallback_budget > 0
        && exhaustive(&mut shifts, 1, p, &mut visited, cfg.fallback_budget) == Some(true)
    {
        return Ok(BaseMatrix::full(rows, cols, p, |r, c| shifts[r][c]));
    }
    Err(Error::SearchExhausted {
        attempts: cfg.restarts + visited,
    })
}

/// `Some(found)` when the subtree was fully searched, `None` once `budget`
/// nodes have been visited.
fn exhaustive(
    shifts: &mut [Vec<u32>],
    col: usize,
    p: usize,
    visited: &mut usize,
    budget: usize,
) -> Option<bool> {
    let cols = shifts[0].len();
    if col == cols {
        return Some(true);
    }
    let rows = shifts.len();
    let total = p.pow((rows - 1) as u32);
    // equal columns close a 4-cycle, so columns past the first can be
    // taken in strictly increasing order
    let start = if col > 1 {
        column_code(shifts, col - 1, p) + 1
    } else {
        0
    };
    for code in start..total {
        *visited += 1;
        if *visited > budget {
            return None;
        }
        let mut x = code;
        for row in shifts.iter_mut().skip(1).rev() {
            row[col] = (x % p) as u32;
            x /= p;
        }
        if column_ok(shifts, col, p) && exhaustive(shifts, col + 1, p, visited, budget)? {
            return Some(true);
        }
    }
    Some(false)
}

fn column_code(shifts: &[Vec<u32>], col: usize, p: usize) -> usize {
    shifts
        .iter()
        .skip(1)
        .fold(0, |acc, row| acc * p + row[col] as usize)
}

/// No 4- or 6-cycle uses column `col` together with columns before it.
///
/// With the circulant convention a closed path alternating rows `r_a` and
/// columns `j_a` closes iff `sum_a (s[r_a][j_a] - s[r_a][j_{a+1}]) = 0 mod p`.
fn column_ok(s: &[Vec<u32>], col: usize, p: usize) -> bool {
    let rows = s.len();
    let p = p as i64;
    let at = |r: usize, c: usize| s[r][c] as i64;
    let zero = |x: i64| x.rem_euclid(p) == 0;
    for j2 in 0..col {
        for r1 in 0..rows {
            for r2 in 0..rows {
                if r1 != r2 && zero(at(r1, col) - at(r1, j2) + at(r2, j2) - at(r2, col)) {
                    return false;
                }
            }
        }
    }
    for j2 in 0..col {
        for j3 in 0..col {
            if j2 == j3 {
                continue;
            }
            for r1 in 0..rows {
                for r2 in 0..rows {
                    for r3 in 0..rows {
                        if r1 == r2 || r2 == r3 || r1 == r3 {
                            continue;
                        }
                        let sum = at(r1, col) - at(r1, j2) + at(r2, j2) - at(r2, j3) + at(r3, j3)
                            - at(r3, col);
                        if zero(sum) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_collapses_to_complete_bipartite() {
        let g = BaseMatrix::full(3, 4, 1, |_, _| 0).build().unwrap();
        assert_eq!((g.n(), g.m(), g.gamma()), (4, 3, 3));
        for c in 0..3 {
            assert_eq!(g.check_vars(c), &[0, 1, 2, 3]);
        }
        assert_eq!(g.girth(), Some(4));
    }

    #[test]
    fn circulant_convention() {
        let base = BaseMatrix::new(1, 1, 5, vec![Some(2)]).unwrap();
        let g = base.build().unwrap();
        for v in 0..5 {
            assert_eq!(g.var_checks(v), &[(v + 2) % 5]);
        }
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(BaseMatrix::new(2, 2, 3, vec![Some(0), Some(3), Some(1), Some(1)]).is_err());
        assert!(BaseMatrix::new(2, 2, 3, vec![Some(0), None, Some(1), Some(1)]).is_err());
        assert!(BaseMatrix::new(2, 2, 0, vec![Some(0); 4]).is_err());
        assert!(BaseMatrix::parse("2 2 3\n0 1\n").is_err());
        assert!(BaseMatrix::parse("2 2 3\n0 1\n1 x\n").is_err());
    }

    #[test]
    fn text_roundtrip_with_empty_blocks() {
        let text = "2 3 4\n0 -1 1\n2 3 -1\n";
        let base = BaseMatrix::parse(text);
        // column weights 2,1,1 are not uniform
        assert!(base.is_err());
        let text = "2 3 4\n0 -1 1\n-1 3 -1\n";
        let base = BaseMatrix::parse(text).unwrap();
        assert_eq!(base.to_text(), text);
        let g = base.build().unwrap();
        assert_eq!(g.gamma(), 1);
    }

    #[test]
    fn column_check_agrees_with_bfs_girth() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = rng.gen_range(3..9);
            let cols = rng.gen_range(2..5);
            let s: Vec<Vec<u32>> = (0..3)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..p as u32)).collect())
                .collect();
            let algebraic = (1..cols).all(|c| column_ok(&s, c, p));
            let g = BaseMatrix::full(3, cols, p, |r, c| s[r][c])
                .build()
                .unwrap();
            let bfs = g.girth().is_none_or(|x| x >= 8);
            assert_eq!(algebraic, bfs, "{s:?} p={p}");
        }
    }

    #[test]
    fn tiny_p_exhausts() {
        let err = find_girth8_shifts(3, 4, 2, 0, &ShiftSearch::default()).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { .. }));
    }

    #[test]
    fn three_by_six_needs_p_18() {
        let err = find_girth8_shifts(3, 6, 16, 1, &ShiftSearch::default()).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { .. }));
        let base = find_girth8_shifts(3, 6, 18, 1, &ShiftSearch::default()).unwrap();
        assert!(base.build().unwrap().girth().unwrap() >= 8);
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = ShiftSearch::default();
        let a = find_girth8_shifts(3, 8, 40, 5, &cfg).unwrap();
        let b = find_girth8_shifts(3, 8, 40, 5, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.build().unwrap().girth().unwrap() >= 8);
    }

    #[test]
    fn cyclic_shift_is_automorphism() {
        let base = find_girth8_shifts(3, 5, 13, 1, &ShiftSearch::default()).unwrap();
        let g = base.build().unwrap();
        let p = base.p();
        let shift = |x: usize| (x / p) * p + (x % p + 1) % p;
        for v in 0..g.n() {
            let mut image: Vec<usize> = g.var_checks(v).iter().map(|&c| shift(c)).collect();
            image.sort_unstable();
            let mut target = g.var_checks(shift(v)).to_vec();
            target.sort_unstable();
            assert_eq!(image, target);
        }
    }
}
