//! Low-weight codeword search and GF(2) rank.

use super::TannerGraph;

/// Rank of the parity-check matrix over GF(2).
pub fn gf2_rank(g: &TannerGraph) -> usize {
    let words = g.n().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..g.m())
        .map(|c| {
            let mut r = vec![0u64; words];
            for &v in g.check_vars(c) {
                r[v / 64] |= 1 << (v % 64);
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..g.n() {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Finds a nonzero codeword of weight at most `max_weight`, or proves none
/// exists.
///
/// Exhaustive: for each candidate lowest variable `v0` the search grows a
/// support from `{v0}`; while some check has odd parity, any codeword
/// containing the support must also contain another neighbour of that
/// check, so branching over those neighbours (restricted to indices above
/// `v0`) visits every codeword whose minimum element is `v0`.
pub fn min_codeword_weight_at_most(g: &TannerGraph, max_weight: usize) -> Option<Vec<usize>> {
    if max_weight == 0 {
        return None;
    }
    let mut parity = vec![false; g.m()];
    let mut in_support = vec![false; g.n()];
    let mut support = Vec::with_capacity(max_weight);
    for v0 in 0..g.n() {
        toggle(g, v0, &mut parity, &mut in_support, &mut support);
        let found = grow(
            g,
            v0,
            max_weight,
            &mut parity,
            &mut in_support,
            &mut support,
        );
        if found {
            let mut s = support.clone();
            s.sort_unstable();
            return Some(s);
        }
        toggle(g, v0, &mut parity, &mut in_support, &mut support);
    }
    None
}

fn toggle(
    g: &TannerGraph,
    v: usize,
    parity: &mut [bool],
    in_support: &mut [bool],
    support: &mut Vec<usize>,
) {
    for &c in g.var_checks(v) {
        parity[c] ^= true;
    }
    in_support[v] ^= true;
    if in_support[v] {
        support.push(v);
    } else {
        support.pop();
    }
}

fn grow(
    g: &TannerGraph,
    v0: usize,
    max_weight: usize,
    parity: &mut [bool],
    in_support: &mut [bool],
    support: &mut Vec<usize>,
) -> bool {
    let odd: Vec<usize> = (0..g.m()).filter(|&c| parity[c]).collect();
    if odd.is_empty() {
        return true;
    }
    let room = max_weight - support.len();
    // each added variable fixes at most gamma odd checks
    if room == 0 || odd.len() > room * g.gamma() {
        return false;
    }
    let c = odd[0];
    for &u in g.check_vars(c) {
        if u <= v0 || in_support[u] {
            continue;
        }
        toggle(g, u, parity, in_support, support);
        if grow(g, v0, max_weight, parity, in_support, support) {
            return true;
        }
        toggle(g, u, parity, in_support, support);
    }
    false
}
