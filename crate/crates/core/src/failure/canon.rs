//! Canonical labelling of small Tanner graphs with marked variables.
//!
//! Degree-1 checks are dropped first: with uniform variable degree they are
//! implied by each variable's remaining degree. The rest is colour
//! refinement followed by individualisation, keeping the lexicographically
//! least certificate over all leaves of the search tree.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::TannerGraph;

/// Equal keys exactly when the marked graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

struct Coloured {
    vars: usize,
    adj: Vec<Vec<usize>>,
    marked: Vec<bool>,
}

/// Key of `g` with the variables in `marked` given a distinct colour.
pub fn canonical_key(g: &TannerGraph, marked: &[usize]) -> CanonicalKey {
    let n = g.n();
    let inner: Vec<usize> = (0..g.m()).filter(|&c| g.check_degree(c) > 1).collect();
    let mut adj = vec![Vec::new(); n + inner.len()];
    for (i, &c) in inner.iter().enumerate() {
        for &v in g.check_vars(c) {
            adj[n + i].push(v);
            adj[v].push(n + i);
        }
    }
    let mut is_marked = vec![false; n];
    for &v in marked {
        is_marked[v] = true;
    }
    let cg = Coloured {
        vars: n,
        adj,
        marked: is_marked,
    };
    let initial: Vec<u64> = (0..cg.adj.len())
        .map(|x| {
            let kind = u64::from(x >= n);
            let mark = u64::from(x < n && cg.marked[x]);
            (kind << 40) | (mark << 32) | cg.adj[x].len() as u64
        })
        .collect();
    let mut colours = relabel(&initial);
    refine(&cg, &mut colours);
    let mut best = None;
    search(&cg, colours, &mut best);
    CanonicalKey(best.unwrap_or_default())
}

/// Dense ranks of arbitrary ordered values.
fn relabel<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let ranks: BTreeMap<T, u32> = values
        .iter()
        .cloned()
        .collect::<std::collections::BTreeSet<T>>()
        .into_iter()
        .zip(0..)
        .collect();
    values.iter().map(|v| ranks[v]).collect()
}

fn cell_count(colours: &[u32]) -> usize {
    colours.iter().max().map_or(0, |&c| c as usize + 1)
}

/// Splits colour classes by neighbour-colour multisets until stable.
fn refine(g: &Coloured, colours: &mut Vec<u32>) {
    let mut cells = cell_count(colours);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..g.adj.len())
            .map(|x| {
                let mut nb: Vec<u32> = g.adj[x].iter().map(|&y| colours[y]).collect();
                nb.sort_unstable();
                (colours[x], nb)
            })
            .collect();
        let next = relabel(&sigs);
        let next_cells = cell_count(&next);
        *colours = next;
        if next_cells == cells {
            return;
        }
        cells = next_cells;
    }
}

fn search(g: &Coloured, colours: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let size = colours.len();
    let mut counts = vec![0usize; size.max(1)];
    for &c in &colours {
        counts[c as usize] += 1;
    }
    let Some(target) = (0..size).find(|&c| counts[c] > 1) else {
        let cert = certificate(g, &colours);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    let members: Vec<usize> = (0..size)
        .filter(|&x| colours[x] as usize == target)
        .collect();
    // isolated nodes in one cell are interchangeable
    let isolated = g.adj[members[0]].is_empty();
    for &x in members
        .iter()
        .take(if isolated { 1 } else { members.len() })
    {
        let mut split: Vec<u32> = colours.iter().map(|&c| 2 * c + 1).collect();
        split[x] -= 1;
        let mut split = relabel(&split);
        refine(g, &mut split);
        search(g, split, best);
    }
}

/// `[vars, checks, marks..., sorted (var, check) edges...]` under the
/// labelling given by discrete colours.
fn certificate(g: &Coloured, colours: &[u32]) -> Vec<u32> {
    let n = g.vars;
    let checks = g.adj.len() - n;
    // variables take the lowest colours, since kind leads the initial colour
    let mut out = vec![n as u32, checks as u32];
    let mut by_colour: Vec<usize> = (0..n).collect();
    by_colour.sort_unstable_by_key(|&v| colours[v]);
    out.extend(by_colour.iter().map(|&v| u32::from(g.marked[v])));
    let mut edges: Vec<(u32, u32)> = (0..n)
        .flat_map(|v| {
            g.adj[v]
                .iter()
                .map(move |&c| (colours[v], colours[c] - n as u32))
        })
        .collect();
    edges.sort_unstable();
    out.extend(edges.into_iter().flat_map(|(a, b)| [a, b]));
    out
}
