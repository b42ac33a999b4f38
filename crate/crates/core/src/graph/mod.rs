//! Tanner graphs of left-regular LDPC codes.

mod alist;
mod codewords;
mod qc;

pub use codewords::{gf2_rank, min_codeword_weight_at_most};
pub use qc::{find_girth8_shifts, BaseMatrix, ShiftSearch};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::rules::VarState;

/// Bipartite variable/check adjacency with uniform variable degree.
///
/// Immutable once built. Variable `v`'s incident checks keep the order they
/// were given in; check neighbourhoods are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    gamma: usize,
    /// `n * gamma` check indices, row `v` at `v * gamma`.
    var_adj: Vec<usize>,
    check_ptr: Vec<usize>,
    check_adj: Vec<usize>,
    /// Variable-major edge index of each `check_adj` entry.
    check_edges: Vec<usize>,
}

impl TannerGraph {
    /// Builds a graph from per-variable check lists.
    pub fn from_var_adj(m: usize, var_adj: &[Vec<usize>]) -> Result<TannerGraph> {
        let n = var_adj.len();
        let gamma = var_adj.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(n * gamma);
        let mut deg = vec![0usize; m];
        for (v, checks) in var_adj.iter().enumerate() {
            if checks.len() != gamma {
                return Err(Error::InvalidGraph(format!(
                    "variable {v} has degree {}, expected uniform degree {gamma}",
                    checks.len()
                )));
            }
            for (i, &c) in checks.iter().enumerate() {
                if c >= m {
                    return Err(Error::InvalidGraph(format!(
                        "variable {v} references check {c}, but m={m}"
                    )));
                }
                if checks[..i].contains(&c) {
                    return Err(Error::InvalidGraph(format!(
                        "multi-edge between variable {v} and check {c}"
                    )));
                }
                deg[c] += 1;
                flat.push(c);
            }
        }
        let mut check_ptr = Vec::with_capacity(m + 1);
        check_ptr.push(0);
        for d in &deg {
            check_ptr.push(check_ptr.last().unwrap() + d);
        }
        let mut fill = check_ptr.clone();
        let mut check_adj = vec![0; flat.len()];
        let mut check_edges = vec![0; flat.len()];
        for v in 0..n {
            for (k, &c) in flat[v * gamma..(v + 1) * gamma].iter().enumerate() {
                check_adj[fill[c]] = v;
                check_edges[fill[c]] = v * gamma + k;
                fill[c] += 1;
            }
        }
        Ok(TannerGraph {
            n,
            m,
            gamma,
            var_adj: flat,
            check_ptr,
            check_adj,
            check_edges,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn num_edges(&self) -> usize {
        self.var_adj.len()
    }

    #[inline]
    pub fn var_checks(&self, v: usize) -> &[usize] {
        &self.var_adj[v * self.gamma..(v + 1) * self.gamma]
    }

    #[inline]
    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.check_adj[self.check_ptr[c]..self.check_ptr[c + 1]]
    }

    /// Edge ids (`v * gamma + k` for the `k`-th check of `v`) around check `c`,
    /// aligned with [`TannerGraph::check_vars`].
    #[inline]
    pub fn check_edge_ids(&self, c: usize) -> &[usize] {
        &self.check_edges[self.check_ptr[c]..self.check_ptr[c + 1]]
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_ptr[c + 1] - self.check_ptr[c]
    }

    pub fn max_check_degree(&self) -> usize {
        (0..self.m).map(|c| self.check_degree(c)).max().unwrap_or(0)
    }

    /// Per-variable check lists, as accepted by [`TannerGraph::from_var_adj`].
    pub fn var_adj_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.var_checks(v).to_vec()).collect()
    }

    /// `1 - m/n`, a lower bound on the rate.
    pub fn design_rate(&self) -> f64 {
        1.0 - self.m as f64 / self.n as f64
    }

    /// `1 - rank(H)/n`.
    pub fn rate(&self) -> f64 {
        1.0 - gf2_rank(self) as f64 / self.n as f64
    }

    /// Syndrome of a hard word.
    pub fn syndrome_of(&self, word: &[bool]) -> Syndrome {
        assert_eq!(word.len(), self.n, "word length");
        Syndrome(
            (0..self.m)
                .map(|c| {
                    !self
                        .check_vars(c)
                        .iter()
                        .fold(false, |acc, &v| acc ^ word[v])
                })
                .collect(),
        )
    }

    /// Syndrome of an assignment, seen through the hard projection.
    pub fn syndrome(&self, a: &Assignment) -> Syndrome {
        assert_eq!(a.len(), self.n, "assignment length");
        Syndrome(
            (0..self.m)
                .map(|c| {
                    !self
                        .check_vars(c)
                        .iter()
                        .fold(false, |acc, &v| acc ^ a.0[v].hard())
                })
                .collect(),
        )
    }

    pub fn is_codeword(&self, word: &[bool]) -> bool {
        (0..self.m).all(|c| {
            !self
                .check_vars(c)
                .iter()
                .fold(false, |acc, &v| acc ^ word[v])
        })
    }

    /// Length of the shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut bfs = CycleBfs::new(self);
        let mut best = None;
        for v in 0..self.n {
            let limit = best.unwrap_or(usize::MAX);
            if let Some(len) = bfs.shortest_from(self, v, limit) {
                best = Some(best.map_or(len, |b: usize| b.min(len)));
                if len == 4 {
                    break;
                }
            }
        }
        best
    }

    /// Shortest closed walk seen by a BFS rooted at `v`. At least the girth,
    /// and at most the shortest cycle through `v`.
    pub fn shortest_cycle_from(&self, v: usize) -> Option<usize> {
        CycleBfs::new(self).shortest_from(self, v, usize::MAX)
    }
}

/// Reusable BFS buffers for cycle detection. Node ids: variables `0..n`,
/// checks `n..n+m`.
struct CycleBfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl CycleBfs {
    fn new(g: &TannerGraph) -> Self {
        let size = g.n + g.m;
        CycleBfs {
            dist: vec![usize::MAX; size],
            parent: vec![usize::MAX; size],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn shortest_from(&mut self, g: &TannerGraph, root: usize, limit: usize) -> Option<usize> {
        for &t in &self.touched {
            self.dist[t] = usize::MAX;
            self.parent[t] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();

        let mut best = limit;
        self.dist[root] = 0;
        self.touched.push(root);
        self.queue.push_back(root);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            if 2 * du + 1 >= best {
                break;
            }
            let neighbours: &[usize] = if u < g.n {
                g.var_checks(u)
            } else {
                g.check_vars(u - g.n)
            };
            for &w in neighbours {
                let w = if u < g.n { w + g.n } else { w };
                if w == self.parent[u] {
                    continue;
                }
                if self.dist[w] == usize::MAX {
                    self.dist[w] = du + 1;
                    self.parent[w] = u;
                    self.touched.push(w);
                    self.queue.push_back(w);
                } else {
                    best = best.min(du + self.dist[w] + 1);
                }
            }
        }
        (best < limit).then_some(best)
    }
}

/// Per-variable two-bit values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<VarState>);

impl Assignment {
    /// Strong values of a received word.
    pub fn from_word(word: &[bool]) -> Assignment {
        Assignment(word.iter().map(|&b| VarState::strong(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hard(&self) -> Vec<bool> {
        self.0.iter().map(|s| s.hard()).collect()
    }

    /// Variables whose hard value is 1.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.hard().then_some(i))
            .collect()
    }

    pub fn states(&self) -> &[VarState] {
        &self.0
    }
}

/// Per-check satisfaction, `true` = satisfied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub Vec<bool>);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s)
    }

    pub fn unsatisfied(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| (!s).then_some(i))
            .collect()
    }

    pub fn sat(&self) -> &[bool] {
        &self.0
    }
}
