//! Subgraph embeddings of failure graphs into codes.
//!
//! Pattern and host variables both have degree γ, so an embedding that is
//! injective on variables and on checks and preserves edges is automatically
//! an induced copy: every host edge at an image variable is an image edge.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Atlas, FailureGraph};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;

/// Image of every pattern variable and check in the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub vars: Vec<usize>,
    pub checks: Vec<usize>,
}

/// The search visited its node budget without an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Timeout;

/// Finds a copy of `pattern` in `host` sending the marked variables onto
/// `anchor` (as sets). `None` proves there is none.
pub fn find_embedding(
    pattern: &TannerGraph,
    marks: &[usize],
    host: &TannerGraph,
    anchor: &[usize],
    node_budget: u64,
) -> std::result::Result<Option<Embedding>, Timeout> {
    if marks.len() != anchor.len()
        || pattern.n() > host.n()
        || (pattern.n() > 0 && pattern.gamma() != host.gamma())
    {
        return Ok(None);
    }
    let order = search_order(pattern, marks);
    let mut s = Search {
        pattern,
        host,
        anchor,
        order: &order,
        marked: marks.len(),
        var_img: vec![usize::MAX; pattern.n()],
        check_img: vec![usize::MAX; pattern.m()],
        var_used: vec![false; host.n()],
        check_used: vec![false; host.m()],
        nodes: 0,
        budget: node_budget,
    };
    match s.extend(0) {
        Some(true) => Ok(Some(Embedding {
            vars: s.var_img,
            checks: s.check_img,
        })),
        Some(false) => Ok(None),
        None => Err(Timeout),
    }
}

/// Marked variables first, then breadth-first through shared checks so that
/// every later variable has an already-mapped check where possible.
fn search_order(g: &TannerGraph, marks: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(g.n());
    let mut placed = vec![false; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in marks {
        placed[v] = true;
        order.push(v);
        queue.push_back(v);
    }
    let mut next_seed = 0;
    loop {
        while let Some(v) = queue.pop_front() {
            for &c in g.var_checks(v) {
                for &w in g.check_vars(c) {
                    if !placed[w] {
                        placed[w] = true;
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        while next_seed < g.n() && placed[next_seed] {
            next_seed += 1;
        }
        if next_seed == g.n() {
            return order;
        }
        placed[next_seed] = true;
        order.push(next_seed);
        queue.push_back(next_seed);
    }
}

struct Search<'a> {
    pattern: &'a TannerGraph,
    host: &'a TannerGraph,
    anchor: &'a [usize],
    order: &'a [usize],
    marked: usize,
    var_img: Vec<usize>,
    check_img: Vec<usize>,
    var_used: Vec<bool>,
    check_used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `Some(found)`, or `None` once the budget runs out.
    fn extend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = if depth < self.marked {
            self.anchor.to_vec()
        } else if let Some(&c) = self
            .pattern
            .var_checks(v)
            .iter()
            .find(|&&c| self.check_img[c] != usize::MAX)
        {
            self.host.check_vars(self.check_img[c]).to_vec()
        } else {
            (0..self.host.n()).collect()
        };
        let anchored = depth >= self.marked;
        for h in candidates {
            if self.var_used[h] || (anchored && self.anchor.contains(&h)) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            for perm in permutations(self.pattern.gamma()) {
                if let Some(bound) = self.bind(v, h, &perm) {
                    if self.extend(depth + 1)? {
                        return Some(true);
                    }
                    self.unbind(v, h, &bound);
                }
            }
        }
        Some(false)
    }

    /// Maps `v -> h` with pattern check `i` of `v` onto host check
    /// `perm[i]` of `h`; returns the pattern checks newly bound.
    fn bind(&mut self, v: usize, h: usize, perm: &[usize]) -> Option<Vec<usize>> {
        let pc = self.pattern.var_checks(v);
        let hc = self.host.var_checks(h);
        let mut fresh = Vec::new();
        for (i, &c) in pc.iter().enumerate() {
            let target = hc[perm[i]];
            if self.check_img[c] == usize::MAX {
                if self.check_used[target] {
                    for &f in &fresh {
                        self.check_used[self.check_img[f]] = false;
                        self.check_img[f] = usize::MAX;
                    }
                    return None;
                }
                self.check_img[c] = target;
                self.check_used[target] = true;
                fresh.push(c);
            } else if self.check_img[c] != target {
                for &f in &fresh {
                    self.check_used[self.check_img[f]] = false;
                    self.check_img[f] = usize::MAX;
                }
                return None;
            }
        }
        self.var_img[v] = h;
        self.var_used[h] = true;
        Some(fresh)
    }

    fn unbind(&mut self, v: usize, h: usize, fresh: &[usize]) {
        for &c in fresh {
            self.check_used[self.check_img[c]] = false;
            self.check_img[c] = usize::MAX;
        }
        self.var_img[v] = usize::MAX;
        self.var_used[h] = false;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

const CONTAINMENT_BUDGET: u64 = 10_000_000;

/// `small` occurs in `big` with its marked variables onto `big`'s.
pub fn contains(big: &FailureGraph, small: &FailureGraph) -> bool {
    if small.var_count() > big.var_count() || small.errors.len() != big.errors.len() {
        return false;
    }
    // small graphs keep this far below the budget; a timeout keeps both
    find_embedding(
        &small.graph,
        &small.errors,
        &big.graph,
        &big.errors,
        CONTAINMENT_BUDGET,
    )
    .ok()
    .flatten()
    .is_some()
}

/// Drops every candidate containing another one.
pub fn reduce_minimal(mut candidates: Vec<FailureGraph>) -> Vec<FailureGraph> {
    candidates.sort_by_key(|c| (c.var_count(), c.key()));
    let mut kept: Vec<FailureGraph> = Vec::new();
    for c in candidates {
        if !kept
            .iter()
            .any(|k| k.var_count() < c.var_count() && contains(&c, k))
        {
            kept.push(c);
        }
    }
    kept
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// Nothing was checked.
    EmptyAtlas,
    /// Failure graphs beyond the atlas size bound are not covered.
    SizeBounded,
    /// Error weight differs from the atlas's, so no member can match.
    WeightMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// No atlas member occurs around the error pattern.
    Certified { caveats: Vec<Caveat> },
    /// Member `member` occurs; the rule may still converge.
    Unknown { member: usize, embedding: Embedding },
    /// The containment search for `member` ran out of budget.
    Timeout { member: usize },
    /// The atlas enumeration itself was cut short.
    IncompleteAtlas,
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }
}

/// Sufficient test for convergence of the atlas's rule on `host` from the
/// error support `errors` within the atlas's iteration count.
pub fn certify_convergence(
    host: &TannerGraph,
    errors: &[usize],
    atlas: &Atlas,
    node_budget: u64,
) -> Result<Certification> {
    let mut errs = errors.to_vec();
    errs.sort_unstable();
    errs.dedup();
    if let Some(&v) = errs.iter().find(|&&v| v >= host.n()) {
        return Err(Error::IndexOutOfRange {
            index: v,
            n: host.n(),
        });
    }
    if !atlas.complete {
        return Ok(Certification::IncompleteAtlas);
    }
    let mut caveats = Vec::new();
    if atlas.members.is_empty() {
        caveats.push(Caveat::EmptyAtlas);
    } else if errs.len() != atlas.k {
        caveats.push(Caveat::WeightMismatch);
    }
    for (i, m) in atlas.members.iter().enumerate() {
        match find_embedding(&m.graph, &m.errors, host, &errs, node_budget) {
            Ok(Some(embedding)) => {
                return Ok(Certification::Unknown {
                    member: i,
                    embedding,
                })
            }
            Ok(None) => {}
            Err(Timeout) => return Ok(Certification::Timeout { member: i }),
        }
    }
    if atlas.truncated {
        caveats.push(Caveat::SizeBounded);
    }
    Ok(Certification::Certified { caveats })
}

/// Shape of a random host grown around a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostSpec {
    pub extra_vars: usize,
    pub extra_checks: usize,
    pub max_check_degree: usize,
    pub girth_min: usize,
    pub seed: u64,
}

impl Default for HostSpec {
    fn default() -> HostSpec {
        HostSpec {
            extra_vars: 120,
            extra_checks: 60,
            max_check_degree: 7,
            girth_min: 8,
            seed: 1,
        }
    }
}

const HOST_ATTEMPTS: usize = 200;

/// A random host containing `pattern` on its first variables and checks,
/// with the same indices, and girth at least `spec.girth_min`.
pub fn embed_in_random_code(pattern: &TannerGraph, spec: &HostSpec) -> Result<TannerGraph> {
    let gamma = if pattern.n() == 0 { 3 } else { pattern.gamma() };
    let m = pattern.m() + spec.extra_checks;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    'attempt: for _ in 0..HOST_ATTEMPTS {
        let mut adj = pattern.var_adj_lists();
        let mut deg: Vec<usize> = (0..m)
            .map(|c| {
                if c < pattern.m() {
                    pattern.check_degree(c)
                } else {
                    0
                }
            })
            .collect();
        for _ in 0..spec.extra_vars {
            let Some(checks) = pick_checks(&adj, m, &deg, gamma, spec, &mut rng) else {
                continue 'attempt;
            };
            for &c in &checks {
                deg[c] += 1;
            }
            adj.push(checks);
        }
        let g = TannerGraph::from_var_adj(m, &adj)?;
        if g.girth().is_none_or(|x| x >= spec.girth_min) {
            return Ok(g);
        }
    }
    Err(Error::SearchExhausted {
        attempts: HOST_ATTEMPTS,
    })
}

/// `gamma` checks at pairwise distance at least `girth_min - 2`,
/// preferring low degree, found by backtracking over that order.
fn pick_checks(
    adj: &[Vec<usize>],
    m: usize,
    deg: &[usize],
    gamma: usize,
    spec: &HostSpec,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let mut check_nbrs = vec![Vec::new(); m];
    for (v, cs) in adj.iter().enumerate() {
        for &c in cs {
            check_nbrs[c].push(v);
        }
    }
    let mut open: Vec<usize> = (0..m).filter(|&c| deg[c] < spec.max_check_degree).collect();
    open.shuffle(rng);
    open.sort_by_key(|&c| deg[c]);
    let min = spec.girth_min.saturating_sub(2);
    let mut chosen = Vec::with_capacity(gamma);
    let mut nodes = 0usize;
    extend_far(adj, &check_nbrs, &open, min, gamma, &mut chosen, &mut nodes).then_some(chosen)
}

const PICK_BUDGET: usize = 2000;

fn extend_far(
    adj: &[Vec<usize>],
    check_nbrs: &[Vec<usize>],
    pool: &[usize],
    min: usize,
    gamma: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut usize,
) -> bool {
    if chosen.len() == gamma {
        return true;
    }
    for (i, &c) in pool.iter().enumerate() {
        *nodes += 1;
        if *nodes > PICK_BUDGET {
            return false;
        }
        let near = near_checks(adj, check_nbrs, c, min);
        let rest: Vec<usize> = pool[i + 1..]
            .iter()
            .copied()
            .filter(|x| !near[*x])
            .collect();
        if rest.len() + 1 < gamma - chosen.len() {
            continue;
        }
        chosen.push(c);
        if extend_far(adj, check_nbrs, &rest, min, gamma, chosen, nodes) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Checks at distance below `min` from `a`, including `a`.
fn near_checks(adj: &[Vec<usize>], check_nbrs: &[Vec<usize>], a: usize, min: usize) -> Vec<bool> {
    let mut near = vec![false; check_nbrs.len()];
    near[a] = true;
    let mut frontier = vec![a];
    let mut d = 0;
    // each layer is two bipartite steps
    while !frontier.is_empty() && d + 2 < min {
        d += 2;
        let mut next = Vec::new();
        for c in frontier {
            for &v in &check_nbrs[c] {
                for &e in &adj[v] {
                    if !near[e] {
                        near[e] = true;
                        next.push(e);
                    }
                }
            }
        }
        frontier = next;
    }
    near
}
