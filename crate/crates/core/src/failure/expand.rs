use std::collections::BTreeMap;

use rayon::prelude::*;

use super::canon::{canonical_key, CanonicalKey};
use super::initial::{adjoin, for_each_subset, girth_ok, initial_subs};
use super::replay::{counts, replay, Replay, Sub};
use super::FailureGraph;
use crate::error::{Error, Result};
use crate::rules::{FlipRule, VarState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Initially corrupt variables.
    pub k: usize,
    /// Iterations allowed to the rule.
    pub l: usize,
    /// Largest graph explored, in variables.
    pub n_max: usize,
    pub girth_min: usize,
    pub check_degree_cap: Option<usize>,
    /// Graphs expanded before giving up; `None` is unlimited.
    pub budget: Option<u64>,
}

impl EnumConfig {
    pub fn new(k: usize, l: usize, n_max: usize) -> EnumConfig {
        EnumConfig {
            k,
            l,
            n_max,
            girth_min: 8,
            check_degree_cap: None,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Failing graphs, sorted by canonical key.
    pub candidates: Vec<FailureGraph>,
    /// Some valid extension was cut by `n_max`.
    pub truncated: bool,
    pub budget_exhausted: bool,
    /// Graphs whose extensions were generated.
    pub expanded: u64,
}

impl Enumeration {
    /// No failure graph with at most `n_max` variables is missing.
    pub fn complete(&self) -> bool {
        !self.budget_exhausted
    }
}

struct Node {
    sub: Sub,
    run: Replay,
}

/// Stage-wise expansion of every initial error subgraph.
///
/// Stage `i` closes the current graphs under adjoining single variables
/// that turn corrupt exactly at iteration `i`; failing graphs are emitted
/// and not grown further, the rest move on to stage `i + 1` while their own
/// decoding is still running there.
pub fn enumerate_failures(rule: &FlipRule, cfg: &EnumConfig) -> Result<Enumeration> {
    if !rule.is_zero_preserving() {
        return Err(Error::NotZeroPreserving(rule.name().to_string()));
    }
    if cfg.n_max < cfg.k {
        return Err(Error::InvalidParameter(format!(
            "n_max={} is below k={}",
            cfg.n_max, cfg.k
        )));
    }
    let gamma = rule.gamma();
    let mut out = Enumeration {
        candidates: Vec::new(),
        truncated: false,
        budget_exhausted: false,
        expanded: 0,
    };
    let mut emitted: BTreeMap<CanonicalKey, Node> = BTreeMap::new();
    let mut frontier: BTreeMap<CanonicalKey, Node> = BTreeMap::new();
    for sub in initial_subs(cfg.k, gamma, cfg.girth_min, cfg.check_degree_cap) {
        let run = replay(&sub, rule, cfg.l);
        let key = key_of(&sub);
        let node = Node { sub, run };
        if node.run.failed() {
            emitted.insert(key, node);
        } else if node.run.converged_at.is_some_and(|t| t >= 1) {
            frontier.insert(key, node);
        }
    }

    'stages: for stage in 1..=cfg.l {
        let mut seen: Vec<CanonicalKey> = frontier.keys().cloned().collect();
        seen.sort();
        let mut next_frontier = BTreeMap::new();
        let mut current: Vec<(CanonicalKey, Node)> =
            std::mem::take(&mut frontier).into_iter().collect();
        while !current.is_empty() {
            if let Some(budget) = cfg.budget {
                let left = budget.saturating_sub(out.expanded) as usize;
                if current.len() > left {
                    current.truncate(left);
                    out.budget_exhausted = true;
                }
            }
            out.expanded += current.len() as u64;
            let grown: Vec<(Vec<(CanonicalKey, Node)>, bool)> = current
                .par_iter()
                .map(|(_, node)| children(node, stage, rule, cfg))
                .collect();
            let mut fresh = BTreeMap::new();
            for (kids, cut) in grown {
                out.truncated |= cut;
                for (key, child) in kids {
                    if seen.binary_search(&key).is_ok() || emitted.contains_key(&key) {
                        continue;
                    }
                    if child.run.failed() {
                        emitted.insert(key, child);
                    } else {
                        fresh.entry(key).or_insert(child);
                    }
                }
            }
            for (key, node) in current {
                if node.run.converged_at.is_some_and(|t| t > stage) {
                    next_frontier.insert(key, node);
                }
            }
            seen.extend(fresh.keys().cloned());
            seen.sort();
            current = fresh.into_iter().collect();
            if out.budget_exhausted {
                break 'stages;
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }

    out.candidates = emitted
        .into_values()
        .map(|node| FailureGraph {
            graph: node.sub.graph(),
            errors: (0..node.sub.k).collect(),
            witness: node.run.witness(),
        })
        .collect();
    Ok(out)
}

fn key_of(sub: &Sub) -> CanonicalKey {
    let marked: Vec<usize> = (0..sub.k).collect();
    canonical_key(&sub.graph(), &marked)
}

/// Graphs obtained by adjoining one variable corrupt exactly at `stage`,
/// and whether `n_max` cut any of them.
fn children(
    node: &Node,
    stage: usize,
    rule: &FlipRule,
    cfg: &EnumConfig,
) -> (Vec<(CanonicalKey, Node)>, bool) {
    let gamma = rule.gamma();
    let sub = &node.sub;
    let hist = &node.run.unsat;
    let deg = sub.check_degrees();
    // checks ever unsatisfied in the parities seen by updates 1..=stage
    let touched: Vec<bool> = (0..sub.m)
        .map(|c| hist[..stage].iter().any(|u| u[c]))
        .collect();
    let adjacent = |a: usize, b: usize| sub.adj.iter().any(|cs| cs.contains(&a) && cs.contains(&b));
    let mut kids = Vec::new();
    let mut cut = false;
    for_each_subset(sub.m, 1, gamma, &mut |shared| {
        if !shared.iter().any(|&c| touched[c]) {
            return;
        }
        if cfg
            .check_degree_cap
            .is_some_and(|cap| shared.iter().any(|&c| deg[c] >= cap))
        {
            return;
        }
        if cfg.girth_min > 4
            && shared
                .iter()
                .enumerate()
                .any(|(i, &a)| shared[i + 1..].iter().any(|&b| adjacent(a, b)))
        {
            return;
        }
        if !flips_at(shared, gamma, hist, stage, rule) {
            return;
        }
        let child = adjoin(sub, shared, gamma);
        if !girth_ok(&child, cfg.girth_min) {
            return;
        }
        if child.adj.len() > cfg.n_max {
            cut = true;
            return;
        }
        let run = replay(&child, rule, cfg.l);
        kids.push((key_of(&child), Node { sub: child, run }));
    });
    (kids, cut)
}

/// A correct variable on `shared` plus fresh checks stays hard 0 through
/// iteration `stage - 1` and is hard 1 after iteration `stage`.
fn flips_at(
    shared: &[usize],
    gamma: usize,
    hist: &[Vec<bool>],
    stage: usize,
    rule: &FlipRule,
) -> bool {
    let fresh = gamma - shared.len();
    let mut s = VarState::StrongZero;
    for t in 1..=stage {
        let now = &hist[t - 1];
        let before = &hist[t.saturating_sub(2)];
        let (up, un, sp) = counts(shared.iter().copied(), before, now);
        s = rule.next(s, up, un, sp + fresh);
        if s.hard() != (t == stage) {
            return false;
        }
    }
    true
}
