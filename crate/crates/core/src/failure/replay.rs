//! Self-contained subgraph simulator used inside the enumerator.
//!
//! Recomputes every parity from scratch each iteration and keeps the whole
//! parity history, which candidate trajectories are evaluated against.

use crate::decode::TraceEntry;
use crate::graph::Assignment;
use crate::rules::{FlipRule, VarState};

/// Per-variable check lists plus check count; variables `0..k` start corrupt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sub {
    pub adj: Vec<Vec<usize>>,
    pub m: usize,
    pub k: usize,
}

impl Sub {
    pub fn check_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.m];
        for checks in &self.adj {
            for &c in checks {
                deg[c] += 1;
            }
        }
        deg
    }

    pub fn graph(&self) -> crate::graph::TannerGraph {
        crate::graph::TannerGraph::from_var_adj(self.m, &self.adj)
            .expect("enumerated graphs are well formed")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Replay {
    /// `unsat[t][c]` after `t` updates.
    pub unsat: Vec<Vec<bool>>,
    pub states: Vec<Vec<VarState>>,
    /// Iterations to reach the zero word, `None` on failure.
    pub converged_at: Option<usize>,
}

impl Replay {
    pub fn failed(&self) -> bool {
        self.converged_at.is_none()
    }

    pub fn witness(&self) -> Vec<TraceEntry> {
        (0..self.states.len())
            .map(|t| {
                let before = &self.unsat[t.saturating_sub(1)];
                TraceEntry::new(Assignment(self.states[t].clone()), &self.unsat[t], before)
            })
            .collect()
    }
}

fn parities(sub: &Sub, states: &[VarState]) -> Vec<bool> {
    let mut unsat = vec![false; sub.m];
    for (v, checks) in sub.adj.iter().enumerate() {
        if states[v].hard() {
            for &c in checks {
                unsat[c] = !unsat[c];
            }
        }
    }
    unsat
}

/// Class counts `(up, un, sp)` of `checks` between two parity snapshots.
pub(crate) fn counts(
    checks: impl Iterator<Item = usize>,
    before: &[bool],
    now: &[bool],
) -> (usize, usize, usize) {
    let (mut up, mut un, mut sp) = (0, 0, 0);
    for c in checks {
        match (before[c], now[c]) {
            (true, true) => up += 1,
            (false, true) => un += 1,
            (false, false) => sp += 1,
            (true, false) => {}
        }
    }
    (up, un, sp)
}

pub(crate) fn replay(sub: &Sub, rule: &FlipRule, l: usize) -> Replay {
    let mut states: Vec<VarState> = (0..sub.adj.len())
        .map(|v| VarState::strong(v < sub.k))
        .collect();
    let mut out = Replay {
        unsat: Vec::new(),
        states: Vec::new(),
        converged_at: None,
    };
    for t in 0..=l {
        let unsat = parities(sub, &states);
        let zero_syndrome = !unsat.iter().any(|&u| u);
        out.unsat.push(unsat);
        out.states.push(states.clone());
        if zero_syndrome {
            if states.iter().all(|s| !s.hard()) {
                out.converged_at = Some(t);
            }
            return out;
        }
        if t == l {
            break;
        }
        let now = &out.unsat[t];
        let before = &out.unsat[t.saturating_sub(1)];
        states = sub
            .adj
            .iter()
            .zip(&states)
            .map(|(checks, &s)| {
                let (up, un, sp) = counts(checks.iter().copied(), before, now);
                rule.next(s, up, un, sp)
            })
            .collect();
    }
    out
}
