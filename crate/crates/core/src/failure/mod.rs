//! Failure-graph analysis of two-bit flipping rules.
//!
//! A failure graph is a small Tanner graph whose marked variables start in
//! error and on which a rule does not reach the all-zero word within `l`
//! iterations, assuming every variable outside the graph stays correct. For
//! a zero-preserving rule that assumption is self-consistent: a correct
//! strong variable whose checks are all satisfied never moves.
//!
//! The enumerator grows the initial error subgraph one variable at a time.
//! A new variable joins at stage `i` when it becomes corrupt at the end of
//! iteration `i`; before that its hard value is 0, so it does not change any
//! parity and the existing history up to iteration `i - 1` still holds.
//! Variables that weaken without ever flipping never change a parity
//! either, so they are never adjoined.

mod atlas;
mod canon;
mod embed;
mod expand;
mod initial;
mod replay;

pub use atlas::Atlas;
pub use canon::{canonical_key, CanonicalKey};
pub use embed::{
    certify_convergence, contains, embed_in_random_code, find_embedding, reduce_minimal, Caveat,
    Certification, Embedding, HostSpec, Timeout,
};
pub use expand::{enumerate_failures, EnumConfig, Enumeration};
pub use initial::enumerate_initial_subgraphs;

use crate::decode::{decode_two_bit, DecodeOptions, TraceEntry};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::rules::FlipRule;

/// A subgraph, its initially corrupt variables and a non-convergent trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureGraph {
    pub graph: TannerGraph,
    /// Sorted.
    pub errors: Vec<usize>,
    /// Entries `0..=l`, or up to convergence to a nonzero word.
    pub witness: Vec<TraceEntry>,
}

impl FailureGraph {
    pub fn var_count(&self) -> usize {
        self.graph.n()
    }

    pub fn check_count(&self) -> usize {
        self.graph.m()
    }

    pub fn key(&self) -> CanonicalKey {
        canonical_key(&self.graph, &self.errors)
    }
}

/// Result of running a rule on a subgraph in isolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgraphOutcome {
    Converged {
        iterations: usize,
        trace: Vec<TraceEntry>,
    },
    /// Not the zero word after `l` iterations, or a nonzero codeword.
    Failed { witness: Vec<TraceEntry> },
}

impl SubgraphOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, SubgraphOutcome::Failed { .. })
    }
}

/// Runs `rule` on `g` with `errors` corrupt through the decode engine.
///
/// Checks see only in-graph neighbours, which is exact when every outside
/// variable stays correct; refused for rules that are not zero-preserving.
pub fn simulate_on_subgraph(
    g: &TannerGraph,
    errors: &[usize],
    rule: &FlipRule,
    l: usize,
) -> Result<SubgraphOutcome> {
    if !rule.is_zero_preserving() {
        return Err(Error::NotZeroPreserving(rule.name().to_string()));
    }
    let mut y = vec![false; g.n()];
    for &v in errors {
        if v >= g.n() {
            return Err(Error::IndexOutOfRange { index: v, n: g.n() });
        }
        y[v] = true;
    }
    let r = decode_two_bit(g, &y, rule, &DecodeOptions::new(l).traced())?;
    let trace = r.trace.clone().unwrap_or_default();
    Ok(if r.is_correct() {
        SubgraphOutcome::Converged {
            iterations: r.iterations,
            trace,
        }
    } else {
        SubgraphOutcome::Failed { witness: trace }
    })
}
