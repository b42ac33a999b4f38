//! Iterative hard-decision decoders.
//!
//! Every decoder checks the syndrome before its first update, so an
//! error-free word costs zero iterations. One iteration is one synchronous
//! update of all variable nodes.

mod cascade;
mod gallager;
mod parallel;
mod trace;
mod two_bit;

pub use cascade::{decode_cascade, resolve_rule, CascadeSpec};
pub use gallager::decode_gallager_b;
pub use parallel::decode_parallel_bf;
pub use trace::{dump_trace, parse_trace, trace_digest};
pub use two_bit::decode_two_bit;

use crate::error::Result;
use crate::graph::{Assignment, Syndrome, TannerGraph};
use crate::rules::{CheckState, FlipRule};

/// Per-iteration snapshot. Entry `t` holds the values after `t` updates,
/// their syndrome, and the check states relative to entry `t - 1` (entry 0
/// compares against itself, so every check is "previously" something).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceEntry {
    pub states: Assignment,
    pub syndrome: Syndrome,
    pub checks: Vec<CheckState>,
}

impl TraceEntry {
    pub(crate) fn new(states: Assignment, unsat: &[bool], prev_unsat: &[bool]) -> TraceEntry {
        TraceEntry {
            states,
            syndrome: Syndrome(unsat.iter().map(|&u| !u).collect()),
            checks: unsat
                .iter()
                .zip(prev_unsat)
                .map(|(&u, &pu)| CheckState::classify(!pu, !u))
                .collect(),
        }
    }

    /// Variables whose hard value is 1.
    pub fn corrupt(&self) -> Vec<usize> {
        self.states.support()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// All checks satisfied by `output`.
    pub converged: bool,
    pub output: Vec<bool>,
    pub iterations: usize,
    /// Cascade member that converged (0-based), `None` otherwise.
    pub algorithm_index: Option<usize>,
    pub trace: Option<Vec<TraceEntry>>,
}

impl DecodeResult {
    /// Converged to the transmitted all-zero word.
    pub fn is_correct(&self) -> bool {
        self.converged && self.output.iter().all(|&b| !b)
    }

    /// Converged, but to a different codeword.
    pub fn is_miscorrection(&self) -> bool {
        self.converged && self.output.iter().any(|&b| b)
    }

    pub fn bit_errors(&self) -> usize {
        self.output.iter().filter(|&&b| b).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeOptions {
    pub max_iter: usize,
    pub trace: bool,
    /// Stop as soon as the decoder state repeats. The reported result is the
    /// one running to `max_iter` would produce.
    pub detect_cycles: bool,
}

impl DecodeOptions {
    pub fn new(max_iter: usize) -> DecodeOptions {
        DecodeOptions {
            max_iter,
            trace: false,
            detect_cycles: false,
        }
    }

    pub fn traced(mut self) -> DecodeOptions {
        self.trace = true;
        self
    }

    pub fn with_cycle_detection(mut self) -> DecodeOptions {
        self.detect_cycles = true;
        self
    }
}

/// A configured decoder, as used by the simulation harness and the CLI.
#[derive(Clone, Debug, PartialEq)]
pub enum Decoder {
    ParallelBf {
        max_iter: usize,
    },
    TwoBit {
        rule: FlipRule,
        max_iter: usize,
    },
    Cascade(CascadeSpec),
    GallagerB {
        max_iter: usize,
        schedule: Vec<usize>,
    },
}

impl Decoder {
    pub fn two_bit(rule: FlipRule, max_iter: usize) -> Decoder {
        Decoder::TwoBit { rule, max_iter }
    }

    /// Gallager B with the constant threshold `gamma - 1` (which is also
    /// Gallager A for degree 3).
    pub fn gallager_b(gamma: usize, max_iter: usize) -> Decoder {
        Decoder::GallagerB {
            max_iter,
            schedule: vec![gamma.saturating_sub(1).max(1)],
        }
    }

    /// Short identifier without commas, suitable for CSV.
    pub fn name(&self) -> String {
        match self {
            Decoder::ParallelBf { .. } => "bf-parallel".into(),
            Decoder::TwoBit { rule, .. } => rule.name().to_string(),
            Decoder::Cascade(spec) => spec.name(),
            Decoder::GallagerB { schedule, .. } => {
                if schedule.len() == 1 {
                    "gallager-b".into()
                } else {
                    let s: Vec<String> = schedule.iter().map(|b| b.to_string()).collect();
                    format!("gallager-b[{}]", s.join("+"))
                }
            }
        }
    }

    /// Worst-case iteration count.
    pub fn max_iterations(&self) -> usize {
        match self {
            Decoder::ParallelBf { max_iter }
            | Decoder::TwoBit { max_iter, .. }
            | Decoder::GallagerB { max_iter, .. } => *max_iter,
            Decoder::Cascade(spec) => spec.total_iterations(),
        }
    }

    pub fn check_graph(&self, g: &TannerGraph) -> Result<()> {
        match self {
            Decoder::TwoBit { rule, .. } => rule.validate_for_gamma(g.gamma()),
            Decoder::Cascade(spec) => spec.validate_for_gamma(g.gamma()),
            _ => Ok(()),
        }
    }

    pub fn decode(&self, g: &TannerGraph, y: &[bool]) -> Result<DecodeResult> {
        self.run(g, y, false)
    }

    pub fn decode_traced(&self, g: &TannerGraph, y: &[bool]) -> Result<DecodeResult> {
        self.run(g, y, true)
    }

    fn run(&self, g: &TannerGraph, y: &[bool], trace: bool) -> Result<DecodeResult> {
        let opts = |max_iter| DecodeOptions {
            max_iter,
            trace,
            detect_cycles: false,
        };
        match self {
            Decoder::ParallelBf { max_iter } => decode_parallel_bf(g, y, &opts(*max_iter)),
            Decoder::TwoBit { rule, max_iter } => decode_two_bit(g, y, rule, &opts(*max_iter)),
            Decoder::Cascade(spec) => decode_cascade(g, y, spec, trace),
            Decoder::GallagerB { max_iter, schedule } => {
                decode_gallager_b(g, y, schedule, &opts(*max_iter))
            }
        }
    }
}

pub(crate) fn check_len(g: &TannerGraph, y: &[bool]) -> Result<()> {
    if y.len() != g.n() {
        return Err(crate::Error::LengthMismatch {
            expected: g.n(),
            got: y.len(),
        });
    }
    Ok(())
}

/// Initial check parities (`true` = unsatisfied) of a hard word.
pub(crate) fn unsat_of(g: &TannerGraph, y: &[bool]) -> Vec<bool> {
    (0..g.m())
        .map(|c| g.check_vars(c).iter().fold(false, |acc, &v| acc ^ y[v]))
        .collect()
}
