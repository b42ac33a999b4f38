use std::collections::HashMap;

use super::{check_len, unsat_of, DecodeOptions, DecodeResult, TraceEntry};
use crate::error::Result;
use crate::graph::{Assignment, TannerGraph};
use crate::rules::{FlipRule, VarState};

/// Generic two-bit bit-flipping decoder driven by a rule table.
///
/// Variables start strong at their received value. Each iteration computes
/// check parities from the hard projection, classifies every check against
/// the previous iteration (the first iteration compares against itself),
/// counts the per-variable tuple and applies the rule to all variables at
/// once.
pub fn decode_two_bit(
    g: &TannerGraph,
    y: &[bool],
    rule: &FlipRule,
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    check_len(g, y)?;
    rule.validate_for_gamma(g.gamma())?;
    Ok(TwoBitRun::new(g, y, rule, opts).run())
}

struct TwoBitRun<'a> {
    g: &'a TannerGraph,
    rule: &'a FlipRule,
    opts: &'a DecodeOptions,
    states: Vec<VarState>,
    next: Vec<VarState>,
    unsat: Vec<bool>,
    prev_unsat: Vec<bool>,
    n_unsat: usize,
}

impl<'a> TwoBitRun<'a> {
    fn new(g: &'a TannerGraph, y: &[bool], rule: &'a FlipRule, opts: &'a DecodeOptions) -> Self {
        let states: Vec<VarState> = y.iter().map(|&b| VarState::strong(b)).collect();
        let unsat = unsat_of(g, y);
        let n_unsat = unsat.iter().filter(|&&u| u).count();
        TwoBitRun {
            g,
            rule,
            opts,
            next: states.clone(),
            states,
            prev_unsat: unsat.clone(),
            unsat,
            n_unsat,
        }
    }

    fn snapshot(&self) -> TraceEntry {
        TraceEntry::new(
            Assignment(self.states.clone()),
            &self.unsat,
            &self.prev_unsat,
        )
    }

    fn step(&mut self) {
        let g = self.g;
        if self.rule.uses_check_memory() {
            for v in 0..g.n() {
                let (mut up, mut un, mut sp) = (0, 0, 0);
                for &c in g.var_checks(v) {
                    match (self.prev_unsat[c], self.unsat[c]) {
                        (true, true) => up += 1,
                        (false, true) => un += 1,
                        (false, false) => sp += 1,
                        (true, false) => {}
                    }
                }
                self.next[v] = self.rule.next(self.states[v], up, un, sp);
            }
        } else {
            for v in 0..g.n() {
                let n_u = g.var_checks(v).iter().filter(|&&c| self.unsat[c]).count();
                self.next[v] = self.rule.next_memoryless(self.states[v], n_u);
            }
        }
        self.prev_unsat.copy_from_slice(&self.unsat);
        for v in 0..g.n() {
            if self.next[v].hard() != self.states[v].hard() {
                for &c in g.var_checks(v) {
                    let u = &mut self.unsat[c];
                    *u = !*u;
                    if *u {
                        self.n_unsat += 1;
                    } else {
                        self.n_unsat -= 1;
                    }
                }
            }
        }
        std::mem::swap(&mut self.states, &mut self.next);
    }

    /// Values plus previous parities; the latter fix the next check states.
    fn key(&self) -> (Vec<VarState>, Vec<bool>) {
        (self.states.clone(), self.prev_unsat.clone())
    }

    fn run(mut self) -> DecodeResult {
        let max_iter = self.opts.max_iter;
        let mut trace = self.opts.trace.then(Vec::new);
        let mut seen: HashMap<(Vec<VarState>, Vec<bool>), usize> = HashMap::new();
        let mut history: Vec<TraceEntry> = Vec::new();
        let mut iter = 0;
        loop {
            if let Some(t) = trace.as_mut() {
                t.push(self.snapshot());
            }
            if self.n_unsat == 0 {
                return self.finish(true, iter, trace);
            }
            if iter == max_iter {
                return self.finish(false, iter, trace);
            }
            if self.opts.detect_cycles {
                history.push(self.snapshot());
                if let Some(&first) = seen.get(&self.key()) {
                    return self.finish_cycle(first, iter, &history, trace);
                }
                seen.insert(self.key(), iter);
            }
            self.step();
            iter += 1;
        }
    }

    fn finish(
        self,
        converged: bool,
        iterations: usize,
        trace: Option<Vec<TraceEntry>>,
    ) -> DecodeResult {
        DecodeResult {
            converged,
            output: self.states.iter().map(|s| s.hard()).collect(),
            iterations,
            algorithm_index: None,
            trace,
        }
    }

    /// The state at `now` repeats the one at `first`; extrapolate to `max_iter`.
    fn finish_cycle(
        self,
        first: usize,
        now: usize,
        history: &[TraceEntry],
        trace: Option<Vec<TraceEntry>>,
    ) -> DecodeResult {
        let period = now - first;
        let max_iter = self.opts.max_iter;
        let at = |t: usize| {
            if t <= now {
                t
            } else {
                first + (t - first) % period
            }
        };
        let trace = trace.map(|mut t| {
            t.extend((now + 1..=max_iter).map(|i| history[at(i)].clone()));
            t
        });
        DecodeResult {
            converged: false,
            output: history[at(max_iter)].states.hard(),
            iterations: max_iter,
            algorithm_index: None,
            trace,
        }
    }
}
