use super::{check_len, unsat_of, DecodeOptions, DecodeResult, TraceEntry};
use crate::error::Result;
use crate::graph::{Assignment, TannerGraph};

/// Gallager B hard-decision message passing.
///
/// Check-to-variable messages are the XOR of the other incoming messages.
/// A variable sends the complement of its channel bit on an edge when at
/// least `b` of its other incoming check messages disagree with the channel
/// bit, where `b = schedule[min(t, len) - 1]` in iteration `t`. The decision
/// is the majority of the channel bit and all incoming check messages, ties
/// going to the channel bit.
pub fn decode_gallager_b(
    g: &TannerGraph,
    y: &[bool],
    schedule: &[usize],
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    check_len(g, y)?;
    if schedule.is_empty() {
        return Err(crate::Error::InvalidParameter(
            "empty Gallager-B threshold schedule".into(),
        ));
    }
    let gamma = g.gamma();
    let mut v2c: Vec<bool> = (0..g.n() * gamma).map(|e| y[e / gamma]).collect();
    let mut c2v = vec![false; v2c.len()];
    let mut decision = y.to_vec();
    let mut unsat = unsat_of(g, y);
    let mut prev_unsat = unsat.clone();
    let mut trace = opts.trace.then(Vec::new);
    let mut iter = 0;
    loop {
        if let Some(t) = trace.as_mut() {
            t.push(TraceEntry::new(
                Assignment::from_word(&decision),
                &unsat,
                &prev_unsat,
            ));
        }
        let converged = !unsat.iter().any(|&u| u);
        if converged || iter == opts.max_iter {
            return Ok(DecodeResult {
                converged,
                output: decision,
                iterations: iter,
                algorithm_index: None,
                trace,
            });
        }
        iter += 1;
        let b = schedule[iter.min(schedule.len()) - 1];

        for c in 0..g.m() {
            let edges = g.check_edge_ids(c);
            let total = edges.iter().fold(false, |acc, &e| acc ^ v2c[e]);
            for &e in edges {
                c2v[e] = total ^ v2c[e];
            }
        }
        for v in 0..g.n() {
            let incoming = &c2v[v * gamma..(v + 1) * gamma];
            let ones = incoming.iter().filter(|&&m| m).count() + usize::from(y[v]);
            let votes = gamma + 1;
            decision[v] = match (2 * ones).cmp(&votes) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => y[v],
            };
            let disagree_total = incoming.iter().filter(|&&m| m != y[v]).count();
            for k in 0..gamma {
                let others = disagree_total - usize::from(incoming[k] != y[v]);
                v2c[v * gamma + k] = if others >= b { !y[v] } else { y[v] };
            }
        }
        prev_unsat.copy_from_slice(&unsat);
        unsat = unsat_of(g, &decision);
    }
}
