use super::{check_len, unsat_of, DecodeOptions, DecodeResult, TraceEntry};
use crate::error::Result;
use crate::graph::{Assignment, TannerGraph};

/// Parallel bit flipping: every variable with more unsatisfied than
/// satisfied neighbours flips, all at once.
pub fn decode_parallel_bf(
    g: &TannerGraph,
    y: &[bool],
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    check_len(g, y)?;
    let mut bits = y.to_vec();
    let mut unsat = unsat_of(g, y);
    let mut prev_unsat = unsat.clone();
    let mut flips = Vec::new();
    let mut trace = opts.trace.then(Vec::new);
    let mut iter = 0;
    loop {
        if let Some(t) = trace.as_mut() {
            t.push(TraceEntry::new(
                Assignment::from_word(&bits),
                &unsat,
                &prev_unsat,
            ));
        }
        let converged = !unsat.iter().any(|&u| u);
        if converged || iter == opts.max_iter {
            return Ok(DecodeResult {
                converged,
                output: bits,
                iterations: iter,
                algorithm_index: None,
                trace,
            });
        }
        flips.clear();
        flips.extend((0..g.n()).filter(|&v| {
            let n_u = g.var_checks(v).iter().filter(|&&c| unsat[c]).count();
            2 * n_u > g.gamma()
        }));
        prev_unsat.copy_from_slice(&unsat);
        for &v in &flips {
            bits[v] = !bits[v];
            for &c in g.var_checks(v) {
                unsat[c] = !unsat[c];
            }
        }
        iter += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::super::decode_two_bit;
    use super::super::two_bit::tests::word;
    use super::*;
    use crate::graph::fixtures::eight_cycle;
    use crate::rules::FlipRule;

    #[test]
    fn eight_cycle_oscillates() {
        let g = eight_cycle();
        let r =
            decode_parallel_bf(&g, &word(4, &[0, 2]), &DecodeOptions::new(10).traced()).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 10);
        for (t, e) in r.trace.unwrap().iter().enumerate() {
            let want = if t % 2 == 0 { vec![0, 2] } else { vec![1, 3] };
            assert_eq!(e.corrupt(), want, "iteration {t}");
        }
    }

    #[test]
    fn zero_errors() {
        let r = decode_parallel_bf(&eight_cycle(), &word(4, &[]), &DecodeOptions::new(10)).unwrap();
        assert!(r.is_correct());
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn agrees_with_rule_table() {
        let g = eight_cycle();
        let rule = FlipRule::bf_parallel();
        for mask in 0u32..16 {
            let y: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
            let opts = DecodeOptions::new(6).traced();
            let a = decode_parallel_bf(&g, &y, &opts).unwrap();
            let b = decode_two_bit(&g, &y, &rule, &opts).unwrap();
            assert_eq!(a.converged, b.converged);
            assert_eq!(a.output, b.output);
            assert_eq!(a.iterations, b.iterations);
            let hard = |t: &Vec<TraceEntry>| t.iter().map(|e| e.states.hard()).collect::<Vec<_>>();
            assert_eq!(
                hard(a.trace.as_ref().unwrap()),
                hard(b.trace.as_ref().unwrap())
            );
        }
    }
}
