//! Property tests of the decoding engine on random graphs and on a
//! quasi-cyclic code with even check degree.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twobit::decode::{decode_parallel_bf, decode_two_bit, DecodeOptions};
use twobit::graph::BaseMatrix;
use twobit::{FlipRule, TannerGraph};

/// Check degree 4, so the all-ones word is a codeword.
fn even_code() -> TannerGraph {
    BaseMatrix::parse(include_str!("../fixtures/small_n44.base"))
        .unwrap()
        .build()
        .unwrap()
}

fn random_graph(seed: u64, n: usize, m: usize) -> TannerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|_| rand::seq::index::sample(&mut rng, m, 3).into_vec())
        .collect();
    TannerGraph::from_var_adj(m, &adj).unwrap()
}

fn word(n: usize, ones: &[usize]) -> Vec<bool> {
    let mut w = vec![false; n];
    for &v in ones {
        w[v % n] ^= true;
    }
    w
}

fn rules() -> Vec<FlipRule> {
    vec![
        FlipRule::f1(),
        FlipRule::f2(),
        FlipRule::bf_parallel(),
        FlipRule::bf_3only(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoding_is_deterministic(seed in any::<u64>(), ones in prop::collection::vec(0usize..40, 0..8), r in 0usize..4) {
        let g = random_graph(seed, 40, 24);
        let y = word(40, &ones);
        let rule = &rules()[r];
        let opts = DecodeOptions::new(20).traced();
        prop_assert_eq!(decode_two_bit(&g, &y, rule, &opts).unwrap(), decode_two_bit(&g, &y, rule, &opts).unwrap());
    }

    #[test]
    fn converged_output_satisfies_every_check(seed in any::<u64>(), ones in prop::collection::vec(0usize..40, 0..8), r in 0usize..4) {
        let g = random_graph(seed, 40, 24);
        let y = word(40, &ones);
        let res = decode_two_bit(&g, &y, &rules()[r], &DecodeOptions::new(30)).unwrap();
        prop_assert_eq!(res.converged, g.is_codeword(&res.output));
    }

    /// Complementing the input on a code containing the all-ones word
    /// swaps every state and leaves every check state unchanged.
    #[test]
    fn complement_conjugates_the_trace(ones in prop::collection::vec(0usize..44, 0..8), memory in any::<bool>()) {
        let g = even_code();
        let y = word(44, &ones);
        let not_y: Vec<bool> = y.iter().map(|b| !b).collect();
        let rule = if memory { FlipRule::f2() } else { FlipRule::f1() };
        prop_assert!(rule.is_symmetric());
        let opts = DecodeOptions::new(30).traced();
        let a = decode_two_bit(&g, &y, &rule, &opts).unwrap();
        let b = decode_two_bit(&g, &not_y, &rule, &opts).unwrap();
        prop_assert_eq!(a.converged, b.converged);
        prop_assert_eq!(a.iterations, b.iterations);
        for (ea, eb) in a.trace.unwrap().iter().zip(b.trace.unwrap().iter()) {
            let swapped: Vec<_> = ea.states.states().iter().map(|s| s.swap01()).collect();
            prop_assert_eq!(&swapped[..], eb.states.states());
            prop_assert_eq!(&ea.checks, &eb.checks);
        }
    }

    #[test]
    fn lifted_rule_traces_match(seed in any::<u64>(), ones in prop::collection::vec(0usize..30, 0..7), r in 0usize..4) {
        let g = random_graph(seed, 30, 18);
        let y = word(30, &ones);
        let rule = &rules()[r];
        let lifted = rule.lift_to_memory();
        prop_assert!(lifted.uses_check_memory() || rule.uses_check_memory());
        let opts = DecodeOptions::new(25).traced();
        let a = decode_two_bit(&g, &y, rule, &opts).unwrap();
        let b = decode_two_bit(&g, &y, &lifted, &opts).unwrap();
        prop_assert_eq!(a, b);
    }

    /// One parallel step flips exactly the variables seeing at least two
    /// unsatisfied checks.
    #[test]
    fn parallel_bf_flips_majority_unsatisfied(seed in any::<u64>(), ones in prop::collection::vec(0usize..30, 1..9)) {
        let g = random_graph(seed, 30, 18);
        let y = word(30, &ones);
        let unsat = g.syndrome_of(&y).unsatisfied();
        let expected: Vec<bool> = (0..30)
            .map(|v| y[v] ^ (g.var_checks(v).iter().filter(|c| unsat.contains(c)).count() >= 2))
            .collect();
        let res = decode_parallel_bf(&g, &y, &DecodeOptions::new(1)).unwrap();
        prop_assert_eq!(&res.output, &expected);
        let two_bit = decode_two_bit(&g, &y, &FlipRule::bf_parallel(), &DecodeOptions::new(1)).unwrap();
        prop_assert_eq!(res.output, two_bit.output);
    }

    #[test]
    fn single_flip_toggles_gamma_checks(seed in any::<u64>(), ones in prop::collection::vec(0usize..30, 0..9), v in 0usize..30) {
        let g = random_graph(seed, 30, 18);
        let mut y = word(30, &ones);
        let before = g.syndrome_of(&y);
        y[v] ^= true;
        let after = g.syndrome_of(&y);
        let toggled = before.0.iter().zip(&after.0).filter(|(a, b)| a != b).count();
        prop_assert_eq!(toggled, g.gamma());
        prop_assert!(g.syndrome_of(&[false; 30]).is_zero());
        if let Some(girth) = g.girth() {
            prop_assert!(girth >= 4 && girth % 2 == 0);
        }
    }
}
