//! Regenerates `fixtures/weight_four_stall.alist`: the seven-variable
//! weight-four graph on which `f1` stalls in an all-strong state.
//!
//! Runs the weight-four `f1` enumeration, keeps the 7-variable candidates
//! whose witness weakens five variables at iteration 1 and then sits in an
//! all-strong fixed point with exactly one unsatisfied check per variable,
//! and prints each match as an alist followed by its error indices. The
//! fixture is the single match with variables reordered so the errors are
//! {0, 2, 3, 5}.
//!
//! ```text
//! cargo run --release -p twobit --example derive_weight_four_stall
//! ```

use twobit::decode::TraceEntry;
use twobit::failure::{enumerate_failures, EnumConfig, FailureGraph};
use twobit::FlipRule;

fn all_strong_stall(f: &FailureGraph) -> bool {
    let w: &[TraceEntry] = &f.witness;
    if f.var_count() != 7 || w.len() < 3 {
        return false;
    }
    let weak = w[1]
        .states
        .states()
        .iter()
        .filter(|s| !s.is_strong())
        .count();
    let fixed = w[2..].iter().all(|e| e.states == w[2].states);
    let all_strong = w[2].states.states().iter().all(|s| s.is_strong());
    let unsat = w[2].syndrome.unsatisfied();
    let one_each = (0..f.var_count()).all(|v| {
        f.graph
            .var_checks(v)
            .iter()
            .filter(|c| unsat.contains(c))
            .count()
            == 1
    });
    weak == 5 && fixed && all_strong && one_each
}

fn main() -> twobit::Result<()> {
    let e = enumerate_failures(&FlipRule::f1(), &EnumConfig::new(4, 15, 7))?;
    let hits: Vec<&FailureGraph> = e
        .candidates
        .iter()
        .filter(|f| all_strong_stall(f))
        .collect();
    eprintln!("{} candidates, {} match", e.candidates.len(), hits.len());
    for f in hits {
        print!("{}", f.graph.to_alist());
        let errs: Vec<String> = f.errors.iter().map(|v| v.to_string()).collect();
        println!("# errors {}", errs.join(" "));
    }
    Ok(())
}
