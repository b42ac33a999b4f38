//! `twobit`: code construction, decoding, Monte Carlo simulation and
//! failure-graph analysis from the command line.
//!
//! Exit codes: 0 success, 2 invalid input or search exhausted, 3 budget
//! exhausted with partial results.

mod code;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use code::{CodeArgs, QcArgs};

#[derive(Parser, Debug)]
#[command(
    name = "twobit",
    version,
    about = "Two-bit bit-flipping decoders for LDPC codes on the BSC"
)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a girth-8 quasi-cyclic code and report its parameters.
    GenCode(GenCodeArgs),
    /// Decode one error pattern.
    Decode(DecodeArgs),
    /// Estimate frame error rates over a list of crossover probabilities.
    Simulate(SimulateArgs),
    /// Enumerate the minimal failure graphs of a rule.
    Enumerate(EnumerateArgs),
    /// Check guaranteed correction, or certify one pattern against an atlas.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct GenCodeArgs {
    #[command(flatten)]
    qc: QcArgs,
    /// Write the parity-check matrix as alist.
    #[arg(long)]
    alist_out: Option<PathBuf>,
    /// Write the exponent matrix.
    #[arg(long)]
    base_out: Option<PathBuf>,
}

/// A single rule or a cascade file.
#[derive(Args, Debug, Clone)]
pub struct DecoderArgs {
    /// Built-in rule (f1, f2, bf-parallel, bf-3only, gallager-b) or rule file.
    #[arg(long, conflicts_with = "cascade")]
    rule: Option<String>,
    /// Cascade spec: `<rule> <iterations>` per line.
    #[arg(long)]
    cascade: Option<PathBuf>,
    /// Iteration cap for a single rule.
    #[arg(long, default_value_t = 30)]
    max_iter: usize,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Dump the per-iteration trace.
    #[arg(long)]
    trace: bool,
    /// Indices of the bits in error.
    errors: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Decoder name; repeatable.
    #[arg(long = "decoder")]
    decoders: Vec<String>,
    /// Cascade spec file; repeatable.
    #[arg(long = "cascade")]
    cascades: Vec<PathBuf>,
    /// Iteration cap for single-rule decoders.
    #[arg(long, default_value_t = 30)]
    max_iter: usize,
    /// Comma-separated crossover probabilities.
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    max_frames: u64,
    /// Stop a point after this many frame errors.
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// CSV output; `.meta.json` and `.plot.dat` are written beside it.
    #[arg(long, default_value = "fer.csv")]
    out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    rule: String,
    /// Initial error weight.
    #[arg(long)]
    k: usize,
    /// Iterations each graph must survive.
    #[arg(long, default_value_t = 15)]
    l: usize,
    /// Largest failure graph, in variables.
    #[arg(long)]
    nmax: usize,
    #[arg(long, default_value_t = 8)]
    girth: usize,
    /// Largest check degree inside a failure graph.
    #[arg(long)]
    cap: Option<usize>,
    /// Expanded-node budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Atlas output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Largest error weight to sweep.
    #[arg(long, default_value_t = 0)]
    t: usize,
    /// Decode budget of the sweep.
    #[arg(long, default_value_t = 20_000_000)]
    budget: u64,
    /// Sample this many patterns per weight once the budget no longer covers
    /// a full weight.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Certify `--errors` against this atlas instead of sweeping.
    #[arg(long, requires = "errors")]
    atlas: Option<PathBuf>,
    /// Comma-separated error support for atlas certification.
    #[arg(long, value_delimiter = ',')]
    errors: Option<Vec<usize>>,
    /// Node budget of each containment search.
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
}

/// How a command ended; mapped onto the exit code.
pub enum Outcome {
    Done,
    Partial,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let threads = rayon::current_num_threads();
    let result = match &cli.command {
        Command::GenCode(a) => commands::gen_code(a),
        Command::Decode(a) => commands::decode(a),
        Command::Simulate(a) => commands::simulate(a, threads),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
