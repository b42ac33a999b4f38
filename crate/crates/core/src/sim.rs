//! Monte Carlo frame-error estimation and exhaustive correction sweeps.
//!
//! Frames are generated from `(seed, frame index)` alone and aggregated in
//! index order, so every result is independent of the rayon pool size.

use std::cmp::Ordering;
use std::fmt::Write;

use rayon::prelude::*;

use crate::channel::{
    bsc_sample, count_patterns, enumerate_patterns, frame_rng, random_weight_pattern, ErrorPattern,
};
use crate::decode::{DecodeResult, Decoder};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;

/// Frames decoded per parallel batch.
const BATCH: u64 = 2048;
/// Patterns decoded per parallel chunk in correction sweeps.
const SWEEP_CHUNK: usize = 8192;

/// Stop at whichever limit is hit first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StopRule {
    pub max_frames: u64,
    pub target_frame_errors: u64,
}

/// Summary of one frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameOutcome {
    pub channel_errors: usize,
    pub converged: bool,
    /// Converged to the all-zero word.
    pub correct: bool,
    pub bit_errors: usize,
    pub iterations: usize,
    pub member: Option<usize>,
}

impl FrameOutcome {
    fn from_result(channel_errors: usize, r: &DecodeResult) -> FrameOutcome {
        FrameOutcome {
            channel_errors,
            converged: r.converged,
            correct: r.is_correct(),
            bit_errors: r.bit_errors(),
            iterations: r.iterations,
            member: r.algorithm_index,
        }
    }

    pub fn is_frame_error(&self) -> bool {
        !self.correct
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub alpha: f64,
    pub decoder: String,
    pub seed: u64,
    pub n: usize,
    pub frames: u64,
    /// Undecoded frames plus miscorrections.
    pub frame_errors: u64,
    pub miscorrections: u64,
    pub undecoded: u64,
    pub bit_errors: u64,
    pub total_iterations: u64,
    /// Correct decodes per cascade member; one slot for single decoders.
    pub member_success: Vec<u64>,
}

impl SimResult {
    fn new(alpha: f64, decoder: &Decoder, seed: u64, n: usize) -> SimResult {
        let members = match decoder {
            Decoder::Cascade(spec) => spec.len(),
            _ => 1,
        };
        SimResult {
            alpha,
            decoder: decoder.name(),
            seed,
            n,
            frames: 0,
            frame_errors: 0,
            miscorrections: 0,
            undecoded: 0,
            bit_errors: 0,
            total_iterations: 0,
            member_success: vec![0; members],
        }
    }

    fn absorb(&mut self, o: &FrameOutcome) {
        self.frames += 1;
        self.bit_errors += o.bit_errors as u64;
        self.total_iterations += o.iterations as u64;
        if o.correct {
            self.member_success[o.member.unwrap_or(0)] += 1;
        } else {
            self.frame_errors += 1;
            if o.converged {
                self.miscorrections += 1;
            } else {
                self.undecoded += 1;
            }
        }
    }

    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    /// Raw bit errors over `frames * n`.
    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.frames * self.n as u64)
    }

    pub fn avg_iterations(&self) -> f64 {
        ratio(self.total_iterations, self.frames)
    }

    /// 95% normal-approximation half-width of the FER.
    pub fn ci95(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        let p = self.fer();
        1.96 * (p * (1.0 - p) / self.frames as f64).sqrt()
    }

    /// Fraction of correctly decoded frames resolved by cascade member 0.
    pub fn first_member_share(&self) -> f64 {
        ratio(self.member_success[0], self.member_success.iter().sum())
    }

    /// The two 95% intervals do not overlap.
    pub fn disjoint_from(&self, other: &SimResult) -> bool {
        (self.fer() - other.fer()).abs() > self.ci95() + other.ci95()
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Decodes frame `frame` of the stream `(seed, alpha)`.
pub fn frame_outcome(
    g: &TannerGraph,
    decoder: &Decoder,
    alpha: f64,
    seed: u64,
    frame: u64,
) -> Result<FrameOutcome> {
    let pattern = bsc_sample(g.n(), alpha, seed, frame)?;
    let r = decoder.decode(g, &pattern.to_word())?;
    debug_assert!(!r.converged || g.is_codeword(&r.output));
    Ok(FrameOutcome::from_result(pattern.weight(), &r))
}

/// Outcomes of frames `start..end`, in order, decoded in parallel.
pub fn frame_outcomes(
    g: &TannerGraph,
    decoder: &Decoder,
    alpha: f64,
    seed: u64,
    start: u64,
    end: u64,
) -> Result<Vec<FrameOutcome>> {
    decoder.check_graph(g)?;
    (start..end)
        .into_par_iter()
        .map(|f| frame_outcome(g, decoder, alpha, seed, f))
        .collect()
}

/// Runs frames until `stop.max_frames` or until the `target_frame_errors`-th
/// frame error, whichever comes first.
pub fn estimate_fer(
    g: &TannerGraph,
    decoder: &Decoder,
    alpha: f64,
    stop: StopRule,
    seed: u64,
) -> Result<SimResult> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "crossover probability {alpha} outside [0, 1]"
        )));
    }
    if stop.max_frames == 0 || stop.target_frame_errors == 0 {
        return Err(Error::InvalidParameter(
            "stop limits must be positive".into(),
        ));
    }
    let mut res = SimResult::new(alpha, decoder, seed, g.n());
    let mut start = 0;
    while start < stop.max_frames {
        let end = (start + BATCH).min(stop.max_frames);
        for o in frame_outcomes(g, decoder, alpha, seed, start, end)? {
            res.absorb(&o);
            if res.frame_errors == stop.target_frame_errors {
                return Ok(res);
            }
        }
        start = end;
    }
    Ok(res)
}

/// How [`verify_guaranteed_correction`] covers each weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every pattern; stop with a partial report past `budget` decodes.
    Exhaustive { budget: u64 },
    /// Weights whose patterns fit the remaining budget are swept in full;
    /// each heavier weight gets `samples` uniformly random patterns.
    Sampled {
        budget: u64,
        samples: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every pattern of weight at most `t` decodes to the zero word.
    Certified { decodes: u64 },
    /// First failing pattern (lightest weight, then lexicographic), with its
    /// traced decode.
    Counterexample {
        pattern: ErrorPattern,
        result: DecodeResult,
    },
    /// Budget ran out; weights below `clean_below` were fully swept.
    BudgetExceeded { decodes: u64, clean_below: usize },
    /// No failure seen, but weights from `sampled_from` on were sampled.
    SampledClean {
        decodes: u64,
        sampled_from: usize,
        samples_per_weight: u64,
    },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

/// Checks that `decoder` corrects every error pattern of weight `<= t`.
pub fn verify_guaranteed_correction(
    g: &TannerGraph,
    decoder: &Decoder,
    t: usize,
    mode: SweepMode,
) -> Result<Verdict> {
    decoder.check_graph(g)?;
    let n = g.n();
    if t > n {
        return Err(Error::InvalidParameter(format!(
            "weight {t} exceeds length {n}"
        )));
    }
    let budget = match mode {
        SweepMode::Exhaustive { budget } | SweepMode::Sampled { budget, .. } => budget,
    };
    let mut decodes = 0u64;
    for w in 0..=t {
        let count = count_patterns(n, w);
        let fits = count.is_some_and(|c| decodes.checked_add(c).is_some_and(|d| d <= budget));
        if fits {
            if let Some(bad) = sweep(g, decoder, enumerate_patterns(n, w)?, &mut decodes)? {
                return counterexample(g, decoder, bad);
            }
            continue;
        }
        let SweepMode::Sampled { samples, seed, .. } = mode else {
            return Ok(Verdict::BudgetExceeded {
                decodes,
                clean_below: w,
            });
        };
        for w in w..=t {
            let stream = (0..samples).map(|i| {
                random_weight_pattern(n, w, &mut frame_rng(seed ^ w as u64, i))
                    .expect("weight within length")
            });
            if let Some(bad) = sweep(g, decoder, stream, &mut decodes)? {
                return counterexample(g, decoder, bad);
            }
        }
        return Ok(Verdict::SampledClean {
            decodes,
            sampled_from: w,
            samples_per_weight: samples,
        });
    }
    Ok(Verdict::Certified { decodes })
}

/// First failing pattern of a stream, in stream order.
fn sweep(
    g: &TannerGraph,
    decoder: &Decoder,
    mut stream: impl Iterator<Item = ErrorPattern>,
    decodes: &mut u64,
) -> Result<Option<ErrorPattern>> {
    loop {
        let chunk: Vec<ErrorPattern> = stream.by_ref().take(SWEEP_CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let fails: Vec<bool> = chunk
            .par_iter()
            .map(|p| decoder.decode(g, &p.to_word()).map(|r| !r.is_correct()))
            .collect::<Result<_>>()?;
        if let Some(i) = fails.iter().position(|&f| f) {
            *decodes += i as u64 + 1;
            return Ok(Some(chunk[i].clone()));
        }
        *decodes += chunk.len() as u64;
    }
}

fn counterexample(g: &TannerGraph, decoder: &Decoder, pattern: ErrorPattern) -> Result<Verdict> {
    let result = decoder.decode_traced(g, &pattern.to_word())?;
    Ok(Verdict::Counterexample { pattern, result })
}

pub const CSV_HEADER: &str = "alpha,frames,frame_errors,fer,ber,avg_iters,ci95,decoder,seed";

/// One parsed CSV line.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub alpha: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub avg_iters: f64,
    pub ci95: f64,
    pub decoder: String,
    pub seed: u64,
}

impl From<&SimResult> for CsvRow {
    fn from(r: &SimResult) -> CsvRow {
        CsvRow {
            alpha: r.alpha,
            frames: r.frames,
            frame_errors: r.frame_errors,
            fer: r.fer(),
            ber: r.ber(),
            avg_iters: r.avg_iterations(),
            ci95: r.ci95(),
            decoder: r.decoder.clone(),
            seed: r.seed,
        }
    }
}

impl CsvRow {
    /// alpha with 8 decimals, fer/ber/ci95 with 12, avg_iters with 6.
    pub fn to_line(&self) -> String {
        format!(
            "{:.8},{},{},{:.12},{:.12},{:.6},{:.12},{},{}",
            self.alpha,
            self.frames,
            self.frame_errors,
            self.fer,
            self.ber,
            self.avg_iters,
            self.ci95,
            self.decoder,
            self.seed
        )
    }
}

fn by_decoder_then_alpha(a: &SimResult, b: &SimResult) -> Ordering {
    a.decoder.cmp(&b.decoder).then(a.alpha.total_cmp(&b.alpha))
}

/// CSV text, rows sorted by `(decoder, alpha)`.
pub fn emit_csv(results: &[SimResult]) -> String {
    let mut sorted: Vec<&SimResult> = results.iter().collect();
    sorted.sort_by(|a, b| by_decoder_then_alpha(a, b));
    let mut out = format!("{CSV_HEADER}\n");
    for r in sorted {
        out.push_str(&CsvRow::from(r).to_line());
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::parse(1, format!("expected header `{CSV_HEADER}`"))),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let ln = i + 1;
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 9 {
                return Err(Error::parse(
                    ln,
                    format!("expected 9 fields, found {}", f.len()),
                ));
            }
            let float = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::parse(ln, format!("`{s}`: {e}")))
            };
            let int = |s: &str| {
                s.parse::<u64>()
                    .map_err(|e| Error::parse(ln, format!("`{s}`: {e}")))
            };
            Ok(CsvRow {
                alpha: float(f[0])?,
                frames: int(f[1])?,
                frame_errors: int(f[2])?,
                fer: float(f[3])?,
                ber: float(f[4])?,
                avg_iters: float(f[5])?,
                ci95: float(f[6])?,
                decoder: f[7].to_string(),
                seed: int(f[8])?,
            })
        })
        .collect()
}

/// Whitespace-separated plot data, one block per decoder separated by blank
/// lines. Zero-FER points have no finite log and are kept as-is.
pub fn emit_plot_data(results: &[SimResult]) -> String {
    let mut sorted: Vec<&SimResult> = results.iter().collect();
    sorted.sort_by(|a, b| by_decoder_then_alpha(a, b));
    let mut out = String::from("# decoder alpha log10_alpha fer ci95\n");
    let mut last: Option<&str> = None;
    for r in sorted {
        if last.is_some_and(|d| d != r.decoder) {
            out.push_str("\n\n");
        }
        last = Some(&r.decoder);
        writeln!(
            out,
            "{} {:.8} {:.6} {:.12} {:.12}",
            r.decoder,
            r.alpha,
            r.alpha.log10(),
            r.fer(),
            r.ci95()
        )
        .unwrap();
    }
    out
}
