//! One function per subcommand.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use twobit::decode::{dump_trace, resolve_rule, CascadeSpec, Decoder};
use twobit::failure::{certify_convergence, Atlas, Certification, EnumConfig};
use twobit::sim::{
    emit_csv, emit_plot_data, estimate_fer, verify_guaranteed_correction, StopRule, SweepMode,
    Verdict,
};
use twobit::{Error, FlipRule, TannerGraph};

use crate::code::CodeArgs;
use crate::{
    DecodeArgs, DecoderArgs, EnumerateArgs, GenCodeArgs, Outcome, SimulateArgs, VerifyArgs,
};

fn girth_text(g: &TannerGraph) -> String {
    g.girth().map_or("none".into(), |x| x.to_string())
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Decoder for a name; parallel BF and Gallager B get their dedicated
/// implementations.
fn named_decoder(name: &str, max_iter: usize, gamma: usize) -> Result<Decoder> {
    Ok(match name {
        "bf-parallel" => Decoder::ParallelBf { max_iter },
        "gallager-b" => Decoder::gallager_b(gamma, max_iter),
        _ => Decoder::two_bit(resolve_rule(name, Path::new("."))?, max_iter),
    })
}

fn cascade_decoder(path: &Path) -> Result<Decoder> {
    let spec = CascadeSpec::parse(&read(path)?, base_dir(path))
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(Decoder::Cascade(spec))
}

impl DecoderArgs {
    fn build(&self, g: &TannerGraph) -> Result<Decoder> {
        let d = match (&self.rule, &self.cascade) {
            (_, Some(path)) => cascade_decoder(path)?,
            (Some(name), None) => named_decoder(name, self.max_iter, g.gamma())?,
            (None, None) => bail!("one of --rule or --cascade is required"),
        };
        d.check_graph(g)?;
        Ok(d)
    }
}

pub fn gen_code(a: &GenCodeArgs) -> Result<Outcome> {
    let base = a.qc.search()?;
    let g = base.build()?;
    println!(
        "n={} m={} rate={:.6} design_rate={:.6} girth={}",
        g.n(),
        g.m(),
        g.rate(),
        g.design_rate(),
        girth_text(&g)
    );
    if let Some(p) = &a.alist_out {
        write(p, &g.to_alist())?;
    }
    if let Some(p) = &a.base_out {
        write(p, &base.to_text())?;
    }
    Ok(Outcome::Done)
}

pub fn decode(a: &DecodeArgs) -> Result<Outcome> {
    let g = a.code.load()?;
    let decoder = a.decoder.build(&g)?;
    let mut y = vec![false; g.n()];
    for &v in &a.errors {
        if v >= g.n() {
            return Err(Error::IndexOutOfRange { index: v, n: g.n() }.into());
        }
        y[v] = true;
    }
    let r = if a.trace {
        decoder.decode_traced(&g, &y)?
    } else {
        decoder.decode(&g, &y)?
    };
    let verdict = if r.converged {
        "converged"
    } else {
        "non-converged"
    };
    println!("{verdict} {}", r.iterations);
    if r.is_miscorrection() {
        println!("miscorrection weight {}", r.bit_errors());
    }
    if let Some(i) = r.algorithm_index {
        println!("member {i}");
    }
    if let Some(trace) = &r.trace {
        print!("{}", dump_trace(trace));
    }
    Ok(Outcome::Done)
}

/// Everything a simulation depends on, echoed beside the CSV.
#[derive(Serialize)]
struct SimulateMeta<'a> {
    command: &'static str,
    version: &'static str,
    code: &'a CodeArgs,
    n: usize,
    m: usize,
    girth: Option<usize>,
    decoders: Vec<String>,
    cascade_files: &'a [PathBuf],
    max_iter: usize,
    alphas: &'a [f64],
    max_frames: u64,
    target_errors: u64,
    seed: u64,
    threads: usize,
    csv: &'a Path,
    plot: PathBuf,
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn simulate(a: &SimulateArgs, threads: usize) -> Result<Outcome> {
    let g = a.code.load()?;
    let mut decoders = a
        .decoders
        .iter()
        .map(|name| named_decoder(name, a.max_iter, g.gamma()))
        .collect::<Result<Vec<_>>>()?;
    for path in &a.cascades {
        decoders.push(cascade_decoder(path)?);
    }
    if decoders.is_empty() {
        bail!("at least one --decoder or --cascade is required");
    }
    for d in &decoders {
        d.check_graph(&g)?;
    }
    let stop = StopRule {
        max_frames: a.max_frames,
        target_frame_errors: a.target_errors,
    };
    let mut results = Vec::new();
    for d in &decoders {
        for &alpha in &a.alphas {
            let r = estimate_fer(&g, d, alpha, stop, a.seed)?;
            println!(
                "{} alpha={alpha} frames={} errors={} fer={:.3e}",
                r.decoder,
                r.frames,
                r.frame_errors,
                r.fer()
            );
            results.push(r);
        }
    }
    let plot = sidecar(&a.out, ".plot.dat");
    let meta = SimulateMeta {
        command: "simulate",
        version: env!("CARGO_PKG_VERSION"),
        code: &a.code,
        n: g.n(),
        m: g.m(),
        girth: g.girth(),
        decoders: decoders.iter().map(Decoder::name).collect(),
        cascade_files: &a.cascades,
        max_iter: a.max_iter,
        alphas: &a.alphas,
        max_frames: a.max_frames,
        target_errors: a.target_errors,
        seed: a.seed,
        threads,
        csv: &a.out,
        plot: plot.clone(),
    };
    write(&a.out, &emit_csv(&results))?;
    write(&plot, &emit_plot_data(&results))?;
    write(
        &sidecar(&a.out, ".meta.json"),
        &(serde_json::to_string_pretty(&meta)? + "\n"),
    )?;
    Ok(Outcome::Done)
}

fn rule_by_name(name: &str) -> Result<FlipRule> {
    Ok(resolve_rule(name, Path::new("."))?)
}

pub fn enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let rule = rule_by_name(&a.rule)?;
    let cfg = EnumConfig {
        k: a.k,
        l: a.l,
        n_max: a.nmax,
        girth_min: a.girth,
        check_degree_cap: a.cap,
        budget: a.budget,
    };
    let atlas = Atlas::build(&rule, &cfg)?;
    if let Some(p) = &a.out {
        write(p, &atlas.to_text())?;
    }
    println!(
        "atlas rule={} members={} complete={} truncated={}",
        atlas.rule,
        atlas.members.len(),
        atlas.complete,
        atlas.truncated
    );
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for m in &atlas.members {
        *sizes.entry(m.var_count()).or_default() += 1;
    }
    for (vars, count) in sizes {
        println!("size {vars}: {count}");
    }
    if !atlas.complete {
        eprintln!("budget exhausted; atlas is partial");
        return Ok(Outcome::Partial);
    }
    Ok(Outcome::Done)
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let g = a.code.load()?;
    if let Some(path) = &a.atlas {
        return certify(a, &g, path);
    }
    let decoder = a.decoder.build(&g)?;
    let mode = match a.samples {
        Some(samples) => SweepMode::Sampled {
            budget: a.budget,
            samples,
            seed: a.seed,
        },
        None => SweepMode::Exhaustive { budget: a.budget },
    };
    match verify_guaranteed_correction(&g, &decoder, a.t, mode)? {
        Verdict::Certified { decodes } => {
            println!("certified t={} decodes={decodes}", a.t);
            Ok(Outcome::Done)
        }
        Verdict::Counterexample { pattern, result } => {
            println!(
                "counterexample weight={} errors={pattern}",
                pattern.weight()
            );
            let verdict = if result.converged {
                "converged"
            } else {
                "non-converged"
            };
            println!("{verdict} {}", result.iterations);
            if let Some(trace) = &result.trace {
                print!("{}", dump_trace(trace));
            }
            Ok(Outcome::Done)
        }
        Verdict::SampledClean {
            decodes,
            sampled_from,
            samples_per_weight,
        } => {
            println!(
                "no failure found t={} decodes={decodes} sampled_from={sampled_from} samples_per_weight={samples_per_weight}",
                a.t
            );
            Ok(Outcome::Done)
        }
        Verdict::BudgetExceeded {
            decodes,
            clean_below,
        } => {
            println!("budget exceeded decodes={decodes} clean_below={clean_below}");
            Ok(Outcome::Partial)
        }
    }
}

fn certify(a: &VerifyArgs, g: &TannerGraph, path: &Path) -> Result<Outcome> {
    let text = read(path)?;
    let name = text
        .lines()
        .next()
        .and_then(|h| h.split_whitespace().find_map(|f| f.strip_prefix("rule=")))
        .context("atlas header names no rule")?;
    let rule = match &a.decoder.rule {
        Some(r) => rule_by_name(r)?,
        None => rule_by_name(name)?,
    };
    let atlas =
        Atlas::parse(&text, &rule).with_context(|| format!("parsing {}", path.display()))?;
    let errors = a.errors.clone().unwrap_or_default();
    match certify_convergence(g, &errors, &atlas, a.node_budget)? {
        Certification::Certified { caveats } => {
            let notes: Vec<String> = caveats.iter().map(|c| format!("{c:?}")).collect();
            println!("certified caveats=[{}]", notes.join(","));
            Ok(Outcome::Done)
        }
        Certification::Unknown { member, embedding } => {
            let vars: Vec<String> = embedding.vars.iter().map(|v| v.to_string()).collect();
            println!("unknown member={member} vars={}", vars.join(","));
            Ok(Outcome::Done)
        }
        Certification::Timeout { member } => {
            println!("timeout member={member}");
            Ok(Outcome::Partial)
        }
        Certification::IncompleteAtlas => {
            println!("incomplete atlas");
            Ok(Outcome::Partial)
        }
    }
}
