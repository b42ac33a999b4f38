//! Atlas files: the minimal failure graphs of one rule, with metadata.
//!
//! ```text
//! # atlas rule=f1 k=4 l=15 nmax=7 girth=8 cap=none complete=true truncated=true count=1
//! record 0 vars=7 checks=15
//! errors 0 1 2 3
//! digest <sha-256 of the witness trace dump>
//! <alist lines>
//! end
//! ```

use super::expand::{enumerate_failures, EnumConfig};
use super::{reduce_minimal, simulate_on_subgraph, FailureGraph, SubgraphOutcome};
use crate::decode::trace_digest;
use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::rules::FlipRule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    pub rule: String,
    pub k: usize,
    pub l: usize,
    pub n_max: usize,
    pub girth_min: usize,
    pub cap: Option<usize>,
    /// Enumeration finished within its budget.
    pub complete: bool,
    /// Some extension was cut at `n_max`.
    pub truncated: bool,
    /// Minimal failure graphs, no one containing another.
    pub members: Vec<FailureGraph>,
}

impl Atlas {
    /// Enumerates and reduces the failure graphs of `rule`.
    pub fn build(rule: &FlipRule, cfg: &EnumConfig) -> Result<Atlas> {
        let e = enumerate_failures(rule, cfg)?;
        Ok(Atlas {
            rule: rule.name().to_string(),
            k: cfg.k,
            l: cfg.l,
            n_max: cfg.n_max,
            girth_min: cfg.girth_min,
            cap: cfg.check_degree_cap,
            complete: e.complete(),
            truncated: e.truncated,
            members: reduce_minimal(e.candidates),
        })
    }

    pub fn to_text(&self) -> String {
        let cap = self.cap.map_or("none".to_string(), |c| c.to_string());
        let mut out = format!(
            "# atlas rule={} k={} l={} nmax={} girth={} cap={} complete={} truncated={} count={}\n",
            self.rule,
            self.k,
            self.l,
            self.n_max,
            self.girth_min,
            cap,
            self.complete,
            self.truncated,
            self.members.len()
        );
        for (i, m) in self.members.iter().enumerate() {
            out.push_str(&format!(
                "record {i} vars={} checks={}\n",
                m.var_count(),
                m.check_count()
            ));
            out.push_str("errors");
            for e in &m.errors {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
            out.push_str(&format!("digest {}\n", trace_digest(&m.witness)));
            out.push_str(&m.graph.to_alist());
            out.push_str("end\n");
        }
        out
    }

    /// Parses an atlas and re-simulates every member under `rule`, which
    /// must carry the recorded name; a member that converges or whose trace
    /// digest differs is an error.
    pub fn parse(text: &str, rule: &FlipRule) -> Result<Atlas> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (ln, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| Error::parse(0, "empty atlas"))?;
        let fields = header
            .strip_prefix("# atlas ")
            .ok_or_else(|| Error::parse(ln, "missing `# atlas` header"))?;
        let get = |key: &str| -> Result<&str> {
            fields
                .split_whitespace()
                .find_map(|f| f.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| Error::parse(ln, format!("header lacks `{key}=`")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|e| Error::parse(ln, format!("`{key}`: {e}")))
        };
        let flag = |key: &str| -> Result<bool> {
            get(key)?
                .parse()
                .map_err(|e| Error::parse(ln, format!("`{key}`: {e}")))
        };
        let name = get("rule")?.to_string();
        if name != rule.name() {
            return Err(Error::parse(
                ln,
                format!("atlas is for rule `{name}`, not `{}`", rule.name()),
            ));
        }
        let cap = match get("cap")? {
            "none" => None,
            c => Some(
                c.parse()
                    .map_err(|e| Error::parse(ln, format!("`cap`: {e}")))?,
            ),
        };
        let mut atlas = Atlas {
            rule: name,
            k: num("k")?,
            l: num("l")?,
            n_max: num("nmax")?,
            girth_min: num("girth")?,
            cap,
            complete: flag("complete")?,
            truncated: flag("truncated")?,
            members: Vec::new(),
        };
        let count = num("count")?;

        while let Some((ln, l)) = lines.next() {
            if l.is_empty() {
                continue;
            }
            let index = l
                .strip_prefix("record ")
                .and_then(|r| r.split_whitespace().next())
                .and_then(|i| i.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(ln, "expected `record <i> ...`"))?;
            if index != atlas.members.len() {
                return Err(Error::parse(ln, format!("record {index} out of order")));
            }
            let (eln, el) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, "truncated record"))?;
            let errors = el
                .strip_prefix("errors")
                .ok_or_else(|| Error::parse(eln, "expected `errors`"))?
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::parse(eln, format!("`{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let (dln, dl) = lines
                .next()
                .ok_or_else(|| Error::parse(eln, "truncated record"))?;
            let digest = dl
                .strip_prefix("digest ")
                .ok_or_else(|| Error::parse(dln, "expected `digest`"))?
                .to_string();
            let mut body = String::new();
            let mut closed = false;
            for (_, l) in lines.by_ref() {
                if l == "end" {
                    closed = true;
                    break;
                }
                body.push_str(l);
                body.push('\n');
            }
            if !closed {
                return Err(Error::parse(dln, "record without `end`"));
            }
            let graph = TannerGraph::from_alist(&body)?;
            let SubgraphOutcome::Failed { witness } =
                simulate_on_subgraph(&graph, &errors, rule, atlas.l)?
            else {
                return Err(Error::parse(
                    ln,
                    format!("record {index} converges under `{}`", rule.name()),
                ));
            };
            if trace_digest(&witness) != digest {
                return Err(Error::parse(
                    dln,
                    format!("record {index} witness digest mismatch"),
                ));
            }
            atlas.members.push(FailureGraph {
                graph,
                errors,
                witness,
            });
        }
        if atlas.members.len() != count {
            return Err(Error::parse(
                ln,
                format!("header count {count}, found {}", atlas.members.len()),
            ));
        }
        Ok(atlas)
    }
}
