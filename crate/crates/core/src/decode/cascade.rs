use std::path::Path;

use super::{check_len, decode_two_bit, DecodeOptions, DecodeResult};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::rules::FlipRule;

/// Ordered decoder members, each with its own iteration budget.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeSpec {
    members: Vec<(FlipRule, usize)>,
}

impl CascadeSpec {
    pub fn new(members: Vec<(FlipRule, usize)>) -> Result<CascadeSpec> {
        if members.is_empty() {
            return Err(Error::EmptyCascade);
        }
        if let Some((rule, _)) = members.iter().find(|(_, l)| *l == 0) {
            return Err(Error::InvalidParameter(format!(
                "cascade member `{rule}` needs at least one iteration"
            )));
        }
        Ok(CascadeSpec { members })
    }

    pub fn members(&self) -> &[(FlipRule, usize)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn total_iterations(&self) -> usize {
        self.members.iter().map(|(_, l)| l).sum()
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self
            .members
            .iter()
            .map(|(r, l)| format!("{}:{l}", r.name()))
            .collect();
        format!("cascade[{}]", parts.join("+"))
    }

    pub fn validate_for_gamma(&self, gamma: usize) -> Result<()> {
        self.members
            .iter()
            .try_for_each(|(r, _)| r.validate_for_gamma(gamma))
    }

    /// Parses `<rule-name-or-file> <l_i>` lines. Names are resolved as
    /// built-ins first, then as rule files relative to `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<CascadeSpec> {
        let mut members = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ln = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [name, iters] = fields[..] else {
                return Err(Error::parse(ln, "expected `<rule> <max iterations>`"));
            };
            let iters: usize = iters
                .parse()
                .map_err(|e| Error::parse(ln, format!("iterations `{iters}`: {e}")))?;
            members.push((resolve_rule(name, base_dir)?, iters));
        }
        CascadeSpec::new(members)
    }

    pub fn to_text(&self) -> String {
        self.members
            .iter()
            .map(|(r, l)| format!("{} {l}\n", r.name()))
            .collect()
    }
}

/// A built-in rule name or a path to a rule file.
pub fn resolve_rule(name: &str, base_dir: &Path) -> Result<FlipRule> {
    if let Some(rule) = FlipRule::builtin(name) {
        return Ok(rule);
    }
    let path = base_dir.join(name);
    let text = std::fs::read_to_string(&path).map_err(|_| Error::UnknownRule(name.to_string()))?;
    FlipRule::parse(&text)
}

/// Runs members in order, each restarted from the channel word, until one
/// converges. Iterations accumulate across members.
pub fn decode_cascade(
    g: &TannerGraph,
    y: &[bool],
    spec: &CascadeSpec,
    trace: bool,
) -> Result<DecodeResult> {
    check_len(g, y)?;
    spec.validate_for_gamma(g.gamma())?;
    let mut spent = 0;
    let mut last = None;
    for (i, (rule, max_iter)) in spec.members.iter().enumerate() {
        let opts = DecodeOptions {
            max_iter: *max_iter,
            trace,
            detect_cycles: false,
        };
        let mut r = decode_two_bit(g, y, rule, &opts)?;
        spent += r.iterations;
        if r.converged {
            r.iterations = spent;
            r.algorithm_index = Some(i);
            return Ok(r);
        }
        last = Some(r);
    }
    let mut r = last.expect("cascade is non-empty");
    r.iterations = spent;
    Ok(r)
}
