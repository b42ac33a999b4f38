//! Line-oriented trace dumps.
//!
//! ```text
//! # trace n=4 m=8
//! iter 0 vars 1s 0s 1s 0s checks up up up up up sp up sp
//! ```
//!
//! The syndrome is implied by the check tokens.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::TraceEntry;
use crate::error::{Error, Result};
use crate::graph::{Assignment, Syndrome};
use crate::rules::{CheckState, VarState};

pub fn dump_trace(trace: &[TraceEntry]) -> String {
    let (n, m) = trace
        .first()
        .map_or((0, 0), |e| (e.states.len(), e.checks.len()));
    let mut out = format!("# trace n={n} m={m}\n");
    for (t, e) in trace.iter().enumerate() {
        write!(out, "iter {t} vars").unwrap();
        for s in e.states.states() {
            write!(out, " {}", s.token()).unwrap();
        }
        out.push_str(" checks");
        for c in &e.checks {
            write!(out, " {}", c.token()).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceEntry>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty trace"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match dims[..] {
        ["#", "trace", n, m] => (header_field(n, "n=")?, header_field(m, "m=")?),
        _ => return Err(Error::parse(1, "expected `# trace n=<n> m=<m>`")),
    };
    let mut out = Vec::new();
    for (i, line) in lines {
        let ln = i + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n + m + 4
            || tokens[0] != "iter"
            || tokens[2] != "vars"
            || tokens[3 + n] != "checks"
        {
            return Err(Error::parse(
                ln,
                format!("expected an iteration line with {n} variables and {m} checks"),
            ));
        }
        if tokens[1] != out.len().to_string() {
            return Err(Error::parse(
                ln,
                format!("expected iteration {}", out.len()),
            ));
        }
        let states = tokens[3..3 + n]
            .iter()
            .map(|t| t.parse::<VarState>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(ln, e))?;
        let checks = tokens[4 + n..]
            .iter()
            .map(|t| t.parse::<CheckState>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(ln, e))?;
        out.push(TraceEntry {
            states: Assignment(states),
            syndrome: Syndrome(checks.iter().map(|c| c.is_satisfied()).collect()),
            checks,
        });
    }
    Ok(out)
}

fn header_field(token: &str, prefix: &str) -> Result<usize> {
    token
        .strip_prefix(prefix)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::parse(1, format!("bad header field `{token}`")))
}

/// Hex SHA-256 of the dump.
pub fn trace_digest(trace: &[TraceEntry]) -> String {
    Sha256::digest(dump_trace(trace).as_bytes()).iter().fold(
        String::with_capacity(64),
        |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        },
    )
}
