//! MacKay's alist format.
//!
//! ```text
//! n m
//! max_var_degree max_check_degree
//! <n variable degrees>
//! <m check degrees>
//! <n lines: 1-based check indices of each variable, zero padded>
//! <m lines: 1-based variable indices of each check, zero padded>
//! ```

use super::TannerGraph;
use crate::error::{Error, Result};

impl TannerGraph {
    /// Writes the alist representation, zero-padding short lists.
    pub fn to_alist(&self) -> String {
        let mut out = String::new();
        let max_c = self.max_check_degree();
        out.push_str(&format!("{} {}\n", self.n, self.m));
        out.push_str(&format!("{} {}\n", self.gamma, max_c));
        out.push_str(&join((0..self.n).map(|_| self.gamma)));
        out.push('\n');
        out.push_str(&join((0..self.m).map(|c| self.check_degree(c))));
        out.push('\n');
        for v in 0..self.n {
            let mut checks = self.var_checks(v).to_vec();
            checks.sort_unstable();
            out.push_str(&join(checks.iter().map(|c| c + 1)));
            out.push('\n');
        }
        for c in 0..self.m {
            let vars = self.check_vars(c);
            let padding = std::iter::repeat_n(0, max_c - vars.len());
            out.push_str(&join(vars.iter().map(|v| v + 1).chain(padding)));
            out.push('\n');
        }
        out
    }

    /// Parses an alist file. Zero padding is tolerated anywhere in the
    /// neighbour lists; both halves must describe the same edge set.
    pub fn from_alist(text: &str) -> Result<TannerGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next_line = |what: &str| -> Result<(usize, Vec<usize>)> {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("unexpected end of file reading {what}")))?;
            let nums = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::parse(ln, format!("`{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((ln, nums))
        };

        let (ln, dims) = next_line("dimensions")?;
        let [n, m] = dims[..] else {
            return Err(Error::parse(ln, "expected `n m`"));
        };
        let (ln, maxes) = next_line("maximum degrees")?;
        let [max_v, max_c] = maxes[..] else {
            return Err(Error::parse(ln, "expected two maximum degrees"));
        };
        let (ln, vdeg) = next_line("variable degrees")?;
        if vdeg.len() != n {
            return Err(Error::parse(
                ln,
                format!("expected {n} variable degrees, found {}", vdeg.len()),
            ));
        }
        let (ln, cdeg) = next_line("check degrees")?;
        if cdeg.len() != m {
            return Err(Error::parse(
                ln,
                format!("expected {m} check degrees, found {}", cdeg.len()),
            ));
        }

        let mut var_adj = Vec::with_capacity(n);
        for (v, &d) in vdeg.iter().enumerate() {
            let (ln, nums) = next_line("variable neighbour list")?;
            if d > max_v {
                return Err(Error::parse(
                    ln,
                    format!("variable {} degree {d} exceeds maximum {max_v}", v + 1),
                ));
            }
            let list = neighbours(ln, &nums, d, m)?;
            var_adj.push(list);
        }
        let mut check_adj = Vec::with_capacity(m);
        for (c, &d) in cdeg.iter().enumerate() {
            let (ln, nums) = next_line("check neighbour list")?;
            if d > max_c {
                return Err(Error::parse(
                    ln,
                    format!("check {} degree {d} exceeds maximum {max_c}", c + 1),
                ));
            }
            check_adj.push(neighbours(ln, &nums, d, n)?);
        }

        let g = TannerGraph::from_var_adj(m, &var_adj)?;
        for (c, listed) in check_adj.iter_mut().enumerate() {
            listed.sort_unstable();
            if listed.as_slice() != g.check_vars(c) {
                return Err(Error::InvalidGraph(format!(
                    "check {} neighbour list disagrees with variable lists",
                    c + 1
                )));
            }
        }
        Ok(g)
    }
}

fn neighbours(ln: usize, nums: &[usize], degree: usize, bound: usize) -> Result<Vec<usize>> {
    let list: Vec<usize> = nums.iter().copied().filter(|&x| x != 0).collect();
    if list.len() != degree {
        return Err(Error::parse(
            ln,
            format!("degree mismatch: declared {degree}, listed {}", list.len()),
        ));
    }
    list.into_iter()
        .map(|x| {
            if x > bound {
                Err(Error::parse(
                    ln,
                    format!("index {x} out of range 1..={bound}"),
                ))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn join(items: impl Iterator<Item = usize>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
