//! Variable alphabet, check-node memory states and flip-rule tables.
//!
//! A rule maps a variable's current value and the counts of its neighbouring
//! check states to the variable's next value. Memoryless rules only see the
//! number of unsatisfied neighbours; memory rules see the split into
//! previously/newly unsatisfied and previously satisfied checks (the newly
//! satisfied count is implied by the degree).
//!
//! # Text format
//!
//! ```text
//! rule f1 gamma=3 memory=0
//! 0s 0 -> 0s
//! 0s 1 -> 0s
//! ...
//! ```
//!
//! Memory rules list `<state> <n_up> <n_un> <n_sp> -> <state>`. Blank lines
//! and `#` comments are ignored. Every entry of the domain must be present
//! exactly once.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Value of a variable node: hard bit plus strength bit.
///
/// The two-bit encoding is `hard << 1 | strong`, so `0w = 00`, `0s = 01`,
/// `1w = 10`, `1s = 11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum VarState {
    WeakZero = 0b00,
    StrongZero = 0b01,
    WeakOne = 0b10,
    StrongOne = 0b11,
}

impl VarState {
    /// Display order used by rule files and traces.
    pub const ALL: [VarState; 4] = [
        VarState::StrongZero,
        VarState::WeakZero,
        VarState::WeakOne,
        VarState::StrongOne,
    ];

    #[inline]
    pub fn from_bits(bits: u8) -> VarState {
        match bits & 0b11 {
            0b00 => VarState::WeakZero,
            0b01 => VarState::StrongZero,
            0b10 => VarState::WeakOne,
            _ => VarState::StrongOne,
        }
    }

    #[inline]
    pub fn bits(self) -> u8 {
        self as u8
    }

    /// Channel initialisation: strong value of the received bit.
    #[inline]
    pub fn strong(bit: bool) -> VarState {
        if bit {
            VarState::StrongOne
        } else {
            VarState::StrongZero
        }
    }

    /// The value a check node sees.
    #[inline]
    pub fn hard(self) -> bool {
        self.bits() & 0b10 != 0
    }

    #[inline]
    pub fn is_strong(self) -> bool {
        self.bits() & 0b01 != 0
    }

    /// Exchange the roles of 0 and 1, keeping the strength.
    #[inline]
    pub fn swap01(self) -> VarState {
        VarState::from_bits(self.bits() ^ 0b10)
    }

    pub fn token(self) -> &'static str {
        match self {
            VarState::StrongZero => "0s",
            VarState::WeakZero => "0w",
            VarState::WeakOne => "1w",
            VarState::StrongOne => "1s",
        }
    }
}

impl fmt::Display for VarState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for VarState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "0s" => Ok(VarState::StrongZero),
            "0w" => Ok(VarState::WeakZero),
            "1w" => Ok(VarState::WeakOne),
            "1s" => Ok(VarState::StrongOne),
            _ => Err(format!("unknown variable state `{s}`")),
        }
    }
}

/// Satisfaction of a check relative to the previous iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckState {
    PrevSat,
    NewlySat,
    PrevUnsat,
    NewlyUnsat,
}

impl CheckState {
    #[inline]
    pub fn classify(sat_before: bool, sat_now: bool) -> CheckState {
        match (sat_before, sat_now) {
            (true, true) => CheckState::PrevSat,
            (false, true) => CheckState::NewlySat,
            (false, false) => CheckState::PrevUnsat,
            (true, false) => CheckState::NewlyUnsat,
        }
    }

    #[inline]
    pub fn is_satisfied(self) -> bool {
        matches!(self, CheckState::PrevSat | CheckState::NewlySat)
    }

    pub fn token(self) -> &'static str {
        match self {
            CheckState::PrevSat => "sp",
            CheckState::NewlySat => "sn",
            CheckState::PrevUnsat => "up",
            CheckState::NewlyUnsat => "un",
        }
    }
}

impl fmt::Display for CheckState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CheckState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sp" => Ok(CheckState::PrevSat),
            "sn" => Ok(CheckState::NewlySat),
            "up" => Ok(CheckState::PrevUnsat),
            "un" => Ok(CheckState::NewlyUnsat),
            _ => Err(format!("unknown check state `{s}`")),
        }
    }
}

/// Memoryless two-bit update by state and unsatisfied-check count.
const F1: [[VarState; 4]; 4] = {
    use VarState::*;
    [
        // indexed by state bits: 0w, 0s, 1w, 1s
        [StrongZero, WeakOne, StrongOne, StrongOne],
        [StrongZero, StrongZero, WeakZero, StrongOne],
        [StrongOne, WeakZero, StrongZero, StrongZero],
        [StrongOne, StrongOne, WeakOne, StrongZero],
    ]
};

/// The memoryless two-bit rule `f1`.
///
/// # Panics
/// If `n_u > 3`.
pub fn f1_lookup(v: VarState, n_u: usize) -> VarState {
    F1[v.bits() as usize][n_u]
}

/// The check-memory rule `f2`; arguments are the counts of previously
/// unsatisfied, newly unsatisfied and previously satisfied neighbours.
///
/// # Panics
/// If the counts sum to more than 3.
pub fn f2_lookup(v: VarState, n_up: usize, n_un: usize, n_sp: usize) -> VarState {
    assert!(n_up + n_un + n_sp <= 3, "count tuple exceeds degree 3");
    match (n_up, n_un, n_sp) {
        (0, 1, 2) => v,
        (0, 1, 1) => {
            if v.hard() {
                VarState::WeakOne
            } else {
                VarState::WeakZero
            }
        }
        _ => f1_lookup(v, n_up + n_un),
    }
}

/// A total two-bit flipping rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipRule {
    name: String,
    gamma: usize,
    memory: bool,
    /// `state bits * slots + tuple index`; see [`FlipRule::slot`].
    table: Vec<VarState>,
}

impl FlipRule {
    /// Materialises a rule from a function of `(state, n_up, n_un, n_sp)`.
    /// For memoryless rules only `n_up` carries information and the other
    /// two counts are passed as zero.
    pub fn from_fn<F>(name: &str, gamma: usize, memory: bool, f: F) -> FlipRule
    where
        F: Fn(VarState, usize, usize, usize) -> VarState,
    {
        let mut rule = FlipRule::identity(name, gamma, memory);
        for v in VarState::ALL {
            for (up, un, sp) in rule.domain() {
                let slot = rule.slot(v, up, un, sp);
                rule.table[slot] = f(v, up, un, sp);
            }
        }
        rule
    }

    fn identity(name: &str, gamma: usize, memory: bool) -> FlipRule {
        let slots = Self::slots_for(gamma, memory);
        let mut table = Vec::with_capacity(4 * slots);
        for bits in 0..4u8 {
            table.extend(std::iter::repeat_n(VarState::from_bits(bits), slots));
        }
        FlipRule {
            name: name.to_string(),
            gamma,
            memory,
            table,
        }
    }

    fn slots_for(gamma: usize, memory: bool) -> usize {
        let g = gamma + 1;
        if memory {
            g * g * g
        } else {
            g
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> FlipRule {
        self.name = name.to_string();
        self
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn uses_check_memory(&self) -> bool {
        self.memory
    }

    #[inline]
    fn slot(&self, v: VarState, up: usize, un: usize, sp: usize) -> usize {
        let g = self.gamma + 1;
        let tuple = if self.memory {
            (up * g + un) * g + sp
        } else {
            up
        };
        v.bits() as usize * Self::slots_for(self.gamma, self.memory) + tuple
    }

    /// The count tuples of the declared domain in file order. Memoryless
    /// rules yield `(n_u, 0, 0)`.
    pub fn domain(&self) -> Vec<(usize, usize, usize)> {
        let g = self.gamma;
        if !self.memory {
            return (0..=g).map(|u| (u, 0, 0)).collect();
        }
        let mut out = Vec::new();
        for up in 0..=g {
            for un in 0..=g - up {
                for sp in 0..=g - up - un {
                    out.push((up, un, sp));
                }
            }
        }
        out
    }

    /// Next value of a memoryless rule.
    #[inline]
    pub fn next_memoryless(&self, v: VarState, n_u: usize) -> VarState {
        debug_assert!(n_u <= self.gamma);
        self.table[v.bits() as usize * (self.gamma + 1) + n_u]
    }

    /// Next value given the full check-state split. Memoryless rules use
    /// `n_up + n_un`.
    #[inline]
    pub fn next(&self, v: VarState, n_up: usize, n_un: usize, n_sp: usize) -> VarState {
        debug_assert!(n_up + n_un + n_sp <= self.gamma);
        if self.memory {
            self.table[self.slot(v, n_up, n_un, n_sp)]
        } else {
            self.next_memoryless(v, n_up + n_un)
        }
    }

    /// A correct strong variable with only satisfied neighbours stays put.
    pub fn is_zero_preserving(&self) -> bool {
        self.domain()
            .into_iter()
            .filter(|&(up, un, _)| {
                if self.memory {
                    up == 0 && un == 0
                } else {
                    up == 0
                }
            })
            .all(|(up, un, sp)| self.next(VarState::StrongZero, up, un, sp) == VarState::StrongZero)
    }

    /// `next(swap01(v), t) == swap01(next(v, t))` over the whole domain.
    pub fn is_symmetric(&self) -> bool {
        VarState::ALL.iter().all(|&v| {
            self.domain().into_iter().all(|(up, un, sp)| {
                self.next(v.swap01(), up, un, sp) == self.next(v, up, un, sp).swap01()
            })
        })
    }

    /// Returns the memory-rule lift of a memoryless rule: a table over the
    /// full check-state split that only depends on `n_up + n_un`.
    pub fn lift_to_memory(&self) -> FlipRule {
        if self.memory {
            return self.clone();
        }
        FlipRule::from_fn(
            &format!("{}-lifted", self.name),
            self.gamma,
            true,
            |v, up, un, _| self.next_memoryless(v, up + un),
        )
    }

    pub fn validate_for_gamma(&self, gamma: usize) -> Result<()> {
        if self.gamma != gamma {
            return Err(Error::ArityMismatch {
                rule: self.gamma,
                graph: gamma,
            });
        }
        Ok(())
    }

    /// Serialises the rule in the line-oriented text format.
    pub fn emit(&self) -> String {
        let mut out = format!(
            "rule {} gamma={} memory={}\n",
            self.name,
            self.gamma,
            u8::from(self.memory)
        );
        for v in VarState::ALL {
            for (up, un, sp) in self.domain() {
                let next = self.next(v, up, un, sp);
                if self.memory {
                    out.push_str(&format!("{v} {up} {un} {sp} -> {next}\n"));
                } else {
                    out.push_str(&format!("{v} {up} -> {next}\n"));
                }
            }
        }
        out
    }

    /// Parses the text format, checking totality.
    pub fn parse(text: &str) -> Result<FlipRule> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty rule file"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("rule") {
            return Err(Error::parse(
                hline,
                "expected `rule <name> gamma=<g> memory=<0|1>`",
            ));
        }
        let name = fields
            .next()
            .ok_or_else(|| Error::parse(hline, "missing rule name"))?;
        let mut gamma = None;
        let mut memory = None;
        for field in fields {
            match field.split_once('=') {
                Some(("gamma", g)) => {
                    gamma = Some(
                        g.parse::<usize>()
                            .map_err(|e| Error::parse(hline, format!("gamma: {e}")))?,
                    );
                }
                Some(("memory", "0")) => memory = Some(false),
                Some(("memory", "1")) => memory = Some(true),
                _ => {
                    return Err(Error::parse(
                        hline,
                        format!("unexpected header field `{field}`"),
                    ))
                }
            }
        }
        let gamma = gamma.ok_or_else(|| Error::parse(hline, "missing gamma="))?;
        let memory = memory.ok_or_else(|| Error::parse(hline, "missing memory="))?;
        if gamma == 0 {
            return Err(Error::parse(hline, "gamma must be positive"));
        }

        let mut rule = FlipRule::identity(name, gamma, memory);
        let mut seen = vec![false; rule.table.len()];
        let arity = if memory { 3 } else { 1 };
        for (ln, line) in lines {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, "expected `<state> <counts...> -> <state>`"))?;
            let mut toks = lhs.split_whitespace();
            let v: VarState = toks
                .next()
                .ok_or_else(|| Error::parse(ln, "missing state"))?
                .parse()
                .map_err(|e: String| Error::parse(ln, e))?;
            let counts = toks
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::parse(ln, format!("count `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if counts.len() != arity {
                return Err(Error::parse(
                    ln,
                    format!(
                        "expected {arity} count(s) for memory={}, found {}",
                        u8::from(memory),
                        counts.len()
                    ),
                ));
            }
            let (up, un, sp) = if memory {
                (counts[0], counts[1], counts[2])
            } else {
                (counts[0], 0, 0)
            };
            if up + un + sp > gamma {
                return Err(Error::parse(ln, format!("counts exceed gamma={gamma}")));
            }
            let next: VarState = rhs
                .trim()
                .parse()
                .map_err(|e: String| Error::parse(ln, e))?;
            let slot = rule.slot(v, up, un, sp);
            if seen[slot] {
                return Err(Error::parse(ln, "duplicate entry"));
            }
            seen[slot] = true;
            rule.table[slot] = next;
        }

        for v in VarState::ALL {
            for (up, un, sp) in rule.domain() {
                if !seen[rule.slot(v, up, un, sp)] {
                    let entry = if memory {
                        format!("({v}, {up}, {un}, {sp})")
                    } else {
                        format!("({v}, {up})")
                    };
                    return Err(Error::IncompleteRule {
                        rule: name.to_string(),
                        entry,
                    });
                }
            }
        }
        Ok(rule)
    }

    /// Built-in rules: `f1`, `f2`, `bf-parallel`, `bf-3only`.
    pub fn builtin(name: &str) -> Option<FlipRule> {
        match name {
            "f1" => Some(FlipRule::f1()),
            "f2" => Some(FlipRule::f2()),
            "bf-parallel" => Some(FlipRule::bf_parallel()),
            "bf-3only" => Some(FlipRule::bf_3only()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 4] = ["f1", "f2", "bf-parallel", "bf-3only"];

    pub fn f1() -> FlipRule {
        FlipRule::from_fn("f1", 3, false, |v, u, _, _| f1_lookup(v, u))
    }

    pub fn f2() -> FlipRule {
        FlipRule::from_fn("f2", 3, true, f2_lookup)
    }

    /// Plain parallel bit flipping for degree 3: flip when unsatisfied
    /// checks outnumber satisfied ones. Strength is carried along unchanged.
    pub fn bf_parallel() -> FlipRule {
        FlipRule::from_fn("bf-parallel", 3, false, |v, u, _, _| {
            if 2 * u > 3 {
                v.swap01()
            } else {
                v
            }
        })
    }

    /// Flips strong variables only when all three checks are unsatisfied.
    pub fn bf_3only() -> FlipRule {
        FlipRule::from_fn("bf-3only", 3, false, |v, u, _, _| {
            if u == 3 && v.is_strong() {
                v.swap01()
            } else {
                v
            }
        })
    }
}

impl fmt::Display for FlipRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
