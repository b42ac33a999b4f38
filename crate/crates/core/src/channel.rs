//! Binary symmetric channel and error-pattern streams.
//!
//! The all-zero codeword is always transmitted, so the channel output is the
//! error pattern itself.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Sorted, duplicate-free support of an error word of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ErrorPattern {
    support: Vec<usize>,
    n: usize,
}

impl ErrorPattern {
    pub fn new(n: usize, mut support: Vec<usize>) -> Result<ErrorPattern> {
        if let Some(&index) = support.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        support.sort_unstable();
        let before = support.len();
        support.dedup();
        if support.len() != before {
            return Err(Error::InvalidParameter(
                "repeated index in error pattern".into(),
            ));
        }
        Ok(ErrorPattern { support, n })
    }

    pub fn empty(n: usize) -> ErrorPattern {
        ErrorPattern {
            support: Vec::new(),
            n,
        }
    }

    pub fn from_word(word: &[bool]) -> ErrorPattern {
        ErrorPattern {
            support: word
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
            n: word.len(),
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn to_word(&self) -> Vec<bool> {
        let mut w = vec![false; self.n];
        for &i in &self.support {
            w[i] = true;
        }
        w
    }
}

impl std::fmt::Display for ErrorPattern {
    /// Space-separated indices.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// SplitMix64 finaliser over the (master seed, frame) pair.
pub fn frame_seed(master: u64, frame: u64) -> u64 {
    let mut z = master ^ frame.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for one frame.
pub fn frame_rng(master: u64, frame: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(frame_seed(master, frame))
}

/// One BSC frame: each index is in error independently with probability
/// `alpha`. Fully determined by `(seed, frame)`.
pub fn bsc_sample(n: usize, alpha: f64, seed: u64, frame: u64) -> Result<ErrorPattern> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "crossover probability {alpha} outside [0, 1]"
        )));
    }
    Ok(bsc_with(n, alpha, &mut frame_rng(seed, frame)))
}

/// BSC draw from a caller-supplied generator. Gaps between errors are
/// sampled geometrically, which is equivalent to one Bernoulli draw per bit.
pub fn bsc_with<R: Rng>(n: usize, alpha: f64, rng: &mut R) -> ErrorPattern {
    if alpha <= 0.0 {
        return ErrorPattern::empty(n);
    }
    if alpha >= 1.0 {
        return ErrorPattern {
            support: (0..n).collect(),
            n,
        };
    }
    let log_q = (-alpha).ln_1p();
    let mut support = Vec::new();
    let mut i = 0usize;
    loop {
        // u in (0, 1]
        let u = 1.0 - rng.gen::<f64>();
        let gap = (u.ln() / log_q).floor();
        if gap >= (n - i) as f64 {
            break;
        }
        i += gap as usize;
        support.push(i);
        i += 1;
        if i >= n {
            break;
        }
    }
    ErrorPattern { support, n }
}

/// Uniformly random pattern of exactly `weight` errors.
pub fn random_weight_pattern<R: Rng>(n: usize, weight: usize, rng: &mut R) -> Result<ErrorPattern> {
    if weight > n {
        return Err(Error::InvalidParameter(format!(
            "weight {weight} exceeds length {n}"
        )));
    }
    let mut support = index::sample(rng, n, weight).into_vec();
    support.sort_unstable();
    Ok(ErrorPattern { support, n })
}

/// `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn count_patterns(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// All weight-`k` patterns of length `n`, lexicographic.
pub fn enumerate_patterns(n: usize, k: usize) -> Result<Patterns> {
    Patterns::starting_at(n, k, 0)
}

/// Like [`enumerate_patterns`] but skips the first `rank` patterns.
pub fn enumerate_patterns_from(n: usize, k: usize, rank: u64) -> Result<Patterns> {
    Patterns::starting_at(n, k, rank)
}

/// Materialises every weight-`k` pattern, refusing more than `limit`.
pub fn collect_patterns(n: usize, k: usize, limit: u64) -> Result<Vec<ErrorPattern>> {
    match count_patterns(n, k) {
        Some(c) if c <= limit => Ok(enumerate_patterns(n, k)?.collect()),
        _ => Err(Error::TooManyPatterns {
            n,
            weight: k,
            limit,
        }),
    }
}

/// The `rank`-th weight-`k` support in lexicographic order.
pub fn unrank_pattern(n: usize, k: usize, mut rank: u64) -> Option<Vec<usize>> {
    if rank >= count_patterns(n, k)? {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let block = count_patterns(n - next - 1, remaining)?;
            if rank < block {
                out.push(next);
                next += 1;
                break;
            }
            rank -= block;
            next += 1;
        }
    }
    Some(out)
}

/// Lexicographic combination stream.
#[derive(Clone, Debug)]
pub struct Patterns {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Patterns {
    fn starting_at(n: usize, k: usize, rank: u64) -> Result<Patterns> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "weight {k} exceeds length {n}"
            )));
        }
        let current = if rank == 0 {
            Some((0..k).collect())
        } else {
            unrank_pattern(n, k, rank)
        };
        Ok(Patterns { n, current })
    }
}

impl Iterator for Patterns {
    type Item = ErrorPattern;

    fn next(&mut self) -> Option<ErrorPattern> {
        let cur = self.current.as_mut()?;
        let out = ErrorPattern {
            support: cur.clone(),
            n: self.n,
        };
        let k = cur.len();
        match (0..k).rev().find(|&i| cur[i] < self.n - k + i) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}
