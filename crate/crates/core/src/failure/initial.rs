use std::collections::BTreeMap;

use super::canon::{canonical_key, CanonicalKey};
use super::replay::Sub;
use crate::graph::TannerGraph;

/// All non-isomorphic graphs on `k` degree-`gamma` variables, every one of
/// them marked, with girth at least `girth_min`. Checks not shared by two
/// listed variables are leaves.
pub fn enumerate_initial_subgraphs(k: usize, gamma: usize, girth_min: usize) -> Vec<TannerGraph> {
    initial_subs(k, gamma, girth_min, None)
        .into_iter()
        .map(|s| s.graph())
        .collect()
}

pub(crate) fn initial_subs(
    k: usize,
    gamma: usize,
    girth_min: usize,
    cap: Option<usize>,
) -> Vec<Sub> {
    if k == 0 {
        return vec![Sub {
            adj: Vec::new(),
            m: 0,
            k: 0,
        }];
    }
    let mut level: BTreeMap<CanonicalKey, Sub> = BTreeMap::new();
    let first = Sub {
        adj: vec![(0..gamma).collect()],
        m: gamma,
        k: 1,
    };
    level.insert(key(&first), first);
    for size in 2..=k {
        let mut next = BTreeMap::new();
        for sub in level.values() {
            let deg = sub.check_degrees();
            for_each_subset(sub.m, 0, gamma, &mut |shared| {
                if cap.is_some_and(|cap| shared.iter().any(|&c| deg[c] >= cap)) {
                    return;
                }
                let mut child = adjoin(sub, shared, gamma);
                child.k = size;
                if girth_ok(&child, girth_min) {
                    next.entry(key(&child)).or_insert(child);
                }
            });
        }
        level = next;
    }
    level.into_values().collect()
}

fn key(sub: &Sub) -> CanonicalKey {
    let marked: Vec<usize> = (0..sub.k).collect();
    canonical_key(&sub.graph(), &marked)
}

/// `sub` plus one variable on the checks `shared` and fresh leaf checks.
pub(crate) fn adjoin(sub: &Sub, shared: &[usize], gamma: usize) -> Sub {
    let mut checks = shared.to_vec();
    checks.extend(sub.m..sub.m + gamma - shared.len());
    let mut adj = sub.adj.clone();
    adj.push(checks);
    Sub {
        adj,
        m: sub.m + gamma - shared.len(),
        k: sub.k,
    }
}

pub(crate) fn girth_ok(sub: &Sub, girth_min: usize) -> bool {
    sub.graph().girth().is_none_or(|g| g >= girth_min)
}

/// Calls `f` on every increasing subset of `0..m` with size in `lo..=hi`.
pub(crate) fn for_each_subset(m: usize, lo: usize, hi: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(
        m: usize,
        start: usize,
        lo: usize,
        hi: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() >= lo {
            f(cur);
        }
        if cur.len() == hi {
            return;
        }
        for c in start..m {
            cur.push(c);
            go(m, c + 1, lo, hi, cur, f);
            cur.pop();
        }
    }
    go(m, 0, lo, hi, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::failure::canon::tests::brute_isomorphic;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_initial_subgraphs(1, 3, 8).len(), 1);
        assert_eq!(enumerate_initial_subgraphs(2, 3, 8).len(), 2);
        assert_eq!(enumerate_initial_subgraphs(2, 3, 4).len(), 4);
    }

    /// Independent count for k=2: one graph per number of shared checks
    /// allowed by the girth bound.
    #[test]
    fn pairs_by_shared_checks() {
        for girth in [4, 6, 8] {
            let expected = (0..=3usize).filter(|&s| s <= 1 || girth <= 4).count();
            assert_eq!(
                enumerate_initial_subgraphs(2, 3, girth).len(),
                expected,
                "girth {girth}"
            );
        }
    }

    #[test]
    fn results_pairwise_non_isomorphic() {
        for k in 1..=4 {
            let gs = enumerate_initial_subgraphs(k, 3, 8);
            let marks: Vec<usize> = (0..k).collect();
            for i in 0..gs.len() {
                assert!(gs[i].girth().is_none_or(|g| g >= 8));
                for j in i + 1..gs.len() {
                    assert!(!brute_isomorphic(&gs[i], &marks, &gs[j], &marks));
                }
            }
        }
    }

    #[test]
    fn subsets() {
        let mut seen = Vec::new();
        for_each_subset(4, 1, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 4 + 6);
    }
}
