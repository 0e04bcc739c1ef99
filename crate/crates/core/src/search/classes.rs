//! Level-by-level generation of isomorphism classes.
//!
//! Level `m` holds one canonical representative per isomorphism class of
//! valid `m`-member families on at most `n_max` points. Level `m + 1` is
//! obtained by extending every representative with every compatible
//! `k`-set and keeping the distinct canonical forms. Representatives use
//! the points `0..support`, and an extension only ever introduces the
//! lowest unused points, which loses no class.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::canon::canonical_form;
use super::masks::creates_sunflower;
use super::{family_from_masks, Constraint, SearchConfig, SearchProblem, SearchResult};
use crate::Result;

/// What to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassQuery {
    pub n_max: usize,
    pub k: usize,
    pub constraint: Constraint,
    /// Only families without an `r`-petal sunflower, when set.
    pub forbid_r: Option<usize>,
    /// Stop after this level.
    pub max_level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStats {
    /// Number of classes per level, starting at level 1.
    pub per_level: Vec<usize>,
    /// Canonical forms computed.
    pub nodes: u64,
    pub complete: bool,
}

impl ClassStats {
    pub fn largest_level(&self) -> usize {
        self.per_level.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1)
    }
}

/// Calls `visit(level, representative)` for every class, level by level,
/// in increasing order of canonical form.
pub fn enumerate_classes<V: FnMut(usize, &[u128])>(
    q: &ClassQuery,
    budget: u64,
    mut visit: V,
) -> Result<ClassStats> {
    let mut stats = ClassStats {
        per_level: Vec::new(),
        nodes: 0,
        complete: true,
    };
    if q.k == 0 || q.k > q.n_max || q.max_level == 0 {
        return Ok(stats);
    }
    let cands = super::masks::colex_subsets(q.n_max, q.k);
    let allowed = q.constraint.table(q.k);

    let mut level: Vec<Vec<u128>> = alloc::vec![alloc::vec![(1u128 << q.k) - 1]];
    stats.nodes = 1;
    let mut m = 1;
    while !level.is_empty() {
        stats.per_level.push(level.len());
        for rep in &level {
            visit(m, rep);
        }
        if m == q.max_level {
            break;
        }
        let mut next: BTreeSet<Vec<u128>> = BTreeSet::new();
        for rep in &level {
            let support = rep.iter().fold(0u128, |a, &x| a | x);
            let used = support.count_ones();
            for &c in &cands {
                let fresh = c & !support;
                // Fresh points must be exactly the lowest unused ones.
                if fresh != 0 && fresh != low_bits(used + fresh.count_ones()) & !support {
                    continue;
                }
                if rep.contains(&c)
                    || !rep.iter().all(|&x| allowed[(x & c).count_ones() as usize])
                    || q.forbid_r.is_some_and(|r| creates_sunflower(rep, c, r))
                {
                    continue;
                }
                if stats.nodes >= budget {
                    stats.complete = false;
                    return Ok(stats);
                }
                stats.nodes += 1;
                let mut ext = rep.clone();
                ext.push(c);
                next.insert(canonical_form(&ext));
            }
        }
        level = next.into_iter().collect();
        m += 1;
    }
    Ok(stats)
}

fn low_bits(count: u32) -> u128 {
    if count >= 128 {
        !0
    } else {
        (1u128 << count) - 1
    }
}

/// Exact search by class generation; the witness is the least canonical
/// form of maximum size.
pub fn search(problem: &SearchProblem, cfg: &SearchConfig) -> Result<SearchResult> {
    problem.validate()?;
    let cap = problem.er_cap();
    let q = ClassQuery {
        n_max: problem.n_max,
        k: problem.k,
        constraint: problem.constraint.clone(),
        forbid_r: Some(problem.r),
        max_level: if cfg.use_er_cap { cap } else { usize::MAX },
    };
    let mut best: Vec<u128> = Vec::new();
    let stats = enumerate_classes(&q, cfg.budget, |m, rep| {
        if m > best.len() {
            best = rep.to_vec();
        }
    })?;
    Ok(SearchResult {
        optimum: best.len(),
        witness: family_from_masks(problem.n_max, &best),
        nodes_explored: stats.nodes,
        exhaustive: stats.complete,
        reached_er_cap: best.len() >= cap,
        checkpoint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn graph_classes_on_four_points() {
        // graphs on at most 4 vertices without isolated-vertex padding,
        // counted by number of edges: 1, 2, 3, 2, 1, 1
        let q = ClassQuery {
            n_max: 4,
            k: 2,
            constraint: Constraint::Unconstrained,
            forbid_r: None,
            max_level: usize::MAX,
        };
        let stats = enumerate_classes(&q, u64::MAX, |_, _| {}).unwrap();
        assert_eq!(stats.per_level, vec![1, 2, 3, 2, 1, 1]);
        assert!(stats.complete);
    }

    #[test]
    fn intersecting_pairs_without_three_star() {
        let p = SearchProblem::new(2, 3, Constraint::Sizes(vec![1]), 6).unwrap();
        let cfg = SearchConfig::default();
        let res = search(&p, &cfg).unwrap();
        assert_eq!(res.optimum, 3);
        assert!(res.exhaustive);
    }
}
