//! Extremal values with certified ground-set caps, and the `f`/`g` tables.
//!
//! A search over `[n]` is a lower bound for the unbounded problem. It is
//! the exact value once `n >= k·(opt + 1)`: a family one member larger
//! spans at most `k·(opt + 1)` points, so it would have been found. It is
//! also exact when `opt` meets the Erdős–Rado cap.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::{extremal_search, Constraint, SearchConfig, SearchProblem, Symmetry, MAX_SEARCH_GROUND};
use crate::bounds::{
    default_recursion_base, main2_bound, main_bound, recursion_f_bound, BoundConfig, BoundValue,
    RecursionVariant,
};
use crate::family::SetFamily;
use crate::{Error, Result};

/// An extremal value together with how far it can be trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalValue {
    pub k: usize,
    pub r: usize,
    pub constraint: Constraint,
    pub value: usize,
    pub witness: SetFamily,
    /// Ground-set size of the final run.
    pub n_max: usize,
    /// Every run finished within its budget.
    pub exhaustive: bool,
    /// The value holds for every ground-set size.
    pub certified: bool,
    /// The last enlargement of the ground set (by at most `k` points)
    /// raised the optimum.
    pub ground_sensitive: bool,
    /// `(n_max, optimum)` for each run.
    pub runs: Vec<(usize, usize)>,
    pub nodes: u64,
}

/// Runs the search on `[n]` for `n = k, 2k, 3k, …` until the cap is
/// certified, the budget is exhausted, or `n_limit` is reached. `n_limit`
/// is lowered to fit `cfg.candidate_limit` unless the search is the
/// isomorphism-free one.
pub fn certified_search(
    k: usize,
    r: usize,
    constraint: Constraint,
    n_limit: usize,
    cfg: &SearchConfig,
) -> Result<ExtremalValue> {
    let mut n_limit = n_limit.min(MAX_SEARCH_GROUND);
    if n_limit < k {
        return Err(Error::domain("certified_search", "n_limit must be at least k"));
    }
    // The DFS engine lists every k-set up front, so stay within its limit.
    if cfg.symmetry != Symmetry::Full {
        while n_limit > k && !super::dfs::fits(n_limit, k, cfg.candidate_limit) {
            n_limit -= 1;
        }
    }
    let mut n = k;
    let mut runs = Vec::new();
    let mut nodes = 0u64;
    loop {
        let problem = SearchProblem::new(k, r, constraint.clone(), n)?;
        let res = extremal_search(&problem, cfg)?;
        nodes += res.nodes_explored;
        runs.push((n, res.optimum));
        let certified = res.exhaustive && (res.reached_er_cap || n >= k * (res.optimum + 1));
        let next = (n + k).min(k * (res.optimum + 1)).max(n + 1);
        if certified || !res.exhaustive || n >= n_limit {
            let ground_sensitive = runs.len() >= 2 && runs[runs.len() - 2].1 < res.optimum;
            return Ok(ExtremalValue {
                k,
                r,
                constraint,
                value: res.optimum,
                witness: res.witness,
                n_max: n,
                exhaustive: res.exhaustive,
                certified,
                ground_sensitive,
                runs,
                nodes,
            });
        }
        n = next.min(n_limit);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GRow {
    pub ell: usize,
    pub result: ExtremalValue,
    /// `g(k,r,ℓ) <= er_bound(k,r)` always applies.
    pub er_cap: usize,
    /// The ℓ-intersecting bound, when its logarithms are defined.
    pub main2: Option<BoundValue>,
}

/// `g(k, r, ℓ)` for `k = max(ℓ,1) ..= k_max`, with `k > ℓ`.
pub fn g_table(
    k_max: usize,
    r: usize,
    ell: usize,
    n_limit: usize,
    cfg: &SearchConfig,
    main2_params: Option<(&BigRational, &BigRational, &BoundConfig)>,
) -> Result<Vec<GRow>> {
    let mut rows = Vec::new();
    for k in (ell + 1).max(1)..=k_max {
        let constraint = if ell == 0 {
            Constraint::Unconstrained
        } else {
            Constraint::AtLeast(ell)
        };
        let result = certified_search(k, r, constraint, n_limit, cfg)?;
        let main2 = main2_params.and_then(|(a, d, bc)| main2_bound(k, ell, a, d, bc).ok());
        rows.push(GRow {
            ell,
            er_cap: super::er_cap(k, r),
            result,
            main2,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRow {
    pub k: usize,
    pub s: usize,
    /// Maximum over all `L` with `|L| = s`; `per_l` keeps each choice.
    pub best: ExtremalValue,
    pub per_l: Vec<ExtremalValue>,
    pub main: BoundValue,
    pub as_stated: BoundValue,
    pub as_proved: BoundValue,
}

impl FRow {
    /// Every `L` was searched exhaustively with a certified ground set.
    pub fn is_exact(&self) -> bool {
        self.per_l.iter().all(|v| v.exhaustive && v.certified)
    }

    /// The exact value does not exceed any of the three upper bounds.
    pub fn within_bounds(&self) -> bool {
        let v = BigRational::from_integer(self.best.value.into());
        v <= self.main.value && v <= self.as_stated.value && v <= self.as_proved.value
    }
}

/// All `s`-subsets of `{0, …, k-1}`.
pub fn l_choices(k: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for x in start..k {
            cur.push(x);
            rec(x + 1, k, s, cur, out);
            cur.pop();
        }
    }
    rec(0, k, s, &mut cur, &mut out);
    out
}

/// `f(k, 3, s)` for `k = s ..= k_max` (smaller `k` admit no `L` of size
/// `s`), maximized over every `L`.
pub fn f_table(
    k_max: usize,
    s: usize,
    n_limit: usize,
    cfg: &SearchConfig,
    bound_cfg: &BoundConfig,
) -> Result<Vec<FRow>> {
    if s == 0 {
        return Err(Error::domain("f_table", "s must be at least 1"));
    }
    let base = |k: usize| -> BigUint { default_recursion_base(k) };
    let mut rows = Vec::new();
    for k in s.max(1)..=k_max {
        let mut per_l = Vec::new();
        for l in l_choices(k, s) {
            per_l.push(certified_search(k, 3, Constraint::Sizes(l), n_limit, cfg)?);
        }
        let best = per_l
            .iter()
            .max_by(|a, b| a.value.cmp(&b.value).then(b.constraint_key().cmp(&a.constraint_key())))
            .cloned()
            .expect("at least one L");
        rows.push(FRow {
            k,
            s,
            best,
            per_l,
            main: main_bound(k, s, bound_cfg)?,
            as_stated: recursion_f_bound(k, s, RecursionVariant::AsStated, &base)?,
            as_proved: recursion_f_bound(k, s, RecursionVariant::AsProved, &base)?,
        });
    }
    Ok(rows)
}

impl ExtremalValue {
    fn constraint_key(&self) -> Vec<usize> {
        match &self.constraint {
            Constraint::Sizes(l) => l.clone(),
            Constraint::AtLeast(ell) => alloc::vec![*ell],
            Constraint::Unconstrained => Vec::new(),
        }
    }
}
