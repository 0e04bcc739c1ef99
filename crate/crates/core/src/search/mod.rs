//! Exact extremal numbers at desk scale.
//!
//! `f(k,r,s)` and `g(k,r,ℓ)` are defined over unbounded ground sets; the
//! engines here maximize over `[n_max]` and the [`tables`] layer certifies
//! when the result is independent of the cap.
//!
//! Two engines are provided:
//! * [`dfs`]: depth-first branch and bound over candidate `k`-sets in colex
//!   order, with an upper-bound cutoff, incremental sunflower checks and
//!   lex-leader symmetry breaking under element transpositions;
//! * [`classes`]: level-by-level generation of isomorphism classes using a
//!   canonical form ([`canon`]), selected by [`Symmetry::Full`].

pub mod canon;
pub mod classes;
pub mod dfs;
pub mod masks;
pub mod tables;

use alloc::vec::Vec;
use alloc::format;

use num_traits::ToPrimitive;

use crate::bounds::er_bound;
use crate::detect::find_sunflower;
use crate::family::{GroundSet, MemberSet, SetFamily};
use crate::{Error, Result};

pub use masks::MAX_SEARCH_GROUND;

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Pairwise intersection constraint on the family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    Unconstrained,
    /// `L`-intersecting: every pairwise intersection size lies in the set.
    Sizes(Vec<usize>),
    /// `ℓ`-intersecting: every pairwise intersection has at least `ℓ`
    /// elements.
    AtLeast(usize),
}

impl Constraint {
    pub fn allows(&self, size: usize) -> bool {
        match self {
            Constraint::Unconstrained => true,
            Constraint::Sizes(l) => l.contains(&size),
            Constraint::AtLeast(ell) => size >= *ell,
        }
    }

    /// Lookup table over intersection sizes `0..=k`.
    pub(crate) fn table(&self, k: usize) -> Vec<bool> {
        (0..=k).map(|s| self.allows(s)).collect()
    }

    /// Independent post-hoc check of a finished family.
    pub fn check(&self, fam: &SetFamily) -> Result<()> {
        match self {
            Constraint::Unconstrained => Ok(()),
            Constraint::Sizes(l) => fam.require_l_intersecting(l),
            Constraint::AtLeast(ell) => match fam.check_ell_intersecting(*ell) {
                None => Ok(()),
                Some((first, second)) => Err(Error::IntersectionViolation {
                    first,
                    second,
                    size: fam.members()[first].intersection_len(&fam.members()[second]),
                    allowed: (*ell..fam.uniform_size().unwrap_or(*ell) + 1).collect(),
                }),
            },
        }
    }
}

/// One extremal question: the largest `k`-uniform family on `[n_max]`
/// satisfying `constraint` with no `r`-petal sunflower.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SearchProblem {
    pub k: usize,
    pub r: usize,
    pub constraint: Constraint,
    pub n_max: usize,
}

impl SearchProblem {
    pub fn new(k: usize, r: usize, constraint: Constraint, n_max: usize) -> Result<Self> {
        let p = SearchProblem {
            k,
            r,
            constraint,
            n_max,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::domain("search", "k must be at least 1"));
        }
        if self.r < 2 {
            return Err(Error::PetalCount(self.r));
        }
        if self.n_max < self.k || self.n_max > MAX_SEARCH_GROUND {
            return Err(Error::domain(
                "search",
                format!("n_max must lie in k..={MAX_SEARCH_GROUND}"),
            ));
        }
        if let Constraint::Sizes(l) = &self.constraint {
            if l.is_empty() || l.iter().any(|&x| x >= self.k) {
                return Err(Error::domain(
                    "search",
                    "L must be nonempty with every element below k",
                ));
            }
        }
        Ok(())
    }

    /// `er_bound(k, r)` as an integer: a certified cap on every answer.
    pub fn er_cap(&self) -> usize {
        er_cap(self.k, self.r)
    }
}

pub(crate) fn er_cap(k: usize, r: usize) -> usize {
    er_bound(k, r)
        .expect("validated parameters")
        .floor()
        .to_usize()
        .unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    /// Plain enumeration.
    None,
    /// Lex-leader constraints for element transpositions (DFS engine).
    #[default]
    Transpositions,
    /// Isomorphism-class generation with canonical forms.
    Full,
}

/// Where a budget-limited DFS stopped, so it can be resumed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Checkpoint {
    /// Candidate indices of the node that was about to be explored.
    pub path: Vec<u32>,
    /// Candidate indices of the best family found so far.
    pub best: Vec<u32>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub symmetry: Symmetry,
    /// Stop as soon as a family of size `er_bound(k, r)` is found.
    pub use_er_cap: bool,
    pub resume: Option<Checkpoint>,
    /// Cap on the number of candidate `k`-sets.
    pub candidate_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            symmetry: Symmetry::Transpositions,
            use_er_cap: true,
            resume: None,
            candidate_limit: 250_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: SetFamily,
    pub nodes_explored: u64,
    /// The whole space over `[n_max]` was covered (or the cap was reached).
    pub exhaustive: bool,
    /// The optimum met `er_bound(k, r)`, which makes it final for every
    /// ground-set size.
    pub reached_er_cap: bool,
    pub checkpoint: Option<Checkpoint>,
}

/// Runs the engine selected by `cfg.symmetry` and re-verifies the witness.
pub fn extremal_search(problem: &SearchProblem, cfg: &SearchConfig) -> Result<SearchResult> {
    problem.validate()?;
    let result = match cfg.symmetry {
        Symmetry::Full => classes::search(problem, cfg)?,
        _ => dfs::DfsEngine::new(problem, cfg)?.run(cfg.resume.as_ref())?,
    };
    verify_witness(problem, &result.witness)?;
    Ok(result)
}

/// Checks a witness with code paths independent of the search engines:
/// uniformity, the intersection constraint and exact sunflower detection.
pub fn verify_witness(problem: &SearchProblem, witness: &SetFamily) -> Result<()> {
    witness.require_distinct()?;
    witness.require_uniform(problem.k)?;
    problem.constraint.check(witness)?;
    if let Some(c) = find_sunflower(witness, problem.r)?.found() {
        return Err(Error::ContainsSunflower {
            r: problem.r,
            petals: c.petals.clone(),
        });
    }
    Ok(())
}

/// Family on `[n]` from 128-bit member masks (bit `i` is element `i + 1`).
///
/// # Panics
/// If a mask is empty or has a bit at or above `n`.
pub fn family_from_masks(n: usize, masks: &[u128]) -> SetFamily {
    let ground = GroundSet::new(n).expect("search ground sizes are validated");
    let members = masks.iter().map(|&m| MemberSet::from_mask128(m)).collect();
    SetFamily::new(ground, members).expect("masks lie inside the ground set")
}
