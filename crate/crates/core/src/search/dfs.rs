//! Depth-first branch and bound over candidate members.
//!
//! A node is a family given by increasing indices into the colex-ordered
//! list of candidate `k`-sets. Each node carries the list of later
//! candidates that are compatible with it: they satisfy the intersection
//! constraint against every member and do not complete an `r`-sunflower.
//! Both conditions are hereditary, so the list only shrinks along a branch
//! and `depth + remaining` bounds every descendant.
//!
//! Symmetry breaking keeps a node only if no tested element permutation
//! maps it to a lexicographically smaller sorted mask list. The lex-least
//! family of each isomorphism class passes every such test at every prefix,
//! so at least one optimal family is always reached.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use super::masks::{colex_subsets, creates_sunflower};
use super::{
    er_cap, family_from_masks, Checkpoint, SearchConfig, SearchProblem, SearchResult, Symmetry,
};
use crate::{Error, Result};

/// Ground sets above this size test adjacent transpositions only.
const ALL_TRANSPOSITIONS_UP_TO: usize = 40;

#[derive(Debug, Clone)]
pub struct DfsEngine {
    n: usize,
    r: usize,
    cands: Vec<u128>,
    allowed: Vec<bool>,
    cap: usize,
    transpositions: Vec<(u32, u32)>,
    budget: u64,
}

/// Outcome of exploring one subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeOutcome {
    pub best: Vec<u32>,
    pub nodes: u64,
    /// Where the budget ran out, if it did.
    pub interrupted_at: Option<Vec<u32>>,
}

impl DfsEngine {
    pub fn new(problem: &SearchProblem, cfg: &SearchConfig) -> Result<Self> {
        problem.validate()?;
        let (n, k) = (problem.n_max, problem.k);
        if !fits(n, k, cfg.candidate_limit) {
            return Err(Error::SizeLimit {
                what: "candidate k-sets C(n_max, k)",
                limit: cfg.candidate_limit,
            });
        }
        let transpositions = match cfg.symmetry {
            Symmetry::None => Vec::new(),
            _ if n <= ALL_TRANSPOSITIONS_UP_TO => (0..n as u32)
                .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
                .collect(),
            _ => (1..n as u32).map(|b| (b - 1, b)).collect(),
        };
        Ok(DfsEngine {
            n,
            r: problem.r,
            cands: colex_subsets(n, k),
            allowed: problem.constraint.table(k),
            cap: if cfg.use_er_cap { problem.er_cap() } else { usize::MAX },
            transpositions,
            budget: cfg.budget,
        })
    }

    pub fn candidates(&self) -> &[u128] {
        &self.cands
    }

    /// Single-threaded run from the root, or from a checkpoint.
    pub fn run(&self, resume: Option<&Checkpoint>) -> Result<SearchResult> {
        let mut st = State::new(self, None, self.budget);
        if let Some(cp) = resume {
            self.check_path(&cp.best)?;
            self.check_path(&cp.path)?;
            st.best = cp.best.clone();
            st.nodes_before = cp.nodes;
            if !cp.path.is_empty() {
                st.resume = Some(cp.path.clone());
            }
        }
        let all: Vec<u32> = (0..self.cands.len() as u32).collect();
        st.explore(&all);

        let best_masks: Vec<u128> = st.best.iter().map(|&i| self.cands[i as usize]).collect();
        let reached = st.best.len() >= er_cap_for(self);
        let nodes_explored = st.nodes_before + st.nodes;
        let checkpoint = st.interrupted.take().map(|path| Checkpoint {
            path,
            best: st.best.clone(),
            nodes: nodes_explored,
        });
        Ok(SearchResult {
            optimum: best_masks.len(),
            witness: family_from_masks(self.n, &best_masks),
            nodes_explored,
            exhaustive: checkpoint.is_none(),
            reached_er_cap: reached,
            checkpoint,
        })
    }

    /// Nodes at exactly `depth` (plus shallower dead ends) in DFS order.
    /// Their subtrees partition the rest of the search.
    pub fn subtree_roots(&self, depth: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut masks = Vec::new();
        let all: Vec<u32> = (0..self.cands.len() as u32).collect();
        self.collect_roots(depth, &all, &mut path, &mut masks, &mut out);
        out
    }

    fn collect_roots(
        &self,
        depth: usize,
        remaining: &[u32],
        path: &mut Vec<u32>,
        masks: &mut Vec<u128>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if path.len() == depth || remaining.is_empty() {
            out.push(path.clone());
            return;
        }
        for (pos, &c) in remaining.iter().enumerate() {
            masks.push(self.cands[c as usize]);
            if self.is_lex_leader(masks) {
                path.push(c);
                let child = self.child_remaining(masks, &remaining[pos + 1..]);
                self.collect_roots(depth, &child, path, masks, out);
                path.pop();
            }
            masks.pop();
        }
    }

    /// Explores the subtree rooted at `root` (a path from
    /// [`subtree_roots`](Self::subtree_roots)), sharing the best size found
    /// so far through `shared`.
    pub fn run_subtree(&self, root: &[u32], budget: u64, shared: &AtomicUsize) -> Result<SubtreeOutcome> {
        self.check_path(root)?;
        let mut st = State::new(self, Some(shared), budget);
        let mut remaining: Vec<u32> = (0..self.cands.len() as u32).collect();
        for &c in root {
            let pos = remaining
                .iter()
                .position(|&x| x == c)
                .ok_or_else(|| Error::domain("run_subtree", "root is not a search node"))?;
            st.masks.push(self.cands[c as usize]);
            st.path.push(c);
            remaining = self.child_remaining(&st.masks, &remaining[pos + 1..]);
        }
        st.explore(&remaining);
        Ok(SubtreeOutcome {
            best: st.best,
            nodes: st.nodes,
            interrupted_at: st.interrupted,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn masks_of(&self, path: &[u32]) -> Vec<u128> {
        path.iter().map(|&i| self.cands[i as usize]).collect()
    }

    fn check_path(&self, path: &[u32]) -> Result<()> {
        let ok = path.windows(2).all(|w| w[0] < w[1])
            && path.iter().all(|&i| (i as usize) < self.cands.len());
        if ok {
            Ok(())
        } else {
            Err(Error::domain("search", "checkpoint does not match this problem"))
        }
    }

    fn child_remaining(&self, masks: &[u128], later: &[u32]) -> Vec<u32> {
        let newest = *masks.last().expect("child has a member");
        later
            .iter()
            .copied()
            .filter(|&c| {
                let m = self.cands[c as usize];
                self.allowed[(m & newest).count_ones() as usize] && !creates_sunflower(masks, m, self.r)
            })
            .collect()
    }

    /// `masks` is sorted ascending; reject if some transposition maps it to
    /// a lexicographically smaller sorted list.
    fn is_lex_leader(&self, masks: &[u128]) -> bool {
        if self.transpositions.is_empty() {
            return true;
        }
        let support = masks.iter().fold(0u128, |a, &m| a | m);
        let mut image = Vec::with_capacity(masks.len());
        for &(a, b) in &self.transpositions {
            let (ba, bb) = (1u128 << a, 1u128 << b);
            if support & (ba | bb) == 0 {
                continue;
            }
            image.clear();
            let mut moved = false;
            for &m in masks {
                let (ha, hb) = (m & ba != 0, m & bb != 0);
                if ha != hb {
                    moved = true;
                    image.push(m ^ ba ^ bb);
                } else {
                    image.push(m);
                }
            }
            if !moved {
                continue;
            }
            image.sort_unstable();
            if image.as_slice() < masks {
                return false;
            }
        }
        true
    }
}

fn er_cap_for(engine: &DfsEngine) -> usize {
    if engine.cap == usize::MAX {
        er_cap(engine.cands[0].count_ones() as usize, engine.r)
    } else {
        engine.cap
    }
}

/// Whether `C(n, k) <= limit`.
pub(crate) fn fits(n: usize, k: usize, limit: usize) -> bool {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > limit as u128 {
            return false;
        }
    }
    true
}

struct State<'a> {
    eng: &'a DfsEngine,
    shared: Option<&'a AtomicUsize>,
    budget: u64,
    nodes: u64,
    nodes_before: u64,
    path: Vec<u32>,
    masks: Vec<u128>,
    best: Vec<u32>,
    resume: Option<Vec<u32>>,
    interrupted: Option<Vec<u32>>,
    stop: bool,
}

impl<'a> State<'a> {
    fn new(eng: &'a DfsEngine, shared: Option<&'a AtomicUsize>, budget: u64) -> Self {
        State {
            eng,
            shared,
            budget,
            nodes: 0,
            nodes_before: 0,
            path: Vec::new(),
            masks: Vec::new(),
            best: Vec::new(),
            resume: None,
            interrupted: None,
            stop: false,
        }
    }

    fn best_len(&self) -> usize {
        let shared = self.shared.map_or(0, |s| s.load(Ordering::Relaxed));
        self.best.len().max(shared)
    }

    /// Visits the node `self.path` whose compatible later candidates are
    /// `remaining`.
    fn explore(&mut self, remaining: &[u32]) {
        let depth = self.path.len();
        // Nodes on the way back to a checkpoint were counted already.
        let resume_target = match &self.resume {
            Some(p) if depth < p.len() => Some(p[depth]),
            _ => None,
        };
        if resume_target.is_none() {
            if self.nodes >= self.budget {
                self.interrupted = Some(self.path.clone());
                self.stop = true;
                return;
            }
            self.nodes += 1;
            if depth > self.best.len() {
                self.best = self.path.clone();
                if let Some(s) = self.shared {
                    s.fetch_max(depth, Ordering::Relaxed);
                }
            }
            if self.best_len() >= self.eng.cap {
                self.stop = true;
                return;
            }
        }

        let start = match resume_target {
            Some(t) => match remaining.iter().position(|&c| c == t) {
                Some(p) => p,
                None => {
                    // Not reachable from a genuine checkpoint; fall back to
                    // exploring this node normally.
                    self.resume = None;
                    0
                }
            },
            None => 0,
        };
        for pos in start..remaining.len() {
            let on_path = resume_target.is_some() && self.resume.is_some() && pos == start;
            if !on_path && depth + 1 + (remaining.len() - pos - 1) <= self.best_len() {
                break;
            }
            let c = remaining[pos];
            self.masks.push(self.eng.cands[c as usize]);
            if on_path || self.eng.is_lex_leader(&self.masks) {
                if on_path && self.resume.as_ref().is_some_and(|p| p.len() == depth + 1) {
                    self.resume = None;
                }
                self.path.push(c);
                let child = self.eng.child_remaining(&self.masks, &remaining[pos + 1..]);
                self.explore(&child);
                self.path.pop();
            }
            self.masks.pop();
            if self.stop {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Constraint;

    fn problem(k: usize, r: usize, c: Constraint, n: usize) -> SearchProblem {
        SearchProblem::new(k, r, c, n).unwrap()
    }

    #[test]
    fn fits_counts() {
        assert!(fits(12, 2, 66));
        assert!(!fits(12, 2, 65));
        assert!(fits(9, 3, 84));
        assert!(fits(120, 120, 1));
    }

    #[test]
    fn lex_leader_prunes_and_keeps() {
        let p = problem(2, 3, Constraint::Unconstrained, 4);
        let e = DfsEngine::new(&p, &SearchConfig::default()).unwrap();
        assert!(e.is_lex_leader(&[0b0011]));
        assert!(!e.is_lex_leader(&[0b0101]));
        assert!(e.is_lex_leader(&[0b0011, 0b0101]));
        assert!(!e.is_lex_leader(&[0b0011, 0b1001]));
    }

    #[test]
    fn budget_checkpoint_and_resume_agree_with_full_run() {
        let p = problem(2, 3, Constraint::Unconstrained, 7);
        let cfg = SearchConfig {
            use_er_cap: false,
            ..SearchConfig::default()
        };
        let full = DfsEngine::new(&p, &cfg).unwrap().run(None).unwrap();
        assert!(full.exhaustive);

        let small = SearchConfig {
            budget: 5,
            ..cfg.clone()
        };
        let eng = DfsEngine::new(&p, &small).unwrap();
        let mut res = eng.run(None).unwrap();
        let mut rounds = 0;
        while let Some(cp) = res.checkpoint.clone() {
            assert!(!res.exhaustive);
            res = eng.run(Some(&cp)).unwrap();
            rounds += 1;
            assert!(rounds < 10_000);
        }
        assert!(rounds > 0);
        assert_eq!(res.optimum, full.optimum);
        assert_eq!(res.nodes_explored, full.nodes_explored);
    }

    #[test]
    fn subtrees_cover_the_search() {
        let p = problem(2, 3, Constraint::Sizes(alloc::vec![1]), 6);
        let cfg = SearchConfig::default();
        let eng = DfsEngine::new(&p, &cfg).unwrap();
        let shared = AtomicUsize::new(0);
        let best = eng
            .subtree_roots(2)
            .iter()
            .map(|root| eng.run_subtree(root, u64::MAX, &shared).unwrap().best.len())
            .max()
            .unwrap();
        assert_eq!(best, 3);
    }
}
