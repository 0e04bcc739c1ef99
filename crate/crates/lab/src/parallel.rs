//! Multi-threaded drivers over the core engines.
//!
//! The optimum of a parallel search is deterministic; the witness is the
//! least family (in candidate-index order) among the best ones the workers
//! report, which can differ from the single-threaded witness.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use sunflower_core::detect::{
    candidate_kernels, find_sunflower, petals_for_kernel, NoSunflowerCertificate,
    SunflowerCertificate, SunflowerSearch,
};
use sunflower_core::search::dfs::DfsEngine;
use sunflower_core::search::{
    extremal_search, family_from_masks, verify_witness, SearchConfig, SearchProblem, SearchResult,
    Symmetry,
};
use sunflower_core::SetFamily;

/// Depth of the subtree roots handed to workers.
const SPLIT_DEPTH: usize = 2;

pub fn search(problem: &SearchProblem, cfg: &SearchConfig, threads: usize) -> anyhow::Result<SearchResult> {
    if threads <= 1 || cfg.symmetry == Symmetry::Full || cfg.resume.is_some() {
        return Ok(extremal_search(problem, cfg)?);
    }
    let engine = DfsEngine::new(problem, cfg)?;
    let roots = engine.subtree_roots(SPLIT_DEPTH);
    let next = AtomicUsize::new(0);
    let shared_best = AtomicUsize::new(0);
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let results: Mutex<Vec<Vec<u32>>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<sunflower_core::Error>> = Mutex::new(None);

    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= roots.len() || exhausted.load(Ordering::Relaxed) {
                    return;
                }
                if shared_best.load(Ordering::Relaxed) >= engine.cap() {
                    return;
                }
                let left = cfg.budget.saturating_sub(nodes.load(Ordering::Relaxed));
                match engine.run_subtree(&roots[i], left, &shared_best) {
                    Ok(out) => {
                        nodes.fetch_add(out.nodes, Ordering::Relaxed);
                        if out.interrupted_at.is_some() {
                            exhausted.store(true, Ordering::Relaxed);
                        }
                        results.lock().expect("no poisoned lock").push(out.best);
                    }
                    Err(e) => {
                        *failure.lock().expect("no poisoned lock") = Some(e);
                        exhausted.store(true, Ordering::Relaxed);
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("no poisoned lock") {
        return Err(e.into());
    }

    let mut found = results.into_inner().expect("no poisoned lock");
    let best_len = found.iter().map(Vec::len).max().unwrap_or(0);
    found.retain(|b| b.len() == best_len);
    found.sort();
    let best = found.into_iter().next().unwrap_or_default();
    let witness = family_from_masks(problem.n_max, &engine.masks_of(&best));
    verify_witness(problem, &witness)?;
    Ok(SearchResult {
        optimum: best_len,
        witness,
        nodes_explored: nodes.into_inner(),
        exhaustive: !exhausted.into_inner(),
        reached_er_cap: best_len >= problem.er_cap(),
        checkpoint: None,
    })
}

/// Detection with candidate kernels split across threads. The certificate
/// is the one for the first kernel (in the sequential order) that admits
/// `r` petals, so the output matches the sequential search.
pub fn find_sunflower_parallel(fam: &SetFamily, r: usize, threads: usize) -> anyhow::Result<SunflowerSearch> {
    if threads <= 1 || fam.len() < r || r < 2 {
        return Ok(find_sunflower(fam, r)?);
    }
    fam.require_distinct()?;
    let kernels = candidate_kernels(fam);
    let next = AtomicUsize::new(0);
    // Index of the earliest kernel known to succeed.
    let first_hit = AtomicUsize::new(usize::MAX);
    let hits: Mutex<Vec<(usize, Vec<usize>)>> = Mutex::new(Vec::new());
    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= kernels.len() || i > first_hit.load(Ordering::Relaxed) {
                    return;
                }
                if let Some(petals) = petals_for_kernel(fam, &kernels[i], r) {
                    first_hit.fetch_min(i, Ordering::Relaxed);
                    hits.lock().expect("no poisoned lock").push((i, petals));
                }
            });
        }
    });
    let hits = hits.into_inner().expect("no poisoned lock");
    Ok(match hits.into_iter().min_by_key(|(i, _)| *i) {
        Some((i, petals)) => SunflowerSearch::Found(SunflowerCertificate {
            r,
            petals,
            kernel: kernels[i].clone(),
        }),
        None => SunflowerSearch::Free(NoSunflowerCertificate {
            r,
            kernels_examined: kernels.len(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sunflower_core::constructions::{fano_plane, transversal_family};
    use sunflower_core::search::Constraint;

    #[test]
    fn parallel_optimum_matches_sequential() {
        for (k, c, n) in [
            (2, Constraint::Unconstrained, 8),
            (2, Constraint::Sizes(vec![1]), 7),
            (3, Constraint::Sizes(vec![1]), 9),
        ] {
            let p = SearchProblem::new(k, 3, c, n).unwrap();
            let cfg = SearchConfig::default();
            let seq = extremal_search(&p, &cfg).unwrap();
            let par = search(&p, &cfg, 4).unwrap();
            assert_eq!(seq.optimum, par.optimum);
            assert!(par.exhaustive);
        }
    }

    #[test]
    fn parallel_detection_matches_sequential() {
        for fam in [fano_plane(), transversal_family(3, 3).unwrap()] {
            for r in 2..=4 {
                assert_eq!(
                    find_sunflower(&fam, r).unwrap(),
                    find_sunflower_parallel(&fam, r, 3).unwrap()
                );
            }
        }
    }
}
