//! The acceptance table and the small extremal tables.
//!
//! Every criterion recomputes its evidence from scratch; the random parts
//! draw from a ChaCha stream seeded by [`ReportConfig::seed`], so a run is
//! reproducible from its seed.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sunflower_core::bounds::{
    binomial_step, binomial_step_threshold_failures, er_bound, main2_bound, main_bound,
    split_binomial_check, BoundConfig, RoundingMode,
};
use sunflower_core::constructions::{fano_plane, product_compose, transversal_family};
use sunflower_core::detect::{find_sunflower, verify_sunflower};
use sunflower_core::prover::{
    cover_ell_intersecting, decompose_l_intersecting, deza_check, is_sunflower, lift_sunflower,
    reduce, soul_check, verify_decomposition, DezaVerdict, DecompositionNode, NodeCase,
};
use sunflower_core::search::canon::are_isomorphic;
use sunflower_core::search::classes::{enumerate_classes, ClassQuery};
use sunflower_core::search::masks::{brute_force_has_sunflower, creates_sunflower};
use sunflower_core::search::tables::{certified_search, f_table, g_table, l_choices, ExtremalValue};
use sunflower_core::search::{family_from_masks, Constraint, SearchConfig, SearchProblem};
use sunflower_core::{GroundSet, MemberSet, SetFamily};

use crate::parallel;

pub const DEFAULT_SEED: u64 = 0x5eed_0f10;

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub seed: u64,
    /// Random families in the cover audit; the other sampled corpora are
    /// sized from it.
    pub trials: usize,
    /// Node budget for each search that only feeds the certificate corpus.
    pub corpus_budget: u64,
    /// Node budget for searches whose value is asserted.
    pub budget: u64,
    pub threads: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            seed: DEFAULT_SEED,
            trials: 10_000,
            corpus_budget: 5_000,
            budget: sunflower_core::search::DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "Deza dichotomy at k=3"),
    (2, "Erdős–Rado tightness at k=2, r=3"),
    (3, "split binomial inequality for k <= 64"),
    (4, "binomial step equivalence and threshold"),
    (5, "transversal construction"),
    (6, "L-intersecting certificate audit"),
    (7, "ell-intersecting cover audit"),
    (8, "exact g-values"),
];

pub fn run_all(cfg: &ReportConfig) -> Vec<Criterion> {
    CRITERIA.iter().map(|&(id, _)| run_one(id, cfg)).collect()
}

/// Runs one criterion; unknown ids fail.
pub fn run_one(id: u8, cfg: &ReportConfig) -> Criterion {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown criterion", |c| c.1);
    let start = Instant::now();
    let outcome = match id {
        1 => deza_dichotomy(),
        2 => er_tightness(cfg),
        3 => split_binomial_sweep(),
        4 => binomial_step_sweep(),
        5 => transversal_sweep(),
        6 => certificate_audit(cfg),
        7 => cover_audit(cfg),
        8 => g_values(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok((passed, detail)) => (passed, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    Criterion {
        id,
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

type Outcome = Result<(bool, String), String>;

fn e2s<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn deza_dichotomy() -> Outcome {
    let n = 9;
    let q = ClassQuery {
        n_max: n,
        k: 3,
        constraint: Constraint::Sizes(vec![1]),
        forbid_r: None,
        max_level: usize::MAX,
    };
    let mut violations = 0;
    let mut classes = 0;
    let mut best: Option<Vec<u128>> = None;
    let mut err = None;
    let stats = enumerate_classes(&q, u64::MAX, |_, rep| {
        classes += 1;
        let fam = family_from_masks(n, rep);
        match deza_check(&fam, 1) {
            Ok(DezaVerdict::Violation) => violations += 1,
            Ok(DezaVerdict::WithinBound) => {
                if best.as_ref().map_or(true, |b| rep.len() > b.len()) {
                    best = Some(rep.to_vec());
                }
            }
            Ok(DezaVerdict::IsSunflower) => {}
            Err(e) => err = Some(e),
        }
    })
    .map_err(e2s)?;
    if let Some(e) = err {
        return Err(e.to_string());
    }
    let best = best.unwrap_or_default();
    let witness = family_from_masks(n, &best);
    let fano = SetFamily::new(GroundSet::new(n).map_err(e2s)?, fano_plane().members().to_vec())
        .map_err(e2s)?;
    let is_fano = are_isomorphic(&witness, &fano) == Some(true);

    // The three-petal-free reading of the same class.
    let free_q = ClassQuery {
        forbid_r: Some(3),
        ..q
    };
    let free = enumerate_classes(&free_q, u64::MAX, |_, _| {}).map_err(e2s)?;
    let free_max = free.largest_level();

    let passed = stats.complete
        && free.complete
        && best.len() == 7
        && is_fano
        && violations == 0
        && free_max == 4;
    Ok((
        passed,
        format!(
            "{classes} classes over n<={n}; largest non-sunflower family {} (Fano: {is_fano}); \
             VIOLATION {violations} times; without three-petal sunflowers the maximum is {free_max}",
            best.len()
        ),
    ))
}

fn er_tightness(cfg: &ReportConfig) -> Outcome {
    let er = er_bound(2, 3).map_err(e2s)?;
    let exact = er.rounding == RoundingMode::Exact && er.value == BigRational::from_integer(6.into());
    let p = SearchProblem::new(2, 3, Constraint::Unconstrained, 12).map_err(e2s)?;
    let scfg = SearchConfig {
        budget: cfg.budget,
        ..SearchConfig::default()
    };
    let res = parallel::search(&p, &scfg, cfg.threads).map_err(e2s)?;
    let triangles = SetFamily::from_lists(12, &[[1, 2], [1, 3], [2, 3], [4, 5], [4, 6], [5, 6]])
        .map_err(e2s)?;
    let iso = are_isomorphic(&res.witness, &triangles) == Some(true);
    let passed = exact && res.optimum == 6 && res.exhaustive && iso;
    Ok((
        passed,
        format!(
            "er_bound(2,3) = {} ({}); search optimum {} (exhaustive {}, {} nodes); two triangles: {iso}",
            er.value,
            er.rounding.as_str(),
            res.optimum,
            res.exhaustive,
            res.nodes_explored
        ),
    ))
}

fn split_binomial_sweep() -> Outcome {
    let bc = BoundConfig::default();
    let mut failing = Vec::new();
    for k in 1..=64 {
        if !split_binomial_check(k, &bc).map_err(e2s)?.holds {
            failing.push(k);
        }
    }
    Ok((
        failing.is_empty(),
        format!("k = 1..=64 at {} bits, failing k: {failing:?}", bc.precision),
    ))
}

fn binomial_step_sweep() -> Outcome {
    let mut pairs = 0;
    let mut disagree = Vec::new();
    for n in 0..=200usize {
        for r in 0..=n {
            pairs += 1;
            match binomial_step(n, r) {
                Ok((lhs, quad)) if lhs != quad => disagree.push((n, r)),
                Ok(_) => {}
                // Outside the binomial domain the quadratic alone decides;
                // it reads 0 >= 0 at (0,0) while C(-1,1) is no subset count.
                Err(_) => disagree.push((n, r)),
            }
        }
    }
    let bc = BoundConfig::default();
    let mut threshold_failures = 0;
    for n in 0..=500 {
        threshold_failures += binomial_step_threshold_failures(n, &bc).len();
    }
    let passed = disagree == [(0, 0)] && threshold_failures == 0;
    Ok((
        passed,
        format!(
            "{pairs} pairs with r <= n <= 200, disagreements {disagree:?} (n = 0 is outside the \
             binomial domain); threshold failures for n <= 500: {threshold_failures}"
        ),
    ))
}

fn transversal_sweep() -> Outcome {
    let mut checked = 0;
    let mut brute = 0;
    let mut bad = Vec::new();
    for r in 2..=65usize {
        let mut k = 1;
        // r = 2 gives a single member for every k; stop at the mask width.
        while (r - 1).checked_pow(k as u32).is_some_and(|c| c <= 64) && k * (r - 1) <= 128 && k <= 64 {
            let fam = transversal_family(k, r).map_err(e2s)?;
            let expected = (r - 1).pow(k as u32);
            let free = find_sunflower(&fam, r).map_err(e2s)?.is_free();
            let mut ok = fam.len() == expected && free;
            if fam.len() <= 16 {
                let masks = fam.to_masks().ok_or("mask width")?;
                ok &= !brute_force_has_sunflower(&masks, r);
                brute += 1;
            }
            if !ok {
                bad.push((k, r));
            }
            checked += 1;
            k += 1;
        }
    }
    Ok((
        bad.is_empty(),
        format!("{checked} (k,r) pairs, {brute} also by brute force; failures {bad:?}"),
    ))
}

#[derive(Default)]
struct AuditTally {
    main_bounds: std::collections::BTreeMap<(usize, usize), BigRational>,
    families: usize,
    nodes: usize,
    splits: usize,
    violations: Vec<String>,
}

impl AuditTally {
    fn audit(&mut self, label: &str, fam: &SetFamily, l: &[usize]) {
        self.families += 1;
        if let Err(e) = self.audit_inner(fam, l) {
            if self.violations.len() < 5 {
                self.violations.push(format!("{label}: {e}"));
            } else {
                self.violations.push(String::new());
            }
        }
    }

    fn audit_inner(&mut self, fam: &SetFamily, l: &[usize]) -> Result<(), String> {
        let node = decompose_l_intersecting(fam, l).map_err(e2s)?;
        let problems = verify_decomposition(fam, l, &node);
        if let Some(p) = problems.first() {
            return Err(p.clone());
        }
        let k = fam.uniform_size().ok_or("not uniform")?;
        let size = BigRational::from_integer(BigInt::from(fam.len()));
        let bound = BigRational::from_integer(BigInt::from(node.certified_bound.clone()));
        if bound < size {
            return Err(format!("bound {} below |F| = {}", node.certified_bound, fam.len()));
        }
        let main = match self.main_bounds.get(&(k, l.len())) {
            Some(v) => v.clone(),
            None => {
                let v = main_bound(k, l.len(), &BoundConfig::default()).map_err(e2s)?.value;
                self.main_bounds.insert((k, l.len()), v.clone());
                v
            }
        };
        if bound > main {
            return Err(format!("bound {} above main_bound({k},{})", node.certified_bound, l.len()));
        }
        self.nodes += node.size();
        self.check_souls(fam, &node)
    }

    /// Rebuilds each node's family from its parent and reruns the soul
    /// check at every split.
    fn check_souls(&mut self, fam: &SetFamily, node: &DecompositionNode) -> Result<(), String> {
        if node.case == NodeCase::Split {
            self.splits += 1;
            let (i, j) = node.pair.ok_or("split without a pair")?;
            let ell = node.l.first().copied().ok_or("split with empty L")?;
            let soul = soul_check(fam, ell, i, j).map_err(e2s)?;
            if !soul.holds || node.soul_violation.is_some() {
                return Err(format!("soul check fails at pair ({i},{j})"));
            }
        }
        for child in &node.children {
            let (sub, _) = reduce(fam, &child.t);
            self.check_souls(&sub, &child.node)?;
        }
        Ok(())
    }
}

/// Families the decomposition must accept: free of three-petal sunflowers,
/// or a single intersection size without being a sunflower.
fn admissible(fam: &SetFamily, l: &[usize]) -> bool {
    fam.len() >= 2
        && (find_sunflower(fam, 3).is_ok_and(|s| s.is_free()) || (l.len() == 1 && !is_sunflower(fam)))
}

fn realized(fam: &SetFamily) -> Vec<usize> {
    let mut l: Vec<usize> = Vec::new();
    for (i, a) in fam.members().iter().enumerate() {
        for b in &fam.members()[i + 1..] {
            l.push(a.intersection_len(b));
        }
    }
    l.sort_unstable();
    l.dedup();
    l
}

fn certificate_audit(cfg: &ReportConfig) -> Outcome {
    let mut tally = AuditTally::default();
    let mut skipped = 0;

    let list = |n: usize, sets: &[&[usize]]| SetFamily::from_lists(n, sets);
    let triangle = list(3, &[&[1, 2], &[1, 3], &[2, 3]]).map_err(e2s)?;
    let two_triangles = list(6, &[&[1, 2], &[1, 3], &[2, 3], &[4, 5], &[4, 6], &[5, 6]]).map_err(e2s)?;
    let pair = list(2, &[&[1], &[2]]).map_err(e2s)?;
    let mut constructions: Vec<(String, SetFamily)> = Vec::new();
    for k in 1..=4 {
        constructions.push((format!("transversal({k},3)"), transversal_family(k, 3).map_err(e2s)?));
    }
    constructions.push(("fano".into(), fano_plane()));
    constructions.push(("triangle".into(), triangle.clone()));
    constructions.push(("two triangles".into(), two_triangles.clone()));
    constructions.push(("triangle x pair".into(), product_compose(&triangle, &pair).map_err(e2s)?));
    constructions.push(("triangle x triangle".into(), product_compose(&triangle, &triangle).map_err(e2s)?));
    constructions.push(("two triangles x pair".into(), product_compose(&two_triangles, &pair).map_err(e2s)?));
    let mut from_constructions = 0;
    for (name, fam) in &constructions {
        let l = realized(fam);
        if admissible(fam, &l) {
            tally.audit(name, fam, &l);
            from_constructions += 1;
        } else {
            skipped += 1;
        }
    }

    let scfg = SearchConfig {
        budget: cfg.corpus_budget,
        ..SearchConfig::default()
    };
    let mut from_search = 0;
    for k in 1..=4 {
        for s in 1..=k.min(3) {
            for l in l_choices(k, s) {
                let v = certified_search(k, 3, Constraint::Sizes(l.clone()), 3 * k + 3, &scfg)
                    .map_err(e2s)?;
                if admissible(&v.witness, &l) {
                    tally.audit(&format!("witness k={k} L={l:?}"), &v.witness, &l);
                    from_search += 1;
                } else {
                    skipped += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 6);
    let mut from_random = 0;
    for t in 0..cfg.trials / 10 {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=3 * k);
        let target = rng.gen_range(2..=14);
        let masks = random_free_family(&mut rng, n, k, target);
        let fam = family_from_masks(n, &masks);
        let l = realized(&fam);
        if fam.len() < 2 || l.len() > 3 {
            continue;
        }
        tally.audit(&format!("random #{t}"), &fam, &l);
        from_random += 1;
    }

    let detail = format!(
        "{} families ({from_constructions} constructions, {from_search} search witnesses, \
         {from_random} random; {skipped} inadmissible skipped), {} nodes, {} splits, {} violations{}",
        tally.families,
        tally.nodes,
        tally.splits,
        tally.violations.len(),
        tally
            .violations
            .iter()
            .filter(|v| !v.is_empty())
            .map(|v| format!("; {v}"))
            .collect::<String>()
    );
    Ok((tally.violations.is_empty() && tally.families > 0, detail))
}

fn random_k_set<R: Rng>(rng: &mut R, n: usize, k: usize) -> u128 {
    sample(rng, n, k).iter().fold(0u128, |m, i| m | 1 << i)
}

/// Greedily adds random `k`-sets that keep the family free of three-petal
/// sunflowers.
fn random_free_family<R: Rng>(rng: &mut R, n: usize, k: usize, target: usize) -> Vec<u128> {
    let mut masks: Vec<u128> = Vec::new();
    for _ in 0..8 * target {
        if masks.len() >= target {
            break;
        }
        let s = random_k_set(rng, n, k);
        if !masks.contains(&s) && !creates_sunflower(&masks, s, 3) {
            masks.push(s);
        }
    }
    masks
}

fn cover_audit(cfg: &ReportConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 7);
    let mut failures: Vec<String> = Vec::new();
    let mut free_families = 0;
    let mut transfers = 0;
    for t in 0..cfg.trials {
        let k = rng.gen_range(1..=6);
        let ell = rng.gen_range(0..k);
        let n = rng.gen_range(k..=12);
        let target = rng.gen_range(1..=12);
        let mut masks: Vec<u128> = Vec::new();
        for _ in 0..20 * target {
            if masks.len() >= target {
                break;
            }
            let s = random_k_set(&mut rng, n, k);
            if !masks.contains(&s) && masks.iter().all(|m| (m & s).count_ones() as usize >= ell) {
                masks.push(s);
            }
        }
        let fam = family_from_masks(n, &masks);
        let f0 = rng.gen_range(0..fam.len());
        let audit = cover_ell_intersecting(&fam, ell, f0).map_err(e2s)?;
        if !audit.holds(fam.len()) {
            failures.push(format!("trial {t}: cover fails"));
            continue;
        }
        if find_sunflower(&fam, 3).map_err(e2s)?.is_free() {
            free_families += 1;
            for part in &audit.parts {
                transfers += 1;
                if find_sunflower(&part.reduced, 3).map_err(e2s)?.found().is_some() {
                    failures.push(format!("trial {t}: G(T) has a sunflower"));
                }
            }
        }
    }

    // Planted: r petals sharing exactly T, plus extra members through T.
    let mut planted = 0;
    for p in 0..(cfg.trials / 20).max(1) {
        let k = rng.gen_range(2..=6);
        let ell = rng.gen_range(1..k);
        let r = rng.gen_range(3..=4);
        let t: Vec<usize> = (1..=ell).collect();
        let mut next = ell + 1;
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for _ in 0..r {
            let mut s = t.clone();
            s.extend(next..next + k - ell);
            next += k - ell;
            sets.push(s);
        }
        let n = next - 1 + 4;
        for _ in 0..rng.gen_range(0..=3) {
            let mut s = t.clone();
            let pool: Vec<usize> = (ell + 1..=n).collect();
            for i in sample(&mut rng, pool.len(), k - ell).iter() {
                s.push(pool[i]);
            }
            s.sort_unstable();
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
        let fam = SetFamily::from_lists(n, &sets).map_err(e2s)?;
        let f0 = rng.gen_range(0..fam.len());
        let audit = cover_ell_intersecting(&fam, ell, f0).map_err(e2s)?;
        let t_set = MemberSet::from_elements(t.iter().copied());
        let Some(part) = audit.parts.iter().find(|part| part.t == t_set) else {
            failures.push(format!("planted {p}: no part for T"));
            continue;
        };
        let found = find_sunflower(&part.reduced, r).map_err(e2s)?;
        let Some(cert) = found.found() else {
            failures.push(format!("planted {p}: G(T) has no sunflower"));
            continue;
        };
        let lifted = lift_sunflower(part, cert).map_err(e2s)?;
        let parent = find_sunflower(&fam, r).map_err(e2s)?;
        if !verify_sunflower(&fam, &lifted).map_err(e2s)? || parent.found().is_none() {
            failures.push(format!("planted {p}: lift not confirmed"));
        }
        planted += 1;
    }

    let shown: Vec<_> = failures.iter().take(3).cloned().collect();
    Ok((
        failures.is_empty(),
        format!(
            "{} random families (k<=6, <=12 members): cover holds; {free_families} three-petal-free \
             with {transfers} parts G(T) checked; {planted} planted sunflowers lifted; \
             {} violations {shown:?}",
            cfg.trials,
            failures.len()
        ),
    ))
}

fn g_values(cfg: &ReportConfig) -> Outcome {
    let scfg = SearchConfig {
        budget: cfg.budget,
        ..SearchConfig::default()
    };
    let alpha = BigRational::from_integer(2.into());
    let d = BigRational::from_integer(1.into());
    let bc = BoundConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, ell, expected) in [(1, 0, 2), (2, 0, 6), (2, 1, 3)] {
        let c = if ell == 0 {
            Constraint::Unconstrained
        } else {
            Constraint::AtLeast(ell)
        };
        let v = certified_search(k, 3, c, 24, &scfg).map_err(e2s)?;
        let er = er_bound(k, 3).map_err(e2s)?.floor();
        let main2 = match main2_bound(k, ell, &alpha, &d, &bc) {
            Ok(b) => format!("main2 {}", b.display(6)),
            Err(_) => "main2 outside its domain".to_string(),
        };
        let row_ok = v.value == expected && v.exhaustive && v.certified && BigInt::from(v.value) <= er;
        ok &= row_ok;
        parts.push(format!(
            "g({k},3,{ell}) = {} at n={} certified {} <= er {er}, {main2}",
            v.value, v.n_max, v.certified
        ));
    }
    Ok((ok, format!("{} (alpha=2, D=1)", parts.join("; "))))
}

/// Rows of the `f(k,3,s)` and `g(k,3,ℓ)` tables that finish quickly,
/// sorted by `(k, r, s/ℓ)`.
pub fn extremal_tables(cfg: &ReportConfig) -> anyhow::Result<Vec<TableRow>> {
    let scfg = SearchConfig {
        budget: cfg.budget,
        ..SearchConfig::default()
    };
    let bc = BoundConfig::default();
    let mut rows = Vec::new();
    for (k_max, s) in [(4, 1), (3, 2)] {
        for row in f_table(k_max, s, 36, &scfg, &bc)? {
            rows.push(TableRow {
                kind: "f",
                k: row.k,
                r: 3,
                param: s,
                exact: row.is_exact(),
                within_bounds: row.within_bounds(),
                bounds: format!(
                    "main {} recursion {} / {}",
                    row.main.display(6),
                    row.as_stated.display(6),
                    row.as_proved.display(6)
                ),
                value: row.best,
            });
        }
    }
    for (k_max, ell) in [(2, 0), (3, 1), (3, 2)] {
        for row in g_table(k_max, 3, ell, 36, &scfg, None)? {
            let er = BigRational::from_integer(BigInt::from(row.er_cap));
            rows.push(TableRow {
                kind: "g",
                k: row.result.k,
                r: 3,
                param: ell,
                exact: row.result.exhaustive && row.result.certified,
                within_bounds: BigRational::from_integer(row.result.value.into()) <= er,
                bounds: format!("er {}", row.er_cap),
                value: row.result,
            });
        }
    }
    rows.sort_by_key(|r| (r.kind, r.k, r.r, r.param));
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub kind: &'static str,
    pub k: usize,
    pub r: usize,
    /// `s` for `f`, `ℓ` for `g`.
    pub param: usize,
    pub value: ExtremalValue,
    pub exact: bool,
    pub within_bounds: bool,
    pub bounds: String,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({},{},{}) = {:<4} n_max={:<3} {:<14} {}{}",
            self.kind,
            self.k,
            self.r,
            self.param,
            self.value.value,
            self.value.n_max,
            if self.exact { "exact" } else { "lower bound" },
            self.bounds,
            if self.value.ground_sensitive { "  [ground-set sensitive]" } else { "" }
        )
    }
}
