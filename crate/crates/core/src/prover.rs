//! Proof replay on concrete families.
//!
//! * [`deza_check`] classifies a `{λ}`-intersecting family against the
//!   `k² - k + 1` dichotomy.
//! * [`soul_check`] tests that every member meets `M = F_i ∪ F_j` in more
//!   than `ℓ = |F_i ∩ F_j|` elements.
//! * [`decompose_l_intersecting`] builds the induction on `|L|` as a tree:
//!   split at a pair realizing `ℓ₁ = min L`, cover the family by the
//!   subfamilies `F(T)` for `T ⊆ M` with `|T| = ℓ₁ + 1`, and recurse on the
//!   reduced families `G(T) = {F \ T}`. [`verify_decomposition`] rechecks
//!   a tree from scratch.
//! * [`cover_ell_intersecting`] audits the cover of an `ℓ`-intersecting
//!   family by `F(T)`, `T ⊆ F₀`, `|T| = ℓ`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bounds::{main_bound_interval, split_binomial};
use crate::detect::{find_sunflower, verify_sunflower, SunflowerCertificate};
use crate::family::{MemberSet, SetFamily};
use crate::numeric::{binomial, Rational};
use crate::{Error, Result};

/// Precision used for the real-valued bounds recorded in certificates.
const CERT_PRECISION: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DezaVerdict {
    WithinBound,
    IsSunflower,
    /// More than `k² - k + 1` members and not a sunflower.
    Violation,
}

impl DezaVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            DezaVerdict::WithinBound => "WITHIN_BOUND",
            DezaVerdict::IsSunflower => "IS_SUNFLOWER",
            DezaVerdict::Violation => "VIOLATION",
        }
    }
}

/// Whether all pairwise intersections of the family coincide.
pub fn is_sunflower(fam: &SetFamily) -> bool {
    let ms = fam.members();
    let Some(first) = ms.first() else {
        return true;
    };
    let kernel = ms.iter().fold(first.clone(), |acc, m| acc.intersection(m));
    let k = kernel.len();
    ms.iter()
        .enumerate()
        .all(|(i, a)| ms[i + 1..].iter().all(|b| a.intersection_len(b) == k))
}

/// Classifies a `k`-uniform `{λ}`-intersecting family.
pub fn deza_check(fam: &SetFamily, lambda: usize) -> Result<DezaVerdict> {
    fam.require_distinct()?;
    let Some(first) = fam.members().first() else {
        return Ok(DezaVerdict::WithinBound);
    };
    fam.require_uniform(first.len())?;
    let k = first.len();
    fam.require_l_intersecting(&[lambda])?;
    if is_sunflower(fam) {
        return Ok(DezaVerdict::IsSunflower);
    }
    if fam.len() <= k * k - k + 1 {
        Ok(DezaVerdict::WithinBound)
    } else {
        Ok(DezaVerdict::Violation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoulCheck {
    pub holds: bool,
    pub m: MemberSet,
    /// First member meeting `M` in at most `ℓ` elements.
    pub violating: Option<usize>,
    /// `{F, F_i, F_j}` when the violating member forms a three-petal
    /// sunflower with the pair.
    pub sunflower: Option<SunflowerCertificate>,
    /// The family is `ℓ`-intersecting and free of three-petal sunflowers.
    pub preconditions_hold: bool,
}

pub fn soul_check(fam: &SetFamily, ell: usize, i: usize, j: usize) -> Result<SoulCheck> {
    let (a, b) = (fam.member(i)?, fam.member(j)?);
    if i == j {
        return Err(Error::domain("soul_check", "the pair must be two distinct members"));
    }
    if a.intersection_len(b) != ell {
        return Err(Error::domain(
            "soul_check",
            format!("members {i} and {j} meet in {} elements, not {ell}", a.intersection_len(b)),
        ));
    }
    let m = a.union(b);
    let violating = fam
        .members()
        .iter()
        .position(|f| f.intersection_len(&m) <= ell);
    let sunflower = violating.and_then(|v| {
        let mut petals = alloc::vec![v, i, j];
        petals.sort_unstable();
        let cert = SunflowerCertificate {
            r: 3,
            petals,
            kernel: a.intersection(b),
        };
        matches!(verify_sunflower(fam, &cert), Ok(true)).then_some(cert)
    });
    let preconditions_hold = fam.is_distinct()
        && fam.check_ell_intersecting(ell).is_none()
        && find_sunflower(fam, 3)?.is_free();
    Ok(SoulCheck {
        holds: violating.is_none(),
        m,
        violating,
        sunflower,
        preconditions_hold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeCase {
    BaseDeza,
    /// No pair realizes `min L`; recurse on `L \ {min L}`.
    SkipEll1,
    Split,
}

impl NodeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeCase::BaseDeza => "BASE_DEZA",
            NodeCase::SkipEll1 => "SKIP_ELL1",
            NodeCase::Split => "SPLIT",
        }
    }
}

/// One node of a decomposition certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub family_size: usize,
    pub k: usize,
    /// The prescribed `L` at this node.
    pub l: Vec<usize>,
    pub l_realized: Vec<usize>,
    pub case: NodeCase,
    /// Base nodes only.
    pub deza: Option<DezaVerdict>,
    /// Split nodes: the lexicographically first pair meeting in `min L`.
    pub pair: Option<(usize, usize)>,
    pub m: Option<MemberSet>,
    /// Split nodes: a member meeting `M` in at most `ℓ₁` elements.
    pub soul_violation: Option<usize>,
    pub children: Vec<Child>,
    /// Size bound certified by the subtree.
    pub certified_bound: BigUint,
    /// Split nodes: `C(2k-ℓ₁, ℓ₁+1)` times the `s-1` bound at `k`, and at
    /// the reduced uniformity `k-ℓ₁-1`, both rounded up.
    pub bound_as_stated: Option<Rational>,
    pub bound_reduced_k: Option<Rational>,
}

/// A child of a split or skip node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    /// Empty for skip nodes.
    pub t: MemberSet,
    /// Parent indices of `F(T)`, in the order of the child's members.
    pub members: Vec<usize>,
    pub node: DecompositionNode,
}

impl DecompositionNode {
    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.node.size()).sum::<usize>()
    }

    /// Visits every node with its depth, parents first.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(usize, &'a DecompositionNode)) {
        fn go<'a>(n: &'a DecompositionNode, d: usize, f: &mut dyn FnMut(usize, &'a DecompositionNode)) {
            f(d, n);
            for c in &n.children {
                go(&c.node, d + 1, f);
            }
        }
        go(self, 0, f);
    }
}

fn normalize_l(l: &[usize]) -> Vec<usize> {
    let mut l = l.to_vec();
    l.sort_unstable();
    l.dedup();
    l
}

fn realized(fam: &SetFamily) -> Vec<usize> {
    let ms = fam.members();
    let mut sizes = BTreeSet::new();
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            sizes.insert(a.intersection_len(b));
        }
    }
    sizes.into_iter().collect()
}

fn first_pair_with(fam: &SetFamily, size: usize) -> Option<(usize, usize)> {
    let ms = fam.members();
    (0..ms.len()).find_map(|i| {
        (i + 1..ms.len())
            .find(|&j| ms[i].intersection_len(&ms[j]) == size)
            .map(|j| (i, j))
    })
}

/// All `t`-subsets of `set`, in lexicographic order of element lists.
fn subsets_of(set: &MemberSet, t: usize) -> Vec<MemberSet> {
    let elems = set.to_vec();
    let n = elems.len();
    let mut out = Vec::new();
    if t > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        out.push(MemberSet::from_elements(idx.iter().map(|&i| elems[i])));
        let Some(p) = (0..t).rev().find(|&p| idx[p] != p + n - t) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..t {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `{F \ T : F ∈ fam, T ⊆ F}` with the parent index of each child member.
pub fn reduce(fam: &SetFamily, t: &MemberSet) -> (SetFamily, Vec<usize>) {
    let mut pairs: Vec<(MemberSet, usize)> = fam
        .members()
        .iter()
        .enumerate()
        .filter(|(_, f)| t.is_subset(f))
        .map(|(i, f)| (f.difference(t), i))
        .collect();
    pairs.sort();
    let (sets, idx): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let child = SetFamily::new_allowing_empty(fam.ground(), sets)
        .expect("subsets of valid members are valid");
    (child, idx)
}

fn deza_base(k: usize) -> BigUint {
    BigUint::from(k * k - k + 1)
}

fn base_bound(k: usize, verdict: DezaVerdict, size: usize) -> BigUint {
    match verdict {
        DezaVerdict::WithinBound => deza_base(k),
        // a sunflower without three petals has at most two members
        DezaVerdict::IsSunflower => deza_base(k) + 1u32,
        DezaVerdict::Violation => BigUint::from(size),
    }
}

/// Builds the certificate tree for a `k`-uniform, `L`-intersecting family
/// without three-petal sunflowers.
pub fn decompose_l_intersecting(fam: &SetFamily, l: &[usize]) -> Result<DecompositionNode> {
    let l = normalize_l(l);
    fam.require_distinct()?;
    if l.is_empty() {
        return Err(Error::domain("decompose", "L must be nonempty"));
    }
    let k = fam
        .uniform_size()
        .ok_or_else(|| Error::domain("decompose", "the family must be nonempty and uniform"))?;
    fam.require_uniform(k)?;
    if let Some(&big) = l.iter().find(|&&x| x >= k) {
        return Err(Error::domain("decompose", format!("L contains {big} >= k = {k}")));
    }
    fam.require_l_intersecting(&l)?;
    // A single Deza step needs no sunflower-freeness unless the family is
    // itself a sunflower.
    if l.len() == 1 && !is_sunflower(fam) {
        return Ok(build(fam, k, &l));
    }
    if let Some(c) = find_sunflower(fam, 3)?.found() {
        return Err(Error::ContainsSunflower {
            r: 3,
            petals: c.petals.clone(),
        });
    }
    Ok(build(fam, k, &l))
}

fn build(fam: &SetFamily, k: usize, l: &[usize]) -> DecompositionNode {
    let l_realized = realized(fam);
    let mut node = DecompositionNode {
        family_size: fam.len(),
        k,
        l: l.to_vec(),
        l_realized,
        case: NodeCase::BaseDeza,
        deza: None,
        pair: None,
        m: None,
        soul_violation: None,
        children: Vec::new(),
        certified_bound: BigUint::zero(),
        bound_as_stated: None,
        bound_reduced_k: None,
    };
    if l.len() == 1 {
        let verdict = deza_check(fam, l[0]).unwrap_or(DezaVerdict::Violation);
        node.deza = Some(verdict);
        node.certified_bound = base_bound(k, verdict, fam.len());
        return node;
    }
    let ell1 = l[0];
    let Some((i, j)) = first_pair_with(fam, ell1) else {
        node.case = NodeCase::SkipEll1;
        let child = build(fam, k, &l[1..]);
        node.certified_bound = child.certified_bound.clone();
        node.children.push(Child {
            t: MemberSet::empty(),
            members: (0..fam.len()).collect(),
            node: child,
        });
        return node;
    };
    node.case = NodeCase::Split;
    node.pair = Some((i, j));
    let m = fam.members()[i].union(&fam.members()[j]);
    node.soul_violation = fam
        .members()
        .iter()
        .position(|f| f.intersection_len(&m) <= ell1);
    let child_k = k - ell1 - 1;
    let child_l: Vec<usize> = l[1..].iter().map(|&x| x - ell1 - 1).collect();
    let mut total = BigUint::zero();
    for t in subsets_of(&m, ell1 + 1) {
        let (g, members) = reduce(fam, &t);
        if g.is_empty() {
            continue;
        }
        let child = build(&g, child_k, &child_l);
        total += &child.certified_bound;
        node.children.push(Child {
            t,
            members,
            node: child,
        });
    }
    node.certified_bound = total;
    let (stated, reduced) = product_bounds(k, ell1, l.len());
    node.bound_as_stated = Some(stated);
    node.bound_reduced_k = Some(reduced);
    node.m = Some(m);
    node
}

/// `C(2k-ℓ₁, ℓ₁+1)` times the upper-rounded `s-1` bound at `k` and at
/// `k-ℓ₁-1`.
fn product_bounds(k: usize, ell1: usize, s: usize) -> (Rational, Rational) {
    let factor = Rational::from_integer(split_binomial(k, ell1).into());
    (
        main_bound_interval(k, s - 1, CERT_PRECISION).hi() * &factor,
        main_bound_interval(k - ell1 - 1, s - 1, CERT_PRECISION).hi() * &factor,
    )
}

/// Rechecks a certificate tree against the family it claims to describe.
/// Returns the list of problems found (empty when the tree is valid).
pub fn verify_decomposition(fam: &SetFamily, l: &[usize], node: &DecompositionNode) -> Vec<String> {
    let mut problems = Vec::new();
    let l = normalize_l(l);
    match fam.uniform_size() {
        Some(k) if fam.is_uniform(k) && fam.is_distinct() => {
            check_node(fam, k, &l, node, "root", &mut problems);
        }
        _ => problems.push("root: family is not a nonempty uniform family of distinct sets".into()),
    }
    problems
}

fn check_node(
    fam: &SetFamily,
    k: usize,
    l: &[usize],
    node: &DecompositionNode,
    at: &str,
    problems: &mut Vec<String>,
) {
    macro_rules! fail {
        ($($arg:tt)*) => {
            problems.push(format!("{at}: {}", format!($($arg)*)))
        };
    }
    if node.family_size != fam.len() {
        fail!("family_size {} but the family has {}", node.family_size, fam.len());
    }
    if node.k != k {
        fail!("k is {} but should be {k}", node.k);
    }
    if node.l != l {
        fail!("L is {:?} but should be {:?}", node.l, l);
    }
    let real = realized(fam);
    if node.l_realized != real {
        fail!("realized L is {:?} but should be {:?}", node.l_realized, real);
    }
    if let Some(x) = real.iter().find(|x| !l.contains(x)) {
        fail!("intersection size {x} is not in L");
    }
    if l.is_empty() {
        fail!("L is empty");
        return;
    }
    let ell1 = l[0];
    let expected_case = if l.len() == 1 {
        NodeCase::BaseDeza
    } else if first_pair_with(fam, ell1).is_none() {
        NodeCase::SkipEll1
    } else {
        NodeCase::Split
    };
    if node.case != expected_case {
        fail!("case {} but should be {}", node.case.as_str(), expected_case.as_str());
        return;
    }
    let claimed = &node.certified_bound;
    match node.case {
        NodeCase::BaseDeza => {
            let verdict = deza_check(fam, ell1).unwrap_or(DezaVerdict::Violation);
            if node.deza != Some(verdict) {
                fail!("Deza verdict should be {}", verdict.as_str());
            }
            if verdict == DezaVerdict::Violation {
                fail!("Deza dichotomy violated");
            }
            if *claimed != base_bound(k, verdict, fam.len()) {
                fail!("base bound does not match the verdict");
            }
            if !node.children.is_empty() {
                fail!("base node has children");
            }
        }
        NodeCase::SkipEll1 => {
            if node.children.len() != 1 || !node.children[0].t.is_empty() {
                fail!("skip node must have exactly one child with empty T");
                return;
            }
            let c = &node.children[0];
            if c.members != (0..fam.len()).collect::<Vec<_>>() {
                fail!("skip child must keep every member");
            }
            if *claimed != c.node.certified_bound {
                fail!("skip bound differs from the child's");
            }
            check_node(fam, k, &l[1..], &c.node, &format!("{at}/skip"), problems);
        }
        NodeCase::Split => {
            let pair = first_pair_with(fam, ell1).expect("case checked");
            if node.pair != Some(pair) {
                fail!("pair should be {pair:?}");
                return;
            }
            let m = fam.members()[pair.0].union(&fam.members()[pair.1]);
            if node.m.as_ref() != Some(&m) {
                fail!("M is not the union of the pair");
                return;
            }
            if m.len() != 2 * k - ell1 {
                fail!("|M| should be {}", 2 * k - ell1);
            }
            if let Some(v) = fam.members().iter().position(|f| f.intersection_len(&m) <= ell1) {
                fail!("member {v} meets M in at most {ell1} elements");
            }
            let expected: Vec<(MemberSet, Vec<usize>, SetFamily)> = subsets_of(&m, ell1 + 1)
                .into_iter()
                .filter_map(|t| {
                    let (g, idx) = reduce(fam, &t);
                    (!g.is_empty()).then_some((t, idx, g))
                })
                .collect();
            if expected.len() != node.children.len() {
                fail!(
                    "{} children but {} nonempty F(T)",
                    node.children.len(),
                    expected.len()
                );
                return;
            }
            let mut covered = alloc::vec![false; fam.len()];
            let mut total = BigUint::zero();
            let child_k = k - ell1 - 1;
            let child_l: Vec<usize> = l[1..].iter().map(|&x| x - ell1 - 1).collect();
            for (c, (t, idx, g)) in node.children.iter().zip(&expected) {
                if &c.t != t || &c.members != idx {
                    fail!("child for T = {:?} does not match F(T)", t.to_vec());
                    continue;
                }
                for &i in idx {
                    covered[i] = true;
                }
                if !g.is_uniform(child_k) {
                    fail!("G({:?}) is not {child_k}-uniform", t.to_vec());
                }
                total += &c.node.certified_bound;
                check_node(g, child_k, &child_l, &c.node, &format!("{at}/{:?}", t.to_vec()), problems);
            }
            if let Some(i) = covered.iter().position(|&c| !c) {
                problems.push(format!("{at}: member {i} is in no F(T)"));
            }
            if *claimed != total {
                problems.push(format!("{at}: bound is not the sum over the children"));
            }
            let (stated, reduced) = product_bounds(k, ell1, l.len());
            if node.bound_as_stated.as_ref() != Some(&stated)
                || node.bound_reduced_k.as_ref() != Some(&reduced)
            {
                problems.push(format!("{at}: recorded product bounds do not match"));
            }
        }
    }
    if *claimed < BigUint::from(fam.len()) {
        problems.push(format!("{at}: certified bound {claimed} is below the family size {}", fam.len()));
    }
}

/// One part `F(T)` of the cover of an `ℓ`-intersecting family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPart {
    pub t: MemberSet,
    /// Parent indices, in the order of `reduced`'s members.
    pub members: Vec<usize>,
    /// `G(T) = {F \ T : F ∈ F(T)}`.
    pub reduced: SetFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverAudit {
    pub ell: usize,
    pub f0: usize,
    pub parts: Vec<CoverPart>,
    /// First member contained in no part.
    pub uncovered: Option<usize>,
    pub max_part: usize,
    /// `C(k, ℓ) · max_T |F(T)|`.
    pub count_bound: BigUint,
}

impl CoverAudit {
    pub fn holds(&self, family_size: usize) -> bool {
        self.uncovered.is_none() && self.count_bound >= BigUint::from(family_size)
    }
}

/// Covers an `ℓ`-intersecting `k`-uniform family by `F(T) = {F : T ⊆ F}`
/// for the `ℓ`-subsets `T` of member `f0`.
pub fn cover_ell_intersecting(fam: &SetFamily, ell: usize, f0: usize) -> Result<CoverAudit> {
    fam.require_distinct()?;
    let base = fam.member(f0)?.clone();
    let k = base.len();
    fam.require_uniform(k)?;
    if ell > k {
        return Err(Error::domain("cover", format!("ell = {ell} exceeds k = {k}")));
    }
    if let Some((first, second)) = fam.check_ell_intersecting(ell) {
        return Err(Error::IntersectionViolation {
            first,
            second,
            size: fam.members()[first].intersection_len(&fam.members()[second]),
            allowed: (ell..=k).collect(),
        });
    }
    let mut covered = alloc::vec![false; fam.len()];
    let mut parts = Vec::new();
    for t in subsets_of(&base, ell) {
        let (reduced, members) = reduce(fam, &t);
        if reduced.is_empty() {
            continue;
        }
        for &i in &members {
            covered[i] = true;
        }
        parts.push(CoverPart { t, members, reduced });
    }
    let max_part = parts.iter().map(|p| p.members.len()).max().unwrap_or(0);
    Ok(CoverAudit {
        ell,
        f0,
        uncovered: covered.iter().position(|&c| !c),
        max_part,
        count_bound: binomial(k as u64, ell as u64) * BigUint::from(max_part),
        parts,
    })
}

/// Lifts a sunflower of `G(T)` to the parent family: the petals map back
/// through `part.members` and the kernel gains `T`.
pub fn lift_sunflower(part: &CoverPart, cert: &SunflowerCertificate) -> Result<SunflowerCertificate> {
    let mut petals = cert
        .petals
        .iter()
        .map(|&i| {
            part.members.get(i).copied().ok_or(Error::IndexOutOfRange {
                index: i,
                len: part.members.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    petals.sort_unstable();
    Ok(SunflowerCertificate {
        r: cert.r,
        petals,
        kernel: cert.kernel.union(&part.t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano_plane, transversal_family};
    use alloc::vec;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    #[test]
    fn deza_examples() {
        assert_eq!(deza_check(&fano_plane(), 1).unwrap(), DezaVerdict::WithinBound);
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_eq!(deza_check(&star, 1).unwrap(), DezaVerdict::IsSunflower);
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(deza_check(&tri, 1).unwrap(), DezaVerdict::WithinBound);
        assert!(deza_check(&tri, 0).is_err());
        let mixed = fam(3, &[&[1, 2], &[3]]);
        assert!(deza_check(&mixed, 0).is_err());
    }

    #[test]
    fn soul_examples() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let s = soul_check(&tri, 1, 0, 1).unwrap();
        assert!(s.holds && s.preconditions_hold);
        assert_eq!(s.m.to_vec(), vec![1, 2, 3]);
        let f = fam(4, &[&[1, 2], &[3, 4], &[1, 3]]);
        // sorted: {1,2}, {1,3}, {3,4}
        let s = soul_check(&f, 0, 0, 2).unwrap();
        assert!(s.holds);
        assert!(soul_check(&f, 1, 0, 2).is_err());
        // a third disjoint pair violates and forms the predicted sunflower
        let bad = fam(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        let s = soul_check(&bad, 0, 0, 1).unwrap();
        assert!(!s.holds && !s.preconditions_hold);
        assert_eq!(s.violating, Some(2));
        assert_eq!(s.sunflower.unwrap().petals, vec![0, 1, 2]);
    }

    #[test]
    fn subsets_enumeration() {
        let m = MemberSet::from_elements([2, 5, 7, 9]);
        let s = subsets_of(&m, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0].to_vec(), vec![2, 5]);
        assert_eq!(s[5].to_vec(), vec![7, 9]);
        assert_eq!(subsets_of(&m, 0), vec![MemberSet::empty()]);
        assert_eq!(subsets_of(&m, 4).len(), 1);
        assert!(subsets_of(&m, 5).is_empty());
    }

    #[test]
    fn fano_is_a_single_base_node() {
        let node = decompose_l_intersecting(&fano_plane(), &[1]).unwrap();
        assert_eq!(node.case, NodeCase::BaseDeza);
        assert_eq!(node.certified_bound, BigUint::from(7u32));
        assert!(verify_decomposition(&fano_plane(), &[1], &node).is_empty());
    }

    #[test]
    fn transversal_splits_over_singletons() {
        let t = transversal_family(2, 3).unwrap();
        let node = decompose_l_intersecting(&t, &[0, 1]).unwrap();
        assert_eq!(node.case, NodeCase::Split);
        assert_eq!(node.m.as_ref().unwrap().len(), 4);
        assert_eq!(node.children.len(), 4);
        for c in &node.children {
            assert_eq!(c.t.len(), 1);
            assert_eq!(c.members.len(), 2);
            assert_eq!(c.node.k, 1);
        }
        assert!(node.certified_bound >= BigUint::from(4u32));
        assert!(verify_decomposition(&t, &[0, 1], &node).is_empty());
    }

    #[test]
    fn skip_when_min_is_not_realized() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let node = decompose_l_intersecting(&tri, &[0, 1]).unwrap();
        assert_eq!(node.case, NodeCase::SkipEll1);
        assert_eq!(node.children[0].node.case, NodeCase::BaseDeza);
        assert!(verify_decomposition(&tri, &[0, 1], &node).is_empty());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let t = transversal_family(2, 3).unwrap();
        let mut node = decompose_l_intersecting(&t, &[0, 1]).unwrap();
        node.certified_bound += 1u32;
        assert!(!verify_decomposition(&t, &[0, 1], &node).is_empty());
        let mut node = decompose_l_intersecting(&t, &[0, 1]).unwrap();
        node.children.pop();
        assert!(!verify_decomposition(&t, &[0, 1], &node).is_empty());
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let bad = fam(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(matches!(
            decompose_l_intersecting(&bad, &[0]),
            Err(Error::ContainsSunflower { .. })
        ));
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(decompose_l_intersecting(&tri, &[0]).is_err());
        assert!(decompose_l_intersecting(&tri, &[2]).is_err());
    }

    #[test]
    fn triangle_cover() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let audit = cover_ell_intersecting(&tri, 1, 0).unwrap();
        assert_eq!(audit.parts.len(), 2);
        assert_eq!(audit.parts[0].t.to_vec(), vec![1]);
        assert_eq!(audit.parts[0].members, vec![0, 1]);
        assert_eq!(audit.parts[1].members, vec![0, 2]);
        assert!(audit.holds(3));
        assert_eq!(audit.count_bound, BigUint::from(4u32));
    }

    #[test]
    fn lifted_sunflower_is_valid() {
        // four triples through 1 whose remainders contain three disjoint pairs
        let f = fam(8, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[1, 2, 8]]);
        let audit = cover_ell_intersecting(&f, 1, 0).unwrap();
        let part = audit.parts.iter().find(|p| p.t.to_vec() == vec![1]).unwrap();
        let cert = find_sunflower(&part.reduced, 3).unwrap().found().cloned().unwrap();
        let lifted = lift_sunflower(part, &cert).unwrap();
        assert!(verify_sunflower(&f, &lifted).unwrap());
        assert_eq!(lifted.kernel.to_vec(), vec![1]);
    }
}
