//! Exact detection of `r`-petal sunflowers.
//!
//! For `r >= 2` the kernel of a sunflower equals the intersection of any two
//! of its petals, so the candidate kernels are exactly the pairwise
//! intersections `A ∩ B`. For a fixed kernel `K` the question becomes a set
//! packing problem: find `r` pairwise disjoint sets among
//! `{S \ K : S ∈ F, K ⊆ S}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::family::{MemberSet, SetFamily};
use crate::{Error, Result};

/// `r` member indices whose pairwise intersections all equal `kernel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SunflowerCertificate {
    pub r: usize,
    /// Ascending member indices.
    pub petals: Vec<usize>,
    pub kernel: MemberSet,
}

/// Negative result of [`find_sunflower`] on one specific family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoSunflowerCertificate {
    pub r: usize,
    pub kernels_examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SunflowerSearch {
    Found(SunflowerCertificate),
    Free(NoSunflowerCertificate),
}

impl SunflowerSearch {
    pub fn found(&self) -> Option<&SunflowerCertificate> {
        match self {
            SunflowerSearch::Found(c) => Some(c),
            SunflowerSearch::Free(_) => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, SunflowerSearch::Free(_))
    }
}

/// Checks that the chosen petals pairwise intersect in exactly the kernel.
pub fn verify_sunflower(fam: &SetFamily, cert: &SunflowerCertificate) -> Result<bool> {
    let petals = cert
        .petals
        .iter()
        .map(|&i| fam.member(i))
        .collect::<Result<Vec<_>>>()?;
    if cert.petals.len() != cert.r || cert.r < 2 {
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    if !cert.petals.iter().all(|i| seen.insert(*i)) {
        return Ok(false);
    }
    for (i, a) in petals.iter().enumerate() {
        for b in &petals[i + 1..] {
            if a.intersection(b) != cert.kernel {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All distinct pairwise intersections, by increasing cardinality and then
/// in canonical set order.
pub fn candidate_kernels(fam: &SetFamily) -> Vec<MemberSet> {
    let members = fam.members();
    let mut kernels = BTreeSet::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let k = a.intersection(b);
            kernels.insert((k.len(), k));
        }
    }
    kernels.into_iter().map(|(_, k)| k).collect()
}

/// Searches for `r` petals around one fixed kernel. Returns ascending member
/// indices on success.
pub fn petals_for_kernel(fam: &SetFamily, kernel: &MemberSet, r: usize) -> Option<Vec<usize>> {
    let mut items: Vec<(usize, MemberSet)> = fam
        .members()
        .iter()
        .enumerate()
        .filter(|(_, s)| kernel.is_subset(s))
        .map(|(i, s)| (i, s.difference(kernel)))
        .collect();
    if items.len() < r {
        return None;
    }
    items.sort_by_key(|(i, s)| (s.len(), *i));

    let mut picked = greedy_packing(&items, r);
    if picked.len() < r {
        picked.clear();
        if !pack(&items, r, 0, &MemberSet::empty(), &mut picked) {
            return None;
        }
    }
    let mut petals: Vec<usize> = picked.iter().map(|&p| items[p].0).collect();
    petals.sort_unstable();
    Some(petals)
}

fn greedy_packing(items: &[(usize, MemberSet)], r: usize) -> Vec<usize> {
    let mut used = MemberSet::empty();
    let mut picked = Vec::new();
    for (p, (_, s)) in items.iter().enumerate() {
        if s.is_disjoint(&used) {
            used = used.union(s);
            picked.push(p);
            if picked.len() == r {
                break;
            }
        }
    }
    picked
}

fn pack(
    items: &[(usize, MemberSet)],
    r: usize,
    start: usize,
    used: &MemberSet,
    picked: &mut Vec<usize>,
) -> bool {
    if picked.len() == r {
        return true;
    }
    for p in start..items.len() {
        if items.len() - p < r - picked.len() {
            return false;
        }
        let s = &items[p].1;
        if !s.is_disjoint(used) {
            continue;
        }
        picked.push(p);
        if pack(items, r, p + 1, &used.union(s), picked) {
            return true;
        }
        picked.pop();
    }
    false
}

/// Finds an `r`-petal sunflower or certifies that none exists.
pub fn find_sunflower(fam: &SetFamily, r: usize) -> Result<SunflowerSearch> {
    if r < 2 {
        return Err(Error::PetalCount(r));
    }
    fam.require_distinct()?;
    if fam.len() < r {
        return Ok(SunflowerSearch::Free(NoSunflowerCertificate {
            r,
            kernels_examined: 0,
        }));
    }
    let kernels = candidate_kernels(fam);
    for kernel in &kernels {
        if let Some(petals) = petals_for_kernel(fam, kernel, r) {
            return Ok(SunflowerSearch::Found(SunflowerCertificate {
                r,
                petals,
                kernel: kernel.clone(),
            }));
        }
    }
    Ok(SunflowerSearch::Free(NoSunflowerCertificate {
        r,
        kernels_examined: kernels.len(),
    }))
}

/// Largest `r` for which the family contains an `r`-petal sunflower, with a
/// witness.
pub fn max_petals(fam: &SetFamily) -> Result<(usize, SunflowerCertificate)> {
    if fam.len() < 2 {
        return Err(Error::TooFewMembers {
            needed: 2,
            got: fam.len(),
        });
    }
    let mut best = match find_sunflower(fam, 2)? {
        SunflowerSearch::Found(c) => c,
        SunflowerSearch::Free(_) => unreachable!("two distinct members always form a sunflower"),
    };
    for r in 3..=fam.len() {
        match find_sunflower(fam, r)? {
            SunflowerSearch::Found(c) => best = c,
            SunflowerSearch::Free(_) => break,
        }
    }
    Ok((best.r, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    fn cert(petals: &[usize], kernel: &[usize]) -> SunflowerCertificate {
        SunflowerCertificate {
            r: petals.len(),
            petals: petals.to_vec(),
            kernel: MemberSet::from_elements(kernel.iter().copied()),
        }
    }

    #[test]
    fn verify_examples() {
        let disjoint = fam(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(verify_sunflower(&disjoint, &cert(&[0, 1, 2], &[])).unwrap());
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(verify_sunflower(&star, &cert(&[0, 1, 2], &[1])).unwrap());
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(!verify_sunflower(&tri, &cert(&[0, 1, 2], &[])).unwrap());
        // kernel must be exact, not a subset of the intersections
        assert!(!verify_sunflower(&star, &cert(&[0, 1, 2], &[])).unwrap());
        assert!(!verify_sunflower(&star, &cert(&[0, 0, 1], &[1])).unwrap());
    }

    #[test]
    fn verify_index_out_of_range() {
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_eq!(
            verify_sunflower(&star, &cert(&[0, 1, 3], &[1])),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn two_triangles_are_three_free() {
        let f = fam(6, &[&[1, 2], &[1, 3], &[2, 3], &[4, 5], &[4, 6], &[5, 6]]);
        let res = find_sunflower(&f, 3).unwrap();
        assert!(res.is_free());
    }

    #[test]
    fn star_kernel() {
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        let c = find_sunflower(&star, 3).unwrap().found().cloned().unwrap();
        assert_eq!(c.kernel.to_vec(), vec![1]);
        assert_eq!(c.petals, vec![0, 1, 2]);
    }

    #[test]
    fn non_uniform_member_equal_to_kernel() {
        let f = fam(3, &[&[1], &[1, 2], &[1, 3]]);
        let c = find_sunflower(&f, 3).unwrap().found().cloned().unwrap();
        assert_eq!(c.kernel.to_vec(), vec![1]);
        assert!(verify_sunflower(&f, &c).unwrap());
    }

    #[test]
    fn max_petals_examples() {
        assert_eq!(max_petals(&fam(6, &[&[1, 2], &[3, 4], &[5, 6]])).unwrap().0, 3);
        assert_eq!(max_petals(&fam(3, &[&[1, 2], &[1, 3]])).unwrap().0, 2);
        assert!(max_petals(&fam(3, &[&[1, 2]])).is_err());
    }

    #[test]
    fn errors() {
        let f = fam(3, &[&[1, 2], &[1, 3]]);
        assert_eq!(find_sunflower(&f, 1), Err(Error::PetalCount(1)));
        let d = fam(3, &[&[1, 2], &[1, 2]]);
        assert!(matches!(find_sunflower(&d, 2), Err(Error::DuplicateMember { .. })));
    }
}
