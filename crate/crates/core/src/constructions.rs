//! Generators for sunflower-free families.

use alloc::vec;
use alloc::vec::Vec;

use crate::family::{GroundSet, MemberSet, SetFamily};
use crate::{Error, Result};

/// Default cap on the number of generated members.
pub const DEFAULT_MEMBER_LIMIT: usize = 1 << 20;

/// All transversals of `k` disjoint blocks of size `r - 1`.
///
/// Block `i` (1-based) holds elements `(i-1)(r-1)+1 ..= i(r-1)`. The family
/// has `(r-1)^k` members and no sunflower with `r` petals: petals that do
/// not agree on a block must pairwise differ there, which needs `r` distinct
/// elements in a block of size `r - 1`.
pub fn transversal_family(k: usize, r: usize) -> Result<SetFamily> {
    transversal_family_with_limit(k, r, DEFAULT_MEMBER_LIMIT)
}

pub fn transversal_family_with_limit(k: usize, r: usize, limit: usize) -> Result<SetFamily> {
    if k < 1 {
        return Err(Error::domain("transversal_family", "k must be at least 1"));
    }
    if r < 2 {
        return Err(Error::PetalCount(r));
    }
    let b = r - 1;
    let count = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(b).filter(|&c| c <= limit));
    let count = count.ok_or(Error::SizeLimit {
        what: "transversal family size (r-1)^k",
        limit,
    })?;
    let ground = GroundSet::new(k * b)?;

    // Mixed-radix counter over block positions, last block fastest.
    let mut digits = vec![0usize; k];
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        members.push(MemberSet::from_elements(
            digits.iter().enumerate().map(|(i, d)| i * b + d + 1),
        ));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < b {
                break;
            }
            *d = 0;
        }
    }
    SetFamily::new(ground, members)
}

/// All unions `A ∪ B'` where `B'` is `B` shifted by `a.ground().size()`.
pub fn product_compose(a: &SetFamily, b: &SetFamily) -> Result<SetFamily> {
    product_compose_with_limit(a, b, DEFAULT_MEMBER_LIMIT)
}

pub fn product_compose_with_limit(a: &SetFamily, b: &SetFamily, limit: usize) -> Result<SetFamily> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("product_compose", "both families must be nonempty"));
    }
    if a.uniform_size().is_none() || b.uniform_size().is_none() {
        return Err(Error::domain("product_compose", "both families must be uniform"));
    }
    let count = a.len().checked_mul(b.len()).filter(|&c| c <= limit);
    if count.is_none() {
        return Err(Error::SizeLimit {
            what: "product family size",
            limit,
        });
    }
    let offset = a.ground().size();
    let ground = GroundSet::new(offset + b.ground().size())?;
    let shifted: Vec<MemberSet> = b
        .members()
        .iter()
        .map(|m| MemberSet::from_elements(m.elements().map(|e| e + offset)))
        .collect();
    let members = a
        .members()
        .iter()
        .flat_map(|x| shifted.iter().map(move |y| x.union(y)))
        .collect();
    SetFamily::new(ground, members)
}

/// Lines of the projective plane of order 2 on points `1..=7`.
pub fn fano_plane() -> SetFamily {
    const LINES: [[usize; 3]; 7] = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    SetFamily::from_lists(7, &LINES).expect("static Fano lines are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::find_sunflower;

    #[test]
    fn transversal_small() {
        let f = transversal_family(1, 3).unwrap();
        let lists: Vec<_> = f.members().iter().map(MemberSet::to_vec).collect();
        assert_eq!(lists, vec![vec![1], vec![2]]);
        let g = transversal_family(2, 3).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.is_uniform(2));
        assert!(find_sunflower(&g, 3).unwrap().is_free());
        let h = transversal_family(3, 3).unwrap();
        assert_eq!((h.len(), h.ground().size()), (8, 6));
        assert!(find_sunflower(&h, 3).unwrap().is_free());
    }

    #[test]
    fn transversal_limit() {
        assert!(matches!(
            transversal_family_with_limit(7, 3, 64),
            Err(Error::SizeLimit { .. })
        ));
        assert!(transversal_family_with_limit(6, 3, 64).is_ok());
    }

    #[test]
    fn product_counts() {
        let a = SetFamily::from_lists(2, &[[1], [2]]).unwrap();
        let p = product_compose(&a, &a).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.is_uniform(2));
        assert_eq!(p.ground().size(), 4);
        let t = transversal_family(2, 3).unwrap();
        let q = product_compose(&t, &a).unwrap();
        assert_eq!(q.len(), t.len() * a.len());
        assert!(q.is_uniform(3));
    }

    #[test]
    fn product_requires_uniform_nonempty() {
        let mixed = SetFamily::from_lists(3, &[&[1][..], &[2, 3][..]]).unwrap();
        let a = SetFamily::from_lists(2, &[[1], [2]]).unwrap();
        assert!(product_compose(&mixed, &a).is_err());
        let empty = SetFamily::new(GroundSet::new(2).unwrap(), Vec::new()).unwrap();
        assert!(product_compose(&empty, &a).is_err());
    }

    #[test]
    fn fano_shape() {
        let f = fano_plane();
        assert_eq!(f.len(), 7);
        assert!(f.is_uniform(3));
        assert_eq!(f.intersection_profile().unwrap().sizes, vec![1]);
    }
}
