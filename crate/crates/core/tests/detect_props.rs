use std::collections::BTreeSet;

use proptest::prelude::*;
use sunflower_core::detect::{find_sunflower, verify_sunflower, SunflowerSearch};
use sunflower_core::search::canon::{are_isomorphic, canonical_form};
use sunflower_core::SetFamily;

/// Distinct nonempty subsets of `[n]`, as sorted element lists.
fn family_strategy(max_n: usize, max_members: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=max_n).prop_flat_map(move |n| {
        let member = prop::collection::btree_set(1..=n, 1..=n.min(4));
        (Just(n), prop::collection::vec(member, 0..=max_members)).prop_map(|(n, sets)| {
            let unique: BTreeSet<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            (n, unique.into_iter().collect())
        })
    })
}

fn pairwise_sizes(sets: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            out.insert(a.iter().filter(|x| b.contains(x)).count());
        }
    }
    out
}

/// Tries every `r`-subset of members.
fn oracle_has_sunflower(sets: &[Vec<usize>], r: usize) -> bool {
    fn rec(sets: &[Vec<usize>], r: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == r {
            let inter = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
                a.iter().copied().filter(|x| b.contains(x)).collect()
            };
            let kernel = inter(&sets[chosen[0]], &sets[chosen[1]]);
            return chosen.iter().enumerate().all(|(i, &a)| {
                chosen[i + 1..].iter().all(|&b| inter(&sets[a], &sets[b]) == kernel)
            });
        }
        for i in start..sets.len() {
            chosen.push(i);
            if rec(sets, r, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(sets, r, 0, &mut Vec::new())
}

/// Images of `1..=n`, indexed by `e - 1`.
fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    let mut s = seed | 1;
    for i in (1..p.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        p.swap(i, (s % (i as u64 + 1)) as usize);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_agrees_with_l_check((n, sets) in family_strategy(7, 9), allowed in prop::collection::btree_set(0usize..4, 0..4)) {
        let fam = SetFamily::from_lists(n, &sets).unwrap();
        let allowed: Vec<usize> = allowed.into_iter().collect();
        let realized = pairwise_sizes(&sets);
        let ok = fam.check_l_intersecting(&allowed).unwrap().is_none();
        prop_assert_eq!(ok, realized.iter().all(|s| allowed.contains(s)));
        if sets.len() >= 2 {
            let profile = fam.intersection_profile().unwrap();
            prop_assert_eq!(&profile.sizes, &realized.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(profile.is_within(&allowed), ok);
        }
    }

    #[test]
    fn detection_matches_subset_oracle((n, sets) in family_strategy(8, 12), r in 2usize..=4) {
        let fam = SetFamily::from_lists(n, &sets).unwrap();
        let found = find_sunflower(&fam, r).unwrap();
        prop_assert_eq!(found.found().is_some(), oracle_has_sunflower(fam_lists(&fam).as_slice(), r));
        if let SunflowerSearch::Found(cert) = &found {
            prop_assert_eq!(cert.petals.len(), r);
            prop_assert!(verify_sunflower(&fam, cert).unwrap());
        }
    }

    #[test]
    fn relabeling_preserves_invariants((n, sets) in family_strategy(8, 10), seed in any::<u64>(), r in 2usize..=3) {
        let fam = SetFamily::from_lists(n, &sets).unwrap();
        let perm = permutation(n, seed);
        let moved = fam.relabel(&perm).unwrap();
        prop_assert_eq!(
            find_sunflower(&fam, r).unwrap().found().is_some(),
            find_sunflower(&moved, r).unwrap().found().is_some()
        );
        if sets.len() >= 2 {
            prop_assert_eq!(fam.intersection_profile().unwrap(), moved.intersection_profile().unwrap());
        }
        prop_assert_eq!(are_isomorphic(&fam, &moved), Some(true));
        let masks = fam.to_masks().unwrap();
        let moved_masks = moved.to_masks().unwrap();
        prop_assert_eq!(canonical_form(&masks), canonical_form(&moved_masks));
    }
}

fn fam_lists(fam: &SetFamily) -> Vec<Vec<usize>> {
    fam.members().iter().map(|m| m.to_vec()).collect()
}

#[test]
fn non_isomorphic_families_have_different_forms() {
    // Same degree sequence, different structure: a 6-cycle and two triangles.
    let hexagon = SetFamily::from_lists(6, &[[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]]).unwrap();
    let triangles = SetFamily::from_lists(6, &[[1, 2], [1, 3], [2, 3], [4, 5], [4, 6], [5, 6]]).unwrap();
    assert_eq!(are_isomorphic(&hexagon, &triangles), Some(false));
}

#[test]
fn three_disjoint_pairs_have_an_empty_kernel() {
    let fam = SetFamily::from_lists(6, &[[1, 2], [3, 4], [5, 6]]).unwrap();
    let cert = find_sunflower(&fam, 3).unwrap();
    let cert = cert.found().unwrap();
    assert!(cert.kernel.is_empty());
    assert_eq!(cert.petals, vec![0, 1, 2]);
}
