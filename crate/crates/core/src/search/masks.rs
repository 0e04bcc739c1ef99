//! 128-bit member masks used inside the search engines. Bit `i` is element
//! `i + 1` of the ground set.

use alloc::vec::Vec;

/// Largest ground set the search engines accept.
pub const MAX_SEARCH_GROUND: usize = 120;

/// All `k`-subsets of `{0, …, n-1}` in colex order (increasing as integers).
pub fn colex_subsets(n: usize, k: usize) -> Vec<u128> {
    assert!(n <= MAX_SEARCH_GROUND && k <= n);
    if k == 0 {
        return alloc::vec![0];
    }
    let limit = 1u128 << n;
    let mut out = Vec::new();
    let mut x: u128 = (1u128 << k) - 1;
    while x < limit {
        out.push(x);
        // Gosper's hack: next integer with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Whether adding `s` to the `r`-sunflower-free family `members` creates an
/// `r`-petal sunflower; any new sunflower must contain `s`.
pub fn creates_sunflower(members: &[u128], s: u128, r: usize) -> bool {
    debug_assert!(r >= 2);
    if members.len() + 1 < r {
        return false;
    }
    let mut kernels: Vec<u128> = members.iter().map(|m| m & s).collect();
    kernels.sort_unstable();
    kernels.dedup();
    let mut petals = Vec::new();
    for &kernel in &kernels {
        petals.clear();
        petals.extend(
            members
                .iter()
                .filter(|&&m| m & s == kernel)
                .map(|&m| m & !kernel),
        );
        if petals.len() + 1 >= r && packs(&petals, r - 1, 0, 0) {
            return true;
        }
    }
    false
}

/// Whether `need` pairwise disjoint masks exist in `items[start..]`, all
/// disjoint from `used`.
fn packs(items: &[u128], need: usize, start: usize, used: u128) -> bool {
    if need == 0 {
        return true;
    }
    for i in start..items.len() {
        if items.len() - i < need {
            return false;
        }
        if items[i] & used == 0 && packs(items, need - 1, i + 1, used | items[i]) {
            return true;
        }
    }
    false
}

/// Brute-force check: does any `r`-subset of `members` form a sunflower?
/// Used only as a test oracle.
pub fn brute_force_has_sunflower(members: &[u128], r: usize) -> bool {
    fn rec(members: &[u128], r: usize, start: usize, chosen: &mut Vec<u128>) -> bool {
        if chosen.len() == r {
            let kernel = chosen.iter().fold(!0u128, |a, b| a & b);
            return chosen
                .iter()
                .enumerate()
                .all(|(i, a)| chosen[i + 1..].iter().all(|b| a & b == kernel));
        }
        for i in start..members.len() {
            chosen.push(members[i]);
            if rec(members, r, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(members, r, 0, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_counts_and_order() {
        let s = colex_subsets(5, 2);
        assert_eq!(s.len(), 10);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s[0], 0b11);
        assert_eq!(s[1], 0b101);
        assert_eq!(colex_subsets(4, 0), alloc::vec![0]);
        assert_eq!(colex_subsets(6, 6), alloc::vec![0b111111]);
        assert_eq!(colex_subsets(12, 3).len(), 220);
    }

    #[test]
    fn incremental_matches_brute_force_small() {
        // star at element 0
        let members = [0b011u128, 0b101];
        assert!(creates_sunflower(&members, 0b1001, 3));
        // triangle does not
        assert!(!creates_sunflower(&members, 0b110, 3));
        assert!(brute_force_has_sunflower(&[0b011, 0b101, 0b1001], 3));
        assert!(!brute_force_has_sunflower(&[0b011, 0b101, 0b110], 3));
        // three disjoint edges
        assert!(creates_sunflower(&[0b11, 0b1100], 0b110000, 3));
        assert!(creates_sunflower(&[0b11], 0b1100, 2));
    }
}
