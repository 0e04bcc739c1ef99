//! Set families over a finite ground set `[n] = {1, …, n}`.
//!
//! Members are fixed-width bitsets so that intersection counting, the inner
//! loop of every other module, is a handful of word operations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Default cap on the ground-set size.
pub const DEFAULT_MAX_GROUND: usize = 4096;

const WORD: usize = 64;

/// The ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limit(n, DEFAULT_MAX_GROUND)
    }

    pub fn with_limit(n: usize, max: usize) -> Result<Self> {
        if n == 0 || n > max {
            return Err(Error::GroundSize { n, max });
        }
        Ok(GroundSet { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// A subset of the ground set. Element `e` is stored as bit `e - 1`.
///
/// The word vector never carries trailing zero words, so structural equality
/// is set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MemberSet {
    words: Vec<u64>,
}

impl MemberSet {
    pub fn empty() -> Self {
        MemberSet { words: Vec::new() }
    }

    /// Builds a set from 1-based elements. Zero is ignored by the caller's
    /// validation, not here: passing 0 panics.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut s = MemberSet::empty();
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, element: usize) {
        assert!(element >= 1, "elements are 1-based");
        let bit = element - 1;
        let w = bit / WORD;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (bit % WORD);
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 {
            return false;
        }
        let bit = element - 1;
        self.words
            .get(bit / WORD)
            .is_some_and(|w| w & (1u64 << (bit % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_element(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - last.leading_zeros() as usize))
    }

    /// Ascending 1-based elements.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self::trimmed(words)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        MemberSet { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        Self::trimmed(words)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Applies an element relabeling `e -> perm[e - 1]` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        MemberSet::from_elements(self.elements().map(|e| perm[e - 1]))
    }

    /// Low 128 bits as a mask (bit `e - 1` for element `e`); `None` if the
    /// set has an element above 128.
    pub fn to_mask128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    pub fn from_mask128(mask: u128) -> Self {
        Self::trimmed([mask as u64, (mask >> 64) as u64].into())
    }

    fn trimmed(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        MemberSet { words }
    }

    /// Smallest element of the symmetric difference.
    fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.words.len().max(other.words.len());
        (0..n).find_map(|i| {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            let d = a ^ b;
            (d != 0).then(|| i * WORD + d.trailing_zeros() as usize + 1)
        })
    }

    fn has_element_above(&self, element: usize) -> bool {
        self.max_element().is_some_and(|m| m > element)
    }
}

/// Lexicographic order on the ascending element sequences, so
/// `{1,2} < {1,2,3} < {1,3} < {2}`.
impl Ord for MemberSet {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.first_difference(other) {
            None => Ordering::Equal,
            Some(x) if self.contains(x) => {
                if other.has_element_above(x) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            Some(x) => {
                if self.has_element_above(x) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl PartialOrd for MemberSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

#[derive(Debug, Clone)]
pub struct Elements<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Elements<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + tz + 1);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// A finite family of subsets of a ground set, members in canonical order.
///
/// Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<MemberSet>,
    distinct: bool,
}

impl SetFamily {
    /// Validates and canonically sorts `members`. Empty members are
    /// rejected; see [`SetFamily::new_allowing_empty`].
    pub fn new(ground: GroundSet, members: Vec<MemberSet>) -> Result<Self> {
        if members.iter().any(MemberSet::is_empty) {
            return Err(Error::EmptyMember);
        }
        Self::new_allowing_empty(ground, members)
    }

    /// Like [`SetFamily::new`] but admits the empty set, for `k = 0`
    /// families such as the reduced families of a decomposition.
    pub fn new_allowing_empty(ground: GroundSet, mut members: Vec<MemberSet>) -> Result<Self> {
        for m in &members {
            if let Some(e) = m.max_element() {
                if e > ground.size() {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        n: ground.size(),
                    });
                }
            }
        }
        members.sort();
        let distinct = members.windows(2).all(|w| w[0] != w[1]);
        Ok(SetFamily {
            ground,
            members,
            distinct,
        })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut members = Vec::with_capacity(lists.len());
        for list in lists {
            let mut m = MemberSet::empty();
            for &e in list.as_ref() {
                if e == 0 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                m.insert(e);
            }
            members.push(m);
        }
        Self::new(ground, members)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[MemberSet] {
        &self.members
    }

    pub fn member(&self, index: usize) -> Result<&MemberSet> {
        self.members.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.members.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    /// Errors with the first duplicated pair unless members are distinct.
    pub fn require_distinct(&self) -> Result<()> {
        if self.distinct {
            return Ok(());
        }
        let i = self
            .members
            .windows(2)
            .position(|w| w[0] == w[1])
            .expect("non-distinct family has an adjacent duplicate");
        Err(Error::DuplicateMember {
            first: i,
            second: i + 1,
        })
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.members.iter().all(|m| m.len() == k)
    }

    /// Errors with the first member of the wrong size.
    pub fn require_uniform(&self, k: usize) -> Result<()> {
        match self.members.iter().position(|m| m.len() != k) {
            None => Ok(()),
            Some(index) => Err(Error::NotUniform {
                index,
                size: self.members[index].len(),
                k,
            }),
        }
    }

    /// Common member size, if the family is uniform and nonempty.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        self.is_uniform(k).then_some(k)
    }

    /// Union of all members.
    pub fn support(&self) -> MemberSet {
        self.members
            .iter()
            .fold(MemberSet::empty(), |acc, m| acc.union(m))
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let members = self.members.iter().map(|m| m.relabel(perm)).collect();
        Self::new_allowing_empty(self.ground, members)
    }

    /// Sets of `self` as 128-bit masks; `None` if an element exceeds 128.
    pub fn to_masks(&self) -> Option<Vec<u128>> {
        self.members.iter().map(MemberSet::to_mask128).collect()
    }

    /// Realized set of pairwise intersection sizes.
    pub fn intersection_profile(&self) -> Result<IntersectionProfile> {
        self.require_distinct()?;
        if self.members.len() < 2 {
            return Err(Error::TooFewMembers {
                needed: 2,
                got: self.members.len(),
            });
        }
        let mut sizes = BTreeSet::new();
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                sizes.insert(a.intersection_len(b));
            }
        }
        let sizes: Vec<usize> = sizes.into_iter().collect();
        Ok(IntersectionProfile {
            min_size: sizes[0],
            sizes,
        })
    }

    /// Checks every pairwise intersection size against `allowed`. Returns
    /// the first violating pair `(i, j)` with `i < j`, or `None`.
    pub fn check_l_intersecting(&self, allowed: &[usize]) -> Result<Option<(usize, usize)>> {
        self.require_distinct()?;
        for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate().skip(i + 1) {
                if !allowed.contains(&a.intersection_len(b)) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Like [`SetFamily::check_l_intersecting`] but as an error carrying the
    /// witness pair.
    pub fn require_l_intersecting(&self, allowed: &[usize]) -> Result<()> {
        match self.check_l_intersecting(allowed)? {
            None => Ok(()),
            Some((first, second)) => Err(Error::IntersectionViolation {
                first,
                second,
                size: self.members[first].intersection_len(&self.members[second]),
                allowed: allowed.to_vec(),
            }),
        }
    }

    /// First pair meeting in fewer than `ell` elements, if any.
    pub fn check_ell_intersecting(&self, ell: usize) -> Option<(usize, usize)> {
        for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate().skip(i + 1) {
                if a.intersection_len(b) < ell {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// The realized set `L` of pairwise intersection sizes of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    /// Sorted, duplicate-free.
    pub sizes: Vec<usize>,
    pub min_size: usize,
}

impl IntersectionProfile {
    /// Whether the family is `L`-intersecting for the given `L`.
    pub fn is_within(&self, allowed: &[usize]) -> bool {
        self.sizes.iter().all(|s| allowed.contains(s))
    }

    pub fn is_ell_intersecting(&self, ell: usize) -> bool {
        self.min_size >= ell
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    #[test]
    fn uniformity() {
        assert!(fam(4, &[&[1, 2], &[3, 4]]).is_uniform(2));
        assert!(!fam(4, &[&[1, 2], &[3]]).is_uniform(2));
        let empty = SetFamily::new(GroundSet::new(3).unwrap(), vec![]).unwrap();
        assert!(empty.is_uniform(0) && empty.is_uniform(7));
    }

    #[test]
    fn triangle_and_matching_profiles() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let p = tri.intersection_profile().unwrap();
        assert_eq!((p.sizes.clone(), p.min_size), (vec![1], 1));
        assert_eq!(tri.check_l_intersecting(&[1]).unwrap(), None);

        let m = fam(4, &[&[1, 2], &[3, 4]]);
        let p = m.intersection_profile().unwrap();
        assert_eq!((p.sizes, p.min_size), (vec![0], 0));
        assert_eq!(m.check_l_intersecting(&[1]).unwrap(), Some((0, 1)));
    }

    #[test]
    fn profile_needs_two_members() {
        let one = fam(3, &[&[1, 2]]);
        assert_eq!(
            one.intersection_profile(),
            Err(Error::TooFewMembers { needed: 2, got: 1 })
        );
        assert_eq!(one.check_l_intersecting(&[]).unwrap(), None);
    }

    #[test]
    fn canonical_order_is_lexicographic_on_sequences() {
        let f = fam(3, &[&[2], &[1, 3], &[1, 2, 3], &[1, 2]]);
        let lists: Vec<Vec<usize>> = f.members().iter().map(MemberSet::to_vec).collect();
        assert_eq!(lists, vec![vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2]]);
    }

    #[test]
    fn order_across_words() {
        let a = MemberSet::from_elements([1, 200]);
        let b = MemberSet::from_elements([1, 70]);
        let c = MemberSet::from_elements([1]);
        assert!(c < b && b < a);
    }

    #[test]
    fn duplicates_and_ranges() {
        let d = fam(3, &[&[1, 2], &[2, 1]]);
        assert!(!d.is_distinct());
        assert!(matches!(
            d.intersection_profile(),
            Err(Error::DuplicateMember { .. })
        ));
        assert!(matches!(
            SetFamily::from_lists(3, &[&[1, 4]]),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        ));
        assert_eq!(
            SetFamily::from_lists(3, &[&[] as &[usize]]),
            Err(Error::EmptyMember)
        );
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(DEFAULT_MAX_GROUND + 1).is_err());
    }

    #[test]
    fn set_operations() {
        let a = MemberSet::from_elements([1, 5, 64, 65, 130]);
        let b = MemberSet::from_elements([5, 65, 131]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 65]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 64, 130]);
        assert_eq!(a.union(&b).len(), 6);
        assert_eq!(a.max_element(), Some(130));
        assert!(MemberSet::from_elements([5, 65]).is_subset(&b));
        assert!(!a.is_subset(&b));
        assert_eq!(MemberSet::from_elements([64, 65]).to_mask128(), Some(3u128 << 63));
        assert_eq!(MemberSet::from_mask128(0b101).to_vec(), vec![1, 3]);
    }
}
