//! Canonical forms of set families under element permutations.
//!
//! Individualization-refinement on the element/member incidence structure:
//! colors are refined until stable, then the first smallest non-singleton
//! element cell is split by individualizing each of its elements in turn.
//! Every leaf gives a labeling of the support; the canonical form is the
//! least sorted mask list over all leaves. Leaves that produce the same
//! family reveal automorphisms, which prune sibling branches lying in the
//! same orbit of the pointwise stabilizer of the current prefix.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::family::SetFamily;

/// Canonical form of a family of masks: support relabeled to the lowest
/// bits, members sorted ascending. Two families are isomorphic iff their
/// forms are equal.
pub fn canonical_form(masks: &[u128]) -> Vec<u128> {
    canonical_labeling(masks).0
}

/// Canonical form plus the labeling `element bit -> new bit` that produces
/// it (entries for elements outside the support are `u32::MAX`).
pub fn canonical_labeling(masks: &[u128]) -> (Vec<u128>, Vec<u32>) {
    let support = masks.iter().fold(0u128, |a, &m| a | m);
    let points: Vec<u32> = (0..128).filter(|&b| support >> b & 1 == 1).collect();
    let inc = Incidence::new(masks, &points);
    let mut search = Search {
        inc: &inc,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    let colors = inc.refine(vec![0; points.len()]);
    search.descend(colors, &mut Vec::new());
    let (form, lab) = search.best.expect("at least one leaf");
    let mut full = vec![u32::MAX; 128];
    for (i, &p) in points.iter().enumerate() {
        full[p as usize] = lab[i];
    }
    (form, full)
}

/// Isomorphism test for families whose elements fit in 128 bits.
pub fn are_isomorphic(a: &SetFamily, b: &SetFamily) -> Option<bool> {
    let (ma, mb) = (a.to_masks()?, b.to_masks()?);
    if ma.len() != mb.len() {
        return Some(false);
    }
    Some(canonical_form(&ma) == canonical_form(&mb))
}

struct Incidence {
    /// For each point, the members containing it.
    point_members: Vec<Vec<usize>>,
    /// For each member, its points (as indices into the support).
    member_points: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(masks: &[u128], points: &[u32]) -> Self {
        let member_points: Vec<Vec<usize>> = masks
            .iter()
            .map(|&m| {
                (0..points.len())
                    .filter(|&i| m >> points[i] & 1 == 1)
                    .collect()
            })
            .collect();
        let mut point_members = vec![Vec::new(); points.len()];
        for (j, pts) in member_points.iter().enumerate() {
            for &i in pts {
                point_members[i].push(j);
            }
        }
        Incidence {
            point_members,
            member_points,
        }
    }

    /// Refines point colors to a stable partition. Colors are the ranks of
    /// label-independent signatures, so refinement commutes with relabeling.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut cells = count_distinct(&colors);
        loop {
            let member_colors = recolor(self.member_points.iter().map(|pts| {
                let mut sig: Vec<usize> = pts.iter().map(|&i| colors[i]).collect();
                sig.sort_unstable();
                sig
            }));
            let next = recolor(self.point_members.iter().enumerate().map(|(i, ms)| {
                let mut sig: Vec<usize> = ms.iter().map(|&j| member_colors[j]).collect();
                sig.sort_unstable();
                sig.insert(0, colors[i]);
                sig
            }));
            let next_cells = count_distinct(&next);
            colors = next;
            if next_cells == cells {
                return colors;
            }
            cells = next_cells;
        }
    }

    fn relabel(&self, labels: &[u32]) -> Vec<u128> {
        let mut out: Vec<u128> = self
            .member_points
            .iter()
            .map(|pts| pts.iter().fold(0u128, |a, &i| a | 1u128 << labels[i]))
            .collect();
        out.sort_unstable();
        out
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn recolor<I: Iterator<Item = Vec<usize>>>(sigs: I) -> Vec<usize> {
    let sigs: Vec<Vec<usize>> = sigs.collect();
    let mut rank: BTreeMap<&Vec<usize>, usize> = sigs.iter().map(|s| (s, 0)).collect();
    for (i, v) in rank.values_mut().enumerate() {
        *v = i;
    }
    sigs.iter().map(|s| rank[s]).collect()
}

struct Search<'a> {
    inc: &'a Incidence,
    best: Option<(Vec<u128>, Vec<u32>)>,
    /// First leaf found, kept for automorphism detection.
    first: Option<(Vec<u128>, Vec<u32>)>,
    /// Automorphisms as point permutations.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let Some(cell) = target_cell(&colors) else {
            self.leaf(&colors);
            return;
        };
        let mut orbits = UnionFind::new(colors.len());
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            // Automorphisms fixing the prefix pointwise map explored
            // branches onto equivalent ones.
            for a in &self.autos {
                if prefix.iter().all(|&p| a[p] == p) {
                    for x in 0..a.len() {
                        orbits.union(x, a[x]);
                    }
                }
            }
            if tried.iter().any(|&t| orbits.find(t) == orbits.find(v)) {
                continue;
            }
            tried.push(v);
            let c = colors[v];
            let split: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(x, &col)| if x == v { 2 * c } else { 2 * col + 1 })
                .collect();
            prefix.push(v);
            let refined = self.inc.refine(split);
            self.descend(refined, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, colors: &[usize]) {
        let labels: Vec<u32> = colors.iter().map(|&c| c as u32).collect();
        let form = self.inc.relabel(&labels);
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.0 == form {
                // labels⁻¹ ∘ known labels is an automorphism of the family.
                let mut inv = vec![0usize; labels.len()];
                for (x, &l) in labels.iter().enumerate() {
                    inv[l as usize] = x;
                }
                let auto: Vec<usize> = known.1.iter().map(|&l| inv[l as usize]).collect();
                if auto.iter().enumerate().any(|(x, &y)| x != y) && !self.autos.contains(&auto) {
                    self.autos.push(auto);
                }
            }
        }
        if self.first.is_none() {
            self.first = Some((form.clone(), labels.clone()));
        }
        if self.best.as_ref().is_none_or(|b| form < b.0) {
            self.best = Some((form, labels));
        }
    }
}

/// Points of the first smallest non-singleton color class.
fn target_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(x);
    }
    by_color
        .into_values()
        .filter(|cell| cell.len() > 1)
        .min_by_key(Vec::len)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fano_plane;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn permute(masks: &[u128], perm: &[u32]) -> Vec<u128> {
        masks
            .iter()
            .map(|&m| (0..128).filter(|&b| m >> b & 1 == 1).fold(0u128, |a, b| a | 1u128 << perm[b]))
            .collect()
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fano = fano_plane().to_masks().unwrap();
        let base = canonical_form(&fano);
        assert_eq!(base.len(), 7);
        assert_eq!(base.iter().fold(0, |a, &m| a | m), 0x7f);
        for _ in 0..50 {
            let mut perm: Vec<u32> = (0..20).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&permute(&fano, &perm)), base);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // path vs star with three edges
        let path = [0b0011u128, 0b0110, 0b1100];
        let star = [0b0011u128, 0b0101, 0b1001];
        assert_ne!(canonical_form(&path), canonical_form(&star));
        let tri = [0b011u128, 0b101, 0b110];
        assert_eq!(canonical_form(&tri), alloc::vec![0b011, 0b101, 0b110]);
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // two disjoint triangles vs a 6-cycle: both 2-regular on 6 points
        let two_tri = [0b000011u128, 0b000101, 0b000110, 0b011000, 0b101000, 0b110000];
        let hexagon = [0b000011u128, 0b000110, 0b001100, 0b011000, 0b110000, 0b100001];
        assert_ne!(canonical_form(&two_tri), canonical_form(&hexagon));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut perm: Vec<u32> = (0..6).collect();
        perm.shuffle(&mut rng);
        assert_eq!(canonical_form(&permute(&hexagon, &perm)), canonical_form(&hexagon));
    }
}
