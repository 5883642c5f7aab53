//! Strong umodules and their inclusion tree.
//!
//! Overlap between umodules is only counted against non-trivial umodules:
//! every set of size at least two is crossed by some co-singleton, so the
//! trivial ones carry no information.
//!
//! Let `A(x, y, z)` be the part of `MU({x, y})` holding `z`: the largest
//! umodule containing `z` and avoiding both `x` and `y`. Fix `z` and `y`.
//! The strong umodules containing `z` and avoiding `y` form a chain, and each
//! `A(x, y, z)` sits strictly between two consecutive links. Sorting the
//! `A(x, y, z)` by decreasing size therefore lists them link by link, and
//! every link is a prefix intersection of that list. A candidate is kept when
//! it is a umodule and overlaps no non-trivial part of any `MU({x, y})`, which
//! is exact: a non-trivial umodule crossing `U` at `a`, `b`, `c` is contained
//! in `A(c, d, a)` for any outside `d`, and that part crosses `U` as well.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::partition::mu;
use crate::relation::HomogeneousRelation;

/// Inclusion tree of strong umodules. Node 0 is the ground set; leaves are
/// the singletons; internal nodes are the non-trivial strong umodules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarTree {
    n: usize,
    sets: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl LaminarTree {
    /// Arranges a laminar family into a tree. `X` and the singletons are
    /// added if missing. Node order: decreasing size, then lexicographic.
    pub fn from_sets(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> LaminarTree {
        let mut all: HashSet<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        all.insert((0..n).collect());
        all.extend((0..n).map(|x| vec![x]));
        let mut sets: Vec<Vec<usize>> = all.into_iter().collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        // smallest enclosing set seen so far for each element
        let mut owner = vec![0usize; n];
        let mut parent = vec![None; sets.len()];
        let mut children = vec![Vec::new(); sets.len()];
        for (i, s) in sets.iter().enumerate().skip(1) {
            let p = owner[s[0]];
            debug_assert!(s.iter().all(|&x| owner[x] == p), "family is not laminar");
            parent[i] = Some(p);
            children[p].push(i);
            for &x in s {
                owner[x] = i;
            }
        }
        LaminarTree { n, sets, parent, children }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, node: usize) -> &[usize] {
        &self.sets[node]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Non-trivial strong umodules, i.e. internal nodes other than the root.
    pub fn nontrivial(&self) -> impl Iterator<Item = &[usize]> {
        self.sets.iter().skip(1).filter(|s| s.len() >= 2).map(Vec::as_slice)
    }

    /// Root with one child per element.
    pub fn is_star(&self) -> bool {
        self.nontrivial().next().is_none()
    }
}

fn bitset(n: usize, set: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &x in set {
        b.insert(x);
    }
    b
}

fn crosses(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// Part index of every element in `MU({x, y})`, for every pair `x < y`.
pub(crate) struct PairParts {
    n: usize,
    part_of: Vec<Vec<u32>>,
    parts: Vec<Vec<FixedBitSet>>,
}

impl PairParts {
    fn slot(&self, x: usize, y: usize) -> usize {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        a * self.n + b
    }

    /// `A(x, y, z)`.
    pub(crate) fn part(&self, x: usize, y: usize, z: usize) -> &FixedBitSet {
        let s = self.slot(x, y);
        &self.parts[s][self.part_of[s][z] as usize]
    }

    /// MU of every pair `{x, pivot}`, or of every pair when `pivot` is `None`.
    pub(crate) fn compute(h: &HomogeneousRelation, pivot: Option<usize>) -> PairParts {
        let n = h.len();
        let pairs: Vec<(usize, usize)> = match pivot {
            Some(r) => (0..n).filter(|&x| x != r).map(|x| (x.min(r), x.max(r))).collect(),
            None => (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect(),
        };
        let computed: Vec<((usize, usize), Vec<u32>, Vec<FixedBitSet>)> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let p = mu(h, &[x, y]).expect("pair is a proper cut for n >= 3");
                let mut part_of = vec![0u32; n];
                let mut sets = Vec::with_capacity(p.len());
                for (i, part) in p.parts().iter().enumerate() {
                    for &e in part {
                        part_of[e] = i as u32;
                    }
                    sets.push(bitset(n, part));
                }
                ((x, y), part_of, sets)
            })
            .collect();
        let mut out = PairParts { n, part_of: vec![Vec::new(); n * n], parts: vec![Vec::new(); n * n] };
        for ((x, y), part_of, sets) in computed {
            let s = out.slot(x, y);
            out.part_of[s] = part_of;
            out.parts[s] = sets;
        }
        out
    }

    /// Distinct parts with at least two elements that avoid `avoid`, if given.
    pub(crate) fn nontrivial_parts(&self, avoid: Option<usize>) -> Vec<FixedBitSet> {
        let mut seen = HashSet::new();
        for sets in &self.parts {
            for s in sets {
                if s.count_ones(..) >= 2 && avoid.is_none_or(|r| !s.contains(r)) {
                    seen.insert(s.clone());
                }
            }
        }
        let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.ones().cmp(b.ones()));
        out
    }

    /// Prefix intersections of `A(x, y, z)` sorted by decreasing size, over
    /// all `x` outside `{y, z}`.
    pub(crate) fn chain_candidates(&self, y: usize, z: usize, out: &mut HashSet<FixedBitSet>) {
        let mut parts: Vec<&FixedBitSet> =
            (0..self.n).filter(|&x| x != y && x != z).map(|x| self.part(x, y, z)).collect();
        parts.sort_by_key(|p| std::cmp::Reverse(p.count_ones(..)));
        let mut acc: Option<FixedBitSet> = None;
        for p in parts {
            let next = match acc {
                None => p.clone(),
                Some(mut a) => {
                    a.intersect_with(p);
                    a
                }
            };
            if next.count_ones(..) < 2 {
                break;
            }
            out.insert(next.clone());
            acc = Some(next);
        }
    }
}

/// Keeps the umodules among `candidates` that cross no member of `blockers`.
pub(crate) fn filter_uncrossed(
    h: &HomogeneousRelation,
    candidates: HashSet<FixedBitSet>,
    blockers: &[FixedBitSet],
) -> Vec<Vec<usize>> {
    let mut kept: Vec<Vec<usize>> = candidates
        .into_par_iter()
        .filter(|c| blockers.iter().all(|b| !crosses(c, b)))
        .map(|c| c.ones().collect::<Vec<usize>>())
        .filter(|c| h.is_umodule(c))
        .collect();
    kept.sort();
    kept
}

/// Inclusion tree of the strong umodules of `h`.
pub fn strong_umodules(h: &HomogeneousRelation) -> LaminarTree {
    let n = h.len();
    if n <= 3 {
        return LaminarTree::from_sets(n, std::iter::empty());
    }
    let pairs = PairParts::compute(h, None);
    let blockers = pairs.nontrivial_parts(None);
    let candidates: HashSet<FixedBitSet> = (0..n)
        .into_par_iter()
        .map(|z| {
            let mut local = HashSet::new();
            for y in (0..n).filter(|&y| y != z) {
                pairs.chain_candidates(y, z, &mut local);
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    LaminarTree::from_sets(n, filter_uncrossed(h, candidates, &blockers))
}

/// All umodules are trivial.
pub fn is_umodular_prime(h: &HomogeneousRelation) -> bool {
    strong_umodules(h).is_star()
}

/// For every pair `A, B` with `A ∩ B` non-empty and `A ∪ B != X`, both the
/// intersection and the union belong to the family.
pub fn check_crossing_family(family: &[Vec<usize>], n: usize) -> bool {
    let sets: Vec<FixedBitSet> = family.iter().map(|s| bitset(n, s)).collect();
    let members: HashSet<&FixedBitSet> = sets.iter().collect();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if a.is_disjoint(b) {
                continue;
            }
            let mut union = a.clone();
            union.union_with(b);
            if union.count_ones(..) == n {
                continue;
            }
            let mut inter = a.clone();
            inter.intersect_with(b);
            if !members.contains(&union) || !members.contains(&inter) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use crate::relation::StandardRelation;
    use crate::structures::{Tournament, UndirectedGraph};

    fn oracle_nontrivial(h: &HomogeneousRelation) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = Oracle::default()
            .strong_umodules(h)
            .unwrap()
            .into_iter()
            .filter(|s| s.len() >= 2 && s.len() < h.len())
            .collect();
        v.sort();
        v
    }

    fn nontrivial(t: &LaminarTree) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = t.nontrivial().map(<[usize]>::to_vec).collect();
        v.sort();
        v
    }

    #[test]
    fn p4_strong_umodules() {
        let h = UndirectedGraph::path(4).unwrap().standard_relation();
        let t = strong_umodules(&h);
        assert_eq!(nontrivial(&t), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(nontrivial(&t), oracle_nontrivial(&h));
        assert!(!is_umodular_prime(&h));
        assert_eq!(t.children(0).len(), 2);
    }

    #[test]
    fn c5_matches_oracle() {
        let h = UndirectedGraph::cycle(5).unwrap().standard_relation();
        assert_eq!(nontrivial(&strong_umodules(&h)), oracle_nontrivial(&h));
    }

    #[test]
    fn bull_is_prime() {
        // triangle 0-1-2 with pendant 3 on 1 and 4 on 2
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
        let h = g.standard_relation();
        assert!(is_umodular_prime(&h));
        let fam = Oracle::default().umodules(&h).unwrap();
        assert!(fam.iter().all(|u| u.len() <= 1 || u.len() >= 4));
        let t = strong_umodules(&h);
        assert!(t.is_star());
        assert_eq!(t.children(0).len(), 5);
    }

    #[test]
    fn small_ground_sets_are_prime() {
        for n in 1..=3 {
            let h = Tournament::transitive(n).unwrap().standard_relation();
            assert!(is_umodular_prime(&h));
        }
    }

    #[test]
    fn crossing_family_examples() {
        let all: Vec<Vec<usize>> = (0u64..16).map(crate::oracle::from_mask).collect();
        assert!(check_crossing_family(&all, 4));
        assert!(!check_crossing_family(&[vec![1, 2], vec![2, 3]], 4));
    }

    #[test]
    fn tree_has_at_most_2n_minus_1_nodes() {
        let h = Tournament::transitive(7).unwrap().standard_relation();
        let t = strong_umodules(&h);
        assert!(t.len() < 2 * 7);
        assert_eq!(nontrivial(&t), oracle_nontrivial(&h));
    }
}
