//! Homogeneous relations stored as a dense matrix of per-row class ids.
//!
//! Row `x` describes the equivalence relation `H_x` on `X \ {x}`: two
//! elements `y, z` are equivalent for `x` iff `class(x, y) == class(x, z)`.
//! Rows are normalized so class ids appear in order of first occurrence by
//! increasing `y`, which makes relation equality a plain matrix comparison.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structures::{GroundSet, Tournament, TwoStructure, UndirectedGraph};

/// Diagonal entry; never a valid class id.
pub const SENTINEL: u32 = u32::MAX;

/// Where a relation came from. Standard relations of graphs and tournaments
/// are known to satisfy the four elements condition, which lets callers skip
/// the quartic check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Graph,
    Tournament,
    TwoStructure,
    Classes,
}

#[derive(Debug, Clone)]
pub struct HomogeneousRelation {
    ground: GroundSet,
    classes: Vec<u32>,
    origin: Origin,
}

impl PartialEq for HomogeneousRelation {
    fn eq(&self, other: &Self) -> bool {
        self.ground.len() == other.ground.len() && self.classes == other.classes
    }
}

impl Eq for HomogeneousRelation {}

impl HomogeneousRelation {
    /// Builds a relation from an `n x n` row-major matrix of arbitrary class
    /// labels. Diagonal entries are ignored; rows are normalized.
    pub fn from_classes(n: usize, raw: &[u32]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if raw.len() != n * n {
            return Err(Error::InvalidStructure("class matrix has wrong shape".into()));
        }
        Ok(Self::from_keys(ground, Origin::Classes, |x, y| raw[x * n + y] as u64))
    }

    pub(crate) fn from_keys(
        ground: GroundSet,
        origin: Origin,
        mut key: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let n = ground.len();
        let mut classes = vec![SENTINEL; n * n];
        let mut ids: HashMap<u64, u32> = HashMap::new();
        for x in 0..n {
            ids.clear();
            for y in 0..n {
                if y == x {
                    continue;
                }
                let next = ids.len() as u32;
                classes[x * n + y] = *ids.entry(key(x, y)).or_insert(next);
            }
        }
        HomogeneousRelation { ground, classes, origin }
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn with_ground(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidStructure("label count does not match size".into()));
        }
        self.ground = ground;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Class id of `y` in `H_x`; [`SENTINEL`] when `x == y`.
    #[inline]
    pub fn class(&self, x: usize, y: usize) -> u32 {
        self.classes[x * self.ground.len() + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u32] {
        let n = self.ground.len();
        &self.classes[x * n..(x + 1) * n]
    }

    /// The raw normalized matrix, row-major, diagonal set to [`SENTINEL`].
    pub fn matrix(&self) -> &[u32] {
        &self.classes
    }

    /// `H(x|yz)`.
    pub fn holds(&self, x: usize, y: usize, z: usize) -> Result<bool> {
        for e in [x, y, z] {
            self.ground.check(e)?;
        }
        if x == y || x == z {
            return Err(Error::NotReflectless { x, y, z });
        }
        Ok(self.class(x, y) == self.class(x, z))
    }

    /// Number of classes of `H_x`.
    pub fn congruence(&self, x: usize) -> usize {
        self.row(x).iter().filter(|&&c| c != SENTINEL).map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// Maximum congruence over all elements; at least 1.
    pub fn local_congruence(&self) -> usize {
        (0..self.len()).map(|x| self.congruence(x)).max().unwrap_or(0).max(1)
    }

    /// No outside element distinguishes two members of `set`.
    pub fn is_module(&self, set: &[usize]) -> bool {
        let n = self.len();
        let inside = membership(n, set);
        let Some(&first) = set.first() else { return true };
        (0..n).filter(|&x| !inside[x]).all(|x| {
            let c = self.class(x, first);
            set.iter().all(|&m| self.class(x, m) == c)
        })
    }

    /// All members of `set` induce the same partition on the outside.
    pub fn is_umodule(&self, set: &[usize]) -> bool {
        let n = self.len();
        let inside = membership(n, set);
        let outside: Vec<usize> = (0..n).filter(|&x| !inside[x]).collect();
        if set.len() <= 1 || outside.len() <= 1 {
            return true;
        }
        let mut scratch = vec![SENTINEL; n];
        let reference = self.signature_on(set[0], &outside, &mut scratch);
        let mut buf = Vec::with_capacity(outside.len());
        set[1..].iter().all(|&u| {
            self.signature_into(u, &outside, &mut scratch, &mut buf);
            buf == reference
        })
    }

    /// Restriction of `H_x` to `elems`, renormalized by first appearance along
    /// `elems`. `scratch` must have length `n` and be all [`SENTINEL`]; it is
    /// restored before returning.
    pub(crate) fn signature_on(&self, x: usize, elems: &[usize], scratch: &mut [u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(elems.len());
        self.signature_into(x, elems, scratch, &mut out);
        out
    }

    pub(crate) fn signature_into(&self, x: usize, elems: &[usize], scratch: &mut [u32], out: &mut Vec<u32>) {
        out.clear();
        let row = self.row(x);
        let mut next = 0;
        for &y in elems {
            let c = row[y] as usize;
            if scratch[c] == SENTINEL {
                scratch[c] = next;
                next += 1;
            }
            out.push(scratch[c]);
        }
        for &y in elems {
            scratch[row[y] as usize] = SENTINEL;
        }
    }

    /// Looks for an ordered quadruple `(m, m', x, x')` of distinct elements
    /// violating the four elements condition.
    ///
    /// Over all orderings, both implications reduce to: for disjoint pairs
    /// `{m, m'}` and `{x, x'}`, `H(m|xx') == H(m'|xx')` iff
    /// `H(x|mm') == H(x'|mm')`.
    pub fn four_elements_violation(&self) -> Option<[usize; 4]> {
        let n = self.len();
        let h = |a: usize, b: usize, c: usize| self.class(a, b) == self.class(a, c);
        for m in 0..n {
            for m2 in m + 1..n {
                for x in 0..n {
                    if x == m || x == m2 {
                        continue;
                    }
                    for x2 in x + 1..n {
                        if x2 == m || x2 == m2 {
                            continue;
                        }
                        let a = h(m, x, x2);
                        let b = h(m2, x, x2);
                        let c = h(x, m, m2);
                        let d = h(x2, m, m2);
                        if a == b && c != d {
                            return Some(if c == a { [m, m2, x, x2] } else { [m, m2, x2, x] });
                        }
                        if c == d && a != b {
                            return Some(if a == c { [x, x2, m, m2] } else { [x, x2, m2, m] });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_four_elements(&self) -> bool {
        self.four_elements_violation().is_none()
    }

    /// Relation induced on `keep`, relabeled `0..keep.len()` in order.
    pub fn induced(&self, keep: &[usize]) -> HomogeneousRelation {
        let ground = GroundSet::new(keep.len()).expect("non-empty induced set");
        let origin = match self.origin {
            Origin::Graph | Origin::Tournament => self.origin,
            _ => Origin::Classes,
        };
        Self::from_keys(ground, origin, |i, j| self.class(keep[i], keep[j]) as u64)
    }
}

/// Standard homogeneous relation of a structure: `H(x|uv)` iff `x` sees `u`
/// and `v` alike in both directions.
pub trait StandardRelation {
    fn standard_relation(&self) -> HomogeneousRelation;
}

impl StandardRelation for TwoStructure {
    fn standard_relation(&self) -> HomogeneousRelation {
        HomogeneousRelation::from_keys(self.ground().clone(), Origin::TwoStructure, |x, y| {
            ((self.color(x, y) as u64) << 32) | self.color(y, x) as u64
        })
    }
}

impl StandardRelation for UndirectedGraph {
    fn standard_relation(&self) -> HomogeneousRelation {
        use crate::structures::ArcStructure;
        HomogeneousRelation::from_keys(self.ground().clone(), Origin::Graph, |x, y| {
            self.adjacent(x, y) as u64
        })
    }
}

impl StandardRelation for Tournament {
    fn standard_relation(&self) -> HomogeneousRelation {
        use crate::structures::ArcStructure;
        HomogeneousRelation::from_keys(self.ground().clone(), Origin::Tournament, |x, y| {
            self.beats(x, y) as u64
        })
    }
}

pub fn build_standard_relation<S: StandardRelation>(structure: &S) -> HomogeneousRelation {
    structure.standard_relation()
}

pub(crate) fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &x in set {
        inside[x] = true;
    }
    inside
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn p4() -> HomogeneousRelation {
        UndirectedGraph::path(4).unwrap().standard_relation()
    }

    /// Brute-force class equality straight from the 2-structure definition.
    fn same_class_oracle(s: &TwoStructure, x: usize, u: usize, v: usize) -> bool {
        s.color(x, u) == s.color(x, v) && s.color(u, x) == s.color(v, x)
    }

    #[test]
    fn complete_graph_rows_have_one_class() {
        let h = UndirectedGraph::complete(3).unwrap().standard_relation();
        assert!((0..3).all(|x| h.congruence(x) == 1));
        assert_eq!(h.local_congruence(), 1);
    }

    #[test]
    fn p4_row_of_first_vertex() {
        // P4 as 0-1-2-3: row 0 has classes {1} and {2,3}.
        let h = p4();
        assert_eq!(h.row(0), &[SENTINEL, 0, 1, 1]);
        let s = TwoStructure::from(&UndirectedGraph::path(4).unwrap());
        for x in 0..4 {
            for u in 0..4 {
                for v in 0..4 {
                    if x != u && x != v {
                        assert_eq!(h.holds(x, u, v).unwrap(), same_class_oracle(&s, x, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn three_cycle_row() {
        let t = Tournament::circulant(3, &[1]).unwrap();
        let h = t.standard_relation();
        // 0 beats 1, 2 beats 0: two classes {1} and {2}.
        assert_ne!(h.class(0, 1), h.class(0, 2));
        assert_eq!(h.congruence(0), 2);
    }

    #[test]
    fn holds_examples() {
        let h = p4();
        assert!(h.holds(0, 1, 1).unwrap());
        assert!(!h.holds(0, 1, 2).unwrap());
        assert!(h.holds(0, 2, 3).unwrap());
        assert_eq!(h.holds(1, 1, 2), Err(Error::NotReflectless { x: 1, y: 1, z: 2 }));
        assert!(h.holds(0, 1, 9).is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        let raw = [9, 7, 7, 3, 1, 9, 1, 3, 4, 4, 0, 5, 2, 2, 8, 6];
        let h = HomogeneousRelation::from_classes(4, &raw).unwrap();
        let again = HomogeneousRelation::from_classes(4, h.matrix()).unwrap();
        assert_eq!(h, again);
        assert_eq!(h.matrix(), again.matrix());
    }

    #[test]
    fn module_and_umodule_examples() {
        let h = p4();
        assert!(h.is_module(&[]));
        assert!(h.is_module(&[2]));
        assert!(h.is_module(&[0, 1, 2, 3]));
        assert!(!h.is_module(&[0, 3]));
        assert!(h.is_umodule(&[0, 3]));
        assert!(!h.is_umodule(&[0, 2]));
        assert!(h.is_umodule(&[0, 1, 2]));
    }

    /// `{0, 1}` is a module (same class for 2 and 3) but 0 merges 2 and 3
    /// while 1 separates them.
    pub(crate) fn module_not_umodule() -> HomogeneousRelation {
        #[rustfmt::skip]
        let raw = [
            0, 0, 0, 0,
            0, 0, 0, 1,
            0, 0, 0, 1,
            0, 0, 1, 0,
        ];
        HomogeneousRelation::from_classes(4, &raw).unwrap()
    }

    #[test]
    fn module_that_is_not_a_umodule() {
        let h = module_not_umodule();
        assert!(h.is_module(&[0, 1]));
        assert!(!h.is_umodule(&[0, 1]));
    }

    #[test]
    fn four_elements_on_module_not_umodule() {
        let h = module_not_umodule();
        let w = h.four_elements_violation().expect("violation");
        // Re-check the witness against both implications directly.
        let [m, m2, x, x2] = w;
        let hh = |a, b, c| h.holds(a, b, c).unwrap();
        let first = hh(m, x, x2) && hh(m2, x, x2) && hh(x, m, m2) && !hh(x2, m, m2);
        let second = !hh(m, x, x2) && !hh(m2, x, x2) && !hh(x, m, m2) && hh(x2, m, m2);
        assert!(first || second, "witness {w:?}");
    }

    #[test]
    fn local_congruence_of_digraph_at_most_four() {
        let s = TwoStructure::from_fn(5, |x, y| ((x * 7 + y * 3) % 2) as u32).unwrap();
        assert!(s.standard_relation().local_congruence() <= 4);
    }
}
