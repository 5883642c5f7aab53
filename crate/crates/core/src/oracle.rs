//! Exhaustive reference computations over all subsets of the ground set.
//!
//! Everything here is exponential and exists to cross-check the polynomial
//! algorithms on small inputs. Sets are handled as `u64` bitmasks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relation::HomogeneousRelation;

pub const DEFAULT_ORACLE_BOUND: usize = 14;
/// Upper limit accepted from configuration; beyond this the subset loop would
/// not fit in a `u64` mask anyway.
const HARD_LIMIT: usize = 30;

pub const ORACLE_BOUND_ENV: &str = "UMOD_ORACLE_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { bound: DEFAULT_ORACLE_BOUND }
    }
}

impl Oracle {
    pub fn with_bound(bound: usize) -> Self {
        Oracle { bound: bound.min(HARD_LIMIT) }
    }

    /// Reads `UMOD_ORACLE_BOUND`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(ORACLE_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Oracle::with_bound)
            .unwrap_or_default()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn check_size(&self, n: usize) -> Result<()> {
        if n > self.bound {
            Err(Error::OracleBound { size: n, bound: self.bound })
        } else {
            Ok(())
        }
    }

    /// Every subset (including the empty set and `X`) that is a umodule.
    pub fn umodules(&self, h: &HomogeneousRelation) -> Result<BTreeSet<Vec<usize>>> {
        Ok(self.umodule_masks(h)?.into_iter().map(from_mask).collect())
    }

    pub fn umodule_masks(&self, h: &HomogeneousRelation) -> Result<Vec<u64>> {
        self.check_size(h.len())?;
        Ok(all_masks(h.len()).filter(|&m| h.is_umodule(&from_mask(m))).collect())
    }

    pub fn module_masks(&self, h: &HomogeneousRelation) -> Result<Vec<u64>> {
        self.check_size(h.len())?;
        Ok(all_masks(h.len()).filter(|&m| h.is_module(&from_mask(m))).collect())
    }

    /// Strong umodules: `X`, the singletons, and every non-trivial umodule
    /// that overlaps no other non-trivial umodule.
    pub fn strong_umodules(&self, h: &HomogeneousRelation) -> Result<BTreeSet<Vec<usize>>> {
        let n = h.len();
        let family = self.umodule_masks(h)?;
        let nontrivial: Vec<u64> = family.iter().copied().filter(|&m| !is_trivial(m, n)).collect();
        let mut out: BTreeSet<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
        out.insert((0..n).collect());
        for &u in &nontrivial {
            if nontrivial.iter().all(|&v| !overlaps(u, v)) {
                out.insert(from_mask(u));
            }
        }
        Ok(out)
    }

    /// Coarsest umodule partition thinner than `{S, X \ S}`: for every element
    /// the union of all umodules containing it on its side of the cut.
    pub fn mu(&self, h: &HomogeneousRelation, s: &[usize]) -> Result<Vec<Vec<usize>>> {
        let n = h.len();
        let family = self.umodule_masks(h)?;
        let s_mask = to_mask(s);
        let full = full_mask(n);
        let mut parts: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..n {
            let side = if s_mask >> x & 1 == 1 { s_mask } else { full & !s_mask };
            let part =
                family.iter().filter(|&&u| u >> x & 1 == 1 && u & !side == 0).fold(0u64, |acc, &u| acc | u);
            parts.insert(from_mask(part));
        }
        Ok(canonical_parts(parts.into_iter().collect()))
    }

    /// Whether the umodule family is closed under complement.
    pub fn is_self_complemented(&self, h: &HomogeneousRelation) -> Result<bool> {
        let full = full_mask(h.len());
        let family: BTreeSet<u64> = self.umodule_masks(h)?.into_iter().collect();
        Ok(family.iter().all(|&u| family.contains(&(full & !u))))
    }
}

pub fn brute_force_umodules(h: &HomogeneousRelation) -> Result<BTreeSet<Vec<usize>>> {
    Oracle::from_env().umodules(h)
}

pub(crate) fn all_masks(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &x| m | 1 << x)
}

pub fn from_mask(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// `|U| <= 1` or `|U| >= n - 1`.
pub fn is_trivial(m: u64, n: usize) -> bool {
    let k = m.count_ones() as usize;
    k <= 1 || k + 1 >= n
}

/// Intersection and both differences are non-empty.
pub fn overlaps(a: u64, b: u64) -> bool {
    a & b != 0 && a & !b != 0 && b & !a != 0
}

/// Sorts each part and orders parts by their smallest element.
pub fn canonical_parts(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    parts.sort_unstable_by_key(|p| p[0]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::StandardRelation;
    use crate::structures::UndirectedGraph;

    #[test]
    fn two_elements_all_subsets() {
        let h = UndirectedGraph::path(2).unwrap().standard_relation();
        assert_eq!(Oracle::default().umodules(&h).unwrap().len(), 4);
    }

    #[test]
    fn p4_family_contains_bijoin_and_complement() {
        let h = UndirectedGraph::path(4).unwrap().standard_relation();
        let fam = Oracle::default().umodules(&h).unwrap();
        assert!(fam.contains(&vec![0, 3]));
        assert!(fam.contains(&vec![1, 2]));
        assert!(!fam.contains(&vec![0, 2]));
    }

    #[test]
    fn bound_is_enforced() {
        let h = UndirectedGraph::path(5).unwrap().standard_relation();
        let err = Oracle::with_bound(4).umodules(&h).unwrap_err();
        assert_eq!(err, Error::OracleBound { size: 5, bound: 4 });
    }

    #[test]
    fn mask_roundtrip() {
        assert_eq!(from_mask(to_mask(&[0, 3, 5])), vec![0, 3, 5]);
        assert!(overlaps(0b0011, 0b0110));
        assert!(!overlaps(0b0011, 0b0111));
        assert!(is_trivial(0b0111, 4));
        assert!(!is_trivial(0b0011, 4));
    }

    /// All set partitions of `elems`, used to check the maximal-umodule route
    /// against literal enumeration of umodule partitions.
    fn set_partitions(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let Some((&first, rest)) = elems.split_first() else { return vec![vec![]] };
        let mut out = Vec::new();
        for p in set_partitions(rest) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(first);
                out.push(q);
            }
            let mut q = p.clone();
            q.push(vec![first]);
            out.push(q);
        }
        out
    }

    #[test]
    fn mu_oracle_matches_partition_enumeration() {
        let o = Oracle::default();
        for (g, s) in [
            (UndirectedGraph::path(4).unwrap(), vec![0, 2]),
            (UndirectedGraph::path(5).unwrap(), vec![1, 4]),
            (UndirectedGraph::cycle(5).unwrap(), vec![0]),
            (
                UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 5), (0, 5)]).unwrap(),
                vec![0, 1, 2],
            ),
        ] {
            let h = g.standard_relation();
            let n = h.len();
            let s_mask = to_mask(&s);
            let all: Vec<usize> = (0..n).collect();
            let candidates: Vec<Vec<Vec<usize>>> = set_partitions(&all)
                .into_iter()
                .filter(|p| {
                    p.iter().all(|part| {
                        let m = to_mask(part);
                        (m & !s_mask == 0 || m & s_mask == 0) && h.is_umodule(part)
                    })
                })
                .map(canonical_parts)
                .collect();
            // the coarsest is the one with the fewest parts; it must be unique
            let min = candidates.iter().map(|p| p.len()).min().unwrap();
            let coarsest: Vec<_> = candidates.iter().filter(|p| p.len() == min).collect();
            assert_eq!(coarsest.len(), 1);
            assert_eq!(&o.mu(&h, &s).unwrap(), coarsest[0]);
        }
    }
}
