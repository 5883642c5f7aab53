//! Seidel switch of a relation of local congruence at most 2, and the fast
//! umodular tree built from the strong modules of the switch.

use crate::bitree::{ensure_self_complemented, tiny_tree, NodeKind, UDecompTree};
use crate::error::{Error, Result};
use crate::modular::{modular_strong_tree, ModKind};
use crate::oracle::{all_masks, from_mask, Oracle};
use crate::relation::{HomogeneousRelation, Origin};
use crate::structures::GroundSet;

/// `H(s)` on `X \ {s}`. Element `i` of the switched relation is element
/// `kept[i]` of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchedRelation {
    pub relation: HomogeneousRelation,
    pub pivot: usize,
    pub kept: Vec<usize>,
}

impl SwitchedRelation {
    /// Source id of switched element `i`.
    pub fn source_id(&self, i: usize) -> usize {
        self.kept[i]
    }

    /// Switched id of source element `x`, `None` for the pivot.
    pub fn switched_id(&self, x: usize) -> Option<usize> {
        match x.cmp(&self.pivot) {
            std::cmp::Ordering::Less => Some(x),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(x - 1),
        }
    }
}

/// For `x != s`, the two classes of `H_x` each take a symmetric difference
/// with the class of `H_s` avoiding `x` (empty when `H_s` has one class).
pub fn seidel_switch(h: &HomogeneousRelation, s: usize) -> Result<SwitchedRelation> {
    let n = h.len();
    h.ground().check(s)?;
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, size: n });
    }
    let lc = h.local_congruence();
    if lc > 2 {
        return Err(Error::LocalCongruence { found: lc });
    }
    let kept: Vec<usize> = (0..n).filter(|&x| x != s).collect();
    let ground = match h.ground().label(0) {
        Some(_) => {
            GroundSet::with_labels(kept.iter().map(|&x| h.ground().label(x).unwrap().to_string()).collect())?
        }
        None => GroundSet::new(n - 1)?,
    };
    let origin = match h.origin() {
        Origin::Graph | Origin::Tournament => h.origin(),
        _ => Origin::Classes,
    };
    let relation = HomogeneousRelation::from_keys(ground, origin, |i, j| {
        let (x, y) = (kept[i], kept[j]);
        let flip = h.class(s, y) != h.class(s, x);
        (h.class(x, y) ^ flip as u32) as u64
    });
    Ok(SwitchedRelation { relation, pivot: s, kept })
}

/// Exhaustively checks that every `U` holding `s` is a umodule of `h`
/// exactly when `X \ U` is a module of `H(s)`.
pub fn verify_switch_correspondence(h: &HomogeneousRelation, s: usize) -> Result<bool> {
    ensure_self_complemented(h)?;
    let sw = seidel_switch(h, s)?;
    let n = h.len();
    Oracle::from_env().check_size(n)?;
    for m in all_masks(n).filter(|m| m >> s & 1 == 0) {
        let outside = from_mask(m);
        let inside = from_mask(crate::oracle::full_mask(n) & !m);
        let switched: Vec<usize> = outside.iter().map(|&x| sw.switched_id(x).unwrap()).collect();
        if h.is_umodule(&inside) != sw.relation.is_module(&switched) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Umodular tree through the strong modules of the switch at element 0:
/// the modular tree of `H(0)` with leaf 0 hung on its root. Linear nodes
/// become circular nodes with the same order of their sons.
pub fn fast_umodular_tree(h: &HomogeneousRelation) -> Result<UDecompTree> {
    let n = h.len();
    let lc = h.local_congruence();
    if lc > 2 {
        return Err(Error::LocalCongruence { found: lc });
    }
    ensure_self_complemented(h)?;
    if n <= 2 {
        return Ok(tiny_tree(n).with_labels_from(h));
    }
    let sw = seidel_switch(h, 0)?;
    let mt = modular_strong_tree(&sw.relation);
    let m = mt.leaf_count();
    // modular leaf i is element i + 1; internal node j >= m becomes n + j - m
    let map = |v: usize| if v < m { sw.source_id(v) } else { n + v - m };
    let total = n + mt.node_count() - m;
    let mut kinds = vec![NodeKind::Leaf; total];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut stack = vec![(mt.root(), 0usize)];
    while let Some((v, up)) = stack.pop() {
        let id = map(v);
        adj[id].push(up);
        if v < m {
            continue;
        }
        let kids = mt.children(v);
        kinds[id] = if kids.len() == 2 {
            NodeKind::Prime
        } else {
            match mt.kind(v) {
                ModKind::Linear => NodeKind::Circular,
                ModKind::Complete => NodeKind::Complete,
                _ => NodeKind::Prime,
            }
        };
        for &c in kids {
            adj[id].push(map(c));
            stack.push((c, id));
        }
    }
    adj[0].push(map(mt.root()));
    Ok(UDecompTree::new(n, kinds, adj).with_labels_from(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::StandardRelation;
    use crate::structures::{Tournament, UndirectedGraph};

    #[test]
    fn triangle_plus_isolated_vertex() {
        let g = UndirectedGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let sw = seidel_switch(&g.standard_relation(), 0).unwrap();
        let triangle = UndirectedGraph::complete(3).unwrap().standard_relation();
        assert_eq!(sw.relation, triangle);
        assert_eq!(sw.kept, vec![1, 2, 3]);
    }

    #[test]
    fn transitive_tournament_at_source() {
        let h = Tournament::transitive(5).unwrap().standard_relation();
        let sw = seidel_switch(&h, 0).unwrap();
        // the source beats everyone, so nothing flips
        assert_eq!(sw.relation, Tournament::transitive(4).unwrap().standard_relation());
        assert!(verify_switch_correspondence(&h, 0).unwrap());
    }

    #[test]
    fn p4_bijoin_becomes_module() {
        let h = UndirectedGraph::path(4).unwrap().standard_relation();
        let sw = seidel_switch(&h, 0).unwrap();
        assert!(h.is_umodule(&[0, 3]));
        let m: Vec<usize> = [1usize, 2].iter().filter_map(|&x| sw.switched_id(x)).collect();
        assert!(sw.relation.is_module(&m));
        assert!(verify_switch_correspondence(&h, 0).unwrap());
    }

    #[test]
    fn rejects_high_congruence() {
        let raw = [0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        let h = HomogeneousRelation::from_classes(4, &raw).unwrap();
        assert_eq!(seidel_switch(&h, 0).unwrap_err(), Error::LocalCongruence { found: 3 });
    }

    #[test]
    fn two_elements() {
        let h = UndirectedGraph::path(2).unwrap().standard_relation();
        let sw = seidel_switch(&h, 1).unwrap();
        assert_eq!(sw.relation.len(), 1);
        assert_eq!(sw.kept, vec![0]);
    }

    #[test]
    fn fast_tree_on_bull_is_prime() {
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
        let t = fast_umodular_tree(&g.standard_relation()).unwrap();
        assert_eq!(t.node_count(), 6);
        assert_eq!(t.kind(5), NodeKind::Prime);
    }

    #[test]
    fn fast_tree_on_transitive_is_cycle_in_order() {
        let h = Tournament::transitive(5).unwrap().standard_relation();
        let t = fast_umodular_tree(&h).unwrap();
        let c = t.canonical();
        assert_eq!(c.nodes[5].kind, "circular");
        assert_eq!(c.nodes[5].neighbors, vec![0, 1, 2, 3, 4]);
    }
}
