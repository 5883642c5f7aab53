//! Threshold graphs: built from one vertex by adding isolated or dominating
//! vertices. They are also the graphs in which, in every induced subgraph,
//! each umodule is a module or the complement of one.

use crate::error::Result;
use crate::oracle::{all_masks, from_mask, full_mask, Oracle};
use crate::relation::StandardRelation;
use crate::structures::{ArcStructure, UndirectedGraph};

/// Peels isolated or dominating vertices until one is left.
pub fn is_threshold_graph(g: &UndirectedGraph) -> bool {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|x| g.degree(x)).collect();
    for live in (2..=n).rev() {
        let Some(x) = (0..n).find(|&x| alive[x] && (degree[x] == 0 || degree[x] == live - 1)) else {
            return false;
        };
        alive[x] = false;
        for y in g.neighbors(x) {
            degree[y] -= 1;
        }
    }
    true
}

/// Exhaustive check over every induced subgraph; exponential, bounded by the
/// oracle size limit.
pub fn check_threshold_umodule_property(g: &UndirectedGraph, oracle: &Oracle) -> Result<bool> {
    let n = g.len();
    oracle.check_size(n)?;
    for sub in all_masks(n).skip(1) {
        let keep = from_mask(sub);
        let h = g.induced(&keep).standard_relation();
        let k = keep.len();
        let full = full_mask(k);
        for m in all_masks(k) {
            let u = from_mask(m);
            if h.is_umodule(&u) && !h.is_module(&u) && !h.is_module(&from_mask(full & !m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let o = Oracle::default();
        let star = UndirectedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_threshold_graph(&star));
        assert!(check_threshold_umodule_property(&star, &o).unwrap());
        let p4 = UndirectedGraph::path(4).unwrap();
        assert!(!is_threshold_graph(&p4));
        assert!(!check_threshold_umodule_property(&p4, &o).unwrap());
        let one = UndirectedGraph::path(1).unwrap();
        assert!(is_threshold_graph(&one));
        assert!(check_threshold_umodule_property(&one, &o).unwrap());
    }
}
