use crate::relation::StandardRelation;
use crate::seidel::fast_umodular_tree;
use crate::structures::UndirectedGraph;

/// Every induced subgraph on four or more vertices has a non-trivial
/// bijoin, read off the umodular tree: no prime node of degree four or more.
pub fn is_totally_decomposable(g: &UndirectedGraph) -> bool {
    !fast_umodular_tree(&g.standard_relation())
        .expect("graph relations are self-complemented with local congruence 2")
        .has_proper_prime()
}
