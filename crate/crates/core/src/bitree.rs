//! The unrooted umodular decomposition tree of a self-complemented umodule
//! family.
//!
//! Leaves are the elements. Every edge splits the leaves into a strong
//! bipartition `{U, X \ U}`. Internal nodes are typed:
//!
//! * `Complete`: every union of at least two and at most `k - 2` of the `k`
//!   incident sides is a umodule;
//! * `Circular`: exactly the unions of cyclically consecutive sides are;
//! * `Prime`: none are.
//!
//! Nodes of degree three satisfy all three rules at once and are labeled
//! `Prime`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::relation::{HomogeneousRelation, Origin, SENTINEL};
use crate::strong::{filter_uncrossed, LaminarTree, PairParts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Prime,
    Complete,
    Circular,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Prime => "prime",
            NodeKind::Complete => "complete",
            NodeKind::Circular => "circular",
        }
    }
}

/// Nodes `0..n` are the leaves, node `x` carrying element `x`. Internal
/// nodes follow. Neighbor lists of circular nodes are in cyclic order; the
/// others are unordered.
#[derive(Debug, Clone)]
pub struct UDecompTree {
    n: usize,
    kinds: Vec<NodeKind>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for UDecompTree {
    /// Equality up to renumbering of internal nodes.
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl UDecompTree {
    pub(crate) fn new(n: usize, kinds: Vec<NodeKind>, adj: Vec<Vec<usize>>) -> UDecompTree {
        debug_assert_eq!(kinds.len(), adj.len());
        debug_assert!(kinds[..n].iter().all(|&k| k == NodeKind::Leaf));
        UDecompTree { n, kinds, adj, labels: None }
    }

    pub(crate) fn with_labels_from(mut self, h: &HomogeneousRelation) -> Self {
        let g = h.ground();
        if g.label(0).is_some() {
            self.labels = Some((0..self.n).map(|x| g.label(x).unwrap().to_string()).collect());
        }
        self
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        self.kinds[node]
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.n..self.kinds.len()
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// A prime node of degree at least four; degree-three nodes are prime
    /// only by convention.
    pub fn has_proper_prime(&self) -> bool {
        self.internal_nodes().any(|v| self.kinds[v] == NodeKind::Prime && self.adj[v].len() >= 4)
    }

    /// Leaf sets of the components of `T - node`, in neighbor order.
    pub fn sides(&self, node: usize) -> Vec<Vec<usize>> {
        let rooted = Rooted::new(self);
        rooted.sides(self, node)
    }

    /// The bipartition side on `to`'s end of the edge `from - to`.
    pub fn side_of_edge(&self, from: usize, to: usize) -> Vec<usize> {
        let mut seen = vec![false; self.kinds.len()];
        seen[from] = true;
        let mut stack = vec![to];
        seen[to] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            if v < self.n {
                out.push(v);
            }
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every umodule described by the tree, each once. `∅` and `X` are left
    /// out; singletons and co-singletons are included.
    pub fn enumerate_umodules(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let rooted = Rooted::new(self);
        let n = self.n;
        let edges: Vec<Vec<usize>> = rooted
            .parent
            .iter()
            .enumerate()
            .filter(|&(v, p)| p.is_some() && v != rooted.root)
            .flat_map(|(v, _)| {
                let side = rooted.leaves[v].clone();
                let other = complement(n, &side);
                [side, other]
            })
            .collect();
        let nodes: Vec<(NodeKind, Vec<Vec<usize>>)> = self
            .internal_nodes()
            .filter(|&v| matches!(self.kinds[v], NodeKind::Complete | NodeKind::Circular))
            .map(|v| (self.kinds[v], rooted.sides(self, v)))
            .collect();
        edges.into_iter().chain(nodes.into_iter().flat_map(|(kind, sides)| node_unions(kind, sides)))
    }

    /// Number of umodules [`enumerate_umodules`](Self::enumerate_umodules)
    /// yields, computed from node degrees alone.
    pub fn count_umodules(&self) -> BigUint {
        let edges = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        let mut total = BigUint::from(2 * edges);
        for v in self.internal_nodes() {
            let k = self.adj[v].len();
            match self.kinds[v] {
                NodeKind::Complete => {
                    total += (BigUint::from(1u8) << k) - BigUint::from(2 + 2 * k);
                }
                NodeKind::Circular => total += BigUint::from(k * (k - 3)),
                _ => {}
            }
        }
        total
    }

    /// Internal nodes renumbered in a canonical order; see [`CanonicalTree`].
    pub fn canonical(&self) -> CanonicalTree {
        let n = self.n;
        if n == 1 {
            return CanonicalTree { n, nodes: vec![self.canon_leaf(0, vec![])] };
        }
        let rooted = Rooted::new(self);
        let min_leaf: Vec<usize> = rooted.leaves.iter().map(|l| l[0]).collect();
        // preorder numbering of internal nodes, children ordered per kind
        let mut new_id = vec![usize::MAX; self.kinds.len()];
        for x in 0..n {
            new_id[x] = x;
        }
        let mut next = n;
        let mut order: Vec<usize> = Vec::new();
        let mut child_order: Vec<Vec<usize>> = vec![Vec::new(); self.kinds.len()];
        let mut stack = vec![rooted.root];
        while let Some(v) = stack.pop() {
            if v >= n {
                new_id[v] = next;
                next += 1;
                order.push(v);
            }
            let kids = self.ordered_children(&rooted, &min_leaf, v);
            for &c in kids.iter().rev() {
                stack.push(c);
            }
            child_order[v] = kids;
        }
        let mut nodes: Vec<CanonNode> =
            (0..n).map(|x| self.canon_leaf(x, vec![new_id[self.adj[x][0]]])).collect();
        for &v in &order {
            let parent = rooted.parent[v].expect("internal nodes have a parent");
            let mut neighbors: Vec<usize> =
                std::iter::once(parent).chain(child_order[v].iter().copied()).map(|u| new_id[u]).collect();
            if self.kinds[v] != NodeKind::Circular {
                neighbors.sort_unstable();
            }
            nodes.push(CanonNode {
                id: new_id[v],
                label: None,
                neighbors,
                kind: self.kinds[v].as_str().to_string(),
            });
        }
        CanonicalTree { n, nodes }
    }

    fn canon_leaf(&self, x: usize, neighbors: Vec<usize>) -> CanonNode {
        let label = match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        };
        CanonNode { id: x, label: Some(label), neighbors, kind: "leaf".into() }
    }

    /// Children of `v` away from leaf 0. Circular nodes keep their cyclic
    /// order read from the parent, in the direction whose first child has the
    /// smaller minimum leaf; other nodes sort children by minimum leaf.
    fn ordered_children(&self, rooted: &Rooted, min_leaf: &[usize], v: usize) -> Vec<usize> {
        let parent = rooted.parent[v];
        if self.kinds[v] == NodeKind::Circular {
            let cyc = &self.adj[v];
            let k = cyc.len();
            let at = cyc.iter().position(|&u| Some(u) == parent).expect("parent is a neighbor");
            let fwd: Vec<usize> = (1..k).map(|i| cyc[(at + i) % k]).collect();
            if min_leaf[fwd[0]] < min_leaf[fwd[k - 2]] {
                fwd
            } else {
                fwd.into_iter().rev().collect()
            }
        } else {
            let mut kids: Vec<usize> = self.adj[v].iter().copied().filter(|&u| Some(u) != parent).collect();
            kids.sort_by_key(|&u| min_leaf[u]);
            kids
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.canonical()).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.canonical()).expect("serializable")
    }

    /// Graphviz rendering of the canonical form. Circular nodes are records
    /// whose ports follow the cyclic order.
    pub fn to_dot(&self) -> String {
        self.canonical().to_dot()
    }
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &x in set {
        inside[x] = true;
    }
    (0..n).filter(|&x| !inside[x]).collect()
}

fn node_unions(kind: NodeKind, sides: Vec<Vec<usize>>) -> Box<dyn Iterator<Item = Vec<usize>>> {
    let k = sides.len();
    let union = move |idx: &mut dyn Iterator<Item = usize>, sides: &[Vec<usize>]| {
        let mut u: Vec<usize> = idx.flat_map(|i| sides[i].iter().copied()).collect();
        u.sort_unstable();
        u
    };
    match kind {
        NodeKind::Complete => {
            assert!(k < 64, "complete node of degree {k} is too large to enumerate");
            Box::new((0u64..1 << k).filter_map(move |mask| {
                let c = mask.count_ones() as usize;
                (c >= 2 && c + 2 <= k).then(|| union(&mut (0..k).filter(|i| mask >> i & 1 == 1), &sides))
            }))
        }
        NodeKind::Circular => Box::new((2..k.saturating_sub(1)).flat_map(move |len| {
            let sides = sides.clone();
            (0..k).map(move |start| union(&mut (0..len).map(|i| (start + i) % k), &sides))
        })),
        _ => Box::new(std::iter::empty()),
    }
}

/// The tree hung from leaf 0 (or from node 0 when `n == 1`).
struct Rooted {
    root: usize,
    parent: Vec<Option<usize>>,
    leaves: Vec<Vec<usize>>,
}

impl Rooted {
    fn new(t: &UDecompTree) -> Rooted {
        let total = t.kinds.len();
        let root = 0;
        let mut parent = vec![None; total];
        let mut order = Vec::with_capacity(total);
        let mut seen = vec![false; total];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &t.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        let mut leaves: Vec<Vec<usize>> = vec![Vec::new(); total];
        for &v in order.iter().rev() {
            if v < t.n {
                leaves[v].push(v);
            }
            leaves[v].sort_unstable();
            if let Some(p) = parent[v] {
                let l = std::mem::take(&mut leaves[v]);
                leaves[p].extend_from_slice(&l);
                leaves[v] = l;
            }
        }
        Rooted { root, parent, leaves }
    }

    fn sides(&self, t: &UDecompTree, node: usize) -> Vec<Vec<usize>> {
        t.adj[node]
            .iter()
            .map(|&u| {
                if self.parent[u] == Some(node) {
                    self.leaves[u].clone()
                } else {
                    complement(t.n, &self.leaves[node])
                }
            })
            .collect()
    }
}

/// Canonical, serializable form of a [`UDecompTree`]: leaves keep their
/// element ids, internal nodes are numbered in preorder from leaf 0, and
/// circular neighbor lists start at the side holding leaf 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalTree {
    pub n: usize,
    pub nodes: Vec<CanonNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonNode {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub neighbors: Vec<usize>,
    #[serde(rename = "type")]
    pub kind: String,
}

impl CanonicalTree {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph umodular {\n");
        for node in &self.nodes {
            let line = match node.kind.as_str() {
                "leaf" => format!(
                    "  n{} [shape=plaintext, label=\"{}\"];\n",
                    node.id,
                    node.label.as_deref().unwrap_or_default().replace('"', "\\\"")
                ),
                "circular" => {
                    let ports: Vec<String> = (0..node.neighbors.len()).map(|i| format!("<p{i}>")).collect();
                    format!("  n{} [shape=record, label=\"{}\"];\n", node.id, ports.join("|"))
                }
                "complete" => format!("  n{} [shape=doublecircle, label=\"C\"];\n", node.id),
                _ => format!("  n{} [shape=box, label=\"P\"];\n", node.id),
            };
            out.push_str(&line);
        }
        for node in &self.nodes {
            for (i, &u) in node.neighbors.iter().enumerate() {
                if node.id >= u && !self.is_circular(u) {
                    continue;
                }
                if node.kind == "circular" {
                    if self.is_circular(u) && node.id > u {
                        continue;
                    }
                    out.push_str(&format!("  n{}:p{} -- n{};\n", node.id, i, u));
                } else if !self.is_circular(u) {
                    out.push_str(&format!("  n{} -- n{};\n", node.id, u));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn is_circular(&self, id: usize) -> bool {
        self.nodes.iter().any(|n| n.id == id && n.kind == "circular")
    }
}

/// Accepts `h` only when its umodule family is known to be self-complemented:
/// standard relations of graphs and tournaments, relations satisfying the
/// four elements condition, or, within the oracle bound, a direct check.
pub fn ensure_self_complemented(h: &HomogeneousRelation) -> Result<()> {
    if matches!(h.origin(), Origin::Graph | Origin::Tournament) || h.satisfies_four_elements() {
        return Ok(());
    }
    let oracle = Oracle::from_env();
    if h.len() <= oracle.bound() && oracle.is_self_complemented(h)? {
        return Ok(());
    }
    Err(Error::NotSelfComplemented)
}

/// Builds the tree through maximal umodule partitions: the strong
/// bipartitions are found as the strong members of the umodules avoiding
/// element 0, and each node is typed by testing unions of adjacent sides.
pub fn build_umodular_tree(h: &HomogeneousRelation) -> Result<UDecompTree> {
    ensure_self_complemented(h)?;
    Ok(build_unchecked(h)?.with_labels_from(h))
}

fn build_unchecked(h: &HomogeneousRelation) -> Result<UDecompTree> {
    let n = h.len();
    if n <= 2 {
        return Ok(tiny_tree(n));
    }
    let pairs = PairParts::compute(h, Some(0));
    let blockers = pairs.nontrivial_parts(Some(0));
    let mut candidates: HashSet<FixedBitSet> = HashSet::new();
    for z in 1..n {
        pairs.chain_candidates(0, z, &mut candidates);
    }
    let mut sets = filter_uncrossed(h, candidates, &blockers);
    sets.push((1..n).collect());
    let laminar = LaminarTree::from_sets(n, sets);
    from_pivot_laminar(n, &laminar, |sides| type_node(h, sides))
}

pub(crate) fn tiny_tree(n: usize) -> UDecompTree {
    let adj = if n == 2 { vec![vec![1], vec![0]] } else { vec![vec![]] };
    UDecompTree::new(n, vec![NodeKind::Leaf; n], adj)
}

/// Unrooted tree from the inclusion tree of the strong sets avoiding leaf 0.
/// The root `X` has children `{0}` and `X \ {0}`; it is contracted into the
/// edge between them. `typer` receives the sides of each internal node,
/// parent side first, and returns the kind and, for circular nodes, the
/// cyclic order as indices into the sides.
pub(crate) fn from_pivot_laminar(
    n: usize,
    laminar: &LaminarTree,
    mut typer: impl FnMut(&[Vec<usize>]) -> Result<(NodeKind, Option<Vec<usize>>)>,
) -> Result<UDecompTree> {
    let m = laminar.len();
    // tree id of each laminar node: singletons are leaves, X is dropped
    let mut id = vec![usize::MAX; m];
    let mut next = n;
    for v in 1..m {
        let s = laminar.set(v);
        if s.len() == 1 {
            id[v] = s[0];
        } else {
            id[v] = next;
            next += 1;
        }
    }
    let tree_parent = |v: usize| -> usize {
        let p = laminar.parent(v).expect("non-root node");
        if p == 0 {
            0
        } else {
            id[p]
        }
    };
    let mut kinds = vec![NodeKind::Leaf; next];
    let mut adj = vec![Vec::new(); next];
    for v in 1..m {
        if laminar.set(v).len() == 1 {
            if v != 0 && laminar.set(v)[0] != 0 {
                adj[id[v]].push(tree_parent(v));
            }
            continue;
        }
        let set = laminar.set(v);
        let mut sides = vec![complement(n, set)];
        let mut nbrs = vec![tree_parent(v)];
        for &c in laminar.children(v) {
            sides.push(laminar.set(c).to_vec());
            nbrs.push(id[c]);
        }
        if laminar.parent(v) == Some(0) {
            adj[0].push(id[v]);
        }
        let (kind, order) = typer(&sides)?;
        kinds[id[v]] = kind;
        adj[id[v]] = match order {
            Some(o) => o.into_iter().map(|i| nbrs[i]).collect(),
            None => nbrs,
        };
    }
    Ok(UDecompTree::new(n, kinds, adj))
}

/// Types a node from its sides. Each side is a umodule, so whether the union
/// of two sides is a umodule only needs one representative per side.
fn type_node(h: &HomogeneousRelation, sides: &[Vec<usize>]) -> Result<(NodeKind, Option<Vec<usize>>)> {
    let k = sides.len();
    if k <= 3 {
        return Ok((NodeKind::Prime, None));
    }
    let n = h.len();
    let mut owner = vec![0usize; n];
    for (i, s) in sides.iter().enumerate() {
        for &x in s {
            owner[x] = i;
        }
    }
    let mut scratch = vec![SENTINEL; n];
    let mut joins = |i: usize, j: usize| -> bool {
        let outside: Vec<usize> = (0..n).filter(|&x| owner[x] != i && owner[x] != j).collect();
        let a = h.signature_on(sides[i][0], &outside, &mut scratch);
        let b = h.signature_on(sides[j][0], &outside, &mut scratch);
        a == b
    };
    let first: Vec<usize> = (1..k).filter(|&j| joins(0, j)).collect();
    match first.len() {
        0 => Ok((NodeKind::Prime, None)),
        d if d == k - 1 => Ok((NodeKind::Complete, None)),
        2 => {
            let mut order = vec![0, first[0]];
            let mut used = vec![false; k];
            used[0] = true;
            used[first[0]] = true;
            while order.len() < k {
                let cur = *order.last().unwrap();
                let nxt = (1..k).find(|&j| !used[j] && joins(cur, j)).ok_or(Error::NotSelfComplemented)?;
                used[nxt] = true;
                order.push(nxt);
            }
            if !joins(*order.last().unwrap(), 0) {
                return Err(Error::NotSelfComplemented);
            }
            Ok((NodeKind::Circular, Some(order)))
        }
        _ => Err(Error::NotSelfComplemented),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::StandardRelation;
    use crate::structures::{Tournament, UndirectedGraph};
    use std::collections::BTreeSet;

    fn oracle_family(h: &HomogeneousRelation) -> BTreeSet<Vec<usize>> {
        let n = h.len();
        Oracle::default().umodules(h).unwrap().into_iter().filter(|u| !u.is_empty() && u.len() < n).collect()
    }

    fn tree_family(t: &UDecompTree) -> BTreeSet<Vec<usize>> {
        let v: Vec<Vec<usize>> = t.enumerate_umodules().collect();
        let s: BTreeSet<Vec<usize>> = v.iter().cloned().collect();
        assert_eq!(s.len(), v.len(), "duplicates in enumeration");
        assert_eq!(BigUint::from(v.len()), t.count_umodules());
        s
    }

    #[test]
    fn transitive_tournament_is_one_circular_node() {
        for n in 4..=7 {
            let h = Tournament::transitive(n).unwrap().standard_relation();
            let t = build_umodular_tree(&h).unwrap();
            assert_eq!(t.node_count(), n + 1);
            assert_eq!(t.kind(n), NodeKind::Circular);
            let c = t.canonical();
            assert_eq!(c.nodes[n].neighbors, (0..n).collect::<Vec<_>>());
            assert_eq!(tree_family(&t), oracle_family(&h));
        }
    }

    #[test]
    fn prime_relation_is_one_prime_node() {
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
        let h = g.standard_relation();
        let t = build_umodular_tree(&h).unwrap();
        assert_eq!(t.node_count(), 6);
        assert_eq!(t.kind(5), NodeKind::Prime);
        let fam = tree_family(&t);
        assert_eq!(fam.len(), 10);
        assert_eq!(fam, oracle_family(&h));
    }

    #[test]
    fn perfect_matching() {
        let g = UndirectedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let h = g.standard_relation();
        let t = build_umodular_tree(&h).unwrap();
        assert_eq!(tree_family(&t), oracle_family(&h));
    }

    #[test]
    fn complete_graph_is_complete_node() {
        let h = UndirectedGraph::complete(6).unwrap().standard_relation();
        let t = build_umodular_tree(&h).unwrap();
        assert_eq!(t.kind(6), NodeKind::Complete);
        assert_eq!(t.count_umodules(), BigUint::from(62u32));
        assert_eq!(tree_family(&t), oracle_family(&h));
    }

    #[test]
    fn complete_node_count_formula() {
        let mut adj = vec![vec![10]; 10];
        adj.push((0..10).collect());
        let mut kinds = vec![NodeKind::Leaf; 10];
        kinds.push(NodeKind::Complete);
        let t = UDecompTree::new(10, kinds, adj);
        // 2^10 - 2 unions, singletons and co-singletons included
        assert_eq!(t.count_umodules(), BigUint::from(1022u32));
    }

    #[test]
    fn tiny_trees() {
        let h1 = Tournament::transitive(1).unwrap().standard_relation();
        let t1 = build_umodular_tree(&h1).unwrap();
        assert_eq!(t1.enumerate_umodules().count(), 0);
        let h2 = Tournament::transitive(2).unwrap().standard_relation();
        let t2 = build_umodular_tree(&h2).unwrap();
        assert_eq!(tree_family(&t2), oracle_family(&h2));
        let h3 = Tournament::transitive(3).unwrap().standard_relation();
        let t3 = build_umodular_tree(&h3).unwrap();
        assert_eq!(t3.kind(3), NodeKind::Prime);
        assert_eq!(tree_family(&t3), oracle_family(&h3));
    }

    #[test]
    fn rejects_non_self_complemented() {
        let h = crate::relation::tests::module_not_umodule();
        assert!(!Oracle::default().is_self_complemented(&h).unwrap());
        assert_eq!(build_umodular_tree(&h).unwrap_err(), Error::NotSelfComplemented);
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let h = UndirectedGraph::path(4).unwrap().standard_relation();
        let t = build_umodular_tree(&h).unwrap();
        let j = t.to_json();
        assert_eq!(j, build_umodular_tree(&h).unwrap().to_json());
        assert!(j.starts_with("{\"n\":4,\"nodes\":[{\"id\":0,\"label\":\"0\",\"neighbors\":"));
        assert!(t.to_dot().contains("graph umodular"));
    }
}
