//! Strong module tree of a homogeneous relation.
//!
//! The tree is built recursively around a pivot `v`. The maximal modules not
//! containing `v` partition the rest of the set; the strong modules that do
//! contain `v` are unions of `v` with some of those parts, found by closing
//! under the elements that tell a part apart from `v`. Each part is then
//! decomposed on its own and grafted in, merging roots where a complete or
//! linear node continues across the boundary.
//!
//! The construction assumes the module family is closed under union,
//! intersection and difference of overlapping members. That holds for
//! 2-structures, graphs, tournaments and Seidel switches of relations with
//! a self-complemented umodule family.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::relation::HomogeneousRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModKind {
    Leaf,
    Prime,
    Complete,
    Linear,
}

/// Rooted inclusion tree of strong modules. Nodes `0..n` are the singleton
/// leaves; children of `Linear` nodes are in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTree {
    n: usize,
    kinds: Vec<ModKind>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl ModularTree {
    pub fn leaf_count(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn kind(&self, node: usize) -> ModKind {
        self.kinds[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Sorted elements below `node`.
    pub fn leaves(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < self.n {
                out.push(v);
            }
            stack.extend_from_slice(&self.children[v]);
        }
        out.sort_unstable();
        out
    }

    /// All strong modules, sorted.
    pub fn strong_modules(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.kinds.len()).map(|v| self.leaves(v)).collect();
        out.sort();
        out
    }
}

/// Strong module tree of `h`. Two-child nodes are labeled `Complete`.
pub fn modular_strong_tree(h: &HomogeneousRelation) -> ModularTree {
    let n = h.len();
    let mut b =
        Builder { h, kinds: vec![ModKind::Leaf; n], children: vec![Vec::new(); n], mark: vec![false; n] };
    let all: Vec<usize> = (0..n).collect();
    let root = b.decompose(&all);
    b.compact(n, root)
}

struct Builder<'a> {
    h: &'a HomogeneousRelation,
    kinds: Vec<ModKind>,
    children: Vec<Vec<usize>>,
    /// Scratch membership flags, always cleared after use.
    mark: Vec<bool>,
}

impl Builder<'_> {
    fn node(&mut self, kind: ModKind, children: Vec<usize>) -> usize {
        self.kinds.push(kind);
        self.children.push(children);
        self.kinds.len() - 1
    }

    fn first_leaf(&self, mut v: usize) -> usize {
        while v >= self.mark.len() {
            v = self.children[v][0];
        }
        v
    }

    fn leaves_into(&self, v: usize, out: &mut Vec<usize>) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if u < self.mark.len() {
                out.push(u);
            } else {
                stack.extend_from_slice(&self.children[u]);
            }
        }
    }

    /// Whether `a ∪ b` is a module inside the module `scope`, for disjoint
    /// modules `a` and `b` represented by `ra` and `rb`.
    fn joins(&mut self, scope: &[usize], a: &[usize], b: &[usize], ra: usize, rb: usize) -> bool {
        for &x in a.iter().chain(b) {
            self.mark[x] = true;
        }
        let ok =
            scope.iter().filter(|&&z| !self.mark[z]).all(|&z| self.h.class(z, ra) == self.h.class(z, rb));
        for &x in a.iter().chain(b) {
            self.mark[x] = false;
        }
        ok
    }

    fn decompose(&mut self, set: &[usize]) -> usize {
        if set.len() == 1 {
            return set[0];
        }
        let v = set[0];
        let parts = self.max_modules_avoiding(set, v);
        let reach = self.forcing_closure(&parts, v);

        // distinct closures, smallest first
        let mut levels: Vec<FixedBitSet> = Vec::new();
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        for r in &reach {
            if seen.insert(r.clone(), ()).is_none() {
                levels.push(r.clone());
            }
        }
        levels.sort_by_key(|s| s.count_ones(..));

        let k = parts.len();
        let mut cur = FixedBitSet::with_capacity(k);
        let mut below = v;
        let mut below_set = vec![v];
        while !levels.is_empty() {
            let s1 = levels.remove(0);
            let partner = levels.iter().position(|s| !s.is_superset(&s1));
            let node = if let Some(j) = partner {
                let s2 = levels.remove(j);
                let left = self.side_part(&s1, &cur, &parts);
                let right = self.side_part(&s2, &cur, &parts);
                cur.union_with(&s1);
                cur.union_with(&s2);
                let tl = self.decompose(&left);
                let tr = self.decompose(&right);
                let mut seq = self.linear_run(set, &below_set, below, tl, true);
                seq.push(below);
                let mut tail = self.linear_run(set, &below_set, below, tr, false);
                seq.append(&mut tail);
                below_set.extend_from_slice(&left);
                below_set.extend_from_slice(&right);
                self.node(ModKind::Linear, seq)
            } else {
                let new: Vec<usize> = s1.difference(&cur).collect();
                cur.union_with(&s1);
                let mut added = Vec::new();
                for &p in &new {
                    added.extend_from_slice(&parts[p]);
                }
                let node = if new.len() >= 2 {
                    let mut kids = vec![below];
                    for &p in &new {
                        kids.push(self.decompose(&parts[p]));
                    }
                    self.node(ModKind::Prime, kids)
                } else {
                    let tw = self.decompose(&parts[new[0]]);
                    self.attach_single(set, &below_set, below, tw)
                };
                below_set.extend_from_slice(&added);
                node
            };
            below = node;
        }
        below
    }

    fn side_part(&self, s: &FixedBitSet, cur: &FixedBitSet, parts: &[Vec<usize>]) -> Vec<usize> {
        let mut out = Vec::new();
        for p in s.difference(cur) {
            out.extend_from_slice(&parts[p]);
        }
        out
    }

    /// Children of `t` laid out so the end adjacent to `below` is last
    /// (`before == true`) or first, when `t` continues a linear order across
    /// `below`; otherwise just `[t]`.
    fn linear_run(
        &mut self,
        scope: &[usize],
        below_set: &[usize],
        below: usize,
        t: usize,
        before: bool,
    ) -> Vec<usize> {
        if t < self.mark.len() || !matches!(self.kinds[t], ModKind::Linear | ModKind::Complete) {
            return vec![t];
        }
        let kids = self.children[t].clone();
        if self.kinds[t] == ModKind::Complete && kids.len() > 2 {
            return vec![t];
        }
        let (first, last) = (kids[0], kids[kids.len() - 1]);
        let rb = self.first_leaf(below);
        let joined = |b: &mut Self, c: usize| {
            let mut cs = Vec::new();
            b.leaves_into(c, &mut cs);
            let rc = b.first_leaf(c);
            b.joins(scope, below_set, &cs, rb, rc)
        };
        let mut seq = if joined(self, last) {
            kids
        } else if joined(self, first) {
            kids.into_iter().rev().collect()
        } else {
            return vec![t];
        };
        if !before {
            seq.reverse();
        }
        seq
    }

    /// Node above `below` when exactly one part joins it at this level.
    fn attach_single(&mut self, scope: &[usize], below_set: &[usize], below: usize, tw: usize) -> usize {
        if tw >= self.mark.len() {
            let kids = self.children[tw].clone();
            let rb = self.first_leaf(below);
            let joined = |b: &mut Self, c: usize| {
                let mut cs = Vec::new();
                b.leaves_into(c, &mut cs);
                let rc = b.first_leaf(c);
                b.joins(scope, below_set, &cs, rb, rc)
            };
            match self.kinds[tw] {
                ModKind::Complete if kids.len() > 2 => {
                    if joined(self, kids[0]) {
                        let mut all = vec![below];
                        all.extend(kids);
                        return self.node(ModKind::Complete, all);
                    }
                }
                ModKind::Complete | ModKind::Linear => {
                    let (first, last) = (kids[0], kids[kids.len() - 1]);
                    let at_first = joined(self, first);
                    let at_last = joined(self, last);
                    if kids.len() == 2 && at_first && at_last {
                        return self.node(ModKind::Complete, vec![below, first, last]);
                    }
                    if at_first {
                        let mut all = vec![below];
                        all.extend(kids);
                        return self.node(ModKind::Linear, all);
                    }
                    if at_last {
                        let mut all = kids;
                        all.push(below);
                        return self.node(ModKind::Linear, all);
                    }
                }
                _ => {}
            }
        }
        self.node(ModKind::Complete, vec![below, tw])
    }

    /// Maximal modules of `h[set]` avoiding `v`, by refining `{set \ {v}}`
    /// with element splitters until every part is a module.
    fn max_modules_avoiding(&self, set: &[usize], v: usize) -> Vec<Vec<usize>> {
        let m = set.len();
        let mut local: HashMap<usize, usize> = HashMap::with_capacity(m);
        for (i, &x) in set.iter().enumerate() {
            local.insert(x, i);
        }
        let vi = local[&v];
        let mut part = vec![1usize; m];
        part[vi] = 0;
        let mut members: Vec<Vec<usize>> = vec![vec![vi], (0..m).filter(|&i| i != vi).collect()];
        let mut queued = vec![false; m];
        let mut queue = std::collections::VecDeque::from([vi]);
        queued[vi] = true;
        let mut groups: HashMap<(usize, u32), usize> = HashMap::new();
        let mut touched: Vec<usize> = Vec::new();
        let mut is_touched = vec![false; 2];
        while let Some(zi) = queue.pop_front() {
            queued[zi] = false;
            let z = set[zi];
            let own = part[zi];
            // first class seen per part; parts seeing a second class split
            let mut first: HashMap<usize, u32> = HashMap::new();
            touched.clear();
            for (i, &y) in set.iter().enumerate() {
                let p = part[i];
                if p == own {
                    continue;
                }
                let c = self.h.class(z, y);
                let f = *first.entry(p).or_insert(c);
                if f != c && !is_touched[p] {
                    is_touched[p] = true;
                    touched.push(p);
                }
            }
            for &p in &touched {
                is_touched[p] = false;
                groups.clear();
                let old = std::mem::take(&mut members[p]);
                let keep = self.h.class(z, set[old[0]]);
                for &i in &old {
                    let c = self.h.class(z, set[i]);
                    let target = if c == keep {
                        p
                    } else {
                        *groups.entry((p, c)).or_insert_with(|| {
                            members.push(Vec::new());
                            is_touched.push(false);
                            members.len() - 1
                        })
                    };
                    part[i] = target;
                    members[target].push(i);
                }
                for &i in &old {
                    if !queued[i] {
                        queued[i] = true;
                        queue.push_back(i);
                    }
                }
            }
        }
        members
            .into_iter()
            .filter(|p| !p.is_empty() && p[0] != vi)
            .map(|p| p.into_iter().map(|i| set[i]).collect())
            .collect()
    }

    /// For every part `W`, the parts contained in the smallest module holding
    /// `v` and `W`: those reachable from `W` when `W -> Z` whenever an element
    /// of `Z` separates `W` from `v`.
    fn forcing_closure(&self, parts: &[Vec<usize>], v: usize) -> Vec<FixedBitSet> {
        let k = parts.len();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(k, k);
        let ids: Vec<_> = (0..k).map(|_| g.add_node(())).collect();
        let reps: Vec<usize> = parts.iter().map(|p| p[0]).collect();
        for (zi, zp) in parts.iter().enumerate() {
            let mut hits = FixedBitSet::with_capacity(k);
            for &z in zp {
                let cv = self.h.class(z, v);
                for (w, &r) in reps.iter().enumerate() {
                    if w != zi && self.h.class(z, r) != cv {
                        hits.insert(w);
                    }
                }
            }
            for w in hits.ones() {
                g.add_edge(ids[w], ids[zi], ());
            }
        }
        // tarjan_scc yields components in reverse topological order
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0usize; k];
        for (c, scc) in sccs.iter().enumerate() {
            for &nd in scc {
                comp[nd.index()] = c;
            }
        }
        let mut comp_reach: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(k); sccs.len()];
        for (c, scc) in sccs.iter().enumerate() {
            let mut r = FixedBitSet::with_capacity(k);
            for &nd in scc {
                r.insert(nd.index());
                for succ in g.neighbors(nd) {
                    let sc = comp[succ.index()];
                    if sc != c {
                        r.union_with(&comp_reach[sc]);
                    }
                }
            }
            comp_reach[c] = r;
        }
        (0..k).map(|w| comp_reach[comp[w]].clone()).collect()
    }

    /// Drops nodes orphaned by splicing and renumbers internal nodes after
    /// the leaves.
    fn compact(self, n: usize, root: usize) -> ModularTree {
        let mut new_id = vec![usize::MAX; self.kinds.len()];
        for (x, id) in new_id.iter_mut().enumerate().take(n) {
            *id = x;
        }
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if v >= n {
                new_id[v] = n + order.len();
                order.push(v);
            }
            stack.extend_from_slice(&self.children[v]);
        }
        let mut kinds = vec![ModKind::Leaf; n];
        let mut children = vec![Vec::new(); n];
        for &v in &order {
            kinds.push(self.kinds[v]);
            children.push(self.children[v].iter().map(|&c| new_id[c]).collect());
        }
        ModularTree { n, kinds, children, root: new_id[root] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::StandardRelation;
    use crate::structures::{Tournament, UndirectedGraph};

    #[test]
    fn complete_graph_root_is_complete() {
        let t = modular_strong_tree(&UndirectedGraph::complete(5).unwrap().standard_relation());
        assert_eq!(t.kind(t.root()), ModKind::Complete);
        assert_eq!(t.children(t.root()).len(), 5);
    }

    #[test]
    fn transitive_tournament_root_is_linear_in_order() {
        let t = modular_strong_tree(&Tournament::transitive(6).unwrap().standard_relation());
        assert_eq!(t.kind(t.root()), ModKind::Linear);
        let kids = t.children(t.root()).to_vec();
        assert!(kids == (0..6).collect::<Vec<_>>() || kids == (0..6).rev().collect::<Vec<_>>());
    }

    #[test]
    fn p4_is_prime() {
        let t = modular_strong_tree(&UndirectedGraph::path(4).unwrap().standard_relation());
        assert_eq!(t.node_count(), 5);
        assert_eq!(t.kind(t.root()), ModKind::Prime);
    }

    #[test]
    fn single_element() {
        let t = modular_strong_tree(&UndirectedGraph::path(1).unwrap().standard_relation());
        assert_eq!(t.root(), 0);
        assert_eq!(t.strong_modules(), vec![vec![0]]);
    }
}
