use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::StandardRelation;
use crate::seidel::fast_umodular_tree;
use crate::structures::{ArcStructure, Tournament};

fn out_sets(t: &Tournament) -> Vec<FixedBitSet> {
    let n = t.len();
    (0..n)
        .map(|x| {
            let mut b = FixedBitSet::with_capacity(n);
            b.extend(t.out_neighbors(x));
            b
        })
        .collect()
}

/// Four vertices inducing a diamond: a directed 3-cycle together with a
/// vertex beating all of it or beaten by all of it. The cycle comes first.
pub fn diamond_witness(t: &Tournament) -> Option<[usize; 4]> {
    let n = t.len();
    let out = out_sets(t);
    let mut inn: Vec<FixedBitSet> = out.clone();
    for (x, b) in inn.iter_mut().enumerate() {
        b.toggle_range(..);
        b.set(x, false);
    }
    for a in 0..n {
        for b in out[a].ones() {
            for c in out[b].ones() {
                if c < a || !t.beats(c, a) || b < a {
                    continue;
                }
                let mut dom = inn[a].clone();
                dom.intersect_with(&inn[b]);
                dom.intersect_with(&inn[c]);
                let mut sub = out[a].clone();
                sub.intersect_with(&out[b]);
                sub.intersect_with(&out[c]);
                if let Some(d) = dom.ones().next().or_else(|| sub.ones().next()) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

pub fn is_diamond_free(t: &Tournament) -> bool {
    diamond_witness(t).is_none()
}

/// Out- and in-neighborhoods of every vertex induce transitive tournaments,
/// which is the case exactly when their internal out-degrees are distinct.
pub fn is_locally_transitive(t: &Tournament) -> bool {
    let n = t.len();
    let out = out_sets(t);
    let mut seen = vec![false; n];
    for x in 0..n {
        let mut inn = out[x].clone();
        inn.toggle_range(..);
        inn.set(x, false);
        for side in [&out[x], &inn] {
            seen.iter_mut().for_each(|s| *s = false);
            for y in side.ones() {
                let d = out[y].intersection(side).count();
                if std::mem::replace(&mut seen[d], true) {
                    return false;
                }
            }
        }
    }
    true
}

/// Diamond-free, locally transitive, and umodular tree without a prime node
/// of degree four or more, each computed on its own.
pub fn decomposability_checks(t: &Tournament) -> [bool; 3] {
    let tree = fast_umodular_tree(&t.standard_relation()).expect("tournament relations qualify");
    [is_diamond_free(t), is_locally_transitive(t), !tree.has_proper_prime()]
}

pub fn is_totally_decomposable(t: &Tournament) -> bool {
    let [diamond_free, lt, tree] = decomposability_checks(t);
    debug_assert_eq!(diamond_free, lt);
    debug_assert_eq!(lt, tree);
    tree
}

/// Cyclic order of a locally transitive tournament in which every vertex is
/// followed by its out-neighbors. Starts at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CircularOrder {
    order: Vec<usize>,
}

impl CircularOrder {
    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// Checks that `N⁺(x)` is exactly the run of `d⁺(x)` vertices after `x`.
    pub fn is_round_for(&self, t: &Tournament) -> bool {
        round(t, &self.order)
    }

    /// Whether `set` is a non-empty cyclic interval of the order.
    pub fn is_interval(&self, set: &[usize]) -> bool {
        let n = self.order.len();
        if set.is_empty() {
            return false;
        }
        let mut inside = vec![false; n];
        for &x in set {
            inside[x] = true;
        }
        let starts =
            (0..n).filter(|&i| inside[self.order[i]] && !inside[self.order[(i + n - 1) % n]]).count();
        starts <= 1
    }
}

fn round(t: &Tournament, order: &[usize]) -> bool {
    let n = order.len();
    (0..n).all(|i| {
        let x = order[i];
        let d = t.out_degree(x);
        (1..n).all(|k| t.beats(x, order[(i + k) % n]) == (k <= d))
    })
}

/// Round order starting at vertex 0. In a round tournament the successor
/// of `x` beats every other out-neighbor of `x` (every other vertex when `x`
/// has none), so the order is rebuilt one successor at a time and then
/// verified.
pub fn circular_order(t: &Tournament) -> Result<CircularOrder> {
    let n = t.len();
    let out = out_sets(t);
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut x = 0;
    while order.len() < n {
        if std::mem::replace(&mut placed[x], true) {
            return Err(Error::NotTotallyDecomposable);
        }
        order.push(x);
        if order.len() == n {
            break;
        }
        let mut pool = out[x].clone();
        if pool.is_clear() {
            pool.toggle_range(..);
            pool.set(x, false);
        }
        let need = pool.count_ones(..) - 1;
        x = pool
            .ones()
            .find(|&y| out[y].intersection(&pool).count() == need)
            .ok_or(Error::NotTotallyDecomposable)?;
    }
    if !round(t, &order) {
        return Err(Error::NotTotallyDecomposable);
    }
    Ok(CircularOrder { order })
}

/// Isomorphism of two locally transitive tournaments: the out-degree
/// sequences along their circular orders agree up to rotation.
pub fn isomorphic_decomposable(t1: &Tournament, t2: &Tournament) -> Result<bool> {
    let o1 = circular_order(t1)?;
    let o2 = circular_order(t2)?;
    if t1.len() != t2.len() {
        return Ok(false);
    }
    let a: Vec<usize> = o1.order.iter().map(|&x| t1.out_degree(x)).collect();
    let b: Vec<usize> = o2.order.iter().map(|&x| t2.out_degree(x)).collect();
    let n = a.len();
    Ok((0..n.max(1)).any(|r| (0..n).all(|i| a[(i + r) % n] == b[i])))
}

/// Removes everything outside a vertex of maximum out-degree (lowest id on
/// ties) and its out-neighborhood. Only defined on locally transitive input.
pub fn feedback_vertex_set(t: &Tournament) -> Result<Vec<usize>> {
    if !is_locally_transitive(t) {
        return Err(Error::NotTotallyDecomposable);
    }
    let n = t.len();
    let best = (0..n).max_by_key(|&x| (t.out_degree(x), std::cmp::Reverse(x))).unwrap_or(0);
    Ok((0..n).filter(|&y| y != best && !t.beats(best, y)).collect())
}
