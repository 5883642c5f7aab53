//! Independent brute-force references shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use umod_core::oracle::Oracle;
use umod_core::{ArcStructure, HomogeneousRelation, Tournament, UndirectedGraph};

/// Every umodule except `∅` and `X`.
pub fn proper_umodules(h: &HomogeneousRelation) -> BTreeSet<Vec<usize>> {
    let n = h.len();
    Oracle::default().umodules(h).unwrap().into_iter().filter(|u| !u.is_empty() && u.len() < n).collect()
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// All labeled tournaments on `n` vertices.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Tournament> {
    let p = pairs(n);
    (0u64..1 << p.len()).map(move |mask| {
        let mut beats = vec![false; n * n];
        for (b, &(i, j)) in p.iter().enumerate() {
            if mask >> b & 1 == 1 {
                beats[i * n + j] = true;
            } else {
                beats[j * n + i] = true;
            }
        }
        Tournament::from_matrix(n, beats).unwrap()
    })
}

pub fn all_graphs(n: usize) -> impl Iterator<Item = UndirectedGraph> {
    let p = pairs(n);
    (0u64..1 << p.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            p.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        UndirectedGraph::from_edges(n, &edges).unwrap()
    })
}

/// A tournament restricted to `keep` is acyclic iff it has no 3-cycle.
pub fn acyclic_on(t: &Tournament, keep: &[usize]) -> bool {
    let k = keep.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let (x, y, z) = (keep[a], keep[b], keep[c]);
                let forward = t.beats(x, y) && t.beats(y, z) && t.beats(z, x);
                let backward = t.beats(y, x) && t.beats(z, y) && t.beats(x, z);
                if forward || backward {
                    return false;
                }
            }
        }
    }
    true
}

pub fn min_fvs_size(t: &Tournament) -> usize {
    let n = t.len();
    (0..=n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
                let keep: Vec<usize> = (0..n).filter(|&x| m >> x & 1 == 0).collect();
                acyclic_on(t, &keep)
            })
        })
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Tries every bijection.
pub fn isomorphic_by_search<S: ArcStructure>(a: &S, b: &S) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    permutations(n).iter().any(|p| (0..n).all(|x| (0..n).all(|y| x == y || a.arc(x, y) == b.arc(p[x], p[y]))))
}

fn forbidden_five() -> Vec<UndirectedGraph> {
    vec![
        UndirectedGraph::cycle(5).unwrap(),
        // bull: triangle 0 1 2 with pendants on 1 and 2
        UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap(),
        // gem: path 0-1-2-3 plus 4 adjacent to all
        UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]).unwrap(),
        // co-gem: path 0-1-2-3 plus an isolated vertex
        UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
    ]
}

fn degree_profile(g: &UndirectedGraph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.len()).map(|x| g.degree(x)).collect();
    d.sort_unstable();
    d
}

/// Whether some 5 vertices induce C5, the bull, the gem or the co-gem.
pub fn has_forbidden_subgraph(g: &UndirectedGraph) -> bool {
    let n = g.len();
    if n < 5 {
        return false;
    }
    let forbidden = forbidden_five();
    let profiles: Vec<Vec<usize>> = forbidden.iter().map(degree_profile).collect();
    (0u32..1 << n).filter(|m| m.count_ones() == 5).any(|m| {
        let keep: Vec<usize> = (0..n).filter(|&x| m >> x & 1 == 1).collect();
        let sub = g.induced(&keep);
        let prof = degree_profile(&sub);
        forbidden.iter().zip(&profiles).any(|(f, p)| *p == prof && isomorphic_by_search(&sub, f))
    })
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
