//! Seeded random instance generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::relation::HomogeneousRelation;
use crate::structures::{ArcStructure, Tournament, TwoStructure, UndirectedGraph};

pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as Rng8;

pub fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

pub fn graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> UndirectedGraph {
    UndirectedGraph::from_predicate(n, |_, _| rng.gen_bool(p)).expect("n >= 1")
}

pub fn tournament<R: Rng>(rng: &mut R, n: usize) -> Tournament {
    Tournament::from_predicate(n, |_, _| rng.gen_bool(0.5)).expect("n >= 1")
}

/// Relation whose rows use at most `k` class labels, drawn uniformly.
pub fn relation<R: Rng>(rng: &mut R, n: usize, k: u32) -> HomogeneousRelation {
    let raw: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..k.max(1))).collect();
    HomogeneousRelation::from_classes(n, &raw).expect("n >= 1")
}

pub fn two_structure<R: Rng>(rng: &mut R, n: usize, colors: u32) -> TwoStructure {
    TwoStructure::from_fn(n, |_, _| rng.gen_range(0..colors.max(1))).expect("n >= 1")
}

/// Builds a structure from one vertex by random twin / antitwin extensions,
/// then shuffles the ids. For tournaments this samples locally transitive
/// ones; for graphs, totally bijoin-decomposable ones.
pub fn extended<S: ArcStructure, R: Rng>(rng: &mut R, n: usize) -> S {
    let mut arcs = vec![false; n * n];
    for y in 1..n {
        let anchor = rng.gen_range(0..y);
        let twin = rng.gen_bool(0.5);
        let toward = rng.gen_bool(0.5);
        for z in 0..y {
            if z == anchor {
                arcs[y * n + z] = toward;
                arcs[z * n + y] = toward == S::SYMMETRIC;
            } else {
                let a = arcs[anchor * n + z];
                arcs[y * n + z] = if twin { a } else { !a };
                let b = arcs[z * n + anchor];
                arcs[z * n + y] = if twin { b } else { !b };
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    S::from_predicate(n, |x, y| arcs[perm[x] * n + perm[y]]).expect("n >= 1")
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
