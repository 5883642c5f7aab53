//! Concrete input structures: undirected graphs, tournaments and
//! 2-structures over a dense ground set `0..n`.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A finite ground set of dense ids `0..size`, optionally labeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidStructure("ground set must be non-empty".into()));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidStructure("ground set must be non-empty".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate label {l:?}")));
            }
        }
        Ok(GroundSet { size: labels.len(), labels: Some(labels) })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, size: self.size })
        }
    }
}

/// Structures whose pairs are described by a single boolean arc predicate.
///
/// Graphs read `arc(x, y)` as adjacency, tournaments as `x` beats `y`. Twin
/// and antitwin extensions, bijoin witnesses and the threshold machinery are
/// written once against this trait.
pub trait ArcStructure: Sized {
    /// `arc(y, x)` equals `arc(x, y)` when set, and is its negation otherwise.
    const SYMMETRIC: bool;

    fn ground(&self) -> &GroundSet;

    fn arc(&self, x: usize, y: usize) -> bool;

    /// Builds the structure from a predicate consulted for every ordered pair
    /// `x != y`. Graphs only consult `x < y`; tournaments only `x < y` and set
    /// the reverse arc accordingly.
    fn from_predicate(n: usize, f: impl FnMut(usize, usize) -> bool) -> Result<Self>;

    fn len(&self) -> usize {
        self.ground().len()
    }

    /// Substructure induced by `keep`, relabeled `0..keep.len()` in order.
    fn induced(&self, keep: &[usize]) -> Self {
        Self::from_predicate(keep.len(), |i, j| self.arc(keep[i], keep[j]))
            .expect("induced substructure of a valid structure is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    ground: GroundSet,
    adj: Vec<bool>,
}

impl UndirectedGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            ground.check(u)?;
            ground.check(v)?;
            if u == v {
                return Err(Error::InvalidStructure(format!("self-loop on {u}")));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(UndirectedGraph { ground, adj })
    }

    pub fn from_matrix(n: usize, adj: Vec<bool>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if adj.len() != n * n {
            return Err(Error::InvalidStructure("adjacency matrix has wrong shape".into()));
        }
        for x in 0..n {
            if adj[x * n + x] {
                return Err(Error::InvalidStructure(format!("self-loop on {x}")));
            }
            for y in 0..x {
                if adj[x * n + y] != adj[y * n + x] {
                    return Err(Error::InvalidStructure(format!("asymmetric pair ({y}, {x})")));
                }
            }
        }
        Ok(UndirectedGraph { ground, adj })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_predicate(n, |_, _| true)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::from_predicate(n, |x, y| x + 1 == y)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_predicate(n, |x, y| x + 1 == y || (x == 0 && y + 1 == n && n > 2))
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.ground.len() + y]
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground.len()).filter(move |&y| self.adjacent(x, y))
    }

    pub fn degree(&self, x: usize) -> usize {
        self.neighbors(x).count()
    }

    pub fn with_ground(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidStructure("label count does not match size".into()));
        }
        self.ground = ground;
        Ok(self)
    }
}

impl ArcStructure for UndirectedGraph {
    const SYMMETRIC: bool = true;

    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn arc(&self, x: usize, y: usize) -> bool {
        self.adjacent(x, y)
    }

    fn from_predicate(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut adj = vec![false; n * n];
        for x in 0..n {
            for y in x + 1..n {
                let e = f(x, y);
                adj[x * n + y] = e;
                adj[y * n + x] = e;
            }
        }
        Ok(UndirectedGraph { ground, adj })
    }
}

/// A tournament: exactly one arc between every pair of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    ground: GroundSet,
    beats: Vec<bool>,
}

impl Tournament {
    pub fn from_matrix(n: usize, beats: Vec<bool>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if beats.len() != n * n {
            return Err(Error::InvalidStructure("beats matrix has wrong shape".into()));
        }
        for x in 0..n {
            if beats[x * n + x] {
                return Err(Error::InvalidStructure("diagonal must be 0".into()));
            }
            for y in 0..x {
                if beats[x * n + y] == beats[y * n + x] {
                    return Err(Error::InvalidStructure(format!(
                        "pair ({y}, {x}) must have exactly one orientation"
                    )));
                }
            }
        }
        Ok(Tournament { ground, beats })
    }

    /// Transitive tournament in which `x` beats `y` whenever `x < y`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_predicate(n, |_, _| true)
    }

    /// Circulant tournament where `i` beats `i + s (mod n)` for each step `s`.
    /// The steps must contain exactly one of `s`, `n - s` for every `s`.
    pub fn circulant(n: usize, steps: &[usize]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut beats = vec![false; n * n];
        for i in 0..n {
            for &s in steps {
                let j = (i + s) % n;
                if j != i {
                    beats[i * n + j] = true;
                }
            }
        }
        let t = Tournament { ground, beats };
        Tournament::from_matrix(n, t.beats)
    }

    pub fn beats(&self, x: usize, y: usize) -> bool {
        self.beats[x * self.ground.len() + y]
    }

    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground.len()).filter(move |&y| self.beats(x, y))
    }

    pub fn in_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground.len()).filter(move |&y| y != x && !self.beats(x, y))
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out_neighbors(x).count()
    }

    pub fn with_ground(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidStructure("label count does not match size".into()));
        }
        self.ground = ground;
        Ok(self)
    }

    /// `sigma[x]` is the new id of vertex `x`.
    pub fn relabel(&self, sigma: &[usize]) -> Tournament {
        let n = self.ground.len();
        let mut inv = vec![0; n];
        for (x, &y) in sigma.iter().enumerate() {
            inv[y] = x;
        }
        Tournament::from_predicate(n, |a, b| self.beats(inv[a], inv[b])).expect("relabeling")
    }
}

impl ArcStructure for Tournament {
    const SYMMETRIC: bool = false;

    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn arc(&self, x: usize, y: usize) -> bool {
        self.beats(x, y)
    }

    fn from_predicate(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut beats = vec![false; n * n];
        for x in 0..n {
            for y in x + 1..n {
                if f(x, y) {
                    beats[x * n + y] = true;
                } else {
                    beats[y * n + x] = true;
                }
            }
        }
        Ok(Tournament { ground, beats })
    }
}

/// A 2-structure: an edge coloring of ordered pairs. The diagonal is ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStructure {
    ground: GroundSet,
    color: Vec<u32>,
}

impl TwoStructure {
    pub fn from_matrix(n: usize, color: Vec<u32>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if color.len() != n * n {
            return Err(Error::InvalidStructure("color matrix has wrong shape".into()));
        }
        Ok(TwoStructure { ground, color })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        let mut color = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    color[x * n + y] = f(x, y);
                }
            }
        }
        Self::from_matrix(n, color)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn color(&self, x: usize, y: usize) -> u32 {
        self.color[x * self.ground.len() + y]
    }

    pub fn with_ground(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidStructure("label count does not match size".into()));
        }
        self.ground = ground;
        Ok(self)
    }
}

impl From<&UndirectedGraph> for TwoStructure {
    fn from(g: &UndirectedGraph) -> Self {
        TwoStructure::from_fn(g.len(), |x, y| g.adjacent(x, y) as u32).expect("valid graph")
    }
}

impl From<&Tournament> for TwoStructure {
    fn from(t: &Tournament) -> Self {
        TwoStructure::from_fn(t.len(), |x, y| t.beats(x, y) as u32).expect("valid tournament")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_rejects_diagonal() {
        let err = Tournament::from_matrix(2, vec![true, false, true, false]).unwrap_err();
        assert_eq!(err, Error::InvalidStructure("diagonal must be 0".into()));
    }

    #[test]
    fn circulant_five() {
        let t = Tournament::circulant(5, &[1, 2]).unwrap();
        assert!(t.beats(0, 1) && t.beats(0, 2) && t.beats(3, 0) && t.beats(4, 0));
        assert!(Tournament::circulant(4, &[1, 2]).is_err());
    }

    #[test]
    fn labels_must_be_unique() {
        assert!(GroundSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(GroundSet::new(0).is_err());
    }

    #[test]
    fn relabel_roundtrip() {
        let t = Tournament::circulant(5, &[1, 2]).unwrap();
        let sigma = [2, 0, 4, 1, 3];
        let r = t.relabel(&sigma);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(t.beats(x, y), r.beats(sigma[x], sigma[y]));
            }
        }
    }
}
