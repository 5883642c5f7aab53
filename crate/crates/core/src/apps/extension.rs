use serde::Serialize;

use crate::structures::ArcStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    Twin,
    Antitwin,
}

/// Adds `vertex` as a twin or antitwin of `anchor`. The arcs between the two
/// are not implied by the kind and are recorded explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionStep {
    pub kind: ExtensionKind,
    pub anchor: usize,
    pub vertex: usize,
    pub vertex_to_anchor: bool,
    pub anchor_to_vertex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionSequence {
    pub start: usize,
    pub steps: Vec<ExtensionStep>,
}

impl ExtensionSequence {
    /// Rebuilds the structure on `n` vertices by applying the steps in order.
    pub fn replay<S: ArcStructure>(&self, n: usize) -> S {
        let mut arcs = vec![false; n * n];
        let mut present = vec![self.start];
        for st in &self.steps {
            let (a, v) = (st.anchor, st.vertex);
            let flip = st.kind == ExtensionKind::Antitwin;
            for &z in &present {
                if z != a {
                    arcs[v * n + z] = arcs[a * n + z] ^ flip;
                    arcs[z * n + v] = arcs[z * n + a] ^ flip;
                }
            }
            arcs[v * n + a] = st.vertex_to_anchor;
            arcs[a * n + v] = st.anchor_to_vertex;
            present.push(v);
        }
        S::from_predicate(n, |x, y| arcs[x * n + y]).expect("n >= 1")
    }
}

/// Builds `s` back from one vertex by twin and antitwin extensions, if
/// possible. Pairs are found by keeping, for every pair of live vertices,
/// the number of live vertices that see them alike and that see them
/// oppositely in both directions.
pub fn extension_sequence<S: ArcStructure>(s: &S) -> Option<ExtensionSequence> {
    let n = s.len();
    let alike = |x: usize, y: usize, z: usize| s.arc(x, z) == s.arc(y, z) && s.arc(z, x) == s.arc(z, y);
    let opposite = |x: usize, y: usize, z: usize| s.arc(x, z) != s.arc(y, z) && s.arc(z, x) != s.arc(z, y);
    let mut twin = vec![0u32; n * n];
    let mut anti = vec![0u32; n * n];
    for x in 0..n {
        for y in x + 1..n {
            for z in (0..n).filter(|&z| z != x && z != y) {
                twin[x * n + y] += alike(x, y, z) as u32;
                anti[x * n + y] += opposite(x, y, z) as u32;
            }
        }
    }
    let mut alive = vec![true; n];
    let mut live = n;
    let mut removed = Vec::with_capacity(n.saturating_sub(1));
    while live > 1 {
        let need = (live - 2) as u32;
        let mut found = None;
        'scan: for kind in [ExtensionKind::Twin, ExtensionKind::Antitwin] {
            let counts = if kind == ExtensionKind::Twin { &twin } else { &anti };
            for x in (0..n).filter(|&x| alive[x]) {
                for y in (x + 1..n).filter(|&y| alive[y]) {
                    if counts[x * n + y] == need {
                        found = Some((kind, x, y));
                        break 'scan;
                    }
                }
            }
        }
        let (kind, x, y) = found?;
        removed.push(ExtensionStep {
            kind,
            anchor: x,
            vertex: y,
            vertex_to_anchor: s.arc(y, x),
            anchor_to_vertex: s.arc(x, y),
        });
        alive[y] = false;
        live -= 1;
        for a in (0..n).filter(|&a| alive[a]) {
            for b in (a + 1..n).filter(|&b| alive[b]) {
                twin[a * n + b] -= alike(a, b, y) as u32;
                anti[a * n + b] -= opposite(a, b, y) as u32;
            }
        }
    }
    let start = (0..n).find(|&x| alive[x]).unwrap_or(0);
    removed.reverse();
    Some(ExtensionSequence { start, steps: removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Tournament, UndirectedGraph};

    #[test]
    fn single_vertex_is_empty() {
        let t = Tournament::transitive(1).unwrap();
        let seq = extension_sequence(&t).unwrap();
        assert!(seq.steps.is_empty());
        assert_eq!(seq.start, 0);
    }

    #[test]
    fn three_cycle_replays() {
        let t = Tournament::circulant(3, &[1]).unwrap();
        let seq = extension_sequence(&t).unwrap();
        assert_eq!(seq.steps.len(), 2);
        assert_eq!(seq.replay::<Tournament>(3), t);
    }

    #[test]
    fn out_diamond_refused() {
        // 3 beats the 3-cycle 0 -> 1 -> 2 -> 0
        let t = Tournament::from_predicate(4, |x, y| match (x, y) {
            (3, _) => true,
            (_, 3) => false,
            _ => (x + 1) % 3 == y,
        })
        .unwrap();
        assert!(extension_sequence(&t).is_none());
    }

    #[test]
    fn graphs_replay() {
        let g = UndirectedGraph::path(4).unwrap();
        let seq = extension_sequence(&g).unwrap();
        assert_eq!(seq.replay::<UndirectedGraph>(4), g);
        assert!(extension_sequence(&UndirectedGraph::cycle(5).unwrap()).is_none());
    }
}
