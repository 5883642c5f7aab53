//! Partition refinement towards the coarsest umodule partition `MU(S)`.
//!
//! Two implementations are provided. [`mu_naive`] runs the plain marking
//! loop, recomputing full outside signatures at every step. [`mu_hopcroft`]
//! keeps, per element, a naming of its outside classes that only ever grows,
//! so a fragment is re-examined only on the elements its part just lost.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::relation::{membership, HomogeneousRelation, SENTINEL};

/// Ordered partition of the ground set with one mark per part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
    marks: Vec<bool>,
}

impl Partition {
    /// Validates disjointness, coverage of `0..n` and non-empty parts. Parts
    /// are stored sorted; their order is kept.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut parts = parts;
        for p in parts.iter_mut() {
            if p.is_empty() {
                return Err(Error::InvalidStructure("empty part".into()));
            }
            p.sort_unstable();
            for &x in p.iter() {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, size: n });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidStructure(format!("element {x} in two parts")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidStructure("parts do not cover the ground set".into()));
        }
        let marks = vec![false; parts.len()];
        Ok(Partition { parts, marks })
    }

    /// `{S, X \ S}` with both parts unmarked.
    pub fn cut(n: usize, s: &[usize]) -> Result<Self> {
        let inside = membership_checked(n, s)?;
        let rest: Vec<usize> = (0..n).filter(|&x| !inside[x]).collect();
        if s.is_empty() || rest.is_empty() {
            return Err(Error::TrivialCut);
        }
        Partition::new(n, vec![s.to_vec(), rest])
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marks[i]
    }

    pub fn mark(&mut self, i: usize) {
        self.marks[i] = true;
    }

    pub fn index_of(&self, part: &[usize]) -> Option<usize> {
        let mut sorted = part.to_vec();
        sorted.sort_unstable();
        self.parts.iter().position(|p| *p == sorted)
    }

    /// Parts ordered by smallest element; marks are dropped (all set).
    pub fn canonical(&self) -> Partition {
        let parts = crate::oracle::canonical_parts(self.parts.clone());
        let marks = vec![true; parts.len()];
        Partition { parts, marks }
    }

    /// Every part of `self` lies inside a part of `other`.
    pub fn is_thinner_or_equal(&self, other: &Partition) -> bool {
        let n: usize = self.parts.iter().map(Vec::len).sum();
        let mut owner = vec![usize::MAX; n];
        for (i, p) in other.parts.iter().enumerate() {
            for &x in p {
                owner[x] = i;
            }
        }
        self.parts.iter().all(|p| p.iter().all(|&x| owner[x] == owner[p[0]]))
    }
}

/// Restriction of `H_x` to `X \ C`, normalized. Equal signatures for
/// `x, y in C` is exactly the relation `R_C(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutsideSignature(pub Vec<u32>);

pub fn signature(h: &HomogeneousRelation, part: &[usize], x: usize) -> Result<OutsideSignature> {
    let n = h.len();
    let inside = membership_checked(n, part)?;
    if !inside.get(x).copied().unwrap_or(false) {
        return Err(Error::InvalidStructure(format!("element {x} is not in the part")));
    }
    let outside: Vec<usize> = (0..n).filter(|&y| !inside[y]).collect();
    if outside.is_empty() {
        return Err(Error::TrivialCut);
    }
    let mut scratch = vec![SENTINEL; n];
    Ok(OutsideSignature(h.signature_on(x, &outside, &mut scratch)))
}

/// Replaces part `index` by the classes of `R_C`. The first fragment (the one
/// holding the smallest element) takes the old slot; the others are appended.
/// Fragments are unmarked; other parts keep their marks.
pub fn refine(h: &HomogeneousRelation, p: &Partition, index: usize) -> Result<Partition> {
    let part = p.parts.get(index).ok_or(Error::NotAPart)?;
    let fragments = split_part(h, part);
    let mut out = p.clone();
    if fragments.len() == 1 {
        return Ok(out);
    }
    let mut it = fragments.into_iter();
    out.parts[index] = it.next().expect("at least one fragment");
    out.marks[index] = false;
    for f in it {
        out.parts.push(f);
        out.marks.push(false);
    }
    Ok(out)
}

/// Classes of `R_C`, sorted internally and ordered by smallest element.
fn split_part(h: &HomogeneousRelation, part: &[usize]) -> Vec<Vec<usize>> {
    let n = h.len();
    let inside = membership(n, part);
    let outside: Vec<usize> = (0..n).filter(|&y| !inside[y]).collect();
    if part.len() <= 1 || outside.len() <= 1 {
        return vec![part.to_vec()];
    }
    let width = outside.len();
    let mut sigs = Vec::with_capacity(part.len() * width);
    let mut scratch = vec![SENTINEL; n];
    let mut buf = Vec::with_capacity(width);
    for &x in part {
        h.signature_into(x, &outside, &mut scratch, &mut buf);
        sigs.extend_from_slice(&buf);
    }
    let mut buckets = vec![Vec::new(); n];
    group_rows(part, &sigs, width, &mut buckets)
}

/// Groups `members` by equal rows of the `members.len() x width` matrix
/// `sigs`, bucket sorting one column at a time. Values must be `< buckets.len()`.
/// Groups keep member order and are returned ordered by smallest element.
fn group_rows(members: &[usize], sigs: &[u32], width: usize, buckets: &mut [Vec<u32>]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<u32>> = vec![(0..members.len() as u32).collect()];
    let mut touched = Vec::new();
    for pos in 0..width {
        if groups.iter().all(|g| g.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(groups.len());
        for g in groups {
            if g.len() == 1 {
                next.push(g);
                continue;
            }
            for &i in &g {
                let v = sigs[i as usize * width + pos] as usize;
                if buckets[v].is_empty() {
                    touched.push(v);
                }
                buckets[v].push(i);
            }
            for v in touched.drain(..) {
                next.push(std::mem::take(&mut buckets[v]));
            }
        }
        groups = next;
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_iter()
        .map(|g| {
            let mut v: Vec<usize> = g.into_iter().map(|i| members[i as usize]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort_unstable_by_key(|g| g[0]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MuStrategy {
    Naive,
    #[default]
    Hopcroft,
}

/// `MU(S)`, canonical form.
pub fn mu(h: &HomogeneousRelation, s: &[usize]) -> Result<Partition> {
    mu_with(h, s, MuStrategy::default())
}

pub fn mu_with(h: &HomogeneousRelation, s: &[usize], strategy: MuStrategy) -> Result<Partition> {
    match strategy {
        MuStrategy::Naive => mu_naive(h, s),
        MuStrategy::Hopcroft => mu_hopcroft(h, s),
    }
}

/// The marking loop: refine the first unmarked part; mark it if nothing
/// changes, otherwise unmark everything and start over.
pub fn mu_naive(h: &HomogeneousRelation, s: &[usize]) -> Result<Partition> {
    let mut p = Partition::cut(h.len(), s)?;
    let mut queue: VecDeque<usize> = (0..p.len()).collect();
    while let Some(c) = queue.pop_front() {
        let next = refine(h, &p, c)?;
        if next.len() == p.len() {
            p.mark(c);
        } else {
            p = next;
            p.marks.iter_mut().for_each(|m| *m = false);
            queue = (0..p.len()).collect();
        }
    }
    debug_assert!(p.marks.iter().all(|&m| m));
    Ok(p.canonical())
}

/// Incremental refinement.
///
/// Every element `x` names each class of its outside partition after the
/// first outside element (in insertion order) that fell into it. Members of a
/// common part have seen the same insertion order, so equal partitions give
/// equal names. When a part `C` splits, a fragment `F` only has to name the
/// elements of `C \ F`; an element pays at most the total shrinkage of its
/// part, which keeps the whole run quadratic on top of the initial grouping.
pub fn mu_hopcroft(h: &HomogeneousRelation, s: &[usize]) -> Result<Partition> {
    let n = h.len();
    let cut = Partition::cut(n, s)?;
    let mut names = vec![SENTINEL; n * n];
    let mut buckets = vec![Vec::new(); n];
    let mut done: Vec<Vec<usize>> = Vec::new();
    // (fragment, elements newly outside it)
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();

    for (side, other) in [(&cut.parts[0], &cut.parts[1]), (&cut.parts[1], &cut.parts[0])] {
        stack.push((side.clone(), other.clone()));
    }

    let mut sigs = Vec::new();
    while let Some((part, added)) = stack.pop() {
        if part.len() <= 1 {
            done.push(part);
            continue;
        }
        let width = added.len();
        sigs.clear();
        for &x in &part {
            let row = h.row(x);
            let named = &mut names[x * n..(x + 1) * n];
            for &a in &added {
                let c = row[a] as usize;
                if named[c] == SENTINEL {
                    named[c] = a as u32;
                }
                sigs.push(named[c]);
            }
        }
        let fragments = group_rows(&part, &sigs, width, &mut buckets);
        if fragments.len() == 1 {
            done.push(part);
            continue;
        }
        for f in &fragments {
            let inside = membership(n, f);
            let lost: Vec<usize> = part.iter().copied().filter(|&y| !inside[y]).collect();
            stack.push((f.clone(), lost));
        }
    }
    let parts = crate::oracle::canonical_parts(done);
    let marks = vec![true; parts.len()];
    Ok(Partition { parts, marks })
}

fn membership_checked(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    if let Some(&x) = set.iter().find(|&&x| x >= n) {
        return Err(Error::ElementOutOfRange { element: x, size: n });
    }
    Ok(membership(n, set))
}
