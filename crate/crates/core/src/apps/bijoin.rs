use serde::Serialize;

use crate::error::Result;
use crate::relation::membership;
use crate::structures::ArcStructure;

/// Certificate that `set` is a bijoin: the outside splits into `c` and `d`,
/// and every member sends arcs to exactly one of them.
///
/// `c` is the arc-neighborhood of the smallest member on the outside.
/// `sees_c[i]` tells whether `set[i]` has arcs to exactly `c` (otherwise to
/// exactly `d`). For tournaments a member seeing `c` beats `c` and loses to
/// `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijoinWitness {
    pub set: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub sees_c: Vec<bool>,
}

impl BijoinWitness {
    /// Re-checks the certificate against `s` from scratch.
    pub fn is_valid_for<S: ArcStructure>(&self, s: &S) -> bool {
        let n = s.len();
        let inside = membership(n, &self.set);
        let mut outside: Vec<usize> = self.c.iter().chain(&self.d).copied().collect();
        outside.sort_unstable();
        let expected: Vec<usize> = (0..n).filter(|&x| !inside[x]).collect();
        if outside != expected || self.sees_c.len() != self.set.len() {
            return false;
        }
        self.set.iter().zip(&self.sees_c).all(|(&u, &to_c)| {
            let (yes, no) = if to_c { (&self.c, &self.d) } else { (&self.d, &self.c) };
            yes.iter().all(|&y| s.arc(u, y)) && no.iter().all(|&y| !s.arc(u, y))
        })
    }
}

/// A witness when `set` is a bijoin of `s`, `None` otherwise.
pub fn bijoin_witness<S: ArcStructure>(s: &S, set: &[usize]) -> Result<Option<BijoinWitness>> {
    let n = s.len();
    for &x in set {
        s.ground().check(x)?;
    }
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let inside = membership(n, &members);
    let outside: Vec<usize> = (0..n).filter(|&x| !inside[x]).collect();
    let Some(&u0) = members.first() else {
        return Ok(Some(BijoinWitness { set: members, c: Vec::new(), d: outside, sees_c: Vec::new() }));
    };
    let (c, d): (Vec<usize>, Vec<usize>) = outside.iter().partition(|&&y| s.arc(u0, y));
    let mut sees_c = Vec::with_capacity(members.len());
    for &u in &members {
        let same = outside.iter().filter(|&&y| s.arc(u, y) == s.arc(u0, y)).count();
        if same == outside.len() {
            sees_c.push(true);
        } else if same == 0 {
            sees_c.push(false);
        } else {
            return Ok(None);
        }
    }
    Ok(Some(BijoinWitness { set: members, c, d, sees_c }))
}
