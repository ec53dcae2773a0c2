//! Zipping: quotients by triples `{p; q, r}` under the locality conditions.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{with_pool, Limits, Meter, OutOfBudget, Rejection, Search, Verified};
use crate::cylinders::quotient_labeled;
use crate::error::{Error, Result};
use crate::poset::{find_isomorphism, IsoMemo, Poset};

/// Indices into the poset before the step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZipStep {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

/// What a zipping should end at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZipGoal {
    Singleton,
    /// A poset with a least element.
    DualCone,
    Isomorphic(Poset),
}

impl ZipGoal {
    fn reached(&self, p: &Poset) -> bool {
        match self {
            ZipGoal::Singleton => p.len() == 1,
            ZipGoal::DualCone => p.least().is_some(),
            ZipGoal::Isomorphic(t) => t.len() == p.len() && find_isomorphism(p, t).is_some(),
        }
    }

    /// Every zip removes two elements, so a size target fixes the parity.
    fn unreachable(&self, p: &Poset) -> bool {
        let target = match self {
            ZipGoal::Singleton => 1,
            ZipGoal::DualCone => return p.is_empty(),
            ZipGoal::Isomorphic(t) => t.len(),
        };
        p.len() < target || (p.len() - target) % 2 == 1
    }
}

fn fail(p: &Poset, s: &ZipStep, reason: impl Into<String>) -> Error {
    let name = |i: usize| {
        if i < p.len() {
            p.label(i).to_string()
        } else {
            format!("#{i}")
        }
    };
    Error::ZipConditions {
        p: name(s.p),
        q: name(s.q),
        r: name(s.r),
        reason: reason.into(),
    }
}

/// Checks the step conditions: `p` covers `q ≠ r`, every other `s < p` lies
/// below both `q` and `r`, and every common upper bound of `q` and `r` is `≥ p`.
pub fn check_zip_step(p: &Poset, s: &ZipStep) -> Result<()> {
    let n = p.len();
    if s.p >= n || s.q >= n || s.r >= n {
        return Err(fail(p, s, "index out of range"));
    }
    if s.q == s.r {
        return Err(fail(p, s, "q and r coincide"));
    }
    if !p.covers(s.q, s.p) || !p.covers(s.r, s.p) {
        return Err(fail(p, s, "p does not cover both q and r"));
    }
    for x in p.below(s.p).iter() {
        if x != s.q && x != s.r && !(p.lt(x, s.q) && p.lt(x, s.r)) {
            return Err(fail(
                p,
                s,
                format!("{} < p is not below both q and r", p.label(x)),
            ));
        }
    }
    let common = p.above(s.q).intersection(p.above(s.r));
    if let Some(x) = common.iter().find(|&x| !p.le(s.p, x)) {
        return Err(fail(
            p,
            s,
            format!("{} is above q and r but not above p", p.label(x)),
        ));
    }
    Ok(())
}

/// `⌊p⌋ ∖ {p, q, r}` equals both `⌊q⌋ ∖ {q}` and `⌊r⌋ ∖ {r}`, i.e. `⌊p⌋` is
/// the shape `Q + {q, r, p}` with `{q, r, p}` a copy of the interval.
pub fn is_q_plus_interval(p: &Poset, s: &ZipStep) -> bool {
    let mut rest = p.below(s.p).clone();
    rest.remove(s.q);
    rest.remove(s.r);
    p.covers(s.q, s.p)
        && p.covers(s.r, s.p)
        && !p.comparable(s.q, s.r)
        && rest == *p.below(s.q)
        && rest == *p.below(s.r)
}

/// Performs the step; the merged element keeps `q`'s label. Returns the
/// quotient and the map from old to new indices.
pub fn elementary_zip(p: &Poset, s: &ZipStep) -> Result<(Poset, Vec<usize>)> {
    check_zip_step(p, s)?;
    debug_assert!(is_q_plus_interval(p, s));
    let m = crate::poset::Mask::from_indices(p.len(), [s.p, s.q, s.r]);
    quotient_labeled(p, &m, p.label(s.q))
}

/// All valid steps, by `p` in linear-extension order. An element with a
/// site has exactly two lower covers, so there is at most one per `p`.
pub fn zip_sites(p: &Poset) -> Vec<ZipStep> {
    let mut out = Vec::new();
    for x in p.linear_extension() {
        let lc = p.lower_covers(x);
        if lc.len() != 2 {
            continue;
        }
        let s = ZipStep {
            p: x,
            q: lc[0].min(lc[1]),
            r: lc[0].max(lc[1]),
        };
        if check_zip_step(p, &s).is_ok() {
            out.push(s);
        }
    }
    out
}

/// Carries a zipping of `p` over to `other`, where `pos[x]` is the element
/// of `other` matching `x`. Fails if `pos` is not an isomorphism or a step is invalid.
pub fn transport_zipping(
    p: &Poset,
    other: &Poset,
    pos: &[usize],
    steps: &[ZipStep],
) -> Result<Vec<ZipStep>> {
    let iso = crate::poset::MonotoneMap::new(p.clone(), other.clone(), pos.to_vec())?;
    if !iso.is_isomorphism() {
        return Err(Error::NotIsomorphism("transport map".into()));
    }
    let (mut a, mut b, mut pos) = (p.clone(), other.clone(), pos.to_vec());
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        let t = ZipStep {
            p: pos[s.p],
            q: pos[s.q],
            r: pos[s.r],
        };
        let (a2, ca) = elementary_zip(&a, s)?;
        let (b2, cb) = elementary_zip(&b, &t)?;
        let mut next = vec![0; a2.len()];
        for x in 0..a.len() {
            next[ca[x]] = cb[pos[x]];
        }
        out.push(t);
        (a, b, pos) = (a2, b2, next);
    }
    Ok(out)
}

/// Applies every step; returns the final poset.
pub fn replay_zipping(p: &Poset, steps: &[ZipStep]) -> Result<Poset> {
    let mut cur = p.clone();
    for s in steps {
        cur = elementary_zip(&cur, s)?.0;
    }
    Ok(cur)
}

pub fn verify_zipping(p: &Poset, steps: &[ZipStep], goal: &ZipGoal) -> Verified {
    let mut cur = p.clone();
    for (i, s) in steps.iter().enumerate() {
        let before = cur.len();
        cur = elementary_zip(&cur, s)
            .map_err(|e| Rejection::new(format!("step {i}: {e}")))?
            .0;
        if cur.len() + 2 != before {
            return Err(Rejection::new(format!(
                "step {i}: element count went from {before} to {}",
                cur.len()
            )));
        }
    }
    if goal.reached(&cur) {
        Ok(())
    } else {
        Err(Rejection::new(format!(
            "replay ends at {} elements, not at the goal",
            cur.len()
        )))
    }
}

pub fn find_zipping(p: &Poset, goal: &ZipGoal) -> Search<Vec<ZipStep>> {
    find_zipping_with(p, goal, &Limits::default())
}

/// Depth-first over sites with a table of isomorphism classes already known
/// not to reach the goal.
pub fn find_zipping_with(p: &Poset, goal: &ZipGoal, limits: &Limits) -> Search<Vec<ZipStep>> {
    let meter = Meter::new(limits.budget);
    let dead = Mutex::new(IsoMemo::new());
    let r = with_pool(limits.jobs, || dfs(&meter, &dead, p, goal, limits.jobs > 1));
    meter.finish(r)
}

fn dfs(
    meter: &Meter,
    dead: &Mutex<IsoMemo<()>>,
    p: &Poset,
    goal: &ZipGoal,
    parallel: bool,
) -> std::result::Result<Option<Vec<ZipStep>>, OutOfBudget> {
    meter.tick()?;
    if goal.reached(p) {
        return Ok(Some(Vec::new()));
    }
    if goal.unreachable(p) || dead.lock().expect("memo lock").get(p, None).is_some() {
        return Ok(None);
    }
    let sites = zip_sites(p);
    let attempt = |s: &ZipStep| -> std::result::Result<Option<Vec<ZipStep>>, OutOfBudget> {
        let (next, _) = elementary_zip(p, s).expect("site was checked");
        Ok(dfs(meter, dead, &next, goal, false)?.map(|mut rest| {
            rest.insert(0, *s);
            rest
        }))
    };
    let found = if parallel {
        use rayon::prelude::*;
        sites
            .par_iter()
            .map(attempt)
            .find_map_any(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
            .unwrap_or(Ok(None))?
    } else {
        let mut hit = None;
        for s in &sites {
            if let Some(seq) = attempt(s)? {
                hit = Some(seq);
                break;
            }
        }
        hit
    };
    if found.is_none() {
        dead.lock().expect("memo lock").insert(p.clone(), None, ());
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{boundary_simplex, cube, simplex};

    fn step(p: &Poset, a: &str, b: &str, c: &str) -> ZipStep {
        ZipStep {
            p: p.id(a).unwrap(),
            q: p.id(b).unwrap(),
            r: p.id(c).unwrap(),
        }
    }

    #[test]
    fn edge_zips_to_a_point() {
        let d = simplex(&["a", "b"]);
        let (z, map) = elementary_zip(&d, &step(&d, "ab", "a", "b")).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.label(0), "a");
        assert!(map.iter().all(|&c| c == 0));
    }

    #[test]
    fn triangle_boundary_zips_to_a_digon() {
        let d = boundary_simplex(&["a", "b", "c"]);
        let s = step(&d, "ab", "a", "b");
        assert!(is_q_plus_interval(&d, &s));
        let (z, _) = elementary_zip(&d, &s).unwrap();
        assert_eq!(z.len(), 4);
        // Two vertices, each below both edges.
        assert_eq!(z.minimal().len(), 2);
        assert_eq!(z.maximal().len(), 2);
        assert_eq!(z.relation_count(), 4);
        assert!(zip_sites(&z).is_empty());
        assert_eq!(find_zipping(&d, &ZipGoal::Singleton), Search::Refuted);
    }

    #[test]
    fn square_boundary_edge_is_rejected() {
        // In I² the edge x0 covers the vertices 00 and 01... read off the conditions.
        let sq = cube(&["x", "y"]);
        let sites = zip_sites(&sq);
        // The top cell covers four edges; edges cover two vertices each and
        // pass both conditions since no element sits above two vertices but not the edge.
        assert_eq!(sites.len(), 4);
        for s in &sites {
            assert_eq!(sq.lower_covers(s.p).len(), 2);
        }
    }

    #[test]
    fn bad_steps_are_rejected() {
        let d = simplex(&["a", "b", "c"]);
        // abc covers three edges.
        let e = check_zip_step(&d, &step(&d, "abc", "ab", "ac")).unwrap_err();
        assert!(matches!(e, Error::ZipConditions { .. }));
        // a and b have the common upper bound abc ≥ ab, fine; but ab, ac do not cover-zip.
        assert!(check_zip_step(&d, &step(&d, "ab", "a", "c")).is_err());
        assert!(check_zip_step(&d, &step(&d, "ab", "a", "a")).is_err());
    }

    #[test]
    fn triangle_zips_to_a_point() {
        let d = simplex(&["a", "b", "c"]);
        let seq = find_zipping(&d, &ZipGoal::Singleton).found().unwrap();
        assert_eq!(seq.len(), 3);
        assert!(verify_zipping(&d, &seq, &ZipGoal::Singleton).is_ok());
        assert!(verify_zipping(&d, &seq[..2], &ZipGoal::Singleton).is_err());
    }

    #[test]
    fn goals_and_parity() {
        let d = simplex(&["a", "b"]);
        assert!(ZipGoal::DualCone.reached(&d.dual()));
        assert!(ZipGoal::Singleton.unreachable(&boundary_simplex(&["a", "b", "c", "d"])));
        let target = boundary_simplex(&["a", "b", "c"]);
        assert!(find_zipping(&target, &ZipGoal::Isomorphic(target.clone()))
            .found()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn transport_follows_a_permutation() {
        let d = simplex(&["a", "b", "c"]);
        let steps = find_zipping(&d, &ZipGoal::Singleton).found().unwrap();
        let order: Vec<usize> = (0..d.len()).rev().collect();
        let other = d.permuted(&order);
        let pos: Vec<usize> = (0..d.len()).map(|x| d.len() - 1 - x).collect();
        let moved = transport_zipping(&d, &other, &pos, &steps).unwrap();
        assert!(verify_zipping(&other, &moved, &ZipGoal::Singleton).is_ok());
        assert!(transport_zipping(&d, &other, &(0..d.len()).collect::<Vec<_>>(), &steps).is_err());
    }
}
