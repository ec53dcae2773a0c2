//! Poset collapses `P = Q ∪ ⌊σ⌋` with `Q ∩ ⌊σ⌋` collapsible, and their
//! lift to simplicial collapses of the barycentric subdivision.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::peel::{contractible_shadow, Goal, Peel, Peeler, Rules};
use super::{mask_from, with_pool, Limits, Meter, Rejection, Search, Verified};
use crate::homology::euler_characteristic_of;
use crate::ops::chains;
use crate::poset::{Mask, Poset};
use crate::recognize::{Verdict, Witness};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub steps: Vec<CollapseStep>,
}

/// Removes `⌊sigma⌋` except for `meet`, which collapses to a point by `meet_collapse`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub sigma: usize,
    pub meet: Vec<usize>,
    pub meet_collapse: CollapseSequence,
}

impl CollapseSequence {
    fn from_peels(peels: Vec<Peel>) -> Self {
        CollapseSequence {
            steps: peels
                .into_iter()
                .map(|pl| CollapseStep {
                    sigma: pl.sigma,
                    meet: pl.meet,
                    meet_collapse: CollapseSequence::from_peels(pl.sub),
                })
                .collect(),
        }
    }
}

struct CollapseRules;

impl Rules for CollapseRules {
    fn sub_goal(&self, _: &Goal) -> Goal {
        Goal::Point
    }

    fn admissible(&self, _: &Poset, _: &Mask, _: usize, y: &Mask) -> bool {
        !y.is_empty()
    }

    fn may_reach(&self, p: &Poset, s: &Mask, goal: &Goal) -> bool {
        match goal {
            Goal::Onto(t) => {
                !t.is_empty() && euler_characteristic_of(p, s) == euler_characteristic_of(p, t)
            }
            _ => contractible_shadow(p, s),
        }
    }
}

fn search(p: &Poset, goal: Goal, limits: &Limits) -> Search<CollapseSequence> {
    let meter = Meter::new(limits.budget);
    let peeler = Peeler::new(&CollapseRules, &meter);
    let r = with_pool(limits.jobs, || peeler.run(p, &p.full_mask(), &goal));
    match meter.finish(r) {
        Search::Refuted if peeler.truncated() => Search::Exhausted(meter.used()),
        s => s.map(CollapseSequence::from_peels),
    }
}

/// Collapse of `p` onto the closed subposet `target`.
pub fn find_collapse(p: &Poset, target: &Mask) -> Search<CollapseSequence> {
    find_collapse_with(p, target, &Limits::default())
}

pub fn find_collapse_with(p: &Poset, target: &Mask, limits: &Limits) -> Search<CollapseSequence> {
    if target.universe() != p.len() || !p.is_closed(target) {
        return Search::Refuted;
    }
    search(p, Goal::Onto(target.clone()), limits)
}

pub fn find_collapse_to_point(p: &Poset) -> Search<CollapseSequence> {
    find_collapse_to_point_with(p, &Limits::default())
}

pub fn find_collapse_to_point_with(p: &Poset, limits: &Limits) -> Search<CollapseSequence> {
    search(p, Goal::Point, limits)
}

pub fn is_collapsible_poset(p: &Poset) -> Verdict {
    match find_collapse_to_point(p) {
        Search::Found(_) => Verdict::Yes(Witness::Certificate("collapse".into())),
        Search::Refuted => Verdict::no_note("no collapse reaches a point"),
        Search::Exhausted(n) => {
            Verdict::Unknown(format!("search budget exhausted after {n} nodes"))
        }
    }
}

enum End<'a> {
    Point,
    Onto(&'a Mask),
}

fn replay(
    p: &Poset,
    start: Mask,
    seq: &CollapseSequence,
    end: End,
    path: &str,
) -> Result<Mask, Rejection> {
    let mut cur = start;
    for (i, st) in seq.steps.iter().enumerate() {
        let at = format!("{path}{i}");
        let s = st.sigma;
        if s >= p.len() || !cur.contains(s) {
            return Err(Rejection::new(format!(
                "step {at}: cone apex is not present"
            )));
        }
        if p.above(s).intersects(&cur) {
            return Err(Rejection::new(format!(
                "step {at}: {} is not maximal",
                p.label(s)
            )));
        }
        let meet = mask_from(p, &st.meet)?;
        if !meet.is_subset(p.below(s)) || !meet.is_subset(&cur) {
            return Err(Rejection::new(format!(
                "step {at}: kept part is not in the boundary of {}",
                p.label(s)
            )));
        }
        if !p.is_closed(&meet) {
            return Err(Rejection::new(format!(
                "step {at}: kept part is not closed"
            )));
        }
        let q = cur.difference(&p.down_set(s)).union(&meet);
        if let Some(x) = q.iter().find(|&x| !p.below(x).is_subset(&q)) {
            let y = p.below(x).difference(&q).first().expect("missing element");
            return Err(Rejection::new(format!(
                "step {at}: remainder needs {} below {}",
                p.label(y),
                p.label(x)
            )));
        }
        if meet.is_empty() {
            return Err(Rejection::new(format!(
                "step {at}: empty intersection is not collapsible"
            )));
        }
        replay(p, meet, &st.meet_collapse, End::Point, &format!("{at}."))?;
        cur = q;
    }
    match end {
        End::Point if cur.count() == 1 => Ok(cur),
        End::Onto(t) if cur == *t => Ok(cur),
        _ => Err(Rejection::new(format!(
            "collapse {path}ends at {} elements, not at the goal",
            cur.count()
        ))),
    }
}

pub fn verify_collapse(p: &Poset, target: &Mask, seq: &CollapseSequence) -> Verified {
    replay(p, p.full_mask(), seq, End::Onto(target), "").map(|_| ())
}

pub fn verify_collapse_to_point(p: &Poset, seq: &CollapseSequence) -> Verified {
    replay(p, p.full_mask(), seq, End::Point, "").map(|_| ())
}

/// Elementary simplicial collapses of `P♭`: pairs `(α, β)` of indices into
/// `barycentric(P)`, with `α` a free face of `β`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialCollapse {
    pub pairs: Vec<(usize, usize)>,
}

/// Replays free-face removals on a simplicial face poset and requires a single vertex at the end.
pub fn verify_simplicial_collapse(k: &Poset, c: &SimplicialCollapse) -> Verified {
    let mut cur = k.full_mask();
    for (i, &(a, b)) in c.pairs.iter().enumerate() {
        if a >= k.len() || b >= k.len() || !cur.contains(a) || !cur.contains(b) {
            return Err(Rejection::new(format!(
                "pair {i}: face already removed or out of range"
            )));
        }
        if !k.covers(a, b) {
            return Err(Rejection::new(format!(
                "pair {i}: {} is not a facet of {}",
                k.label(a),
                k.label(b)
            )));
        }
        let cofaces = k.above(a).intersection(&cur);
        if cofaces.count() != 1 {
            return Err(Rejection::new(format!(
                "pair {i}: {} is not a free face",
                k.label(a)
            )));
        }
        cur.remove(a);
        cur.remove(b);
    }
    if cur.count() == 1 {
        Ok(())
    } else {
        Err(Rejection::new(format!(
            "simplicial collapse ends at {} faces",
            cur.count()
        )))
    }
}

/// Chains of `⌊σ⌋ ∖ σ` as sorted index sets.
fn chains_below(p: &Poset, sigma: usize) -> Vec<Vec<usize>> {
    let (sub, idx) = p.induced(p.below(sigma));
    chains(&sub)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|i| idx[i]).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

fn with(mut c: Vec<usize>, x: usize) -> Vec<usize> {
    c.push(x);
    c.sort_unstable();
    c
}

/// Pairs of chains collapsing `Δ(start)` onto the final point, which is returned.
fn lift(
    p: &Poset,
    start: &Mask,
    seq: &CollapseSequence,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) -> usize {
    let mut cur = start.clone();
    for st in &seq.steps {
        let s = st.sigma;
        let y = Mask::from_indices(p.len(), st.meet.iter().copied());
        let mut outside: Vec<Vec<usize>> = chains_below(p, s)
            .into_iter()
            .filter(|c| !c.iter().all(|&x| y.contains(x)))
            .collect();
        outside.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        for tau in outside {
            let up = with(tau.clone(), s);
            out.push((tau, up));
        }
        let mut inner = Vec::new();
        let apex = lift(p, &y, &st.meet_collapse, &mut inner);
        for (a, b) in inner {
            out.push((with(a, s), with(b, s)));
        }
        out.push((vec![s], with(vec![apex], s)));
        cur = cur.difference(&p.down_set(s)).union(&y);
    }
    cur.first().expect("collapse ends at a point")
}

/// Simplicial collapse of `barycentric(p)` to a vertex built from a poset collapse to a point.
pub fn barycentric_collapse_lift(
    p: &Poset,
    seq: &CollapseSequence,
) -> Result<SimplicialCollapse, Rejection> {
    verify_collapse_to_point(p, seq)?;
    let index: HashMap<Vec<usize>, usize> = chains(p)
        .into_iter()
        .enumerate()
        .map(|(i, mut c)| {
            c.sort_unstable();
            (c, i)
        })
        .collect();
    let mut raw = Vec::new();
    lift(p, &p.full_mask(), seq, &mut raw);
    let pairs = raw
        .into_iter()
        .map(|(a, b)| (index[&a], index[&b]))
        .collect();
    Ok(SimplicialCollapse { pairs })
}
