//! Shellings `P = Q ∪ CX` onto a cone, or onto the empty set.

use serde::{Deserialize, Serialize};

use super::peel::{contractible_shadow, Goal, Peel, Peeler, Rules};
use super::{codim_one_failure, mask_from, with_pool, Limits, Meter, Rejection, Search, Verified};
use crate::poset::{Mask, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellGoal {
    Cone,
    /// The weaker variant ending at the empty set; intersections may be empty.
    Empty,
}

impl ShellGoal {
    fn goal(self) -> Goal {
        match self {
            ShellGoal::Cone => Goal::Cone,
            ShellGoal::Empty => Goal::Empty,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellSequence {
    pub goal: ShellGoal,
    pub steps: Vec<ShellStep>,
}

/// Removes the cone `⌊sigma⌋` except for `meet = Q ∩ ⌊sigma⌋`, which shells by `meet_shelling`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellStep {
    pub sigma: usize,
    pub meet: Vec<usize>,
    pub meet_shelling: ShellSequence,
}

impl ShellSequence {
    fn from_peels(goal: ShellGoal, peels: Vec<Peel>) -> Self {
        ShellSequence {
            goal,
            steps: peels
                .into_iter()
                .map(|pl| ShellStep {
                    sigma: pl.sigma,
                    meet: pl.meet,
                    meet_shelling: ShellSequence::from_peels(goal, pl.sub),
                })
                .collect(),
        }
    }
}

/// The codimension conditions on `R = Q ∩ ⌊σ⌋`, `X = ⌊σ⌋ ∖ σ`.
fn shell_condition(p: &Poset, q: &Mask, sigma: usize, r: &Mask) -> Option<String> {
    if let Some(x) = codim_one_failure(p, r, q) {
        return Some(format!("{} is maximal in the intersection but not covered by a maximal element of the remainder", p.label(x)));
    }
    let rim = p.closure_of(&p.below(sigma).difference(r));
    let l = r.intersection(&rim);
    if let Some(x) = codim_one_failure(p, &l, r) {
        return Some(format!(
            "{} fails codimension one in the intersection",
            p.label(x)
        ));
    }
    if let Some(x) = codim_one_failure(p, &l, &rim) {
        return Some(format!(
            "{} fails codimension one in the rest of the boundary",
            p.label(x)
        ));
    }
    None
}

struct ShellRules;

impl Rules for ShellRules {
    fn sub_goal(&self, goal: &Goal) -> Goal {
        goal.clone()
    }

    fn admissible(&self, p: &Poset, s: &Mask, sigma: usize, y: &Mask) -> bool {
        let q = s.difference(&p.down_set(sigma)).union(y);
        shell_condition(p, &q, sigma, y).is_none()
    }

    fn may_reach(&self, p: &Poset, s: &Mask, goal: &Goal) -> bool {
        match goal {
            Goal::Cone => contractible_shadow(p, s),
            _ => true,
        }
    }
}

pub fn find_shelling(p: &Poset, goal: ShellGoal) -> Search<ShellSequence> {
    find_shelling_with(p, goal, &Limits::default())
}

pub fn find_shelling_with(p: &Poset, goal: ShellGoal, limits: &Limits) -> Search<ShellSequence> {
    let meter = Meter::new(limits.budget);
    let peeler = Peeler::new(&ShellRules, &meter);
    let r = with_pool(limits.jobs, || peeler.run(p, &p.full_mask(), &goal.goal()));
    match meter.finish(r) {
        Search::Refuted if peeler.truncated() => Search::Exhausted(meter.used()),
        s => s.map(|peels| ShellSequence::from_peels(goal, peels)),
    }
}

fn replay(p: &Poset, start: Mask, seq: &ShellSequence, goal: ShellGoal, path: &str) -> Verified {
    if seq.goal != goal {
        return Err(Rejection::new(format!("shelling {path}has the wrong goal")));
    }
    let mut cur = start;
    for (i, st) in seq.steps.iter().enumerate() {
        let at = format!("{path}{i}");
        let s = st.sigma;
        if s >= p.len() || !cur.contains(s) || p.above(s).intersects(&cur) {
            return Err(Rejection::new(format!(
                "step {at}: cone apex is missing or not maximal"
            )));
        }
        let r = mask_from(p, &st.meet)?;
        if !r.is_subset(p.below(s)) || !r.is_subset(&cur) || !p.is_closed(&r) {
            return Err(Rejection::new(format!(
                "step {at}: intersection is not a closed part of the boundary"
            )));
        }
        let q = cur.difference(&p.down_set(s)).union(&r);
        if !p.is_closed(&q) {
            return Err(Rejection::new(format!(
                "step {at}: remainder is not closed"
            )));
        }
        if goal == ShellGoal::Cone && r.is_empty() {
            return Err(Rejection::new(format!(
                "step {at}: the empty intersection is not shellable"
            )));
        }
        if let Some(why) = shell_condition(p, &q, s, &r) {
            return Err(Rejection::new(format!("step {at}: {why}")));
        }
        replay(p, r, &st.meet_shelling, goal, &format!("{at}."))?;
        cur = q;
    }
    let done = match goal {
        ShellGoal::Cone => p.greatest_in(&cur).is_some(),
        ShellGoal::Empty => cur.is_empty(),
    };
    if done {
        Ok(())
    } else {
        Err(Rejection::new(format!(
            "shelling {path}ends at {} elements, not at the goal",
            cur.count()
        )))
    }
}

pub fn verify_shelling(p: &Poset, seq: &ShellSequence) -> Verified {
    replay(p, p.full_mask(), seq, seq.goal, "")
}
