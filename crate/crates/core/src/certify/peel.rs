//! Shared search for collapses and shellings: both remove a maximal cone
//! `⌊σ⌋` while keeping a closed part `Y` of its boundary that must itself
//! reduce to a goal.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use super::{closed_between, Meter, OutOfBudget};
use crate::homology::euler_characteristic_of;
use crate::poset::{IsoMemo, Mask, Poset};

/// Cap on the number of candidate `Y` per removed cone.
const CANDIDATE_CAP: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    Point,
    Cone,
    Empty,
    Onto(Mask),
}

impl Goal {
    fn slot(&self) -> usize {
        match self {
            Goal::Point => 0,
            Goal::Cone => 1,
            Goal::Empty => 2,
            Goal::Onto(_) => 3,
        }
    }

    pub(crate) fn reached(&self, p: &Poset, s: &Mask) -> bool {
        match self {
            Goal::Point => s.count() == 1,
            Goal::Cone => p.greatest_in(s).is_some(),
            Goal::Empty => s.is_empty(),
            Goal::Onto(t) => s == t,
        }
    }
}

/// One removal, in root indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Peel {
    pub sigma: usize,
    pub meet: Vec<usize>,
    pub sub: Vec<Peel>,
}

impl Peel {
    fn remap(&self, f: &dyn Fn(usize) -> usize) -> Peel {
        let mut meet: Vec<usize> = self.meet.iter().map(|&x| f(x)).collect();
        meet.sort_unstable();
        Peel {
            sigma: f(self.sigma),
            meet,
            sub: self.sub.iter().map(|s| s.remap(f)).collect(),
        }
    }
}

pub(crate) trait Rules: Sync {
    /// Goal for `Y` given the goal of the enclosing search.
    fn sub_goal(&self, goal: &Goal) -> Goal;
    /// Extra conditions on removing `⌊σ⌋` from `s` while keeping `y`.
    fn admissible(&self, p: &Poset, s: &Mask, sigma: usize, y: &Mask) -> bool;
    /// Necessary condition for `s` to reach `goal`, or `true` if none is known.
    fn may_reach(&self, p: &Poset, s: &Mask, goal: &Goal) -> bool;
}

/// `Y ⊆ ∂⌊σ⌋` must contain everything of `⌊σ⌋` that the rest of `s` needs.
pub(crate) fn forced_part(p: &Poset, s: &Mask, sigma: usize) -> Mask {
    let cone = p.down_set(sigma);
    let rest = s.difference(&cone);
    p.closure_of(&rest).intersection(&cone)
}

pub(crate) struct Peeler<'a, R: Rules> {
    rules: &'a R,
    meter: &'a Meter,
    memo: [Mutex<IsoMemo<Option<Vec<Peel>>>>; 4],
    truncated: AtomicBool,
}

impl<'a, R: Rules> Peeler<'a, R> {
    pub(crate) fn new(rules: &'a R, meter: &'a Meter) -> Self {
        Peeler {
            rules,
            meter,
            memo: Default::default(),
            truncated: AtomicBool::new(false),
        }
    }

    /// Whether some candidate list was cut short, so a failure is not a refutation.
    pub(crate) fn truncated(&self) -> bool {
        self.truncated.load(Ordering::Relaxed)
    }

    pub(crate) fn run(
        &self,
        p: &Poset,
        s: &Mask,
        goal: &Goal,
    ) -> Result<Option<Vec<Peel>>, OutOfBudget> {
        self.meter.tick()?;
        if goal.reached(p, s) {
            return Ok(Some(Vec::new()));
        }
        if !self.rules.may_reach(p, s, goal) {
            return Ok(None);
        }
        if let Goal::Onto(t) = goal {
            if !t.is_subset(s) {
                return Ok(None);
            }
        }
        let (sub, idx) = p.induced(s);
        let colors: Option<Vec<u64>> = match goal {
            Goal::Onto(t) => Some(idx.iter().map(|&i| t.contains(i) as u64).collect()),
            _ => None,
        };
        let memo = &self.memo[goal.slot()];
        if let Some(hit) = {
            let m = memo.lock().expect("memo lock");
            m.get(&sub, colors.as_deref()).map(|(v, _, iso)| {
                v.as_ref().map(|steps| {
                    steps
                        .iter()
                        .map(|st| st.remap(&|i| idx[iso[i]]))
                        .collect::<Vec<_>>()
                })
            })
        } {
            return Ok(hit);
        }
        let found = self.expand(p, s, goal)?;
        let mut local = vec![usize::MAX; p.len()];
        for (i, &g) in idx.iter().enumerate() {
            local[g] = i;
        }
        let stored = found
            .as_ref()
            .map(|steps| steps.iter().map(|st| st.remap(&|g| local[g])).collect());
        memo.lock()
            .expect("memo lock")
            .insert(sub, colors.as_deref(), stored);
        Ok(found)
    }

    fn expand(&self, p: &Poset, s: &Mask, goal: &Goal) -> Result<Option<Vec<Peel>>, OutOfBudget> {
        let sub_goal = self.rules.sub_goal(goal);
        for sigma in p.maximal_in(s) {
            if let Goal::Onto(t) = goal {
                if t.contains(sigma) {
                    continue;
                }
            }
            let cone = p.down_set(sigma);
            let rest = s.difference(&cone);
            let mut base = forced_part(p, s, sigma);
            if let Goal::Onto(t) = goal {
                base.union_with(&t.intersection(&cone));
            }
            let mut bound = p.below(sigma).clone();
            bound.intersect_with(s);
            let candidates = closed_between(p, &base, &bound, CANDIDATE_CAP);
            if candidates.len() >= CANDIDATE_CAP {
                self.truncated.store(true, Ordering::Relaxed);
            }
            for y in candidates {
                self.meter.tick()?;
                if !self.rules.admissible(p, s, sigma, &y) {
                    continue;
                }
                let Some(inner) = self.run(p, &y, &sub_goal)? else {
                    continue;
                };
                let q = rest.union(&y);
                if let Some(mut tail) = self.run(p, &q, goal)? {
                    tail.insert(
                        0,
                        Peel {
                            sigma,
                            meet: y.to_vec(),
                            sub: inner,
                        },
                    );
                    return Ok(Some(tail));
                }
            }
        }
        Ok(None)
    }
}

/// Euler characteristic shadow of contractibility.
pub(crate) fn contractible_shadow(p: &Poset, s: &Mask) -> bool {
    !s.is_empty() && euler_characteristic_of(p, s) == 1
}
