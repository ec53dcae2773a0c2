//! Certificate search and replay: constructions, zippings, edge-zippings,
//! collapses and shellings, plus the translations between them.
//!
//! Searchers return [`Search`]; every certificate they emit is accepted by
//! the matching `verify_*` function, which never calls a searcher.

mod collapse;
mod construction;
mod edge;
mod peel;
mod point_inverse;
mod scheme;
mod shelling;
mod zip;

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use collapse::{
    barycentric_collapse_lift, find_collapse, find_collapse_to_point, find_collapse_to_point_with,
    find_collapse_with, is_collapsible_poset, verify_collapse, verify_collapse_to_point,
    verify_simplicial_collapse, CollapseSequence, CollapseStep, SimplicialCollapse,
};
pub use construction::{
    find_construction, find_construction_with, hochster_construction, hochster_construction_with,
    verify_construction, ConstructionNode, ConstructionTree,
};
pub use edge::{
    edge_contract, find_edge_zipping, find_edge_zipping_with, is_elementary_edge_zip,
    replay_edge_zipping, zipping_from_edge_zipping, EdgeZipStep,
};
pub use point_inverse::point_inverse_dual_constructibility;
pub use scheme::{zipping_from_construction, ZipBridge};
pub use shelling::{
    find_shelling, find_shelling_with, verify_shelling, ShellGoal, ShellSequence, ShellStep,
};
pub use zip::{
    check_zip_step, elementary_zip, find_zipping, find_zipping_with, is_q_plus_interval,
    replay_zipping, transport_zipping, verify_zipping, zip_sites, ZipGoal, ZipStep,
};

/// Search resources: a node budget shared by all workers and a worker count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub budget: u64,
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: 5_000_000,
            jobs: 1,
        }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Limits {
            budget,
            ..Limits::default()
        }
    }
}

/// Outcome of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole space was explored without success.
    Refuted,
    /// The budget ran out after visiting this many nodes.
    Exhausted(u64),
}

impl<T> Search<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Search::Refuted)
    }

    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Refuted => Search::Refuted,
            Search::Exhausted(n) => Search::Exhausted(n),
        }
    }
}

/// Why a certificate failed to replay.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{0}")]
pub struct Rejection(pub String);

impl Rejection {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        Rejection(msg.into())
    }
}

pub type Verified = std::result::Result<(), Rejection>;

/// Marker for a search that ran out of budget.
#[derive(Clone, Copy, Debug)]
pub(crate) struct OutOfBudget;

/// Shared node counter.
pub(crate) struct Meter {
    used: AtomicU64,
    budget: u64,
}

impl Meter {
    pub(crate) fn new(budget: u64) -> Self {
        Meter {
            used: AtomicU64::new(0),
            budget,
        }
    }

    pub(crate) fn tick(&self) -> Result<(), OutOfBudget> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.budget)
    }

    pub(crate) fn finish<T>(&self, r: Result<Option<T>, OutOfBudget>) -> Search<T> {
        match r {
            Ok(Some(t)) => Search::Found(t),
            Ok(None) => Search::Refuted,
            Err(OutOfBudget) => Search::Exhausted(self.used()),
        }
    }
}

/// Runs `f` on a pool with `jobs` threads, or inline for a single job.
pub(crate) fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

use crate::poset::{Mask, Poset};

/// Closed subsets `Y` with `base ⊆ Y ⊆ within`, smallest first.
/// `base` must be closed and contained in `within`, which must be closed.
pub(crate) fn closed_between(p: &Poset, base: &Mask, within: &Mask, cap: usize) -> Vec<Mask> {
    let free: Vec<usize> = p
        .linear_extension()
        .into_iter()
        .filter(|&x| within.contains(x) && !base.contains(x))
        .collect();
    let mut out = Vec::new();
    let mut cur = base.clone();
    fn rec(p: &Poset, free: &[usize], i: usize, cur: &mut Mask, out: &mut Vec<Mask>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if i == free.len() {
            out.push(cur.clone());
            return;
        }
        rec(p, free, i + 1, cur, out, cap);
        let x = free[i];
        if p.below(x).is_subset(cur) {
            cur.insert(x);
            rec(p, free, i + 1, cur, out, cap);
            cur.remove(x);
        }
    }
    rec(p, &free, 0, &mut cur, &mut out, cap);
    out.sort_by_key(|m| m.count());
    out
}

/// Maximal elements of `m` that are covered, inside the closed set `within`,
/// by some maximal element of `within`; returns the first one that is not.
pub(crate) fn codim_one_failure(p: &Poset, inner: &Mask, within: &Mask) -> Option<usize> {
    let is_max_in = |y: usize, s: &Mask| !p.above(y).intersects(s);
    for x in inner.iter() {
        if !is_max_in(x, inner) {
            continue;
        }
        let ok = p
            .upper_covers(x)
            .iter()
            .any(|&y| within.contains(y) && is_max_in(y, within));
        if !ok {
            return Some(x);
        }
    }
    None
}

pub(crate) fn mask_from(p: &Poset, idx: &[usize]) -> std::result::Result<Mask, Rejection> {
    let mut m = p.empty_mask();
    for &i in idx {
        if i >= p.len() {
            return Err(Rejection::new(format!("element index {i} out of range")));
        }
        if !m.insert(i) {
            return Err(Rejection::new(format!("element index {i} repeated")));
        }
    }
    Ok(m)
}
