//! Constructible posets: certificate trees, replay and exhaustive search.

use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    codim_one_failure, mask_from, with_pool, Limits, Meter, OutOfBudget, Rejection, Search,
    Verified,
};
use crate::homology::{euler_characteristic, homology};
use crate::ops::FacetComplex;
use crate::poset::{IsoMemo, Mask, Poset};
use crate::recognize::is_pure;

/// One node of a construction, with element indices of the subject poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum ConstructionNode {
    Cone {
        apex: usize,
    },
    /// `P = Q ∪ R` with subtrees for `Q`, `R` and `Q ∩ R`.
    Split {
        q: Vec<usize>,
        r: Vec<usize>,
        q_tree: Box<ConstructionNode>,
        r_tree: Box<ConstructionNode>,
        meet_tree: Box<ConstructionNode>,
    },
}

impl ConstructionNode {
    /// Renames every element index through `f`.
    pub fn remap(&self, f: &dyn Fn(usize) -> usize) -> ConstructionNode {
        match self {
            ConstructionNode::Cone { apex } => ConstructionNode::Cone { apex: f(*apex) },
            ConstructionNode::Split {
                q,
                r,
                q_tree,
                r_tree,
                meet_tree,
            } => {
                let mut q: Vec<usize> = q.iter().map(|&x| f(x)).collect();
                let mut r: Vec<usize> = r.iter().map(|&x| f(x)).collect();
                q.sort_unstable();
                r.sort_unstable();
                ConstructionNode::Split {
                    q,
                    r,
                    q_tree: Box::new(q_tree.remap(f)),
                    r_tree: Box::new(r_tree.remap(f)),
                    meet_tree: Box::new(meet_tree.remap(f)),
                }
            }
        }
    }

    pub fn split_count(&self) -> usize {
        match self {
            ConstructionNode::Cone { .. } => 0,
            ConstructionNode::Split {
                q_tree,
                r_tree,
                meet_tree,
                ..
            } => 1 + q_tree.split_count() + r_tree.split_count() + meet_tree.split_count(),
        }
    }
}

/// A construction of a whole poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTree {
    pub root: ConstructionNode,
}

impl ConstructionTree {
    pub fn split_count(&self) -> usize {
        self.root.split_count()
    }
}

/// Replays every condition of every node against `p`.
pub fn verify_construction(p: &Poset, t: &ConstructionTree) -> Verified {
    if p.is_empty() {
        return Err(Rejection::new("the empty poset is not constructible"));
    }
    verify_node(p, &p.full_mask(), &t.root, "root")
}

fn verify_node(p: &Poset, set: &Mask, node: &ConstructionNode, path: &str) -> Verified {
    match node {
        ConstructionNode::Cone { apex } => {
            if *apex >= p.len() || !set.contains(*apex) {
                return Err(Rejection::new(format!(
                    "{path}: apex is not in the subposet"
                )));
            }
            if !set.is_subset(&p.down_set(*apex)) {
                let other = set.difference(&p.down_set(*apex)).first().unwrap_or(*apex);
                return Err(Rejection::new(format!(
                    "{path}: {} is not below the apex {}",
                    p.label(other),
                    p.label(*apex)
                )));
            }
            Ok(())
        }
        ConstructionNode::Split {
            q,
            r,
            q_tree,
            r_tree,
            meet_tree,
        } => {
            let qm = mask_from(p, q)?;
            let rm = mask_from(p, r)?;
            if !qm.is_subset(set) || !rm.is_subset(set) {
                return Err(Rejection::new(format!(
                    "{path}: split parts leave the subposet"
                )));
            }
            if qm.union(&rm) != *set {
                return Err(Rejection::new(format!(
                    "{path}: split parts do not cover the subposet"
                )));
            }
            for (name, m) in [("Q", &qm), ("R", &rm)] {
                for y in m.iter() {
                    if let Some(x) = p.below(y).difference(m).first() {
                        return Err(Rejection::new(format!(
                            "{path}: {name} is not an order ideal: {} < {} with {} missing",
                            p.label(x),
                            p.label(y),
                            p.label(x)
                        )));
                    }
                }
            }
            let meet = qm.intersection(&rm);
            if meet.is_empty() {
                return Err(Rejection::new(format!("{path}: Q and R are disjoint")));
            }
            for (name, m) in [("Q", &qm), ("R", &rm)] {
                if let Some(x) = codim_one_failure(p, &meet, m) {
                    return Err(Rejection::new(format!(
                        "{path}: maximal element {} of the intersection is not covered by a maximal element of {name}",
                        p.label(x)
                    )));
                }
            }
            verify_node(p, &qm, q_tree, &format!("{path}.q"))?;
            verify_node(p, &rm, r_tree, &format!("{path}.r"))?;
            verify_node(p, &meet, meet_tree, &format!("{path}.meet"))
        }
    }
}

type Memo = Mutex<IsoMemo<Option<ConstructionNode>>>;

struct Ctx<'a> {
    meter: &'a Meter,
    memo: Memo,
}

impl Ctx<'_> {
    fn lookup(&self, p: &Poset) -> Option<Option<ConstructionNode>> {
        let memo = self.memo.lock().expect("memo lock");
        memo.get(p, None)
            .map(|(v, _, iso)| v.as_ref().map(|n| n.remap(&|i| iso[i])))
    }

    fn store(&self, p: &Poset, v: &Option<ConstructionNode>) {
        self.memo
            .lock()
            .expect("memo lock")
            .insert(p.clone(), None, v.clone());
    }
}

/// The maxima graph, joining two maximal elements that cover a common element, is connected.
pub(crate) fn maxima_connected(p: &Poset, maxima: &[usize]) -> bool {
    if maxima.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; maxima.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let covered: Vec<Mask> = maxima
        .iter()
        .map(|&m| Mask::from_indices(p.len(), p.lower_covers(m).iter().copied()))
        .collect();
    while let Some(i) = stack.pop() {
        for j in 0..maxima.len() {
            if !seen[j] && covered[i].intersects(&covered[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// An element covered by a maximal element and also by a non-maximal one.
fn has_mixed_cover(p: &Poset) -> bool {
    (0..p.len()).any(|x| {
        let covers = p.upper_covers(x);
        let maxed = covers.iter().any(|&y| p.upper_covers(y).is_empty());
        maxed && covers.iter().any(|&y| !p.upper_covers(y).is_empty())
    })
}

/// Bipartitions `(S, T)` of `k` maxima with the first maximum in `S`,
/// generated lazily by increasing `|S|`, lexicographically within a size.
pub(crate) struct Bipartitions {
    k: usize,
    /// Positions (among maxima 1..k) of the extra members of `S`.
    pick: Vec<usize>,
    done: bool,
}

pub(crate) fn bipartitions(k: usize) -> Bipartitions {
    assert!((1..64).contains(&k));
    Bipartitions {
        k,
        pick: Vec::new(),
        done: k < 2,
    }
}

impl Iterator for Bipartitions {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let bits = self.pick.iter().fold(1u64, |acc, &i| acc | 1 << i);
        // Advance to the next combination of {1..k-1}, growing the size when exhausted.
        let n = self.k - 1;
        let c = self.pick.len();
        let mut i = c;
        while i > 0 && self.pick[i - 1] == n - (c - i) {
            i -= 1;
        }
        if i == 0 {
            if c + 1 >= n {
                self.done = true;
            } else {
                self.pick = (1..=c + 1).collect();
            }
        } else {
            self.pick[i - 1] += 1;
            for j in i..c {
                self.pick[j] = self.pick[j - 1] + 1;
            }
        }
        Some(bits)
    }
}

fn closure_of_bits(p: &Poset, maxima: &[usize], bits: u64) -> Mask {
    let mut m = p.empty_mask();
    for (i, &x) in maxima.iter().enumerate() {
        if bits >> i & 1 == 1 {
            m.union_with(&p.down_set(x));
        }
    }
    m
}

fn search(ctx: &Ctx, p: &Poset, parallel: bool) -> Result<Option<ConstructionNode>, OutOfBudget> {
    ctx.meter.tick()?;
    if p.is_empty() {
        return Ok(None);
    }
    if let Some(g) = p.greatest() {
        return Ok(Some(ConstructionNode::Cone { apex: g }));
    }
    if let Some(hit) = ctx.lookup(p) {
        return Ok(hit);
    }
    let maxima = p.maximal();
    let hopeless = maxima.len() >= 64
        || euler_characteristic(p) != 1
        || has_mixed_cover(p)
        || !maxima_connected(p, &maxima);
    let found = if hopeless {
        None
    } else {
        let splits = bipartitions(maxima.len());
        let full = (1u64 << maxima.len()) - 1;
        let attempt = |&s: &u64| -> Result<Option<ConstructionNode>, OutOfBudget> {
            ctx.meter.tick()?;
            let q = closure_of_bits(p, &maxima, s);
            let r = closure_of_bits(p, &maxima, full & !s);
            try_split(ctx, p, &q, &r)
        };
        if parallel {
            splits
                .par_bridge()
                .map(|s| attempt(&s))
                .find_map_any(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None))?
        } else {
            let mut hit = None;
            for s in splits {
                if let Some(n) = attempt(&s)? {
                    hit = Some(n);
                    break;
                }
            }
            hit
        }
    };
    ctx.store(p, &found);
    Ok(found)
}

fn try_split(
    ctx: &Ctx,
    p: &Poset,
    q: &Mask,
    r: &Mask,
) -> Result<Option<ConstructionNode>, OutOfBudget> {
    let meet = q.intersection(r);
    if meet.is_empty()
        || codim_one_failure(p, &meet, q).is_some()
        || codim_one_failure(p, &meet, r).is_some()
    {
        return Ok(None);
    }
    let mut trees = Vec::with_capacity(3);
    for m in [&meet, q, r] {
        let (sub, idx) = p.induced(m);
        match search(ctx, &sub, false)? {
            Some(n) => trees.push(n.remap(&|i| idx[i])),
            None => return Ok(None),
        }
    }
    let meet_tree = trees.remove(0);
    let q_tree = trees.remove(0);
    let r_tree = trees.remove(0);
    Ok(Some(ConstructionNode::Split {
        q: q.to_vec(),
        r: r.to_vec(),
        q_tree: Box::new(q_tree),
        r_tree: Box::new(r_tree),
        meet_tree: Box::new(meet_tree),
    }))
}

pub fn find_construction(p: &Poset) -> Search<ConstructionTree> {
    find_construction_with(p, &Limits::default())
}

/// Exhaustive search over splits `Q = ⌊S⌋`, `R = ⌊T⌋` for bipartitions of the maxima,
/// memoized on isomorphism classes of subposets.
pub fn find_construction_with(p: &Poset, limits: &Limits) -> Search<ConstructionTree> {
    let meter = Meter::new(limits.budget);
    let ctx = Ctx {
        meter: &meter,
        memo: Mutex::new(IsoMemo::new()),
    };
    let parallel = limits.jobs > 1;
    let r = with_pool(limits.jobs, || search(&ctx, p, parallel));
    meter.finish(r).map(|root| ConstructionTree { root })
}

/// Same search in dimension form on the face poset of `k`; the tree refers to
/// `C*(face poset)` with the added least element last.
pub fn hochster_construction(k: &FacetComplex) -> Search<ConstructionTree> {
    hochster_construction_with(k, &Limits::default())
}

pub fn hochster_construction_with(k: &FacetComplex, limits: &Limits) -> Search<ConstructionTree> {
    let p = k.face_poset();
    let meter = Meter::new(limits.budget);
    let memo = Mutex::new(IsoMemo::new());
    let r = with_pool(limits.jobs, || hsearch(&meter, &memo, &p));
    meter.finish(r).map(|root| ConstructionTree { root })
}

/// Node indices: `i < p.len()` are elements of `p`, `p.len()` is the added bottom.
fn hsearch(meter: &Meter, memo: &Memo, p: &Poset) -> Result<Option<ConstructionNode>, OutOfBudget> {
    meter.tick()?;
    let n = p.len();
    if n == 0 {
        return Ok(Some(ConstructionNode::Cone { apex: 0 }));
    }
    if let Some(g) = p.greatest() {
        return Ok(Some(ConstructionNode::Cone { apex: g }));
    }
    let d = p.dimension();
    let maxima = p.maximal();
    if maxima.len() >= 64 || !is_pure(p).is_yes() || (d >= 1 && !maxima_connected(p, &maxima)) {
        return Ok(None);
    }
    {
        let m = memo.lock().expect("memo lock");
        if let Some((v, stored, iso)) = m.get(p, None) {
            let sn = stored.len();
            return Ok(v
                .as_ref()
                .map(|node| node.remap(&|i| if i == sn { n } else { iso[i] })));
        }
    }
    // A constructible complex has no reduced homology below its dimension.
    let h = homology(p);
    let hopeless = h
        .reduced_betti()
        .iter()
        .take(d as usize + 1)
        .any(|&b| b != 0)
        || h.torsion.iter().take(d as usize).any(|t| !t.is_empty());
    let mut found = None;
    if !hopeless {
        let full = (1u64 << maxima.len()) - 1;
        for s in bipartitions(maxima.len()) {
            meter.tick()?;
            let q = closure_of_bits(p, &maxima, s);
            let r = closure_of_bits(p, &maxima, full & !s);
            let meet = q.intersection(&r);
            if p.dimension_of(&meet) != d - 1 {
                continue;
            }
            let mut trees = Vec::with_capacity(3);
            for m in [&meet, &q, &r] {
                let (sub, idx) = p.induced(m);
                let sl = sub.len();
                match hsearch(meter, memo, &sub)? {
                    Some(t) => trees.push(t.remap(&|i| if i == sl { n } else { idx[i] })),
                    None => break,
                }
            }
            if trees.len() < 3 {
                continue;
            }
            let with_bottom = |m: &Mask| {
                let mut v = m.to_vec();
                v.push(n);
                v
            };
            found = Some(ConstructionNode::Split {
                q: with_bottom(&q),
                r: with_bottom(&r),
                q_tree: Box::new(trees[1].clone()),
                r_tree: Box::new(trees[2].clone()),
                meet_tree: Box::new(trees[0].clone()),
            });
            break;
        }
    }
    memo.lock()
        .expect("memo lock")
        .insert(p.clone(), None, found.clone());
    Ok(found)
}
