//! Finite posets stored as a label table, a Hasse diagram and a strict
//! reachability matrix. Elements are dense indices `0..len()`.

mod iso;
mod map;
mod preposet;

pub use iso::{find_isomorphism, find_isomorphism_colored, invariant_hash, IsoMemo};
pub use map::MonotoneMap;
pub use preposet::Preposet;

use std::collections::HashMap;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A subset of a poset's carrier.
pub type Mask = BitSet;

#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    above: Vec<BitSet>,
    below: Vec<BitSet>,
}

impl Poset {
    /// Builds the poset generated by `relations`, each pair `(a, b)` meaning `a < b`.
    pub fn new(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut succ = vec![BitSet::new(n); n];
        for &(a, b) in relations {
            if a >= n {
                return Err(Error::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::IndexOutOfRange(b));
            }
            if a == b {
                return Err(Error::SelfArrow(labels[a].clone()));
            }
            succ[a].insert(b);
        }
        let order = topological_order(&succ).map_err(|cycle| {
            Error::Cycle(cycle.into_iter().map(|i| labels[i].clone()).collect())
        })?;
        let mut below = vec![BitSet::new(n); n];
        for &v in &order {
            let mut acc = below[v].clone();
            acc.insert(v);
            for w in succ[v].iter() {
                below[w].union_with(&acc);
            }
        }
        Ok(Self::from_below(labels, index, below))
    }

    fn from_below(labels: Vec<String>, index: HashMap<String, usize>, below: Vec<BitSet>) -> Self {
        let n = labels.len();
        let mut above = vec![BitSet::new(n); n];
        for (v, b) in below.iter().enumerate() {
            for u in b.iter() {
                above[u].insert(v);
            }
        }
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for v in 0..n {
            for u in below[v].iter() {
                if !below[v].intersects(&above[u]) {
                    down[v].push(u);
                    up[u].push(v);
                }
            }
        }
        Poset {
            labels,
            index,
            up,
            down,
            above,
            below,
        }
    }

    /// Builds a poset from labels and label pairs `(a, b)` meaning `a < b`.
    pub fn from_labels<S: AsRef<str>>(labels: &[S], relations: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().into()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().into()))?;
            pairs.push((ia, ib));
        }
        Poset::new(labels, &pairs)
    }

    pub fn empty() -> Self {
        Poset::new(Vec::new(), &[]).unwrap()
    }

    pub fn point(label: &str) -> Self {
        Poset::new(vec![label.to_string()], &[]).unwrap()
    }

    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Poset::new(labels.iter().map(|s| s.as_ref().to_string()).collect(), &[])
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Poset::new(
            labels.iter().map(|s| s.as_ref().to_string()).collect(),
            &pairs,
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn id(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Strict order `a < b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// `a` is covered by `b`.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(&a)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    /// Strict up-set of `a`.
    pub fn above(&self, a: usize) -> &BitSet {
        &self.above[a]
    }

    /// Strict down-set of `a`.
    pub fn below(&self, a: usize) -> &BitSet {
        &self.below[a]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|b| self.down[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn relation_count(&self) -> usize {
        self.below.iter().map(|b| b.count()).sum()
    }

    pub fn empty_mask(&self) -> Mask {
        BitSet::new(self.len())
    }

    pub fn full_mask(&self) -> Mask {
        BitSet::full(self.len())
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        let mut m = self.empty_mask();
        for l in labels {
            m.insert(self.id(l.as_ref())?);
        }
        Ok(m)
    }

    pub fn mask_labels(&self, m: &Mask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// The cone `⌊x⌋`.
    pub fn down_set(&self, x: usize) -> Mask {
        let mut m = self.below[x].clone();
        m.insert(x);
        m
    }

    /// The dual cone `⌈x⌉`.
    pub fn up_set(&self, x: usize) -> Mask {
        let mut m = self.above[x].clone();
        m.insert(x);
        m
    }

    pub fn closure_of(&self, m: &Mask) -> Mask {
        let mut out = m.clone();
        for x in m.iter() {
            out.union_with(&self.below[x]);
        }
        out
    }

    pub fn hull_of(&self, m: &Mask) -> Mask {
        let mut out = m.clone();
        for x in m.iter() {
            out.union_with(&self.above[x]);
        }
        out
    }

    pub fn is_closed(&self, m: &Mask) -> bool {
        m.iter().all(|x| self.below[x].is_subset(m))
    }

    pub fn is_open(&self, m: &Mask) -> bool {
        m.iter().all(|x| self.above[x].is_subset(m))
    }

    /// Every cone meets `m` in a cone of `m` or not at all.
    pub fn is_full(&self, m: &Mask) -> bool {
        (0..self.len()).all(|x| {
            let meet = self.down_set(x).intersection(m);
            meet.is_empty() || self.greatest_in(&meet).is_some()
        })
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    pub fn maximal_in(&self, m: &Mask) -> Vec<usize> {
        m.iter().filter(|&x| !self.above[x].intersects(m)).collect()
    }

    pub fn minimal_in(&self, m: &Mask) -> Vec<usize> {
        m.iter().filter(|&x| !self.below[x].intersects(m)).collect()
    }

    pub fn greatest_in(&self, m: &Mask) -> Option<usize> {
        let max = self.maximal_in(m);
        (max.len() == 1 && m.iter().all(|y| self.le(y, max[0]))).then(|| max[0])
    }

    pub fn least_in(&self, m: &Mask) -> Option<usize> {
        let min = self.minimal_in(m);
        (min.len() == 1 && m.iter().all(|y| self.le(min[0], y))).then(|| min[0])
    }

    pub fn greatest(&self) -> Option<usize> {
        self.greatest_in(&self.full_mask())
    }

    pub fn least(&self) -> Option<usize> {
        self.least_in(&self.full_mask())
    }

    pub fn is_cone(&self) -> bool {
        self.greatest().is_some()
    }

    /// Induced subposet on `m`, together with the index map back into `self`.
    pub fn induced(&self, m: &Mask) -> (Poset, Vec<usize>) {
        let to_parent: Vec<usize> = m.iter().collect();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in to_parent.iter().enumerate() {
            local[x] = i;
        }
        let k = to_parent.len();
        let labels: Vec<String> = to_parent.iter().map(|&x| self.labels[x].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let below = to_parent
            .iter()
            .map(|&x| {
                BitSet::from_indices(
                    k,
                    self.below[x]
                        .iter()
                        .filter(|&y| m.contains(y))
                        .map(|y| local[y]),
                )
            })
            .collect();
        (Poset::from_below(labels, index, below), to_parent)
    }

    pub fn sub(&self, m: &Mask) -> Poset {
        self.induced(m).0
    }

    pub fn dual(&self) -> Poset {
        Poset::from_below(self.labels.clone(), self.index.clone(), self.above.clone())
    }

    /// Same order, new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Poset> {
        assert_eq!(labels.len(), self.len());
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Poset::from_below(labels, index, self.below.clone()))
    }

    /// Carrier permuted so that new element `i` is old element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Poset {
        let mut pos = vec![0; self.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let labels: Vec<String> = order.iter().map(|&x| self.labels[x].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let below = order
            .iter()
            .map(|&x| BitSet::from_indices(self.len(), self.below[x].iter().map(|y| pos[y])))
            .collect();
        Poset::from_below(labels, index, below)
    }

    /// `∂P`: the closure of all elements with exactly one strict upper bound.
    pub fn boundary(&self) -> Mask {
        let seeds = BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&q| self.above[q].count() == 1),
        );
        self.closure_of(&seeds)
    }

    /// `∂*P`, the boundary computed in the dual.
    pub fn coboundary(&self) -> Mask {
        let seeds = BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&q| self.below[q].count() == 1),
        );
        self.hull_of(&seeds)
    }

    /// Canonical linear extension: by size of `⌊p⌋`, ties broken by label.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            self.below[a]
                .count()
                .cmp(&self.below[b].count())
                .then_with(|| self.labels[a].cmp(&self.labels[b]))
        });
        order
    }

    /// Number of elements in the longest chain ending at each element, minus one.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.linear_extension() {
            h[x] = self.down[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Longest chain length minus one; `-1` for the empty poset.
    pub fn dimension(&self) -> isize {
        self.heights().into_iter().max().map_or(-1, |h| h as isize)
    }

    pub fn dimension_of(&self, m: &Mask) -> isize {
        if m.is_empty() {
            return -1;
        }
        self.sub(m).dimension()
    }

    /// Some `a < b` with exactly one element strictly between them.
    pub fn three_element_interval(&self) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in self.above[a].iter() {
                if self.above[a].intersection_count(&self.below[b]) == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Least upper bound of `a` and `b`, if one exists.
    pub fn join_of(&self, a: usize, b: usize) -> Option<usize> {
        let ub = self.up_set(a).intersection(&self.up_set(b));
        if ub.is_empty() {
            return None;
        }
        self.least_in(&ub)
    }

    pub fn meet_of(&self, a: usize, b: usize) -> Option<usize> {
        let lb = self.down_set(a).intersection(&self.down_set(b));
        if lb.is_empty() {
            return None;
        }
        self.greatest_in(&lb)
    }

    /// Every bounded pair has a join; in a finite poset this is enough.
    pub fn is_conditionally_complete(&self) -> bool {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let ub = self.up_set(a).intersection(&self.up_set(b));
                if !ub.is_empty() && self.least_in(&ub).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Dual criterion: every pair bounded below has a meet.
    pub fn is_conditionally_complete_by_meets(&self) -> bool {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let lb = self.down_set(a).intersection(&self.down_set(b));
                if !lb.is_empty() && self.greatest_in(&lb).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive check over every nonempty subset. Only for small posets.
    pub fn is_conditionally_complete_exhaustive(&self) -> bool {
        let n = self.len();
        assert!(
            n <= 20,
            "exhaustive completeness check limited to 20 elements"
        );
        for bits in 1u32..(1u32 << n) {
            let mut ub = self.full_mask();
            for x in 0..n {
                if bits >> x & 1 == 1 {
                    ub.intersect_with(&self.up_set(x));
                }
            }
            if !ub.is_empty() && self.least_in(&ub).is_none() {
                return false;
            }
        }
        true
    }

    pub fn atoms(&self) -> Mask {
        BitSet::from_indices(self.len(), self.minimal())
    }

    /// Atoms lying below or at `x`.
    pub fn atoms_below(&self, x: usize) -> Mask {
        self.down_set(x).intersection(&self.atoms())
    }

    /// Every element is the least upper bound of the atoms below it.
    pub fn is_atomic(&self) -> bool {
        self.non_atomic_witness().is_none()
    }

    pub fn non_atomic_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&x| {
            let atoms = self.atoms_below(x);
            let mut ub = self.full_mask();
            for a in atoms.iter() {
                ub.intersect_with(&self.up_set(a));
            }
            self.least_in(&ub) != Some(x)
        })
    }

    /// `σ ↦ A(⌊σ⌋)` into the simplex on the atoms.
    pub fn atom_embedding(&self) -> Result<MonotoneMap> {
        if let Some(x) = self.non_atomic_witness() {
            return Err(Error::NotAtomic(self.labels[x].clone()));
        }
        let atoms: Vec<usize> = self.minimal();
        let names: Vec<String> = atoms.iter().map(|&a| self.labels[a].clone()).collect();
        let simplex = crate::ops::simplex(&names);
        let table: Vec<usize> = (0..self.len())
            .map(|x| {
                let verts: Vec<String> = atoms
                    .iter()
                    .filter(|&&a| self.le(a, x))
                    .map(|&a| self.labels[a].clone())
                    .collect();
                simplex
                    .id(&crate::ops::face_label(&verts))
                    .expect("face present in simplex")
            })
            .collect();
        MonotoneMap::new(self.clone(), simplex, table)
    }

    /// Same labels at the same indices and the same order.
    pub fn same_as(&self, other: &Poset) -> bool {
        self.labels == other.labels && self.below == other.below
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(
            f,
            "Poset {{ elements: [{}], covers: [{}] }}",
            self.labels.join(" "),
            covers.join(" ")
        )
    }
}

/// Kahn's algorithm; on failure returns a directed cycle.
pub(crate) fn topological_order(succ: &[BitSet]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for w in s.iter() {
            indeg[w] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in succ[v].iter() {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every vertex left has positive in-degree from other leftovers; walk backwards.
    let left: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let mut pred = vec![usize::MAX; n];
    for v in 0..n {
        if left[v] {
            for w in succ[v].iter() {
                if left[w] && pred[w] == usize::MAX {
                    pred[w] = v;
                }
            }
        }
    }
    let start = (0..n).find(|&v| left[v]).unwrap();
    let mut seen = vec![false; n];
    let mut v = start;
    while !seen[v] {
        seen[v] = true;
        v = pred[v];
    }
    let mut cycle = vec![v];
    let mut u = pred[v];
    while u != v {
        cycle.push(u);
        u = pred[u];
    }
    cycle.reverse();
    Err(cycle)
}
