use std::fmt;

use super::{Mask, Poset};
use crate::error::{Error, Result};

/// An order-preserving map, checked at construction.
#[derive(Clone)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::TableLength {
                expected: source.len(),
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        for (a, b) in source.cover_pairs() {
            if !target.le(table[a], table[b]) {
                return Err(Error::NotMonotone {
                    lo: source.label(a).into(),
                    hi: source.label(b).into(),
                    lo_image: target.label(table[a]).into(),
                    hi_image: target.label(table[b]).into(),
                });
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            table,
        })
    }

    /// Builds a map from `(source label, target label)` pairs.
    pub fn from_labels<S: AsRef<str>>(
        source: Poset,
        target: Poset,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            table[source.id(a.as_ref())?] = target.id(b.as_ref())?;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Precondition(format!(
                "no image given for `{}`",
                source.label(i)
            )));
        }
        MonotoneMap::new(source, target, table)
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap {
            source: p.clone(),
            target: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image_of(&self, m: &Mask) -> Mask {
        Mask::from_indices(self.target.len(), m.iter().map(|x| self.table[x]))
    }

    pub fn preimage_of(&self, m: &Mask) -> Mask {
        Mask::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&x| m.contains(self.table[x])),
        )
    }

    pub fn fiber(&self, q: usize) -> Mask {
        Mask::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&x| self.table[x] == q),
        )
    }

    /// `f(⌊p⌋) = ⌊f(p)⌋` for every `p`.
    pub fn is_closed(&self) -> bool {
        (0..self.source.len())
            .all(|p| self.image_of(&self.source.down_set(p)) == self.target.down_set(self.table[p]))
    }

    /// `f(⌈p⌉) = ⌈f(p)⌉` for every `p`.
    pub fn is_open(&self) -> bool {
        (0..self.source.len())
            .all(|p| self.image_of(&self.source.up_set(p)) == self.target.up_set(self.table[p]))
    }

    /// `p ≤ q` iff `f(p) ≤ f(q)`.
    pub fn is_embedding(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| self.source.le(a, b) == self.target.le(self.table[a], self.table[b]))
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.table {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len() && self.is_surjective() && self.is_embedding()
    }

    /// Every point-inverse is a full subposet of the source.
    pub fn is_full(&self) -> bool {
        self.non_full_fiber().is_none()
    }

    pub fn non_full_fiber(&self) -> Option<usize> {
        (0..self.target.len()).find(|&q| !self.source.is_full(&self.fiber(q)))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target.len() != next.source.len() {
            return Err(Error::Precondition("maps are not composable".into()));
        }
        let table = self.table.iter().map(|&x| next.table[x]).collect();
        MonotoneMap::new(self.source.clone(), next.target.clone(), table)
    }

    pub fn dual(&self) -> MonotoneMap {
        MonotoneMap {
            source: self.source.dual(),
            target: self.target.dual(),
            table: self.table.clone(),
        }
    }

    /// Inverse of a bijective embedding.
    pub fn inverse(&self) -> Result<MonotoneMap> {
        if !self.is_isomorphism() {
            return Err(Error::NotIsomorphism(
                "map is not bijective with monotone inverse".into(),
            ));
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        MonotoneMap::new(self.target.clone(), self.source.clone(), inv)
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.source.label(x), self.target.label(y)))
            .collect();
        write!(f, "MonotoneMap [{}]", pairs.join(" "))
    }
}
