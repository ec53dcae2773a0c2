use std::collections::HashMap;
use std::fmt;

use super::{topological_order, Poset};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite set with a strictly acyclic relation. Its transitive closure is a poset.
#[derive(Clone)]
pub struct Preposet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<BitSet>,
}

impl Preposet {
    pub fn new(labels: Vec<String>, arrows: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut succ = vec![BitSet::new(n); n];
        for &(a, b) in arrows {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(Error::SelfArrow(labels[a].clone()));
            }
            succ[a].insert(b);
        }
        topological_order(&succ)
            .map_err(|c| Error::Cycle(c.into_iter().map(|i| labels[i].clone()).collect()))?;
        Ok(Preposet {
            labels,
            index,
            succ,
        })
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut pairs = Vec::new();
        for (a, b) in arrows {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().into()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().into()))?;
            pairs.push((ia, ib));
        }
        Preposet::new(labels, &pairs)
    }

    /// A poset viewed as a preposet whose arrows are all strict relations.
    pub fn from_poset(p: &Poset) -> Self {
        let succ = (0..p.len()).map(|x| p.above(x).clone()).collect();
        Preposet {
            labels: p.labels().to_vec(),
            index: p.index.clone(),
            succ,
        }
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

    /// `a ≺ b` directly.
    pub fn arrow(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    /// Reflexive version of the relation.
    pub fn related(&self, a: usize, b: usize) -> bool {
        a == b || self.arrow(a, b)
    }

    pub fn successors(&self, a: usize) -> &BitSet {
        &self.succ[a]
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.succ[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// The relation is already transitive.
    pub fn is_poset(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// A triple `a ≺ b ≺ c` with no arrow `a ≺ c`.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.len() {
            for b in self.succ[a].iter() {
                if let Some(c) = self.succ[b].difference(&self.succ[a]).first() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn transitive_closure(&self) -> Poset {
        Poset::new(self.labels.clone(), &self.arrows()).expect("acyclic by construction")
    }

    /// The poset itself when the relation is already transitive.
    pub fn to_poset(&self) -> Result<Poset> {
        match self.transitivity_witness() {
            Some((a, b, c)) => Err(Error::NotTransitive {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
                c: self.labels[c].clone(),
            }),
            None => Ok(self.transitive_closure()),
        }
    }

    pub fn dual(&self) -> Preposet {
        let n = self.len();
        let mut succ = vec![BitSet::new(n); n];
        for (a, b) in self.arrows() {
            succ[b].insert(a);
        }
        Preposet {
            labels: self.labels.clone(),
            index: self.index.clone(),
            succ,
        }
    }
}

impl fmt::Debug for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(
            f,
            "Preposet {{ elements: [{}], arrows: [{}] }}",
            self.labels.join(" "),
            arrows.join(" ")
        )
    }
}
