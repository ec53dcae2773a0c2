use std::collections::{BTreeSet, HashMap};

use super::face_label;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A simplicial complex given by its vertex names and maximal faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl FacetComplex {
    /// Facets must be nonempty and pairwise non-nested.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut norm: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            let mut f = f;
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                return Err(Error::Facets("empty facet".into()));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::IndexOutOfRange(v));
            }
            norm.push(f);
        }
        for (i, a) in norm.iter().enumerate() {
            for (j, b) in norm.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    let name = |f: &Vec<usize>| {
                        face_label(&f.iter().map(|&v| vertices[v].as_str()).collect::<Vec<_>>())
                    };
                    return Err(Error::Facets(format!(
                        "facet {} lies in facet {}",
                        name(a),
                        name(b)
                    )));
                }
            }
        }
        norm.sort();
        Ok(FacetComplex {
            vertices,
            facets: norm,
        })
    }

    pub fn from_labels<S: AsRef<str>>(vertices: &[S], facets: &[&[S]]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut fs = Vec::new();
        for f in facets {
            let mut face = Vec::new();
            for v in f.iter() {
                face.push(
                    *index
                        .get(v.as_ref())
                        .ok_or_else(|| Error::UnknownLabel(v.as_ref().into()))?,
                );
            }
            fs.push(face);
        }
        FacetComplex::new(vertices, fs)
    }

    /// Keeps only the maximal simplices of an arbitrary list.
    pub fn from_simplices(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .filter(|a| !sets.iter().any(|b| b.len() > a.len() && is_subset(a, b)))
            .cloned()
            .collect();
        FacetComplex::new(vertices, maximal)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Face test on a vertex bitmask (vertex `i` is bit `i`).
    pub fn contains_face_bits(&self, bits: u64) -> bool {
        self.facets.iter().any(|f| {
            let fb: u64 = f.iter().map(|&v| 1u64 << v).sum();
            bits & !fb == 0
        })
    }

    /// All nonempty faces, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let k = f.len();
            for bits in 1u32..1 << k {
                out.insert(
                    (0..k)
                        .filter(|i| bits >> i & 1 == 1)
                        .map(|i| f[i])
                        .collect::<Vec<usize>>(),
                );
            }
        }
        let mut v: Vec<Vec<usize>> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn face_name(&self, face: &[usize]) -> String {
        face_label(
            &face
                .iter()
                .map(|&v| self.vertices[v].as_str())
                .collect::<Vec<_>>(),
        )
    }

    /// Face poset; faces are labelled by their vertex names.
    pub fn face_poset(&self) -> Poset {
        let faces = self.faces();
        let index: HashMap<&[usize], usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let mut rel = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for k in 0..f.len() {
                let mut g = f.clone();
                g.remove(k);
                rel.push((index[g.as_slice()], i));
            }
        }
        let labels = faces.iter().map(|f| self.face_name(f)).collect();
        Poset::new(labels, &rel).expect("face inclusion is acyclic")
    }

    /// Classical link: faces disjoint from `face` whose union with it is a face.
    pub fn link(&self, face: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if !is_subset(face, f) {
                continue;
            }
            let rest: Vec<usize> = f.iter().copied().filter(|v| !face.contains(v)).collect();
            let k = rest.len();
            for bits in 1u32..1 << k {
                out.insert(
                    (0..k)
                        .filter(|i| bits >> i & 1 == 1)
                        .map(|i| rest[i])
                        .collect::<Vec<usize>>(),
                );
            }
        }
        out
    }

    /// `lk(v) ∩ lk(w) = lk(vw)` for the edge `vw`.
    pub fn satisfies_link_condition(&self, v: usize, w: usize) -> bool {
        let mut edge = vec![v, w];
        edge.sort_unstable();
        if v == w || !self.is_face(&edge) {
            return false;
        }
        let lv = self.link(&[v]);
        let lw = self.link(&[w]);
        let common: BTreeSet<Vec<usize>> = lv.intersection(&lw).cloned().collect();
        common == self.link(&edge)
    }

    /// Identifies `w` with `v`; `w` is dropped from the vertex list.
    pub fn contract(&self, v: usize, w: usize) -> Result<FacetComplex> {
        if v == w || v >= self.vertices.len() || w >= self.vertices.len() {
            return Err(Error::Precondition(
                "contraction needs two distinct vertices".into(),
            ));
        }
        let shift = |x: usize| if x > w { x - 1 } else { x };
        let target = shift(v);
        let simplices: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&x| if x == w { target } else { shift(x) })
                    .collect()
            })
            .collect();
        let mut vertices = self.vertices.clone();
        vertices.remove(w);
        FacetComplex::from_simplices(vertices, simplices)
    }

    /// Vertices that lie in at least one facet.
    pub fn used_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}
