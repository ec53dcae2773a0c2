use std::collections::HashMap;

use super::{canonical, subset_label, FacetComplex};
use crate::poset::Poset;

fn subsets_poset<S: AsRef<str>>(ground: &[S], keep: impl Fn(u64) -> bool) -> Poset {
    let n = ground.len();
    assert!(n < 63, "ground set too large");
    let mut sets: Vec<u64> = (0..1u64 << n).filter(|&s| keep(s)).collect();
    sets.sort_by_key(|&s| {
        (
            s.count_ones(),
            (0..n).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>(),
        )
    });
    let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let labels = sets
        .iter()
        .map(|&s| {
            let verts: Vec<&str> = (0..n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| ground[i].as_ref())
                .collect();
            subset_label(&verts)
        })
        .collect();
    let mut rel = Vec::new();
    for (&s, &i) in &index {
        for k in 0..n {
            if s >> k & 1 == 1 {
                if let Some(&j) = index.get(&(s & !(1 << k))) {
                    rel.push((j, i));
                }
            }
        }
    }
    Poset::new(labels, &rel).expect("subset inclusion is acyclic")
}

/// `Δ^S`: nonempty subsets of `S`.
pub fn simplex<S: AsRef<str>>(ground: &[S]) -> Poset {
    subsets_poset(ground, |s| s != 0)
}

/// `∂Δ^S`: nonempty proper subsets of `S`.
pub fn boundary_simplex<S: AsRef<str>>(ground: &[S]) -> Poset {
    let full = (1u64 << ground.len()) - 1;
    subsets_poset(ground, |s| s != 0 && s != full)
}

/// `2^S`: all subsets, the empty one labelled `{}`.
pub fn powerset<S: AsRef<str>>(ground: &[S]) -> Poset {
    subsets_poset(ground, |_| true)
}

/// `I^S = (2^S)#`.
pub fn cube<S: AsRef<str>>(ground: &[S]) -> Poset {
    canonical(&powerset(ground))
}

/// Mirrors a simplicial complex on `n` vertices into a cubical complex in
/// `I^n`: the preimage of `C*K` under the folding map `[S,T] ↦ T∖S`.
pub fn mirror(k: &FacetComplex) -> Poset {
    let n = k.vertices().len();
    assert!(n < 20, "mirroring limited to fewer than 20 vertices");
    let allowed = |d: u32| d == 0 || k.contains_face_bits(d as u64);
    let mut index = HashMap::new();
    let mut labels = Vec::new();
    let name = |s: u32| {
        let verts: Vec<&str> = (0..n)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| k.vertices()[i].as_str())
            .collect();
        subset_label(&verts)
    };
    for t in 0u32..1 << n {
        let mut s = t;
        loop {
            if allowed(t & !s) {
                index.insert((s, t), labels.len());
                labels.push(format!("[{},{}]", name(s), name(t)));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
    let mut rel = Vec::new();
    for (&(s, t), &i) in &index {
        for b in 0..n {
            let bit = 1u32 << b;
            if s & bit != 0 {
                if let Some(&j) = index.get(&(s & !bit, t)) {
                    rel.push((i, j));
                }
            } else if t & bit == 0 {
                if let Some(&j) = index.get(&(s, t | bit)) {
                    rel.push((i, j));
                }
            }
        }
    }
    Poset::new(labels, &rel).expect("interval inclusion is acyclic")
}
