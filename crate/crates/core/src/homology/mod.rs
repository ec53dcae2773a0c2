//! Integral homology of order complexes.

mod snf;

pub use snf::{dense_snf, invariant_factors, rank_mod2, SparseMatrix};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::ops::chains;
use crate::poset::{Mask, Poset};

/// Simplicial chain complex of the order complex `Δ(P)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `simplices[k]` are the chains with `k + 1` elements, bottom to top.
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `boundaries[k]` maps degree `k` to degree `k - 1`; entry 0 is empty.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn of(p: &Poset) -> Self {
        let all = chains(p);
        let top = all.last().map_or(0, |c| c.len());
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for c in all {
            simplices[c.len() - 1].push(c);
        }
        let mut boundaries = Vec::with_capacity(top);
        for k in 0..top {
            if k == 0 {
                boundaries.push(SparseMatrix::new(0, vec![Vec::new(); simplices[0].len()]));
                continue;
            }
            let index: HashMap<&[usize], usize> = simplices[k - 1]
                .iter()
                .enumerate()
                .map(|(i, c)| (c.as_slice(), i))
                .collect();
            let cols = simplices[k]
                .iter()
                .map(|c| {
                    let mut col: Vec<(usize, i64)> = (0..c.len())
                        .map(|i| {
                            let mut face = c.clone();
                            face.remove(i);
                            (index[face.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::new(simplices[k - 1].len(), cols));
        }
        ChainComplex {
            simplices,
            boundaries,
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    /// `∂∂ = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|k| {
            self.boundaries[k - 1]
                .compose(&self.boundaries[k])
                .is_zero()
        })
    }
}

/// Betti numbers and torsion coefficients of unreduced homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    /// Torsion coefficients in each degree, as decimal strings.
    pub torsion: Vec<Vec<String>>,
    pub euler: i64,
}

impl HomologyProfile {
    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// Reduced Betti numbers; index 0 is degree `-1`.
    pub fn reduced_betti(&self) -> Vec<usize> {
        let mut out = vec![0; self.betti.len() + 1];
        if self.betti.is_empty() {
            out[0] = 1;
        } else {
            out[1..].copy_from_slice(&self.betti);
            out[1] -= 1;
        }
        out
    }

    /// Reduced homology of `S^d`: a single `Z` in degree `d`.
    pub fn is_sphere_like(&self, d: isize) -> bool {
        if self.has_torsion() {
            return false;
        }
        let r = self.reduced_betti();
        r.iter()
            .enumerate()
            .all(|(i, &b)| b == usize::from(i as isize - 1 == d))
            && (d + 1) < r.len() as isize
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_torsion() && self.reduced_betti().iter().all(|&b| b == 0)
    }
}

pub fn homology(p: &Poset) -> HomologyProfile {
    let cx = ChainComplex::of(p);
    let ranks = cx.ranks();
    let factors: Vec<Vec<BigInt>> = cx.boundaries.iter().map(invariant_factors).collect();
    let top = ranks.len();
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for k in 0..top {
        let rk_out = factors[k].len();
        let (rk_in, tors) = match factors.get(k + 1) {
            Some(f) => (
                f.len(),
                f.iter()
                    .filter(|d| !d.is_one())
                    .map(|d| d.to_string())
                    .collect(),
            ),
            None => (0, Vec::new()),
        };
        betti.push(ranks[k] - rk_out - rk_in);
        torsion.push(tors);
    }
    HomologyProfile {
        betti,
        torsion,
        euler: euler_characteristic(p),
    }
}

/// Betti numbers over `Z/2`.
pub fn homology_mod2(p: &Poset) -> Vec<usize> {
    let cx = ChainComplex::of(p);
    let ranks = cx.ranks();
    let r: Vec<usize> = cx.boundaries.iter().map(rank_mod2).collect();
    (0..ranks.len())
        .map(|k| ranks[k] - r[k] - r.get(k + 1).copied().unwrap_or(0))
        .collect()
}

/// Number of chains with `k + 1` elements, for each `k`.
pub fn chain_counts(p: &Poset) -> Vec<u64> {
    let n = p.len();
    let mut ending: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut totals: Vec<u64> = Vec::new();
    for x in p.linear_extension() {
        let mut row = vec![1u64];
        for y in p.below(x).iter() {
            for (len, &c) in ending[y].iter().enumerate() {
                if row.len() <= len + 1 {
                    row.resize(len + 2, 0);
                }
                row[len + 1] += c;
            }
        }
        for (k, &c) in row.iter().enumerate() {
            if totals.len() <= k {
                totals.resize(k + 1, 0);
            }
            totals[k] += c;
        }
        ending[x] = row;
    }
    totals
}

pub fn euler_characteristic(p: &Poset) -> i64 {
    chain_counts(p)
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

pub fn euler_characteristic_of(p: &Poset, m: &Mask) -> i64 {
    euler_characteristic(&p.sub(m))
}

/// Trivial reduced integral homology. The empty poset is not acyclic.
pub fn is_z_acyclic(p: &Poset) -> bool {
    !p.is_empty() && homology(p).is_acyclic()
}

/// Connectedness of the comparability graph. The empty poset is not connected.
pub fn is_connected(p: &Poset) -> bool {
    components(p).len() == 1
}

/// Connected components of the comparability graph.
pub fn components(p: &Poset) -> Vec<Mask> {
    let mut seen = p.empty_mask();
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = p.empty_mask();
        let mut stack = vec![s];
        comp.insert(s);
        while let Some(x) = stack.pop() {
            for y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                if comp.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        seen.union_with(&comp);
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{barycentric, boundary_simplex, cone, simplex, FacetComplex};

    fn projective_plane() -> Poset {
        // Six-vertex triangulation.
        let f: &[&[&str]] = &[
            &["1", "2", "3"],
            &["1", "3", "4"],
            &["1", "4", "5"],
            &["1", "5", "6"],
            &["1", "2", "6"],
            &["2", "3", "5"],
            &["3", "4", "6"],
            &["2", "4", "5"],
            &["3", "5", "6"],
            &["2", "4", "6"],
        ];
        FacetComplex::from_labels(&["1", "2", "3", "4", "5", "6"], f)
            .unwrap()
            .face_poset()
    }

    #[test]
    fn spheres_and_balls() {
        let s2 = boundary_simplex(&["a", "b", "c", "d"]);
        let h = homology(&s2);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(h.euler, 2);
        assert!(h.is_sphere_like(2));
        assert!(is_z_acyclic(&simplex(&["a", "b", "c"])));
        assert!(is_z_acyclic(&cone(&s2)));
        assert!(!is_z_acyclic(&Poset::empty()));
        assert!(homology(&Poset::empty()).is_sphere_like(-1));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        let p = projective_plane();
        let h = homology(&p);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec!["2".to_string()]);
        assert_eq!(h.euler, 1);
        assert_eq!(homology_mod2(&p), vec![1, 1, 1]);
        assert!(!is_z_acyclic(&p));
    }

    #[test]
    fn chain_counts_match_enumeration() {
        let p = barycentric(&boundary_simplex(&["a", "b", "c"]));
        let cx = ChainComplex::of(&p);
        assert!(cx.is_complex());
        let counts: Vec<u64> = cx.ranks().into_iter().map(|r| r as u64).collect();
        assert_eq!(chain_counts(&p), counts);
        assert_eq!(euler_characteristic(&p), 0);
    }

    #[test]
    fn hollow_triangle_complex() {
        // Six chains of one element, six of two; the circle has betti (1, 1).
        let p = boundary_simplex(&["a", "b", "c"]);
        let cx = ChainComplex::of(&p);
        assert_eq!(cx.ranks(), vec![6, 6]);
        assert!(cx.is_complex());
        let h = homology(&p);
        assert_eq!(h.betti, vec![1, 1]);
        assert!(!h.has_torsion());
        assert!(!is_z_acyclic(&p));
        assert_eq!(ChainComplex::of(&Poset::point("x")).ranks(), vec![1]);
        assert!(ChainComplex::of(&Poset::empty()).ranks().is_empty());
    }

    #[test]
    fn mod_two_betti_follow_universal_coefficients() {
        // b_k(Z/2) = b_k + t_k + t_{k-1}, with t_k the number of even torsion coefficients.
        for p in [
            projective_plane(),
            boundary_simplex(&["a", "b", "c", "d"]),
            barycentric(&simplex(&["a", "b"])),
        ] {
            let h = homology(&p);
            let even = |k: usize| {
                h.torsion.get(k).map_or(0, |t| {
                    t.iter()
                        .filter(|d| d.parse::<u64>().unwrap() % 2 == 0)
                        .count()
                })
            };
            let expect: Vec<usize> = (0..h.betti.len())
                .map(|k| h.betti[k] + even(k) + if k > 0 { even(k - 1) } else { 0 })
                .collect();
            assert_eq!(homology_mod2(&p), expect);
        }
    }

    #[test]
    fn components_of_antichain() {
        let p = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(components(&p).len(), 2);
        assert!(!is_connected(&p));
        assert!(is_connected(&simplex(&["a", "b"])));
        assert_eq!(homology(&p).betti, vec![2]);
    }
}
