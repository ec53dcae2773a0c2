//! Exhaustive corpus of small simplicial complexes up to isomorphism.

use std::collections::{BTreeSet, VecDeque};

use super::FacetComplex;

/// Faces as a bitmask over vertex subsets: bit `s` is set when the face with vertex set `s` is present.
type Family = u64;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn apply(perm: &[usize], s: usize) -> usize {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| s >> i & 1 == 1)
        .map(|(_, &j)| 1 << j)
        .sum()
}

fn canonical_family(f: Family, perms: &[Vec<usize>]) -> Family {
    perms
        .iter()
        .map(|p| {
            (1..64)
                .filter(|&s| f >> s & 1 == 1)
                .map(|s| 1u64 << apply(p, s))
                .sum()
        })
        .min()
        .unwrap_or(f)
}

fn to_complex(f: Family, n: usize) -> FacetComplex {
    let used: Vec<usize> = (0..n).filter(|&v| f >> (1u64 << v) & 1 == 1).collect();
    let names: Vec<String> = (0..used.len())
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let faces: Vec<Vec<usize>> = (1..1usize << n)
        .filter(|&s| f >> s & 1 == 1)
        .map(|s| {
            used.iter()
                .enumerate()
                .filter(|(_, &v)| s >> v & 1 == 1)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    FacetComplex::from_simplices(names, faces).expect("down-closed family")
}

/// Every simplicial complex on at most `max_vertices` vertices (at most 5),
/// one per isomorphism class, including the empty complex. Vertices are
/// named `a`, `b`, ... in order of use.
pub fn small_complexes(max_vertices: usize) -> Vec<FacetComplex> {
    assert!(max_vertices <= 5, "corpus limited to five vertices");
    let n = max_vertices;
    let perms = permutations(n);
    let mut seen: BTreeSet<Family> = BTreeSet::new();
    let mut queue = VecDeque::from([0u64]);
    seen.insert(0);
    while let Some(f) = queue.pop_front() {
        for s in 1..1usize << n {
            let addable = f >> s & 1 == 0
                && (0..n).all(|i| s >> i & 1 == 0 || s == 1 << i || f >> (s & !(1 << i)) & 1 == 1);
            if addable {
                let g = canonical_family(f | 1 << s, &perms);
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
    }
    let mut out: Vec<(usize, Family)> = seen
        .into_iter()
        .map(|f| (f.count_ones() as usize, f))
        .collect();
    out.sort();
    out.into_iter().map(|(_, f)| to_complex(f, n)).collect()
}
