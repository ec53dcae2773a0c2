#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zipper_core::ops::{cube, product, simplex, FacetComplex};
use zipper_core::{MonotoneMap, Poset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on `n` elements: each pair `i < j` is related with probability `density`.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut rel = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    Poset::new(labels, &rel).unwrap()
}

pub fn random_poset_named(rng: &mut impl Rng, n: usize, density: f64, prefix: &str) -> Poset {
    let p = random_poset(rng, n, density);
    p.relabeled((0..n).map(|i| format!("{prefix}{i}")).collect())
        .unwrap()
}

/// Random monotone map, choosing each image among the common upper bounds
/// of the images below it; `None` if some element has no admissible image.
pub fn random_map(rng: &mut impl Rng, p: &Poset, q: &Poset) -> Option<MonotoneMap> {
    let mut table = vec![usize::MAX; p.len()];
    for x in p.linear_extension() {
        let choices: Vec<usize> = (0..q.len())
            .filter(|&y| p.below(x).iter().all(|z| q.le(table[z], y)))
            .collect();
        if choices.is_empty() {
            return None;
        }
        table[x] = choices[rng.gen_range(0..choices.len())];
    }
    MonotoneMap::new(p.clone(), q.clone(), table).ok()
}

/// Random simplicial complex on up to `n` vertices with a few random facets.
pub fn random_complex(rng: &mut impl Rng, n: usize) -> FacetComplex {
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let k = rng.gen_range(1..=3);
    let facets: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let f: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if f.is_empty() {
                vec![rng.gen_range(0..n)]
            } else {
                f
            }
        })
        .collect();
    FacetComplex::from_simplices(names, facets).unwrap()
}

pub fn prism() -> Poset {
    product(&simplex(&["a", "b", "c"]), &simplex(&["x", "y"]))
}

pub fn square() -> Poset {
    cube(&["x", "y"])
}

pub fn octahedron() -> FacetComplex {
    let v = ["a", "A", "b", "B", "c", "C"];
    let mut facets = Vec::new();
    for x in ["a", "A"] {
        for y in ["b", "B"] {
            for z in ["c", "C"] {
                facets.push(vec![x, y, z]);
            }
        }
    }
    let refs: Vec<&[&str]> = facets.iter().map(|f| f.as_slice()).collect();
    FacetComplex::from_labels(&v, &refs).unwrap()
}

/// Eight-vertex dunce hat: a triangle with its sides glued `a a a⁻¹`, triangulated with five interior vertices.
pub fn dunce_hat() -> FacetComplex {
    let text = "123 125 126 137 158 168 178 238 246 248 257 278 347 348 456 457 568";
    let names = ["1", "2", "3", "4", "5", "6", "7", "8"];
    let facets: Vec<Vec<&str>> = text
        .split(' ')
        .map(|t| t.split("").filter(|s| !s.is_empty()).collect())
        .collect();
    let refs: Vec<&[&str]> = facets.iter().map(|f| f.as_slice()).collect();
    FacetComplex::from_labels(&names, &refs).unwrap()
}

/// Random simplicial map out of a random complex on `n` vertices, onto the
/// complex spanned by the images of its facets on `m` vertices.
pub fn random_simplicial_map(rng: &mut impl Rng, n: usize, m: usize) -> MonotoneMap {
    let k = random_complex(rng, n);
    let phi: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    let names: Vec<String> = (0..m).map(|i| format!("v{i}")).collect();
    let image = |f: &[usize]| {
        let mut g: Vec<usize> = f.iter().map(|&v| phi[v]).collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let l =
        FacetComplex::from_simplices(names, k.facets().iter().map(|f| image(f)).collect()).unwrap();
    let (src, tgt) = (k.face_poset(), l.face_poset());
    let table = k
        .faces()
        .iter()
        .map(|f| tgt.id(&l.face_name(&image(f))).unwrap())
        .collect();
    MonotoneMap::new(src, tgt, table).unwrap()
}
