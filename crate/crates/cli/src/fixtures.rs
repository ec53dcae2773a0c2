//! Generators for the standard fixtures.

use zipper_core::ops::{boundary_simplex, cube, mirror, product, simplex, FacetComplex};

use crate::text::Subject;

/// Names `a`, `b`, ... for up to 26 vertices, then `v0`, `v1`, ...
pub fn vertex_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    }
}

/// Face poset of `Δ^{n-1}` on `n` vertices.
pub fn simplex_fixture(n: usize) -> Subject {
    Subject::Poset(simplex(&vertex_names(n)))
}

pub fn boundary_simplex_fixture(n: usize) -> Subject {
    Subject::Poset(boundary_simplex(&vertex_names(n)))
}

/// `I^n` with coordinate names `x`, `y`, `z`, `w` (then `x4`, `x5`, ...).
pub fn cube_fixture(n: usize) -> Subject {
    let names: Vec<String> = (0..n)
        .map(|i| {
            ["x", "y", "z", "w"]
                .get(i)
                .map_or_else(|| format!("x{i}"), |s| s.to_string())
        })
        .collect();
    Subject::Poset(cube(&names))
}

/// `Δ² × Δ¹`.
pub fn prism_fixture() -> Subject {
    Subject::Poset(product(&simplex(&["a", "b", "c"]), &simplex(&["x", "y"])))
}

/// Boundary of the octahedron; antipodal vertices are `a`/`A`, `b`/`B`, `c`/`C`.
pub fn octahedron() -> FacetComplex {
    let mut facets = Vec::new();
    for x in ["a", "A"] {
        for y in ["b", "B"] {
            for z in ["c", "C"] {
                facets.push(vec![x, y, z]);
            }
        }
    }
    let refs: Vec<&[&str]> = facets.iter().map(|f| f.as_slice()).collect();
    FacetComplex::from_labels(&["A", "B", "C", "a", "b", "c"], &refs).expect("octahedron facets")
}

/// Eight-vertex triangulation of the dunce hat, 17 triangles. Built from a
/// triangle whose sides are glued by the word `a a a⁻¹`: the corners become
/// vertex 8, the glued side carries vertices 1 and 2, and 3 to 7 are interior.
pub fn dunce_hat() -> FacetComplex {
    let text = "123 125 126 137 158 168 178 238 246 248 257 278 347 348 456 457 568";
    let names = ["1", "2", "3", "4", "5", "6", "7", "8"];
    let facets: Vec<Vec<&str>> = text
        .split(' ')
        .map(|t| t.split("").filter(|s| !s.is_empty()).collect())
        .collect();
    let refs: Vec<&[&str]> = facets.iter().map(|f| f.as_slice()).collect();
    FacetComplex::from_labels(&names, &refs).expect("dunce hat facets")
}

pub fn mirror_fixture(k: &FacetComplex) -> Subject {
    Subject::Poset(mirror(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zipper_core::homology::homology;

    #[test]
    fn dunce_hat_counts() {
        let k = dunce_hat();
        let p = k.face_poset();
        assert_eq!(k.facets().len(), 17);
        assert_eq!(p.len(), 8 + 24 + 17);
        let h = homology(&p);
        assert!(h.reduced_betti().iter().all(|&b| b == 0) && !h.has_torsion());
        // No free edge: every edge lies in at least two triangles.
        for e in 0..p.len() {
            if p.below(e).count() == 2 {
                assert!(p.above(e).count() >= 2, "free edge {}", p.label(e));
            }
        }
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        let h = homology(&octahedron().face_poset());
        assert_eq!(h.betti, vec![1, 0, 1]);
    }
}
