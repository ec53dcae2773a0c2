//! Constructions on posets: cones, joins, products, subdivisions, standard
//! complexes, mirroring and handle decompositions.

mod basic;
mod corpus;
mod facets;
mod handles;
mod standard;
mod subdivide;

pub use basic::{cojoin, cone, disjoint_union, dual_cone, join, link, prejoin, product, star};
pub use corpus::small_complexes;
pub use facets::FacetComplex;
pub use handles::{barycentric_handles, handle_cocore_map, handle_core_map, handles};
pub use standard::{boundary_simplex, cube, mirror, powerset, simplex};
pub(crate) use subdivide::chains;
pub use subdivide::{barycentric, barycentric_preposet, canonical};

use std::collections::HashSet;

/// Label of a face given its vertex labels, e.g. `abc` or `v1.v2`.
pub fn face_label<S: AsRef<str>>(verts: &[S]) -> String {
    if verts.iter().all(|v| v.as_ref().chars().count() == 1) {
        verts.iter().map(|v| v.as_ref()).collect()
    } else {
        verts
            .iter()
            .map(|v| v.as_ref())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Label of a subset of a ground set, with `{}` for the empty set.
pub(crate) fn subset_label<S: AsRef<str>>(verts: &[S]) -> String {
    if verts.is_empty() {
        "{}".to_string()
    } else {
        face_label(verts)
    }
}

/// `base`, or `base` followed by primes until it avoids `taken`.
pub(crate) fn fresh(base: &str, taken: &[String]) -> String {
    let taken: HashSet<&str> = taken.iter().map(|s| s.as_str()).collect();
    let mut l = base.to_string();
    while taken.contains(l.as_str()) {
        l.push('\'');
    }
    l
}

/// Keeps both label lists when disjoint; otherwise prefixes `0:` and `1:`.
pub(crate) fn disjoint_labels(a: &[String], b: &[String]) -> (Vec<String>, Vec<String>) {
    let sa: HashSet<&String> = a.iter().collect();
    if b.iter().any(|l| sa.contains(l)) {
        (
            a.iter().map(|l| format!("0:{l}")).collect(),
            b.iter().map(|l| format!("1:{l}")).collect(),
        )
    } else {
        (a.to_vec(), b.to_vec())
    }
}
