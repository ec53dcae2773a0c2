//! Dual constructibility of point-inverses, decided two ways.

use super::construction::find_construction_with;
use super::{Limits, Search};
use crate::poset::{MonotoneMap, Poset};
use crate::recognize::{is_filtration_map, Verdict, Witness};

fn dual_constructible(p: &Poset, limits: &Limits) -> Option<bool> {
    match find_construction_with(&p.dual(), limits) {
        Search::Found(_) => Some(true),
        Search::Refuted => Some(false),
        Search::Exhausted(_) => None,
    }
}

/// For a full `f` whose dual is a filtration map: every `f⁻¹(σ)*` is
/// constructible. The per-fiber answer is compared with the map route,
/// where each `(f*)⁻¹(⌊σ*⌋) = f⁻¹(⌈σ⌉)*` must be constructible; a
/// disagreement or an exhausted search gives `unknown`.
pub fn point_inverse_dual_constructibility(f: &MonotoneMap) -> Verdict {
    if !f.is_full() {
        return Verdict::Unknown("map is not full".into());
    }
    let d = f.dual();
    if !is_filtration_map(&d).is_yes() {
        return Verdict::Unknown("dual map is not a filtration map".into());
    }
    let limits = Limits::default();
    let src = f.source();
    let tgt = f.target();
    let mut failing = None;
    for s in 0..tgt.len() {
        let fiber = src.sub(&f.fiber(s));
        let star = src.sub(&f.preimage_of(&tgt.up_set(s)));
        let (Some(a), Some(b)) = (
            dual_constructible(&fiber, &limits),
            dual_constructible(&star, &limits),
        ) else {
            return Verdict::Unknown(format!("search budget exhausted at {}", tgt.label(s)));
        };
        if a != b {
            return Verdict::Unknown(format!("fiber and map routes disagree at {}", tgt.label(s)));
        }
        if !a && failing.is_none() {
            failing = Some(tgt.label(s).to_string());
        }
    }
    match failing {
        None => Verdict::yes(),
        Some(s) => Verdict::No(Witness::Element(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{boundary_simplex, cone, simplex};

    #[test]
    fn isomorphism_passes() {
        let p = simplex(&["a", "b"]);
        assert!(point_inverse_dual_constructibility(&MonotoneMap::identity(&p)).is_yes());
    }

    #[test]
    fn triangle_onto_edge() {
        let src = simplex(&["a", "b", "c"]);
        let tgt = simplex(&["a", "d"]);
        let pairs = [
            ("a", "a"),
            ("b", "d"),
            ("c", "d"),
            ("bc", "d"),
            ("ab", "ad"),
            ("ac", "ad"),
            ("abc", "ad"),
        ];
        let f = MonotoneMap::from_labels(src, tgt, &pairs).unwrap();
        assert!(point_inverse_dual_constructibility(&f).is_yes());
    }

    #[test]
    fn circle_fiber_fails() {
        // Coning a circle to the apex of a cone over a point.
        let src = cone(&boundary_simplex(&["a", "b", "c"]));
        let tgt = Poset::chain(&["x", "y"]).unwrap();
        let top = src.greatest().unwrap();
        let table: Vec<usize> = (0..src.len())
            .map(|i| if i == top { 1 } else { 0 })
            .collect();
        let f = MonotoneMap::new(src, tgt, table).unwrap();
        let v = point_inverse_dual_constructibility(&f);
        assert!(!v.is_yes(), "{v}");
    }
}
