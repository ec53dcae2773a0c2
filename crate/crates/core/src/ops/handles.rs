use super::{barycentric, canonical};
use crate::poset::{MonotoneMap, Poset};

/// `h(X) = (X#)*`.
pub fn handles(x: &Poset) -> Poset {
    canonical(x).dual()
}

/// `H(P) = (P♭)*`.
pub fn barycentric_handles(p: &Poset) -> Poset {
    barycentric(p).dual()
}

fn interval_ends(x: &Poset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..x.len() {
        for b in 0..x.len() {
            if x.le(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `r_X : h(X) → X`, `[σ,τ]* ↦ σ`.
pub fn handle_core_map(x: &Poset) -> MonotoneMap {
    let table = interval_ends(x).into_iter().map(|(a, _)| a).collect();
    MonotoneMap::new(handles(x), x.clone(), table).expect("core map is monotone")
}

/// `r̄_X : h(X) → X*`, `[σ,τ]* ↦ τ*`.
pub fn handle_cocore_map(x: &Poset) -> MonotoneMap {
    let table = interval_ends(x).into_iter().map(|(_, b)| b).collect();
    MonotoneMap::new(handles(x), x.dual(), table).expect("cocore map is monotone")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{product, simplex};
    use crate::poset::find_isomorphism;

    #[test]
    fn handles_of_point() {
        let pt = Poset::point("x");
        assert_eq!(handles(&pt).len(), 1);
        let r = handle_core_map(&pt);
        assert_eq!(r.table(), &[0]);
    }

    #[test]
    fn maximal_cones_are_core_times_cocore() {
        let x = simplex(&["a", "b", "c"]);
        let h = handles(&x);
        let r = handle_core_map(&x);
        let rbar = handle_cocore_map(&x);
        for m in h.maximal() {
            let s = r.apply(m);
            assert_eq!(rbar.apply(m), s);
            let cone = h.sub(&h.down_set(m));
            let core = x.sub(&x.down_set(s));
            let cocore = x.dual().sub(&x.dual().down_set(s));
            assert!(find_isomorphism(&cone, &product(&core, &cocore)).is_some());
        }
    }

    #[test]
    fn edge_handle_at_top() {
        let x = simplex(&["a", "b"]);
        let h = handles(&x);
        let m = h.id("[ab,ab]").unwrap();
        let cone = h.sub(&h.down_set(m));
        assert!(find_isomorphism(&cone, &product(&x, &Poset::point("p"))).is_some());
    }
}
