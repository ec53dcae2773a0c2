//! Poset isomorphism by colour refinement plus backtracking.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::{MonotoneMap, Poset};

fn mix<T: Hash>(t: T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

fn class_count(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Stable refinement of `initial` by heights, degrees and neighbourhood colour multisets.
fn refine(p: &Poset, initial: &[u64]) -> Vec<u64> {
    let n = p.len();
    let heights = p.heights();
    let depths = p.dual().heights();
    let mut colors: Vec<u64> = (0..n)
        .map(|x| {
            mix((
                initial[x],
                heights[x],
                depths[x],
                p.below(x).count(),
                p.above(x).count(),
                p.lower_covers(x).len(),
                p.upper_covers(x).len(),
            ))
        })
        .collect();
    let mut classes = class_count(&colors);
    loop {
        let next: Vec<u64> = (0..n)
            .map(|x| {
                let mut up: Vec<u64> = p.upper_covers(x).iter().map(|&y| colors[y]).collect();
                let mut down: Vec<u64> = p.lower_covers(x).iter().map(|&y| colors[y]).collect();
                let mut above: Vec<u64> = p.above(x).iter().map(|y| colors[y]).collect();
                let mut below: Vec<u64> = p.below(x).iter().map(|y| colors[y]).collect();
                up.sort_unstable();
                down.sort_unstable();
                above.sort_unstable();
                below.sort_unstable();
                mix((colors[x], up, down, above, below))
            })
            .collect();
        let c = class_count(&next);
        colors = next;
        if c == classes {
            return colors;
        }
        classes = c;
    }
}

fn profile(colors: &[u64]) -> Vec<u64> {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c
}

/// Isomorphism-invariant fingerprint of a coloured poset.
pub fn invariant_hash(p: &Poset, colors: Option<&[u64]>) -> u64 {
    let zero = vec![0; p.len()];
    let refined = refine(p, colors.unwrap_or(&zero));
    mix((p.len(), p.relation_count(), profile(&refined)))
}

/// Returns a table `a → b` that is an order isomorphism, if one exists.
pub fn find_isomorphism(a: &Poset, b: &Poset) -> Option<MonotoneMap> {
    let table = find_isomorphism_colored(a, None, b, None)?;
    Some(MonotoneMap::new(a.clone(), b.clone(), table).expect("isomorphism is monotone"))
}

/// Isomorphism respecting initial colours (`ca[x] == cb[f(x)]`).
pub fn find_isomorphism_colored(
    a: &Poset,
    ca: Option<&[u64]>,
    b: &Poset,
    cb: Option<&[u64]>,
) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.relation_count() != b.relation_count() {
        return None;
    }
    let za = vec![0; a.len()];
    let zb = vec![0; b.len()];
    let ra = refine(a, ca.unwrap_or(&za));
    let rb = refine(b, cb.unwrap_or(&zb));
    match_refined(a, &ra, b, &rb)
}

fn match_refined(a: &Poset, ra: &[u64], b: &Poset, rb: &[u64]) -> Option<Vec<usize>> {
    let n = a.len();
    if profile(ra) != profile(rb) {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in ra {
        *class_size.entry(c).or_default() += 1;
    }
    let mut candidates_by_color: HashMap<u64, Vec<usize>> = HashMap::new();
    for (y, &c) in rb.iter().enumerate() {
        candidates_by_color.entry(c).or_default().push(y);
    }

    // Static order: start in the smallest class, then prefer elements tied to placed ones.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut ties = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| (std::cmp::Reverse(ties[x]), class_size[&ra[x]], x))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &y in a.upper_covers(next).iter().chain(a.lower_covers(next)) {
            ties[y] += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(
        a,
        b,
        ra,
        &candidates_by_color,
        &order,
        0,
        &mut map,
        &mut used,
    ) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Poset,
    b: &Poset,
    ra: &[u64],
    cands: &HashMap<u64, Vec<usize>>,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &cands[&ra[x]] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&z| {
            let fz = map[z];
            a.lt(x, z) == b.lt(y, fz) && a.lt(z, x) == b.lt(fz, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ra, cands, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

struct Entry<T> {
    poset: Poset,
    refined: Vec<u64>,
    value: T,
}

/// Memo table keyed by isomorphism class of (optionally coloured) posets.
pub struct IsoMemo<T> {
    buckets: HashMap<u64, Vec<Entry<T>>>,
    len: usize,
}

impl<T> Default for IsoMemo<T> {
    fn default() -> Self {
        IsoMemo {
            buckets: HashMap::new(),
            len: 0,
        }
    }
}

impl<T> IsoMemo<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn key(p: &Poset, colors: Option<&[u64]>) -> (u64, Vec<u64>) {
        let zero = vec![0; p.len()];
        let refined = refine(p, colors.unwrap_or(&zero));
        (
            mix((p.len(), p.relation_count(), profile(&refined))),
            refined,
        )
    }

    /// Looks up an isomorphic entry; returns its value, the stored poset, and
    /// the isomorphism table from the stored poset onto `p`.
    pub fn get(&self, p: &Poset, colors: Option<&[u64]>) -> Option<(&T, &Poset, Vec<usize>)> {
        let (h, refined) = Self::key(p, colors);
        let bucket = self.buckets.get(&h)?;
        for e in bucket {
            if let Some(iso) = match_refined(&e.poset, &e.refined, p, &refined) {
                return Some((&e.value, &e.poset, iso));
            }
        }
        None
    }

    pub fn insert(&mut self, p: Poset, colors: Option<&[u64]>, value: T) {
        let (h, refined) = Self::key(&p, colors);
        self.buckets.entry(h).or_default().push(Entry {
            poset: p,
            refined,
            value,
        });
        self.len += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{boundary_simplex, cube, simplex};

    #[test]
    fn simplex_edge_is_interval_cube() {
        let d = simplex(&["a", "b"]);
        let i = cube(&["0"]);
        let f = find_isomorphism(&d, &i).expect("iso");
        assert!(f.is_isomorphism());
    }

    #[test]
    fn triangle_boundary_is_self_dual() {
        let b = boundary_simplex(&["a", "b", "c"]);
        assert!(find_isomorphism(&b, &b.dual()).is_some());
    }

    #[test]
    fn edge_is_not_chain() {
        let d = simplex(&["a", "b"]);
        let c = Poset::chain(&["x", "y", "z"]).unwrap();
        assert!(find_isomorphism(&d, &c).is_none());
    }

    #[test]
    fn colours_are_respected() {
        let d = simplex(&["a", "b"]);
        let ca = [1, 2, 0];
        let cb = [2, 1, 0];
        let t = find_isomorphism_colored(&d, Some(&ca), &d, Some(&cb)).unwrap();
        assert_eq!(t, vec![1, 0, 2]);
        let cc = [1, 1, 0];
        assert!(find_isomorphism_colored(&d, Some(&ca), &d, Some(&cc)).is_none());
    }

    #[test]
    fn memo_finds_relabelled_copy() {
        let mut memo = IsoMemo::new();
        memo.insert(simplex(&["a", "b", "c"]), None, 7);
        let other = simplex(&["x", "y", "z"]);
        let (v, rep, iso) = memo.get(&other, None).unwrap();
        assert_eq!(*v, 7);
        assert!(MonotoneMap::new(rep.clone(), other.clone(), iso)
            .unwrap()
            .is_isomorphism());
        assert!(memo
            .get(&boundary_simplex(&["a", "b", "c"]), None)
            .is_none());
    }
}
