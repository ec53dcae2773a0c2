//! Combinatorial shape recognizers: simplicial, cubical, simple and friends,
//! purity, codimension one and filtration maps.

use std::collections::HashMap;

use super::{Verdict, Witness};
use crate::ops::{cube, product, simplex};
use crate::poset::{find_isomorphism, Mask, MonotoneMap, Poset};

/// Two elements with an upper bound but no least upper bound.
pub fn incompleteness_witness(p: &Poset) -> Option<(usize, usize)> {
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            let ub = p.up_set(a).intersection(&p.up_set(b));
            if !ub.is_empty() && p.least_in(&ub).is_none() {
                return Some((a, b));
            }
        }
    }
    None
}

fn require_cc(p: &Poset) -> Option<Verdict> {
    incompleteness_witness(p).map(|(a, b)| {
        Verdict::No(Witness::Elements(vec![
            p.label(a).to_string(),
            p.label(b).to_string(),
            "no least upper bound".to_string(),
        ]))
    })
}

/// Whether the subposet on `m` is isomorphic to the simplex on its minimal elements.
pub fn is_simplex_shape(p: &Poset, m: &Mask) -> bool {
    let mins = p.minimal_in(m);
    let k = mins.len();
    if k == 0 || k >= 63 || m.count() != (1usize << k) - 1 {
        return false;
    }
    let code = |x: usize| -> u64 {
        mins.iter()
            .enumerate()
            .filter(|(_, &a)| p.le(a, x))
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    };
    let elems: Vec<usize> = m.iter().collect();
    let codes: Vec<u64> = elems.iter().map(|&x| code(x)).collect();
    let mut seen = codes.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != codes.len() || codes.contains(&0) {
        return false;
    }
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            let sub = codes[i] & !codes[j] == 0;
            if sub != p.le(x, y) {
                return false;
            }
        }
    }
    true
}

/// Conditionally complete, and every cone is a simplex.
pub fn is_simplicial(p: &Poset) -> Verdict {
    if let Some(v) = require_cc(p) {
        return v;
    }
    for x in 0..p.len() {
        if !is_simplex_shape(p, &p.down_set(x)) {
            return Verdict::no_at(p.label(x));
        }
    }
    debug_assert!(p
        .atom_embedding()
        .map(|f| f.is_embedding())
        .unwrap_or(false));
    Verdict::yes()
}

/// Conditionally complete, and every cone is a cube.
pub fn is_cubical(p: &Poset) -> Verdict {
    if let Some(v) = require_cc(p) {
        return v;
    }
    let heights = p.heights();
    let mut cubes: HashMap<usize, Poset> = HashMap::new();
    for x in 0..p.len() {
        let k = heights[x];
        let cone = p.down_set(x);
        if k > 12 || cone.count() != 3usize.pow(k as u32) {
            return Verdict::no_at(p.label(x));
        }
        let model = cubes.entry(k).or_insert_with(|| {
            let ground: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
            cube(&ground)
        });
        if find_isomorphism(&p.sub(&cone), model).is_none() {
            return Verdict::no_at(p.label(x));
        }
    }
    Verdict::yes()
}

/// Partitions of `total` into parts `>= 1`, largest part first.
fn partitions(total: usize, max_part: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if total == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=max_part.min(total)).rev() {
        cur.push(part);
        partitions(total - part, part, out, cur);
        cur.pop();
    }
}

fn simplex_product(dims: &[usize]) -> Poset {
    let mut acc = Poset::point("o");
    for (i, &d) in dims.iter().enumerate() {
        let ground: Vec<String> = (0..=d).map(|j| format!("s{i}v{j}")).collect();
        acc = product(&acc, &simplex(&ground));
    }
    acc
}

/// Conditionally complete, and every cone is a product of simplices.
pub fn is_cubosimplicial(p: &Poset) -> Verdict {
    if let Some(v) = require_cc(p) {
        return v;
    }
    let heights = p.heights();
    let mut models: HashMap<Vec<usize>, Poset> = HashMap::new();
    'cells: for x in 0..p.len() {
        let cone = p.down_set(x);
        let size = cone.count();
        let sub = p.sub(&cone);
        let mut shapes = Vec::new();
        partitions(heights[x], heights[x], &mut shapes, &mut Vec::new());
        for dims in shapes {
            let expected = dims.iter().try_fold(1usize, |acc, &d| {
                acc.checked_mul((1usize << (d + 1).min(62)) - 1)
            });
            if expected != Some(size) {
                continue;
            }
            let model = models
                .entry(dims.clone())
                .or_insert_with(|| simplex_product(&dims));
            if find_isomorphism(&sub, model).is_some() {
                continue 'cells;
            }
        }
        return Verdict::no_at(p.label(x));
    }
    Verdict::yes()
}

/// Conditionally complete, and every half-open interval `(σ, τ]` is a simplex.
pub fn is_simple(p: &Poset) -> Verdict {
    if let Some(v) = require_cc(p) {
        return v;
    }
    for s in 0..p.len() {
        for t in p.above(s).iter() {
            let half_open = p.above(s).intersection(&p.down_set(t));
            if !is_simplex_shape(p, &half_open) {
                return Verdict::No(Witness::Elements(vec![
                    p.label(s).to_string(),
                    p.label(t).to_string(),
                ]));
            }
        }
    }
    Verdict::yes()
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Simplicial, and every clique of the vertex graph spans a simplex.
pub fn is_flag(p: &Poset) -> Verdict {
    let s = is_simplicial(p);
    if !s.is_yes() {
        return s;
    }
    let atoms = p.minimal();
    if atoms.len() > 64 {
        return Verdict::Unknown("more than 64 vertices".into());
    }
    let n = atoms.len();
    let has_bound = |set: &[usize]| {
        let mut ub = p.full_mask();
        for &a in set {
            ub.intersect_with(&p.up_set(a));
        }
        !ub.is_empty()
    };
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if has_bound(&[atoms[i], atoms[j]]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut cliques = Vec::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    bron_kerbosch(&adj, 0, all, 0, &mut cliques);
    for c in cliques {
        let set: Vec<usize> = (0..n)
            .filter(|i| c >> i & 1 == 1)
            .map(|i| atoms[i])
            .collect();
        if !has_bound(&set) {
            return Verdict::No(Witness::Elements(
                set.iter().map(|&a| p.label(a).to_string()).collect(),
            ));
        }
    }
    Verdict::yes()
}

/// No interval with exactly three elements.
pub fn is_nonsingular(p: &Poset) -> Verdict {
    match p.three_element_interval() {
        Some((a, b)) => Verdict::No(Witness::Elements(vec![
            p.label(a).to_string(),
            p.label(b).to_string(),
        ])),
        None => Verdict::yes(),
    }
}

/// Every maximal chain has the same length.
pub fn is_pure(p: &Poset) -> Verdict {
    let hi = p.heights();
    let mut lo = vec![0usize; p.len()];
    for x in p.linear_extension() {
        lo[x] = p
            .lower_covers(x)
            .iter()
            .map(|&y| lo[y] + 1)
            .min()
            .unwrap_or(0);
    }
    let maxima = p.maximal();
    let Some(n) = maxima.iter().map(|&m| hi[m]).max() else {
        return Verdict::yes();
    };
    for &m in &maxima {
        if lo[m] != n || hi[m] != n {
            return Verdict::no_at(p.label(m));
        }
    }
    Verdict::yes()
}

fn codim_scan(p: &Poset, q: &Mask, pure: bool) -> Verdict {
    if q.universe() != p.len() {
        return Verdict::no_note("mask size does not match the poset");
    }
    if !p.is_closed(q) {
        return Verdict::no_note("subposet is not closed");
    }
    let is_max = |y: usize| p.upper_covers(y).is_empty();
    for m in p.maximal_in(q) {
        let covers = p.upper_covers(m);
        if !covers.iter().any(|&y| is_max(y)) {
            return Verdict::no_at(p.label(m));
        }
        if pure && covers.iter().any(|&y| !is_max(y)) {
            return Verdict::no_at(p.label(m));
        }
    }
    Verdict::yes()
}

/// Every maximal element of the closed subposet `q` is covered by a maximal element of `p`.
pub fn is_codim_one(p: &Poset, q: &Mask) -> Verdict {
    codim_scan(p, q, false)
}

/// Codimension one, and no maximal element of `q` is covered by a non-maximal element.
pub fn is_pure_codim_one(p: &Poset, q: &Mask) -> Verdict {
    codim_scan(p, q, true)
}

fn filtration_scan(f: &MonotoneMap, pure: bool) -> Verdict {
    let src = f.source();
    let tgt = f.target();
    for y in 0..tgt.len() {
        let cone = f.preimage_of(&tgt.down_set(y));
        let (sub, _) = src.induced(&cone);
        // Inside the induced preimage, the preimage of ∂⌊y⌋ is everything not over `y`.
        let inner: Vec<usize> = cone.iter().collect();
        let rim = Mask::from_indices(
            sub.len(),
            (0..inner.len()).filter(|&i| f.apply(inner[i]) != y),
        );
        let v = codim_scan(&sub, &rim, pure);
        if !v.is_yes() {
            return Verdict::No(Witness::Note(format!(
                "preimage of the boundary of the cone at {} ({v})",
                tgt.label(y)
            )));
        }
    }
    Verdict::yes()
}

/// `f⁻¹(∂⌊q⌋)` has codimension one in `f⁻¹(⌊q⌋)` for every `q`.
pub fn is_filtration_map(f: &MonotoneMap) -> Verdict {
    filtration_scan(f, false)
}

pub fn is_pure_filtration_map(f: &MonotoneMap) -> Verdict {
    filtration_scan(f, true)
}
