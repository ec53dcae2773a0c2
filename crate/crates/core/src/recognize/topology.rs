//! Spheres, balls, cell complexes and manifolds at desk scale.
//!
//! Order-complex dimension at most two is decided exactly by link scans.
//! Above that a `yes` needs a zipping or construction certificate, and the
//! homology and link tests supply the `no` answers.

use rayon::prelude::*;

use super::structure::is_pure;
use super::{Verdict, Witness};
use crate::certify::{find_construction_with, find_zipping_with, Limits, Search, ZipGoal};
use crate::homology::{components, euler_characteristic, homology, is_connected};
use crate::ops::{boundary_simplex, prejoin};
use crate::poset::{find_isomorphism, IsoMemo, Mask, Poset};

/// Degrees in the comparability graph, which is the 1-skeleton of `Δ(P)`.
fn degrees(p: &Poset) -> Vec<usize> {
    (0..p.len())
        .map(|x| p.above(x).count() + p.below(x).count())
        .collect()
}

fn comparable_pairs(p: &Poset) -> usize {
    (0..p.len()).map(|x| p.above(x).count()).sum()
}

/// `Δ(P)` is a single cycle (dimension one assumed).
fn is_cycle_graph(p: &Poset) -> bool {
    p.len() >= 3 && degrees(p).iter().all(|&d| d == 2) && is_connected(p)
}

/// `Δ(P)` is a path with at least one edge (dimension one assumed).
fn is_path_graph(p: &Poset) -> bool {
    p.len() >= 2
        && comparable_pairs(p) + 1 == p.len()
        && degrees(p).iter().all(|&d| d <= 2)
        && is_connected(p)
}

/// Elements comparable to `x`, other than `x`: the vertex link in `Δ(P)`.
fn vertex_link(p: &Poset, x: usize) -> Poset {
    p.sub(&p.above(x).union(p.below(x)))
}

/// `S⁰ + ... + S⁰` with `copies` factors.
pub fn cross_polytope_boundary(copies: usize) -> Poset {
    let mut acc = Poset::empty();
    for i in 0..copies {
        let pair = Poset::antichain(&[format!("p{i}"), format!("m{i}")]).expect("distinct labels");
        acc = prejoin(&acc, &pair);
    }
    acc
}

/// Boundary of the simplex with `n` vertices.
fn sphere_model(n: usize) -> Poset {
    let ground: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    boundary_simplex(&ground)
}

pub fn is_sphere(p: &Poset) -> Verdict {
    is_sphere_with(p, &Limits::default())
}

pub fn is_sphere_with(p: &Poset, limits: &Limits) -> Verdict {
    let d = p.dimension();
    match d {
        -1 => Verdict::yes(),
        0 => Verdict::from_bool(p.len() == 2, || {
            Witness::Note(format!("{} points", p.len()))
        }),
        1 => Verdict::from_bool(is_cycle_graph(p), || {
            Witness::Note("order complex is not a cycle".into())
        }),
        2 => sphere_surface(p),
        _ => sphere_high(p, d, limits),
    }
}

fn sphere_surface(p: &Poset) -> Verdict {
    for x in 0..p.len() {
        let l = vertex_link(p, x);
        if l.dimension() != 1 || !is_cycle_graph(&l) {
            return Verdict::No(Witness::Note(format!(
                "link of {} is not a circle",
                p.label(x)
            )));
        }
    }
    if !is_connected(p) {
        return Verdict::no_note("disconnected");
    }
    let chi = euler_characteristic(p);
    Verdict::from_bool(chi == 2, || {
        Witness::Note(format!("closed surface with Euler characteristic {chi}"))
    })
}

fn sphere_high(p: &Poset, d: isize, limits: &Limits) -> Verdict {
    let h = homology(p);
    if !h.is_sphere_like(d) {
        return Verdict::No(Witness::Homology(h));
    }
    let du = (d + 2) as usize;
    if p.len() + 2 == 1 << du && find_isomorphism(p, &sphere_model(du)).is_some() {
        return Verdict::yes_note("isomorphic to the boundary of a simplex");
    }
    let manifold = is_pure(p)
        .and(|| is_cell_complex_with(p, limits))
        .and(|| is_cell_complex_with(&p.dual(), limits));
    if !manifold.is_yes() {
        return manifold;
    }
    for target in [sphere_model(du), cross_polytope_boundary(d as usize + 1)] {
        if target.len() > p.len() || (p.len() - target.len()) % 2 != 0 {
            continue;
        }
        if let Search::Found(_) = find_zipping_with(p, &ZipGoal::Isomorphic(target), limits) {
            return Verdict::Yes(Witness::Certificate("zipping".into()));
        }
    }
    Verdict::Unknown(format!(
        "homology {d}-sphere without a zipping onto a standard sphere"
    ))
}

pub fn is_ball(p: &Poset) -> Verdict {
    is_ball_with(p, &Limits::default())
}

pub fn is_ball_with(p: &Poset, limits: &Limits) -> Verdict {
    if p.is_empty() {
        return Verdict::no_note("empty");
    }
    if let Some(top) = p.greatest() {
        let mut rest = p.full_mask();
        rest.remove(top);
        if rest.is_empty() {
            return Verdict::yes();
        }
        // A cone over X is a ball exactly when X is a sphere or a ball.
        let x = p.sub(&rest);
        return is_sphere_with(&x, limits).or(|| is_ball_with(&x, limits));
    }
    match p.dimension() {
        0 => Verdict::no_note(format!("{} points", p.len())),
        1 => Verdict::from_bool(is_path_graph(p), || {
            Witness::Note("order complex is not an arc".into())
        }),
        2 => ball_surface(p),
        d => ball_high(p, d, limits),
    }
}

fn ball_surface(p: &Poset) -> Verdict {
    let mut rim = 0;
    for x in 0..p.len() {
        let l = vertex_link(p, x);
        if l.dimension() != 1 {
            return Verdict::No(Witness::Note(format!(
                "link of {} is not one-dimensional",
                p.label(x)
            )));
        }
        if is_path_graph(&l) {
            rim += 1;
        } else if !is_cycle_graph(&l) {
            return Verdict::No(Witness::Note(format!(
                "link of {} is neither a circle nor an arc",
                p.label(x)
            )));
        }
    }
    if rim == 0 {
        return Verdict::no_note("closed surface");
    }
    if !is_connected(p) {
        return Verdict::no_note("disconnected");
    }
    let chi = euler_characteristic(p);
    Verdict::from_bool(chi == 1, || {
        Witness::Note(format!(
            "surface with boundary and Euler characteristic {chi}"
        ))
    })
}

fn ball_high(p: &Poset, d: isize, limits: &Limits) -> Verdict {
    let h = homology(p);
    if !h.is_acyclic() {
        return Verdict::No(Witness::Homology(h));
    }
    for cand in [p.clone(), p.dual()] {
        if is_pseudo_manifold_with(&cand, limits).is_yes() {
            if let Search::Found(_) = find_construction_with(&cand, limits) {
                return Verdict::Yes(Witness::Certificate("construction".into()));
            }
        }
    }
    Verdict::Unknown(format!(
        "acyclic {d}-dimensional poset without a constructible pseudo-manifold model"
    ))
}

/// Verdicts for every cell `∂⌊x⌋`, evaluated once per isomorphism class.
fn per_class<F>(parts: Vec<Poset>, decide: F) -> Vec<Verdict>
where
    F: Fn(&Poset) -> Verdict + Sync,
{
    let mut memo: IsoMemo<usize> = IsoMemo::new();
    let mut reps: Vec<Poset> = Vec::new();
    let mut class = Vec::with_capacity(parts.len());
    for part in parts {
        if let Some((&r, _, _)) = memo.get(&part, None) {
            class.push(r);
        } else {
            class.push(reps.len());
            memo.insert(part.clone(), None, reps.len());
            reps.push(part);
        }
    }
    let verdicts: Vec<Verdict> = reps.par_iter().map(|r| decide(r)).collect();
    class.into_iter().map(|c| verdicts[c].clone()).collect()
}

fn first_failure(p: &Poset, verdicts: Vec<Verdict>, what: &str) -> Verdict {
    let mut acc = Verdict::yes();
    for (x, v) in verdicts.into_iter().enumerate() {
        match v {
            Verdict::No(_) => {
                return Verdict::No(Witness::Note(format!("{what} at {} fails", p.label(x))))
            }
            Verdict::Unknown(why) if acc.is_yes() => {
                acc = Verdict::Unknown(format!("{what} at {}: {why}", p.label(x)));
            }
            _ => {}
        }
    }
    acc
}

/// Every `∂⌊x⌋` is a sphere.
pub fn is_cell_complex(p: &Poset) -> Verdict {
    is_cell_complex_with(p, &Limits::default())
}

pub fn is_cell_complex_with(p: &Poset, limits: &Limits) -> Verdict {
    let parts = (0..p.len()).map(|x| p.sub(p.below(x))).collect();
    let v = per_class(parts, |b| is_sphere_with(b, limits));
    first_failure(p, v, "cell boundary")
}

/// Every open interval `(a, b)` is a sphere, so that `P#` is a cell complex.
pub fn is_semi_cell_complex(p: &Poset) -> Verdict {
    let mut pairs = Vec::new();
    let mut parts = Vec::new();
    for a in 0..p.len() {
        for b in p.above(a).iter() {
            pairs.push((a, b));
            parts.push(p.sub(&p.above(a).intersection(p.below(b))));
        }
    }
    let limits = Limits::default();
    let v = per_class(parts, |i| is_sphere_with(i, &limits));
    for ((a, b), v) in pairs.into_iter().zip(v) {
        if !v.is_yes() {
            let detail = format!("open interval ({}, {})", p.label(a), p.label(b));
            return match v {
                Verdict::No(_) => Verdict::No(Witness::Note(format!("{detail} is not a sphere"))),
                other => Verdict::Unknown(format!("{detail}: {other}")),
            };
        }
    }
    Verdict::yes()
}

/// `P` is a manifold with boundary `q`: pure, a cell complex, and every
/// upper link `{y > x}` is a sphere off `q` and a ball on `q`.
pub fn is_manifold(p: &Poset, boundary: &Mask) -> Verdict {
    is_manifold_with(p, boundary, &Limits::default())
}

pub fn is_manifold_with(p: &Poset, boundary: &Mask, limits: &Limits) -> Verdict {
    if boundary.universe() != p.len() {
        return Verdict::no_note("mask size does not match the poset");
    }
    if !p.is_closed(boundary) {
        return Verdict::no_note("boundary is not closed");
    }
    let shape = is_pure(p).and(|| is_cell_complex_with(p, limits));
    if !shape.is_yes() {
        return shape;
    }
    let v: Vec<Verdict> = (0..p.len())
        .into_par_iter()
        .map(|x| {
            let up = p.sub(p.above(x));
            if boundary.contains(x) {
                is_ball_with(&up, limits)
            } else {
                is_sphere_with(&up, limits)
            }
        })
        .collect();
    first_failure(p, v, "upper link")
}

/// Pure, every `∂⌊x⌋` a sphere or a ball, and every element covered by a
/// maximal element lies under exactly two maximal elements. On `yes` the
/// witness lists the coboundary: the elements whose `∂⌊x⌋` is a ball.
pub fn is_pseudo_manifold(p: &Poset) -> Verdict {
    is_pseudo_manifold_with(p, &Limits::default())
}

pub fn is_pseudo_manifold_with(p: &Poset, limits: &Limits) -> Verdict {
    if p.is_empty() {
        return Verdict::no_note("empty");
    }
    let pure = is_pure(p);
    if !pure.is_yes() {
        return pure;
    }
    let maxima = Mask::from_indices(p.len(), p.maximal());
    for x in 0..p.len() {
        let covered_by_max = p.upper_covers(x).iter().any(|&y| maxima.contains(y));
        if covered_by_max && p.above(x).intersection_count(&maxima) != 2 {
            return Verdict::No(Witness::Note(format!(
                "{} is a ridge of {} facets",
                p.label(x),
                p.above(x).intersection_count(&maxima)
            )));
        }
    }
    let parts = (0..p.len()).map(|x| p.sub(p.below(x))).collect();
    let v = per_class(parts, |b| {
        is_sphere_with(b, limits).or(|| is_ball_with(b, limits))
    });
    let mut coboundary = Vec::new();
    let verdict = first_failure(p, v, "cell boundary");
    if !verdict.is_yes() {
        return verdict;
    }
    for x in 0..p.len() {
        if !is_sphere_with(&p.sub(p.below(x)), limits).is_yes() {
            coboundary.push(p.label(x).to_string());
        }
    }
    Verdict::Yes(Witness::Elements(coboundary))
}

/// Number of connected components, as a convenience for reports.
pub fn component_count(p: &Poset) -> usize {
    components(p).len()
}
