use super::{disjoint_labels, fresh};
use crate::poset::{Mask, Poset};

/// `CP`: adjoin a greatest element.
pub fn cone(p: &Poset) -> Poset {
    let top = fresh("top", p.labels());
    let mut labels = p.labels().to_vec();
    labels.push(top);
    let t = p.len();
    let mut rel = p.cover_pairs();
    rel.extend(p.maximal().into_iter().map(|m| (m, t)));
    Poset::new(labels, &rel).expect("cone is acyclic")
}

/// `C*P`: adjoin a least element.
pub fn dual_cone(p: &Poset) -> Poset {
    let bot = fresh("bot", p.labels());
    let mut labels = p.labels().to_vec();
    labels.push(bot);
    let b = p.len();
    let mut rel = p.cover_pairs();
    rel.extend(p.minimal().into_iter().map(|m| (b, m)));
    Poset::new(labels, &rel).expect("dual cone is acyclic")
}

pub fn disjoint_union(p: &Poset, q: &Poset) -> Poset {
    stack(p, q, false)
}

/// `P + Q`: everything in `P` below everything in `Q`.
pub fn prejoin(p: &Poset, q: &Poset) -> Poset {
    stack(p, q, true)
}

fn stack(p: &Poset, q: &Poset, link: bool) -> Poset {
    let (lp, lq) = disjoint_labels(p.labels(), q.labels());
    let n = p.len();
    let mut labels = lp;
    labels.extend(lq);
    let mut rel = p.cover_pairs();
    rel.extend(q.cover_pairs().into_iter().map(|(a, b)| (a + n, b + n)));
    if link {
        for a in p.maximal() {
            for b in q.minimal() {
                rel.push((a, b + n));
            }
        }
    }
    Poset::new(labels, &rel).expect("stacking is acyclic")
}

/// Cartesian product with the componentwise order; labels `(x,y)`.
pub fn product(p: &Poset, q: &Poset) -> Poset {
    let m = q.len();
    let mut labels = Vec::with_capacity(p.len() * m);
    for x in 0..p.len() {
        for y in 0..m {
            labels.push(format!("({},{})", p.label(x), q.label(y)));
        }
    }
    let mut rel = Vec::new();
    for x in 0..p.len() {
        for (a, b) in q.cover_pairs() {
            rel.push((x * m + a, x * m + b));
        }
    }
    for (a, b) in p.cover_pairs() {
        for y in 0..m {
            rel.push((a * m + y, b * m + y));
        }
    }
    Poset::new(labels, &rel).expect("product is acyclic")
}

/// `P * Q = ∂*(C*P × C*Q)`, relabelled so that `(x,⊥) ↦ x`, `(⊥,y) ↦ y`,
/// `(x,y) ↦ x*y`.
pub fn join(p: &Poset, q: &Poset) -> Poset {
    let (lp, lq) = disjoint_labels(p.labels(), q.labels());
    let p = p.relabeled(lp).expect("tagged labels are unique");
    let q = q.relabeled(lq).expect("tagged labels are unique");
    let cp = dual_cone(&p);
    let cq = dual_cone(&q);
    let prod = product(&cp, &cq);
    let keep = prod.coboundary();
    let (sub, to_prod) = prod.induced(&keep);
    let m = cq.len();
    let (bp, bq) = (p.len(), q.len());
    let labels: Vec<String> = to_prod
        .iter()
        .map(|&i| {
            let (x, y) = (i / m, i % m);
            match (x == bp, y == bq) {
                (false, true) => p.label(x).to_string(),
                (true, false) => q.label(y).to_string(),
                _ => format!("{}*{}", p.label(x), q.label(y)),
            }
        })
        .collect();
    sub.relabeled(labels).expect("join labels are unique")
}

/// `P ⋈ Q = (P* * Q*)*`.
pub fn cojoin(p: &Poset, q: &Poset) -> Poset {
    join(&p.dual(), &q.dual()).dual()
}

/// `st(x) = ⌊⌈x⌉⌋`.
pub fn star(p: &Poset, x: usize) -> Mask {
    p.closure_of(&p.up_set(x))
}

/// `lk(x) = ∂*⌈x⌉`, computed in the induced dual cone.
pub fn link(p: &Poset, x: usize) -> Mask {
    let (sub, to_p) = p.induced(&p.up_set(x));
    let cb = sub.coboundary();
    Mask::from_indices(p.len(), cb.iter().map(|i| to_p[i]))
}
