use crate::error::{Error, Result};
use crate::ops::{disjoint_labels, fresh};
use crate::poset::{Mask, MonotoneMap, Poset, Preposet};

/// A partial map `P ⊃ A → Q` to glue along.
#[derive(Clone, Debug)]
pub struct AdjunctionDatum {
    ambient: Poset,
    domain: Mask,
    attaching: MonotoneMap,
}

impl AdjunctionDatum {
    /// The attaching map's source must be the subposet induced on `domain`.
    pub fn new(ambient: Poset, domain: Mask, attaching: MonotoneMap) -> Result<Self> {
        if domain.universe() != ambient.len() {
            return Err(Error::MaskSize {
                expected: ambient.len(),
                got: domain.universe(),
            });
        }
        if !ambient.sub(&domain).same_as(attaching.source()) {
            return Err(Error::Precondition(
                "attaching map source differs from the induced subposet".into(),
            ));
        }
        Ok(AdjunctionDatum {
            ambient,
            domain,
            attaching,
        })
    }

    pub fn ambient(&self) -> &Poset {
        &self.ambient
    }

    pub fn domain(&self) -> &Mask {
        &self.domain
    }

    pub fn attaching(&self) -> &MonotoneMap {
        &self.attaching
    }
}

/// Result of gluing, with the class of every ambient and target element.
#[derive(Clone, Debug)]
pub struct Glued {
    pub result: Preposet,
    pub from_ambient: Vec<usize>,
    pub from_target: Vec<usize>,
}

/// Core gluing. Classes of the pushout are `{q} ∪ f⁻¹(q)` plus singletons of
/// `P ∖ A`; target classes come first, keeping the target's labels.
pub(crate) fn glue(
    ambient: &Poset,
    domain: &[usize],
    images: &[usize],
    target: &Preposet,
) -> Result<Glued> {
    let nq = target.len();
    let mut class = vec![usize::MAX; ambient.len()];
    for (&a, &q) in domain.iter().zip(images) {
        class[a] = q;
    }
    let mut free_labels = Vec::new();
    for (a, c) in class.iter_mut().enumerate() {
        if *c == usize::MAX {
            *c = nq + free_labels.len();
            free_labels.push(ambient.label(a).to_string());
        }
    }
    let (lq, lf) = disjoint_labels(target.labels(), &free_labels);
    let mut labels = lq;
    labels.extend(lf);
    let mut arrows = target.arrows();
    for a in 0..ambient.len() {
        for b in ambient.above(a).iter() {
            if class[a] != class[b] {
                arrows.push((class[a], class[b]));
            }
        }
    }
    let result = Preposet::new(labels, &arrows).map_err(|e| match e {
        Error::Cycle(c) => Error::AdjunctionCycle(c),
        e => e,
    })?;
    Ok(Glued {
        result,
        from_ambient: class,
        from_target: (0..nq).collect(),
    })
}

/// `P ∪_f Q`.
pub fn adjunction(d: &AdjunctionDatum) -> Result<Preposet> {
    Ok(adjunction_with_classes(d)?.result)
}

pub fn adjunction_with_classes(d: &AdjunctionDatum) -> Result<Glued> {
    let domain: Vec<usize> = d.domain.iter().collect();
    glue(
        &d.ambient,
        &domain,
        d.attaching.table(),
        &Preposet::from_poset(d.attaching.target()),
    )
}

/// `P/Q`: collapses `m` to a single point labelled `label`.
///
/// A non-convex `m` can produce a directed cycle, which is reported. An
/// acyclic but non-transitive result is replaced by its transitive closure.
pub fn quotient_labeled(p: &Poset, m: &Mask, label: &str) -> Result<(Poset, Vec<usize>)> {
    let domain: Vec<usize> = m.iter().collect();
    let pt = Preposet::new(vec![label.to_string()], &[])?;
    let g = glue(p, &domain, &vec![0; domain.len()], &pt)?;
    Ok((g.result.transitive_closure(), g.from_ambient))
}

/// `P/Q` with the collapsed point labelled `*`.
pub fn quotient(p: &Poset, m: &Mask) -> Result<Poset> {
    let star = fresh("*", p.labels());
    Ok(quotient_labeled(p, m, &star)?.0)
}

/// `P ∪_h Q` for an isomorphism `h: A → B` between subposets.
pub fn amalgam(p: &Poset, q: &Poset, a: &Mask, b: &Mask, h: &MonotoneMap) -> Result<Preposet> {
    Ok(amalgam_with_classes(p, q, a, b, h)?.result)
}

pub fn amalgam_with_classes(
    p: &Poset,
    q: &Poset,
    a: &Mask,
    b: &Mask,
    h: &MonotoneMap,
) -> Result<Glued> {
    let (sa, ia) = p.induced(a);
    let (sb, ib) = q.induced(b);
    if !sa.same_as(h.source()) || !sb.same_as(h.target()) {
        return Err(Error::Precondition(
            "amalgam map must go between the induced subposets".into(),
        ));
    }
    if !h.is_isomorphism() {
        return Err(Error::NotIsomorphism("amalgam gluing map".into()));
    }
    let images: Vec<usize> = h.table().iter().map(|&j| ib[j]).collect();
    glue(p, &ia, &images, &Preposet::from_poset(q))
}
