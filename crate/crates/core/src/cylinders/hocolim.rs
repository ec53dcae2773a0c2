use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::{MonotoneMap, Poset, Preposet};

/// Fiber `f⁻¹(q)` as a poset, with indices back into the source.
pub fn fiber_poset(f: &MonotoneMap, q: usize) -> (Poset, Vec<usize>) {
    f.source().induced(&f.fiber(q))
}

/// Hatcher map `f_rq: F_r → F_q`, `p ↦ p_q` where `⌊p⌋ ∩ F_q = ⌊p_q⌋`.
pub fn hatcher_map(f: &MonotoneMap, r: usize, q: usize) -> Result<MonotoneMap> {
    let (src, tgt) = (f.source(), f.target());
    if let Some(bad) = f.non_full_fiber() {
        return Err(Error::NotFull(tgt.label(bad).to_string()));
    }
    if !tgt.lt(q, r) {
        return Err(Error::NotAbove {
            r: tgt.label(r).to_string(),
            q: tgt.label(q).to_string(),
        });
    }
    let (fr, ir) = fiber_poset(f, r);
    let (fq, iq) = fiber_poset(f, q);
    let fiber_q = f.fiber(q);
    let mut local = vec![usize::MAX; src.len()];
    for (i, &x) in iq.iter().enumerate() {
        local[x] = i;
    }
    let mut table = Vec::with_capacity(ir.len());
    for &p in &ir {
        let cone = src.down_set(p).intersection(&fiber_q);
        let top = src
            .greatest_in(&cone)
            .ok_or_else(|| Error::EmptyHatcherCone {
                p: src.label(p).to_string(),
                q: tgt.label(q).to_string(),
            })?;
        table.push(local[top]);
    }
    MonotoneMap::new(fr, fq, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// Maps `P_λ → P_μ` whenever `λ > μ`.
    Covariant,
    /// Maps `P_λ → P_μ` whenever `λ < μ`.
    Contravariant,
}

/// A commutative diagram of posets indexed by a poset.
#[derive(Clone, Debug)]
pub struct DiagramOverPoset {
    index: Poset,
    nodes: Vec<Poset>,
    edges: HashMap<(usize, usize), MonotoneMap>,
    variance: Variance,
}

impl DiagramOverPoset {
    /// `edges` are keyed by `(from, to)` and must cover every related pair in
    /// the direction given by `variance`, and compose along every chain.
    pub fn new(
        index: Poset,
        nodes: Vec<Poset>,
        edges: Vec<((usize, usize), MonotoneMap)>,
        variance: Variance,
    ) -> Result<Self> {
        if nodes.len() != index.len() {
            return Err(Error::Precondition(format!(
                "{} nodes for {} index elements",
                nodes.len(),
                index.len()
            )));
        }
        let d = DiagramOverPoset {
            index,
            nodes,
            edges: edges.into_iter().collect(),
            variance,
        };
        d.validate()?;
        Ok(d)
    }

    fn goes(&self, from: usize, to: usize) -> bool {
        match self.variance {
            Variance::Covariant => self.index.lt(to, from),
            Variance::Contravariant => self.index.lt(from, to),
        }
    }

    fn validate(&self) -> Result<()> {
        let lab = |i: usize| self.index.label(i).to_string();
        for (&(a, b), m) in &self.edges {
            if !self.goes(a, b) {
                return Err(Error::Precondition(format!(
                    "unexpected map {} -> {}",
                    lab(a),
                    lab(b)
                )));
            }
            if !m.source().same_as(&self.nodes[a]) || !m.target().same_as(&self.nodes[b]) {
                return Err(Error::Precondition(format!(
                    "map {} -> {} has the wrong ends",
                    lab(a),
                    lab(b)
                )));
            }
        }
        let n = self.index.len();
        for a in 0..n {
            for b in 0..n {
                if self.goes(a, b) && !self.edges.contains_key(&(a, b)) {
                    return Err(Error::MissingEdge(lab(a), lab(b)));
                }
            }
        }
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in (0..n).filter(|&b| self.goes(a, b)) {
                for c in (0..n).filter(|&c| self.goes(b, c)) {
                    let long = self.edges[&(a, c)].table();
                    let (ab, bc) = (&self.edges[&(a, b)], &self.edges[&(b, c)]);
                    if (0..long.len()).any(|x| bc.apply(ab.apply(x)) != long[x]) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        match bad {
            Some((a, b, c)) => Err(Error::NotFunctorial(lab(a), lab(b), lab(c))),
            None => Ok(()),
        }
    }

    pub fn index(&self) -> &Poset {
        &self.index
    }

    pub fn nodes(&self) -> &[Poset] {
        &self.nodes
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&MonotoneMap> {
        self.edges.get(&(from, to))
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    /// The diagram of fibers of a full map and its Hatcher maps.
    pub fn of_fibers(f: &MonotoneMap) -> Result<Self> {
        let q = f.target();
        let nodes: Vec<Poset> = (0..q.len()).map(|x| fiber_poset(f, x).0).collect();
        let mut edges = Vec::new();
        for r in 0..q.len() {
            for s in q.below(r).iter() {
                edges.push(((r, s), hatcher_map(f, r, s)?));
            }
        }
        DiagramOverPoset::new(q.clone(), nodes, edges, Variance::Covariant)
    }
}

/// Offsets of each node's block in the homotopy colimit carrier.
pub fn hocolim_offsets(d: &DiagramOverPoset) -> Vec<usize> {
    let mut out = Vec::with_capacity(d.nodes.len());
    let mut acc = 0;
    for n in &d.nodes {
        out.push(acc);
        acc += n.len();
    }
    out
}

/// Homotopy colimit; element `p` of `P_λ` is labelled `p@λ`.
pub fn hocolim(d: &DiagramOverPoset) -> Result<Preposet> {
    let off = hocolim_offsets(d);
    let mut labels = Vec::new();
    for (l, node) in d.nodes.iter().enumerate() {
        for x in 0..node.len() {
            labels.push(format!("{}@{}", node.label(x), d.index.label(l)));
        }
    }
    let mut arrows = Vec::new();
    for (l, node) in d.nodes.iter().enumerate() {
        for x in 0..node.len() {
            arrows.extend(node.above(x).iter().map(|y| (off[l] + x, off[l] + y)));
        }
    }
    for (&(a, b), m) in &d.edges {
        let src = &d.nodes[a];
        for x in 0..src.len() {
            match d.variance {
                // x ∈ P_a, a > b: x ≥ m(x') for every x' ≤ x.
                Variance::Covariant => {
                    for y in src.down_set(x).iter() {
                        arrows.push((off[b] + m.apply(y), off[a] + x));
                    }
                }
                // x ∈ P_a, a < b: m(x') ≥ x for every x' ≥ x.
                Variance::Contravariant => {
                    for y in src.up_set(x).iter() {
                        arrows.push((off[a] + x, off[b] + m.apply(y)));
                    }
                }
            }
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    Preposet::new(labels, &arrows)
}

fn check_full_nonsingular(f: &MonotoneMap) -> Result<()> {
    if let Some(q) = f.non_full_fiber() {
        return Err(Error::NotFull(f.target().label(q).to_string()));
    }
    if let Some((a, b)) = f.source().three_element_interval() {
        let s = f.source();
        return Err(Error::Singular(
            s.label(a).to_string(),
            s.label(b).to_string(),
        ));
    }
    Ok(())
}

/// Rebuilds the source of a full map with nonsingular source as the homotopy
/// colimit of its fibers, returning the colimit and the identification
/// `p@q ↦ p`, checked to be an isomorphism.
pub fn hocolim_reconstruct(f: &MonotoneMap) -> Result<(Poset, MonotoneMap)> {
    check_full_nonsingular(f)?;
    let d = DiagramOverPoset::of_fibers(f)?;
    let h = hocolim(&d)?.to_poset()?;
    let mut table = Vec::with_capacity(h.len());
    for q in 0..f.target().len() {
        table.extend(fiber_poset(f, q).1);
    }
    let iso = MonotoneMap::new(h.clone(), f.source().clone(), table).map_err(|e| {
        Error::NotIsomorphism(format!("fiber colimit does not map onto the source: {e}"))
    })?;
    if !iso.is_isomorphism() {
        return Err(Error::NotIsomorphism(
            "fiber colimit differs from the source".into(),
        ));
    }
    Ok((h, iso))
}

/// Factors a full map with nonsingular source into `|Q|` full maps, each with
/// at most one point-inverse of more than one element. Fibers are collapsed in
/// the order of the target's canonical linear extension.
pub fn homma_factorization(f: &MonotoneMap) -> Result<Vec<MonotoneMap>> {
    check_full_nonsingular(f)?;
    let q = f.target();
    let nq = q.len();
    let order = q.linear_extension();
    let fibers: Vec<(Poset, Vec<usize>)> = (0..nq).map(|x| fiber_poset(f, x)).collect();
    let mut hatcher = HashMap::new();
    for r in 0..nq {
        for s in q.below(r).iter() {
            hatcher.insert((r, s), hatcher_map(f, r, s)?);
        }
    }
    let star = Poset::point("*");
    // Stage i collapses the first i fibers. Keys are (q, Some(p)) or (q, None).
    let stage = |i: usize| -> Result<(Poset, HashMap<(usize, Option<usize>), usize>)> {
        let collapsed: Vec<bool> = {
            let mut c = vec![false; nq];
            for &x in &order[..i] {
                c[x] = true;
            }
            c
        };
        let nodes: Vec<Poset> = (0..nq)
            .map(|x| {
                if collapsed[x] {
                    star.clone()
                } else {
                    fibers[x].0.clone()
                }
            })
            .collect();
        let mut edges = Vec::new();
        for r in 0..nq {
            for s in q.below(r).iter() {
                let m = if collapsed[s] {
                    MonotoneMap::new(nodes[r].clone(), star.clone(), vec![0; nodes[r].len()])?
                } else {
                    hatcher[&(r, s)].clone()
                };
                edges.push(((r, s), m));
            }
        }
        let d = DiagramOverPoset::new(q.clone(), nodes, edges, Variance::Covariant)?;
        let off = hocolim_offsets(&d);
        let poset = hocolim(&d)?.to_poset()?;
        let mut pos = HashMap::new();
        for x in 0..nq {
            if collapsed[x] {
                pos.insert((x, None), off[x]);
            } else {
                for (k, &p) in fibers[x].1.iter().enumerate() {
                    pos.insert((x, Some(p)), off[x] + k);
                }
            }
        }
        Ok((poset, pos))
    };
    let mut maps = Vec::with_capacity(nq);
    // Elements of the current source as (fiber, element) keys.
    let mut src = f.source().clone();
    let mut keys: Vec<(usize, Option<usize>)> =
        (0..src.len()).map(|p| (f.apply(p), Some(p))).collect();
    for i in 1..=nq {
        let qi = order[i - 1];
        let collapse = |k: (usize, Option<usize>)| if k.0 == qi { (k.0, None) } else { k };
        if i == nq {
            let table = keys.iter().map(|k| k.0).collect();
            maps.push(MonotoneMap::new(src.clone(), q.clone(), table)?);
            break;
        }
        let (next, pos) = stage(i)?;
        let table = keys.iter().map(|&k| pos[&collapse(k)]).collect();
        maps.push(MonotoneMap::new(src, next.clone(), table)?);
        let mut next_keys = vec![(0, None); next.len()];
        for (&k, &v) in &pos {
            next_keys[v] = k;
        }
        keys = next_keys;
        src = next;
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinders::{iterated_mc, mc};
    use crate::ops::{dual_cone, simplex};
    use crate::poset::find_isomorphism;

    fn triangle_to_edge() -> MonotoneMap {
        let src = simplex(&["a", "b", "c"]);
        let tgt = simplex(&["a", "d"]);
        let pairs = [
            ("a", "a"),
            ("b", "d"),
            ("c", "d"),
            ("ab", "ad"),
            ("ac", "ad"),
            ("bc", "d"),
            ("abc", "ad"),
        ];
        MonotoneMap::from_labels(src, tgt, &pairs).unwrap()
    }

    #[test]
    fn hatcher_examples() {
        let f = triangle_to_edge();
        let q = f.target();
        let (ad, d, a) = (q.id("ad").unwrap(), q.id("d").unwrap(), q.id("a").unwrap());
        let h = hatcher_map(&f, ad, d).unwrap();
        let ab = h.source().id("ab").unwrap();
        assert_eq!(h.target().label(h.apply(ab)), "b");
        let h = hatcher_map(&f, ad, a).unwrap();
        assert!((0..h.source().len()).all(|x| h.target().label(h.apply(x)) == "a"));
        assert!(matches!(
            hatcher_map(&f, d, ad),
            Err(Error::NotAbove { .. })
        ));
    }

    #[test]
    fn hatcher_maps_of_identity_are_identities() {
        let s = simplex(&["a", "b", "c"]);
        let id = MonotoneMap::identity(&s);
        for r in 0..s.len() {
            for q in s.below(r).iter() {
                let h = hatcher_map(&id, r, q).unwrap();
                assert_eq!(h.table(), &[0]);
            }
        }
    }

    #[test]
    fn reconstruct_triangle() {
        let f = triangle_to_edge();
        let (h, iso) = hocolim_reconstruct(&f).unwrap();
        assert_eq!(h.len(), 7);
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn constant_diagram_over_point() {
        let idx = Poset::point("l");
        let node = simplex(&["a", "b"]);
        let d =
            DiagramOverPoset::new(idx, vec![node.clone()], vec![], Variance::Covariant).unwrap();
        let h = hocolim(&d).unwrap().to_poset().unwrap();
        assert!(find_isomorphism(&h, &node).is_some());
    }

    #[test]
    fn non_functorial_diagram_rejected() {
        let idx = Poset::chain(&["0", "1", "2"]).unwrap();
        let two = Poset::antichain(&["x", "y"]).unwrap();
        let swap = MonotoneMap::new(two.clone(), two.clone(), vec![1, 0]).unwrap();
        let id = MonotoneMap::identity(&two);
        let edges = vec![((2, 1), swap.clone()), ((1, 0), swap), ((2, 0), id.clone())];
        assert!(DiagramOverPoset::new(
            idx.clone(),
            vec![two.clone(); 3],
            edges,
            Variance::Covariant
        )
        .is_ok());
        let swap = MonotoneMap::new(two.clone(), two.clone(), vec![1, 0]).unwrap();
        let edges = vec![((2, 1), swap), ((1, 0), id.clone()), ((2, 0), id)];
        assert!(matches!(
            DiagramOverPoset::new(idx, vec![two; 3], edges, Variance::Covariant),
            Err(Error::NotFunctorial(..))
        ));
    }

    #[test]
    fn hocolim_over_chain_is_iterated_cylinder() {
        let p2 = simplex(&["a", "b"]);
        let p1 = Poset::chain(&["u", "v"]).unwrap();
        let p0 = Poset::point("z");
        let f2 = MonotoneMap::from_labels(
            p2.clone(),
            p1.clone(),
            &[("a", "u"), ("b", "u"), ("ab", "v")],
        )
        .unwrap();
        let f1 = MonotoneMap::new(p1.clone(), p0.clone(), vec![0, 0]).unwrap();
        let idx = Poset::chain(&["0", "1", "2"]).unwrap();
        let edges = vec![
            ((2, 1), f2.clone()),
            ((1, 0), f1.clone()),
            ((2, 0), f2.then(&f1).unwrap()),
        ];
        let d = DiagramOverPoset::new(idx, vec![p0, p1, p2], edges, Variance::Covariant).unwrap();
        let h = hocolim(&d).unwrap();
        assert!(h.is_poset());
        let it = iterated_mc(&[f1, f2]).unwrap();
        assert!(find_isomorphism(&h.transitive_closure(), &it).is_some());
    }

    #[test]
    fn hocolim_over_dual_cone_is_cylinder() {
        let lam = Poset::antichain(&["x", "y"]).unwrap();
        let idx = dual_cone(&lam);
        let (x, y, b) = (
            idx.id("x").unwrap(),
            idx.id("y").unwrap(),
            idx.id("bot").unwrap(),
        );
        let px = simplex(&["a", "c"]);
        let py = Poset::point("e");
        let pb = simplex(&["u", "v"]);
        let fx = MonotoneMap::from_labels(
            px.clone(),
            pb.clone(),
            &[("a", "u"), ("c", "v"), ("ac", "uv")],
        )
        .unwrap();
        let fy = MonotoneMap::from_labels(py.clone(), pb.clone(), &[("e", "u")]).unwrap();
        let mut nodes = vec![Poset::empty(); 3];
        nodes[x] = px.clone();
        nodes[y] = py.clone();
        nodes[b] = pb.clone();
        let d = DiagramOverPoset::new(
            idx,
            nodes,
            vec![((x, b), fx.clone()), ((y, b), fy.clone())],
            Variance::Covariant,
        )
        .unwrap();
        let h = hocolim(&d).unwrap();
        assert!(h.is_poset());
        // hocolim over the antichain is the disjoint union; F restricts to fx and fy.
        let inner = crate::ops::disjoint_union(&px, &py);
        let mut table = fx.table().to_vec();
        table.extend(fy.table());
        let big_f = MonotoneMap::new(inner, pb, table).unwrap();
        let m = mc(&big_f).unwrap();
        assert!(find_isomorphism(&h.transitive_closure(), &m.to_poset().unwrap()).is_some());
    }

    #[test]
    fn homma_triangle_to_edge() {
        let f = triangle_to_edge();
        let maps = homma_factorization(&f).unwrap();
        assert_eq!(maps.len(), 3);
        let mut comp = maps[0].clone();
        for m in &maps[1..] {
            comp = comp.then(m).unwrap();
        }
        assert_eq!(comp.table(), f.table());
        let mut contracted = Vec::new();
        for m in &maps {
            assert!(m.is_full());
            let big: Vec<usize> = (0..m.target().len())
                .filter(|&y| m.fiber(y).count() > 1)
                .collect();
            assert!(big.len() <= 1);
            for y in big {
                let mut names: Vec<String> = m
                    .source()
                    .mask_labels(&m.fiber(y))
                    .into_iter()
                    .map(|l| l.split('@').next().unwrap().to_string())
                    .collect();
                names.sort();
                contracted.push(names);
            }
        }
        // The fibers over `d` (the edge bc) and over `ad` are contracted, one per factor.
        assert_eq!(contracted.len(), 2);
        assert_eq!(
            contracted
                .iter()
                .filter(|c| *c == &["b", "bc", "c"])
                .count(),
            1
        );
    }

    #[test]
    fn homma_injective() {
        let s = simplex(&["a", "b"]);
        let maps = homma_factorization(&MonotoneMap::identity(&s)).unwrap();
        assert_eq!(maps.len(), 3);
        for m in &maps {
            assert!((0..m.target().len()).all(|y| m.fiber(y).count() <= 1));
        }
    }
}
