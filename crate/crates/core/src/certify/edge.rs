//! Edge-zipping of simplicial complexes and its expansion into zip steps.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::zip::{elementary_zip, ZipStep};
use super::{with_pool, Limits, Meter, OutOfBudget, Search};
use crate::error::{Error, Result};
use crate::ops::FacetComplex;
use crate::poset::{find_isomorphism, IsoMemo, Poset};

/// Contract the edge `vw`, keeping `v`; indices refer to the complex before the step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeZipStep {
    pub v: usize,
    pub w: usize,
}

pub fn edge_contract(k: &FacetComplex, v: usize, w: usize) -> Result<FacetComplex> {
    k.contract(v, w)
}

/// `vw` is an edge and `lk(v) ∩ lk(w) = lk(vw)`.
pub fn is_elementary_edge_zip(k: &FacetComplex, v: usize, w: usize) -> bool {
    v < k.vertices().len() && w < k.vertices().len() && k.satisfies_link_condition(v, w)
}

/// Applies the contractions, checking the link condition before each.
pub fn replay_edge_zipping(k: &FacetComplex, steps: &[EdgeZipStep]) -> Result<FacetComplex> {
    let mut cur = k.clone();
    for s in steps {
        if !is_elementary_edge_zip(&cur, s.v, s.w) {
            let name = |i: usize| {
                cur.vertices()
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("#{i}"))
            };
            return Err(Error::LinkCondition {
                v: name(s.v),
                w: name(s.w),
            });
        }
        cur = cur.contract(s.v, s.w)?;
    }
    Ok(cur)
}

fn edges(k: &FacetComplex) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = k
        .faces()
        .into_iter()
        .filter(|f| f.len() == 2)
        .map(|f| (f[0], f[1]))
        .collect();
    out.sort_unstable();
    out
}

pub fn find_edge_zipping(k: &FacetComplex, target: &FacetComplex) -> Search<Vec<EdgeZipStep>> {
    find_edge_zipping_with(k, target, &Limits::default())
}

/// Depth-first over admissible edges, remembering isomorphism classes that fail.
pub fn find_edge_zipping_with(
    k: &FacetComplex,
    target: &FacetComplex,
    limits: &Limits,
) -> Search<Vec<EdgeZipStep>> {
    let meter = Meter::new(limits.budget);
    let dead = Mutex::new(IsoMemo::new());
    let goal = target.face_poset();
    let n = target.used_vertices().len();
    let r = with_pool(limits.jobs, || edge_dfs(&meter, &dead, k, &goal, n));
    meter.finish(r)
}

fn edge_dfs(
    meter: &Meter,
    dead: &Mutex<IsoMemo<()>>,
    k: &FacetComplex,
    goal: &Poset,
    goal_vertices: usize,
) -> std::result::Result<Option<Vec<EdgeZipStep>>, OutOfBudget> {
    meter.tick()?;
    let fp = k.face_poset();
    let nv = k.used_vertices().len();
    if nv == goal_vertices {
        let hit = fp.len() == goal.len() && find_isomorphism(&fp, goal).is_some();
        return Ok(hit.then(Vec::new));
    }
    if nv < goal_vertices
        || fp.len() < goal.len()
        || dead.lock().expect("memo lock").get(&fp, None).is_some()
    {
        return Ok(None);
    }
    for (v, w) in edges(k) {
        if !k.satisfies_link_condition(v, w) {
            continue;
        }
        let next = k.contract(v, w).expect("edge endpoints are valid");
        if let Some(mut rest) = edge_dfs(meter, dead, &next, goal, goal_vertices)? {
            rest.insert(0, EdgeZipStep { v, w });
            return Ok(Some(rest));
        }
    }
    dead.lock().expect("memo lock").insert(fp, None, ());
    Ok(None)
}

/// Expands each contraction of `vw` into the zips `(vw; v, w)` and then
/// `(A∪vw; A∪v, A∪w)` for the simplices `A` of `lk(vw)` by increasing dimension.
/// The steps act on `k.face_poset()`, and the replay ends at a poset
/// isomorphic to the face poset of the contracted complex.
pub fn zipping_from_edge_zipping(k: &FacetComplex, steps: &[EdgeZipStep]) -> Result<Vec<ZipStep>> {
    let mut cx = k.clone();
    let mut cur = k.face_poset();
    let mut out = Vec::new();
    for s in steps {
        if !is_elementary_edge_zip(&cx, s.v, s.w) {
            let name = |i: usize| {
                cx.vertices()
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("#{i}"))
            };
            return Err(Error::LinkCondition {
                v: name(s.v),
                w: name(s.w),
            });
        }
        let fp = cx.face_poset();
        let iso = find_isomorphism(&cur, &fp).ok_or_else(|| {
            Error::Scheme("intermediate poset is not the face poset of the complex".into())
        })?;
        cur = cur.relabeled(
            (0..cur.len())
                .map(|i| fp.label(iso.apply(i)).to_string())
                .collect(),
        )?;
        let mut edge = vec![s.v, s.w];
        edge.sort_unstable();
        let mut link: Vec<Vec<usize>> = cx.link(&edge).into_iter().collect();
        link.sort_by_key(|a| a.len());
        let face = |base: &[usize], extra: &[usize]| {
            let mut f: Vec<usize> = base.iter().chain(extra).copied().collect();
            f.sort_unstable();
            cx.face_name(&f)
        };
        let mut triples = vec![(face(&edge, &[]), face(&[s.v], &[]), face(&[s.w], &[]))];
        for a in &link {
            triples.push((face(&edge, a), face(&[s.v], a), face(&[s.w], a)));
        }
        for (p, q, r) in triples {
            let step = ZipStep {
                p: cur.id(&p)?,
                q: cur.id(&q)?,
                r: cur.id(&r)?,
            };
            cur = elementary_zip(&cur, &step)?.0;
            out.push(step);
        }
        cx = cx.contract(s.v, s.w)?;
    }
    if find_isomorphism(&cur, &cx.face_poset()).is_none() {
        return Err(Error::Scheme(
            "expanded zipping does not end at the contracted complex".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{replay_zipping, verify_zipping, ZipGoal};

    fn octahedron() -> FacetComplex {
        let v = ["a", "A", "b", "B", "c", "C"];
        let mut facets = Vec::new();
        for x in ["a", "A"] {
            for y in ["b", "B"] {
                for z in ["c", "C"] {
                    facets.push(vec![x, y, z]);
                }
            }
        }
        let refs: Vec<&[&str]> = facets.iter().map(|f| f.as_slice()).collect();
        FacetComplex::from_labels(&v, &refs).unwrap()
    }

    fn tetra_boundary() -> FacetComplex {
        FacetComplex::from_labels(
            &["w", "x", "y", "z"],
            &[
                &["w", "x", "y"],
                &["w", "x", "z"],
                &["w", "y", "z"],
                &["x", "y", "z"],
            ],
        )
        .unwrap()
    }

    #[test]
    fn contracting_an_edge_gives_a_point() {
        let k = FacetComplex::from_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        let pt = edge_contract(&k, 0, 1).unwrap();
        assert_eq!(pt.face_poset().len(), 1);
        let zs = zipping_from_edge_zipping(&k, &[EdgeZipStep { v: 0, w: 1 }]).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(verify_zipping(&k.face_poset(), &zs, &ZipGoal::Singleton).is_ok());
    }

    #[test]
    fn missing_face_blocks_the_edge() {
        let k =
            FacetComplex::from_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]])
                .unwrap();
        assert!(!is_elementary_edge_zip(&k, 0, 1));
        assert!(replay_edge_zipping(&k, &[EdgeZipStep { v: 0, w: 1 }]).is_err());
    }

    #[test]
    fn edge_with_one_link_vertex() {
        // Two triangles abc, abd: the edge ac has link {b}.
        let k =
            FacetComplex::from_labels(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["a", "b", "d"]])
                .unwrap();
        assert!(is_elementary_edge_zip(&k, 0, 2));
        let zs = zipping_from_edge_zipping(&k, &[EdgeZipStep { v: 0, w: 2 }]).unwrap();
        assert_eq!(zs.len(), 2);
        let end = replay_zipping(&k.face_poset(), &zs).unwrap();
        assert!(find_isomorphism(&end, &edge_contract(&k, 0, 2).unwrap().face_poset()).is_some());
    }

    #[test]
    fn octahedron_edge_zips_to_the_tetrahedron_boundary() {
        let o = octahedron();
        let t = tetra_boundary();
        let steps = find_edge_zipping(&o, &t).found().expect("route exists");
        assert_eq!(steps.len(), 2);
        let end = replay_edge_zipping(&o, &steps).unwrap();
        assert!(find_isomorphism(&end.face_poset(), &t.face_poset()).is_some());
        let zs = zipping_from_edge_zipping(&o, &steps).unwrap();
        assert!(verify_zipping(&o.face_poset(), &zs, &ZipGoal::Isomorphic(t.face_poset())).is_ok());
    }
}
