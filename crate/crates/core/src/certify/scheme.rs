//! From a construction of `K*` to a zipping of `K` onto a point.
//!
//! A split whose two parts and whose intersection are all cones of `K*`
//! reads, in `K`, as a triple `(p; q, r)` with `q`, `r` the least elements of
//! the parts and `p` the least element of the intersection. Zipping that
//! triple turns the split into a single cone, so the tree shrinks with the
//! poset. When no such split of the current tree is a valid zip site, the
//! tree is rebuilt by a fresh search on the zipped poset.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::construction::{
    find_construction, verify_construction, ConstructionNode, ConstructionTree,
};
use super::zip::{check_zip_step, elementary_zip, find_zipping, verify_zipping, ZipGoal, ZipStep};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::recognize::is_cell_complex;

/// Zip steps produced from a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZipBridge {
    pub steps: Vec<ZipStep>,
    /// The cell-complex check was undecided, so boundary spheres were assumed.
    pub assume_sphere: bool,
    /// How often the tree had to be replaced by a fresh search.
    pub rebuilt: usize,
}

fn cone_apex(n: &ConstructionNode) -> Option<usize> {
    match n {
        ConstructionNode::Cone { apex } => Some(*apex),
        _ => None,
    }
}

/// Candidate sites, deepest splits first.
fn sites(n: &ConstructionNode, out: &mut Vec<ZipStep>) {
    if let ConstructionNode::Split {
        q_tree,
        r_tree,
        meet_tree,
        ..
    } = n
    {
        sites(q_tree, out);
        sites(r_tree, out);
        sites(meet_tree, out);
        if let (Some(q), Some(r), Some(p)) =
            (cone_apex(q_tree), cone_apex(r_tree), cone_apex(meet_tree))
        {
            out.push(ZipStep {
                p,
                q: q.min(r),
                r: q.max(r),
            });
        }
    }
}

/// Image of a node under the class map, with splits whose parts merged collapsed away.
fn push_forward(n: &ConstructionNode, class: &[usize]) -> ConstructionNode {
    match n {
        ConstructionNode::Cone { apex } => ConstructionNode::Cone { apex: class[*apex] },
        ConstructionNode::Split {
            q,
            r,
            q_tree,
            r_tree,
            meet_tree,
        } => {
            let qi: BTreeSet<usize> = q.iter().map(|&x| class[x]).collect();
            let ri: BTreeSet<usize> = r.iter().map(|&x| class[x]).collect();
            if ri.is_subset(&qi) {
                return push_forward(q_tree, class);
            }
            if qi.is_subset(&ri) {
                return push_forward(r_tree, class);
            }
            ConstructionNode::Split {
                q: qi.into_iter().collect(),
                r: ri.into_iter().collect(),
                q_tree: Box::new(push_forward(q_tree, class)),
                r_tree: Box::new(push_forward(r_tree, class)),
                meet_tree: Box::new(push_forward(meet_tree, class)),
            }
        }
    }
}

/// Follows the construction `t` of `k.dual()` (same element indices as `k`)
/// down to a zipping of `k` onto a singleton.
pub fn zipping_from_construction(k: &Poset, t: &ConstructionTree) -> Result<ZipBridge> {
    verify_construction(&k.dual(), t)
        .map_err(|e| Error::Scheme(format!("construction does not replay: {e}")))?;
    let cells = is_cell_complex(k);
    if cells.is_no() {
        return Err(Error::Precondition(format!("not a cell complex: {cells}")));
    }
    let assume_sphere = cells.is_unknown();
    let mut cur = k.clone();
    let mut tree = t.root.clone();
    let mut steps = Vec::new();
    let mut rebuilt = 0;
    while cur.len() > 1 {
        let mut cand = Vec::new();
        sites(&tree, &mut cand);
        let mut site = cand.into_iter().find(|s| check_zip_step(&cur, s).is_ok());
        if site.is_none() {
            rebuilt += 1;
            if let Some(fresh) = find_construction(&cur.dual()).found() {
                tree = fresh.root;
                let mut cand = Vec::new();
                sites(&tree, &mut cand);
                site = cand.into_iter().find(|s| check_zip_step(&cur, s).is_ok());
            }
        }
        let Some(site) = site else {
            // Last resort: finish with a direct search from the current poset.
            let rest = find_zipping(&cur, &ZipGoal::Singleton)
                .found()
                .ok_or_else(|| {
                    Error::Scheme(format!("no zip site left at {} elements", cur.len()))
                })?;
            steps.extend(rest);
            break;
        };
        let (next, class) = elementary_zip(&cur, &site)?;
        steps.push(site);
        cur = next;
        tree = push_forward(&tree, &class);
        if cur.len() > 1
            && verify_construction(&cur.dual(), &ConstructionTree { root: tree.clone() }).is_err()
        {
            rebuilt += 1;
            tree = find_construction(&cur.dual())
                .found()
                .ok_or_else(|| {
                    Error::Scheme(format!(
                        "zipped poset with {} elements lost its construction",
                        cur.len()
                    ))
                })?
                .root;
        }
    }
    verify_zipping(k, &steps, &ZipGoal::Singleton).map_err(|e| Error::Scheme(e.to_string()))?;
    Ok(ZipBridge {
        steps,
        assume_sphere,
        rebuilt,
    })
}
