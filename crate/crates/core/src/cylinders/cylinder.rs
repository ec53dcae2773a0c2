use super::adjunction::glue;
use crate::error::{Error, Result};
use crate::ops::{disjoint_labels, product, simplex};
use crate::poset::{Mask, MonotoneMap, Poset, Preposet};

/// `P × [2]` with the glued copy given throwaway labels. Bottom copy is
/// `0..n`, top copy is `n..2n`; `free` labels the copy that survives gluing.
fn cylinder_block(p: &Poset, free: &[String], free_on_top: bool) -> Poset {
    let n = p.len();
    let hidden: Vec<String> = p.labels().iter().map(|l| format!("{l}\u{1}")).collect();
    let (bottom, top) = if free_on_top {
        (hidden, free.to_vec())
    } else {
        (free.to_vec(), hidden)
    };
    let mut labels = bottom;
    labels.extend(top);
    let mut rel = p.cover_pairs();
    rel.extend(p.cover_pairs().into_iter().map(|(a, b)| (a + n, b + n)));
    rel.extend((0..n).map(|i| (i, i + n)));
    Poset::new(labels, &rel).expect("product with a chain is acyclic")
}

fn mc_with(f: &MonotoneMap, free: &[String], star: bool) -> Result<Preposet> {
    let n = f.source().len();
    let block = cylinder_block(f.source(), free, !star);
    let domain: Vec<usize> = if star {
        (n..2 * n).collect()
    } else {
        (0..n).collect()
    };
    Ok(glue(
        &block,
        &domain,
        f.table(),
        &Preposet::from_poset(f.target()),
    )?
    .result)
}

/// `MC(f) = P × [2] ∪_{f₁} Q`. Target elements come first, then the free copy
/// of `P`. It is a poset exactly when `f` is closed.
pub fn mc(f: &MonotoneMap) -> Result<Preposet> {
    mc_with(f, f.source().labels(), false)
}

/// `MC*(f) = P × [2] ∪_{f₂} Q`, a poset exactly when `f` is open.
pub fn mc_star(f: &MonotoneMap) -> Result<Preposet> {
    mc_with(f, f.source().labels(), true)
}

/// `π: MC(f) → Q`, equal to `f` on `P` and the identity on `Q`.
pub fn mc_projection(f: &MonotoneMap) -> Result<MonotoneMap> {
    let m = mc(f)?.to_poset()?;
    let nq = f.target().len();
    let mut table: Vec<usize> = (0..nq).collect();
    table.extend_from_slice(f.table());
    MonotoneMap::new(m, f.target().clone(), table)
}

/// `MC(P_n → … → P_0)`, given `maps[k]: P_{k+1} → P_k`. Every intermediate
/// cylinder must be a poset, which holds when all maps are closed.
pub fn iterated_mc(maps: &[MonotoneMap]) -> Result<Poset> {
    let Some(last) = maps.last() else {
        return Err(Error::Precondition(
            "iterated cylinder needs at least one map".into(),
        ));
    };
    for k in 1..maps.len() {
        if !maps[k].target().same_as(maps[k - 1].source()) {
            return Err(Error::Precondition(format!(
                "map {k} does not compose with map {}",
                k - 1
            )));
        }
    }
    let mut pi = MonotoneMap::identity(last.source());
    for f in maps.iter().rev() {
        let step = pi.then(f)?;
        pi = mc_projection(&step)?;
    }
    Ok(pi.source().clone())
}

/// Labels for `P`, `Q` and the product elements `(p,q)` of a thick cylinder.
fn tmc_labels(f: &MonotoneMap) -> (Vec<String>, Vec<String>) {
    disjoint_labels(f.source().labels(), f.target().labels())
}

/// `LMC(f)`: a second copy of `P` is attached below the free copy of `P` in
/// `MC(f)`. The middle copy is labelled `(p,f(p))` as in `TMC(f)`.
pub fn lmc(f: &MonotoneMap) -> Result<Preposet> {
    let (lp, lq) = tmc_labels(f);
    let src = f.source().relabeled(lp.clone())?;
    let tgt = f.target().relabeled(lq.clone())?;
    let g = MonotoneMap::new(src.clone(), tgt, f.table().to_vec())?;
    let graph: Vec<String> = (0..src.len())
        .map(|p| format!("({},{})", lp[p], lq[f.apply(p)]))
        .collect();
    let inner = mc_with(&g, &graph, false)?;
    let n = src.len();
    let nq = f.target().len();
    let block = cylinder_block(&src, &lp, false);
    let domain: Vec<usize> = (n..2 * n).collect();
    let images: Vec<usize> = (0..n).map(|p| nq + p).collect();
    Ok(glue(&block, &domain, &images, &inner)?.result)
}

/// Thick mapping cylinder together with the positions of its parts.
#[derive(Clone, Debug)]
pub struct Tmc {
    pub poset: Poset,
    /// `(p, q)` for every element of `R = ⌊Γ(f)⌋`, in carrier order after `P ⊔ Q`.
    pub pairs: Vec<(usize, usize)>,
    pub source_len: usize,
    pub target_len: usize,
}

impl Tmc {
    pub fn pair_index(&self, p: usize, q: usize) -> Option<usize> {
        self.pairs
            .iter()
            .position(|&x| x == (p, q))
            .map(|i| i + self.source_len + self.target_len)
    }

    /// `P ⊔ Q ⊔ Γ(f)`, the copy of `LMC(f)` inside `TMC(f)`.
    pub fn lmc_mask(&self, f: &MonotoneMap) -> Mask {
        let base = self.source_len + self.target_len;
        let mut m = self.poset.empty_mask();
        for i in 0..base {
            m.insert(i);
        }
        for (k, &(p, q)) in self.pairs.iter().enumerate() {
            if f.apply(p) == q {
                m.insert(base + k);
            }
        }
        m
    }
}

/// `TMC(f) = MC(π_P|R) ∪_R MC(π_Q|R)` with `R` the closure of the graph of `f`
/// in `P × Q`. Carrier order: `P`, then `Q`, then `R`.
pub fn tmc(f: &MonotoneMap) -> Result<Tmc> {
    let (p, q) = (f.source(), f.target());
    let (np, nq) = (p.len(), q.len());
    let (lp, lq) = tmc_labels(f);
    let mut pairs = Vec::new();
    for a in 0..np {
        for b in 0..nq {
            // (a, b) ≤ (x, f(x)) for some x ≥ a iff b ≤ f(x) for some x ≥ a.
            if q.le(b, f.apply(a)) || p.above(a).iter().any(|x| q.le(b, f.apply(x))) {
                pairs.push((a, b));
            }
        }
    }
    let mut labels = lp.clone();
    labels.extend(lq.iter().cloned());
    labels.extend(pairs.iter().map(|&(a, b)| format!("({},{})", lp[a], lq[b])));
    let pos: std::collections::HashMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(k, &ab)| (ab, np + nq + k))
        .collect();
    let mut rel = p.cover_pairs();
    rel.extend(q.cover_pairs().into_iter().map(|(a, b)| (np + a, np + b)));
    for (&(a, b), &i) in &pos {
        rel.push((a, i));
        rel.push((np + b, i));
        for &a2 in p.lower_covers(a) {
            if let Some(&j) = pos.get(&(a2, b)) {
                rel.push((j, i));
            }
        }
        for &b2 in q.lower_covers(b) {
            if let Some(&j) = pos.get(&(a, b2)) {
                rel.push((j, i));
            }
        }
    }
    let poset = Poset::new(labels, &rel)?;
    Ok(Tmc {
        poset,
        pairs,
        source_len: np,
        target_len: nq,
    })
}

/// The retraction of `TMC(f)` onto `LMC(f)` and its homotopy.
#[derive(Clone, Debug)]
pub struct TmcRetraction {
    pub tmc: Tmc,
    pub lmc_mask: Mask,
    /// `r: TMC(f) → LMC(f)`, `(p,q) ↦ (p,f(p))`, identity on `P ⊔ Q`.
    pub retraction: MonotoneMap,
    /// `g: TMC(f) → TMC(f)`, `(p,q) ↦ (p, q ∨ f(p))`, identity on `P ⊔ Q`.
    pub lift: MonotoneMap,
    /// `H: TMC(f) × I → TMC(f)` with `I` the face poset of an edge `{0, 1, 01}`:
    /// `H(·,0) = id`, `H(·,1) = r`, `H(·,01) = g`.
    pub homotopy: MonotoneMap,
}

/// Builds `r`, `g` and `H` from their defining formulas and checks each is
/// monotone. A failure is reported with the offending pair of elements.
pub fn tmc_retraction(f: &MonotoneMap) -> Result<TmcRetraction> {
    let q = f.target();
    if !q.is_conditionally_complete() {
        return Err(Error::NotConditionallyComplete);
    }
    let t = tmc(f)?;
    let n = t.poset.len();
    let base = t.source_len + t.target_len;
    let mut r = (0..n).collect::<Vec<_>>();
    let mut g = r.clone();
    for (k, &(a, b)) in t.pairs.iter().enumerate() {
        let fa = f.apply(a);
        r[base + k] = t.pair_index(a, fa).expect("graph lies in R");
        let y = q.join_of(b, fa).ok_or(Error::NotConditionallyComplete)?;
        g[base + k] = t
            .pair_index(a, y)
            .ok_or_else(|| Error::Precondition("join leaves the closure of the graph".into()))?;
    }
    let lmc_mask = t.lmc_mask(f);
    let (lmc, to_tmc) = t.poset.induced(&lmc_mask);
    let mut local = vec![usize::MAX; n];
    for (i, &x) in to_tmc.iter().enumerate() {
        local[x] = i;
    }
    let retraction = MonotoneMap::new(t.poset.clone(), lmc, r.iter().map(|&x| local[x]).collect())?;
    let lift = MonotoneMap::new(t.poset.clone(), t.poset.clone(), g.clone())?;
    let interval = simplex(&["0", "1"]);
    let cyl = product(&t.poset, &interval);
    let mut h = Vec::with_capacity(cyl.len());
    for x in 0..n {
        for i in 0..interval.len() {
            h.push(match interval.label(i) {
                "0" => x,
                "1" => r[x],
                _ => g[x],
            });
        }
    }
    let homotopy = MonotoneMap::new(cyl, t.poset.clone(), h)?;
    Ok(TmcRetraction {
        tmc: t,
        lmc_mask,
        retraction,
        lift,
        homotopy,
    })
}

/// Pullback of `f: P → Q` along `g: Q' → Q` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub poset: Poset,
    pub to_source: MonotoneMap,
    pub to_other: MonotoneMap,
}

pub fn pullback(f: &MonotoneMap, g: &MonotoneMap) -> Result<Pullback> {
    if !f.target().same_as(g.target()) {
        return Err(Error::Precondition(
            "pullback maps must share a target".into(),
        ));
    }
    let (p, q2) = (f.source(), g.source());
    let prod = product(p, q2);
    let m = q2.len();
    let mask = Mask::from_indices(
        prod.len(),
        (0..p.len()).flat_map(|a| {
            (0..m)
                .filter(move |&b| f.apply(a) == g.apply(b))
                .map(move |b| a * m + b)
        }),
    );
    let (poset, idx) = prod.induced(&mask);
    let to_source = MonotoneMap::new(
        poset.clone(),
        p.clone(),
        idx.iter().map(|&i| i / m).collect(),
    )?;
    let to_other = MonotoneMap::new(
        poset.clone(),
        q2.clone(),
        idx.iter().map(|&i| i % m).collect(),
    )?;
    Ok(Pullback {
        poset,
        to_source,
        to_other,
    })
}
