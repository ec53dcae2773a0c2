use std::collections::HashMap;

use crate::poset::{Poset, Preposet};

fn chain_label(labels: &[String], chain: &[usize]) -> String {
    let inner: Vec<&str> = chain.iter().map(|&i| labels[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Poset of chains ordered by inclusion, given a chain enumeration.
fn chains_by_inclusion(labels: &[String], chains: Vec<Vec<usize>>) -> Poset {
    let index: HashMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut rel = Vec::new();
    for (i, c) in chains.iter().enumerate() {
        if c.len() < 2 {
            continue;
        }
        for k in 0..c.len() {
            let mut face = c.clone();
            face.remove(k);
            rel.push((index[face.as_slice()], i));
        }
    }
    let names = chains.iter().map(|c| chain_label(labels, c)).collect();
    Poset::new(names, &rel).expect("chain inclusion is acyclic")
}

fn grow(order: &[usize], related: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
    let mut stack: Vec<(Vec<usize>, usize)> =
        (0..order.len()).map(|i| (vec![order[i]], i + 1)).collect();
    stack.reverse();
    while let Some((chain, from)) = stack.pop() {
        for j in (from..order.len()).rev() {
            let y = order[j];
            if chain.iter().all(|&x| related(x, y)) {
                let mut c = chain.clone();
                c.push(y);
                stack.push((c, j + 1));
            }
        }
        out.push(chain);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Nonempty chains of `p`, each listed bottom to top, sorted by length.
pub(crate) fn chains(p: &Poset) -> Vec<Vec<usize>> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    grow(&order, &|x, y| p.lt(x, y), &mut out);
    out
}

/// `P♭`: nonempty chains ordered by inclusion, labelled `{a,b,...}` bottom to top.
pub fn barycentric(p: &Poset) -> Poset {
    chains_by_inclusion(p.labels(), chains(p))
}

/// Chains of a preposet are subsets totally ordered by its relation.
pub fn barycentric_preposet(p: &Preposet) -> Poset {
    let order = p.transitive_closure().linear_extension();
    let mut chains = Vec::new();
    grow(&order, &|x, y| p.arrow(x, y), &mut chains);
    chains_by_inclusion(p.labels(), chains)
}

/// `P#`: intervals `[a,b]`, with `[a,b] ≤ [c,d]` iff `c ≤ a` and `b ≤ d`.
pub fn canonical(p: &Poset) -> Poset {
    let mut index = HashMap::new();
    let mut labels = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.le(a, b) {
                index.insert((a, b), labels.len());
                labels.push(format!("[{},{}]", p.label(a), p.label(b)));
            }
        }
    }
    let mut rel = Vec::new();
    for (&(a, b), &i) in &index {
        for &b2 in p.upper_covers(b) {
            rel.push((i, index[&(a, b2)]));
        }
        for &a2 in p.lower_covers(a) {
            rel.push((i, index[&(a2, b)]));
        }
    }
    Poset::new(labels, &rel).expect("interval inclusion is acyclic")
}
