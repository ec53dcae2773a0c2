//! Smith normal form invariants of sparse integer matrices.
//!
//! Unit pivots are eliminated first on a sparse `i64` representation; what
//! remains is reduced densely over arbitrary-precision integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse matrix in column form: `cols[j]` lists `(row, value)`.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// `self · other` as a sparse matrix.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, v) in col {
                    for &(i, w) in &self.cols[k] {
                        *acc.entry(i).or_default() += v * w;
                    }
                }
                let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
                out.sort_unstable();
                out
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// Nonzero invariant factors (positive, each dividing the next).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match sparse_unit_phase(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_snf(rest));
            normalize(out)
        }
        None => normalize(dense_snf(to_dense(m))),
    }
}

#[allow(dead_code)]
pub(crate) fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    // Dense elimination already enforces divisibility; the unit prefix only needs ordering.
    d.sort();
    d
}

fn to_dense(m: &SparseMatrix) -> Vec<Vec<BigInt>> {
    let mut a = vec![vec![BigInt::zero(); m.ncols()]; m.rows];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] += BigInt::from(v);
        }
    }
    a
}

/// Eliminates ±1 pivots. Returns the count of unit pivots and the dense
/// remainder, or `None` on `i64` overflow.
fn sparse_unit_phase(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); m.rows];
    let mut cols: Vec<HashMap<usize, ()>> = vec![HashMap::new(); m.ncols()];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                let e = rows[i].entry(j).or_insert(0);
                *e = e.checked_add(v)?;
                cols[j].insert(i, ());
            }
        }
    }
    let mut units = 0;
    let mut alive_col = vec![true; m.ncols()];
    loop {
        // Pick the unit entry whose row is shortest.
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            if best.is_some_and(|(len, _, _)| row.len() >= len) {
                continue;
            }
            if let Some((&j, _)) = row
                .iter()
                .filter(|(_, &v)| v == 1 || v == -1)
                .min_by_key(|(&j, _)| cols[j].len())
            {
                best = Some((row.len(), i, j));
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let p = pivot_row[&pj];
        let others: Vec<usize> = cols[pj].keys().copied().filter(|&r| r != pi).collect();
        for r in others {
            let a = rows[r][&pj];
            let factor = a.checked_mul(p)?;
            for (&c, &v) in &pivot_row {
                let e = rows[r].entry(c).or_insert(0);
                *e = e.checked_sub(factor.checked_mul(v)?)?;
                if *e == 0 {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r, ());
                }
            }
        }
        for &c in pivot_row.keys() {
            cols[c].remove(&pi);
        }
        alive_col[pj] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.ncols())
        .filter(|&j| alive_col[j] && !cols[j].is_empty())
        .collect();
    let col_pos: HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let rest = live_rows
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (&j, &v) in &rows[i] {
                row[col_pos[&j]] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((units, rest))
}

/// Diagonal of the Smith normal form of a dense matrix, zeros dropped.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the trailing block.
        let mut pos = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && pos.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pos = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pos else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for i in t..m {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility: fold any non-multiple into row t and retry.
                let bad =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..n {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank over GF(2).
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    let words = m.rows.div_ceil(64);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; m.rows];
    let mut rank = 0;
    for col in &m.cols {
        let mut v = vec![0u64; words];
        for &(i, x) in col {
            if x.rem_euclid(2) == 1 {
                v[i / 64] ^= 1 << (i % 64);
            }
        }
        loop {
            let Some(lead) = (0..m.rows).rev().find(|&i| v[i / 64] >> (i % 64) & 1 == 1) else {
                break;
            };
            match &basis[lead] {
                Some(b) => {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
