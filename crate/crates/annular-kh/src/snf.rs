//! Sparse integer matrices and exact Smith normal form.
//!
//! Boundary matrices are built as triplets and compressed per column.
//! The Smith normal form runs in two phases: unit pivots are eliminated
//! on the sparse structure with Markowitz pivoting (minimal fill-in,
//! ties broken by lowest row and column), then the remaining core is
//! reduced by the classical dense algorithm over arbitrary-precision
//! integers, so entry growth can never overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-compressed sparse integer matrix mapping C^h -> C^{h+1}.
/// Entry `(r, c)` is the coefficient of target generator `r` in the image
/// of source generator `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseIntMat { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut cols: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); ncols];
        for (r, c, val) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds");
            *cols[c].entry(r).or_insert(0) += val;
        }
        let cols = cols
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|&(_, v)| v != 0)
                    .map(|(r, v)| (r, BigInt::from(v)))
                    .collect()
            })
            .collect();
        SparseIntMat { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Matrix product `self * other`, used by the `d^2 = 0` checks.
    pub fn mul(&self, other: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.ncols, other.nrows);
        let mut cols = Vec::with_capacity(other.ncols);
        for col in &other.cols {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (mid, w) in col {
                for (r, v) in &self.cols[*mid] {
                    let entry = acc.entry(*r).or_insert_with(BigInt::zero);
                    *entry += v * w;
                }
            }
            cols.push(
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<Vec<_>>(),
            );
        }
        SparseIntMat { nrows: self.nrows, ncols: other.ncols, cols }
    }
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Diagonal entries exceeding 1, in divisibility order d1 | d2 | ...
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    /// Rank of the matrix over the prime field F_p: diagonal entries not
    /// divisible by p stay invertible.
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        let killed = self
            .factors
            .iter()
            .filter(|d| (*d % &p).is_zero())
            .count();
        self.rank - killed
    }
}

/// Smith normal form of a sparse matrix.
pub fn smith_normal_form(m: &SparseIntMat) -> SmithForm {
    let (unit_rank, core) = eliminate_units(m);
    let diag = dense_snf(core);
    let rank = unit_rank + diag.len();
    let factors = diag.into_iter().filter(|d| !d.is_one()).collect();
    SmithForm { rank, factors }
}

/// Phase 1: pivot on +-1 entries, cheapest fill-in first. Unit pivots are
/// unimodular eliminations, so each contributes an invariant factor 1 and
/// the Smith form of the rest is the Smith form of the Schur complement.
fn eliminate_units(m: &SparseIntMat) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.nrows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols()];
    for (r, c, v) in m.entries() {
        rows[r].insert(c, v.clone());
        col_rows[c].insert(r);
    }
    let mut live_rows: BTreeSet<usize> = (0..m.nrows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut unit_rank = 0usize;

    loop {
        // Best unit pivot by Markowitz cost (nnz_row - 1) * (nnz_col - 1).
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &live_rows {
            for (&c, v) in &rows[r] {
                if !v.abs().is_one() {
                    continue;
                }
                let cost = (rows[r].len() - 1) * (col_rows[c].len() - 1);
                let candidate = (cost, r, c);
                if best.map_or(true, |(bc, br, bcc)| candidate < (bc, br, bcc)) {
                    best = Some(candidate);
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };

        let pivot = rows[pr][&pc].clone();
        let pivot_row: Vec<(usize, BigInt)> =
            rows[pr].iter().map(|(c, v)| (*c, v.clone())).collect();
        let stack: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in stack {
            let factor = &rows[r][&pc] * &pivot; // pivot is +-1 so this is the exact quotient
            for (c, v) in &pivot_row {
                let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
            if rows[r].is_empty() {
                live_rows.remove(&r);
            }
        }
        // Retire the pivot row and column.
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        rows[pr].clear();
        live_rows.remove(&pr);
        for &r in col_rows[pc].clone().iter() {
            rows[r].remove(&pc);
            if rows[r].is_empty() {
                live_rows.remove(&r);
            }
        }
        col_rows[pc].clear();
        unit_rank += 1;
    }

    // Pack the remaining core densely.
    let rest_rows: Vec<usize> = live_rows.into_iter().collect();
    let mut rest_cols: BTreeSet<usize> = BTreeSet::new();
    for &r in &rest_rows {
        rest_cols.extend(rows[r].keys().copied());
    }
    let rest_cols: Vec<usize> = rest_cols.into_iter().collect();
    let core = rest_rows
        .iter()
        .map(|&r| {
            rest_cols
                .iter()
                .map(|c| rows[r].get(c).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    (unit_rank, core)
}

/// Phase 2: classical Smith reduction of a dense core. Returns the nonzero
/// diagonal in divisibility order.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0usize;

    'outer: while t < nr.min(nc) {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().map_or(true, |(m, _, _)| mag < *m) {
                    best = Some((mag, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break 'outer };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Clear the pivot column.
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = rounded_div(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    for j in t..nc {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    // Remainder is strictly smaller; promote it to pivot.
                    a.swap(t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Clear the pivot row.
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = rounded_div(&a[t][j], &a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: the pivot must divide every remaining entry.
            let mut fixed = true;
            'scan: for i in t + 1..nr {
                for j in t + 1..nc {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for jj in t..nc {
                            let add = a[i][jj].clone();
                            a[t][jj] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            a[t][t] = -a[t][t].clone();
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    diag
}

/// Division rounded to nearest, which keeps remainders at most half the
/// divisor and speeds up the gcd cascade.
fn rounded_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (mut q, r) = num.div_rem(den);
    if r.abs() * 2 > den.abs() {
        if (r.is_negative()) == (den.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}
