//! Independent dense verification path for homology.
//!
//! Everything here recomputes ranks and torsion from dense matrices with
//! textbook algorithms: plain Smith reduction for integer homology,
//! Bareiss fraction-free elimination for rational ranks, and modular
//! Gaussian elimination for prime fields. None of it shares code with the
//! sparse pipeline, so agreement between the two is a real check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::homology::{Coeff, GradedGroup, GroupEntry, Grading};
use crate::tqft::GradedComplex;

/// Dense integer Smith normal form; returns the full diagonal.
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Move the smallest nonzero entry to the pivot seat.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut settled = false;
        while !settled {
            settled = true;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..nc {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        settled = false;
                    }
                }
            }
            if !settled {
                continue;
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for i in t..nr {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        settled = false;
                        break;
                    }
                }
            }
            if !settled {
                continue;
            }
            for i in t + 1..nr {
                for j in t + 1..nc {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        let row: Vec<BigInt> = a[i].clone();
                        for (jj, v) in row.into_iter().enumerate() {
                            a[t][jj] += v;
                        }
                        settled = false;
                    }
                }
            }
        }
        if a[t][t].is_negative() {
            let neg = -a[t][t].clone();
            a[t][t] = neg;
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    diag
}

/// Rank over the rationals by Bareiss fraction-free elimination.
fn dense_rank_rational(mut a: Vec<Vec<BigInt>>) -> usize {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    let mut row = 0;
    for col in 0..nc {
        let Some(p) = (row..nr).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        for i in row + 1..nr {
            for j in col + 1..nc {
                let num = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == nr {
            break;
        }
    }
    rank
}

/// Rank over F_p by modular Gaussian elimination.
fn dense_rank_mod(a: &[Vec<BigInt>], p: u64) -> usize {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let r = ((v % &pb) + &pb) % &pb;
                    let digits = r.to_u64_digits().1;
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..nc {
        let Some(pr) = (row..nr).find(|&i| m[i][col] % p != 0) else { continue };
        m.swap(row, pr);
        let inv = mod_inverse(m[row][col] % p, p);
        for i in 0..nr {
            if i == row || m[i][col] % p == 0 {
                continue;
            }
            let factor = (m[i][col] % p) * inv % p;
            for j in col..nc {
                let sub = (factor as u128 * m[row][j] as u128 % p as u128) as u64;
                m[i][j] = (m[i][j] + p - sub % p) % p;
            }
        }
        rank += 1;
        row += 1;
        if row == nr {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and a nonzero mod p.
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    ((t % p as i128 + p as i128) % p as i128) as u64
}

/// Homology of a graded complex through the dense reference path.
pub fn homology(complex: &GradedComplex, coeff: Coeff) -> GradedGroup {
    let mut entries = BTreeMap::new();
    for (key, block) in complex.blocks() {
        for h in block.h_range() {
            let dim = block.dim(h);
            let rank_of = |h: i32| -> usize {
                let Some(m) = block.matrix(h) else { return 0 };
                let dense = m.to_dense();
                match coeff {
                    Coeff::Rationals => dense_rank_rational(dense),
                    Coeff::Integers => dense_smith(dense).len(),
                    Coeff::PrimeField(p) => dense_rank_mod(&dense, p),
                }
            };
            let free = dim - rank_of(h) - rank_of(h - 1);
            let torsion = match coeff {
                Coeff::Integers => match h
                    .checked_sub(1)
                    .and_then(|h0| block.matrix(h0))
                {
                    Some(m) => dense_smith(m.to_dense())
                        .into_iter()
                        .filter(|d| *d > BigInt::from(1))
                        .collect(),
                    None => Vec::new(),
                },
                _ => Vec::new(),
            };
            let entry = GroupEntry { free, torsion };
            if !entry.is_trivial() {
                entries.insert(Grading { h, q: key.q, k: key.k }, entry);
            }
        }
    }
    GradedGroup::from_parts(complex.mode, coeff, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SliceWord;
    use crate::tqft::{assemble, Mode};

    #[test]
    fn dense_smith_basics() {
        let a = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
        assert_eq!(dense_smith(a), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn bareiss_rank() {
        let a = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(dense_rank_rational(a), 2);
    }

    #[test]
    fn modular_rank() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(6)],
        ];
        assert_eq!(dense_rank_mod(&a, 2), 0);
        assert_eq!(dense_rank_mod(&a, 3), 1);
        assert_eq!(dense_rank_mod(&a, 5), 2);
        assert_eq!(mod_inverse(3, 7), 5);
    }

    #[test]
    fn oracle_agrees_with_sparse_pipeline_on_small_words() {
        let words = [
            SliceWord::parse("strands 2\nP 1\n").unwrap(),
            SliceWord::parse("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n").unwrap(),
            SliceWord::from_braid(3, &[1, -2]).unwrap(),
        ];
        for w in &words {
            for mode in [Mode::Annular, Mode::Plain] {
                let cx = assemble(w, mode).unwrap();
                for coeff in [
                    Coeff::Integers,
                    Coeff::Rationals,
                    Coeff::PrimeField(2),
                    Coeff::PrimeField(3),
                ] {
                    assert_eq!(
                        crate::homology::homology(&cx, coeff),
                        homology(&cx, coeff),
                        "mismatch for {w} over {coeff}"
                    );
                }
            }
        }
    }
}
