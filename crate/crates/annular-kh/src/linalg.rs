//! Dense exact linear algebra over a field, for the spectral engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal field interface: exact arithmetic, no approximation.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// Exact rational numbers.
#[derive(Clone, PartialEq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(v: &BigInt) -> Self {
        Rat(BigRational::from_integer(v.clone()))
    }

    pub fn from_i64(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn inv(&self) -> Self {
        Rat(self.0.recip())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Prime field with compile-time modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GF<const P: u64>(pub u64);

impl<const P: u64> Field for GF<P> {
    fn zero() -> Self {
        GF(0)
    }
    fn one() -> Self {
        GF(1 % P)
    }
    fn add(&self, other: &Self) -> Self {
        GF((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        GF((self.0 + P - other.0 % P) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        GF((self.0 as u128 * other.0 as u128 % P as u128) as u64)
    }
    fn inv(&self) -> Self {
        assert!(self.0 % P != 0, "division by zero in GF({P})");
        // Fermat: a^(P-2) mod P.
        let mut base = self.0 % P;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc as u128 * base as u128 % P as u128) as u64;
            }
            base = (base as u128 * base as u128 % P as u128) as u64;
            exp >>= 1;
        }
        GF(acc)
    }
    fn is_zero(&self) -> bool {
        self.0 % P == 0
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    /// Submatrix of the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<F> {
        Mat::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn matmul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = F::zero();
            for m in 0..self.cols {
                acc = acc.add(&self.get(r, m).mul(other.get(m, c)));
            }
            acc
        })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                let tmp = self.get(row, c).clone();
                let v = self.get(p, c).clone();
                self.set(row, c, v);
                self.set(p, c, tmp);
            }
            let inv = self.get(row, col).inv();
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).sub(&factor.mul(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Columns spanning the kernel of `self`.
    pub fn kernel_basis(&self) -> Mat<F> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            out.set(fc, idx, F::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = m.get(prow, fc).clone();
                if !v.is_zero() {
                    out.set(pc, idx, F::zero().sub(&v));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rmat(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_fn(rows.len(), rows[0].len(), |r, c| Rat::from_i64(rows[r][c]))
    }

    #[test]
    fn rank_and_kernel() {
        let m = rmat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.matmul(&k).is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m: Mat<Rat> = Mat::zero(0, 3);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 3);
    }

    #[test]
    fn rational_exactness() {
        // A matrix that would be numerically delicate in floating point.
        let m = rmat(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert!(m.matmul(&k).is_zero());
    }

    #[test]
    fn gf2_arithmetic_and_kernel() {
        type F2 = GF<2>;
        let m: Mat<F2> = Mat::from_fn(2, 3, |r, c| GF(((r + c) % 2) as u64));
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.matmul(&k).is_zero());
        assert_eq!(GF::<7>(3).inv().0, 5);
    }

    #[test]
    fn hcat_and_select() {
        let a = rmat(&[&[1, 0], &[0, 1]]);
        let b = rmat(&[&[1], &[1]]);
        let h = a.hcat(&b);
        assert_eq!(h.cols(), 3);
        assert_eq!(h.rank(), 2);
        let s = h.select(&[1], &[0, 2]);
        assert_eq!(*s.get(0, 1), Rat::from_i64(1));
    }
}
