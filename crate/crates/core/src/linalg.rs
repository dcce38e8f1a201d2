//! Dense exact linear algebra over pluggable fields.
//!
//! Rank decisions are never made in floating point. The working field is
//! F_p with p = 2^61 - 1; every rank computed there is a lower bound on the
//! rational rank of the same integer matrix, so an exact-rational re-run of
//! the identical computation can audit any modular verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The working prime modulus, 2^61 - 1.
pub const MODULUS: u64 = (1u64 << 61) - 1;

/// Field operations needed by elimination. `from_u64` interprets a sampled
/// integer in [0, MODULUS) as a field element.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse; None for zero.
    fn inv(&self) -> Option<Self>
    where
        Self: Sized;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

/// F_p for p = 2^61 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf(pub u64);

impl Field for Gf {
    fn zero() -> Self {
        Gf(0)
    }
    fn one() -> Self {
        Gf(1)
    }
    fn from_u64(v: u64) -> Self {
        Gf(v % MODULUS)
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Gf(if s >= MODULUS { s - MODULUS } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Gf(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + MODULUS - o.0
        })
    }
    fn mul(&self, o: &Self) -> Self {
        Gf(((self.0 as u128 * o.0 as u128) % MODULUS as u128) as u64)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *self;
        let mut exp = MODULUS - 2;
        let mut acc = Gf(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Arbitrary-precision rationals, for audit re-runs.
#[derive(Clone, PartialEq, Debug)]
pub struct Rat(pub BigRational);

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_u64(v: u64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn add(&self, o: &Self) -> Self {
        Rat(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rat(&self.0 * &o.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Rat {
    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    /// Row-reduces in place; returns pivot column per eliminated row.
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.data.swap_chunks(r, pr, self.cols);
            let inv = self.at(r, c).inv().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.at(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).sub(&f.mul(self.at(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Basis of the right kernel (solutions of M x = 0), one vector per
    /// free column, in column order. Deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left kernel (vectors y with y M = 0).
    pub fn left_kernel_basis(&self) -> Vec<Vec<F>> {
        self.transpose().kernel_basis()
    }

    /// Solves M x = b if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// y M for a row vector y.
    pub fn left_mul(&self, y: &[F]) -> Vec<F> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                out[c] = out[c].add(&yr.mul(self.at(r, c)));
            }
        }
        out
    }

    /// M x for a column vector x.
    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&x[c]));
                }
                acc
            })
            .collect()
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl<F> SwapChunks for Vec<F> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for j in 0..width {
            self.swap(a * width + j, b * width + j);
        }
    }
}

/// Two bases span the same space iff stacking either onto the other does not
/// increase rank.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> bool {
    let pack = |rows: &[Vec<F>]| {
        let mut m = Matrix::zeros(rows.len(), dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    };
    let ra = pack(a).rank();
    let rb = pack(b).rank();
    if ra != rb {
        return false;
    }
    let mut all: Vec<Vec<F>> = a.to_vec();
    all.extend(b.to_vec());
    pack(&all).rank() == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_arithmetic() {
        let a = Gf::from_u64(MODULUS - 1);
        let b = Gf::from_u64(2);
        assert_eq!(a.add(&b), Gf(1));
        assert_eq!(a.mul(&a), Gf(1)); // (-1)^2
        let x = Gf::from_u64(123456789);
        assert_eq!(x.mul(&x.inv().unwrap()), Gf(1));
        assert!(Gf(0).inv().is_none());
    }

    #[test]
    fn rank_and_kernel_gf() {
        // [[1,2,3],[2,4,6],[1,0,1]] has rank 2
        let mut m = Matrix::<Gf>::zeros(3, 3);
        let vals = [[1u64, 2, 3], [2, 4, 6], [1, 0, 1]];
        for r in 0..3 {
            for c in 0..3 {
                m.set(r, c, Gf::from_u64(vals[r][c]));
            }
        }
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|v| v.is_zero()));
        let lker = m.left_kernel_basis();
        assert_eq!(lker.len(), 1);
        assert!(m.left_mul(&lker[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rational_and_gf_ranks_agree_on_random_integer_matrices() {
        use rand::Rng;
        let mut rng = <rand_chacha::ChaCha12Rng as rand::SeedableRng>::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..50)).collect();
            let mut mg = Matrix::<Gf>::zeros(rows, cols);
            let mut mq = Matrix::<Rat>::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    mg.set(r, c, Gf::from_u64(entries[r * cols + c]));
                    mq.set(r, c, Rat::from_u64(entries[r * cols + c]));
                }
            }
            assert_eq!(mg.rank(), mq.rank());
        }
    }

    #[test]
    fn solve_consistency() {
        let mut m = Matrix::<Gf>::zeros(2, 2);
        m.set(0, 0, Gf(1));
        m.set(0, 1, Gf(2));
        m.set(1, 0, Gf(3));
        m.set(1, 1, Gf(4));
        let b = vec![Gf(5), Gf(6)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        // inconsistent system
        let mut s = Matrix::<Gf>::zeros(2, 1);
        s.set(0, 0, Gf(1));
        s.set(1, 0, Gf(1));
        assert!(s.solve(&[Gf(1), Gf(2)]).is_none());
    }

    #[test]
    fn same_span_checks() {
        let a = vec![vec![Gf(1), Gf(0)], vec![Gf(0), Gf(1)]];
        let b = vec![vec![Gf(1), Gf(1)], vec![Gf(1), Gf(MODULUS - 1)]];
        assert!(same_span(&a, &b, 2));
        let c = vec![vec![Gf(1), Gf(1)]];
        assert!(!same_span(&a, &c, 2));
    }
}
