//! Dense matrices over the exact rational scalar: elimination, solving,
//! rank profiles and nullspaces. Everything is exact; singularity is a
//! returned fact, never a tolerance call.

use num::{One, Signed, Zero};
use num::bigint::BigInt;

use crate::exact::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    a: Vec<Scalar>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, a: Vec<Scalar>) -> Self {
        assert_eq!(a.len(), rows * cols);
        QMat { rows, cols, a }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        QMat { rows, cols, a }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.a[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = QMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = v * rhs.get(k, j);
                    *out.get_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = scalar::zero();
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc += self.get(i, j) * vj;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = scalar::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot else { return scalar::zero() };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pv = m.get(k, k).clone();
            det *= &pv;
            for i in k + 1..n {
                let f = m.get(i, k) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let sub = &f * m.get(k, j);
                    *m.get_mut(i, j) -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row echelon reduction in place; returns pivot columns.
    /// `rhs`, when given, receives the same row operations.
    fn echelon(&mut self, mut rhs: Option<&mut QMat>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap_rows(p, r);
            }
            let inv = self.get(r, c).clone().recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                *self.get_mut(r, j) = v;
            }
            if let Some(b) = rhs.as_deref_mut() {
                for j in 0..b.cols {
                    let v = b.get(r, j) * &inv;
                    *b.get_mut(r, j) = v;
                }
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let sub = &f * self.get(r, j);
                    *self.get_mut(i, j) -= sub;
                }
                if let Some(b) = rhs.as_deref_mut() {
                    for j in 0..b.cols {
                        let sub = &f * b.get(r, j);
                        *b.get_mut(i, j) -= sub;
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
        m.echelon(None).len()
    }

    /// Pivot columns of the reduced row echelon form: a maximal set of
    /// linearly independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.echelon(None)
    }

    /// Solve `self * x = b` for a matrix right-hand side. `None` when the
    /// system is inconsistent or the matrix is singular/rank-deficient on
    /// the needed columns.
    pub fn solve_matrix(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, b.rows);
        let mut m = self.clone();
        let mut rhs = b.clone();
        let pivots = m.echelon(Some(&mut rhs));
        // consistency: zero rows of m must have zero rhs
        for i in pivots.len()..m.rows {
            for j in 0..rhs.cols {
                if !rhs.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        if pivots.len() < self.cols {
            return None; // underdetermined; caller wants a unique solution
        }
        let mut x = QMat::zero(self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                *x.get_mut(c, j) = rhs.get(r, j).clone();
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let bm = QMat::from_fn(b.len(), 1, |i, _| b[i].clone());
        let x = self.solve_matrix(&bm)?;
        Some((0..self.cols).map(|i| x.get(i, 0).clone()).collect())
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        self.solve_matrix(&QMat::identity(self.rows))
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.echelon(None);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![scalar::zero(); self.cols];
            v[f] = scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.get(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Fraction-free solve of `self * x = b` (unique-solution case):
    /// denominators are cleared row by row and elimination runs over the
    /// integers (Bareiss), with the back-substitution exact.
    pub fn solve_fraction_free(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, self.cols, "fraction-free solve wants a square system");
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        // clear denominators per row of [A | b]
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for (i, bi) in b.iter().enumerate() {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = num::Integer::lcm(&lcm, self.get(i, j).denom());
            }
            lcm = num::Integer::lcm(&lcm, bi.denom());
            let mut row: Vec<BigInt> = (0..n)
                .map(|j| {
                    let s = self.get(i, j);
                    s.numer() * (&lcm / s.denom())
                })
                .collect();
            row.push(bi.numer() * (&lcm / bi.denom()));
            m.push(row);
        }
        // Bareiss forward elimination
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[i][k].is_zero())?;
                m.swap(k, swap);
            }
            for i in k + 1..n {
                for j in k + 1..=n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        if m[n - 1][n - 1].is_zero() {
            return None;
        }
        // exact rational back-substitution
        let mut x = vec![scalar::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Scalar::from_integer(m[i][n].clone());
            for j in i + 1..n {
                acc -= Scalar::from_integer(m[i][j].clone()) * &x[j];
            }
            x[i] = acc / Scalar::from_integer(m[i][i].clone());
        }
        Some(x)
    }

    pub fn abs_max(&self) -> Scalar {
        self.a
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(scalar::zero)
    }
}
