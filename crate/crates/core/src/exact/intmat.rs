//! Exact integer matrices and lattice normal forms.
//!
//! Conventions: row-style Hermite normal form with positive pivots and the
//! entries above each pivot reduced into `[0, pivot)`. All transforms are
//! returned explicitly so callers can verify `U * M = H` themselves.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        Ok(m)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<i64> {
        use num::ToPrimitive;
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.mul_vec(&big)
            .into_iter()
            .map(|x| x.to_i64().expect("entry overflows i64"))
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &num / &prev;
                }
            }
            for i in k + 1..n {
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix, exact over the integers.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let n = self.rows;
        // solve A X = I with rational elimination; entries come out integral
        let qa: Vec<Scalar> = self.entries.iter().map(|e| Scalar::from_integer(e.clone())).collect();
        let qm = crate::exact::qmat::QMat::from_vec(n, n, qa);
        let inv = qm.inverse().expect("unimodular matrix is invertible");
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = inv.get(i, j);
                debug_assert!(v.denom().is_one());
                out[(i, j)] = v.numer().clone();
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u * m = h`, `u`
/// unimodular, pivots positive, entries above each pivot in `[0, pivot)`.
pub fn row_hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // clear the column below pivot_row with gcd row operations
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[(i, col)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h[(i, col)].abs() < h[(b, col)].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                swap_rows(&mut h, pivot_row, b);
                swap_rows(&mut u, pivot_row, b);
            }
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_round(&h[(i, col)], &h[(pivot_row, col)]);
                if !q.is_zero() {
                    row_axpy(&mut h, i, pivot_row, &-&q);
                    row_axpy(&mut u, i, pivot_row, &-&q);
                }
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                row_axpy(&mut h, i, pivot_row, &-&q);
                row_axpy(&mut u, i, pivot_row, &-&q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..m.cols {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols {
        let v = -m[(r, j)].clone();
        m[(r, j)] = v;
    }
}

/// row a += q * row b
fn row_axpy(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for j in 0..m.cols {
        let add = q * &m[(b, j)];
        m[(a, j)] += add;
    }
}

/// Quotient rounding toward the nearest integer; keeps remainders small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Hermite normal form basis of the sublattice generated by the given
/// vectors. Returns the nonzero HNF rows plus the full unimodular
/// transform on the stacked generator matrix.
pub fn hermite_normal_form(generators: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, IntMatrix)> {
    if generators.is_empty() {
        return Ok((Vec::new(), IntMatrix::identity(0)));
    }
    let n = generators[0].len();
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::Dimension("generators of unequal length".into()));
    }
    let m = IntMatrix::from_rows_i64(generators)?;
    let (h, u) = row_hnf(&m);
    use num::ToPrimitive;
    let mut basis = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().any(|v| !v.is_zero()) {
            basis.push(
                h.row(i)
                    .iter()
                    .map(|v| v.to_i64().expect("HNF entry overflows i64"))
                    .collect(),
            );
        }
    }
    Ok((basis, u))
}

/// Smith normal form: returns `(d, u, v)` with `u * m * v = d`, both
/// transforms unimodular and `d` diagonal with each entry dividing the
/// next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let rank_bound = m.rows.min(m.cols);
    let mut t = 0;
    while t < rank_bound {
        // find a nonzero entry in the remaining block
        let mut found = None;
        'outer: for i in t..m.rows {
            for j in t..m.cols {
                if !d[(i, j)].is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m.rows {
                if !d[(i, t)].is_zero() {
                    let q = div_round(&d[(i, t)], &d[(t, t)]);
                    row_axpy(&mut d, i, t, &-&q);
                    row_axpy(&mut u, i, t, &-&q);
                    if !d[(i, t)].is_zero() {
                        swap_rows(&mut d, t, i);
                        swap_rows(&mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..m.cols {
                if !d[(t, j)].is_zero() {
                    let q = div_round(&d[(t, j)], &d[(t, t)]);
                    col_axpy(&mut d, j, t, &-&q);
                    col_axpy(&mut v, j, t, &-&q);
                    if !d[(t, j)].is_zero() {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    // enforce the divisibility chain with tracked local 2x2 fixes
    let mut again = true;
    while again {
        again = false;
        for i in 0..t.saturating_sub(1) {
            let (a, b) = (d[(i, i)].clone(), d[(i + 1, i + 1)].clone());
            if a.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            again = true;
            // splice: block [[a,0],[0,b]] -> [[a,0],[b,b]]
            col_axpy(&mut d, i, i + 1, &BigInt::one());
            col_axpy(&mut v, i, i + 1, &BigInt::one());
            // Euclid on rows i, i+1 in column i
            while !d[(i + 1, i)].is_zero() {
                let q = div_round(&d[(i + 1, i)], &d[(i, i)]);
                row_axpy(&mut d, i + 1, i, &-&q);
                row_axpy(&mut u, i + 1, i, &-&q);
                if !d[(i + 1, i)].is_zero() {
                    swap_rows(&mut d, i, i + 1);
                    swap_rows(&mut u, i, i + 1);
                }
            }
            // clear the stray entry at (i, i+1); it is a multiple of the
            // new pivot because the pivot is the gcd of the old pair
            let q = &d[(i, i + 1)] / &d[(i, i)];
            debug_assert_eq!(&d[(i, i + 1)] % &d[(i, i)], BigInt::zero());
            col_axpy(&mut d, i + 1, i, &-&q);
            col_axpy(&mut v, i + 1, i, &-&q);
            for k in [i, i + 1] {
                if d[(k, k)].is_negative() {
                    negate_row(&mut d, k);
                    negate_row(&mut u, k);
                }
            }
        }
    }
    (d, u, v)
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..m.rows {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// col a += q * col b
fn col_axpy(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for i in 0..m.rows {
        let add = q * &m[(i, b)];
        m[(i, a)] += add;
    }
}

/// (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Given `k` independent vectors in `Z^n` that extend to a lattice basis,
/// return `b` in GL(n,Z) with `b * s_i^T = e_i^T` for each input vector.
pub fn complete_to_unimodular(basis: &[Vec<i64>]) -> Result<IntMatrix> {
    if basis.is_empty() {
        return Err(Error::Rank("no vectors given".into()));
    }
    let n = basis[0].len();
    let k = basis.len();
    if basis.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }
    if k > n {
        return Err(Error::Rank(format!("{k} vectors cannot be independent in Z^{n}")));
    }
    // columns of s_t are the input vectors; row-reduce s^T over Z
    let mut st = IntMatrix::zero(n, k);
    for (j, v) in basis.iter().enumerate() {
        for i in 0..n {
            st[(i, j)] = BigInt::from(v[i]);
        }
    }
    let (h, u) = row_hnf(&st);
    let rank = (0..h.rows)
        .filter(|&i| h.row(i).iter().any(|v| !v.is_zero()))
        .count();
    if rank < k {
        return Err(Error::Rank("vectors are dependent over Q".into()));
    }
    // need h = [I_k; 0]: unit pivots, nothing above them
    for j in 0..k {
        for i in 0..n {
            let expect = if i == j { BigInt::one() } else { BigInt::zero() };
            if h[(i, j)] != expect {
                return Err(Error::NotCompletable(
                    "input does not extend to a basis of Z^n".into(),
                ));
            }
        }
    }
    debug_assert!(u.is_unimodular());
    Ok(u)
}

/// Adapted basis of the sublattice spanned by `generators`: vectors
/// `s_1..s_k` extending to a basis of `Z^n` and positive integers
/// `m_1 | m_2 | ...` such that `m_i s_i` is a lattice basis.
pub fn adapted_basis(generators: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    use num::ToPrimitive;
    if generators.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let a = IntMatrix::from_rows_i64(generators)?;
    let (d, _u, v) = smith_normal_form(&a);
    let vinv = v.inverse_unimodular().expect("SNF transform is unimodular");
    let mut vs = Vec::new();
    let mut ms = Vec::new();
    for i in 0..a.rows.min(a.cols) {
        if d[(i, i)].is_zero() {
            break;
        }
        ms.push(d[(i, i)].to_i64().expect("elementary divisor overflows i64"));
        vs.push(
            vinv.row(i)
                .iter()
                .map(|x| x.to_i64().expect("basis entry overflows i64"))
                .collect(),
        );
    }
    Ok((vs, ms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice_index_brute_force(gens: &[Vec<i64>], modulus: i64) -> i64 {
        // subgroup of (Z/modulus)^2 generated by the rows; index of the
        // lattice equals modulus^2 / |subgroup| when modulus * Z^2 is
        // inside the lattice.
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![vec![0i64; 2]];
        seen.insert(vec![0i64, 0]);
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<i64> = (0..2)
                    .map(|i| (p[i] + g[i]).rem_euclid(modulus))
                    .collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        modulus * modulus / seen.len() as i64
    }

    #[test]
    fn hnf_of_diagonal_generators_is_unchanged() {
        let (basis, u) = hermite_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(basis, vec![vec![2, 0], vec![0, 3]]);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_empty_input_gives_empty_basis() {
        let (basis, _) = hermite_normal_form(&[]).unwrap();
        assert!(basis.is_empty());
        let (basis, _) = hermite_normal_form(&[vec![0, 0, 0]]).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn hnf_index_matches_brute_force_coset_count() {
        let gens = vec![vec![2, 4], vec![4, 2]];
        let (basis, u) = hermite_normal_form(&gens).unwrap();
        assert_eq!(basis.len(), 2);
        let det: i64 = basis[0][0] * basis[1][1]; // triangular
        // oracle: enumerate the subgroup of (Z/12)^2 generated by the rows
        assert_eq!(det.abs(), lattice_index_brute_force(&gens, 12));
        assert_eq!(det.abs(), 12);
        assert!(u.is_unimodular());
        // transform really maps generators onto the HNF rows
        let m = IntMatrix::from_rows_i64(&gens).unwrap();
        let h = u.mul(&m);
        for (i, b) in basis.iter().enumerate() {
            use num::ToPrimitive;
            let row: Vec<i64> = h.row(i).iter().map(|x| x.to_i64().unwrap()).collect();
            assert_eq!(&row, b);
        }
    }

    #[test]
    fn hnf_rows_span_same_lattice_as_input() {
        // mutual membership via exact integer solves on random-ish input
        let gens = vec![vec![3, 1, -2], vec![0, 4, 5], vec![3, 5, 3], vec![-6, 2, 9]];
        let (basis, _) = hermite_normal_form(&gens).unwrap();
        let bm = IntMatrix::from_rows_i64(&basis).unwrap();
        for g in &gens {
            assert!(in_lattice(&bm, g), "generator {:?} not in HNF span", g);
        }
        // HNF rows are integer combinations of generators by construction
        // of the unimodular transform; check membership the other way too.
        let gm = IntMatrix::from_rows_i64(&gens).unwrap();
        for b in &basis {
            assert!(in_lattice_full(&gm, b));
        }
    }

    fn in_lattice(hnf_rows: &IntMatrix, v: &[i64]) -> bool {
        // back-substitution against HNF rows
        let mut rem: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for i in 0..hnf_rows.rows {
            let pivot_col = (0..hnf_rows.cols).find(|&j| !hnf_rows[(i, j)].is_zero());
            let Some(pc) = pivot_col else { continue };
            let (q, r) = rem[pc].div_rem(&hnf_rows[(i, pc)]);
            if !r.is_zero() {
                return false;
            }
            for j in 0..hnf_rows.cols {
                let sub = &q * &hnf_rows[(i, j)];
                rem[j] -= sub;
            }
        }
        rem.iter().all(|x| x.is_zero())
    }

    fn in_lattice_full(gens: &IntMatrix, v: &[i64]) -> bool {
        let (h, _) = row_hnf(gens);
        // drop zero rows
        let mut rows = Vec::new();
        for i in 0..h.rows {
            if h.row(i).iter().any(|x| !x.is_zero()) {
                use num::ToPrimitive;
                rows.push(h.row(i).iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>());
            }
        }
        in_lattice(&IntMatrix::from_rows_i64(&rows).unwrap(), v)
    }

    #[test]
    fn complete_single_unit_vector_gives_identity() {
        let b = complete_to_unimodular(&[vec![1, 0, 0]]).unwrap();
        assert_eq!(b, IntMatrix::identity(3));
    }

    #[test]
    fn complete_standard_basis_gives_identity() {
        let b = complete_to_unimodular(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(b, IntMatrix::identity(2));
    }

    #[test]
    fn complete_primitive_vector() {
        let b = complete_to_unimodular(&[vec![2, 1]]).unwrap();
        assert!(b.is_unimodular());
        assert_eq!(b.mul_vec_i64(&[2, 1]), vec![1, 0]);
    }

    #[test]
    fn complete_rejects_dependent_input() {
        let err = complete_to_unimodular(&[vec![1, 2], vec![2, 4]]).unwrap_err();
        assert!(matches!(err, Error::Rank(_)));
    }

    #[test]
    fn complete_rejects_imprimitive_vector() {
        let err = complete_to_unimodular(&[vec![2, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotCompletable(_)));
    }

    #[test]
    fn smith_form_divisibility_and_transforms() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4], vec![4, 2]]).unwrap();
        let (d, u, v) = smith_normal_form(&m);
        assert!(u.is_unimodular());
        assert!(v.is_unimodular());
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(d[(0, 0)], BigInt::from(2));
        assert_eq!(d[(1, 1)], BigInt::from(6));
    }

    #[test]
    fn adapted_basis_of_skew_lattice() {
        let (vs, ms) = adapted_basis(&[vec![2, 4], vec![4, 2]]).unwrap();
        assert_eq!(ms, vec![2, 6]);
        // m_i * s_i must generate the same lattice: check index 12
        let scaled: Vec<Vec<i64>> = vs
            .iter()
            .zip(&ms)
            .map(|(s, &m)| s.iter().map(|&x| m * x).collect())
            .collect();
        let (basis, _) = hermite_normal_form(&scaled).unwrap();
        let det = basis[0][0] * basis[1][1];
        assert_eq!(det.abs(), 12);
    }

    #[test]
    fn bareiss_determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows_i64(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]).unwrap();
        // 3x3 cofactor oracle
        let det3 = |a: &IntMatrix| {
            let g = |i: usize, j: usize| a[(i, j)].clone();
            g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
        };
        assert_eq!(m.det(), det3(&m));
    }
}
