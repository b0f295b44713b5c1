//! Root data for the toroidal extension of a type-A simple algebra:
//! Cartan matrices, the space underlying weights and coweights, bilinear
//! forms, null roots, real coroots, reflections and the miniscule test.
//!
//! Weight coordinates live over the ordered basis
//! `(alpha_1, ..., alpha_{d+n}, w_1, ..., w_n)` and coweight coordinates
//! over `(alpha^v_1, ..., alpha^v_{d+n}, d_1, ..., d_n)`; both spaces have
//! dimension `d + 2n`. The numerical labels are kept symbolic even though
//! they are all 1 in type A, so other types can be added without touching
//! the call sites.

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::intmat::IntMatrix;
use crate::exact::qmat::QMat;
use crate::exact::scalar::{self, Scalar};

/// Element of the weight space, coordinates over
/// `(alpha_1..alpha_{d+n}, w_1..w_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVec {
    pub coords: Vec<Scalar>,
}

/// Element of the coweight space, coordinates over
/// `(alpha^v_1..alpha^v_{d+n}, d_1..d_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoweightVec {
    pub coords: Vec<Scalar>,
}

macro_rules! impl_vec_ops {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(dim: usize) -> Self {
                $ty { coords: vec![scalar::zero(); dim] }
            }

            pub fn dim(&self) -> usize {
                self.coords.len()
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(|c| c.is_zero())
            }

            pub fn add(&self, rhs: &$ty) -> $ty {
                debug_assert_eq!(self.dim(), rhs.dim());
                $ty {
                    coords: self
                        .coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, rhs: &$ty) -> $ty {
                debug_assert_eq!(self.dim(), rhs.dim());
                $ty {
                    coords: self
                        .coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }

            pub fn scale(&self, c: &Scalar) -> $ty {
                $ty { coords: self.coords.iter().map(|a| a * c).collect() }
            }

            pub fn neg(&self) -> $ty {
                $ty { coords: self.coords.iter().map(|a| -a).collect() }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> =
                    self.coords.iter().map(scalar::to_frac_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    };
}

impl_vec_ops!(WeightVec);
impl_vec_ops!(CoweightVec);

/// A root of the finite system, stored by simple-root coordinates together
/// with the matrix slot of its root vector in the traceless realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRoot {
    /// coordinates over the finite simple roots
    pub coeffs: Vec<i64>,
    /// `(i, j)` meaning the elementary matrix `E_{ij}` spans this root space
    pub matrix_slot: (usize, usize),
}

impl FiniteRoot {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().sum::<i64>() > 0
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// Real root `alpha + delta_m` with `alpha` a finite root; constructing one
/// through [`ToroidalRootSystem::real_root`] guarantees `(gamma, gamma) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    /// index into [`ToroidalRootSystem::finite_roots`]
    pub alpha: usize,
    /// null part multidegree
    pub m: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct ToroidalRootSystem {
    d: usize,
    n: usize,
    a_labels: Vec<Scalar>,
    b_labels: Vec<Scalar>,
    affine_cartan: IntMatrix,
    extended_cartan: IntMatrix,
    pair_matrix: QMat,
    pair_matrix_t_inv: QMat,
    gram_dual: QMat,
    gram: QMat,
    finite_roots: Vec<FiniteRoot>,
    finite_cartan_inv: QMat,
}

impl ToroidalRootSystem {
    /// Type `A_d` with `n` loop variables (`n = 1` is the affine
    /// specialization used by the highest weight machinery).
    pub fn new_type_a(d: usize, n: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("rank d must be at least 1".into()));
        }
        if n < 1 {
            return Err(Error::Domain("need at least one loop variable".into()));
        }
        let affine_cartan = affine_cartan_a(d);
        let extended_cartan = extended_cartan_a(&affine_cartan, d, n);

        // numerical labels: all 1 for non-twisted type A, extended by 1s
        let a_labels = vec![scalar::one(); d + n + 1];
        let b_labels = vec![scalar::one(); d + n + 1];

        let dim = d + 2 * n;
        let ext = |i: usize, j: usize| {
            Scalar::from_integer(extended_cartan[(i - 1, j - 1)].clone())
        };
        // lambda(h) on basis pairs
        let pair_matrix = QMat::from_fn(dim, dim, |r, c| {
            if r < d + n && c < d + n {
                // alpha_{r+1}(alpha^v_{c+1}) = ext[c+1][r+1]
                ext(c + 1, r + 1)
            } else if r < d + n {
                // alpha_{r+1}(d_{c-d-n+1})
                let i = r + 1;
                let j = c - (d + n) + 1;
                if i > d && i - d == j { scalar::one() } else { scalar::zero() }
            } else if c < d + n {
                // w_{r-d-n+1}(alpha^v_{c+1})
                let i = r - (d + n) + 1;
                let j = c + 1;
                if j > d && j - d == i { scalar::one() } else { scalar::zero() }
            } else {
                scalar::zero()
            }
        });
        let pair_matrix_t_inv = pair_matrix
            .transpose()
            .inverse()
            .expect("pairing between weights and coweights is nondegenerate");

        // (alpha_i, alpha_j) = b_i^{-1} a_i^{-1} ext[i][j]
        let inv_ab = |i: usize| {
            let (a, b) = if i <= d {
                (a_labels[i].clone(), b_labels[i].clone())
            } else {
                (scalar::one(), scalar::one())
            };
            (a * b).recip()
        };
        let gram_dual = QMat::from_fn(dim, dim, |r, c| {
            if r < d + n && c < d + n {
                inv_ab(r + 1) * ext(r + 1, c + 1)
            } else if r < d + n && c >= d + n {
                let i = r + 1;
                let j = c - (d + n) + 1;
                if i > d && i - d == j { scalar::one() } else { scalar::zero() }
            } else if c < d + n && r >= d + n {
                let j = c + 1;
                let i = r - (d + n) + 1;
                if j > d && j - d == i { scalar::one() } else { scalar::zero() }
            } else {
                scalar::zero()
            }
        });

        // (alpha^v_i, alpha^v_j) = a_j b_j ext[i][j]; (alpha^v_{d+i}, d_j) = delta_ij
        let ab = |i: usize| {
            if i <= d {
                &a_labels[i] * &b_labels[i]
            } else {
                scalar::one()
            }
        };
        let gram = QMat::from_fn(dim, dim, |r, c| {
            if r < d + n && c < d + n {
                ab(c + 1) * ext(r + 1, c + 1)
            } else if r < d + n && c >= d + n {
                let i = r + 1;
                let j = c - (d + n) + 1;
                if i > d && i - d == j { scalar::one() } else { scalar::zero() }
            } else if c < d + n && r >= d + n {
                let j = c + 1;
                let i = r - (d + n) + 1;
                if j > d && j - d == i { scalar::one() } else { scalar::zero() }
            } else {
                scalar::zero()
            }
        });

        let finite_roots = finite_roots_a(d);

        let finite_cartan = QMat::from_fn(d, d, |i, j| ext(i + 1, j + 1));
        let finite_cartan_inv = finite_cartan
            .inverse()
            .expect("finite Cartan matrix is invertible");

        Ok(ToroidalRootSystem {
            d,
            n,
            a_labels,
            b_labels,
            affine_cartan,
            extended_cartan,
            pair_matrix,
            pair_matrix_t_inv,
            gram_dual,
            gram,
            finite_roots,
            finite_cartan_inv,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d + 2 * self.n
    }

    pub fn affine_cartan(&self) -> &IntMatrix {
        &self.affine_cartan
    }

    pub fn extended_cartan(&self) -> &IntMatrix {
        &self.extended_cartan
    }

    pub fn label_a(&self, i: usize) -> &Scalar {
        &self.a_labels[i]
    }

    pub fn label_b(&self, i: usize) -> &Scalar {
        &self.b_labels[i]
    }

    /// `B = D^-1 A` for the extended matrix, with `D` the diagonal of
    /// label products; symmetric for every supported system.
    pub fn symmetrized_cartan(&self) -> QMat {
        let size = self.d + self.n;
        QMat::from_fn(size, size, |i, j| {
            let di = if i < self.d {
                &self.a_labels[i + 1] * &self.b_labels[i + 1]
            } else {
                scalar::one()
            };
            Scalar::from_integer(self.extended_cartan[(i, j)].clone()) / di
        })
    }

    pub fn gram_dual(&self) -> &QMat {
        &self.gram_dual
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    // ---- basis vectors ----

    /// `alpha_i` for `1 <= i <= d+n`.
    pub fn simple_root(&self, i: usize) -> WeightVec {
        assert!((1..=self.d + self.n).contains(&i));
        let mut v = WeightVec::zero(self.dim());
        v.coords[i - 1] = scalar::one();
        v
    }

    /// `w_i` for `1 <= i <= n`.
    pub fn w_vec(&self, i: usize) -> WeightVec {
        assert!((1..=self.n).contains(&i));
        let mut v = WeightVec::zero(self.dim());
        v.coords[self.d + self.n + i - 1] = scalar::one();
        v
    }

    /// `alpha^v_i` for `1 <= i <= d+n`.
    pub fn simple_coroot(&self, i: usize) -> CoweightVec {
        assert!((1..=self.d + self.n).contains(&i));
        let mut v = CoweightVec::zero(self.dim());
        v.coords[i - 1] = scalar::one();
        v
    }

    /// `d_i` for `1 <= i <= n`.
    pub fn d_vec(&self, i: usize) -> CoweightVec {
        assert!((1..=self.n).contains(&i));
        let mut v = CoweightVec::zero(self.dim());
        v.coords[self.d + self.n + i - 1] = scalar::one();
        v
    }

    /// Highest root of the finite system.
    pub fn beta(&self) -> WeightVec {
        let mut v = WeightVec::zero(self.dim());
        for i in 1..=self.d {
            v.coords[i - 1] = self.a_labels[i].clone();
        }
        v
    }

    pub fn beta_coroot(&self) -> CoweightVec {
        let mut v = CoweightVec::zero(self.dim());
        for i in 1..=self.d {
            v.coords[i - 1] = self.b_labels[i].clone().recip();
        }
        v
    }

    /// `delta_j = beta + alpha_{d+j}`.
    pub fn delta(&self, j: usize) -> WeightVec {
        assert!((1..=self.n).contains(&j));
        let mut v = self.beta();
        v.coords[self.d + j - 1] = scalar::one();
        v
    }

    /// `C_j = beta^v + alpha^v_{d+j}`.
    pub fn c_vec(&self, j: usize) -> CoweightVec {
        assert!((1..=self.n).contains(&j));
        let mut v = self.beta_coroot();
        v.coords[self.d + j - 1] = scalar::one();
        v
    }

    /// Null root `delta_m = sum m_j delta_j`.
    pub fn delta_m(&self, m: &[i64]) -> WeightVec {
        assert_eq!(m.len(), self.n);
        let mut v = WeightVec::zero(self.dim());
        for (j, &mj) in m.iter().enumerate() {
            v = v.add(&self.delta(j + 1).scale(&scalar::from_i64(mj)));
        }
        v
    }

    // ---- pairings and forms ----

    /// `lambda(h)`, bilinear over the basis table.
    pub fn pair(&self, lambda: &WeightVec, h: &CoweightVec) -> Scalar {
        debug_assert_eq!(lambda.dim(), self.dim());
        debug_assert_eq!(h.dim(), self.dim());
        let mut acc = scalar::zero();
        for (r, lc) in lambda.coords.iter().enumerate() {
            if lc.is_zero() {
                continue;
            }
            for (c, hc) in h.coords.iter().enumerate() {
                if hc.is_zero() {
                    continue;
                }
                acc += lc * self.pair_matrix.get(r, c) * hc;
            }
        }
        acc
    }

    /// Symmetric bilinear form on the weight space.
    pub fn form_dual(&self, a: &WeightVec, b: &WeightVec) -> Scalar {
        let mut acc = scalar::zero();
        for (r, ac) in a.coords.iter().enumerate() {
            if ac.is_zero() {
                continue;
            }
            for (c, bc) in b.coords.iter().enumerate() {
                if bc.is_zero() {
                    continue;
                }
                acc += ac * self.gram_dual.get(r, c) * bc;
            }
        }
        acc
    }

    /// Symmetric bilinear form on the coweight space.
    pub fn form(&self, a: &CoweightVec, b: &CoweightVec) -> Scalar {
        let mut acc = scalar::zero();
        for (r, ac) in a.coords.iter().enumerate() {
            if ac.is_zero() {
                continue;
            }
            for (c, bc) in b.coords.iter().enumerate() {
                if bc.is_zero() {
                    continue;
                }
                acc += ac * self.gram.get(r, c) * bc;
            }
        }
        acc
    }

    /// Solve for the weight with the given values on the coweight basis
    /// `(alpha^v_1..alpha^v_{d+n}, d_1..d_n)`.
    pub fn weight_from_covalues(&self, values: &[Scalar]) -> WeightVec {
        assert_eq!(values.len(), self.dim());
        WeightVec { coords: self.pair_matrix_t_inv.mul_vec(values) }
    }

    /// Values of `lambda` on the coweight basis, in basis order.
    pub fn covalues(&self, lambda: &WeightVec) -> Vec<Scalar> {
        self.pair_matrix.transpose().mul_vec(&lambda.coords)
    }

    // ---- finite roots ----

    pub fn finite_roots(&self) -> &[FiniteRoot] {
        &self.finite_roots
    }

    pub fn finite_root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.finite_roots.iter().position(|r| r.coeffs == coeffs)
    }

    /// Index of `-alpha` for the root at `idx`.
    pub fn negated_root_index(&self, idx: usize) -> usize {
        let neg: Vec<i64> = self.finite_roots[idx].coeffs.iter().map(|c| -c).collect();
        self.finite_root_index(&neg).expect("root system is symmetric")
    }

    pub fn finite_root_weight(&self, idx: usize) -> WeightVec {
        let mut v = WeightVec::zero(self.dim());
        for (i, &c) in self.finite_roots[idx].coeffs.iter().enumerate() {
            v.coords[i] = scalar::from_i64(c);
        }
        v
    }

    /// Fundamental weight of the finite system, `1 <= i <= d`.
    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        assert!((1..=self.d).contains(&i));
        let mut v = WeightVec::zero(self.dim());
        for r in 0..self.d {
            // omega_i = sum_r (C^-1)_{r i} alpha_{r+1}; the inverse Cartan
            // column gives simple-root coordinates
            v.coords[r] = self.finite_cartan_inv.get(r, i - 1).clone();
        }
        v
    }

    /// Finite Weyl vector: pairs to 1 against every finite simple coroot.
    pub fn rho_finite(&self) -> WeightVec {
        let mut v = WeightVec::zero(self.dim());
        for i in 1..=self.d {
            v = v.add(&self.fundamental_weight(i));
        }
        v
    }

    // ---- real roots, coroots, reflections ----

    /// Build `alpha + delta_m`; errors when the finite part is absent or
    /// not a root (those directions are null, not real).
    pub fn real_root(&self, finite_coeffs: &[i64], m: &[i64]) -> Result<RealRoot> {
        if m.len() != self.n {
            return Err(Error::Dimension("null part has wrong length".into()));
        }
        if finite_coeffs.iter().all(|&c| c == 0) {
            return Err(Error::NotARealRoot("finite part is zero".into()));
        }
        let idx = self
            .finite_root_index(finite_coeffs)
            .ok_or_else(|| Error::NotARealRoot(format!("{finite_coeffs:?} is not a finite root")))?;
        Ok(RealRoot { alpha: idx, m: m.to_vec() })
    }

    pub fn real_root_weight(&self, gamma: &RealRoot) -> WeightVec {
        self.finite_root_weight(gamma.alpha).add(&self.delta_m(&gamma.m))
    }

    /// Coroot of a finite root: `sum m_i (|alpha_i|^2 / |alpha|^2) alpha^v_i`.
    pub fn finite_coroot(&self, idx: usize) -> CoweightVec {
        let alpha = self.finite_root_weight(idx);
        let norm = self.form_dual(&alpha, &alpha);
        let mut v = CoweightVec::zero(self.dim());
        for (i, c) in self.finite_roots[idx].coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let ai = self.simple_root(i + 1);
            let ni = self.form_dual(&ai, &ai);
            v.coords[i] = scalar::from_i64(*c) * ni / &norm;
        }
        v
    }

    /// `gamma^v = alpha^v + (2/|alpha|^2) sum m_j C_j`.
    pub fn coroot(&self, gamma: &RealRoot) -> CoweightVec {
        let alpha = self.finite_root_weight(gamma.alpha);
        let norm = self.form_dual(&alpha, &alpha);
        let mut v = self.finite_coroot(gamma.alpha);
        let factor = scalar::from_i64(2) / norm;
        for (j, &mj) in gamma.m.iter().enumerate() {
            if mj != 0 {
                v = v.add(&self.c_vec(j + 1).scale(&(scalar::from_i64(mj) * &factor)));
            }
        }
        v
    }

    /// `r_gamma(lambda) = lambda - lambda(gamma^v) gamma`.
    pub fn reflect(&self, gamma: &RealRoot, lambda: &WeightVec) -> WeightVec {
        let gv = self.coroot(gamma);
        let c = self.pair(lambda, &gv);
        lambda.sub(&self.real_root_weight(gamma).scale(&c))
    }

    /// Reflection in the simple root `alpha_i`, `1 <= i <= d+n`; for
    /// `i > d` this is the reflection in `delta_i - beta` which is not a
    /// finite root, so it is built directly from the basis tables.
    pub fn reflect_simple(&self, i: usize, lambda: &WeightVec) -> WeightVec {
        let c = self.pair(lambda, &self.simple_coroot(i));
        lambda.sub(&self.simple_root(i).scale(&c))
    }

    // ---- dominance and the miniscule test ----

    /// Values on the finite simple coroots.
    pub fn finite_covalues(&self, lambda: &WeightVec) -> Vec<Scalar> {
        (1..=self.d)
            .map(|i| self.pair(lambda, &self.simple_coroot(i)))
            .collect()
    }

    pub fn is_finite_dominant_integral(&self, lambda: &WeightVec) -> bool {
        self.finite_covalues(lambda)
            .iter()
            .all(scalar::is_nonneg_integer)
    }

    /// True when no strictly smaller dominant weight shares the root
    /// lattice coset; decided by brute-force enumeration below `lambda`.
    pub fn is_miniscule(&self, lambda: &WeightVec) -> Result<bool> {
        let vals = self.finite_covalues(lambda);
        if !vals.iter().all(scalar::is_nonneg_integer) {
            return Err(Error::Domain(
                "miniscule test needs a dominant integral weight".into(),
            ));
        }
        // bound: n_i <= sum_j (C^-1)_{ij} lambda_j for dominant mu below
        let mut bounds = Vec::with_capacity(self.d);
        for i in 0..self.d {
            let mut acc = scalar::zero();
            for (j, v) in vals.iter().enumerate() {
                acc += self.finite_cartan_inv.get(i, j) * v;
            }
            bounds.push(floor_to_i64(&acc));
        }
        let mut n = vec![0i64; self.d];
        loop {
            // advance odometer
            let mut k = 0;
            loop {
                if k == self.d {
                    return Ok(true);
                }
                n[k] += 1;
                if n[k] <= bounds[k] {
                    break;
                }
                n[k] = 0;
                k += 1;
            }
            // mu = lambda - sum n_i alpha_i, dominance via covalues
            let dominant = (0..self.d).all(|i| {
                let mut v = vals[i].clone();
                for (j, &nj) in n.iter().enumerate() {
                    let cart =
                        Scalar::from_integer(self.extended_cartan[(i, j)].clone());
                    v -= cart * scalar::from_i64(nj);
                }
                !v.is_negative()
            });
            if dominant {
                return Ok(false);
            }
        }
    }

    /// The end-of-section pairing table of the functionals
    /// `(alpha_1..alpha_d, delta_1..delta_n, w_1..w_n)` against
    /// `(alpha^v_1..alpha^v_d, C_1..C_n, d_1..d_n)`.
    pub fn functional_pairing_matrix(&self) -> QMat {
        let dim = self.dim();
        let mut functionals = Vec::with_capacity(dim);
        for i in 1..=self.d {
            functionals.push(self.simple_root(i));
        }
        for j in 1..=self.n {
            functionals.push(self.delta(j));
        }
        for j in 1..=self.n {
            functionals.push(self.w_vec(j));
        }
        let mut covers = Vec::with_capacity(dim);
        for i in 1..=self.d {
            covers.push(self.simple_coroot(i));
        }
        for j in 1..=self.n {
            covers.push(self.c_vec(j));
        }
        for j in 1..=self.n {
            covers.push(self.d_vec(j));
        }
        QMat::from_fn(dim, dim, |r, c| self.pair(&functionals[r], &covers[c]))
    }
}

fn floor_to_i64(s: &Scalar) -> i64 {
    use num::ToPrimitive;
    s.floor().numer().to_i64().expect("bound overflows i64")
}

fn affine_cartan_a(d: usize) -> IntMatrix {
    let n = d + 1;
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = 2.into();
    }
    if d == 1 {
        m[(0, 1)] = (-2).into();
        m[(1, 0)] = (-2).into();
    } else {
        for i in 0..n {
            let next = (i + 1) % n;
            m[(i, next)] = (-1).into();
            m[(next, i)] = (-1).into();
        }
    }
    m
}

fn extended_cartan_a(affine: &IntMatrix, d: usize, n: usize) -> IntMatrix {
    let size = d + n;
    let mut m = IntMatrix::zero(size, size);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = affine[(i + 1, j + 1)].clone();
        }
    }
    for i in 0..n {
        for j in 0..d {
            m[(d + i, j)] = affine[(0, j + 1)].clone();
            m[(j, d + i)] = affine[(j + 1, 0)].clone();
        }
        for j in 0..n {
            m[(d + i, d + j)] = 2.into();
        }
    }
    m
}

fn finite_roots_a(d: usize) -> Vec<FiniteRoot> {
    let mut roots = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            // alpha_i + ... + alpha_j, root vector E_{i, j+1}
            let mut coeffs = vec![0i64; d];
            for k in i..=j {
                coeffs[k - 1] = 1;
            }
            roots.push(FiniteRoot { coeffs, matrix_slot: (i - 1, j) });
        }
    }
    let negatives: Vec<FiniteRoot> = roots
        .iter()
        .map(|r| FiniteRoot {
            coeffs: r.coeffs.iter().map(|c| -c).collect(),
            matrix_slot: (r.matrix_slot.1, r.matrix_slot.0),
        })
        .collect();
    roots.extend(negatives);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::from_i64;

    fn sys(d: usize, n: usize) -> ToroidalRootSystem {
        ToroidalRootSystem::new_type_a(d, n).unwrap()
    }

    #[test]
    fn extended_cartan_restricts_to_affine() {
        for (d, n) in [(1, 2), (2, 2), (3, 3)] {
            let s = sys(d, n);
            let ext = s.extended_cartan();
            let aff = s.affine_cartan();
            // keep only row/col d+k among the last n; index map: 1..d -> 1..d,
            // d+k -> 0
            for k in 0..n {
                for i in 0..=d {
                    for j in 0..=d {
                        let ei = if i == 0 { d + k } else { i - 1 };
                        let ej = if j == 0 { d + k } else { j - 1 };
                        assert_eq!(ext[(ei, ej)], aff[(i, j)], "(d,n,k)=({d},{n},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn extended_cartan_is_d_times_symmetric() {
        for (d, n) in [(1, 1), (1, 2), (2, 2), (3, 3)] {
            let s = sys(d, n);
            // the label-normalized matrix is symmetric entrywise
            let b = s.symmetrized_cartan();
            for i in 0..d + n {
                for j in 0..d + n {
                    assert_eq!(b.get(i, j), b.get(j, i), "(d,n)=({d},{n}) at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn pairing_table_small_cases() {
        let s = sys(2, 2);
        for j in 1..=2 {
            for i in 1..=2 {
                // delta_j(C_i) = 0, w_i(C_j) = delta_ij, delta_j(d_i) = delta_ij
                assert_eq!(s.pair(&s.delta(j), &s.c_vec(i)), from_i64(0));
                let expect = if i == j { 1 } else { 0 };
                assert_eq!(s.pair(&s.w_vec(i), &s.c_vec(j)), from_i64(expect));
                assert_eq!(s.pair(&s.delta(j), &s.d_vec(i)), from_i64(expect));
            }
        }
    }

    #[test]
    fn form_normalization() {
        for (d, n) in [(1, 1), (1, 2), (2, 2), (3, 2)] {
            let s = sys(d, n);
            let beta = s.beta();
            assert_eq!(s.form_dual(&beta, &beta), from_i64(2), "(beta,beta)=2 at d={d}");
            for m in [vec![1i64; n], vec![0; n], {
                let mut v = vec![0i64; n];
                v[0] = -3;
                v
            }] {
                let dm = s.delta_m(&m);
                assert_eq!(s.form_dual(&dm, &dm), from_i64(0), "null roots are isotropic");
            }
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(s.form_dual(&s.w_vec(i), &s.w_vec(j)), from_i64(0));
                }
            }
        }
    }

    #[test]
    fn lemma_form_vs_pairing_on_simple_roots() {
        // (lambda, alpha_i) = b_i^-1 a_i^-1 lambda(alpha_i^v) over the whole
        // weight basis, for i = 1..d+n
        for (d, n) in [(1, 2), (2, 2), (3, 3)] {
            let s = sys(d, n);
            let dim = s.dim();
            let basis: Vec<WeightVec> = (0..dim)
                .map(|k| {
                    let mut v = WeightVec::zero(dim);
                    v.coords[k] = scalar::one();
                    v
                })
                .collect();
            for i in 1..=d + n {
                let ai = s.simple_root(i);
                let av = s.simple_coroot(i);
                for lam in &basis {
                    let lhs = s.form_dual(lam, &ai);
                    let rhs = s.pair(lam, &av); // a_i b_i = 1 in type A
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn coroot_special_cases() {
        let s = sys(2, 2);
        let beta_coeffs = vec![1i64, 1];
        // m = 0 gives the plain finite coroot
        let g0 = s.real_root(&beta_coeffs, &[0, 0]).unwrap();
        assert_eq!(s.coroot(&g0), s.beta_coroot());
        // m = e_1 gives beta^v + C_1
        let g1 = s.real_root(&beta_coeffs, &[1, 0]).unwrap();
        assert_eq!(s.coroot(&g1), s.beta_coroot().add(&s.c_vec(1)));
    }

    #[test]
    fn pair_gamma_with_own_coroot_is_two() {
        let s = sys(2, 2);
        for (ri, _) in s.finite_roots().iter().enumerate() {
            for m in [[0, 0], [1, -2], [-1, 3], [2, 2]] {
                let g = RealRoot { alpha: ri, m: m.to_vec() };
                let w = s.real_root_weight(&g);
                assert_eq!(s.pair(&w, &s.coroot(&g)), from_i64(2));
            }
        }
    }

    #[test]
    fn null_direction_is_rejected_as_real_root() {
        let s = sys(1, 2);
        let err = s.real_root(&[0], &[1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotARealRoot(_)));
    }

    #[test]
    fn reflection_involution_and_fixed_hyperplane() {
        let s = sys(2, 2);
        let g = s.real_root(&[1, 0], &[1, 1]).unwrap();
        let gw = s.real_root_weight(&g);
        // reflect(gamma) = -gamma
        assert_eq!(s.reflect(&g, &gw), gw.neg());
        // lambda with lambda(gamma^v) = 0 is fixed
        let gv = s.coroot(&g);
        let mut lam = s.w_vec(1);
        let c = s.pair(&lam, &gv);
        // project onto the fixed hyperplane exactly
        lam = lam.sub(&gw.scale(&(c / from_i64(2))));
        assert_eq!(s.pair(&lam, &gv), from_i64(0));
        assert_eq!(s.reflect(&g, &lam), lam);
    }

    #[test]
    fn miniscule_fundamental_weight_and_double() {
        let s2 = sys(1, 1);
        // zero weight
        assert!(s2.is_miniscule(&WeightVec::zero(s2.dim())).unwrap());
        // sl2: omega_1 miniscule, 2*omega_1 not (0 below it, same coset)
        let w1 = s2.fundamental_weight(1);
        assert!(s2.is_miniscule(&w1).unwrap());
        assert!(!s2.is_miniscule(&w1.scale(&from_i64(2))).unwrap());

        let s3 = sys(2, 1);
        let w1 = s3.fundamental_weight(1);
        assert!(s3.is_miniscule(&w1).unwrap());
        assert_eq!(s3.pair(&w1, &s3.beta_coroot()), from_i64(1));
        // adjoint weight beta is not miniscule
        assert!(!s3.is_miniscule(&s3.beta()).unwrap());
        // non-dominant input errors out
        let err = s3.is_miniscule(&s3.simple_root(1).neg()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn functional_pairing_matrix_block_shape() {
        for (d, n) in [(1, 2), (2, 2), (3, 3)] {
            let s = sys(d, n);
            let m = s.functional_pairing_matrix();
            let dim = s.dim();
            // expected block structure [[A_fin, 0, 0], [0, 0, I], [0, I, 0]]
            for r in 0..dim {
                for c in 0..dim {
                    let expect = if r < d && c < d {
                        Scalar::from_integer(s.extended_cartan()[(c, r)].clone())
                    } else if r >= d && r < d + n && c >= d + n {
                        from_i64(if r - d == c - d - n { 1 } else { 0 })
                    } else if r >= d + n && c >= d && c < d + n {
                        from_i64(if r - d - n == c - d { 1 } else { 0 })
                    } else {
                        from_i64(0)
                    };
                    assert_eq!(*m.get(r, c), expect, "(d,n)=({d},{n}) entry ({r},{c})");
                }
            }
            assert!(!m.det().is_zero(), "pairing matrix invertible");
        }
    }

    #[test]
    fn coweight_form_table() {
        // (alpha_i^v, C_j) = 0, (C_i, C_j) = 0, (C_j, d_i) = delta_ij
        for (d, n) in [(1, 2), (2, 2), (3, 3)] {
            let s = sys(d, n);
            for j in 1..=n {
                for i in 1..=d {
                    assert_eq!(s.form(&s.simple_coroot(i), &s.c_vec(j)), from_i64(0));
                }
                for i in 1..=n {
                    assert_eq!(s.form(&s.c_vec(i), &s.c_vec(j)), from_i64(0));
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(s.form(&s.c_vec(j), &s.d_vec(i)), from_i64(expect));
                    assert_eq!(s.form(&s.d_vec(i), &s.d_vec(j)), from_i64(0));
                }
            }
            // symmetry of the whole table
            let dim = s.dim();
            for r in 0..dim {
                for c in 0..dim {
                    assert_eq!(s.gram().get(r, c), s.gram().get(c, r));
                }
            }
        }
    }

    #[test]
    fn covalue_round_trip() {
        let s = sys(2, 2);
        let lam = s
            .fundamental_weight(1)
            .add(&s.w_vec(2).scale(&from_i64(3)))
            .add(&s.delta(1).scale(&from_i64(-2)));
        let vals = s.covalues(&lam);
        assert_eq!(s.weight_from_covalues(&vals), lam);
    }
}
