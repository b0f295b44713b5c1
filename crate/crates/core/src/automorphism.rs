//! The unimodular automorphism family of the algebra: an integer matrix
//! of determinant +-1 rescales degrees, mixes the center directions and
//! counter-rotates the derivations. Matrices act on column degree
//! vectors; composition is the matrix product.

use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::intmat::{adapted_basis, complete_to_unimodular, extended_gcd, IntMatrix};
use crate::exact::monomial::Monomial;
use crate::exact::scalar::{self, Scalar};
use crate::tau::TauElement;

#[derive(Debug, Clone)]
pub struct TauAutomorphism {
    matrix: IntMatrix,
    inverse: IntMatrix,
}

impl TauAutomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::Dimension("automorphism matrix must be square".into()));
        }
        let inverse = matrix.inverse_unimodular()?;
        Ok(TauAutomorphism { matrix, inverse })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows_i64(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        let id = IntMatrix::identity(n);
        TauAutomorphism { matrix: id.clone(), inverse: id }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn inverse(&self) -> TauAutomorphism {
        TauAutomorphism { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `self . rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &TauAutomorphism) -> TauAutomorphism {
        TauAutomorphism {
            matrix: self.matrix.mul(&rhs.matrix),
            inverse: rhs.inverse.mul(&self.inverse),
        }
    }

    pub fn degree_image(&self, m: &[i64]) -> Vec<i64> {
        self.matrix.mul_vec_i64(m)
    }

    fn entry(&self, from_inverse: bool, i: usize, j: usize) -> Scalar {
        let m = if from_inverse { &self.inverse } else { &self.matrix };
        Scalar::from_integer(m[(i, j)].clone())
    }

    /// Image of an algebra element: matrix terms get their degree mapped,
    /// center terms additionally mix directions, derivations transform by
    /// the inverse-transpose.
    pub fn apply(&self, x: &TauElement) -> Result<TauElement> {
        if x.n != self.n() {
            return Err(Error::SystemMismatch(format!(
                "automorphism on {} variables applied to element with {}",
                self.n(),
                x.n
            )));
        }
        let n = x.n;
        let mut out = TauElement::zero(x.size, n);
        for (m, mat) in x.g_terms() {
            out.add_g_term(Monomial(self.degree_image(&m.0)), mat);
        }
        for (m, coeffs) in x.z.terms() {
            let image = Monomial(self.degree_image(&m.0));
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let a = self.entry(false, j, i);
                    if !a.is_zero() {
                        out.z.add_term(image.clone(), j, c * a);
                    }
                }
            }
        }
        for (i, c) in x.d.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let a = self.entry(true, i, j);
                if !a.is_zero() {
                    out.d[j] += c * a;
                }
            }
        }
        Ok(out)
    }

    /// Transform weight covalues `(C values, d values)` the way weights
    /// of a twisted module move.
    pub fn transform_covalues(
        &self,
        c_vals: &[Scalar],
        d_vals: &[Scalar],
    ) -> (Vec<Scalar>, Vec<Scalar>) {
        let n = self.n();
        let mut c_out = vec![scalar::zero(); n];
        let mut d_out = vec![scalar::zero(); n];
        for i in 0..n {
            for j in 0..n {
                // lambda'(C_i) = sum_j a_{ji} lambda(C_j)
                c_out[i] += self.entry(false, j, i) * &c_vals[j];
                // lambda'(d_i) = sum_j (A^-1)_{ij} lambda(d_j)
                d_out[i] += self.entry(true, i, j) * &d_vals[j];
            }
        }
        (c_out, d_out)
    }
}

/// Automorphism mapping the adapted basis of the lattice spanned by the
/// given degrees onto coordinate axes; returns it together with the
/// images of the scaled basis vectors, each supported on a single axis.
pub fn normalize_center_support(
    n: usize,
    degrees: &[Vec<i64>],
) -> Result<(TauAutomorphism, Vec<Vec<i64>>)> {
    if degrees.is_empty() {
        return Ok((TauAutomorphism::identity(n), Vec::new()));
    }
    if degrees.iter().any(|d| d.len() != n) {
        return Err(Error::Dimension("degree vectors of wrong length".into()));
    }
    let (svecs, mults) = adapted_basis(degrees)?;
    if svecs.is_empty() {
        return Ok((TauAutomorphism::identity(n), Vec::new()));
    }
    let b = complete_to_unimodular(&svecs)?;
    let auto = TauAutomorphism::new(b)?;
    let mut normalized = Vec::new();
    for (i, m) in mults.iter().enumerate() {
        let mut v = vec![0i64; n];
        v[i] = *m;
        normalized.push(v);
    }
    Ok((auto, normalized))
}

/// Block automorphism `[[I_k, 0], [0, B]]` with `B` unimodular sending
/// the tail of the level vector to `(0, ..., 0, l)`, `l = gcd >= 0`.
pub fn normalize_level_vector(k_vec: &[i64], k: usize) -> Result<TauAutomorphism> {
    let n = k_vec.len();
    if k > n {
        return Err(Error::Dimension("block size exceeds vector length".into()));
    }
    if k_vec[..k].iter().any(|&v| v != 0) {
        return Err(Error::Precondition(
            "leading entries of the level vector must be zero".into(),
        ));
    }
    let tail = &k_vec[k..];
    let len = tail.len();
    let b = IntMatrix::identity(n);
    if len == 0 || tail.iter().all(|&v| v == 0) {
        return TauAutomorphism::new(b);
    }
    let mut b = b;
    let mut v: Vec<num::BigInt> = tail.iter().map(|&x| num::BigInt::from(x)).collect();
    let last = len - 1;
    for i in 0..last {
        if v[i] == num::BigInt::from(0) {
            continue;
        }
        let (g, s, t) = extended_gcd(&v[last], &v[i]);
        // rows (k+i, k+last): [[-v_last/g, v_i/g], [t, s]] sends the pair
        // (v_i, v_last) to (0, g); determinant is -1, still unimodular
        let p = -&v[last] / &g;
        let q = &v[i] / &g;
        let mut step = IntMatrix::identity(n);
        step[(k + i, k + i)] = p;
        step[(k + i, k + last)] = q;
        step[(k + last, k + i)] = t.clone();
        step[(k + last, k + last)] = s.clone();
        b = step.mul(&b);
        v[i] = num::BigInt::from(0);
        v[last] = g;
    }
    if v[last] < num::BigInt::from(0) {
        let mut flip = IntMatrix::identity(n);
        flip[(k + last, k + last)] = num::BigInt::from(-1);
        b = flip.mul(&b);
        v[last] = -v[last].clone();
    }
    debug_assert!(v[..last].iter().all(|x| x == &num::BigInt::from(0)));
    debug_assert!(v[last].to_i64().unwrap() >= 0);
    TauAutomorphism::new(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::monomial::Monomial;
    use crate::exact::scalar::from_i64;
    use crate::root_data::ToroidalRootSystem;
    use crate::tau::{self, MatrixG, TauElement};

    fn swap2() -> TauAutomorphism {
        TauAutomorphism::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let sys = ToroidalRootSystem::new_type_a(1, 2).unwrap();
        let auto = TauAutomorphism::identity(2);
        for (_, x) in tau::tau_basis(&sys, 1).unwrap() {
            assert_eq!(auto.apply(&x).unwrap(), x);
        }
    }

    #[test]
    fn swap_exchanges_axes() {
        let auto = swap2();
        let x = TauElement::from_matrix(MatrixG::elementary(2, 0, 1), Monomial(vec![3, -1]), 2);
        let y = auto.apply(&x).unwrap();
        let expect =
            TauElement::from_matrix(MatrixG::elementary(2, 0, 1), Monomial(vec![-1, 3]), 2);
        assert_eq!(y, expect);
        let z = TauElement::center_term(2, 2, Monomial(vec![0, 0]), 0, scalar::one());
        let zi = auto.apply(&z).unwrap();
        assert_eq!(zi.z.coeff(&Monomial(vec![0, 0]), 1), scalar::one());
        assert_eq!(zi.z.coeff(&Monomial(vec![0, 0]), 0), scalar::zero());
        let d = TauElement::derivation(2, 2, 0);
        let di = auto.apply(&d).unwrap();
        assert_eq!(di.d, vec![scalar::zero(), scalar::one()]);
    }

    #[test]
    fn relation_vector_maps_to_zero() {
        let auto = TauAutomorphism::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let mut raw = TauElement::zero(2, 2);
        raw.z.add_term(Monomial(vec![2, 3]), 0, from_i64(2));
        raw.z.add_term(Monomial(vec![2, 3]), 1, from_i64(3));
        assert!(raw.is_zero(), "relation vector canonicalizes to zero");
        let img = auto.apply(&raw).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn bracket_preservation_exhaustive_small() {
        let sys = ToroidalRootSystem::new_type_a(1, 2).unwrap();
        let auto = TauAutomorphism::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let basis = tau::tau_basis(&sys, 1).unwrap();
        for (_, x) in basis.iter() {
            for (_, y) in basis.iter() {
                let lhs = auto.apply(&x.bracket(y).unwrap()).unwrap();
                let rhs = auto.apply(x).unwrap().bracket(&auto.apply(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "automorphism fails on [{x}, {y}]");
            }
        }
    }

    #[test]
    fn degree_equivariance_and_composition() {
        let sys = ToroidalRootSystem::new_type_a(1, 2).unwrap();
        let a = TauAutomorphism::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let b = swap2();
        let ab = a.compose(&b);
        for (_, x) in tau::tau_basis(&sys, 1).unwrap() {
            let via_compose = ab.apply(&x).unwrap();
            let via_steps = a.apply(&b.apply(&x).unwrap()).unwrap();
            assert_eq!(via_compose, via_steps);
            let img = a.apply(&x).unwrap();
            for (m, _) in x.g_terms() {
                let expect = a.degree_image(&m.0);
                assert!(img.g_terms().any(|(mm, _)| mm.0 == expect));
            }
        }
    }

    #[test]
    fn untransformed_derivations_measure_new_degree() {
        // [d_i, A(X(m))] = (Am)_i A(X(m))
        let a = TauAutomorphism::from_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        let x = TauElement::from_matrix(MatrixG::elementary(2, 0, 1), Monomial(vec![1, 1]), 2);
        let img = a.apply(&x).unwrap();
        let am = a.degree_image(&[1, 1]);
        for (i, &ami) in am.iter().enumerate() {
            let d = TauElement::derivation(2, 2, i);
            assert_eq!(d.bracket(&img).unwrap(), img.scale(&from_i64(ami)));
        }
    }

    #[test]
    fn round_trip_through_inverse() {
        let sys = ToroidalRootSystem::new_type_a(1, 2).unwrap();
        let a = TauAutomorphism::from_rows(&[vec![3, 2], vec![1, 1]]).unwrap();
        let ainv = a.inverse();
        for (_, x) in tau::tau_basis(&sys, 1).unwrap() {
            assert_eq!(ainv.apply(&a.apply(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn non_unimodular_matrix_is_rejected() {
        let err = TauAutomorphism::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotUnimodular(_)));
    }

    #[test]
    fn center_support_normalization() {
        let (auto, degs) = normalize_center_support(2, &[vec![2, 0]]).unwrap();
        assert_eq!(degs, vec![vec![2, 0]]);
        assert!(auto.matrix().is_unimodular());
        assert_eq!(auto.degree_image(&[2, 0]), vec![2, 0]);

        let (auto, degs) = normalize_center_support(2, &[vec![2, 4], vec![4, 2]]).unwrap();
        assert_eq!(degs, vec![vec![2, 0], vec![0, 6]]);
        assert!(auto.matrix().is_unimodular());
        let (svecs, mults) = adapted_basis(&[vec![2, 4], vec![4, 2]]).unwrap();
        for (i, (s, m)) in svecs.iter().zip(&mults).enumerate() {
            let scaled: Vec<i64> = s.iter().map(|&x| x * m).collect();
            assert_eq!(auto.degree_image(&scaled), degs[i]);
        }

        let (auto, degs) = normalize_center_support(2, &[]).unwrap();
        assert!(degs.is_empty());
        assert_eq!(auto.matrix(), &IntMatrix::identity(2));
    }

    #[test]
    fn level_vector_normalization() {
        let auto = normalize_level_vector(&[0, 0, 5], 2).unwrap();
        assert_eq!(auto.degree_image(&[0, 0, 5]), vec![0, 0, 5]);

        let auto = normalize_level_vector(&[0, 2, 4], 1).unwrap();
        assert!(auto.matrix().is_unimodular());
        assert_eq!(auto.degree_image(&[0, 2, 4]), vec![0, 0, 2]);
        // block structure: the leading block row stays put
        assert_eq!(auto.degree_image(&[1, 0, 0])[0], 1);

        let auto = normalize_level_vector(&[0, 0, 0], 1).unwrap();
        assert_eq!(auto.matrix(), &IntMatrix::identity(3));

        assert!(normalize_level_vector(&[1, 2], 1).is_err());
    }

    #[test]
    fn level_vector_negative_gcd_made_positive() {
        let auto = normalize_level_vector(&[0, -3, -6], 1).unwrap();
        assert!(auto.matrix().is_unimodular());
        assert_eq!(auto.degree_image(&[0, -3, -6]), vec![0, 0, 3]);
    }
}
