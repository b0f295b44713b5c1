//! Laurent polynomials over Z^n with rational coefficients, plus reduction
//! modulo the product-of-univariate ideal attached to a point grid.
//!
//! Terms are kept in a map with no zero coefficients stored; the monomial
//! order makes printing and iteration deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::monomial::Monomial;
use crate::exact::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::zero(n), scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let n = m.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { n, terms }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.len(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = LaurentPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma + mb, ca * cb);
            }
        }
        out
    }

    /// Evaluate at a point with nonzero coordinates.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        debug_assert_eq!(point.len(), self.n);
        let mut acc = scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    term *= scalar::pow_i(&point[j], e);
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{}", scalar::to_frac_string(c), m)?;
        }
        Ok(())
    }
}

/// Reduction tables for one axis: representatives of `t^e` modulo
/// `P(t) = prod_k (t - a_k)`, as coefficient vectors of degree < N.
struct AxisReducer {
    n_pts: usize,
    /// coefficients c_0..c_{N-1} of P below the leading monic term
    lower: Vec<Scalar>,
}

impl AxisReducer {
    fn new(points: &[Scalar], axis: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid { axis });
        }
        for (i, p) in points.iter().enumerate() {
            if p.is_zero() {
                return Err(Error::InvalidGrid { axis });
            }
            for q in &points[..i] {
                if p == q {
                    return Err(Error::InvalidGrid { axis });
                }
            }
        }
        // expand prod (t - a_k)
        let mut coeffs = vec![scalar::one()]; // ascending degree
        for a in points {
            let mut next = vec![scalar::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c.clone();
                next[i] -= c * a;
            }
            coeffs = next;
        }
        debug_assert!(coeffs.last().unwrap() == &scalar::one());
        coeffs.pop();
        Ok(AxisReducer { n_pts: points.len(), lower: coeffs })
    }

    /// `t * u mod P` for `u` of degree < N.
    fn mul_t(&self, u: &[Scalar]) -> Vec<Scalar> {
        let n = self.n_pts;
        let mut out = vec![scalar::zero(); n];
        out[1..n].clone_from_slice(&u[..n - 1]);
        let lead = u[n - 1].clone();
        if !lead.is_zero() {
            for (o, c) in out.iter_mut().zip(&self.lower) {
                *o -= &lead * c;
            }
        }
        out
    }

    /// `t^{-1} * u mod P`; uses that the constant term of P is nonzero.
    fn div_t(&self, u: &[Scalar]) -> Vec<Scalar> {
        let n = self.n_pts;
        let u0 = u[0].clone();
        // u - u0 is divisible by t; add back u0 * t^{-1} where
        // t^{-1} = -(t^{N-1} + c_{N-1} t^{N-2} + ... + c_1) / c_0.
        let mut out = vec![scalar::zero(); n];
        out[..n - 1].clone_from_slice(&u[1..]);
        if !u0.is_zero() {
            let c0 = &self.lower[0];
            let f = -u0 / c0;
            out[n - 1] += &f;
            for i in 1..n {
                out[i - 1] += &f * &self.lower[i];
            }
        }
        out
    }

    fn power(&self, e: i64) -> Vec<Scalar> {
        let mut v = vec![scalar::zero(); self.n_pts];
        v[0] = scalar::one();
        if e >= 0 {
            for _ in 0..e {
                v = self.mul_t(&v);
            }
        } else {
            for _ in 0..(-e) {
                v = self.div_t(&v);
            }
        }
        v
    }
}

/// Reduce `p` modulo the ideal `(P_1(t_1), ..., P_n(t_n))` where
/// `P_j(t_j) = prod_k (t_j - a_{j,k})` over the given per-axis points.
/// The result is supported on `{m : 0 <= m_j < N_j}` and agrees with `p`
/// at every grid point.
pub fn reduce_mod_grid(p: &LaurentPoly, axes: &[Vec<Scalar>]) -> Result<LaurentPoly> {
    let n = p.vars();
    if axes.len() != n {
        return Err(Error::Dimension(format!(
            "polynomial has {n} variables but grid has {} axes",
            axes.len()
        )));
    }
    let reducers: Vec<AxisReducer> = axes
        .iter()
        .enumerate()
        .map(|(j, pts)| AxisReducer::new(pts, j))
        .collect::<Result<_>>()?;

    let mut out = LaurentPoly::zero(n);
    for (m, c) in p.terms() {
        // product over axes of the reduced univariate representatives
        let mut partial: Vec<(Vec<i64>, Scalar)> = vec![(Vec::new(), c.clone())];
        for (j, red) in reducers.iter().enumerate() {
            let rep = red.power(m.0[j]);
            let mut next = Vec::new();
            for (exps, coef) in &partial {
                for (deg, rc) in rep.iter().enumerate() {
                    if rc.is_zero() {
                        continue;
                    }
                    let mut e = exps.clone();
                    e.push(deg as i64);
                    next.push((e, coef * rc));
                }
            }
            partial = next;
        }
        for (exps, coef) in partial {
            out.add_term(Monomial(exps), coef);
        }
    }
    Ok(out)
}
