//! Tensor product of factor modules with the loop algebra acting through
//! evaluation at the grid points: one factor per grid index, operators
//! distributed slotwise with the per-slot evaluation coefficients.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::Result;
use crate::exact::scalar::{self, Scalar};
use crate::root_data::ToroidalRootSystem;
use crate::verma::{AffElt, AffineModule, HighestWeight};

use super::{FactorWeight, PsiFunctional};

/// Weight bookkeeping key of a tensor basis vector: summed finite
/// covalues plus the total imaginary depth of the affine factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WKey {
    pub finite: Vec<i64>,
    pub depth: i64,
}

/// One basis vector: per factor, a layer and a position in it.
pub type TensorKey = Vec<(Vec<i64>, usize)>;

pub type TVec = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone, Default)]
pub struct TApplied {
    pub vec: TVec,
    pub clipped: bool,
}

#[derive(Debug, Clone)]
pub struct TensorModule {
    pub d: usize,
    pub size: usize,
    pub spec: PsiFunctional,
    pub factors: Vec<AffineModule>,
    pub depth: usize,
    pub basis: Vec<TensorKey>,
    index: BTreeMap<TensorKey, usize>,
    wkeys: Vec<WKey>,
    finite_cartan: Vec<Vec<i64>>,
}

impl TensorModule {
    pub fn build(spec: PsiFunctional, depth: usize) -> Result<TensorModule> {
        let d = spec.d;
        let size = d + 1;
        let mut factors = Vec::with_capacity(spec.weights.len());
        for w in &spec.weights {
            let m = match w {
                FactorWeight::Finite { hvals } => AffineModule::build_finite(d, hvals)?,
                FactorWeight::Affine { hvals, level, dval } => AffineModule::build(
                    d,
                    HighestWeight { hvals: hvals.clone(), level: *level, dval: dval.clone() },
                    depth,
                )?,
            };
            factors.push(m);
        }
        let sys = ToroidalRootSystem::new_type_a(d, 1)?;
        let mut finite_cartan = vec![vec![0i64; d]; d];
        for (i, row) in finite_cartan.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                use num::ToPrimitive;
                *e = sys.extended_cartan()[(i, j)].to_i64().unwrap();
            }
        }
        // enumerate tuples with total imaginary depth within the window
        let mut basis: Vec<TensorKey> = vec![Vec::new()];
        for f in &factors {
            let mut next = Vec::new();
            for prefix in &basis {
                let used: i64 = prefix.iter().map(|(nv, _)| nv[0]).sum();
                for (nv, layer) in &f.layers {
                    if used + nv[0] > depth as i64 {
                        continue;
                    }
                    for t in 0..layer.dim() {
                        let mut p = prefix.clone();
                        p.push((nv.clone(), t));
                        next.push(p);
                    }
                }
            }
            basis = next;
        }
        basis.sort();
        let index: BTreeMap<TensorKey, usize> =
            basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut tm = TensorModule {
            d,
            size,
            spec,
            factors,
            depth,
            basis,
            index,
            wkeys: Vec::new(),
            finite_cartan,
        };
        tm.wkeys = (0..tm.basis.len()).map(|b| tm.compute_wkey(b)).collect();
        Ok(tm)
    }

    fn compute_wkey(&self, b: usize) -> WKey {
        let mut finite = vec![0i64; self.d];
        let mut depth = 0i64;
        for (s, (nv, _)) in self.basis[b].iter().enumerate() {
            let (fdrop, n0) = self.factors[s].layer_weight_drop(nv);
            depth += n0;
            let hv = self.factors[s].hw.hvals.clone();
            for i in 0..self.d {
                let mut v = hv[i];
                for (j, &fj) in fdrop.iter().enumerate() {
                    v -= self.finite_cartan[i][j] * fj;
                }
                finite[i] += v;
            }
        }
        WKey { finite, depth }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn wkey(&self, b: usize) -> &WKey {
        &self.wkeys[b]
    }

    pub fn weight_dims(&self) -> BTreeMap<WKey, usize> {
        let mut out = BTreeMap::new();
        for k in &self.wkeys {
            *out.entry(k.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Index of the all-highest tuple.
    pub fn top_id(&self) -> usize {
        let key: TensorKey = self
            .factors
            .iter()
            .map(|_| (vec![0i64; self.d + 1], 0usize))
            .collect();
        self.index[&key]
    }

    /// Sum of the factor derivation eigenvalues on a basis vector.
    pub fn d1_eigenvalue(&self, b: usize) -> Scalar {
        let mut acc = scalar::zero();
        for (s, (nv, _)) in self.basis[b].iter().enumerate() {
            acc += &self.factors[s].hw.dval - scalar::from_i64(nv[0]);
        }
        acc
    }

    pub fn index_of(&self, key: &TensorKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Apply `sum_s coeffs[s] . (1 x .. x op_s x .. x 1)` to a vector.
    pub fn apply_slotwise(&self, op: &AffElt, coeffs: &[Scalar], v: &TVec) -> TApplied {
        debug_assert_eq!(coeffs.len(), self.factors.len());
        let mut out = TVec::new();
        let mut clipped = false;
        for (&b, cb) in v {
            let key = &self.basis[b];
            for (s, cs) in coeffs.iter().enumerate() {
                if cs.is_zero() {
                    continue;
                }
                let (nv, idx) = &key[s];
                let layer = &self.factors[s].layers[nv];
                let mut unit = vec![scalar::zero(); layer.dim()];
                unit[*idx] = scalar::one();
                let applied = self.factors[s].apply(op, nv, &unit);
                clipped |= applied.clipped;
                for (nv2, coords) in applied.parts {
                    for (t, c) in coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut nk = key.clone();
                        nk[s] = (nv2.clone(), t);
                        match self.index.get(&nk) {
                            Some(&id2) => {
                                let add = cb * cs * c;
                                let e = out.entry(id2).or_insert_with(scalar::zero);
                                *e += add;
                                if e.is_zero() {
                                    out.remove(&id2);
                                }
                            }
                            None => {
                                // factor landing is fine but the total
                                // imaginary depth left the window
                                clipped = true;
                            }
                        }
                    }
                }
            }
        }
        TApplied { vec: out, clipped }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::PointGrid;
    use crate::exact::monomial::Monomial;
    use crate::exact::scalar::from_i64;
    use crate::tau::MatrixG;

    fn spec_two_points() -> PsiFunctional {
        PsiFunctional::new(
            1,
            PointGrid::new(vec![vec![from_i64(1), from_i64(-1)]]).unwrap(),
            vec![
                FactorWeight::Finite { hvals: vec![1] },
                FactorWeight::Finite { hvals: vec![1] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_two_doublets_has_dimension_four() {
        let tm = TensorModule::build(spec_two_points(), 0).unwrap();
        assert_eq!(tm.dim(), 4);
        let dims = tm.weight_dims();
        assert_eq!(dims[&WKey { finite: vec![2], depth: 0 }], 1);
        assert_eq!(dims[&WKey { finite: vec![0], depth: 0 }], 2);
        assert_eq!(dims[&WKey { finite: vec![-2], depth: 0 }], 1);
    }

    #[test]
    fn slotwise_action_matches_evaluation_coefficients() {
        // f x t^1 at points (1, -1): acts as f(1) - f(2) on the factors
        let tm = TensorModule::build(spec_two_points(), 0).unwrap();
        let spec = tm.spec.clone();
        let fop = AffElt::from_matrix(MatrixG::elementary(2, 1, 0), 0);
        let m = Monomial(vec![1]);
        let coeffs: Vec<Scalar> = spec
            .grid
            .indices()
            .iter()
            .map(|idx| spec.grid.point_power(idx, &m))
            .collect();
        assert_eq!(coeffs, vec![from_i64(1), from_i64(-1)]);
        let mut v = TVec::new();
        v.insert(tm.top_id(), scalar::one());
        let out = tm.apply_slotwise(&fop, &coeffs, &v);
        assert!(!out.clipped);
        // two terms with opposite signs, one per slot
        assert_eq!(out.vec.len(), 2);
        let vals: Vec<Scalar> = out.vec.values().cloned().collect();
        assert_eq!(vals[0].clone() + vals[1].clone(), scalar::zero());
    }

    #[test]
    fn module_axiom_on_tensor_action_sample() {
        // [e(m), f(s)] acting through evaluation equals the composite
        let tm = TensorModule::build(spec_two_points(), 0).unwrap();
        let spec = tm.spec.clone();
        let coeffs_for = |m: &Monomial| -> Vec<Scalar> {
            spec.grid
                .indices()
                .iter()
                .map(|idx| spec.grid.point_power(idx, m))
                .collect()
        };
        let e = MatrixG::elementary(2, 0, 1);
        let f = MatrixG::elementary(2, 1, 0);
        let h = MatrixG::cartan(2, 1);
        for (me, ms) in [(0i64, 0i64), (1, 0), (1, 1), (2, -1)] {
            let cm = coeffs_for(&Monomial(vec![me]));
            let cs = coeffs_for(&Monomial(vec![ms]));
            let csum = coeffs_for(&Monomial(vec![me + ms]));
            for b in 0..tm.dim() {
                let mut v = TVec::new();
                v.insert(b, scalar::one());
                let ef = tm.apply_slotwise(
                    &AffElt::from_matrix(e.clone(), 0),
                    &cm,
                    &tm.apply_slotwise(&AffElt::from_matrix(f.clone(), 0), &cs, &v).vec,
                );
                let fe = tm.apply_slotwise(
                    &AffElt::from_matrix(f.clone(), 0),
                    &cs,
                    &tm.apply_slotwise(&AffElt::from_matrix(e.clone(), 0), &cm, &v).vec,
                );
                let hv = tm.apply_slotwise(&AffElt::from_matrix(h.clone(), 0), &csum, &v);
                let mut lhs = ef.vec;
                for (id, c) in fe.vec {
                    let e = lhs.entry(id).or_insert_with(scalar::zero);
                    *e -= c;
                    if e.is_zero() {
                        lhs.remove(&id);
                    }
                }
                assert_eq!(lhs, hv.vec, "commutator mismatch on basis {b}");
            }
        }
    }

    #[test]
    fn single_factor_acts_by_scaled_matrices() {
        // one grid point a: X x t^m acts as a^m X on the plain module
        let spec = PsiFunctional::new(
            1,
            PointGrid::new(vec![vec![from_i64(2)]]).unwrap(),
            vec![FactorWeight::Finite { hvals: vec![2] }],
        )
        .unwrap();
        let tm = TensorModule::build(spec.clone(), 0).unwrap();
        assert_eq!(tm.dim(), 3);
        let fop = AffElt::from_matrix(MatrixG::elementary(2, 1, 0), 0);
        for m in [-1i64, 0, 3] {
            let coeffs: Vec<Scalar> = spec
                .grid
                .indices()
                .iter()
                .map(|idx| spec.grid.point_power(idx, &Monomial(vec![m])))
                .collect();
            let mut v = TVec::new();
            v.insert(tm.top_id(), scalar::one());
            let out = tm.apply_slotwise(&fop, &coeffs, &v);
            let plain = tm.apply_slotwise(&fop, &[scalar::one()], &v);
            let scale = crate::exact::scalar::pow_i(&from_i64(2), m);
            let expect: TVec =
                plain.vec.iter().map(|(&k, c)| (k, c * &scale)).collect();
            assert_eq!(out.vec, expect);
        }
    }

    #[test]
    fn affine_factor_tensor_depth_window() {
        let spec = PsiFunctional::new(
            1,
            PointGrid::new(vec![vec![from_i64(2)]]).unwrap(),
            vec![FactorWeight::Affine { hvals: vec![0], level: 1, dval: scalar::zero() }],
        )
        .unwrap();
        let tm = TensorModule::build(spec, 2).unwrap();
        // dims through depth 2 of the basic module: 1 + 3 + 4
        assert_eq!(tm.dim(), 8);
    }
}
