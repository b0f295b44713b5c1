//! Graded loop forms: the degree-class grading of a tensor evaluation
//! module, its loop carrier with component decomposition, and the
//! component modules carrying the action of the full algebra.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::monomial::Monomial;
use crate::exact::scalar::{self, Scalar};
use crate::root_data::{ToroidalRootSystem, WeightVec};
use crate::tau::{degree_box, MatrixG, TauElement};
use crate::verma::AffElt;

use super::tensor::{TApplied, TVec, TensorModule, WKey};
use super::{GammaLattice, PsiFunctional};

pub type ModVec = BTreeMap<usize, Scalar>;

/// Row space kept in echelon form for exact membership and coordinates.
#[derive(Debug, Clone)]
pub struct EchelonSpace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn new(ambient: usize) -> Self {
        EchelonSpace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [Scalar]) -> Vec<Scalar> {
        let mut coords = vec![scalar::zero(); self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
                coords[r] = f;
            }
        }
        coords
    }

    /// Insert a vector; true when it enlarged the space.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let _ = self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].clone().recip();
        for c in v.iter_mut() {
            *c *= &inv;
        }
        // keep rows ordered by pivot for deterministic coordinates
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Coordinates of `v` over the stored rows, if it lies in the space.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut work = v.to_vec();
        let coords = self.reduce(&mut work);
        if work.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Decomposition of a tensor module into degree classes: the span of all
/// vectors reachable from the top by words of operators whose total grid
/// degree lies in a fixed class.
#[derive(Debug, Clone)]
pub struct ClassGrading {
    pub reps: Vec<Vec<i64>>,
    rep_index: BTreeMap<Vec<i64>, usize>,
    pub spaces: BTreeMap<(usize, WKey), EchelonSpace>,
}

impl ClassGrading {
    pub fn class_of(&self, gamma: &GammaLattice, m: &[i64]) -> usize {
        self.rep_index[&gamma.reduce(m)]
    }

    pub fn space(&self, class: usize, wkey: &WKey) -> Option<&EchelonSpace> {
        self.spaces.get(&(class, wkey.clone()))
    }
}

/// Build the class grading by exact closure from the top vector under
/// the evaluation operators with grid degrees in the exponent box (their
/// span reaches everything any degree reaches) and loop-degree window
/// given by the factor truncation.
pub fn compute_class_grading(
    tensor: &TensorModule,
    gamma: &GammaLattice,
    t1_window: i64,
) -> Result<ClassGrading> {
    let reps = gamma.coset_reps();
    let rep_index: BTreeMap<Vec<i64>, usize> =
        reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let class_of = |m: &[i64]| rep_index[&gamma.reduce(m)];
    let spec = &tensor.spec;
    let size = tensor.size;
    let n_axes = spec.grid.n();

    // operator pool: matrix basis x loop degree x grid-box degree
    let mut mats = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if i != j {
                mats.push(MatrixG::elementary(size, i, j));
            }
        }
    }
    for i in 1..size {
        mats.push(MatrixG::cartan(size, i));
    }
    let kmin = -t1_window;
    let kmax = t1_window;
    let mut grid_degrees = vec![Vec::new()];
    for nj in spec.grid.shape() {
        let mut next = Vec::new();
        for p in &grid_degrees {
            for v in 0..nj as i64 {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        grid_degrees = next;
    }
    struct Op {
        elt: AffElt,
        coeffs: Vec<Scalar>,
        class_shift: Vec<i64>,
    }
    let mut ops = Vec::new();
    for mbar in &grid_degrees {
        let mono = Monomial(mbar.clone());
        let coeffs: Vec<Scalar> = spec
            .grid
            .indices()
            .iter()
            .map(|idx| spec.grid.point_power(idx, &mono))
            .collect();
        for mat in &mats {
            for k in kmin..=kmax {
                ops.push(Op {
                    elt: AffElt::from_matrix(mat.clone(), k),
                    coeffs: coeffs.clone(),
                    class_shift: mbar.clone(),
                });
            }
        }
    }

    let dim = tensor.dim();
    let mut spaces: BTreeMap<(usize, WKey), EchelonSpace> = BTreeMap::new();
    let top = tensor.top_id();
    let mut top_vec = vec![scalar::zero(); dim];
    top_vec[top] = scalar::one();
    let zero_class = class_of(&vec![0; n_axes]);
    let top_key = (zero_class, tensor.wkey(top).clone());
    spaces
        .entry(top_key.clone())
        .or_insert_with(|| EchelonSpace::new(dim))
        .insert(top_vec.clone());
    let mut queue: Vec<(usize, Vec<Scalar>)> = vec![(zero_class, top_vec)];

    while let Some((class, row)) = queue.pop() {
        let tv: TVec = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        for op in &ops {
            let applied: TApplied = tensor.apply_slotwise(&op.elt, &op.coeffs, &tv);
            if applied.vec.is_empty() {
                continue;
            }
            let rep_sum: Vec<i64> = reps[class]
                .iter()
                .zip(&op.class_shift)
                .map(|(a, b)| a + b)
                .collect();
            let class2 = class_of(&rep_sum);
            // split by weight key
            let mut slices: BTreeMap<WKey, Vec<Scalar>> = BTreeMap::new();
            for (id, c) in applied.vec {
                let wk = tensor.wkey(id).clone();
                slices.entry(wk).or_insert_with(|| vec![scalar::zero(); dim])[id] = c;
            }
            for (wk, slice) in slices {
                let space = spaces
                    .entry((class2, wk))
                    .or_insert_with(|| EchelonSpace::new(dim));
                if space.insert(slice.clone()) {
                    queue.push((class2, slice));
                }
            }
        }
    }

    // exhaustion: the classes must fill every weight space exactly
    let mut per_wkey: BTreeMap<WKey, usize> = BTreeMap::new();
    for ((_, wk), sp) in &spaces {
        *per_wkey.entry(wk.clone()).or_insert(0) += sp.dim();
    }
    let expected = tensor.weight_dims();
    if per_wkey != expected {
        return Err(Error::Precondition(format!(
            "class grading does not exhaust the module: got {per_wkey:?}, want {expected:?}"
        )));
    }
    Ok(ClassGrading { reps, rep_index, spaces })
}

/// The loop form of a tensor module: vectors tagged by a degree in the
/// window, decomposing into one component per lattice coset.
#[derive(Debug, Clone)]
pub struct LoopModule {
    pub tensor: TensorModule,
    pub gamma: GammaLattice,
    pub grading: ClassGrading,
    pub loop_depth: i64,
    pub components: Vec<Vec<i64>>,
}

impl LoopModule {
    pub fn build(tensor: TensorModule, gamma: GammaLattice, loop_depth: i64) -> Result<Self> {
        if gamma.n != tensor.spec.grid.n() {
            return Err(Error::Dimension("lattice and grid axis counts differ".into()));
        }
        let grading = compute_class_grading(&tensor, &gamma, tensor.depth as i64)?;
        let components = gamma.coset_reps();
        Ok(LoopModule { tensor, gamma, grading, loop_depth, components })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Graded dimensions of the component generated from degree `base`:
    /// for each loop degree `r`, the class space of `[r - base]`.
    pub fn component_graded_dims(&self, base: &[i64]) -> BTreeMap<(WKey, Vec<i64>), usize> {
        let mut out = BTreeMap::new();
        for r in degree_box(self.gamma.n, self.loop_depth) {
            let diff: Vec<i64> = r.iter().zip(base).map(|(a, b)| a - b).collect();
            let class = self.grading.class_of(&self.gamma, &diff);
            for ((c, wk), sp) in &self.grading.spaces {
                if *c == class && sp.dim() > 0 {
                    out.insert((wk.clone(), r.clone()), sp.dim());
                }
            }
        }
        out
    }

    /// Freeness over the degree algebra: at every loop degree the
    /// components jointly restore the full tensor dimension per weight.
    pub fn freeness_check(&self) -> bool {
        let expected = self.tensor.weight_dims();
        for r in degree_box(self.gamma.n, self.loop_depth) {
            let mut per_wkey: BTreeMap<WKey, usize> = BTreeMap::new();
            for base in &self.components {
                let diff: Vec<i64> = r.iter().zip(base).map(|(a, b)| a - b).collect();
                let class = self.grading.class_of(&self.gamma, &diff);
                for ((c, wk), sp) in &self.grading.spaces {
                    if *c == class {
                        *per_wkey.entry(wk.clone()).or_insert(0) += sp.dim();
                    }
                }
            }
            per_wkey.retain(|_, v| *v != 0);
            let mut exp = expected.clone();
            exp.retain(|_, v| *v != 0);
            if per_wkey != exp {
                return false;
            }
        }
        true
    }

    /// Extract one component as a module over the full algebra.
    pub fn component(
        &self,
        sys: ToroidalRootSystem,
        kind: CarrierKind,
        base: &[i64],
    ) -> Result<GradedCarrier> {
        GradedCarrier::from_loop(sys, kind, self, base)
    }
}

/// How the full algebra reaches the carrier: with the center killed, or
/// through the center-collapsing homomorphism onto the affine algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierKind {
    TrivialCenter,
    AffineCenter,
}

/// Basis label inside a component: degree class, weight key, row in the
/// class space, loop degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CarrierKey {
    pub class: usize,
    pub wkey: WKey,
    pub row: usize,
    pub r: Vec<i64>,
}

/// A component of the loop module carrying the action of the full
/// algebra (via evaluation for the trivial-center family, via the
/// center-collapsing homomorphism for the affine-center family).
#[derive(Debug, Clone)]
pub struct GradedCarrier {
    pub sys: ToroidalRootSystem,
    pub kind: CarrierKind,
    pub spec: PsiFunctional,
    pub tensor: TensorModule,
    pub gamma: Option<GammaLattice>,
    pub grading: Option<ClassGrading>,
    pub loop_depth: i64,
    pub base: Vec<i64>,
    pub basis: Vec<CarrierKey>,
    index: BTreeMap<CarrierKey, usize>,
}

impl GradedCarrier {
    fn from_loop(
        sys: ToroidalRootSystem,
        kind: CarrierKind,
        lp: &LoopModule,
        base: &[i64],
    ) -> Result<Self> {
        let mut basis = Vec::new();
        for r in degree_box(lp.gamma.n, lp.loop_depth) {
            let diff: Vec<i64> = r.iter().zip(base).map(|(a, b)| a - b).collect();
            let class = lp.grading.class_of(&lp.gamma, &diff);
            for ((c, wk), sp) in &lp.grading.spaces {
                if *c != class {
                    continue;
                }
                for row in 0..sp.dim() {
                    basis.push(CarrierKey {
                        class,
                        wkey: wk.clone(),
                        row,
                        r: r.clone(),
                    });
                }
            }
        }
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(GradedCarrier {
            sys,
            kind,
            spec: lp.tensor.spec.clone(),
            tensor: lp.tensor.clone(),
            gamma: Some(lp.gamma.clone()),
            grading: Some(lp.grading.clone()),
            loop_depth: lp.loop_depth,
            base: base.to_vec(),
            basis,
            index,
        })
    }

    /// The one-dimensional module attached to the all-zero functional.
    pub fn trivial(sys: ToroidalRootSystem, spec: PsiFunctional, kind: CarrierKind) -> Self {
        let tensor = TensorModule::build(spec.clone(), 0).expect("trivial factors build");
        debug_assert_eq!(tensor.dim(), 1);
        let key = CarrierKey {
            class: 0,
            wkey: tensor.wkey(0).clone(),
            row: 0,
            r: vec![0; spec.grid.n()],
        };
        let mut index = BTreeMap::new();
        index.insert(key.clone(), 0);
        GradedCarrier {
            sys,
            kind,
            spec,
            tensor,
            gamma: None,
            grading: None,
            loop_depth: 0,
            base: Vec::new(),
            basis: vec![key],
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.grading.is_none()
    }

    fn loop_axes(&self) -> usize {
        self.spec.grid.n()
    }

    /// Split a full degree vector into the loop-degree part of an
    /// operator and its affine loop exponent.
    fn split_degree(&self, m: &[i64]) -> (i64, Vec<i64>) {
        match self.kind {
            CarrierKind::TrivialCenter => (0, m.to_vec()),
            CarrierKind::AffineCenter => (m[0], m[1..].to_vec()),
        }
    }

    fn grid_coeffs(&self, mbar: &[i64]) -> Vec<Scalar> {
        let mono = Monomial(mbar.to_vec());
        self.spec
            .grid
            .indices()
            .iter()
            .map(|idx| self.spec.grid.point_power(idx, &mono))
            .collect()
    }

    fn dense_of(&self, id: usize) -> Vec<Scalar> {
        let key = &self.basis[id];
        match &self.grading {
            Some(g) => g.spaces[&(key.class, key.wkey.clone())].rows()[key.row].clone(),
            None => {
                let mut v = vec![scalar::zero(); self.tensor.dim()];
                v[0] = scalar::one();
                v
            }
        }
    }

    /// Push a tensor-level result at loop degree `r2` back into carrier
    /// coordinates.
    fn absorb(
        &self,
        applied: TApplied,
        r2: &[i64],
        factor: &Scalar,
        out: &mut ModVec,
        clipped: &mut bool,
    ) -> Result<()> {
        *clipped |= applied.clipped;
        if applied.vec.is_empty() {
            return Ok(());
        }
        if r2.iter().any(|v| v.abs() > self.loop_depth) {
            *clipped = true;
            return Ok(());
        }
        let (Some(gamma), Some(grading)) = (&self.gamma, &self.grading) else {
            // degenerate carrier: the only vector is the top one
            for (id, c) in applied.vec {
                if id == 0 {
                    let e = out.entry(0).or_insert_with(scalar::zero);
                    *e += c * factor;
                    if e.is_zero() {
                        out.remove(&0);
                    }
                }
            }
            return Ok(());
        };
        let diff: Vec<i64> = r2.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let class2 = grading.class_of(gamma, &diff);
        let dim = self.tensor.dim();
        let mut slices: BTreeMap<WKey, Vec<Scalar>> = BTreeMap::new();
        for (id, c) in applied.vec {
            let wk = self.tensor.wkey(id).clone();
            slices.entry(wk).or_insert_with(|| vec![scalar::zero(); dim])[id] = c;
        }
        for (wk, slice) in slices {
            let space = grading.space(class2, &wk).ok_or_else(|| {
                Error::Precondition("graded action left the computed class spaces".into())
            })?;
            let coords = space.express(&slice).ok_or_else(|| {
                Error::Precondition("graded action left the computed class spaces".into())
            })?;
            for (row, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let key = CarrierKey { class: class2, wkey: wk.clone(), row, r: r2.to_vec() };
                let id2 = self.index[&key];
                let e = out.entry(id2).or_insert_with(scalar::zero);
                *e += c * factor;
                if e.is_zero() {
                    out.remove(&id2);
                }
            }
        }
        Ok(())
    }

    /// Action of a full-algebra element.
    pub fn apply_tau(&self, op: &TauElement, v: &ModVec) -> Result<(ModVec, bool)> {
        if op.n != self.sys.n() || op.size != self.tensor.size {
            return Err(Error::SystemMismatch("operator does not match the module".into()));
        }
        let mut out = ModVec::new();
        let mut clipped = false;
        for (&id, coeff) in v {
            let key = &self.basis[id];
            let dense = self.dense_of(id);
            let tv: TVec = dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            // matrix part
            for (m, x) in op.g_terms() {
                let (k, mbar) = self.split_degree(&m.0);
                let coeffs = self.grid_coeffs(&mbar);
                let applied = self.tensor.apply_slotwise(&AffElt::from_matrix(x.clone(), k), &coeffs, &tv);
                let r2: Vec<i64> = key.r.iter().zip(&mbar).map(|(a, b)| a + b).collect();
                self.absorb(applied, &r2, coeff, &mut out, &mut clipped)?;
            }
            // center part
            if !op.z.is_zero() && self.kind == CarrierKind::AffineCenter {
                for (m, zc) in op.z.terms() {
                    let (k, mbar) = self.split_degree(&m.0);
                    if k != 0 || zc[0].is_zero() {
                        continue;
                    }
                    let coeffs = self.grid_coeffs(&mbar);
                    let applied = self.tensor.apply_slotwise(
                        &AffElt::central(self.tensor.size, scalar::one()),
                        &coeffs,
                        &tv,
                    );
                    let r2: Vec<i64> = key.r.iter().zip(&mbar).map(|(a, b)| a + b).collect();
                    self.absorb(applied, &r2, &(coeff * &zc[0]), &mut out, &mut clipped)?;
                }
            }
            // derivation part
            let mut eig = scalar::zero();
            match self.kind {
                CarrierKind::TrivialCenter => {
                    for (i, c) in op.d.iter().enumerate() {
                        if !c.is_zero() {
                            eig += c * scalar::from_i64(key.r[i]);
                        }
                    }
                }
                CarrierKind::AffineCenter => {
                    if !op.d[0].is_zero() {
                        let d1: Scalar =
                            self.sum_dvals() - scalar::from_i64(key.wkey.depth);
                        eig += &op.d[0] * d1;
                    }
                    for (i, c) in op.d.iter().enumerate().skip(1) {
                        if !c.is_zero() {
                            eig += c * scalar::from_i64(key.r[i - 1]);
                        }
                    }
                }
            }
            if !eig.is_zero() {
                let e = out.entry(id).or_insert_with(scalar::zero);
                *e += eig * coeff;
                if e.is_zero() {
                    out.remove(&id);
                }
            }
        }
        Ok((out, clipped))
    }

    fn sum_dvals(&self) -> Scalar {
        self.tensor
            .factors
            .iter()
            .fold(scalar::zero(), |acc, f| acc + &f.hw.dval)
    }

    /// Full weight of a basis vector in the toroidal coordinates.
    pub fn weight_of(&self, id: usize) -> WeightVec {
        let key = &self.basis[id];
        let d = self.sys.d();
        let n = self.sys.n();
        let mut covals = vec![scalar::zero(); d + 2 * n];
        for (cv, &f) in covals.iter_mut().zip(&key.wkey.finite) {
            *cv = scalar::from_i64(f);
        }
        // values on the loop coroots alpha^v_{d+j} = C_j - beta^v
        let beta_val: Scalar = key.wkey.finite.iter().map(|&v| scalar::from_i64(v)).sum();
        let c_vals: Vec<Scalar> = match self.kind {
            CarrierKind::TrivialCenter => vec![scalar::zero(); n],
            CarrierKind::AffineCenter => {
                let mut cv = vec![scalar::zero(); n];
                cv[0] = scalar::from_i64(self.spec.total_level());
                cv
            }
        };
        for j in 0..n {
            covals[d + j] = &c_vals[j] - &beta_val;
        }
        // derivation values
        match self.kind {
            CarrierKind::TrivialCenter => {
                for j in 0..n {
                    covals[d + n + j] = scalar::from_i64(key.r[j]);
                }
            }
            CarrierKind::AffineCenter => {
                covals[d + n] = self.sum_dvals() - scalar::from_i64(key.wkey.depth);
                for j in 1..n {
                    covals[d + n + j] = scalar::from_i64(key.r[j - 1]);
                }
            }
        }
        self.sys.weight_from_covalues(&covals)
    }

    /// The defining highest vector `v(base)` in carrier coordinates.
    pub fn highest_vector(&self) -> Option<ModVec> {
        if self.is_degenerate() {
            let mut v = ModVec::new();
            v.insert(0, scalar::one());
            return Some(v);
        }
        let gamma = self.gamma.as_ref()?;
        let grading = self.grading.as_ref()?;
        let top = self.tensor.top_id();
        let mut dense = vec![scalar::zero(); self.tensor.dim()];
        dense[top] = scalar::one();
        let zero = vec![0i64; self.loop_axes()];
        let class = grading.class_of(gamma, &zero);
        let wk = self.tensor.wkey(top).clone();
        let space = grading.space(class, &wk)?;
        let coords = space.express(&dense)?;
        let mut v = ModVec::new();
        for (row, c) in coords.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let key = CarrierKey { class, wkey: wk.clone(), row, r: self.base.clone() };
            v.insert(self.index[&key], c);
        }
        Some(v)
    }

    pub fn highest_vector_id(&self) -> Option<usize> {
        let v = self.highest_vector()?;
        if v.len() == 1 {
            v.keys().next().copied()
        } else {
            None
        }
    }

    /// Graded dimension table keyed by (weight key, loop degree).
    pub fn graded_dims(&self) -> BTreeMap<(WKey, Vec<i64>), usize> {
        let mut out: BTreeMap<(WKey, Vec<i64>), usize> = BTreeMap::new();
        for key in &self.basis {
            *out.entry((key.wkey.clone(), key.r.clone())).or_insert(0) += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::PointGrid;
    use crate::exact::scalar::from_i64;
    use crate::modules::{compute_gamma, FactorWeight};

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
    fn echelon_space_basics() {
        let mut sp = EchelonSpace::new(3);
        assert!(sp.insert(vec![from_i64(0), from_i64(2), from_i64(0)]));
        assert!(sp.insert(vec![from_i64(1), from_i64(1), from_i64(0)]));
        assert!(!sp.insert(vec![from_i64(2), from_i64(4), from_i64(0)]));
        assert_eq!(sp.dim(), 2);
        let coords = sp.express(&[from_i64(3), from_i64(5), from_i64(0)]).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(sp.express(&[from_i64(0), from_i64(0), from_i64(1)]).is_none());
    }

    #[test]
    fn grading_splits_tensor_into_two_classes() {
        let spec = spec_two_points();
        let gamma = compute_gamma(&spec).unwrap();
        let tensor = TensorModule::build(spec, 0).unwrap();
        let grading = compute_class_grading(&tensor, &gamma, 0).unwrap();
        assert_eq!(grading.reps.len(), 2);
        // the middle weight space (dimension 2) splits one per class
        let wk = WKey { finite: vec![0], depth: 0 };
        let d0 = grading.space(0, &wk).map(EchelonSpace::dim).unwrap_or(0);
        let d1 = grading.space(1, &wk).map(EchelonSpace::dim).unwrap_or(0);
        assert_eq!((d0, d1), (1, 1));
    }

    #[test]
    fn loop_module_has_index_many_components() {
        let spec = spec_two_points();
        let gamma = compute_gamma(&spec).unwrap();
        let tensor = TensorModule::build(spec, 0).unwrap();
        let lp = LoopModule::build(tensor, gamma, 2).unwrap();
        assert_eq!(lp.component_count(), 2);
        assert!(lp.freeness_check());
    }
}
