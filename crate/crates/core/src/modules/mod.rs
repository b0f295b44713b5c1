//! Construction of the weight-graded modules: finite and truncated
//! affine irreducibles, tensor evaluation modules, their graded loop
//! forms with component decompositions, the two module families over the
//! full algebra, and the exact check suite that runs on them.

pub mod tensor;
pub mod loops;
pub mod checks;

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluation::PointGrid;
use crate::exact::intmat::hermite_normal_form;
use crate::exact::monomial::Monomial;
use crate::exact::scalar::{self, Scalar};
use crate::root_data::{ToroidalRootSystem, WeightVec};
use crate::tau::{degree_box, TauElement};
use crate::automorphism::TauAutomorphism;
use crate::verma::{AffineModule, HighestWeight};

pub use loops::{ClassGrading, GradedCarrier, LoopModule, ModVec};
pub use tensor::TensorModule;

/// Highest weight of one tensor factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorWeight {
    Finite { hvals: Vec<i64> },
    Affine { hvals: Vec<i64>, level: i64, dval: Scalar },
}

impl FactorWeight {
    pub fn hvals(&self) -> &[i64] {
        match self {
            FactorWeight::Finite { hvals } | FactorWeight::Affine { hvals, .. } => hvals,
        }
    }

    pub fn level(&self) -> i64 {
        match self {
            FactorWeight::Finite { .. } => 0,
            FactorWeight::Affine { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FactorWeight::Finite { hvals } => hvals.iter().all(|&v| v == 0),
            FactorWeight::Affine { hvals, level, .. } => {
                hvals.iter().all(|&v| v == 0) && *level == 0
            }
        }
    }
}

/// The functional data: a point grid and one dominant weight per grid
/// point, in grid-index order.
#[derive(Debug, Clone)]
pub struct PsiFunctional {
    pub d: usize,
    pub grid: PointGrid,
    pub weights: Vec<FactorWeight>,
}

impl PsiFunctional {
    pub fn new(d: usize, grid: PointGrid, weights: Vec<FactorWeight>) -> Result<Self> {
        if weights.len() != grid.total_points() {
            return Err(Error::Dimension(format!(
                "{} weights for {} grid points",
                weights.len(),
                grid.total_points()
            )));
        }
        let affine_count = weights
            .iter()
            .filter(|w| matches!(w, FactorWeight::Affine { .. }))
            .count();
        if affine_count != 0 && affine_count != weights.len() {
            return Err(Error::Domain("mixed finite and affine factor weights".into()));
        }
        for w in &weights {
            if w.hvals().len() != d {
                return Err(Error::Dimension("weight with wrong rank".into()));
            }
            if w.hvals().iter().any(|&v| v < 0) {
                return Err(Error::Domain("factor weight not dominant".into()));
            }
            if let FactorWeight::Affine { hvals, level, .. } = w {
                if *level < hvals.iter().sum::<i64>() {
                    return Err(Error::Domain("affine factor weight not dominant".into()));
                }
            }
        }
        Ok(PsiFunctional { d, grid, weights })
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.weights.first(), Some(FactorWeight::Affine { .. }))
    }

    pub fn all_zero(&self) -> bool {
        self.weights.iter().all(FactorWeight::is_zero)
    }

    pub fn total_level(&self) -> i64 {
        self.weights.iter().map(FactorWeight::level).sum()
    }

    /// `psi(h_i x t^m) = sum_I a_I^m lambda_I(h_i)` for the finite Cartan
    /// direction `i` (1-based).
    pub fn psi_h(&self, i: usize, m: &Monomial) -> Scalar {
        let mut acc = scalar::zero();
        for (idx, w) in self.grid.indices().iter().zip(&self.weights) {
            let lam = w.hvals()[i - 1];
            if lam != 0 {
                acc += self.grid.point_power(idx, m) * scalar::from_i64(lam);
            }
        }
        acc
    }

    /// `psi(C x t^m)`; zero for finite targets.
    pub fn psi_level(&self, m: &Monomial) -> Scalar {
        let mut acc = scalar::zero();
        for (idx, w) in self.grid.indices().iter().zip(&self.weights) {
            let lev = w.level();
            if lev != 0 {
                acc += self.grid.point_power(idx, m) * scalar::from_i64(lev);
            }
        }
        acc
    }

    /// True when `psi(h x t^m)` vanishes for every Cartan direction.
    pub fn psi_vanishes_at(&self, m: &Monomial) -> bool {
        for i in 1..=self.d {
            if !self.psi_h(i, m).is_zero() {
                return false;
            }
        }
        if self.is_affine() && !self.psi_level(m).is_zero() {
            return false;
        }
        true
    }
}

/// Tabulated values of the functional over a degree window; the graded
/// lift multiplies each value by its monomial, recorded alongside.
#[derive(Debug, Clone, Serialize)]
pub struct PsiTable {
    pub entries: Vec<PsiEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiEntry {
    pub h: String,
    pub degree: Vec<i64>,
    pub value: String,
}

pub fn build_psi(spec: &PsiFunctional, window: i64) -> PsiTable {
    let n = spec.grid.n();
    let mut entries = Vec::new();
    for m in degree_box(n, window) {
        let mono = Monomial(m.clone());
        for i in 1..=spec.d {
            entries.push(PsiEntry {
                h: format!("h{i}"),
                degree: m.clone(),
                value: scalar::to_frac_string(&spec.psi_h(i, &mono)),
            });
        }
        if spec.is_affine() {
            entries.push(PsiEntry {
                h: "C1".into(),
                degree: m.clone(),
                value: scalar::to_frac_string(&spec.psi_level(&mono)),
            });
        }
    }
    PsiTable { entries }
}

/// The support lattice of the graded image: degrees whose monomial lies
/// in the image algebra, as a full-rank sublattice with per-axis periods.
#[derive(Debug, Clone)]
pub struct GammaLattice {
    pub n: usize,
    pub basis: Vec<Vec<i64>>,
    pub kj: Vec<i64>,
}

impl GammaLattice {
    /// Lattice index in the full degree group.
    pub fn index(&self) -> i64 {
        debug_assert_eq!(self.basis.len(), self.n);
        (0..self.n).map(|i| self.basis[i][i].abs()).product()
    }

    /// Canonical coset representative, each coordinate reduced into
    /// `[0, pivot)` front to back.
    pub fn reduce(&self, m: &[i64]) -> Vec<i64> {
        let mut x = m.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let p = row[i];
            debug_assert!(p > 0);
            let q = x[i].div_euclid(p);
            if q != 0 {
                for (xa, ra) in x.iter_mut().zip(row) {
                    *xa -= q * ra;
                }
            }
        }
        x
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.reduce(m).iter().all(|&v| v == 0)
    }

    /// Representatives of all cosets, the box under the pivots.
    pub fn coset_reps(&self) -> Vec<Vec<i64>> {
        let mut reps = vec![Vec::new()];
        for i in 0..self.n {
            let p = self.basis[i][i];
            let mut next = Vec::new();
            for r in &reps {
                for v in 0..p {
                    let mut rr = r.clone();
                    rr.push(v);
                    next.push(rr);
                }
            }
            reps = next;
        }
        // canonicalize: the box coordinates are not themselves reduced
        reps.into_iter().map(|r| self.reduce(&r)).collect()
    }
}

/// Compute the support lattice from the functional: per-axis periods by
/// scanning single-axis degrees, all nonvanishing degrees in a window,
/// then the group they generate.
pub fn compute_gamma(spec: &PsiFunctional) -> Result<GammaLattice> {
    if spec.all_zero() {
        return Err(Error::DegenerateSpec);
    }
    let n = spec.grid.n();
    let shape = spec.grid.shape();
    // per-axis period: the gcd of the single-axis support (products in
    // the image algebra fill in the whole gcd lattice)
    let mut kj = Vec::with_capacity(n);
    for j in 0..n {
        let mut g: i64 = 0;
        for mj in 1..=2 * shape[j] as i64 {
            let mut m = vec![0i64; n];
            m[j] = mj;
            if !spec.psi_vanishes_at(&Monomial(m)) {
                g = num::integer::gcd(g, mj);
            }
        }
        if g == 0 {
            return Err(Error::Precondition(format!(
                "no nonvanishing single-axis degree on axis {j}"
            )));
        }
        kj.push(g);
    }
    let window: i64 = shape.iter().map(|&s| s as i64).max().unwrap_or(1) * 2;
    let mut generators: Vec<Vec<i64>> = Vec::new();
    for (j, &p) in kj.iter().enumerate() {
        let mut g = vec![0i64; n];
        g[j] = p;
        generators.push(g);
    }
    for m in degree_box(n, window) {
        if m.iter().all(|&v| v == 0) {
            continue;
        }
        if !spec.psi_vanishes_at(&Monomial(m.clone())) {
            generators.push(m);
        }
    }
    let (basis, _) = hermite_normal_form(&generators)?;
    if basis.len() != n {
        return Err(Error::Rank("support lattice is not full rank".into()));
    }
    Ok(GammaLattice { n, basis, kj })
}

// ---- module builders ----

/// Finite irreducible module for the matrix algebra.
pub fn build_finite_irreducible(d: usize, hvals: &[i64]) -> Result<AffineModule> {
    AffineModule::build_finite(d, hvals)
}

/// Truncated irreducible module for the affine algebra.
pub fn build_affine_irreducible(
    d: usize,
    hvals: &[i64],
    level: i64,
    dval: Scalar,
    depth: usize,
) -> Result<AffineModule> {
    AffineModule::build(d, HighestWeight { hvals: hvals.to_vec(), level, dval }, depth)
}

/// Tensor product of the factor modules with the loop algebra acting
/// through evaluation at the grid.
pub fn build_tensor_module(spec: &PsiFunctional, depth: usize) -> Result<TensorModule> {
    TensorModule::build(spec.clone(), depth)
}

/// The graded loop form of the tensor module with its component
/// decomposition.
pub fn build_loop_module(spec: &PsiFunctional, depth: i64) -> Result<LoopModule> {
    let gamma = compute_gamma(spec)?;
    let tensor = TensorModule::build(spec.clone(), depth.max(0) as usize)?;
    LoopModule::build(tensor, gamma, depth)
}

/// Module over the full algebra with the center acting trivially: the
/// zero-degree component of the loop form of a finite tensor module.
pub fn build_example_41(spec: &PsiFunctional, n: usize, depth: i64) -> Result<TruncatedModule> {
    if spec.is_affine() {
        return Err(Error::Domain(
            "the trivial-center family takes finite factor weights".into(),
        ));
    }
    if spec.grid.n() != n {
        return Err(Error::Dimension("grid must cover all loop axes".into()));
    }
    let sys = ToroidalRootSystem::new_type_a(spec.d, n)?;
    if spec.all_zero() {
        return Ok(TruncatedModule::Carrier(GradedCarrier::trivial(
            sys,
            spec.clone(),
            loops::CarrierKind::TrivialCenter,
        )));
    }
    let lp = build_loop_module(spec, depth)?;
    let base = vec![0i64; n];
    Ok(TruncatedModule::Carrier(lp.component(
        sys,
        loops::CarrierKind::TrivialCenter,
        &base,
    )?))
}

/// Module over the full algebra with the center acting through the
/// affine one: affine tensor factors over a grid on the non-affine axes,
/// pulled back through the center-collapsing homomorphism.
pub fn build_example_42(spec: &PsiFunctional, n: usize, depth: i64) -> Result<TruncatedModule> {
    if !spec.is_affine() {
        return Err(Error::Domain(
            "the affine-center family takes affine factor weights".into(),
        ));
    }
    if spec.grid.n() + 1 != n {
        return Err(Error::Dimension(
            "grid must cover every loop axis except the affine one".into(),
        ));
    }
    let sys = ToroidalRootSystem::new_type_a(spec.d, n)?;
    if spec.all_zero() {
        // zero level degenerates to trivial-center semantics
        return Ok(TruncatedModule::Carrier(GradedCarrier::trivial(
            sys,
            spec.clone(),
            loops::CarrierKind::AffineCenter,
        )));
    }
    let gamma = compute_gamma(spec)?;
    let tensor = TensorModule::build(spec.clone(), depth.max(0) as usize)?;
    let lp = LoopModule::build(tensor, gamma, depth)?;
    let base = vec![0i64; spec.grid.n()];
    Ok(TruncatedModule::Carrier(lp.component(
        sys,
        loops::CarrierKind::AffineCenter,
        &base,
    )?))
}

/// Twist the action through an automorphism: `x . v := A(x) . v`.
pub fn twist_module(module: TruncatedModule, auto: TauAutomorphism) -> Result<TruncatedModule> {
    if module.sys().n() != auto.n() {
        return Err(Error::SystemMismatch("twist dimension mismatch".into()));
    }
    Ok(TruncatedModule::Twisted { inner: Box::new(module), auto })
}

/// The facade over every module carrying an action of the full algebra.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum TruncatedModule {
    Carrier(GradedCarrier),
    Twisted {
        inner: Box<TruncatedModule>,
        auto: TauAutomorphism,
    },
}

impl TruncatedModule {
    pub fn sys(&self) -> &ToroidalRootSystem {
        match self {
            TruncatedModule::Carrier(c) => &c.sys,
            TruncatedModule::Twisted { inner, .. } => inner.sys(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TruncatedModule::Carrier(c) => c.dim(),
            TruncatedModule::Twisted { inner, .. } => inner.dim(),
        }
    }

    /// Apply an algebra element; the flag reports window clipping.
    pub fn apply(&self, op: &TauElement, v: &ModVec) -> Result<(ModVec, bool)> {
        match self {
            TruncatedModule::Carrier(c) => c.apply_tau(op, v),
            TruncatedModule::Twisted { inner, auto } => inner.apply(&auto.apply(op)?, v),
        }
    }

    pub fn weight_of(&self, id: usize) -> WeightVec {
        match self {
            TruncatedModule::Carrier(c) => c.weight_of(id),
            TruncatedModule::Twisted { inner, auto } => {
                let w = inner.weight_of(id);
                let sys = inner.sys();
                let d = sys.d();
                let n = sys.n();
                let vals = sys.covalues(&w);
                let c_vals: Vec<Scalar> = (0..n)
                    .map(|j| sys.pair(&w, &sys.c_vec(j + 1)))
                    .collect();
                let d_vals: Vec<Scalar> = vals[d + n..].to_vec();
                let (c2, d2) = auto.transform_covalues(&c_vals, &d_vals);
                // rebuild covalues: finite ones are untouched, the loop
                // coroot values come back from the transformed C values
                let mut out = vals.clone();
                for j in 0..n {
                    // value on alpha^v_{d+j} = C_j - beta^v
                    let beta_val = sys.pair(&w, &sys.beta_coroot());
                    out[d + j] = &c2[j] - beta_val;
                }
                out[d + n..].clone_from_slice(&d2);
                sys.weight_from_covalues(&out)
            }
        }
    }

    /// Identifier of the defining highest vector when the construction
    /// pinned one.
    pub fn highest_vector_id(&self) -> Option<usize> {
        match self {
            TruncatedModule::Carrier(c) => c.highest_vector_id(),
            TruncatedModule::Twisted { inner, .. } => inner.highest_vector_id(),
        }
    }

    pub fn summary(&self, kind: &str) -> ModuleSummary {
        let mut weight_dims: BTreeMap<WeightVec, usize> = BTreeMap::new();
        for id in 0..self.dim() {
            *weight_dims.entry(self.weight_of(id)).or_insert(0) += 1;
        }
        ModuleSummary {
            kind: kind.to_string(),
            total_dim: self.dim(),
            weight_dims: weight_dims
                .into_iter()
                .map(|(w, dim)| WeightDimEntry {
                    weight: w.coords.iter().map(scalar::to_frac_string).collect(),
                    dim,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleSummary {
    pub kind: String,
    pub total_dim: usize,
    pub weight_dims: Vec<WeightDimEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightDimEntry {
    pub weight: Vec<String>,
    pub dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::from_i64;

    fn grid1(points: &[i64]) -> PointGrid {
        PointGrid::new(vec![points.iter().map(|&p| from_i64(p)).collect()]).unwrap()
    }

    fn spec_sl2_two_points(lam: i64) -> PsiFunctional {
        PsiFunctional::new(
            1,
            grid1(&[1, -1]),
            vec![
                FactorWeight::Finite { hvals: vec![lam] },
                FactorWeight::Finite { hvals: vec![lam] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn psi_single_point_forgets_degree() {
        let spec = PsiFunctional::new(
            1,
            grid1(&[1]),
            vec![FactorWeight::Finite { hvals: vec![3] }],
        )
        .unwrap();
        for m in [-2i64, 0, 4] {
            assert_eq!(spec.psi_h(1, &Monomial(vec![m])), from_i64(3));
        }
    }

    #[test]
    fn psi_alternating_points() {
        let spec = spec_sl2_two_points(2);
        // (1 + (-1)^m) * lambda(h)
        assert_eq!(spec.psi_h(1, &Monomial(vec![0])), from_i64(4));
        assert_eq!(spec.psi_h(1, &Monomial(vec![1])), from_i64(0));
        assert_eq!(spec.psi_h(1, &Monomial(vec![2])), from_i64(4));
        assert_eq!(spec.psi_h(1, &Monomial(vec![-1])), from_i64(0));
    }

    #[test]
    fn gamma_of_alternating_spec_is_even_lattice() {
        let spec = spec_sl2_two_points(1);
        let gamma = compute_gamma(&spec).unwrap();
        assert_eq!(gamma.kj, vec![2]);
        assert_eq!(gamma.index(), 2);
        assert!(gamma.contains(&[4]));
        assert!(!gamma.contains(&[3]));
        assert_eq!(gamma.coset_reps().len(), 2);
    }

    #[test]
    fn gamma_single_point_is_everything() {
        let spec = PsiFunctional::new(
            1,
            grid1(&[5]),
            vec![FactorWeight::Finite { hvals: vec![1] }],
        )
        .unwrap();
        let gamma = compute_gamma(&spec).unwrap();
        assert_eq!(gamma.index(), 1);
        assert_eq!(gamma.kj, vec![1]);
    }

    #[test]
    fn gamma_rejects_degenerate_spec() {
        let spec = spec_sl2_two_points(0);
        assert!(matches!(compute_gamma(&spec), Err(Error::DegenerateSpec)));
    }

    #[test]
    fn psi_table_has_exact_strings() {
        let spec = spec_sl2_two_points(1);
        let table = build_psi(&spec, 1);
        for e in &table.entries {
            scalar::parse(&e.value).expect("table values are exact fractions");
        }
        let zero_deg: Vec<_> = table.entries.iter().filter(|e| e.degree == vec![0]).collect();
        assert_eq!(zero_deg.len(), 1);
        assert_eq!(zero_deg[0].value, "2");
    }

    #[test]
    fn spec_validation() {
        // wrong weight count
        assert!(PsiFunctional::new(1, grid1(&[1, 2]), vec![FactorWeight::Finite {
            hvals: vec![1]
        }])
        .is_err());
        // non-dominant
        assert!(PsiFunctional::new(1, grid1(&[1]), vec![FactorWeight::Finite {
            hvals: vec![-1]
        }])
        .is_err());
        // affine level below finite height
        assert!(PsiFunctional::new(
            1,
            grid1(&[1]),
            vec![FactorWeight::Affine { hvals: vec![2], level: 1, dval: scalar::zero() }]
        )
        .is_err());
    }
}
