//! Exact checks over carrier modules: the module axiom on operator
//! pairs, local nilpotence of real-root vectors, highest vector search
//! by joint kernels, and the behavior of graded central operators.
//!
//! Applications are cached per (elementary operator, basis vector);
//! window-clipped results make a check vacuous, never a pass or a zero.

use std::collections::{BTreeMap, HashMap};

use num::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exact::monomial::Monomial;
use crate::exact::qmat::QMat;
use crate::exact::scalar::{self, Scalar};
use crate::root_data::WeightVec;
use crate::tau::{degree_box, MatrixG, TauElement};

use super::loops::ModVec;
use super::TruncatedModule;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum OpSig {
    Mat { m: Vec<i64>, i: usize, j: usize },
    Cart { m: Vec<i64>, i: usize },
    Z { m: Vec<i64>, axis: usize },
    D { axis: usize },
}

fn decompose(op: &TauElement) -> Vec<(OpSig, Scalar)> {
    let mut out = Vec::new();
    for (m, x) in op.g_terms() {
        let mut diag = vec![scalar::zero(); x.size];
        for (&(i, j), c) in x.entries() {
            if i == j {
                diag[i] = c.clone();
            } else {
                out.push((OpSig::Mat { m: m.0.clone(), i, j }, c.clone()));
            }
        }
        let mut prefix = scalar::zero();
        for i in 1..x.size {
            prefix += &diag[i - 1];
            if !prefix.is_zero() {
                out.push((OpSig::Cart { m: m.0.clone(), i }, prefix.clone()));
            }
        }
    }
    for (m, coeffs) in op.z.terms() {
        for (axis, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push((OpSig::Z { m: m.0.clone(), axis }, c.clone()));
            }
        }
    }
    for (axis, c) in op.d.iter().enumerate() {
        if !c.is_zero() {
            out.push((OpSig::D { axis }, c.clone()));
        }
    }
    out
}

fn sig_element(sig: &OpSig, size: usize, n: usize) -> TauElement {
    match sig {
        OpSig::Mat { m, i, j } => {
            TauElement::from_matrix(MatrixG::elementary(size, *i, *j), Monomial(m.clone()), n)
        }
        OpSig::Cart { m, i } => {
            TauElement::from_matrix(MatrixG::cartan(size, *i), Monomial(m.clone()), n)
        }
        OpSig::Z { m, axis } => {
            TauElement::center_term(size, n, Monomial(m.clone()), *axis, scalar::one())
        }
        OpSig::D { axis } => TauElement::derivation(size, n, *axis),
    }
}

/// Cache of elementary-operator applications to basis vectors.
pub struct OpCache<'a> {
    module: &'a TruncatedModule,
    size: usize,
    n: usize,
    map: HashMap<(OpSig, usize), (ModVec, bool)>,
}

impl<'a> OpCache<'a> {
    pub fn new(module: &'a TruncatedModule) -> Self {
        let sys = module.sys();
        OpCache { module, size: sys.d() + 1, n: sys.n(), map: HashMap::new() }
    }

    fn apply_sig(&mut self, sig: &OpSig, id: usize) -> Result<(ModVec, bool)> {
        if let Some(hit) = self.map.get(&(sig.clone(), id)) {
            return Ok(hit.clone());
        }
        let elt = sig_element(sig, self.size, self.n);
        let mut unit = ModVec::new();
        unit.insert(id, scalar::one());
        let out = self.module.apply(&elt, &unit)?;
        self.map.insert((sig.clone(), id), out.clone());
        Ok(out)
    }

    /// Apply a general element through the cache.
    pub fn apply(&mut self, op: &TauElement, v: &ModVec) -> Result<(ModVec, bool)> {
        let parts = decompose(op);
        let mut out = ModVec::new();
        let mut clipped = false;
        for (&id, coeff) in v {
            for (sig, c) in &parts {
                let (res, cl) = self.apply_sig(sig, id)?;
                clipped |= cl;
                for (id2, c2) in res {
                    let e = out.entry(id2).or_insert_with(scalar::zero);
                    *e += c2 * c * coeff;
                    if e.is_zero() {
                        out.remove(&id2);
                    }
                }
            }
        }
        Ok((out, clipped))
    }
}

// ---- module axiom ----

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub instances_checked: usize,
    pub instances_vacuous: usize,
    pub failures: Vec<AxiomWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomWitness {
    pub op_a: String,
    pub op_b: String,
    pub basis_index: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `[a, b] v = a (b v) - b (a v)` over all ordered pairs from `ops` and
/// all basis vectors; any window exit makes the instance vacuous.
pub fn module_axiom_check(
    module: &TruncatedModule,
    ops: &[(String, TauElement)],
) -> Result<AxiomReport> {
    let mut cache = OpCache::new(module);
    let dim = module.dim();
    let mut report = AxiomReport {
        pairs_checked: 0,
        instances_checked: 0,
        instances_vacuous: 0,
        failures: Vec::new(),
    };
    for (la, a) in ops {
        for (lb, b) in ops {
            let bracket = a.bracket(b)?;
            report.pairs_checked += 1;
            for id in 0..dim {
                let mut unit = ModVec::new();
                unit.insert(id, scalar::one());
                let (bv, c1) = cache.apply(b, &unit)?;
                let (abv, c2) = cache.apply(a, &bv)?;
                let (av, c3) = cache.apply(a, &unit)?;
                let (bav, c4) = cache.apply(b, &av)?;
                let (cv, c5) = cache.apply(&bracket, &unit)?;
                if c1 || c2 || c3 || c4 || c5 {
                    report.instances_vacuous += 1;
                    continue;
                }
                report.instances_checked += 1;
                let mut lhs = abv;
                for (k, c) in bav {
                    let e = lhs.entry(k).or_insert_with(scalar::zero);
                    *e -= c;
                    if e.is_zero() {
                        lhs.remove(&k);
                    }
                }
                if lhs != cv {
                    report.failures.push(AxiomWitness {
                        op_a: la.clone(),
                        op_b: lb.clone(),
                        basis_index: id,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The weight-module axiom: every Cartan direction acts diagonally on
/// each basis vector by the pairing with its recorded weight. Returns
/// the first violating (basis index, direction label) if any.
pub fn weight_module_check(module: &TruncatedModule) -> Result<Option<(usize, String)>> {
    let sys = module.sys().clone();
    let d = sys.d();
    let n = sys.n();
    let mut cartan = Vec::new();
    for i in 1..=d + n {
        let cw = sys.simple_coroot(i);
        cartan.push((format!("alpha^v_{i}"), cw.clone(), crate::tau::coweight_to_tau(&sys, &cw)));
    }
    for j in 1..=n {
        let cw = sys.d_vec(j);
        cartan.push((format!("d_{j}"), cw.clone(), crate::tau::coweight_to_tau(&sys, &cw)));
    }
    for id in 0..module.dim() {
        let w = module.weight_of(id);
        let mut unit = ModVec::new();
        unit.insert(id, scalar::one());
        for (label, cw, op) in &cartan {
            let (out, clipped) = module.apply(op, &unit)?;
            debug_assert!(!clipped, "Cartan action never leaves the window");
            let eig = sys.pair(&w, cw);
            let mut expect = ModVec::new();
            if !num::Zero::is_zero(&eig) {
                expect.insert(id, eig);
            }
            if out != expect {
                return Ok(Some((id, label.clone())));
            }
        }
    }
    Ok(None)
}

// ---- integrability ----

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub enum NilpotenceOutcome {
    /// the power at which the vector died
    Nilpotent(usize),
    /// iteration left the window after this many applications
    WindowExit(usize),
    /// still nonzero inside the window at the power cap
    Failure,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegrabilityReport {
    pub ops_sampled: usize,
    pub vectors_checked: usize,
    pub outcomes: BTreeMap<String, usize>,
    pub failures: Vec<(String, usize)>,
}

impl IntegrabilityReport {
    pub fn all_nilpotent_within_window(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Apply each sampled real-root vector repeatedly to each basis vector
/// until it dies, exits the window, or hits the power cap.
pub fn check_integrability(
    module: &TruncatedModule,
    degree_bound: i64,
    max_power: usize,
) -> Result<IntegrabilityReport> {
    let sys = module.sys();
    let size = sys.d() + 1;
    let n = sys.n();
    let mut ops = Vec::new();
    for root in sys.finite_roots() {
        let (i, j) = root.matrix_slot;
        for m in degree_box(n, degree_bound) {
            ops.push((
                format!("E[{},{}]x{:?}", i + 1, j + 1, m),
                TauElement::from_matrix(MatrixG::elementary(size, i, j), Monomial(m), n),
            ));
        }
    }
    let mut report = IntegrabilityReport {
        ops_sampled: ops.len(),
        vectors_checked: 0,
        outcomes: BTreeMap::new(),
        failures: Vec::new(),
    };
    let mut cache = OpCache::new(module);
    for (label, op) in &ops {
        for id in 0..module.dim() {
            report.vectors_checked += 1;
            let mut v = ModVec::new();
            v.insert(id, scalar::one());
            let mut outcome = NilpotenceOutcome::Failure;
            for power in 1..=max_power {
                let (next, clipped) = cache.apply(op, &v)?;
                if clipped {
                    outcome = NilpotenceOutcome::WindowExit(power);
                    break;
                }
                if next.is_empty() {
                    outcome = NilpotenceOutcome::Nilpotent(power);
                    break;
                }
                v = next;
            }
            let key = match outcome {
                NilpotenceOutcome::Nilpotent(_) => "nilpotent",
                NilpotenceOutcome::WindowExit(_) => "window_exit",
                NilpotenceOutcome::Failure => "failure",
            };
            *report.outcomes.entry(key.to_string()).or_insert(0) += 1;
            if outcome == NilpotenceOutcome::Failure {
                report.failures.push((label.clone(), id));
            }
        }
    }
    Ok(report)
}

/// Exact nilpotence of a single operator power on a vector, usable for
/// the highest-vector bound `k = lambda(gamma^v) + 1`.
pub fn power_kills(
    module: &TruncatedModule,
    op: &TauElement,
    v: &ModVec,
    power: usize,
) -> Result<Option<bool>> {
    let mut cur = v.clone();
    for _ in 0..power {
        let (next, clipped) = module.apply(op, &cur)?;
        if clipped {
            return Ok(None);
        }
        cur = next;
        if cur.is_empty() {
            return Ok(Some(true));
        }
    }
    Ok(Some(cur.is_empty()))
}

// ---- highest vector search ----

/// Which triangular decomposition the killed positive part comes from:
/// the affine one tensored with the remaining loop variables, or the
/// finite one tensored with everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangularSplit {
    AffinePositive,
    AffineNegative,
    FinitePositive,
    FiniteNegative,
}

/// Operators spanning the requested positive (or negative) part within a
/// degree window.
fn split_ops(module: &TruncatedModule, split: TriangularSplit, bound: i64) -> Vec<TauElement> {
    let sys = module.sys();
    let size = sys.d() + 1;
    let n = sys.n();
    let mut ops = Vec::new();
    for m in degree_box(n, bound) {
        let m0 = m[0];
        for root in sys.finite_roots() {
            let (i, j) = root.matrix_slot;
            let positive = root.is_positive();
            let include = match split {
                TriangularSplit::AffinePositive => {
                    (positive && m0 >= 0) || (!positive && m0 > 0)
                }
                TriangularSplit::AffineNegative => {
                    (!positive && m0 <= 0) || (positive && m0 < 0)
                }
                TriangularSplit::FinitePositive => positive,
                TriangularSplit::FiniteNegative => !positive,
            };
            if include {
                ops.push(TauElement::from_matrix(
                    MatrixG::elementary(size, i, j),
                    Monomial(m.clone()),
                    n,
                ));
            }
        }
        // Cartan directions at strictly positive (negative) affine degree
        let include_h = match split {
            TriangularSplit::AffinePositive => m0 > 0,
            TriangularSplit::AffineNegative => m0 < 0,
            _ => false,
        };
        if include_h {
            for i in 1..size {
                ops.push(TauElement::from_matrix(
                    MatrixG::cartan(size, i),
                    Monomial(m.clone()),
                    n,
                ));
            }
        }
    }
    ops
}

/// Search the weight spaces for a vector killed by every in-window
/// operator of the split; weights with more genuine (non-clipping)
/// constraints are tried first.
pub fn witness_highest_vector(
    module: &TruncatedModule,
    split: TriangularSplit,
    bound: i64,
) -> Result<Option<(WeightVec, ModVec)>> {
    let ops = split_ops(module, split, bound);
    let mut by_weight: BTreeMap<WeightVec, Vec<usize>> = BTreeMap::new();
    for id in 0..module.dim() {
        by_weight.entry(module.weight_of(id)).or_default().push(id);
    }
    let mut cache = OpCache::new(module);
    // (genuine op count, weight, ids, per-op application rows)
    type Ranked = (usize, WeightVec, Vec<usize>, Vec<Vec<(ModVec, bool)>>);
    let mut ranked: Vec<Ranked> = Vec::new();
    for (w, ids) in by_weight {
        let mut genuine = 0;
        let mut app_rows = Vec::new();
        for op in &ops {
            let mut row = Vec::new();
            let mut any_clip = false;
            for &id in &ids {
                let mut unit = ModVec::new();
                unit.insert(id, scalar::one());
                let res = cache.apply(op, &unit)?;
                any_clip |= res.1;
                row.push(res);
            }
            if !any_clip {
                genuine += 1;
            }
            app_rows.push(row);
        }
        ranked.push((genuine, w, ids, app_rows));
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for (genuine, w, ids, app_rows) in ranked {
        if genuine == 0 {
            // every operator clips somewhere here: no certificate possible
            continue;
        }
        // stack the non-clipping operator images as linear constraints;
        // an operator that annihilates the whole space outright adds no
        // rows but still genuinely constrains it
        let cols = ids.len();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for row in &app_rows {
            if row.iter().any(|(_, c)| *c) {
                continue; // vacuous for this weight space
            }
            let mut targets: BTreeMap<usize, usize> = BTreeMap::new();
            for (out, _) in row {
                for &t in out.keys() {
                    let next = targets.len();
                    targets.entry(t).or_insert(next);
                }
            }
            let mut block = vec![vec![scalar::zero(); cols]; targets.len()];
            for (c, (out, _)) in row.iter().enumerate() {
                for (t, val) in out {
                    block[targets[t]][c] = val.clone();
                }
            }
            rows.extend(block);
        }
        let kernel: Option<Vec<Scalar>> = if rows.is_empty() {
            // all genuine operators vanish identically on the space
            let mut v = vec![scalar::zero(); cols];
            v[0] = scalar::one();
            Some(v)
        } else {
            let mat = QMat::from_fn(rows.len(), cols, |i, j| rows[i][j].clone());
            mat.nullspace().into_iter().next()
        };
        if let Some(kernel) = kernel {
            let mut v = ModVec::new();
            for (c, coeff) in kernel.iter().enumerate() {
                if !coeff.is_zero() {
                    v.insert(ids[c], coeff.clone());
                }
            }
            return Ok(Some((w, v)));
        }
    }
    Ok(None)
}

// ---- central operators ----

#[derive(Debug, Clone, Serialize)]
pub struct CentralEntry {
    pub degree: Vec<i64>,
    pub axis: usize,
    pub acts_nonzero: bool,
    /// kernel trivial on every window-complete weight space
    pub injective: Option<bool>,
    /// a two-sided inverse exists on the window-complete weight pairs
    pub inverse_verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralReport {
    pub entries: Vec<CentralEntry>,
    pub nonzero_directions_per_degree: BTreeMap<String, usize>,
    pub proportionality: Vec<ProportionalityEntry>,
    pub all_actions_proportional_per_degree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProportionalityEntry {
    pub degree: Vec<i64>,
    pub axis_a: usize,
    pub axis_b: usize,
    pub ratio: Option<String>,
}

impl CentralReport {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| !e.acts_nonzero)
    }
}

pub fn check_central_operators(
    module: &TruncatedModule,
    degree_bound: i64,
) -> Result<CentralReport> {
    let sys = module.sys();
    let size = sys.d() + 1;
    let n = sys.n();
    let mut by_weight: BTreeMap<WeightVec, Vec<usize>> = BTreeMap::new();
    for id in 0..module.dim() {
        by_weight.entry(module.weight_of(id)).or_default().push(id);
    }
    let weights: Vec<(WeightVec, Vec<usize>)> = by_weight.into_iter().collect();

    struct Action {
        degree: Vec<i64>,
        axis: usize,
        /// per source weight space: None when clipped somewhere, else a
        /// map (target id -> column per source position)
        blocks: Vec<Option<BTreeMap<usize, Vec<Scalar>>>>,
        nonzero: bool,
    }
    let action_of = |z: &TauElement,
                     degree: &[i64],
                     axis: usize|
     -> Result<Action> {
        let mut blocks = Vec::new();
        let mut nonzero = false;
        for (_, ids) in &weights {
            let mut block: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
            let mut clipped = false;
            for (c, &id) in ids.iter().enumerate() {
                let mut unit = ModVec::new();
                unit.insert(id, scalar::one());
                let (out, cl) = module.apply(z, &unit)?;
                clipped |= cl;
                for (t, val) in out {
                    nonzero = true;
                    block
                        .entry(t)
                        .or_insert_with(|| vec![scalar::zero(); ids.len()])[c] = val;
                }
            }
            blocks.push(if clipped { None } else { Some(block) });
        }
        Ok(Action { degree: degree.to_vec(), axis, blocks, nonzero })
    };
    let mut actions: Vec<Action> = Vec::new();
    // generic combinations of the directions at one degree; proportional
    // actions of independent nonzero elements are the observable content
    // of the one-line-per-degree statement
    let mut combo_actions: Vec<Action> = Vec::new();
    for m in degree_box(n, degree_bound) {
        let mono = Monomial(m.clone());
        let pivot = mono.pivot_axis();
        let axes: Vec<usize> = (0..n).filter(|&a| pivot != Some(a)).collect();
        for &axis in &axes {
            let z = TauElement::center_term(size, n, mono.clone(), axis, scalar::one());
            actions.push(action_of(&z, &m, axis)?);
        }
        if axes.len() >= 2 {
            for sign_flip in [false, true] {
                let mut z = TauElement::zero(size, n);
                for (pos, &axis) in axes.iter().enumerate() {
                    let c = if sign_flip && pos % 2 == 1 {
                        -scalar::one()
                    } else {
                        scalar::one()
                    };
                    z.z.add_term(mono.clone(), axis, c);
                }
                combo_actions.push(action_of(&z, &m, usize::MAX)?);
            }
        }
    }

    let mut entries = Vec::new();
    for a in &actions {
        let mut injective = None;
        let mut inverse_verified = None;
        if a.nonzero {
            let mut inj = true;
            let mut inv_ok = true;
            let mut any_pair = false;
            for (wi, block) in a.blocks.iter().enumerate() {
                let Some(block) = block else { continue };
                let cols = weights[wi].1.len();
                if block.is_empty() {
                    // z kills an entire in-window weight space: not injective
                    if cols > 0 {
                        inj = false;
                    }
                    continue;
                }
                let targets: Vec<usize> = block.keys().copied().collect();
                let mat = QMat::from_fn(targets.len(), cols, |r, c| {
                    block[&targets[r]][c].clone()
                });
                if mat.rank() < cols {
                    inj = false;
                }
                // two-sided inverse on square pieces
                if targets.len() == cols {
                    any_pair = true;
                    if let Some(t_inv) = mat.inverse() {
                        if t_inv.mul(&mat) != QMat::identity(cols) {
                            inv_ok = false;
                        }
                    } else {
                        inv_ok = false;
                    }
                }
            }
            injective = Some(inj);
            inverse_verified = if any_pair { Some(inv_ok && inj) } else { None };
        }
        entries.push(CentralEntry {
            degree: a.degree.clone(),
            axis: a.axis,
            acts_nonzero: a.nonzero,
            injective,
            inverse_verified,
        });
    }

    // proportionality between same-degree nonzero actions, sampling the
    // canonical directions and their generic combinations
    let mut proportionality = Vec::new();
    let mut all_prop = true;
    let mut per_degree: BTreeMap<String, usize> = BTreeMap::new();
    let mut grouped: BTreeMap<Vec<i64>, Vec<&Action>> = BTreeMap::new();
    for a in &actions {
        if a.nonzero {
            *per_degree.entry(format!("{:?}", a.degree)).or_insert(0) += 1;
            grouped.entry(a.degree.clone()).or_default().push(a);
        }
    }
    for a in &combo_actions {
        if a.nonzero {
            grouped.entry(a.degree.clone()).or_default().push(a);
        }
    }
    for (degree, group) in &grouped {
        for (ia, a) in group.iter().enumerate() {
            for b in group.iter().skip(ia + 1) {
                let ratio = proportionality_ratio(a.blocks.as_slice(), b.blocks.as_slice());
                if ratio.is_none() {
                    all_prop = false;
                }
                proportionality.push(ProportionalityEntry {
                    degree: degree.clone(),
                    axis_a: a.axis,
                    axis_b: b.axis,
                    ratio: ratio.map(|r| scalar::to_frac_string(&r)),
                });
            }
        }
    }
    Ok(CentralReport {
        entries,
        nonzero_directions_per_degree: per_degree,
        proportionality,
        all_actions_proportional_per_degree: all_prop,
    })
}

type ActionBlocks = [Option<BTreeMap<usize, Vec<Scalar>>>];

/// `b = ratio * a` across all window-complete blocks, when such a ratio
/// exists; the ratio is pinned on the first nonzero entry and then
/// verified globally.
fn proportionality_ratio(a: &ActionBlocks, b: &ActionBlocks) -> Option<Scalar> {
    let mut ratio: Option<Scalar> = None;
    for (ba, bb) in a.iter().zip(b) {
        let (Some(ba), Some(bb)) = (ba, bb) else { continue };
        for (t, col) in ba {
            for (c, va) in col.iter().enumerate() {
                let vb = bb.get(t).map(|v| v[c].clone()).unwrap_or_else(scalar::zero);
                if va.is_zero() {
                    if !vb.is_zero() {
                        return None;
                    }
                    continue;
                }
                let r = vb / va;
                match &ratio {
                    None => ratio = Some(r),
                    Some(existing) if *existing != r => return None,
                    _ => {}
                }
            }
        }
        // entries present only in b with zero counterpart in a
        for (t, col) in bb {
            for (c, vb) in col.iter().enumerate() {
                let va = ba.get(t).map(|v| v[c].clone()).unwrap_or_else(scalar::zero);
                if va.is_zero() && !vb.is_zero() {
                    return None;
                }
            }
        }
    }
    ratio.or_else(|| Some(scalar::zero()))
}
