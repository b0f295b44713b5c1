//! Truncated irreducible highest weight modules over the affine algebra
//! (the finite algebra is the depth-zero case), built constructively:
//! each weight layer of the induced module is spanned by ordered lowering
//! words, the contravariant form is evaluated exactly by straightening,
//! and the irreducible quotient is the span of a pivot subset of words
//! with projection through the Gram matrix.
//!
//! The lowering alphabet consists of strictly lower-triangular elementary
//! matrices at loop degree zero and arbitrary matrix slots (plus Cartan
//! directions) at negative loop degrees. Words are kept sorted; products
//! are straightened recursively through commutators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::qmat::QMat;
use crate::exact::scalar::{self, Scalar};
use crate::tau::MatrixG;

/// Matrix slot of a lowering generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    /// elementary matrix `E_{ij}`, zero-based
    E(u8, u8),
    /// Cartan direction `h_i`, `1 <= i <= d`
    H(u8),
}

/// Lowering generator `kind x t_1^{-k}`; `k = 0` only for strictly
/// lower-triangular elementary slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LowGen {
    pub k: u32,
    pub kind: GenKind,
}

pub type Word = Vec<LowGen>;
pub type LinComb = BTreeMap<Word, Scalar>;

fn lincomb_add(acc: &mut LinComb, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w) {
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

fn lincomb_extend(acc: &mut LinComb, other: LinComb, factor: &Scalar) {
    if factor.is_zero() {
        return;
    }
    for (w, c) in other {
        lincomb_add(acc, w, c * factor);
    }
}

/// Element of the affine algebra: matrix terms keyed by loop degree plus
/// central and derivation coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffElt {
    pub size: usize,
    pub terms: BTreeMap<i64, MatrixG>,
    pub c: Scalar,
    pub d: Scalar,
}

impl AffElt {
    pub fn zero(size: usize) -> Self {
        AffElt { size, terms: BTreeMap::new(), c: scalar::zero(), d: scalar::zero() }
    }

    pub fn from_matrix(x: MatrixG, k: i64) -> Self {
        let mut out = Self::zero(x.size);
        if !x.is_zero() {
            out.terms.insert(k, x);
        }
        out
    }

    pub fn central(size: usize, c: Scalar) -> Self {
        let mut out = Self::zero(size);
        out.c = c;
        out
    }

    pub fn derivation(size: usize) -> Self {
        let mut out = Self::zero(size);
        out.d = scalar::one();
        out
    }

    pub fn add_term(&mut self, k: i64, x: &MatrixG) {
        if x.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e = e.add(x);
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, x.clone());
            }
        }
    }

    pub fn add(&self, rhs: &AffElt) -> AffElt {
        let mut out = self.clone();
        for (&k, x) in &rhs.terms {
            out.add_term(k, x);
        }
        out.c += &rhs.c;
        out.d += &rhs.d;
        out
    }

    pub fn scale(&self, c: &Scalar) -> AffElt {
        if c.is_zero() {
            return AffElt::zero(self.size);
        }
        AffElt {
            size: self.size,
            terms: self.terms.iter().map(|(&k, x)| (k, x.scale(c))).collect(),
            c: &self.c * c,
            d: &self.d * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.c.is_zero() && self.d.is_zero()
    }
}

/// Highest weight data: values on the finite Cartan directions, the
/// central charge, and the derivation eigenvalue of the top vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighestWeight {
    pub hvals: Vec<i64>,
    pub level: i64,
    pub dval: Scalar,
}

fn gen_matrix(size: usize, g: &LowGen) -> MatrixG {
    match g.kind {
        GenKind::E(i, j) => MatrixG::elementary(size, i as usize, j as usize),
        GenKind::H(i) => MatrixG::cartan(size, i as usize),
    }
}

/// Affine simple-root coordinates `(n_0, n_1..n_d)` of the weight drop a
/// generator causes. Always componentwise nonnegative.
pub fn gen_nvec(d: usize, g: &LowGen) -> Vec<i64> {
    let k = g.k as i64;
    let mut nv = vec![k; d + 1];
    nv[0] = k;
    match g.kind {
        GenKind::E(i, j) => {
            let (i, j) = (i as usize, j as usize);
            if i > j {
                for item in nv.iter_mut().take(i + 1).skip(j + 1) {
                    *item += 1;
                }
            } else {
                for item in nv.iter_mut().take(j + 1).skip(i + 1) {
                    *item -= 1;
                }
            }
        }
        GenKind::H(_) => {}
    }
    debug_assert!(nv.iter().all(|&v| v >= 0));
    nv
}

/// Split a traceless matrix at loop degree `-k` into lowering
/// generators; valid when the pair really is lowering.
fn decompose_lowering(x: &MatrixG, k: u32) -> Vec<(LowGen, Scalar)> {
    let mut out = Vec::new();
    let mut diag = vec![scalar::zero(); x.size];
    for (&(i, j), c) in x.entries() {
        if i == j {
            diag[i] = c.clone();
        } else {
            debug_assert!(k > 0 || i > j, "raising slot in lowering decomposition");
            out.push((LowGen { k, kind: GenKind::E(i as u8, j as u8) }, c.clone()));
        }
    }
    let mut prefix = scalar::zero();
    for i in 1..x.size {
        prefix += &diag[i - 1];
        if !prefix.is_zero() {
            debug_assert!(k > 0, "diagonal lowering only at negative loop degree");
            out.push((LowGen { k, kind: GenKind::H(i as u8) }, prefix.clone()));
        }
    }
    out
}

/// Value of a diagonal matrix on the weight shift carried by a word.
fn word_shift_on_diag(w: &[LowGen], diag: &MatrixG) -> Scalar {
    let mut acc = scalar::zero();
    for g in w {
        if let GenKind::E(i, j) = g.kind {
            acc += diag.get(i as usize, i as usize) - diag.get(j as usize, j as usize);
        }
    }
    acc
}

fn hw_value_on_diag(hw: &HighestWeight, diag: &MatrixG) -> Scalar {
    // diag = sum_i a_i h_i with a_i the prefix sums of the entries
    let mut prefix = scalar::zero();
    let mut acc = scalar::zero();
    for i in 1..diag.size {
        prefix += diag.get(i - 1, i - 1);
        if !prefix.is_zero() {
            acc += &prefix * scalar::from_i64(hw.hvals[i - 1]);
        }
    }
    acc
}

/// Multiply a lowering generator into a sorted word.
fn mul_gen(size: usize, g: LowGen, w: &[LowGen]) -> LinComb {
    let mut out = LinComb::new();
    if w.is_empty() || g <= w[0] {
        let mut nw = Vec::with_capacity(w.len() + 1);
        nw.push(g);
        nw.extend_from_slice(w);
        out.insert(nw, scalar::one());
        return out;
    }
    let h = w[0];
    let rest = &w[1..];
    // g h rest = h (g rest) + [g, h] rest
    for (u, c) in mul_gen(size, g, rest) {
        for (u2, c2) in mul_gen(size, h, &u) {
            lincomb_add(&mut out, u2, c2 * &c);
        }
    }
    let bracket = gen_matrix(size, &g).bracket(&gen_matrix(size, &h));
    if !bracket.is_zero() {
        for (bg, c) in decompose_lowering(&bracket, g.k + h.k) {
            for (u, c2) in mul_gen(size, bg, rest) {
                lincomb_add(&mut out, u, c2 * &c);
            }
        }
    }
    out
}

/// Act by a matrix at a loop degree on `word . v`.
fn act_matrix(size: usize, hw: &HighestWeight, x: &MatrixG, k: i64, w: &[LowGen]) -> LinComb {
    let mut out = LinComb::new();
    if x.is_zero() {
        return out;
    }
    if k < 0 {
        for (g, c) in decompose_lowering(x, (-k) as u32) {
            lincomb_extend(&mut out, mul_gen(size, g, w), &c);
        }
        return out;
    }
    if k > 0 {
        return act_raising(size, hw, x, k, w);
    }
    let mut lower = MatrixG::zero(size);
    let mut diag = MatrixG::zero(size);
    let mut upper = MatrixG::zero(size);
    for (&(i, j), c) in x.entries() {
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => lower.add_entry(i, j, c),
            std::cmp::Ordering::Equal => diag.add_entry(i, j, c),
            std::cmp::Ordering::Less => upper.add_entry(i, j, c),
        }
    }
    if !lower.is_zero() {
        for (g, c) in decompose_lowering(&lower, 0) {
            lincomb_extend(&mut out, mul_gen(size, g, w), &c);
        }
    }
    if !diag.is_zero() {
        let eig = hw_value_on_diag(hw, &diag) + word_shift_on_diag(w, &diag);
        lincomb_add(&mut out, w.to_vec(), eig);
    }
    if !upper.is_zero() {
        for (u, c) in act_raising(size, hw, &upper, 0, w) {
            lincomb_add(&mut out, u, c);
        }
    }
    out
}

/// Push a raising term through the word: it kills the top vector and
/// commutes past the head generator otherwise.
fn act_raising(size: usize, hw: &HighestWeight, x: &MatrixG, k: i64, w: &[LowGen]) -> LinComb {
    let mut out = LinComb::new();
    if w.is_empty() {
        return out;
    }
    let h = w[0];
    let rest = &w[1..];
    for (u, c) in act_matrix(size, hw, x, k, rest) {
        for (u2, c2) in mul_gen(size, h, &u) {
            lincomb_add(&mut out, u2, c2 * &c);
        }
    }
    let hk = h.k as i64;
    let hy = gen_matrix(size, &h);
    let br = x.bracket(&hy);
    if !br.is_zero() {
        for (u, c) in act_matrix(size, hw, &br, k - hk, rest) {
            lincomb_add(&mut out, u, c);
        }
    }
    if k == hk && k != 0 {
        // affine cocycle: k (x, y) C, the center acting by the level
        let coeff = scalar::from_i64(k) * x.trace_form(&hy) * scalar::from_i64(hw.level);
        lincomb_add(&mut out, rest.to_vec(), coeff);
    }
    out
}

/// Act by a general element on a linear combination of words.
pub fn act_elt(size: usize, hw: &HighestWeight, x: &AffElt, lin: &LinComb) -> LinComb {
    let mut out = LinComb::new();
    for (w, coeff) in lin {
        for (&k, mat) in &x.terms {
            lincomb_extend(&mut out, act_matrix(size, hw, mat, k, w), coeff);
        }
        if !x.c.is_zero() {
            lincomb_add(&mut out, w.clone(), &x.c * scalar::from_i64(hw.level) * coeff);
        }
        if !x.d.is_zero() {
            let depth: i64 = w.iter().map(|g| g.k as i64).sum();
            let eig = &hw.dval - scalar::from_i64(depth);
            lincomb_add(&mut out, w.clone(), &x.d * eig * coeff);
        }
    }
    out
}

/// Contravariant pairing `<w1 . v, w2 . v>` normalized by `<v, v> = 1`:
/// transposed generators of `w1` are pushed through `w2` and the
/// coefficient of the empty word is extracted.
pub fn pair_words(size: usize, hw: &HighestWeight, w1: &[LowGen], w2: &[LowGen]) -> Scalar {
    let mut state = LinComb::new();
    state.insert(w2.to_vec(), scalar::one());
    for g in w1 {
        let mat = gen_matrix(size, g).transpose();
        let mut next = LinComb::new();
        for (u, c) in &state {
            lincomb_extend(&mut next, act_matrix(size, hw, &mat, g.k as i64, u), c);
        }
        state = next;
        if state.is_empty() {
            return scalar::zero();
        }
    }
    state.remove(&Vec::new()).unwrap_or_else(scalar::zero)
}

/// One weight layer of the truncated irreducible quotient.
#[derive(Debug, Clone)]
pub struct Layer {
    pub nvec: Vec<i64>,
    pub words: Vec<Word>,
    pub gram: QMat,
    pub chosen: Vec<usize>,
    gram_chosen_inv: QMat,
}

impl Layer {
    pub fn dim(&self) -> usize {
        self.chosen.len()
    }

    /// Quotient coordinates of a combination of this layer's words.
    pub fn project(&self, lin: &LinComb) -> Vec<Scalar> {
        let mut coeffs = vec![scalar::zero(); self.words.len()];
        for (w, c) in lin {
            let idx = self
                .words
                .binary_search(w)
                .expect("straightened word missing from layer enumeration");
            coeffs[idx] += c;
        }
        let rhs: Vec<Scalar> = self
            .chosen
            .iter()
            .map(|&i| {
                let mut acc = scalar::zero();
                for (j, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        acc += self.gram.get(i, j) * c;
                    }
                }
                acc
            })
            .collect();
        self.gram_chosen_inv.mul_vec(&rhs)
    }

    /// Lift quotient coordinates back to a word combination.
    pub fn lift(&self, coords: &[Scalar]) -> LinComb {
        let mut lin = LinComb::new();
        for (s, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                lin.insert(self.words[self.chosen[s]].clone(), c.clone());
            }
        }
        lin
    }
}

/// Result of applying an operator: quotient coordinates per target layer
/// plus a flag raised when part of the output left the truncation
/// window. A clipped result certifies nothing about vanishing.
#[derive(Debug, Clone, Default)]
pub struct Applied {
    pub parts: BTreeMap<Vec<i64>, Vec<Scalar>>,
    pub clipped: bool,
}

impl Applied {
    pub fn is_genuinely_zero(&self) -> bool {
        self.parts.is_empty() && !self.clipped
    }
}

/// Truncated irreducible highest weight module: layers keyed by the
/// affine simple coordinates of the weight drop, complete through
/// `depth` in the imaginary direction.
#[derive(Debug, Clone)]
pub struct AffineModule {
    pub d: usize,
    pub size: usize,
    pub hw: HighestWeight,
    pub depth: usize,
    pub layers: BTreeMap<Vec<i64>, Layer>,
}

impl AffineModule {
    pub fn build(d: usize, hw: HighestWeight, depth: usize) -> Result<AffineModule> {
        if hw.hvals.len() != d {
            return Err(Error::Dimension("wrong number of Cartan values".into()));
        }
        if hw.hvals.iter().any(|&v| v < 0) {
            return Err(Error::Domain("highest weight not dominant".into()));
        }
        let finite_sum: i64 = hw.hvals.iter().sum();
        if hw.level < finite_sum {
            return Err(Error::Domain(
                "value on the added affine coroot is negative".into(),
            ));
        }
        let size = d + 1;
        let mut layers = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut seen = BTreeSet::new();
        let origin = vec![0i64; d + 1];
        queue.push_back(origin.clone());
        seen.insert(origin);
        while let Some(nv) = queue.pop_front() {
            let Some(layer) = build_layer(size, &hw, &nv) else {
                continue;
            };
            if layer.dim() == 0 {
                continue;
            }
            layers.insert(nv.clone(), layer);
            for i in 0..=d {
                let mut next = nv.clone();
                next[i] += 1;
                if next[0] <= depth as i64 && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(AffineModule { d, size, hw, depth, layers })
    }

    /// Finite irreducible module: depth zero, the level pinned so the
    /// added affine direction is dominant-flat.
    pub fn build_finite(d: usize, hvals: &[i64]) -> Result<AffineModule> {
        let level: i64 = hvals.iter().sum();
        Self::build(
            d,
            HighestWeight { hvals: hvals.to_vec(), level, dval: scalar::zero() },
            0,
        )
    }

    pub fn dim(&self) -> usize {
        self.layers.values().map(Layer::dim).sum()
    }

    pub fn layer_dims(&self) -> BTreeMap<Vec<i64>, usize> {
        self.layers.iter().map(|(k, l)| (k.clone(), l.dim())).collect()
    }

    /// Apply an algebra element to a vector supported on one layer.
    pub fn apply(&self, x: &AffElt, src: &[i64], coords: &[Scalar]) -> Applied {
        let layer = &self.layers[src];
        let lin = layer.lift(coords);
        let out = act_elt(self.size, &self.hw, x, &lin);
        self.collect(out)
    }

    /// Group straightened words by layer and project each group.
    pub fn collect(&self, out: LinComb) -> Applied {
        let mut grouped: BTreeMap<Vec<i64>, LinComb> = BTreeMap::new();
        let mut clipped = false;
        for (w, c) in out {
            let mut nv = vec![0i64; self.d + 1];
            for g in &w {
                for (a, b) in nv.iter_mut().zip(gen_nvec(self.d, g)) {
                    *a += b;
                }
            }
            if nv[0] > self.depth as i64 {
                clipped = true;
                continue;
            }
            lincomb_add(grouped.entry(nv).or_default(), w, c);
        }
        let mut parts = BTreeMap::new();
        for (nv, lin) in grouped {
            if lin.is_empty() {
                continue;
            }
            // a missing layer inside the window is a genuine zero: the
            // quotient has no vectors at that weight
            if let Some(layer) = self.layers.get(&nv) {
                let coords = layer.project(&lin);
                if coords.iter().any(|c| !c.is_zero()) {
                    parts.insert(nv, coords);
                }
            }
        }
        Applied { parts, clipped }
    }

    /// `(finite simple coordinates of the finite drop, imaginary depth)`
    /// of a layer.
    pub fn layer_weight_drop(&self, nvec: &[i64]) -> (Vec<i64>, i64) {
        let n0 = nvec[0];
        let finite: Vec<i64> = (1..=self.d).map(|i| nvec[i] - n0).collect();
        (finite, n0)
    }
}

fn enumerate_gens(d: usize, budget: &[i64]) -> Vec<LowGen> {
    let size = d + 1;
    let mut gens = Vec::new();
    let kmax = budget[0].max(0) as u32;
    for k in 0..=kmax {
        if k == 0 {
            for i in 0..size {
                for j in 0..i {
                    gens.push(LowGen { k: 0, kind: GenKind::E(i as u8, j as u8) });
                }
            }
        } else {
            for i in 0..size {
                for j in 0..size {
                    if i != j {
                        gens.push(LowGen { k, kind: GenKind::E(i as u8, j as u8) });
                    }
                }
            }
            for i in 1..=d {
                gens.push(LowGen { k, kind: GenKind::H(i as u8) });
            }
        }
    }
    gens.retain(|g| {
        let nv = gen_nvec(d, g);
        nv.iter().zip(budget).all(|(a, b)| a <= b)
    });
    gens.sort();
    gens
}

/// All sorted words whose generator drops sum to `target`.
pub fn enumerate_words(d: usize, target: &[i64]) -> Vec<Word> {
    fn rec(
        gens: &[LowGen],
        nvecs: &[Vec<i64>],
        pos: usize,
        remaining: &mut Vec<i64>,
        current: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if pos == gens.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        let nv = &nvecs[pos];
        let mut mult = 0i64;
        loop {
            rec(gens, nvecs, pos + 1, remaining, current, out);
            if remaining.iter().zip(nv).all(|(r, g)| r >= g) {
                for (r, g) in remaining.iter_mut().zip(nv) {
                    *r -= g;
                }
                current.push(gens[pos]);
                mult += 1;
            } else {
                break;
            }
        }
        for _ in 0..mult {
            current.pop();
        }
        for (r, g) in remaining.iter_mut().zip(nv) {
            *r += g * mult;
        }
    }
    let gens = enumerate_gens(d, target);
    let nvecs: Vec<Vec<i64>> = gens.iter().map(|g| gen_nvec(d, g)).collect();
    let mut out = Vec::new();
    let mut remaining = target.to_vec();
    let mut current = Vec::new();
    rec(&gens, &nvecs, 0, &mut remaining, &mut current, &mut out);
    out.sort();
    out
}

/// Values on the finite simple coroots of `lambda - drop` for a finite
/// weight given by coroot values and a simple-root drop.
pub fn finite_covalues_of_drop(
    sys: &crate::root_data::ToroidalRootSystem,
    hvals: &[i64],
    finite_drop: &[i64],
) -> Vec<Scalar> {
    let d = sys.d();
    let mut vals: Vec<Scalar> = hvals.iter().map(|&v| scalar::from_i64(v)).collect();
    for (i, val) in vals.iter_mut().enumerate().take(d) {
        for (j, &nj) in finite_drop.iter().enumerate() {
            let c = Scalar::from_integer(sys.extended_cartan()[(i, j)].clone());
            *val -= c * scalar::from_i64(nj);
        }
    }
    vals
}

fn build_layer(size: usize, hw: &HighestWeight, nvec: &[i64]) -> Option<Layer> {
    let d = size - 1;
    if nvec.iter().all(|&v| v == 0) {
        let gram = QMat::identity(1);
        return Some(Layer {
            nvec: nvec.to_vec(),
            words: vec![Vec::new()],
            gram: gram.clone(),
            chosen: vec![0],
            gram_chosen_inv: gram,
        });
    }
    let words = enumerate_words(d, nvec);
    if words.is_empty() {
        return None;
    }
    let r = words.len();
    let mut gram = QMat::zero(r, r);
    for i in 0..r {
        for j in i..r {
            let v = pair_words(size, hw, &words[i], &words[j]);
            *gram.get_mut(i, j) = v.clone();
            *gram.get_mut(j, i) = v;
        }
    }
    let chosen = gram.pivot_columns();
    if chosen.is_empty() {
        return None;
    }
    let p = chosen.len();
    let minor = QMat::from_fn(p, p, |a, b| gram.get(chosen[a], chosen[b]).clone());
    let gram_chosen_inv = minor
        .inverse()
        .expect("induced form on the quotient layer is nondegenerate");
    Some(Layer { nvec: nvec.to_vec(), words, gram, chosen, gram_chosen_inv })
}
