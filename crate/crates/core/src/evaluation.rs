//! Evaluation of the loop algebra at a grid of points: the grid matrix
//! with its block-Vandermonde/permutation factorization, the evaluation
//! homomorphism onto finitely many copies of the matrix algebra, exact
//! preimages, and the center-collapsing homomorphism onto the affine
//! loop algebra.
//!
//! Permutations are stored as index arrays, never as dense matrices; the
//! dense product is only formed by tests.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::laurent::{self, LaurentPoly};
use crate::exact::monomial::Monomial;
use crate::exact::qmat::QMat;
use crate::exact::scalar::{self, Scalar};
use crate::tau::{MatrixG, TauElement};

/// Per-axis lists of pairwise distinct nonzero evaluation points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGrid {
    axes: Vec<Vec<Scalar>>,
}

impl PointGrid {
    pub fn new(axes: Vec<Vec<Scalar>>) -> Result<Self> {
        for (j, pts) in axes.iter().enumerate() {
            if pts.is_empty() {
                return Err(Error::InvalidGrid { axis: j });
            }
            for (i, p) in pts.iter().enumerate() {
                if p.is_zero() {
                    return Err(Error::InvalidGrid { axis: j });
                }
                if pts[..i].contains(p) {
                    return Err(Error::InvalidGrid { axis: j });
                }
            }
        }
        Ok(PointGrid { axes })
    }

    /// Skips validation; exists so the failure path of the quotient
    /// isomorphism check can be exercised on a bad grid.
    #[doc(hidden)]
    pub fn new_unchecked(axes: Vec<Vec<Scalar>>) -> Self {
        PointGrid { axes }
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<Scalar>] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn total_points(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    /// Multi-indices `(i_1..i_n)` in lexicographic order, zero-based.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        multi_indices(&self.shape())
    }

    /// `a_I^m = prod_j a_{j, i_j}^{m_j}`.
    pub fn point_power(&self, index: &[usize], m: &Monomial) -> Scalar {
        let mut acc = scalar::one();
        for (j, &i) in index.iter().enumerate() {
            if m.0[j] != 0 {
                acc *= scalar::pow_i(&self.axes[j][i], m.0[j]);
            }
        }
        acc
    }

    /// The point tuple at a multi-index.
    pub fn point(&self, index: &[usize]) -> Vec<Scalar> {
        index
            .iter()
            .enumerate()
            .map(|(j, &i)| self.axes[j][i].clone())
            .collect()
    }
}

pub fn multi_indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &nj in shape {
        let mut next = Vec::with_capacity(out.len() * nj);
        for prefix in &out {
            for i in 0..nj {
                let mut p = prefix.clone();
                p.push(i);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn lex_rank(shape: &[usize], idx: &[usize]) -> usize {
    let mut r = 0;
    for (j, &i) in idx.iter().enumerate() {
        r = r * shape[j] + i;
    }
    r
}

/// Block-diagonal factor: `count` copies of one per-axis Vandermonde
/// block down the diagonal.
#[derive(Debug, Clone)]
pub struct BlockFactor {
    pub axis: usize,
    pub block: QMat,
    pub count: usize,
}

impl BlockFactor {
    fn apply(&self, v: &[Scalar], inverse: &QMat, invert: bool, transpose: bool) -> Vec<Scalar> {
        let b = self.block.rows();
        let mut out = vec![scalar::zero(); v.len()];
        for c in 0..self.count {
            let chunk = &v[c * b..(c + 1) * b];
            let mapped: Vec<Scalar> = match (invert, transpose) {
                (false, false) => self.block.mul_vec(chunk),
                (false, true) => self.block.transpose().mul_vec(chunk),
                (true, false) => inverse.mul_vec(chunk),
                (true, true) => inverse.transpose().mul_vec(chunk),
            };
            out[c * b..(c + 1) * b].clone_from_slice(&mapped);
        }
        out
    }

    fn dense(&self) -> QMat {
        let b = self.block.rows();
        let nn = b * self.count;
        QMat::from_fn(nn, nn, |i, j| {
            if i / b == j / b {
                self.block.get(i % b, j % b).clone()
            } else {
                scalar::zero()
            }
        })
    }
}

pub fn apply_perm(p: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![scalar::zero(); v.len()];
    for (j, &pj) in p.iter().enumerate() {
        out[pj] = v[j].clone();
    }
    out
}

pub fn apply_perm_inv(p: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![scalar::zero(); v.len()];
    for (j, &pj) in p.iter().enumerate() {
        out[j] = v[pj].clone();
    }
    out
}

fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p . q)[j] = p[q[j]]
    q.iter().map(|&j| p[j]).collect()
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (j, &pj) in p.iter().enumerate() {
        out[pj] = j;
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = p[cur];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Permutation moving axis `k` of the lex order to the last (fastest)
/// slot.
fn move_axis_last(shape: &[usize], k: usize) -> Vec<usize> {
    let mut moved_shape: Vec<usize> = Vec::with_capacity(shape.len());
    for (j, &s) in shape.iter().enumerate() {
        if j != k {
            moved_shape.push(s);
        }
    }
    moved_shape.push(shape[k]);
    let mut p = vec![0; shape.iter().product()];
    for idx in multi_indices(shape) {
        let mut moved: Vec<usize> = Vec::with_capacity(idx.len());
        for (j, &i) in idx.iter().enumerate() {
            if j != k {
                moved.push(i);
            }
        }
        moved.push(idx[k]);
        p[lex_rank(shape, &idx)] = lex_rank(&moved_shape, &moved);
    }
    p
}

/// The grid matrix (rows indexed by exponents `0 <= m_j < N_j`, columns
/// by grid multi-indices, both lexicographic) and its factorization
/// `X = rowperm * B_1 * E_1 * B_2 * ... * B_n * colperm` with each `E_k`
/// a permutation and each `B_k` block-diagonal Vandermonde. Permutation
/// arrays `p` act on vectors by `out[p[j]] = in[j]`.
#[derive(Debug, Clone)]
pub struct GridMatrix {
    pub grid: PointGrid,
    x: QMat,
    row_perm: Vec<usize>,
    blocks: Vec<BlockFactor>,
    mid_perms: Vec<Vec<usize>>,
    col_perm: Vec<usize>,
    block_inverses: Vec<QMat>,
}

impl GridMatrix {
    pub fn build(grid: &PointGrid) -> Result<GridMatrix> {
        // re-validate so grids built through the hidden constructor fail
        // here rather than producing a singular matrix downstream
        PointGrid::new(grid.axes().to_vec())?;
        let shape = grid.shape();
        let n_total = grid.total_points();
        let indices = grid.indices();
        let x = QMat::from_fn(n_total, n_total, |r, c| {
            let m = Monomial(indices[r].iter().map(|&v| v as i64).collect());
            grid.point_power(&indices[c], &m)
        });

        let n = grid.n();
        let mut blocks = Vec::with_capacity(n);
        let mut block_inverses = Vec::with_capacity(n);
        let mut perms = Vec::with_capacity(n);
        for k in 0..n {
            let nk = shape[k];
            // V_k[m][i] = a_{k,i}^m
            let block = QMat::from_fn(nk, nk, |m, i| scalar::pow_i(&grid.axes()[k][i], m as i64));
            let inv = block.inverse().ok_or(Error::InvalidGrid { axis: k })?;
            blocks.push(BlockFactor { axis: k, block, count: n_total / nk });
            block_inverses.push(inv);
            perms.push(move_axis_last(&shape, k));
        }
        let row_perm = invert_perm(&perms[0]);
        let mut mid_perms = Vec::with_capacity(n.saturating_sub(1));
        for k in 0..n - 1 {
            mid_perms.push(compose_perm(&perms[k], &invert_perm(&perms[k + 1])));
        }
        let col_perm = perms[n - 1].clone();
        Ok(GridMatrix {
            grid: grid.clone(),
            x,
            row_perm,
            blocks,
            mid_perms,
            col_perm,
            block_inverses,
        })
    }

    pub fn matrix(&self) -> &QMat {
        &self.x
    }

    pub fn size(&self) -> usize {
        self.grid.total_points()
    }

    pub fn blocks(&self) -> &[BlockFactor] {
        &self.blocks
    }

    pub fn row_perm(&self) -> &[usize] {
        &self.row_perm
    }

    pub fn mid_perms(&self) -> &[Vec<usize>] {
        &self.mid_perms
    }

    pub fn col_perm(&self) -> &[usize] {
        &self.col_perm
    }

    /// Determinant through the factorization: block determinants times
    /// permutation signs.
    pub fn det_factored(&self) -> Scalar {
        let mut det = scalar::one();
        for b in &self.blocks {
            det *= scalar::pow_i(&b.block.det(), b.count as i64);
        }
        let mut sign = perm_sign(&self.row_perm) * perm_sign(&self.col_perm);
        for p in &self.mid_perms {
            sign *= perm_sign(p);
        }
        det * scalar::from_i64(sign)
    }

    /// Dense product of all recorded factors; tests compare this against
    /// the directly built matrix.
    pub fn dense_factor_product(&self) -> QMat {
        let nn = self.size();
        let mut acc = QMat::identity(nn);
        for (k, b) in self.blocks.iter().enumerate() {
            acc = if k == 0 { b.dense() } else { acc.mul(&b.dense()) };
            if k < self.mid_perms.len() {
                // acc * E_k where E[p[j]][j] = 1: (acc E)[r][j] = acc[r][p[j]]
                let p = &self.mid_perms[k];
                let mut out = QMat::zero(nn, nn);
                for r in 0..nn {
                    for (c, &pc) in p.iter().enumerate() {
                        *out.get_mut(r, c) = acc.get(r, pc).clone();
                    }
                }
                acc = out;
            }
        }
        let mut out = QMat::zero(nn, nn);
        for r in 0..nn {
            for c in 0..nn {
                *out.get_mut(r, c) = acc.get(r, self.col_perm[c]).clone();
            }
        }
        acc = out;
        let mut rowed = QMat::zero(nn, nn);
        for r in 0..nn {
            for c in 0..nn {
                *rowed.get_mut(self.row_perm[r], c) = acc.get(r, c).clone();
            }
        }
        rowed
    }

    /// Solve `X c = y` through the factors.
    pub fn solve_factored(&self, y: &[Scalar]) -> Vec<Scalar> {
        let mut v = apply_perm_inv(&self.row_perm, y);
        for (k, b) in self.blocks.iter().enumerate() {
            v = b.apply(&v, &self.block_inverses[k], true, false);
            if k < self.mid_perms.len() {
                v = apply_perm_inv(&self.mid_perms[k], v.as_slice());
            }
        }
        apply_perm_inv(&self.col_perm, &v)
    }

    /// Solve `X^T u = y` through the factors.
    pub fn solve_transposed_factored(&self, y: &[Scalar]) -> Vec<Scalar> {
        let mut v = apply_perm(&self.col_perm, y);
        for (k, b) in self.blocks.iter().enumerate().rev() {
            v = b.apply(&v, &self.block_inverses[k], true, true);
            if k > 0 {
                v = apply_perm(&self.mid_perms[k - 1], &v);
            }
        }
        apply_perm(&self.row_perm, &v)
    }

    /// Fraction-free dense solve of `X^T u = y`; the oracle for the
    /// factored path.
    pub fn solve_transposed_dense(&self, y: &[Scalar]) -> Option<Vec<Scalar>> {
        self.x.transpose().solve_fraction_free(y)
    }
}

/// The evaluation homomorphism attached to a grid.
#[derive(Debug, Clone)]
pub struct EvalHom {
    pub grid: PointGrid,
    indices: Vec<Vec<usize>>,
}

impl EvalHom {
    pub fn new(grid: PointGrid) -> Self {
        let indices = grid.indices();
        EvalHom { grid, indices }
    }

    pub fn copies(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    /// `X x t^m  |->  (a_I^m X)_I`, extended linearly over terms.
    pub fn apply(&self, x: &BTreeMap<Monomial, MatrixG>, size: usize) -> Vec<MatrixG> {
        let mut out = vec![MatrixG::zero(size); self.copies()];
        for (m, mat) in x {
            for (slot, idx) in self.indices.iter().enumerate() {
                let c = self.grid.point_power(idx, m);
                out[slot] = out[slot].add(&mat.scale(&c));
            }
        }
        out
    }

    pub fn apply_tau_g_part(&self, x: &TauElement) -> Vec<MatrixG> {
        self.apply(x.g_part(), x.size)
    }

    /// Exact preimage supported on the exponent box `0 <= m_j < N_j`.
    pub fn preimage(
        &self,
        gm: &GridMatrix,
        target: &[MatrixG],
        size: usize,
    ) -> BTreeMap<Monomial, MatrixG> {
        assert_eq!(target.len(), self.copies());
        let n_total = self.copies();
        let exponents = gm.grid.indices();
        let mut out: BTreeMap<Monomial, MatrixG> = BTreeMap::new();
        for p in 0..size {
            for q in 0..size {
                let y: Vec<Scalar> = (0..n_total).map(|i| target[i].get(p, q)).collect();
                if y.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let u = gm.solve_transposed_factored(&y);
                for (r, coeff) in u.into_iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let m = Monomial(exponents[r].iter().map(|&v| v as i64).collect());
                    out.entry(m)
                        .or_insert_with(|| MatrixG::zero(size))
                        .add_entry(p, q, &coeff);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Reduce a matrix-valued Laurent element modulo the grid ideal,
    /// entry by entry.
    pub fn reduce_mod_ideal(
        &self,
        x: &BTreeMap<Monomial, MatrixG>,
        size: usize,
    ) -> Result<BTreeMap<Monomial, MatrixG>> {
        let mut per_entry: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
        for (m, mat) in x {
            for (&(i, j), c) in mat.entries() {
                per_entry
                    .entry((i, j))
                    .or_insert_with(|| LaurentPoly::zero(self.grid.n()))
                    .add_term(m.clone(), c.clone());
            }
        }
        let mut out: BTreeMap<Monomial, MatrixG> = BTreeMap::new();
        for ((i, j), poly) in per_entry {
            let red = laurent::reduce_mod_grid(&poly, self.grid.axes())?;
            for (m, c) in red.terms() {
                out.entry(m.clone())
                    .or_insert_with(|| MatrixG::zero(size))
                    .add_entry(i, j, c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// True when evaluation modulo the grid ideal is an isomorphism onto the
/// product: the grid matrix is invertible, evaluation is insensitive to
/// reduction on a spanning sample, and the dimension count matches.
pub fn quotient_iso_check(grid: &PointGrid, size: usize) -> bool {
    let Ok(gm) = GridMatrix::build(grid) else {
        return false;
    };
    if gm.matrix().det().is_zero() {
        return false;
    }
    let hom = EvalHom::new(PointGrid { axes: grid.axes().to_vec() });
    let bound: i64 = grid.shape().iter().map(|&s| s as i64).max().unwrap_or(1) + 1;
    let mono_samples: Vec<Monomial> = crate::tau::degree_box(grid.n(), bound)
        .into_iter()
        .step_by(3)
        .map(Monomial)
        .collect();
    let x = MatrixG::elementary(size, 0, size - 1);
    for m in mono_samples {
        let mut elt = BTreeMap::new();
        elt.insert(m, x.clone());
        let direct = hom.apply(&elt, size);
        let Ok(reduced) = hom.reduce_mod_ideal(&elt, size) else {
            return false;
        };
        if direct != hom.apply(&reduced, size) {
            return false;
        }
    }
    grid.total_points() == gm.size()
}

/// Element of the affine loop algebra extended by derivations: matrix
/// terms carry the full multidegree with the first axis the affine one;
/// central terms are supported on degrees with zero first coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLoopElement {
    pub size: usize,
    pub n: usize,
    pub g: BTreeMap<Monomial, MatrixG>,
    pub c1: BTreeMap<Monomial, Scalar>,
    pub d: Vec<Scalar>,
}

impl AffineLoopElement {
    pub fn zero(size: usize, n: usize) -> Self {
        AffineLoopElement {
            size,
            n,
            g: BTreeMap::new(),
            c1: BTreeMap::new(),
            d: vec![scalar::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_empty() && self.c1.is_empty() && self.d.iter().all(|c| c.is_zero())
    }

    pub fn add_g(&mut self, m: Monomial, x: &MatrixG) {
        if x.is_zero() {
            return;
        }
        match self.g.get_mut(&m) {
            Some(e) => {
                *e = e.add(x);
                if e.is_zero() {
                    self.g.remove(&m);
                }
            }
            None => {
                self.g.insert(m, x.clone());
            }
        }
    }

    pub fn add_c1(&mut self, m: Monomial, c: &Scalar) {
        debug_assert_eq!(m.0[0], 0, "central terms live at affine degree zero");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.c1.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &AffineLoopElement) -> AffineLoopElement {
        let mut out = self.clone();
        for (m, x) in &rhs.g {
            out.add_g(m.clone(), x);
        }
        for (m, c) in &rhs.c1 {
            out.add_c1(m.clone(), c);
        }
        for (a, b) in out.d.iter_mut().zip(&rhs.d) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> AffineLoopElement {
        if c.is_zero() {
            return AffineLoopElement::zero(self.size, self.n);
        }
        AffineLoopElement {
            size: self.size,
            n: self.n,
            g: self.g.iter().map(|(m, x)| (m.clone(), x.scale(c))).collect(),
            c1: self.c1.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
            d: self.d.iter().map(|v| v * c).collect(),
        }
    }

    /// Bracket of the affine algebra tensored with the remaining loop
    /// variables: the affine cocycle fires on the first axis only.
    pub fn bracket(&self, rhs: &AffineLoopElement) -> AffineLoopElement {
        let mut out = AffineLoopElement::zero(self.size, self.n);
        for (r, x) in &self.g {
            for (s, y) in &rhs.g {
                let m = r + s;
                out.add_g(m.clone(), &x.bracket(y));
                if m.0[0] == 0 && r.0[0] != 0 {
                    let c = x.trace_form(y) * scalar::from_i64(r.0[0]);
                    out.add_c1(m, &c);
                }
            }
        }
        for (i, di) in self.d.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for (s, y) in &rhs.g {
                let f = di * scalar::from_i64(s.0[i]);
                if !f.is_zero() {
                    out.add_g(s.clone(), &y.scale(&f));
                }
            }
            for (s, c) in &rhs.c1 {
                let f = di * scalar::from_i64(s.0[i]);
                if !f.is_zero() {
                    out.add_c1(s.clone(), &(c * &f));
                }
            }
        }
        for (j, dj) in rhs.d.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            for (r, x) in &self.g {
                let f = dj * scalar::from_i64(r.0[j]);
                if !f.is_zero() {
                    out.add_g(r.clone(), &x.scale(&-f));
                }
            }
            for (r, c) in &self.c1 {
                let f = dj * scalar::from_i64(r.0[j]);
                if !f.is_zero() {
                    out.add_c1(r.clone(), &-(c * &f));
                }
            }
        }
        out
    }
}

/// The homomorphism collapsing the center onto the affine one: identity
/// on matrix terms under `X x t^m -> (X x t_1^{m_1}) x t^{(m_2..m_n)}`,
/// identity on derivations, `t^m K_1 -> C_1 x t^m` when `m_1 = 0`, and
/// zero on the rest of the center.
pub fn phi_prime(x: &TauElement) -> AffineLoopElement {
    let mut out = AffineLoopElement::zero(x.size, x.n);
    for (m, mat) in x.g_terms() {
        out.add_g(m.clone(), mat);
    }
    for (m, coeffs) in x.z.terms() {
        if m.0[0] == 0 && !coeffs[0].is_zero() {
            out.add_c1(m.clone(), &coeffs[0]);
        }
    }
    out.d = x.d.clone();
    out
}
