//! The toroidal Lie algebra: traceless matrices tensored with Laurent
//! monomials, the canonical-form center, degree derivations, and the
//! two-cocycle bracket. Root spaces and sl2 triples attached to real
//! roots live here too.
//!
//! Matrices are kept sparse; basis brackets touch one or two entries and
//! the exhaustive Jacobi sweeps lean on that.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::monomial::Monomial;
use crate::exact::scalar::{self, Scalar};
use crate::root_data::{CoweightVec, ToroidalRootSystem};

/// Traceless square matrix over the exact scalar, sparse storage.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatrixG {
    pub size: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl MatrixG {
    pub fn zero(size: usize) -> Self {
        MatrixG { size, entries: BTreeMap::new() }
    }

    /// `E_{ij}`, zero-based slots.
    pub fn elementary(size: usize, i: usize, j: usize) -> Self {
        assert!(i < size && j < size);
        let mut m = Self::zero(size);
        m.set(i, j, scalar::one());
        m
    }

    /// `h_i = E_{ii} - E_{i+1,i+1}` for `1 <= i <= size-1`.
    pub fn cartan(size: usize, i: usize) -> Self {
        assert!((1..size).contains(&i));
        let mut m = Self::zero(size);
        m.set(i - 1, i - 1, scalar::one());
        m.set(i, i, -scalar::one());
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    pub fn add(&self, rhs: &MatrixG) -> MatrixG {
        debug_assert_eq!(self.size, rhs.size);
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_entry(i, j, v);
        }
        out
    }

    pub fn sub(&self, rhs: &MatrixG) -> MatrixG {
        self.add(&rhs.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> MatrixG {
        if c.is_zero() {
            return MatrixG::zero(self.size);
        }
        MatrixG {
            size: self.size,
            entries: self.entries.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MatrixG) -> MatrixG {
        debug_assert_eq!(self.size, rhs.size);
        let mut out = MatrixG::zero(self.size);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..=(k, usize::MAX)) {
                out.add_entry(i, j, &(a * b));
            }
        }
        out
    }

    pub fn bracket(&self, rhs: &MatrixG) -> MatrixG {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn transpose(&self) -> MatrixG {
        MatrixG {
            size: self.size,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    /// Invariant form `(X, Y) = tr(XY)`.
    pub fn trace_form(&self, rhs: &MatrixG) -> Scalar {
        let mut acc = scalar::zero();
        for (&(i, j), a) in &self.entries {
            if let Some(b) = rhs.entries.get(&(j, i)) {
                acc += a * b;
            }
        }
        acc
    }
}

impl fmt::Display for MatrixG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), v) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*E[{},{}]", scalar::to_frac_string(v), i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Element of the center in canonical form: for each nonzero degree `m`
/// the coefficient on the pivot axis (the largest axis with `m_i != 0`)
/// is eliminated through `sum_i m_i t^m K_i = 0`; degree-zero
/// coefficients are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CenterElement {
    pub n: usize,
    terms: BTreeMap<Monomial, Vec<Scalar>>,
}

impl CenterElement {
    pub fn zero(n: usize) -> Self {
        CenterElement { n, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Vec<Scalar>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial, axis: usize) -> Scalar {
        self.terms
            .get(m)
            .map(|v| v[axis].clone())
            .unwrap_or_else(scalar::zero)
    }

    fn insert_canonical(&mut self, m: Monomial, mut coeffs: Vec<Scalar>) {
        debug_assert_eq!(coeffs.len(), self.n);
        if let Some(p) = m.pivot_axis() {
            if !coeffs[p].is_zero() {
                let f = coeffs[p].clone() / scalar::from_i64(m.0[p]);
                for (i, c) in coeffs.iter_mut().enumerate() {
                    *c -= &f * scalar::from_i64(m.0[i]);
                }
                debug_assert!(coeffs[p].is_zero());
            }
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                for (e, c) in existing.iter_mut().zip(&coeffs) {
                    *e += c;
                }
                if existing.iter().all(|c| c.is_zero()) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeffs);
            }
        }
    }

    pub fn add_term(&mut self, m: Monomial, axis: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let mut coeffs = vec![scalar::zero(); self.n];
        coeffs[axis] = c;
        self.insert_canonical(m, coeffs);
    }

    pub fn add(&self, rhs: &CenterElement) -> CenterElement {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, coeffs) in &rhs.terms {
            out.insert_canonical(m.clone(), coeffs.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CenterElement {
        if c.is_zero() {
            return CenterElement::zero(self.n);
        }
        CenterElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }
}

/// Canonicalize a raw list of `(degree, axis, coefficient)` center terms.
pub fn canonicalize_center(
    n: usize,
    raw: impl IntoIterator<Item = (Monomial, usize, Scalar)>,
) -> CenterElement {
    let mut out = CenterElement::zero(n);
    for (m, axis, c) in raw {
        out.add_term(m, axis, c);
    }
    out
}

/// Element of the toroidal algebra: matrix part, center part, derivation
/// part. Zero exactly when all three parts vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauElement {
    pub n: usize,
    pub size: usize,
    g: BTreeMap<Monomial, MatrixG>,
    pub z: CenterElement,
    pub d: Vec<Scalar>,
}

impl TauElement {
    pub fn zero(size: usize, n: usize) -> Self {
        TauElement {
            n,
            size,
            g: BTreeMap::new(),
            z: CenterElement::zero(n),
            d: vec![scalar::zero(); n],
        }
    }

    pub fn from_matrix(x: MatrixG, m: Monomial, n: usize) -> Self {
        debug_assert_eq!(m.len(), n);
        debug_assert!(x.trace().is_zero(), "matrix part must be traceless");
        let mut out = Self::zero(x.size, n);
        if !x.is_zero() {
            out.g.insert(m, x);
        }
        out
    }

    pub fn center_term(size: usize, n: usize, m: Monomial, axis: usize, c: Scalar) -> Self {
        let mut out = Self::zero(size, n);
        out.z.add_term(m, axis, c);
        out
    }

    pub fn derivation(size: usize, n: usize, axis: usize) -> Self {
        let mut out = Self::zero(size, n);
        out.d[axis] = scalar::one();
        out
    }

    pub fn g_terms(&self) -> impl Iterator<Item = (&Monomial, &MatrixG)> {
        self.g.iter()
    }

    pub fn g_part(&self) -> &BTreeMap<Monomial, MatrixG> {
        &self.g
    }

    pub fn add_g_term(&mut self, m: Monomial, x: &MatrixG) {
        if x.is_zero() {
            return;
        }
        match self.g.get_mut(&m) {
            Some(existing) => {
                for (&(i, j), v) in &x.entries {
                    existing.add_entry(i, j, v);
                }
                if existing.is_zero() {
                    self.g.remove(&m);
                }
            }
            None => {
                self.g.insert(m, x.clone());
            }
        }
    }

    pub fn add_g_term_owned(&mut self, m: Monomial, x: MatrixG) {
        if x.is_zero() {
            return;
        }
        match self.g.get_mut(&m) {
            Some(existing) => {
                for (&(i, j), v) in &x.entries {
                    existing.add_entry(i, j, v);
                }
                if existing.is_zero() {
                    self.g.remove(&m);
                }
            }
            None => {
                self.g.insert(m, x);
            }
        }
    }

    /// In-place `self += c * rhs`.
    pub fn add_assign_scaled(&mut self, rhs: &TauElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!((self.n, self.size), (rhs.n, rhs.size));
        for (m, x) in &rhs.g {
            self.add_g_term(m.clone(), &x.scale(c));
        }
        for (m, coeffs) in rhs.z.terms() {
            for (axis, v) in coeffs.iter().enumerate() {
                if !v.is_zero() {
                    self.z.add_term(m.clone(), axis, v * c);
                }
            }
        }
        for (a, b) in self.d.iter_mut().zip(&rhs.d) {
            *a += b * c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_empty() && self.z.is_zero() && self.d.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &TauElement) -> TauElement {
        debug_assert_eq!((self.n, self.size), (rhs.n, rhs.size));
        let mut out = self.clone();
        for (m, x) in &rhs.g {
            out.add_g_term(m.clone(), x);
        }
        out.z = out.z.add(&rhs.z);
        for (a, b) in out.d.iter_mut().zip(&rhs.d) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &TauElement) -> TauElement {
        self.add(&rhs.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> TauElement {
        if c.is_zero() {
            return TauElement::zero(self.size, self.n);
        }
        TauElement {
            n: self.n,
            size: self.size,
            g: self.g.iter().map(|(m, x)| (m.clone(), x.scale(c))).collect(),
            z: self.z.scale(c),
            d: self.d.iter().map(|x| x * c).collect(),
        }
    }

    /// The bracket:
    /// `[X(r), Y(s)] = [X,Y](r+s) + (X,Y) sum_i r_i t^{r+s} K_i`,
    /// the center central in the non-derivation part, and derivations
    /// acting by degree on both other parts.
    pub fn bracket(&self, rhs: &TauElement) -> Result<TauElement> {
        if self.n != rhs.n || self.size != rhs.size {
            return Err(Error::SystemMismatch(format!(
                "bracket of (size {}, n={}) with (size {}, n={})",
                self.size, self.n, rhs.size, rhs.n
            )));
        }
        let mut out = TauElement::zero(self.size, self.n);
        for (r, x) in &self.g {
            for (s, y) in &rhs.g {
                let m = r + s;
                let b = x.bracket(y);
                if !b.is_zero() {
                    out.add_g_term(m.clone(), &b);
                }
                let c = x.trace_form(y);
                if !c.is_zero() {
                    for (i, &ri) in r.0.iter().enumerate() {
                        if ri != 0 {
                            out.z.add_term(m.clone(), i, &c * scalar::from_i64(ri));
                        }
                    }
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
                    out.add_g_term(s.clone(), &y.scale(&f));
                }
            }
            for (s, coeffs) in rhs.z.terms() {
                let f = di * scalar::from_i64(s.0[i]);
                if f.is_zero() {
                    continue;
                }
                for (axis, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out.z.add_term(s.clone(), axis, c * &f);
                    }
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
                    out.add_g_term(r.clone(), &x.scale(&-f));
                }
            }
            for (r, coeffs) in self.z.terms() {
                let f = dj * scalar::from_i64(r.0[j]);
                if f.is_zero() {
                    continue;
                }
                for (axis, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out.z.add_term(r.clone(), axis, -(c * &f));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TauElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, x) in &self.g {
            parts.push(format!("({})*{}", x, m));
        }
        for (m, coeffs) in self.z.terms() {
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!("{}*{}K{}", scalar::to_frac_string(c), m, i + 1));
                }
            }
        }
        for (i, c) in self.d.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*d{}", scalar::to_frac_string(c), i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An sl2 (or affine sl2) triple attached to a real root.
#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub e: TauElement,
    pub f: TauElement,
    pub h: TauElement,
    pub h_coweight: CoweightVec,
}

fn ensure_toroidal(sys: &ToroidalRootSystem) -> Result<()> {
    if sys.n() < 2 {
        return Err(Error::Precondition(
            "the toroidal algebra needs at least two loop variables".into(),
        ));
    }
    Ok(())
}

/// Realize a coweight inside the zero root space: finite coroots as
/// Cartan matrices, `alpha^v_{d+j} = K_j - beta^v`, derivations as
/// themselves.
pub fn coweight_to_tau(sys: &ToroidalRootSystem, h: &CoweightVec) -> TauElement {
    let d = sys.d();
    let n = sys.n();
    let size = d + 1;
    let mut out = TauElement::zero(size, n);
    let mut loop_total = scalar::zero();
    for j in 1..=n {
        loop_total += &h.coords[d + j - 1];
    }
    let mut mat = MatrixG::zero(size);
    for i in 1..=d {
        let c = &h.coords[i - 1] - &loop_total * sys.label_b(i).clone().recip();
        if !c.is_zero() {
            mat = mat.add(&MatrixG::cartan(size, i).scale(&c));
        }
    }
    if !mat.is_zero() {
        out.add_g_term(Monomial::zero(n), &mat);
    }
    for j in 1..=n {
        let c = h.coords[d + j - 1].clone();
        out.z.add_term(Monomial::zero(n), j - 1, c);
    }
    for i in 1..=n {
        out.d[i - 1] = h.coords[d + n + i - 1].clone();
    }
    out
}

/// Exact basis of the root space of `alpha + delta_m`; `finite = None`
/// selects the null (or zero) direction. A finite part that is not a
/// root yields an empty basis.
pub fn root_space(
    sys: &ToroidalRootSystem,
    finite: Option<&[i64]>,
    m: &[i64],
) -> Result<Vec<TauElement>> {
    ensure_toroidal(sys)?;
    let d = sys.d();
    let n = sys.n();
    let size = d + 1;
    let mono = Monomial(m.to_vec());
    match finite {
        Some(coeffs) if coeffs.iter().any(|&c| c != 0) => {
            match sys.finite_root_index(coeffs) {
                Some(idx) => {
                    let (i, j) = sys.finite_roots()[idx].matrix_slot;
                    Ok(vec![TauElement::from_matrix(
                        MatrixG::elementary(size, i, j),
                        mono,
                        n,
                    )])
                }
                None => Ok(Vec::new()),
            }
        }
        _ if mono.is_zero() => {
            let mut basis = Vec::new();
            for i in 1..=d {
                basis.push(TauElement::from_matrix(MatrixG::cartan(size, i), mono.clone(), n));
            }
            for i in 0..n {
                basis.push(TauElement::center_term(size, n, mono.clone(), i, scalar::one()));
            }
            for i in 0..n {
                basis.push(TauElement::derivation(size, n, i));
            }
            Ok(basis)
        }
        _ => {
            let mut basis = Vec::new();
            for i in 1..=d {
                basis.push(TauElement::from_matrix(MatrixG::cartan(size, i), mono.clone(), n));
            }
            let pivot = mono.pivot_axis().expect("nonzero degree");
            for axis in 0..n {
                if axis != pivot {
                    basis.push(TauElement::center_term(
                        size,
                        n,
                        mono.clone(),
                        axis,
                        scalar::one(),
                    ));
                }
            }
            Ok(basis)
        }
    }
}

/// The affine sl2 copy `X_alpha x t^m, Y_alpha x t^{-m}, gamma^v`, with
/// the pairing normalized to `(X_alpha, Y_alpha) = 2/(t_alpha, t_alpha)`.
pub fn sl2_triple(sys: &ToroidalRootSystem, alpha: &[i64], m: &[i64]) -> Result<Sl2Triple> {
    ensure_toroidal(sys)?;
    let gamma = sys.real_root(alpha, m)?;
    let n = sys.n();
    let size = sys.d() + 1;
    let (i, j) = sys.finite_roots()[gamma.alpha].matrix_slot;
    let alpha_w = sys.finite_root_weight(gamma.alpha);
    let norm = sys.form_dual(&alpha_w, &alpha_w);
    let e_mat = MatrixG::elementary(size, i, j);
    let f_raw = MatrixG::elementary(size, j, i);
    let target = scalar::from_i64(2) / norm;
    let current = e_mat.trace_form(&f_raw);
    let f_mat = f_raw.scale(&(target / current));
    let e = TauElement::from_matrix(e_mat, Monomial(m.to_vec()), n);
    let f = TauElement::from_matrix(f_mat, Monomial(m.iter().map(|x| -x).collect()), n);
    let h = e.bracket(&f)?;
    let h_coweight = sys.coroot(&gamma);
    Ok(Sl2Triple { e, f, h, h_coweight })
}

/// Labeled basis of the algebra restricted to `|degree|_inf <= bound`.
pub fn tau_basis(sys: &ToroidalRootSystem, bound: i64) -> Result<Vec<(String, TauElement)>> {
    ensure_toroidal(sys)?;
    let d = sys.d();
    let n = sys.n();
    let size = d + 1;
    let mut out = Vec::new();
    for m in degree_box(n, bound) {
        let mono = Monomial(m);
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    out.push((
                        format!("E[{},{}]x{}", i + 1, j + 1, mono),
                        TauElement::from_matrix(MatrixG::elementary(size, i, j), mono.clone(), n),
                    ));
                }
            }
        }
        for i in 1..=d {
            out.push((
                format!("h{}x{}", i, mono),
                TauElement::from_matrix(MatrixG::cartan(size, i), mono.clone(), n),
            ));
        }
        let pivot = mono.pivot_axis();
        for axis in 0..n {
            if pivot.is_none() || pivot != Some(axis) {
                out.push((
                    format!("{}K{}", mono, axis + 1),
                    TauElement::center_term(size, n, mono.clone(), axis, scalar::one()),
                ));
            }
        }
    }
    for i in 0..n {
        out.push((format!("d{}", i + 1), TauElement::derivation(size, n, i)));
    }
    Ok(out)
}

/// All degree vectors with sup norm at most `bound`, lexicographic.
pub fn degree_box(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for v in -bound..=bound {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// First antisymmetry violation over the labeled basis, if any.
pub fn antisymmetry_witness(basis: &[(String, TauElement)]) -> Result<Option<(usize, usize)>> {
    for (i, (_, x)) in basis.iter().enumerate() {
        for (j, (_, y)) in basis.iter().enumerate().skip(i) {
            let a = x.bracket(y)?;
            let b = y.bracket(x)?;
            if !a.add(&b).is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// First Jacobi violation over ordered triples `i <= j <= k`. Together
/// with antisymmetry this covers all triples.
pub fn jacobi_witness(basis: &[(String, TauElement)]) -> Result<Option<(usize, usize, usize)>> {
    let n = basis.len();
    let mut cache: Vec<Vec<TauElement>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n - i);
        for j in i..n {
            row.push(basis[i].1.bracket(&basis[j].1)?);
        }
        cache.push(row);
    }
    let one = scalar::one();
    let neg = -scalar::one();
    for i in 0..n {
        for j in i..n {
            let bij = &cache[i][j - i];
            let bij_zero = bij.is_zero();
            for k in j..n {
                let bjk = &cache[j][k - j];
                let bik = &cache[i][k - i];
                if bij_zero && bjk.is_zero() && bik.is_zero() {
                    continue;
                }
                // [[i,j],k] + [[j,k],i] - [[i,k],j]
                let mut acc = bij.bracket(&basis[k].1)?;
                acc.add_assign_scaled(&bjk.bracket(&basis[i].1)?, &one);
                acc.add_assign_scaled(&bik.bracket(&basis[j].1)?, &neg);
                if !acc.is_zero() {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// Jacobi on seeded random triples of small random elements. `Ok(count)`
/// when all pass; the first failing triple otherwise.
#[allow(clippy::type_complexity)]
pub fn jacobi_random(
    sys: &ToroidalRootSystem,
    bound: i64,
    trials: usize,
    rng: &mut impl rand::Rng,
) -> Result<std::result::Result<usize, Box<(TauElement, TauElement, TauElement)>>> {
    ensure_toroidal(sys)?;
    for _ in 0..trials {
        let x = random_element(sys, bound, rng);
        let y = random_element(sys, bound, rng);
        let z = random_element(sys, bound, rng);
        let j = x
            .bracket(&y)?
            .bracket(&z)?
            .add(&y.bracket(&z)?.bracket(&x)?)
            .add(&z.bracket(&x)?.bracket(&y)?);
        if !j.is_zero() {
            return Ok(Err(Box::new((x, y, z))));
        }
    }
    Ok(Ok(trials))
}

/// Small random element: two matrix terms, a center term and a
/// derivation with single-digit coefficients.
pub fn random_element(
    sys: &ToroidalRootSystem,
    bound: i64,
    rng: &mut impl rand::Rng,
) -> TauElement {
    let d = sys.d();
    let n = sys.n();
    let size = d + 1;
    let mut out = TauElement::zero(size, n);
    for _ in 0..2 {
        let i = rng.gen_range(0..size);
        let j = rng.gen_range(0..size);
        let c = scalar::from_i64(rng.gen_range(-3..=3i64));
        let m = Monomial((0..n).map(|_| rng.gen_range(-bound..=bound)).collect());
        if i != j {
            out.add_g_term(m, &MatrixG::elementary(size, i, j).scale(&c));
        } else if i > 0 {
            out.add_g_term(m, &MatrixG::cartan(size, i).scale(&c));
        }
    }
    let m = Monomial((0..n).map(|_| rng.gen_range(-bound..=bound)).collect());
    let axis = rng.gen_range(0..n);
    out.z.add_term(m, axis, scalar::from_i64(rng.gen_range(-3..=3i64)));
    let axis = rng.gen_range(0..n);
    out.d[axis] = scalar::from_i64(rng.gen_range(-2..=2i64));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::from_i64;
    use rand::{Rng as _, SeedableRng};

    fn sys(d: usize, n: usize) -> ToroidalRootSystem {
        ToroidalRootSystem::new_type_a(d, n).unwrap()
    }

    #[test]
    fn center_relation_kills_its_own_vector() {
        let z = canonicalize_center(
            2,
            [
                (Monomial(vec![1, 1]), 0, scalar::one()),
                (Monomial(vec![1, 1]), 1, scalar::one()),
            ],
        );
        assert!(z.is_zero());
    }

    #[test]
    fn center_degree_zero_is_unconstrained() {
        let z = canonicalize_center(3, [(Monomial(vec![0, 0, 0]), 2, scalar::one())]);
        assert!(!z.is_zero());
        assert_eq!(z.coeff(&Monomial(vec![0, 0, 0]), 2), scalar::one());
    }

    #[test]
    fn center_off_pivot_direction_survives() {
        // degree (2,0): pivot axis is the first, so the K_2 direction stays
        let m = Monomial(vec![2, 0]);
        let z = canonicalize_center(2, [(m.clone(), 1, scalar::one())]);
        assert_eq!(z.coeff(&m, 1), scalar::one());
        // and the pivot direction is eliminated entirely
        let z0 = canonicalize_center(2, [(m.clone(), 0, scalar::one())]);
        assert_eq!(z0.coeff(&m, 0), scalar::zero());
    }

    #[test]
    fn center_span_dimension_per_degree_matches_nullspace() {
        // brute force: the images of the K_i directions at a fixed nonzero
        // degree span a space of dimension n - 1
        use crate::exact::qmat::QMat;
        for m in [vec![1i64, 1, 0], vec![0, 2, -3], vec![4, 0, 0]] {
            let n = 3;
            let mono = Monomial(m);
            let mut rows = Vec::new();
            for axis in 0..n {
                let z = canonicalize_center(n, [(mono.clone(), axis, scalar::one())]);
                let row: Vec<Scalar> = (0..n).map(|a| z.coeff(&mono, a)).collect();
                rows.push(row);
            }
            let mat = QMat::from_fn(n, n, |i, j| rows[i][j].clone());
            assert_eq!(mat.rank(), n - 1);
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let m = Monomial(vec![2, 3]);
        let z = canonicalize_center(2, [(m.clone(), 0, from_i64(5)), (m.clone(), 1, from_i64(7))]);
        let again = canonicalize_center(
            2,
            z.terms()
                .flat_map(|(mm, v)| {
                    v.iter()
                        .enumerate()
                        .map(move |(i, c)| (mm.clone(), i, c.clone()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        );
        assert_eq!(z, again);
    }

    #[test]
    fn sl2_bracket_recovers_coroot() {
        let s = sys(1, 2);
        let t = sl2_triple(&s, &[1], &[3, -2]).unwrap();
        let expected = coweight_to_tau(&s, &s.coroot(&s.real_root(&[1], &[3, -2]).unwrap()));
        assert_eq!(t.h, expected);
        assert_eq!(t.h.bracket(&t.e).unwrap(), t.e.scale(&from_i64(2)));
        assert_eq!(t.h.bracket(&t.f).unwrap(), t.f.scale(&from_i64(-2)));
    }

    #[test]
    fn sl2_h_part_for_highest_root_with_unit_degree() {
        // gamma = beta + delta_1 has coroot beta^v + C_1
        let s = sys(1, 2);
        let t = sl2_triple(&s, &[1], &[1, 0]).unwrap();
        assert_eq!(t.h_coweight, s.beta_coroot().add(&s.c_vec(1)));
    }

    #[test]
    fn sl2_triples_over_all_roots_small_degrees() {
        let s = sys(2, 2);
        for root in s.finite_roots().iter() {
            for m in degree_box(2, 2) {
                let t = sl2_triple(&s, &root.coeffs, &m).unwrap();
                assert_eq!(t.e.bracket(&t.f).unwrap(), t.h);
                assert_eq!(t.h.bracket(&t.e).unwrap(), t.e.scale(&from_i64(2)));
                assert_eq!(t.h.bracket(&t.f).unwrap(), t.f.scale(&from_i64(-2)));
            }
        }
    }

    #[test]
    fn bracket_of_element_with_itself_vanishes() {
        let s = sys(2, 2);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x = random_element(&s, 2, &mut rng);
            assert!(x.bracket(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn center_is_central_in_non_derivation_part() {
        let z = TauElement::center_term(2, 2, Monomial(vec![1, 0]), 1, scalar::one());
        let x = TauElement::from_matrix(MatrixG::elementary(2, 0, 1), Monomial(vec![-1, 2]), 2);
        assert!(z.bracket(&x).unwrap().is_zero());
        let z2 = TauElement::center_term(2, 2, Monomial(vec![0, 3]), 0, scalar::one());
        assert!(z.bracket(&z2).unwrap().is_zero());
    }

    #[test]
    fn derivations_measure_degree() {
        let d1 = TauElement::derivation(2, 2, 0);
        let x = TauElement::from_matrix(MatrixG::elementary(2, 0, 1), Monomial(vec![3, -1]), 2);
        assert_eq!(d1.bracket(&x).unwrap(), x.scale(&from_i64(3)));
        let zk = TauElement::center_term(2, 2, Monomial(vec![2, 1]), 0, scalar::one());
        let d2 = TauElement::derivation(2, 2, 1);
        assert_eq!(d2.bracket(&zk).unwrap(), zk.scale(&from_i64(1)));
    }

    #[test]
    fn root_space_dimensions() {
        let s = sys(1, 2);
        assert_eq!(root_space(&s, Some(&[1]), &[0, 0]).unwrap().len(), 1);
        // nonzero null root: d + n - 1 = 2
        assert_eq!(root_space(&s, None, &[1, 0]).unwrap().len(), 2);
        // zero root space: d + 2n = 5
        assert_eq!(root_space(&s, None, &[0, 0]).unwrap().len(), 5);
        // not a root
        assert!(root_space(&s, Some(&[2]), &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn bracket_respects_grading_on_root_spaces() {
        // every enumerated root pair with |m| <= 2: the bracket of the
        // root spaces lands at the degree sum, with the finite parts
        // adding inside the finite system or dying
        let s = sys(1, 2);
        let mut cases: Vec<(Option<Vec<i64>>, Vec<i64>)> = Vec::new();
        for m in degree_box(2, 2) {
            for root in s.finite_roots() {
                cases.push((Some(root.coeffs.clone()), m.clone()));
            }
            cases.push((None, m.clone()));
        }
        for (fa, ma) in &cases {
            for (fb, mb) in &cases {
                let ba = root_space(&s, fa.as_deref(), ma).unwrap();
                let bb = root_space(&s, fb.as_deref(), mb).unwrap();
                for x in &ba {
                    for y in &bb {
                        let br = x.bracket(y).unwrap();
                        let deg: Vec<i64> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                        for (m, _) in br.g_terms() {
                            assert_eq!(m.0, deg);
                        }
                        for (m, _) in br.z.terms() {
                            assert_eq!(m.0, deg);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_form_invariance_random() {
        // ([z,x],y) + (x,[z,y]) = 0
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let rand_mat = |rng: &mut rand_chacha::ChaCha12Rng| {
            let mut m = MatrixG::zero(3);
            for _ in 0..3 {
                let i = rng.gen_range(0..3usize);
                let j = rng.gen_range(0..3usize);
                m.add_entry(i, j, &from_i64(rng.gen_range(-2..=2i64)));
            }
            m
        };
        for _ in 0..50 {
            let z = rand_mat(&mut rng);
            let x = rand_mat(&mut rng);
            let y = rand_mat(&mut rng);
            let lhs = z.bracket(&x).trace_form(&y) + x.trace_form(&z.bracket(&y));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn jacobi_small_exhaustive() {
        let s = sys(1, 2);
        let basis = tau_basis(&s, 1).unwrap();
        assert!(antisymmetry_witness(&basis).unwrap().is_none());
        assert!(jacobi_witness(&basis).unwrap().is_none());
    }

    #[test]
    fn tau_requires_two_loop_variables() {
        let s = sys(1, 1);
        assert!(root_space(&s, Some(&[1]), &[0]).is_err());
    }

    #[test]
    fn system_mismatch_is_reported() {
        let x = TauElement::zero(2, 2);
        let y = TauElement::zero(3, 2);
        assert!(matches!(x.bracket(&y), Err(Error::SystemMismatch(_))));
    }
}
