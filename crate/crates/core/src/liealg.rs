//! Lie algebras presented in dual notation: a basis `e^1, ..., e^n` of `g*`
//! together with the two-forms `d e^i`.
//!
//! Brackets are recovered through `d e^k (e_i, e_j) = -e^k([e_i, e_j])`, so
//! `d e^1 = e^{23}` means `[e_2, e_3] = -e_1`. The differential extends to
//! all forms as an antiderivation and gives the Chevalley–Eilenberg complex.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exterior::{Form, FormError, IndexTuple, Vector};
use crate::matrix::{bareiss_rank, Matrix};
use crate::obstruct::{Method, ObstructionReport, Verdict};
use crate::scalar::{Field, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("d^2 e^{index} = {witness} is not zero")]
    JacobiViolated { index: usize, witness: String },
    #[error("d e^{index} must be a 2-form on {dim} dimensions")]
    BadImage { index: usize, dim: usize },
    #[error("vector has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("declared subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("declared subspace is not an ideal")]
    NotAnIdeal,
    #[error("declared subspace is not an Abelian ideal")]
    NotAbelianIdeal,
    #[error("declared ideal has dimension {found}, expected codimension one ({expected})")]
    WrongCodimension { expected: usize, found: usize },
    #[error("declared basis is linearly dependent")]
    DependentBasis,
    #[error("subspace is not invariant under ad(v)")]
    NotInvariant,
    #[error("vector lies in the declared subspace")]
    VectorInSubspace,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A Lie algebra given by the images `d e^i` of its dual basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    d_images: Vec<Form<Rational>>,
    params: BTreeMap<String, Rational>,
}

impl LieAlgebra {
    /// # Panics
    ///
    /// Panics if some image is not a 2-form on `d_images.len()` dimensions;
    /// use [`LieAlgebra::try_new`] for unchecked input.
    pub fn new(name: impl Into<String>, d_images: Vec<Form<Rational>>) -> Self {
        Self::try_new(name, d_images).expect("malformed presentation")
    }

    pub fn try_new(name: impl Into<String>, d_images: Vec<Form<Rational>>) -> Result<Self, LieError> {
        let dim = d_images.len();
        for (i, f) in d_images.iter().enumerate() {
            if f.dim() != dim || f.degree() != 2 {
                return Err(LieError::BadImage { index: i + 1, dim });
            }
        }
        Ok(LieAlgebra { name: name.into(), d_images, params: BTreeMap::new() })
    }

    pub(crate) fn with_params(name: String, d_images: Vec<Form<Rational>>, params: BTreeMap<String, Rational>) -> Self {
        LieAlgebra { name, d_images, params }
    }

    /// The Abelian algebra `R^n`.
    pub fn abelian(n: usize) -> Self {
        Self::new(format!("R{n}"), vec![Form::zero(n, 2); n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d_images.len()
    }

    pub fn d_images(&self) -> &[Form<Rational>] {
        &self.d_images
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `g ⊕ R` with the new dual basis vector `e^{n+1}` closed.
    pub fn extend_by_line(&self) -> Result<LieAlgebra, LieError> {
        let n = self.dim() + 1;
        let mut images = self.d_images.iter().map(|f| f.extend_dim(n)).collect::<Result<Vec<_>, _>>()?;
        images.push(Form::zero(n, 2));
        Ok(LieAlgebra { name: format!("{}+R", self.name), d_images: images, params: self.params.clone() })
    }

    /// Exterior derivative of a form, extended from the `d e^i` as an
    /// antiderivation.
    pub fn d<R: Ring>(&self, form: &Form<R>) -> Result<Form<R>, LieError> {
        let n = self.dim();
        if form.dim() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: form.dim() });
        }
        let k = form.degree();
        if k == n {
            // d maps into Λ^{n+1} = 0; represent the result as the zero top form.
            return Ok(Form::zero(n, n));
        }
        let images: Vec<Form<R>> = self.d_images.iter().map(|f| f.map(R::from_rational)).collect();
        let mut out = Form::zero(n, k + 1);
        for (t, c) in form.terms() {
            let idx = t.to_vec();
            for (p, &i) in idx.iter().enumerate() {
                // e^{i1..i(p-1)} ∧ d e^{ip} ∧ e^{i(p+1)..ik}, sign (-1)^p
                let left = Form::basis(n, &idx[..p])?;
                let right = Form::basis(n, &idx[p + 1..])?;
                let term = left.wedge(&images[i - 1])?.wedge(&right)?;
                let term = if p % 2 == 1 { term.neg() } else { term };
                out = out.add(&term.scale(c));
            }
        }
        Ok(out)
    }

    /// Checks `d(d e^i) = 0` for all `i` (equivalently the Jacobi identity).
    pub fn check_d_squared(&self) -> Result<(), LieError> {
        for (i, f) in self.d_images.iter().enumerate() {
            if self.dim() < 3 {
                break;
            }
            let dd = self.d(f)?;
            if !dd.is_zero() {
                return Err(LieError::JacobiViolated { index: i + 1, witness: dd.to_string() });
            }
        }
        Ok(())
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` in the lexicographic bases.
    pub fn ce_differential_matrix(&self, k: usize) -> Matrix<Rational> {
        let n = self.dim();
        let src = IndexTuple::all(n, k);
        if k >= n {
            return Matrix::zeros(0, src.len());
        }
        let dst = IndexTuple::all(n, k + 1);
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (j, t) in src.iter().enumerate() {
            let image = self.d(&Form::<Rational>::basis(n, &t.to_vec()).expect("valid tuple")).expect("dimension checked");
            for (i, u) in dst.iter().enumerate() {
                m[(i, j)] = image.coeff(*u);
            }
        }
        m
    }

    fn differential_ranks(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| bareiss_rank(&self.ce_differential_matrix(k))).collect()
    }

    /// Dimensions `(h^1, ..., h^n)` of the Lie algebra cohomology; `h^0 = 1`
    /// is omitted.
    pub fn betti(&self) -> Vec<usize> {
        let n = self.dim();
        let ranks = self.differential_ranks();
        (1..=n).map(|k| binomial(n, k) - ranks[k] - ranks[k - 1]).collect()
    }

    /// Basis of the closed `k`-forms `Z^k(g)`, in echelon normal form.
    pub fn closed_forms_basis(&self, k: usize) -> Vec<Form<Rational>> {
        let n = self.dim();
        self.ce_differential_matrix(k)
            .kernel()
            .into_iter()
            .map(|v| Form::from_coefficient_vector(n, k, &v))
            .collect()
    }

    pub fn bracket_table(&self) -> BracketTable {
        let n = self.dim();
        let mut c = vec![Rational::zero(); n * n * n];
        for (k, f) in self.d_images.iter().enumerate() {
            for (t, x) in f.terms() {
                let ij = t.to_vec();
                let (i, j) = (ij[0] - 1, ij[1] - 1);
                c[(i * n + j) * n + k] = -x.clone();
                c[(j * n + i) * n + k] = x.clone();
            }
        }
        BracketTable { n, c }
    }

    /// Dimension of the centre `{x : [x, y] = 0 for all y}`.
    pub fn centre_dim(&self) -> usize {
        let n = self.dim();
        let table = self.bracket_table();
        // x ↦ ([x, e_1], ..., [x, e_n]) as an (n*n) × n matrix
        let m = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            table.structure_constant(i, j, k).clone()
        });
        n - m.rank()
    }

    /// Dimensions of the derived series `g ⊇ [g,g] ⊇ ...`, ending at the
    /// first term that repeats (listed once).
    pub fn derived_series(&self) -> Vec<usize> {
        let n = self.dim();
        let table = self.bracket_table();
        let mut current: Vec<Vector<Rational>> = (1..=n).map(|i| Vector::basis(n, i)).collect();
        let mut dims = vec![n];
        loop {
            let mut brackets = Vec::new();
            for a in &current {
                for b in &current {
                    brackets.push(table.bracket(a, b));
                }
            }
            let next = span_basis(&brackets, n);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            current = next;
        }
    }

    /// Whether the span of `basis` is a nilpotent ideal.
    pub fn is_nilpotent_ideal(&self, basis: &[Vector<Rational>]) -> Result<bool, LieError> {
        let n = self.dim();
        self.check_vectors(basis)?;
        let table = self.bracket_table();
        let span = span_basis(basis, n);
        if span.len() != basis.len() {
            return Err(LieError::DependentBasis);
        }
        for a in &span {
            for b in &span {
                if !in_span(&span, &table.bracket(a, b)) {
                    return Err(LieError::NotASubalgebra);
                }
            }
        }
        for i in 1..=n {
            let e = Vector::basis(n, i);
            for b in &span {
                if !in_span(&span, &table.bracket(&e, b)) {
                    return Err(LieError::NotAnIdeal);
                }
            }
        }
        // lower central series of the ideal
        let mut term = span.clone();
        while !term.is_empty() {
            let mut brackets = Vec::new();
            for a in &span {
                for b in &term {
                    brackets.push(table.bracket(a, b));
                }
            }
            let next = span_basis(&brackets, n);
            if next.len() == term.len() {
                return Ok(false);
            }
            term = next;
        }
        Ok(true)
    }

    /// `tr ad(e_i) = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        let table = self.bracket_table();
        (0..self.dim()).all(|i| table.ad(i).trace().is_zero())
    }

    /// `h^2 = h^3 = 0` (entries beyond the dimension count as zero).
    pub fn is_23_trivial(&self) -> bool {
        let h = self.betti();
        h.get(1).is_none_or(|&x| x == 0) && h.get(2).is_none_or(|&x| x == 0)
    }

    pub fn cohomology_profile(&self) -> CohomologyProfile {
        CohomologyProfile { h: self.betti(), centre_dim: self.centre_dim(), unimodular: self.is_unimodular() }
    }

    /// For `v ∉ n` with `n = span(n_basis)` invariant under `ad(v)`, reports
    /// for `i = 1, 2, 3` whether the induced derivation `ad(v)` on `Λ^i n`
    /// has trivial kernel.
    pub fn ad_wedge_kernel_check(&self, v: &Vector<Rational>, n_basis: &[Vector<Rational>]) -> Result<[bool; 3], LieError> {
        let n = self.dim();
        self.check_vectors(n_basis)?;
        self.check_vectors(std::slice::from_ref(v))?;
        let table = self.bracket_table();
        let basis_mat = Matrix::from_columns(&n_basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        if basis_mat.rank() != n_basis.len() {
            return Err(LieError::DependentBasis);
        }
        if in_span(n_basis, v) && n_basis.len() < n {
            return Err(LieError::VectorInSubspace);
        }
        let m = n_basis.len();
        let mut a = Matrix::zeros(m, m);
        for (j, b) in n_basis.iter().enumerate() {
            let image = table.bracket(v, b);
            let coords = basis_mat.solve(&image.0).ok_or(LieError::NotInvariant)?;
            for (i, c) in coords.into_iter().enumerate() {
                a[(i, j)] = c;
            }
        }
        let mut out = [true; 3];
        for (slot, k) in (1..=3).enumerate() {
            if k > m {
                continue;
            }
            let d = derivation_on_wedge(&a, k);
            out[slot] = d.rank() == d.cols();
        }
        Ok(out)
    }

    fn check_vectors(&self, vs: &[Vector<Rational>]) -> Result<(), LieError> {
        for v in vs {
            if v.dim() != self.dim() {
                return Err(LieError::DimensionMismatch { expected: self.dim(), found: v.dim() });
            }
        }
        Ok(())
    }
}

/// Matrix of the derivation induced by `a` on `Λ^k` of an `m`-dimensional
/// space, in the lexicographic basis.
pub fn derivation_on_wedge<R: Ring>(a: &Matrix<R>, k: usize) -> Matrix<R> {
    let m = a.rows();
    let basis = IndexTuple::all(m, k);
    let images: Vec<Form<R>> = (0..m).map(|j| Form::one_form(&a.column(j))).collect();
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (col, t) in basis.iter().enumerate() {
        let idx = t.to_vec();
        let mut total = Form::zero(m, k);
        for p in 0..idx.len() {
            let mut acc = Form::scalar(m, R::one());
            for (q, &i) in idx.iter().enumerate() {
                let factor = if q == p { images[i - 1].clone() } else { Form::basis(m, &[i]).expect("valid index") };
                acc = acc.wedge(&factor).expect("degree within bounds");
            }
            total = total.add(&acc);
        }
        for (row, u) in basis.iter().enumerate() {
            out[(row, col)] = total.coeff(*u);
        }
    }
    out
}

/// Number of Jordan blocks of size one with eigenvalue zero:
/// `2·nullity(A) − nullity(A²)`.
pub fn jordan_size1_zero_count<F: Field>(a: &Matrix<F>) -> usize {
    let n1 = a.nullity();
    let n2 = a.mul(a).nullity();
    2 * n1 - n2
}

/// Jordan-parity test for an Abelian ideal `u` of codimension one in
/// `h = g ⊕ R`: if `ad(x)|_u` for `x ∉ u` has an odd number of size-one
/// Jordan blocks with eigenvalue zero, `h` carries no cocalibrated
/// G2-structure and `g` no half-flat SU(3)-structure.
pub fn abelian_nilradical_obstruction(g: &LieAlgebra, u_basis: &[Vector<Rational>]) -> Result<ObstructionReport, LieError> {
    let h = g.extend_by_line()?;
    let n = h.dim();
    h.check_vectors(u_basis)?;
    if u_basis.len() != n - 1 {
        return Err(LieError::WrongCodimension { expected: n - 1, found: u_basis.len() });
    }
    let span = span_basis(u_basis, n);
    if span.len() != u_basis.len() {
        return Err(LieError::DependentBasis);
    }
    let table = h.bracket_table();
    for a in u_basis {
        for b in u_basis {
            if !table.bracket(a, b).is_zero() {
                return Err(LieError::NotAbelianIdeal);
            }
        }
    }
    for i in 1..=n {
        let e = Vector::basis(n, i);
        for b in u_basis {
            if !in_span(u_basis, &table.bracket(&e, b)) {
                return Err(LieError::NotAbelianIdeal);
            }
        }
    }
    let outside = (1..=n).map(|i| Vector::basis(n, i)).find(|e| !in_span(u_basis, e)).expect("codimension one");
    let basis_mat = Matrix::from_columns(&u_basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
    let m = u_basis.len();
    let mut a = Matrix::zeros(m, m);
    for (j, b) in u_basis.iter().enumerate() {
        let coords = basis_mat.solve(&table.bracket(&outside, b).0).expect("ideal checked");
        for (i, c) in coords.into_iter().enumerate() {
            a[(i, j)] = c;
        }
    }
    let count = jordan_size1_zero_count(&a);
    let verdict = if count % 2 == 1 { Verdict::Obstructed } else { Verdict::Unknown };
    let mut report = ObstructionReport::new(verdict, Method::JordanParity);
    report.jordan_count = Some(count);
    report.note = format!(
        "ad({})|_u has {count} Jordan block(s) of size one with eigenvalue zero",
        Form::one_form(&outside.0).to_string().replace('e', "e_")
    );
    Ok(report)
}

/// Structure constants `c^k_{ij}` with `[e_i, e_j] = Σ_k c^k_{ij} e_k`
/// (0-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTable {
    n: usize,
    c: Vec<Rational>,
}

impl BracketTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn bracket(&self, x: &Vector<Rational>, y: &Vector<Rational>) -> Vector<Rational> {
        let n = self.n;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        Vector(out)
    }

    /// Matrix of `ad(e_i)` (0-based `i`).
    pub fn ad(&self, i: usize) -> Matrix<Rational> {
        Matrix::from_fn(self.n, self.n, |k, j| self.structure_constant(i, j, k).clone())
    }

    /// Whether the Jacobi identity holds on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.n;
        let e = |i| Vector::<Rational>::basis(n, i + 1);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if !(0..n).all(|t| (&a.0[t] + &b.0[t] + &c.0[t]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Cohomology dimensions, centre dimension and unimodularity.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyProfile {
    /// `(h^1, ..., h^n)`.
    pub h: Vec<usize>,
    pub centre_dim: usize,
    pub unimodular: bool,
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Echelon basis of the span of `vs`.
pub fn span_basis(vs: &[Vector<Rational>], n: usize) -> Vec<Vector<Rational>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vs.iter().map(|v| v.0.clone()).collect());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| Vector((0..n).map(|j| r[(i, j)].clone()).collect())).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector<Rational>], v: &Vector<Rational>) -> bool {
    if v.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Matrix::from_columns(&basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>()).solve(&v.0).is_some()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_algebra, parse_rational_form, Params};
    use crate::scalar::int;

    fn alg(text: &str) -> LieAlgebra {
        parse_algebra(text, &Params::new()).unwrap()
    }

    fn l61() -> LieAlgebra {
        alg("dim 6\nd e1 = e23\nd e2 = -e13\nd e3 = e12\nd e4 = e26 - e35\nd e5 = -e16 + e34\nd e6 = e15 - e24\n")
    }

    fn l63() -> LieAlgebra {
        alg("dim 6\nd e1 = e23\nd e2 = 2e12\nd e3 = -2e13\nd e4 = e14 + e25 + e46\nd e5 = -e15 + e34 + e56\n")
    }

    #[test]
    fn d_squared_examples() {
        assert!(l61().check_d_squared().is_ok());
        assert!(LieAlgebra::abelian(6).check_d_squared().is_ok());
        // d(e12) = d e1 ^ e2 - e1 ^ d e2 = e34 ^ e2 = e234
        for (text, expected) in [("dim 4\nd e1 = e12 + e34\n", "e234"), ("dim 4\nd e1 = -e12 + e34\n", "-e234")] {
            match alg(text).check_d_squared() {
                Err(LieError::JacobiViolated { index, witness }) => {
                    assert_eq!(index, 1);
                    assert_eq!(witness, expected);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn differential_matrix_shapes() {
        let g = l61();
        assert!(g.ce_differential_matrix(0).is_zero());
        assert_eq!(g.ce_differential_matrix(0).rows(), 6);
        assert_eq!(g.ce_differential_matrix(6).rows(), 0);
        assert_eq!(bareiss_rank(&g.ce_differential_matrix(1)), 6);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(l61().betti(), vec![0, 0, 2, 0, 0, 1]);
        assert_eq!(l63().betti(), vec![1, 0, 1, 1, 0, 0]);
        assert_eq!(LieAlgebra::abelian(6).betti(), vec![6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(LieAlgebra::abelian(6).closed_forms_basis(3).len(), 20);
        let top = l61().closed_forms_basis(6);
        assert_eq!(top, vec![Form::volume(6)]);
        let g = l61();
        let z3 = g.closed_forms_basis(3);
        let rank_d2 = bareiss_rank(&g.ce_differential_matrix(2));
        assert_eq!(z3.len() - rank_d2, 2);
        for f in &z3 {
            assert!(g.d(f).unwrap().is_zero());
        }
    }

    #[test]
    fn bracket_examples() {
        let t = LieAlgebra::abelian(4).bracket_table();
        assert!(t.c.iter().all(Ring::is_zero));
        let t = l61().bracket_table();
        let e = |i| Vector::<Rational>::basis(6, i);
        assert_eq!(t.bracket(&e(2), &e(3)), Vector(vec![int(-1), int(0), int(0), int(0), int(0), int(0)]));
        let heis = alg("dim 3\nd e3 = e12\n").bracket_table();
        let e3 = |i| Vector::<Rational>::basis(3, i);
        assert_eq!(heis.bracket(&e3(1), &e3(2)), Vector(vec![int(0), int(0), int(-1)]));
        assert!(heis.bracket(&e3(1), &e3(3)).is_zero());
        assert!(heis.bracket(&e3(2), &e3(3)).is_zero());
    }

    #[test]
    fn centre_and_unimodularity() {
        assert_eq!(l61().centre_dim(), 0);
        assert_eq!(LieAlgebra::abelian(6).centre_dim(), 6);
        assert!(l61().is_unimodular());
        assert!(!l63().is_unimodular());
        assert!(LieAlgebra::abelian(6).is_unimodular());
    }

    #[test]
    fn derived_series_and_ideals() {
        assert_eq!(l61().derived_series(), vec![6]);
        let heis = alg("dim 3\nd e3 = e12\n");
        assert_eq!(heis.derived_series(), vec![3, 1, 0]);
        let e = |i| Vector::<Rational>::basis(3, i);
        assert_eq!(heis.is_nilpotent_ideal(&[e(3)]), Ok(true));
        assert_eq!(heis.is_nilpotent_ideal(&[e(1), e(2), e(3)]), Ok(true));
        assert_eq!(heis.is_nilpotent_ideal(&[e(1)]), Err(LieError::NotAnIdeal));
        assert_eq!(heis.is_nilpotent_ideal(&[e(1), e(2)]), Err(LieError::NotASubalgebra));
        let g = l61();
        let f = |i| Vector::<Rational>::basis(6, i);
        // the radical R^3 = span{e4, e5, e6} of so(3) ⋉ R^3
        assert_eq!(g.is_nilpotent_ideal(&[f(4), f(5), f(6)]), Ok(true));
        assert_eq!(g.is_nilpotent_ideal(&(1..=6).map(f).collect::<Vec<_>>()), Ok(false));
    }

    #[test]
    fn two_three_triviality() {
        assert!(!l61().is_23_trivial());
        assert!(!LieAlgebra::abelian(6).is_23_trivial());
        let aff = alg("dim 2\nd e2 = e12\n");
        assert_eq!(aff.betti(), vec![1, 0]);
        assert!(aff.is_23_trivial());
    }

    fn diag_algebra(weights: &[i64]) -> LieAlgebra {
        // g = R^m ⋊ R e_{m+1} with ad(e_{m+1}) e_i = w_i e_i, i.e. d e^i = w_i e^{i,m+1}
        let m = weights.len();
        let n = m + 1;
        let mut images: Vec<Form<Rational>> = weights.iter().enumerate().map(|(i, &w)| Form::monomial(n, &[i + 1, n], int(w)).unwrap()).collect();
        images.push(Form::zero(n, 2));
        LieAlgebra::new("diag", images)
    }

    #[test]
    fn ad_wedge_kernels() {
        let cases: [(&[i64], [bool; 3]); 3] =
            [(&[1, 2, 3, 4, 5], [true; 3]), (&[1, -1, 2, 3, 4], [true, false, true]), (&[0, 0, 0, 0, 0], [false; 3])];
        for (w, expected) in cases {
            let g = diag_algebra(w);
            assert!(g.check_d_squared().is_ok());
            let v = Vector::basis(6, 6);
            let nb: Vec<_> = (1..=5).map(|i| Vector::basis(6, i)).collect();
            let got = g.ad_wedge_kernel_check(&v, &nb).unwrap();
            // ad(e6) e_i = [e6, e_i] = -w_i e_i; the sign does not change kernels
            assert_eq!(got, expected, "weights {w:?}");
        }
        let g = diag_algebra(&[1, 2, 3, 4, 5]);
        let bad: Vec<_> = vec![Vector(vec![int(1), int(0), int(0), int(0), int(0), int(1)])];
        assert_eq!(g.ad_wedge_kernel_check(&Vector::basis(6, 1), &bad), Err(LieError::NotInvariant));
    }

    #[test]
    fn jordan_counts() {
        assert_eq!(jordan_size1_zero_count(&Matrix::<Rational>::zeros(5, 5)), 5);
        let mut a = Matrix::<Rational>::zeros(3, 3);
        a[(0, 1)] = int(1);
        assert_eq!(jordan_size1_zero_count(&a), 1);
        assert_eq!(jordan_size1_zero_count(&Matrix::<Rational>::identity(4)), 0);
    }

    #[test]
    fn abelian_nilradical_examples() {
        let g = diag_algebra(&[1, 2, 3, 4, 5]);
        let u: Vec<_> = [1, 2, 3, 4, 5, 7].iter().map(|&i| Vector::basis(7, i)).collect();
        let r = abelian_nilradical_obstruction(&g, &u).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert_eq!(r.jordan_count, Some(1));

        let r7 = LieAlgebra::abelian(6);
        let u: Vec<_> = (1..=6).map(|i| Vector::basis(7, i)).collect();
        let r = abelian_nilradical_obstruction(&r7, &u).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.jordan_count, Some(6));

        // L6_1: span{e1..e5, e7} is not closed under brackets
        let u: Vec<_> = [1, 2, 3, 4, 5, 7].iter().map(|&i| Vector::basis(7, i)).collect();
        assert_eq!(abelian_nilradical_obstruction(&l61(), &u).unwrap_err(), LieError::NotAbelianIdeal);
        let short: Vec<_> = (1..=5).map(|i| Vector::basis(7, i)).collect();
        assert!(matches!(abelian_nilradical_obstruction(&g, &short), Err(LieError::WrongCodimension { .. })));
    }

    #[test]
    fn d_of_forms_uses_antiderivation() {
        let g = l61();
        let f = parse_rational_form("e14", 6, 2, &Params::new()).unwrap();
        // d(e1 ∧ e4) = de1 ∧ e4 - e1 ∧ de4
        let expected = parse_rational_form("e234 - e1^e2^e6 + e1^e3^e5", 6, 3, &Params::new()).unwrap();
        assert_eq!(g.d(&f).unwrap(), expected);
    }
}
