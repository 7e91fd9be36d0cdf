//! Alternating forms on an `n`-dimensional space (`n <= 9`) with
//! coefficients in any [`Ring`].
//!
//! A basis `k`-form `e^{i1...ik}` is addressed by an [`IndexTuple`]; indices
//! are 1-based throughout so that `e^{126}` is written `[1, 2, 6]`. The same
//! sign conventions serve rational, surd, polynomial and floating
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{QuadExt, Rational, Ring};

/// Largest supported dimension.
pub const MAX_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree overflow: {0} + {1} exceeds dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("cannot contract a 0-form")]
    DegreeUnderflow,
    #[error("expected a form of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("reference volume form vanishes")]
    ZeroVolume,
    #[error("reference volume coefficient is not invertible")]
    NonUnitVolume,
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("repeated index {0}")]
    RepeatedIndex(usize),
    #[error("indices are not strictly increasing")]
    NotIncreasing,
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
}

/// A strictly increasing set of indices `i1 < ... < ik` in `1..=9`.
///
/// Stored as a bitmask; ordered lexicographically on the index sequence so
/// that `e^{123} < e^{124} < ... < e^{456}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexTuple(u16);

impl IndexTuple {
    pub const EMPTY: IndexTuple = IndexTuple(0);

    /// Builds the tuple from strictly increasing indices.
    pub fn new(indices: &[usize]) -> Result<Self, FormError> {
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(if w[0] == w[1] { FormError::RepeatedIndex(w[0]) } else { FormError::NotIncreasing });
        }
        Ok(Self::sorted(indices)?.1)
    }

    /// Sorts arbitrary distinct indices, returning the permutation sign.
    pub fn sorted(indices: &[usize]) -> Result<(i32, Self), FormError> {
        let mut mask = 0u16;
        let mut sign = 1;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(FormError::IndexOutOfRange(i, MAX_DIM));
            }
            let bit = 1u16 << (i - 1);
            if mask & bit != 0 {
                return Err(FormError::RepeatedIndex(i));
            }
            // Each already-present larger index is one inversion.
            if (mask >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        Ok((sign, IndexTuple(mask)))
    }

    pub fn single(i: usize) -> Self {
        IndexTuple(1 << (i - 1))
    }

    /// `e^{1...n}`.
    pub fn full(n: usize) -> Self {
        IndexTuple(((1u32 << n) - 1) as u16)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    pub fn max_index(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (1..=MAX_DIM).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    pub fn without(self, i: usize) -> Self {
        IndexTuple(self.0 & !(1 << (i - 1)))
    }

    /// Number of indices of `self` strictly below `i`.
    fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u16 << (i - 1)) - 1)).count_ones()
    }

    /// Sign and union for `e^self ∧ e^other`, or `None` if they overlap.
    pub fn wedge(self, other: IndexTuple) -> Option<(i32, IndexTuple)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Inversions: pairs (i in self, j in other) with i > j.
        let inversions: u32 = other.indices().map(|j| (self.0 >> j).count_ones()).sum();
        Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, IndexTuple(self.0 | other.0)))
    }

    /// All `k`-subsets of `1..=n` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<IndexTuple> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
            if cur.len() == k {
                out.push(IndexTuple::sorted(cur).expect("valid").1);
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, n, k, &mut cur, &mut out);
        out
    }
}

impl Ord for IndexTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for IndexTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector `Σ c_i e_i`; component `0` belongs to `e_1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<R>(pub Vec<R>);

impl<R: Ring> Vector<R> {
    pub fn zero(n: usize) -> Self {
        Vector(vec![R::zero(); n])
    }

    /// The basis vector `e_i` (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i - 1] = R::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Vector<S> {
        Vector(self.0.iter().map(f).collect())
    }
}

/// A vector tagged with a formal power of the reference volume form, as
/// produced by [`kappa`]: `value ⊗ ν0^weight`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedVector<R> {
    pub vector: Vector<R>,
    pub weight: i32,
}

/// An endomorphism tagged with a formal power of the reference volume form.
/// Composition adds weights.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedEndo<R> {
    pub matrix: Matrix<R>,
    pub weight: i32,
}

impl<R: Ring> WeightedEndo<R> {
    pub fn compose(&self, other: &WeightedEndo<R>) -> WeightedEndo<R> {
        WeightedEndo { matrix: self.matrix.mul(&other.matrix), weight: self.weight + other.weight }
    }

    /// Trace as a coefficient of `ν0^weight`.
    pub fn trace(&self) -> (R, i32) {
        (self.matrix.trace(), self.weight)
    }
}

/// A homogeneous `k`-form on an `n`-dimensional space.
#[derive(Clone, PartialEq)]
pub struct Form<R> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<IndexTuple, R>,
}

impl<R: Ring> Form<R> {
    /// # Panics
    ///
    /// Panics if `degree > dim` or `dim > MAX_DIM`.
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim, "invalid form shape ({dim}, {degree})");
        Form { dim, degree, coeffs: BTreeMap::new() }
    }

    /// The 0-form `c`.
    pub fn scalar(dim: usize, c: R) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(IndexTuple::EMPTY, c);
        f
    }

    /// `c · e^{indices}` for arbitrary distinct indices (the sign of the
    /// sorting permutation is absorbed).
    pub fn monomial(dim: usize, indices: &[usize], c: R) -> Result<Self, FormError> {
        check_dim(dim)?;
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > dim) {
            return Err(FormError::IndexOutOfRange(i, dim));
        }
        let (sign, t) = IndexTuple::sorted(indices)?;
        let mut f = Self::zero(dim, indices.len());
        f.add_term(t, if sign < 0 { -c } else { c });
        Ok(f)
    }

    /// `e^{indices}` with unit coefficient.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self, FormError> {
        Self::monomial(dim, indices, R::one())
    }

    /// The one-form `Σ c_i e^i`.
    pub fn one_form(coeffs: &[R]) -> Self {
        let dim = coeffs.len();
        let mut f = Self::zero(dim, 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(IndexTuple::single(i + 1), c.clone());
        }
        f
    }

    /// The reference volume form `e^{1...n}`.
    pub fn volume(dim: usize) -> Self {
        let mut f = Self::zero(dim, dim);
        f.add_term(IndexTuple::full(dim), R::one());
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (IndexTuple, R)>) -> Result<Self, FormError> {
        check_dim(dim)?;
        if degree > dim {
            return Err(FormError::DegreeOverflow(degree, 0, dim));
        }
        let mut f = Self::zero(dim, degree);
        for (t, c) in terms {
            if t.degree() != degree {
                return Err(FormError::WrongDegree { expected: degree, found: t.degree() });
            }
            if t.max_index() > dim {
                return Err(FormError::IndexOutOfRange(t.max_index(), dim));
            }
            f.add_term(t, c);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &R)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, t: IndexTuple) -> R {
        self.coeffs.get(&t).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of `e^{1...n}` for a top-degree form.
    pub fn top_coefficient(&self) -> R {
        self.coeff(IndexTuple::full(self.dim))
    }

    /// Coefficients in the lexicographic basis of `Λ^k`.
    pub fn coefficient_vector(&self) -> Vec<R> {
        IndexTuple::all(self.dim, self.degree).into_iter().map(|t| self.coeff(t)).collect()
    }

    pub fn from_coefficient_vector(dim: usize, degree: usize, v: &[R]) -> Self {
        let basis = IndexTuple::all(dim, degree);
        assert_eq!(basis.len(), v.len(), "coefficient vector length");
        let mut f = Self::zero(dim, degree);
        for (t, c) in basis.into_iter().zip(v) {
            f.add_term(t, c.clone());
        }
        f
    }

    pub fn add_term(&mut self, t: IndexTuple, c: R) {
        debug_assert_eq!(t.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add_ref(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check_same(&self, other: &Form<R>) -> Result<(), FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(FormError::WrongDegree { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Form<R>) -> Result<Form<R>, FormError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(*t, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Form<R>) -> Result<Form<R>, FormError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(*t, -c.clone());
        }
        Ok(out)
    }

    /// # Panics
    ///
    /// Panics on a shape mismatch; use [`Form::try_add`] for fallible input.
    pub fn add(&self, other: &Form<R>) -> Form<R> {
        self.try_add(other).expect("form shape mismatch")
    }

    /// # Panics
    ///
    /// Panics on a shape mismatch.
    pub fn sub(&self, other: &Form<R>) -> Form<R> {
        self.try_sub(other).expect("form shape mismatch")
    }

    pub fn neg(&self) -> Form<R> {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, c: &R) -> Form<R> {
        let mut out = Self::zero(self.dim, self.degree);
        for (t, x) in &self.coeffs {
            out.add_term(*t, x.mul_ref(c));
        }
        out
    }

    /// Applies `f` to every coefficient, dropping the ones that become zero.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Form<S> {
        let mut out = Form::zero(self.dim, self.degree);
        for (t, c) in &self.coeffs {
            out.add_term(*t, f(c));
        }
        out
    }

    /// The same form on a larger space, e.g. from `g` to `g ⊕ R`.
    pub fn extend_dim(&self, dim: usize) -> Result<Form<R>, FormError> {
        check_dim(dim)?;
        if dim < self.dim {
            return Err(FormError::DimensionMismatch(self.dim, dim));
        }
        Ok(Form { dim, degree: self.degree, coeffs: self.coeffs.clone() })
    }

    /// Exterior product with Koszul signs.
    pub fn wedge(&self, other: &Form<R>) -> Result<Form<R>, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree + other.degree > self.dim {
            return Err(FormError::DegreeOverflow(self.degree, other.degree, self.dim));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                if let Some((sign, u)) = s.wedge(*t) {
                    let p = a.mul_ref(b);
                    out.add_term(u, if sign < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `k`-th exterior power `self ∧ ... ∧ self`.
    pub fn wedge_power(&self, k: usize) -> Result<Form<R>, FormError> {
        let mut acc = Form::scalar(self.dim, R::one());
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Interior product `v ⌟ self`.
    pub fn interior(&self, v: &Vector<R>) -> Result<Form<R>, FormError> {
        if v.dim() != self.dim {
            return Err(FormError::DimensionMismatch(v.dim(), self.dim));
        }
        if self.degree == 0 {
            return Err(FormError::DegreeUnderflow);
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (t, c) in &self.coeffs {
            for i in t.indices() {
                let vi = &v.0[i - 1];
                if vi.is_zero() {
                    continue;
                }
                let p = c.mul_ref(vi);
                out.add_term(t.without(i), if t.count_below(i) % 2 == 1 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// Evaluates a 2-form on a pair of vectors, `self(x, y)`.
    pub fn eval2(&self, x: &Vector<R>, y: &Vector<R>) -> Result<R, FormError> {
        if self.degree != 2 {
            return Err(FormError::WrongDegree { expected: 2, found: self.degree });
        }
        Ok(self.interior(x)?.interior(y)?.coeff(IndexTuple::EMPTY))
    }

    /// Pullback `(A* a)(x1, ..., xk) = a(A x1, ..., A xk)`.
    ///
    /// `A` maps the target space (dimension `A.cols()`) into the space this
    /// form lives on (dimension `A.rows()`), so a non-square `A` whose
    /// columns span a subspace restricts the form to that subspace.
    pub fn pullback(&self, a: &Matrix<R>) -> Result<Form<R>, FormError> {
        if a.rows() != self.dim {
            return Err(FormError::DimensionMismatch(a.rows(), self.dim));
        }
        let m = a.cols();
        check_dim(m)?;
        if self.degree > m {
            return Err(FormError::DegreeOverflow(self.degree, 0, m));
        }
        // A* e^j = Σ_i A[j][i] e^i
        let ones: Vec<Form<R>> = (0..self.dim).map(|j| Form::one_form(a.row(j))).collect();
        let mut out = Form::zero(m, self.degree);
        for (t, c) in &self.coeffs {
            let mut acc = Form::scalar(m, c.clone());
            for j in t.indices() {
                acc = acc.wedge(&ones[j - 1])?;
                if acc.is_zero() {
                    break;
                }
            }
            for (u, x) in acc.coeffs {
                out.add_term(u, x);
            }
        }
        Ok(out)
    }
}

fn check_dim(dim: usize) -> Result<(), FormError> {
    if dim > MAX_DIM {
        Err(FormError::DimensionTooLarge(dim))
    } else {
        Ok(())
    }
}

/// The coefficients `c` with `xi = Σ c_i (e_i ⌟ ν0)`, i.e. the natural
/// isomorphism `Λ^{n-1} ≅ V ⊗ Λ^n` relative to the volume form `nu0`.
/// The result carries weight 1 (one factor of `ν0`).
pub fn kappa<R: Ring>(xi: &Form<R>, nu0: &Form<R>) -> Result<WeightedVector<R>, FormError> {
    let n = nu0.dim();
    if xi.dim() != n {
        return Err(FormError::DimensionMismatch(xi.dim(), n));
    }
    if nu0.degree() != n {
        return Err(FormError::WrongDegree { expected: n, found: nu0.degree() });
    }
    if n == 0 || xi.degree() + 1 != n {
        return Err(FormError::WrongDegree { expected: n.saturating_sub(1), found: xi.degree() });
    }
    let vol = nu0.top_coefficient();
    if vol.is_zero() {
        return Err(FormError::ZeroVolume);
    }
    let inv = vol.unit_inverse().ok_or(FormError::NonUnitVolume)?;
    let full = IndexTuple::full(n);
    // e_i ⌟ e^{1..n} = (-1)^{i-1} e^{1..î..n}
    let comps = (1..=n)
        .map(|i| {
            let x = xi.coeff(full.without(i)).mul_ref(&inv);
            if i % 2 == 0 {
                -x
            } else {
                x
            }
        })
        .collect();
    Ok(WeightedVector { vector: Vector(comps), weight: 1 })
}

/// Sign-aware rendering of coefficients inside a form expression.
pub trait CoeffFormat {
    /// Returns `(negative, magnitude)`; the magnitude is `None` for a unit
    /// coefficient and is parenthesised when it is a sum.
    fn split_sign(&self) -> (bool, Option<String>);
}

impl CoeffFormat for Rational {
    fn split_sign(&self) -> (bool, Option<String>) {
        use num::{One, Signed};
        let a = self.abs();
        (self.is_negative(), (!a.is_one()).then(|| a.to_string()))
    }
}

impl CoeffFormat for QuadExt {
    fn split_sign(&self) -> (bool, Option<String>) {
        if let Some(q) = self.to_rational() {
            return q.split_sign();
        }
        if num::Zero::is_zero(self.rational_part()) {
            let neg = self.sign() < 0;
            let abs = if neg { -self.clone() } else { self.clone() };
            return (neg, Some(abs.to_string()));
        }
        (false, Some(format!("({self})")))
    }
}

impl CoeffFormat for Polynomial {
    fn split_sign(&self) -> (bool, Option<String>) {
        if let Some(c) = self.as_constant() {
            return c.split_sign();
        }
        if self.len() == 1 {
            let s = self.to_string();
            if let Some(rest) = s.strip_prefix('-') {
                return (true, Some(rest.to_string()));
            }
            return (false, Some(s));
        }
        (false, Some(format!("({self})")))
    }
}

impl CoeffFormat for f64 {
    fn split_sign(&self) -> (bool, Option<String>) {
        let a = self.abs();
        (*self < 0.0, (a != 1.0).then(|| format!("{a}")))
    }
}

impl<R: Ring + CoeffFormat> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.coeffs.iter().enumerate() {
            let (neg, mag) = c.split_sign();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.degree() == 0 {
                write!(f, "{}", mag.unwrap_or_else(|| "1".into()))?;
                continue;
            }
            if let Some(m) = mag {
                write!(f, "{m}*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(dim={}, deg={}, ", self.dim, self.degree)?;
        f.debug_map().entries(self.coeffs.iter()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    type F = Form<Rational>;

    fn e(dim: usize, idx: &[usize]) -> F {
        F::basis(dim, idx).unwrap()
    }

    fn v(dim: usize, i: usize) -> Vector<Rational> {
        Vector::basis(dim, i)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(6, &[1]).wedge(&e(6, &[2])).unwrap(), e(6, &[1, 2]));
        assert_eq!(e(6, &[2]).wedge(&e(6, &[1])).unwrap(), e(6, &[1, 2]).neg());
        let w = e(6, &[1, 2]).add(&e(6, &[3, 4]));
        assert_eq!(w.wedge(&w).unwrap(), e(6, &[1, 2, 3, 4]).scale(&int(2)));
        assert!(e(6, &[1, 2, 3]).wedge(&e(6, &[1, 2, 4])).unwrap().is_zero());
    }

    #[test]
    fn wedge_errors() {
        assert_eq!(e(6, &[1]).wedge(&e(5, &[1])), Err(FormError::DimensionMismatch(6, 5)));
        assert_eq!(e(4, &[1, 2, 3]).wedge(&e(4, &[1, 4])), Err(FormError::DegreeOverflow(3, 2, 4)));
    }

    #[test]
    fn interior_examples() {
        let a = e(6, &[1, 2, 3]);
        assert_eq!(a.interior(&v(6, 1)).unwrap(), e(6, &[2, 3]));
        assert_eq!(a.interior(&v(6, 2)).unwrap(), e(6, &[1, 3]).neg());
        assert!(a.interior(&v(6, 4)).unwrap().is_zero());
        assert_eq!(F::scalar(6, int(1)).interior(&v(6, 1)), Err(FormError::DegreeUnderflow));
        assert_eq!(a.interior(&v(5, 1)), Err(FormError::DimensionMismatch(5, 6)));
    }

    #[test]
    fn kappa_examples() {
        let nu = F::volume(6);
        let k = kappa(&e(6, &[2, 3, 4, 5, 6]), &nu).unwrap();
        assert_eq!(k.vector, Vector(vec![int(1), int(0), int(0), int(0), int(0), int(0)]));
        assert_eq!(k.weight, 1);
        let k = kappa(&e(6, &[1, 2, 3, 5, 6]), &nu).unwrap();
        assert_eq!(k.vector, Vector(vec![int(0), int(0), int(0), int(-1), int(0), int(0)]));
        let k = kappa(&F::zero(6, 5), &nu).unwrap();
        assert!(k.vector.is_zero());
        assert_eq!(kappa(&e(6, &[1, 2, 3, 4, 5]), &F::zero(6, 6)), Err(FormError::ZeroVolume));
    }

    #[test]
    fn pullback_examples() {
        let rho = e(6, &[1, 2, 3]).add(&e(6, &[4, 5, 6]));
        assert_eq!(rho.pullback(&Matrix::identity(6)).unwrap(), rho);
        let c = Matrix::identity(6).scale(&int(2));
        assert_eq!(rho.pullback(&c).unwrap(), rho.scale(&int(8)));
        let s = Matrix::diagonal(&[int(1), int(1), int(1), int(-1), int(-1), int(-1)]);
        assert_eq!(rho.pullback(&s).unwrap(), e(6, &[1, 2, 3]).sub(&e(6, &[4, 5, 6])));
    }

    #[test]
    fn restriction_by_rectangular_pullback() {
        // restrict e^{137} on R^7 to span{e1, e2, e4, e5, e6, e7}
        let cols: Vec<Vec<Rational>> = [1, 2, 4, 5, 6, 7].iter().map(|&i| Vector::<Rational>::basis(7, i).0).collect();
        let inc = Matrix::from_columns(&cols);
        assert!(e(7, &[1, 3, 7]).pullback(&inc).unwrap().is_zero());
        assert_eq!(e(7, &[1, 5, 7]).pullback(&inc).unwrap(), e(6, &[1, 4, 6]));
    }

    #[test]
    fn index_tuple_order_and_signs() {
        let all = IndexTuple::all(6, 3);
        assert_eq!(all.len(), 20);
        assert_eq!(all[0].to_vec(), vec![1, 2, 3]);
        assert_eq!(all[1].to_vec(), vec![1, 2, 4]);
        assert_eq!(all[19].to_vec(), vec![4, 5, 6]);
        assert_eq!(IndexTuple::sorted(&[2, 1, 3]).unwrap().0, -1);
        assert_eq!(IndexTuple::sorted(&[3, 1, 2]).unwrap().0, 1);
        assert_eq!(IndexTuple::sorted(&[1, 1]), Err(FormError::RepeatedIndex(1)));
    }

    #[test]
    fn display() {
        let f = e(6, &[1, 2, 6]).neg().sub(&e(6, &[1, 3, 5])).add(&e(6, &[4, 5, 6]).scale(&crate::scalar::rat(-19, 4)));
        assert_eq!(f.to_string(), "-e126 - e135 - 19/4*e456");
        assert_eq!(F::zero(6, 2).to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const N: usize = 6;

        fn form(k: usize) -> impl Strategy<Value = F> {
            let basis = IndexTuple::all(N, k);
            prop::collection::vec(-3i64..4, basis.len())
                .prop_map(move |cs| F::from_terms(N, k, basis.iter().copied().zip(cs.into_iter().map(int))).unwrap())
        }

        fn vector() -> impl Strategy<Value = Vector<Rational>> {
            prop::collection::vec(-3i64..4, N).prop_map(|cs| Vector(cs.into_iter().map(int).collect()))
        }

        fn matrix() -> impl Strategy<Value = Matrix<Rational>> {
            prop::collection::vec(-2i64..3, N * N).prop_map(|cs| Matrix::from_fn(N, N, |i, j| int(cs[i * N + j])))
        }

        proptest! {
            #[test]
            fn graded_anticommutative(a in (0usize..4).prop_flat_map(form), b in (0usize..3).prop_flat_map(form)) {
                let ab = a.wedge(&b).unwrap();
                let ba = b.wedge(&a).unwrap();
                if (a.degree() * b.degree()) % 2 == 0 {
                    prop_assert_eq!(ab, ba);
                } else {
                    prop_assert_eq!(ab, ba.neg());
                }
            }

            #[test]
            fn wedge_associative(a in form(1), b in form(2), c in form(2)) {
                prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
            }

            #[test]
            fn interior_is_antiderivation(x in vector(), a in (1usize..4).prop_flat_map(form), b in (1usize..3).prop_flat_map(form)) {
                let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
                let t1 = a.interior(&x).unwrap().wedge(&b).unwrap();
                let t2 = a.wedge(&b.interior(&x).unwrap()).unwrap();
                let rhs = if a.degree() % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) };
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn interior_twice_vanishes(x in vector(), a in (2usize..5).prop_flat_map(form)) {
                prop_assert!(a.interior(&x).unwrap().interior(&x).unwrap().is_zero());
            }

            #[test]
            fn kappa_inverts_contraction(xi in form(5)) {
                let nu = F::volume(N);
                let k = kappa(&xi, &nu).unwrap();
                let mut back = F::zero(N, N - 1);
                for (i, c) in k.vector.0.iter().enumerate() {
                    back = back.add(&nu.interior(&Vector::basis(N, i + 1)).unwrap().scale(c));
                }
                prop_assert_eq!(back, xi);
            }

            #[test]
            fn pullback_composes(a in matrix(), b in matrix(), f in (1usize..4).prop_flat_map(form)) {
                let ab = a.mul(&b);
                prop_assert_eq!(f.pullback(&ab).unwrap(), f.pullback(&a).unwrap().pullback(&b).unwrap());
            }

            #[test]
            fn pullback_is_multiplicative(a in matrix(), f in form(2), g in form(2)) {
                let lhs = f.wedge(&g).unwrap().pullback(&a).unwrap();
                let rhs = f.pullback(&a).unwrap().wedge(&g.pullback(&a).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
