//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map ordered by the graded lexicographic order on
//! monomials (variable 0 is the largest variable). The order is what makes
//! [`Polynomial::perfect_square_root`] deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Signed;
use thiserror::Error;

use crate::scalar::{rational_sqrt, Rational, Ring};

/// Identifier of a polynomial variable.
pub type Var = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {0} has no binding")]
    UnboundVariable(Var),
}

/// A power product `x_{v1}^{k1} ... x_{vm}^{km}`, stored sparsely as
/// `(variable, exponent)` pairs sorted by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut sub = 0;
            if j < other.0.len() {
                if other.0[j].0 < v {
                    return None;
                }
                if other.0[j].0 == v {
                    sub = other.0[j].1;
                    j += 1;
                }
            }
            match e.cmp(&sub) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v, e - sub)),
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Square root when every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        self.0
            .iter()
            .map(|&(v, e)| (e % 2 == 0).then_some((v, e / 2)))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(Var) -> String) -> fmt::Result {
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", names(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // The monomial with the smaller (= larger-ranked) variable wins.
                return b.0.cmp(&a.0);
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        self.fmt_with(f, &default_name)
    }
}

fn default_name(v: Var) -> String {
    format!("x{v}")
}

/// Sparse polynomial with rational coefficients. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Largest term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Sorted list of variables that occur.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Whether every term has total degree `d` counting only the variables
    /// selected by `in_group`.
    pub fn is_homogeneous_in(&self, d: u32, in_group: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().all(|m| m.0.iter().filter(|&&(v, _)| in_group(v)).map(|&(_, e)| e).sum::<u32>() == d)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect() }
    }

    pub fn mul_poly(&self, other: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: std::collections::HashMap<Monomial, Rational> = std::collections::HashMap::new();
        for (m, c) in &small.terms {
            for (n, k) in &large.terms {
                let prod = c * k;
                match acc.entry(m.mul(n)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn add_poly(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_poly(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Exact evaluation; every occurring variable must be bound.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational, PolyError> {
        self.eval_with(|v| point.get(&v).cloned())
    }

    /// Evaluation with a dense point indexed by variable.
    pub fn eval_dense(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.eval_with(|v| point.get(v as usize).cloned())
    }

    fn eval_with(&self, lookup: impl Fn(Var) -> Option<Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = lookup(v).ok_or(PolyError::UnboundVariable(v))?;
                t *= num::pow::pow(x, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation, for sampling heuristics only.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        use num::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * m.0.iter().map(|&(v, e)| point[v as usize].powi(e as i32)).product::<f64>())
            .sum()
    }

    /// Returns `q` with `q * q == self`, or `None` when no rational
    /// polynomial square root exists.
    ///
    /// The candidate root is grown one term at a time from the leading term
    /// of the remainder `self - q^2` (for `p = (t0 + t1 + ...)^2` that leading
    /// term is `2 t0 t_next`), then certified by exact multiplication. The
    /// returned root has a positive leading coefficient.
    pub fn perfect_square_root(&self) -> Option<Polynomial> {
        let Some((lead_m, lead_c)) = self.leading_term() else {
            return Some(Polynomial::zero());
        };
        let min_deg = self.min_degree().unwrap_or(0);
        let t0_m = lead_m.sqrt()?;
        let t0_c = rational_sqrt(lead_c)?;
        let two_t0_c = &t0_c * Rational::from_integer(2.into());

        let mut root = Polynomial::term(t0_c.clone(), t0_m.clone());
        let mut rem = self.sub_poly(&root.mul_poly(&root));
        // Root terms appear in strictly decreasing grlex order and have degree
        // at least min_deg / 2; only finitely many monomials qualify, so the
        // loop terminates.
        let mut last = t0_m.clone();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&t0_m)?;
            if 2 * m.degree() < min_deg || m >= last {
                return None;
            }
            let c = rc / &two_t0_c;
            // rem -= 2*root*t + t^2
            let t = Polynomial::term(c.clone(), m.clone());
            let two_root_t = root.mul_term(&m, &(&c * Rational::from_integer(2.into())));
            rem = rem.sub_poly(&two_root_t).sub_poly(&t.mul_poly(&t));
            root = root.add_poly(&t);
            last = m;
        }
        if !rem.is_zero() {
            return None;
        }
        if root.mul_poly(&root) == *self {
            Some(root)
        } else {
            None
        }
    }

    /// Renders with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(Var) -> String) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a dyn Fn(Var) -> String,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !num::One::is_one(&abs) {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, self.names)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_name))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        self.add_poly(&rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self.sub_poly(&rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_poly(&rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Ring for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        Polynomial::constant(q.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!c.is_zero()).then(|| Polynomial::constant(c.recip()))
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add_poly(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub_poly(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
}
