//! Symbolic non-existence tests for half-flat structures.
//!
//! Both tests range over *all* closed three-forms `ρ` and closed four-forms
//! `σ` at once: the spaces `Z^3(g)` and `Z^4(g)` are parametrised by
//! polynomial variables `a1, a2, ...` and `b1, b2, ...`, and the relevant
//! expression is expanded into a single [`Polynomial`].
//!
//! * The one-form test looks for `α` with `α ∧ J̃*α ∧ σ = 0` identically,
//!   where `J̃*α(X)·ν0 = α ∧ (X ⌟ ρ) ∧ ρ`.
//! * The λ-square test forms `Ω = ρ ∧ e^7 + σ` on `g ⊕ R`, restricts
//!   `X ⌟ Ω` to a complement `W` of `X` and asks whether `λ` of the result
//!   is identically zero or the square of a polynomial. Either way it can
//!   never be negative, while a cocalibrated G2-structure would force it to
//!   be.
//!
//! Verdicts are three-valued. `Obstructed` carries a certificate that
//! [`ObstructionReport::check_certificate`] replays; `Refuted` carries an
//! exact witness point; `Unknown` is an honest "not decided".

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exterior::{Form, FormError, Vector};
use crate::hitchin::{self, HitchinError};
use crate::liealg::{LieAlgebra, LieError};
use crate::matrix::Matrix;
use crate::poly::{Polynomial, Var};
use crate::scalar::{rat, rational_sign, QuadExt, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObstructError {
    #[error("the one-form alpha is zero")]
    ZeroAlpha,
    #[error("the vector X is zero")]
    ZeroX,
    #[error("span{{X}} and W do not form a basis of g + R")]
    NotAComplement,
    #[error("expected a {expected}-dimensional algebra, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("the reference pair is not a half-flat structure: {0}")]
    NotHalfFlat(String),
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hitchin(#[from] HitchinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Obstructed,
    Refuted,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "Obstructed",
            Verdict::Refuted => "Refuted",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// Which test produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `α ∧ J̃*α ∧ σ ≡ 0`.
    OneForm,
    /// `λ(ρ̃)` is zero or a perfect square.
    LambdaSquare,
    /// Odd number of size-one zero Jordan blocks on an Abelian ideal.
    JordanParity,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::OneForm => "one-form",
            Method::LambdaSquare => "lambda-square",
            Method::JordanParity => "jordan",
        })
    }
}

/// A point at which the obstruction polynomial was evaluated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// One coordinate per polynomial variable.
    pub point: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub method: Method,
    /// The one-form tested by [`Method::OneForm`].
    pub alpha: Option<Form<Rational>>,
    /// The contraction vector and complement used by [`Method::LambdaSquare`].
    pub x: Option<Vector<Rational>>,
    pub w: Vec<Vector<Rational>>,
    /// The expanded obstruction polynomial.
    pub polynomial: Option<Polynomial>,
    /// Display names of the polynomial variables, indexed by [`Var`].
    pub variables: Vec<String>,
    /// Square root certificate for [`Method::LambdaSquare`].
    pub root: Option<Polynomial>,
    pub witness: Option<Witness>,
    pub jordan_count: Option<usize>,
    pub note: String,
}

impl ObstructionReport {
    pub fn new(verdict: Verdict, method: Method) -> Self {
        ObstructionReport {
            verdict,
            method,
            alpha: None,
            x: None,
            w: Vec::new(),
            polynomial: None,
            variables: Vec::new(),
            root: None,
            witness: None,
            jordan_count: None,
            note: String::new(),
        }
    }

    /// Renders a polynomial with this report's variable names.
    pub fn show(&self, p: &Polynomial) -> String {
        let names = |v: Var| self.variables.get(v as usize).cloned().unwrap_or_else(|| format!("x{v}"));
        let shown = p.display_with(&names).to_string();
        shown
    }

    /// Replays the stored certificate without recomputing the polynomial.
    ///
    /// Obstructed reports need a zero polynomial or a root squaring to it;
    /// refuted reports need a witness that evaluates to the stored value,
    /// which must be nonzero for the one-form test and negative for the
    /// λ-square test. Jordan-parity reports need an odd count.
    pub fn check_certificate(&self) -> bool {
        match (self.verdict, self.method) {
            (Verdict::Obstructed, Method::JordanParity) => self.jordan_count.is_some_and(|c| c % 2 == 1),
            (Verdict::Obstructed, Method::OneForm) => self.polynomial.as_ref().is_some_and(Polynomial::is_zero),
            (Verdict::Obstructed, Method::LambdaSquare) => match (&self.polynomial, &self.root) {
                (Some(p), _) if p.is_zero() => true,
                (Some(p), Some(q)) => q.mul_poly(q) == *p,
                _ => false,
            },
            (Verdict::Refuted, method) => {
                let (Some(p), Some(w)) = (&self.polynomial, &self.witness) else { return false };
                let ok_value = match method {
                    Method::OneForm => rational_sign(&w.value) != 0,
                    Method::LambdaSquare => rational_sign(&w.value) < 0,
                    Method::JordanParity => false,
                };
                ok_value && p.eval_dense(&w.point).is_ok_and(|v| v == w.value)
            }
            (Verdict::Unknown, _) => true,
        }
    }
}

/// A basis of the closed `k`-forms with one polynomial variable per basis
/// element; the generic member is `Σ x_{offset+i} · basis_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicFormFamily {
    degree: usize,
    dim: usize,
    basis: Vec<Form<Rational>>,
    offset: Var,
}

impl SymbolicFormFamily {
    /// All closed `k`-forms of `g`.
    pub fn closed(g: &LieAlgebra, k: usize, offset: Var) -> Self {
        Self::from_basis(g.dim(), k, g.closed_forms_basis(k), offset)
    }

    /// # Panics
    ///
    /// Panics if some basis element is not a `degree`-form on `dim`
    /// dimensions.
    pub fn from_basis(dim: usize, degree: usize, basis: Vec<Form<Rational>>, offset: Var) -> Self {
        assert!(basis.iter().all(|f| f.dim() == dim && f.degree() == degree), "family basis has the wrong shape");
        SymbolicFormFamily { degree, dim, basis, offset }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Form<Rational>] {
        &self.basis
    }

    /// The variables `offset .. offset + len`.
    pub fn variables(&self) -> std::ops::Range<Var> {
        self.offset..self.offset + self.basis.len() as Var
    }

    /// The generic member as a form with polynomial coefficients.
    pub fn generic(&self) -> Form<Polynomial> {
        let mut out = Form::zero(self.dim, self.degree);
        for (i, b) in self.basis.iter().enumerate() {
            let x = Polynomial::var(self.offset + i as Var);
            out = out.add(&b.map(|c| x.scale(c)));
        }
        out
    }

    /// Coordinates of `form` in this basis, if it lies in the span.
    pub fn coordinates(&self, form: &Form<Rational>) -> Option<Vec<Rational>> {
        if form.dim() != self.dim || form.degree() != self.degree {
            return None;
        }
        if self.basis.is_empty() {
            return form.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(Form::coefficient_vector).collect();
        Matrix::from_columns(&cols).solve(&form.coefficient_vector())
    }
}

/// Options shared by the two symbolic tests.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub seed: u64,
    /// Largest absolute value of a sampled integer coordinate.
    pub max_sample_radius: i64,
    /// Random points tried per radius.
    pub samples_per_radius: usize,
    /// A known half-flat pair `(ρ, σ)` tried before random sampling.
    pub hint: Option<(Form<Rational>, Form<Rational>)>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { seed: 0, max_sample_radius: 12, samples_per_radius: 200, hint: None }
    }
}

impl SearchOptions {
    pub fn with_hint(mut self, rho: Form<Rational>, sigma: Form<Rational>) -> Self {
        self.hint = Some((rho, sigma));
        self
    }
}

/// The families for `Z^3` (variables `a`) and `Z^4` (variables `b`).
fn closed_families(g: &LieAlgebra) -> (SymbolicFormFamily, SymbolicFormFamily, Vec<String>) {
    let rho = SymbolicFormFamily::closed(g, 3, 0);
    let sigma = SymbolicFormFamily::closed(g, 4, rho.len() as Var);
    let names = (1..=rho.len()).map(|i| format!("a{i}")).chain((1..=sigma.len()).map(|i| format!("b{i}"))).collect();
    (rho, sigma, names)
}

fn require_dim(g: &LieAlgebra, n: usize) -> Result<(), ObstructError> {
    if g.dim() != n {
        return Err(ObstructError::WrongDimension { expected: n, found: g.dim() });
    }
    Ok(())
}

/// The one-form `X ↦ coefficient of α ∧ (X ⌟ ρ) ∧ ρ` relative to `e^{1...n}`.
pub fn jtilde_pullback<R: Ring>(rho: &Form<R>, alpha: &Form<R>) -> Result<Form<R>, ObstructError> {
    if alpha.is_zero() {
        return Err(ObstructError::ZeroAlpha);
    }
    if alpha.degree() != 1 {
        return Err(FormError::WrongDegree { expected: 1, found: alpha.degree() }.into());
    }
    let n = rho.dim();
    let comps = (1..=n)
        .map(|i| {
            let x = Vector::basis(n, i);
            Ok(alpha.wedge(&rho.interior(&x)?)?.wedge(rho)?.top_coefficient())
        })
        .collect::<Result<Vec<R>, FormError>>()?;
    Ok(Form::one_form(&comps))
}

/// The polynomial `α ∧ J̃*α ∧ σ / e^{1...6}` over all closed `ρ`, `σ`.
pub fn one_form_polynomial(g: &LieAlgebra, alpha: &Form<Rational>) -> Result<(Polynomial, Vec<String>), ObstructError> {
    require_dim(g, 6)?;
    if alpha.dim() != 6 {
        return Err(FormError::DimensionMismatch(alpha.dim(), 6).into());
    }
    let (rho_f, sigma_f, names) = closed_families(g);
    let rho = rho_f.generic();
    let sigma = sigma_f.generic();
    let alpha_p = alpha.map(|c| Polynomial::constant(c.clone()));
    let beta = jtilde_pullback(&rho, &alpha_p)?;
    let top = alpha_p.wedge(&beta)?.wedge(&sigma)?;
    Ok((top.top_coefficient(), names))
}

/// Tests a single one-form `α`.
pub fn obstruction1(g: &LieAlgebra, alpha: &Form<Rational>, opts: &SearchOptions) -> Result<ObstructionReport, ObstructError> {
    let (p, names) = one_form_polynomial(g, alpha)?;
    let mut report = ObstructionReport::new(Verdict::Obstructed, Method::OneForm);
    report.alpha = Some(alpha.clone());
    report.variables = names;
    if p.is_zero() {
        report.note = "alpha ^ J*alpha ^ sigma vanishes for all closed rho, sigma".into();
    } else {
        let (rho_f, sigma_f, _) = closed_families(g);
        let hint = hint_point(&rho_f, &sigma_f, opts);
        match search(&p, report.variables.len(), hint, opts, |v| rational_sign(v) != 0) {
            Some(w) => {
                report.verdict = Verdict::Refuted;
                report.witness = Some(w);
                report.note = "nonzero at the witness point; this alpha gives no obstruction".into();
            }
            None => {
                report.verdict = Verdict::Unknown;
                report.note = "polynomial is nonzero but no nonzero sample was found".into();
            }
        }
    }
    report.polynomial = Some(p);
    Ok(report)
}

/// Runs [`obstruction1`] for each candidate; the basis covectors by default.
pub fn obstruction1_scan(
    g: &LieAlgebra,
    candidates: Option<&[Form<Rational>]>,
    opts: &SearchOptions,
) -> Result<ObstructionReport, ObstructError> {
    let defaults: Vec<Form<Rational>>;
    let candidates = match candidates {
        Some(c) => c,
        None => {
            defaults = (1..=g.dim()).map(|i| Form::one_form(&Vector::<Rational>::basis(g.dim(), i).0)).collect();
            &defaults
        }
    };
    let mut refuted = 0;
    for alpha in candidates {
        let r = obstruction1(g, alpha, opts)?;
        match r.verdict {
            Verdict::Obstructed => return Ok(r),
            Verdict::Refuted => refuted += 1,
            Verdict::Unknown => {}
        }
    }
    let mut report = ObstructionReport::new(Verdict::Unknown, Method::OneForm);
    report.note = format!("{refuted} of {} candidate one-forms refuted", candidates.len());
    Ok(report)
}

/// `Ω = ρ ∧ e^7 + σ` on the seven-dimensional extension.
pub fn omega_family(rho: &SymbolicFormFamily, sigma: &SymbolicFormFamily) -> Result<Form<Polynomial>, ObstructError> {
    let n = rho.dim() + 1;
    let e_last = Form::basis(n, &[n])?;
    let rho7 = rho.generic().extend_dim(n)?;
    let sigma7 = sigma.generic().extend_dim(n)?;
    Ok(rho7.wedge(&e_last)?.add(&sigma7))
}

/// `(X ⌟ Ω)|_W` written in the coordinates of `W`'s basis.
pub fn restricted_contraction<R: Ring>(omega: &Form<R>, x: &Vector<R>, w: &[Vector<R>]) -> Result<Form<R>, FormError> {
    let a = Matrix::from_columns(&w.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
    omega.interior(x)?.pullback(&a)
}

fn check_complement(x: &Vector<Rational>, w: &[Vector<Rational>], n: usize) -> Result<(), ObstructError> {
    if x.dim() != n || w.iter().any(|v| v.dim() != n) {
        return Err(FormError::DimensionMismatch(x.dim(), n).into());
    }
    if x.is_zero() {
        return Err(ObstructError::ZeroX);
    }
    if w.len() + 1 != n {
        return Err(ObstructError::NotAComplement);
    }
    let mut cols = vec![x.0.clone()];
    cols.extend(w.iter().map(|v| v.0.clone()));
    if Matrix::from_columns(&cols).rank() != n {
        return Err(ObstructError::NotAComplement);
    }
    Ok(())
}

/// The default complement: every basis vector except the one `x` is
/// proportional to.
pub fn canonical_complement(x: usize, n: usize) -> Vec<Vector<Rational>> {
    (1..=n).filter(|&i| i != x).map(|i| Vector::basis(n, i)).collect()
}

/// The polynomial `λ((X ⌟ Ω)|_W)` over all closed `ρ`, `σ`.
pub fn lambda_polynomial(
    g: &LieAlgebra,
    x: &Vector<Rational>,
    w: &[Vector<Rational>],
) -> Result<(Polynomial, Vec<String>), ObstructError> {
    require_dim(g, 6)?;
    check_complement(x, w, 7)?;
    let (rho_f, sigma_f, names) = closed_families(g);
    let omega = omega_family(&rho_f, &sigma_f)?;
    let lift = |v: &Vector<Rational>| v.map(|c| Polynomial::constant(c.clone()));
    let w_p: Vec<_> = w.iter().map(lift).collect();
    let rho_tilde = restricted_contraction(&omega, &lift(x), &w_p)?;
    Ok((hitchin::lambda(&rho_tilde)?, names))
}

/// Tests whether `λ((X ⌟ Ω)|_W)` is provably nonnegative. `X` defaults to
/// `e_3` and `W` to the span of the remaining basis vectors.
pub fn obstruction2(
    g: &LieAlgebra,
    x: Option<&Vector<Rational>>,
    w: Option<&[Vector<Rational>]>,
    opts: &SearchOptions,
) -> Result<ObstructionReport, ObstructError> {
    let x = x.cloned().unwrap_or_else(|| Vector::basis(7, 3));
    if x.is_zero() {
        return Err(ObstructError::ZeroX);
    }
    let w: Vec<Vector<Rational>> = match w {
        Some(w) => w.to_vec(),
        None => match x.0.iter().filter(|c| !c.is_zero()).count() {
            1 => canonical_complement(x.0.iter().position(|c| !c.is_zero()).unwrap() + 1, 7),
            _ => return Err(ObstructError::NotAComplement),
        },
    };
    let (p, names) = lambda_polynomial(g, &x, &w)?;
    let mut report = ObstructionReport::new(Verdict::Obstructed, Method::LambdaSquare);
    report.x = Some(x);
    report.w = w;
    report.variables = names;
    if p.is_zero() {
        report.note = "lambda vanishes identically".into();
    } else if let Some(q) = p.perfect_square_root() {
        report.note = "lambda is the square of a polynomial".into();
        report.root = Some(q);
    } else {
        let (rho_f, sigma_f, _) = closed_families(g);
        let hint = hint_point(&rho_f, &sigma_f, opts);
        match search(&p, report.variables.len(), hint, opts, |v| rational_sign(v) < 0) {
            Some(wit) => {
                report.verdict = Verdict::Refuted;
                report.witness = Some(wit);
                report.note = "lambda is negative at the witness point".into();
            }
            None => {
                report.verdict = Verdict::Unknown;
                report.note = "no negative value found and lambda is not a square".into();
            }
        }
    }
    report.polynomial = Some(p);
    Ok(report)
}

fn hint_point(rho: &SymbolicFormFamily, sigma: &SymbolicFormFamily, opts: &SearchOptions) -> Option<Vec<Rational>> {
    let (r, s) = opts.hint.as_ref()?;
    let mut point = rho.coordinates(r)?;
    point.extend(sigma.coordinates(s)?);
    Some(point)
}

/// Deterministic search for a point where `accept(p(point))` holds: the
/// hint first, then seeded integer points with coordinates in `-r..=r` for
/// `r = 3, 6, ...` up to the maximal radius.
fn search(
    p: &Polynomial,
    nvars: usize,
    hint: Option<Vec<Rational>>,
    opts: &SearchOptions,
    accept: impl Fn(&Rational) -> bool,
) -> Option<Witness> {
    let try_point = |point: Vec<Rational>| {
        let value = p.eval_dense(&point).ok()?;
        accept(&value).then_some(Witness { point, value })
    };
    if let Some(w) = hint.and_then(&try_point) {
        return Some(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut radius = 3.min(opts.max_sample_radius.max(1));
    loop {
        for _ in 0..opts.samples_per_radius {
            let point = (0..nvars).map(|_| rat(rng.gen_range(-radius..=radius), 1)).collect();
            if let Some(w) = try_point(point) {
                return Some(w);
            }
        }
        if radius >= opts.max_sample_radius {
            return None;
        }
        radius = (radius * 2).min(opts.max_sample_radius);
    }
}

/// A rational pair `(ρ', σ')` with `σ' = ω'^2 / 2` obtained from a
/// half-flat pair by the rescaling `(ω, ρ) ↦ (s^2 ω, s^3 ρ)`, `s = sqrt(d)`,
/// which preserves closedness, compatibility and normalisation. Returns
/// `None` unless the rescaled forms are rational.
pub fn rational_witness_pair(omega: &Form<QuadExt>, rho: &Form<QuadExt>) -> Option<(Form<Rational>, Form<Rational>)> {
    let sigma = omega.wedge(omega).ok()?.scale(&QuadExt::rational(rat(1, 2)));
    let to_rat = |f: &Form<QuadExt>| -> Option<Form<Rational>> {
        let terms = f.terms().map(|(t, c)| c.to_rational().map(|q| (*t, q))).collect::<Option<Vec<_>>>()?;
        Form::from_terms(f.dim(), f.degree(), terms).ok()
    };
    if let (Some(r), Some(s)) = (to_rat(rho), to_rat(&sigma)) {
        return Some((r, s));
    }
    let d = rho.terms().chain(omega.terms()).find_map(|(_, c)| c.radicand())?;
    let s = QuadExt::sqrt(d);
    let s2 = s.mul_ref(&s);
    let rho2 = rho.scale(&s2.mul_ref(&s));
    let sigma2 = sigma.scale(&s2.mul_ref(&s2));
    Some((to_rat(&rho2)?, to_rat(&sigma2)?))
}

/// The two symbolic tests, abstracted so that [`consistency_guard_with`]
/// can be exercised against a faulty implementation.
pub trait ObstructionEngine {
    fn one_form(&self, g: &LieAlgebra, alpha: &Form<Rational>, opts: &SearchOptions) -> Result<ObstructionReport, ObstructError>;
    fn lambda_square(
        &self,
        g: &LieAlgebra,
        x: &Vector<Rational>,
        w: &[Vector<Rational>],
        opts: &SearchOptions,
    ) -> Result<ObstructionReport, ObstructError>;
}

/// The engine backed by [`obstruction1`] and [`obstruction2`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactEngine;

impl ObstructionEngine for ExactEngine {
    fn one_form(&self, g: &LieAlgebra, alpha: &Form<Rational>, opts: &SearchOptions) -> Result<ObstructionReport, ObstructError> {
        obstruction1(g, alpha, opts)
    }

    fn lambda_square(
        &self,
        g: &LieAlgebra,
        x: &Vector<Rational>,
        w: &[Vector<Rational>],
        opts: &SearchOptions,
    ) -> Result<ObstructionReport, ObstructError> {
        obstruction2(g, Some(x), Some(w), opts)
    }
}

/// Runs both tests on an algebra that carries the given verified half-flat
/// pair. Every test must come back `Refuted` with a valid witness; anything
/// else contradicts the pair and is reported as a soundness violation.
pub fn consistency_guard(
    g: &LieAlgebra,
    omega: &Form<QuadExt>,
    rho: &Form<QuadExt>,
    opts: &SearchOptions,
) -> Result<Vec<ObstructionReport>, ObstructError> {
    consistency_guard_with(&ExactEngine, g, omega, rho, opts)
}

pub fn consistency_guard_with(
    engine: &dyn ObstructionEngine,
    g: &LieAlgebra,
    omega: &Form<QuadExt>,
    rho: &Form<QuadExt>,
    opts: &SearchOptions,
) -> Result<Vec<ObstructionReport>, ObstructError> {
    require_dim(g, 6)?;
    let check = hitchin::su3_verify(g, omega, rho)?;
    if !check.half_flat() {
        return Err(ObstructError::NotHalfFlat(check.failures().join(", ")));
    }
    let (r, s) = rational_witness_pair(omega, rho)
        .ok_or_else(|| ObstructError::NotHalfFlat("forms are not rational after rescaling".into()))?;
    let opts = opts.clone().with_hint(r, s);
    let mut reports = Vec::new();
    for i in 1..=6 {
        let alpha = Form::one_form(&Vector::<Rational>::basis(6, i).0);
        reports.push(engine.one_form(g, &alpha, &opts)?);
    }
    for i in 1..=7 {
        let x = Vector::basis(7, i);
        reports.push(engine.lambda_square(g, &x, &canonical_complement(i, 7), &opts)?);
    }
    for r in &reports {
        if r.verdict != Verdict::Refuted || !r.check_certificate() {
            return Err(ObstructError::SoundnessViolation(dump(g, r)));
        }
    }
    Ok(reports)
}

fn dump(g: &LieAlgebra, r: &ObstructionReport) -> String {
    let mut out = format!("{} on {} returned {}", r.method, g.name(), r.verdict);
    if let Some(a) = &r.alpha {
        out += &format!("; alpha = {a}");
    }
    if let Some(x) = &r.x {
        out += &format!("; X = {}", Form::one_form(&x.0));
    }
    if let Some(p) = &r.polynomial {
        out += &format!("; polynomial = {}", r.show(p));
    }
    if let Some(q) = &r.root {
        out += &format!("; root = {}", r.show(q));
    }
    if let Some(w) = &r.witness {
        let pts: Vec<String> = w.point.iter().map(ToString::to_string).collect();
        out += &format!("; witness = ({}) -> {}", pts.join(", "), w.value);
    }
    if !r.note.is_empty() {
        out += &format!("; {}", r.note);
    }
    out
}

/// Evaluation point map for callers that prefer named coordinates.
pub fn named_point(report: &ObstructionReport) -> Option<BTreeMap<String, Rational>> {
    let w = report.witness.as_ref()?;
    Some(report.variables.iter().cloned().zip(w.point.iter().cloned()).collect())
}
