//! Invariants of three-forms in dimension six, verification of half-flat
//! SU(3)-structures and their lift to G2-structures in dimension seven.
//!
//! For a three-form `ρ` on `R^6` with reference volume `ν0 = e^{1...6}`,
//! `K_ρ(v) = κ((v ⌟ ρ) ∧ ρ)` and `λ(ρ) = tr(K_ρ^2) / 6`. When `λ < 0`,
//! `J = K / sqrt|λ|` is a complex structure and `g = ω(J·, ·)`. Exact checks
//! avoid the square root: they work with `B = ω(K·, ·) = sqrt|λ| · g` and
//! compare squares. Only the seven-dimensional metric of `φ` needs a ninth
//! root and is computed in `f64`.

use thiserror::Error;

use crate::exterior::{kappa, Form, FormError, IndexTuple, Vector, WeightedEndo};
use crate::liealg::{LieAlgebra, LieError};
use crate::matrix::Matrix;
use crate::scalar::{rat, Field, OrderedField, QuadExt, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HitchinError {
    #[error("expected a form on six dimensions, got {0}")]
    NotSixDimensional(usize),
    #[error("expected a three-form on seven dimensions")]
    NotSevenDimensional,
    #[error("lambda(rho) is not negative")]
    NotComplexType,
    #[error("omega(K., .) is not symmetric; omega ^ rho != 0")]
    CompatibilityViolated,
    #[error("sqrt|lambda| is not in the coefficient field")]
    SqrtNotRepresentable,
    #[error("the three-form is degenerate")]
    Degenerate,
    #[error("the metric of phi is not positive definite")]
    NotG2,
    #[error("v and U do not form a basis")]
    NotAComplement,
    #[error("alpha must be a nonzero multiple of e^7")]
    NotAnnihilator,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn require_six<R: Ring>(f: &Form<R>, degree: usize) -> Result<(), HitchinError> {
    if f.dim() != 6 {
        return Err(HitchinError::NotSixDimensional(f.dim()));
    }
    if f.degree() != degree {
        return Err(FormError::WrongDegree { expected: degree, found: f.degree() }.into());
    }
    Ok(())
}

/// `K_ρ` relative to `e^{1...6}`.
pub fn k_endomorphism<R: Ring>(rho: &Form<R>) -> Result<WeightedEndo<R>, HitchinError> {
    k_endomorphism_rel(rho, &Form::volume(6))
}

/// `K_ρ` relative to an arbitrary volume form `nu0`; column `i` is
/// `κ((e_i ⌟ ρ) ∧ ρ)`.
pub fn k_endomorphism_rel<R: Ring>(rho: &Form<R>, nu0: &Form<R>) -> Result<WeightedEndo<R>, HitchinError> {
    require_six(rho, 3)?;
    let mut m = Matrix::zeros(6, 6);
    for i in 1..=6 {
        let xi = rho.interior(&Vector::basis(6, i))?.wedge(rho)?;
        let col = kappa(&xi, nu0)?;
        for (r, c) in col.vector.0.into_iter().enumerate() {
            m[(r, i - 1)] = c;
        }
    }
    Ok(WeightedEndo { matrix: m, weight: 1 })
}

/// `λ(ρ) = tr(K_ρ^2) / 6` relative to `e^{1...6} ⊗ e^{1...6}`.
pub fn lambda<R: Ring>(rho: &Form<R>) -> Result<R, HitchinError> {
    lambda_rel(rho, &Form::volume(6))
}

pub fn lambda_rel<R: Ring>(rho: &Form<R>, nu0: &Form<R>) -> Result<R, HitchinError> {
    let k = k_endomorphism_rel(rho, nu0)?.matrix;
    Ok(trace_of_square(&k).mul_ref(&R::from_rational(&rat(1, 6))))
}

fn trace_of_square<R: Ring>(k: &Matrix<R>) -> R {
    let mut acc = R::zero();
    for i in 0..k.rows() {
        for j in 0..k.cols() {
            if !k[(i, j)].is_zero() && !k[(j, i)].is_zero() {
                acc = acc.add_ref(&k[(i, j)].mul_ref(&k[(j, i)]));
            }
        }
    }
    acc
}

/// `K_ρ` together with `λ(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeFormInvariants<R> {
    pub k: WeightedEndo<R>,
    pub lambda: R,
}

pub fn invariants<R: Ring>(rho: &Form<R>) -> Result<ThreeFormInvariants<R>, HitchinError> {
    let k = k_endomorphism(rho)?;
    let lambda = trace_of_square(&k.matrix).mul_ref(&R::from_rational(&rat(1, 6)));
    Ok(ThreeFormInvariants { k, lambda })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum StabilityClass {
    /// `λ > 0`: the orbit of `e^{123} + e^{456}`.
    PositiveStable,
    /// `λ < 0`: induces a complex structure.
    ComplexStable,
    /// `λ = 0`.
    NotStable,
}

pub fn stability_class<F: OrderedField>(rho: &Form<F>) -> Result<StabilityClass, HitchinError> {
    Ok(match lambda(rho)?.signum_exact() {
        1 => StabilityClass::PositiveStable,
        -1 => StabilityClass::ComplexStable,
        _ => StabilityClass::NotStable,
    })
}

/// `B_ij = ω(K e_i, e_j)`, with no symmetry or sign check.
pub fn bilinear_raw<R: Ring>(omega: &Form<R>, k: &Matrix<R>) -> Result<Matrix<R>, HitchinError> {
    let mut b = Matrix::zeros(6, 6);
    for i in 0..6 {
        let kei = Vector(k.column(i));
        let contracted = omega.interior(&kei)?;
        for j in 0..6 {
            b[(i, j)] = contracted.coeff(IndexTuple::single(j + 1));
        }
    }
    Ok(b)
}

/// `B = ω(K·, ·) = sqrt|λ| · g`.
pub fn metric_bilinear<F: OrderedField>(omega: &Form<F>, rho: &Form<F>) -> Result<Matrix<F>, HitchinError> {
    require_six(omega, 2)?;
    let inv = invariants(rho)?;
    if inv.lambda.signum_exact() >= 0 {
        return Err(HitchinError::NotComplexType);
    }
    let b = bilinear_raw(omega, &inv.k.matrix)?;
    if b != b.transpose() {
        return Err(HitchinError::CompatibilityViolated);
    }
    Ok(b)
}

/// Positive-definiteness of a symmetric matrix through the signs of its
/// leading principal minors.
pub fn is_positive_definite<F: OrderedField>(m: &Matrix<F>) -> bool {
    m.is_square() && *m == m.transpose() && m.leading_principal_minors().iter().all(|d| d.signum_exact() > 0)
}

/// Each half-flat condition evaluated separately.
#[derive(Debug, Clone, PartialEq)]
pub struct Su3Report<F> {
    /// Coefficient of `ω^3`.
    pub omega_cubed: F,
    pub lambda: F,
    pub omega_wedge_rho: Form<F>,
    pub d_rho: Form<F>,
    pub d_omega_squared: Form<F>,
    /// `ω(K·, ·)`; present whenever `λ < 0`.
    pub metric: Option<Matrix<F>>,
    pub metric_positive: bool,
}

impl<F: OrderedField> Su3Report<F> {
    pub fn omega_nondegenerate(&self) -> bool {
        !self.omega_cubed.is_zero()
    }

    pub fn lambda_negative(&self) -> bool {
        self.lambda.signum_exact() < 0
    }

    pub fn compatible(&self) -> bool {
        self.omega_wedge_rho.is_zero()
    }

    pub fn rho_closed(&self) -> bool {
        self.d_rho.is_zero()
    }

    pub fn omega_squared_closed(&self) -> bool {
        self.d_omega_squared.is_zero()
    }

    /// Conditions in order with their outcomes.
    pub fn conditions(&self) -> [(&'static str, bool); 6] {
        [
            ("omega nondegenerate", self.omega_nondegenerate()),
            ("lambda(rho) < 0", self.lambda_negative()),
            ("omega ^ rho = 0", self.compatible()),
            ("d rho = 0", self.rho_closed()),
            ("d(omega^2) = 0", self.omega_squared_closed()),
            ("metric positive definite", self.metric_positive),
        ]
    }

    pub fn half_flat(&self) -> bool {
        self.conditions().iter().all(|c| c.1)
    }

    pub fn failures(&self) -> Vec<String> {
        self.conditions().iter().filter(|c| !c.1).map(|c| c.0.to_string()).collect()
    }
}

/// Checks that `(ω, ρ)` is a half-flat SU(3)-structure on `g`.
pub fn su3_verify<F: OrderedField>(g: &LieAlgebra, omega: &Form<F>, rho: &Form<F>) -> Result<Su3Report<F>, HitchinError> {
    require_six(omega, 2)?;
    require_six(rho, 3)?;
    if g.dim() != 6 {
        return Err(HitchinError::NotSixDimensional(g.dim()));
    }
    let omega_sq = omega.wedge(omega)?;
    let omega_cubed = omega_sq.wedge(omega)?.top_coefficient();
    let inv = invariants(rho)?;
    let metric = if inv.lambda.signum_exact() < 0 { Some(bilinear_raw(omega, &inv.k.matrix)?) } else { None };
    let metric_positive = metric.as_ref().is_some_and(is_positive_definite);
    Ok(Su3Report {
        omega_cubed,
        lambda: inv.lambda,
        omega_wedge_rho: omega.wedge(rho)?,
        d_rho: g.d(rho)?,
        d_omega_squared: g.d(&omega_sq)?,
        metric,
        metric_positive,
    })
}

/// Outcome of the normalisation test `J*ρ ∧ ρ = (2/3) ω^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization<F> {
    /// Coefficient of `(K*ρ) ∧ ρ`, which equals `|λ|^{3/2} J*ρ ∧ ρ`.
    pub c1: F,
    /// Coefficient of `(2/3) ω^3`.
    pub c2: F,
    pub lambda: F,
    pub normalized: bool,
}

/// Decides normalisation without square roots: `c1^2 = |λ|^3 c2^2` with
/// matching signs.
pub fn normalization_check<F: OrderedField>(omega: &Form<F>, rho: &Form<F>) -> Result<Normalization<F>, HitchinError> {
    require_six(omega, 2)?;
    let inv = invariants(rho)?;
    if inv.lambda.signum_exact() >= 0 {
        return Err(HitchinError::NotComplexType);
    }
    let k_rho = rho.pullback(&inv.k.matrix)?;
    let c1 = k_rho.wedge(rho)?.top_coefficient();
    let c2 = omega.wedge_power(3)?.top_coefficient().mul_ref(&F::from_rational(&rat(2, 3)));
    let abs_cubed = -inv.lambda.pow(3);
    let normalized =
        c1.mul_ref(&c1) == abs_cubed.mul_ref(&c2).mul_ref(&c2) && c1.signum_exact() == c2.signum_exact();
    Ok(Normalization { c1, c2, lambda: inv.lambda, normalized })
}

fn check_alpha<R: Ring>(alpha: &Form<R>) -> Result<(), HitchinError> {
    if alpha.dim() != 7 || alpha.degree() != 1 {
        return Err(HitchinError::NotAnnihilator);
    }
    let e7 = IndexTuple::single(7);
    if alpha.coeff(e7).is_zero() || alpha.terms().any(|(t, _)| *t != e7) {
        return Err(HitchinError::NotAnnihilator);
    }
    Ok(())
}

/// `φ = ω ∧ α + J*ρ` given `J*ρ` already computed on six dimensions.
fn assemble_phi<R: Ring>(omega: &Form<R>, j_rho: &Form<R>, alpha: &Form<R>) -> Result<Form<R>, HitchinError> {
    check_alpha(alpha)?;
    Ok(omega.extend_dim(7)?.wedge(alpha)?.add(&j_rho.extend_dim(7)?))
}

/// The G2 three-form `φ = ω ∧ α + J*ρ` on `g ⊕ R`, computed exactly. Needs
/// `sqrt|λ|` in the coefficient field.
pub fn g2_lift(omega: &Form<QuadExt>, rho: &Form<QuadExt>, alpha: &Form<QuadExt>) -> Result<Form<QuadExt>, HitchinError> {
    require_six(omega, 2)?;
    let inv = invariants(rho)?;
    if inv.lambda.sign() >= 0 {
        return Err(HitchinError::NotComplexType);
    }
    let hint = rho.terms().chain(omega.terms()).find_map(|(_, c)| c.radicand());
    let abs = -inv.lambda.clone();
    let root = abs.sqrt_in_field(hint).ok_or(HitchinError::SqrtNotRepresentable)?;
    if hint.is_some() && root.radicand().is_some_and(|d| Some(d) != hint) {
        return Err(HitchinError::SqrtNotRepresentable);
    }
    let scale = abs.mul_ref(&root).unit_inverse().expect("nonzero");
    let j_rho = rho.pullback(&inv.k.matrix)?.scale(&scale);
    assemble_phi(omega, &j_rho, alpha)
}

/// The same lift in floating point.
pub fn g2_lift_f64(omega: &Form<f64>, rho: &Form<f64>, alpha: &Form<f64>) -> Result<Form<f64>, HitchinError> {
    require_six(omega, 2)?;
    let inv = invariants(rho)?;
    if inv.lambda >= 0.0 {
        return Err(HitchinError::NotComplexType);
    }
    let scale = (-inv.lambda).powf(-1.5);
    let j_rho = rho.pullback(&inv.k.matrix)?.scale(&scale);
    assemble_phi(omega, &j_rho, alpha)
}

/// The metric and volume induced by a three-form in dimension seven.
#[derive(Debug, Clone, PartialEq)]
pub struct G2Metric {
    pub g: Matrix<f64>,
    /// `vol` with `vol_g = vol · e^{1...7}`; negative when `φ` induces the
    /// opposite orientation.
    pub volume: f64,
    pub positive_definite: bool,
}

/// `B_ij e^{1...7} = (e_i ⌟ φ) ∧ (e_j ⌟ φ) ∧ φ`, `vol = (det B / 6^7)^{1/9}`
/// (real, signed), `g = B / (6 vol)`.
pub fn g2_metric_volume(phi: &Form<f64>) -> Result<G2Metric, HitchinError> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(HitchinError::NotSevenDimensional);
    }
    let contractions: Vec<Form<f64>> =
        (1..=7).map(|i| phi.interior(&Vector::basis(7, i))).collect::<Result<_, _>>()?;
    let mut b = Matrix::zeros(7, 7);
    for i in 0..7 {
        let left = contractions[i].wedge(phi)?;
        for j in i..7 {
            let v = contractions[j].wedge(&left)?.top_coefficient();
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    let scale = (0..7).flat_map(|i| (0..7).map(move |j| (i, j))).map(|(i, j)| b[(i, j)].abs()).fold(0.0, f64::max);
    let det = b.det();
    if scale == 0.0 || !det.is_finite() || det.abs() <= 1e-12 * scale.powi(7) {
        return Err(HitchinError::Degenerate);
    }
    let volume = (det / 6f64.powi(7)).cbrt().cbrt();
    let g = b.scale(&(1.0 / (6.0 * volume)));
    let positive_definite = cholesky(&g).is_some();
    Ok(G2Metric { g, volume, positive_definite })
}

/// Lower-triangular `L` with `L L^T = m`, or `None` if `m` is not positive
/// definite.
pub fn cholesky(m: &Matrix<f64>) -> Option<Matrix<f64>> {
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        // also rejects NaN
        if d.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

/// Hodge star of `beta` for the metric `g` and the volume form
/// `volume · e^{1...n}`, so that `γ ∧ ⋆β = g(γ, β) vol`.
pub fn hodge_star(beta: &Form<f64>, g: &Matrix<f64>, volume: f64) -> Result<Form<f64>, HitchinError> {
    let n = beta.dim();
    let ginv = g.inverse().ok_or(HitchinError::Degenerate)?;
    // Raising every index is the pullback by g^{-1} on coefficients.
    let raised = beta.pullback(&ginv)?;
    let full = IndexTuple::full(n);
    let mut out = Form::zero(n, n - beta.degree());
    for (t, c) in raised.terms() {
        let rest = IndexTuple::new(&full.indices().filter(|&i| !t.contains(i)).collect::<Vec<_>>())?;
        let (sign, _) = t.wedge(rest).expect("disjoint");
        out.add_term(rest, c * volume * f64::from(sign));
    }
    Ok(out)
}

/// Comparison of `⋆φ φ` with `ρ ∧ α + ω^2 / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeReport {
    pub star_phi: Form<f64>,
    pub expected: Form<f64>,
    pub metric: G2Metric,
    pub max_deviation: f64,
    pub passed: bool,
}

pub fn hodge_dual_check(omega: &Form<f64>, rho: &Form<f64>, alpha: &Form<f64>, tol: f64) -> Result<HodgeReport, HitchinError> {
    let phi = g2_lift_f64(omega, rho, alpha)?;
    let metric = g2_metric_volume(&phi)?;
    let star_phi = hodge_star(&phi, &metric.g, metric.volume)?;
    let omega7 = omega.extend_dim(7)?;
    let expected = rho.extend_dim(7)?.wedge(alpha)?.add(&omega7.wedge(&omega7)?.scale(&0.5));
    let diff = star_phi.sub(&expected);
    let max_deviation = diff.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    let passed = metric.positive_definite && max_deviation <= tol;
    Ok(HodgeReport { star_phi, expected, metric, max_deviation, passed })
}

/// `d(ρ ∧ α + ω^2 / 2)` on `g ⊕ R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocalibration<F> {
    pub d_psi: Form<F>,
    pub closed: bool,
}

pub fn cocalibrated_check<F: Field>(
    g: &LieAlgebra,
    omega: &Form<F>,
    rho: &Form<F>,
    alpha: &Form<F>,
) -> Result<Cocalibration<F>, HitchinError> {
    require_six(omega, 2)?;
    require_six(rho, 3)?;
    check_alpha(alpha)?;
    let h = g.extend_by_line()?;
    let omega7 = omega.extend_dim(7)?;
    let psi = rho.extend_dim(7)?.wedge(alpha)?.add(&omega7.wedge(&omega7)?.scale(&F::from_rational(&rat(1, 2))));
    let d_psi = h.d(&psi)?;
    let closed = d_psi.is_zero();
    Ok(Cocalibration { d_psi, closed })
}

/// `λ((v ⌟ ⋆φ φ)|_U)` in the coordinates of `U`'s basis; negative for every
/// G2-structure.
pub fn g2_restriction_lambda(phi: &Form<f64>, v: &Vector<f64>, u_basis: &[Vector<f64>]) -> Result<f64, HitchinError> {
    let metric = g2_metric_volume(phi)?;
    if !metric.positive_definite {
        return Err(HitchinError::NotG2);
    }
    if v.dim() != 7 || u_basis.len() != 6 || u_basis.iter().any(|u| u.dim() != 7) {
        return Err(HitchinError::NotAComplement);
    }
    let mut cols = vec![v.0.clone()];
    cols.extend(u_basis.iter().map(|u| u.0.clone()));
    let frame = Matrix::from_columns(&cols);
    let col_norms: f64 = cols.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).product();
    if frame.det().abs() <= 1e-12 * col_norms {
        return Err(HitchinError::NotAComplement);
    }
    let psi = hodge_star(phi, &metric.g, metric.volume)?;
    let a = Matrix::from_columns(&cols[1..]);
    let rho_tilde = psi.interior(v)?.pullback(&a)?;
    lambda(&rho_tilde)
}

pub fn g2_restriction_stability(phi: &Form<f64>, v: &Vector<f64>, u_basis: &[Vector<f64>]) -> Result<bool, HitchinError> {
    Ok(g2_restriction_lambda(phi, v, u_basis)? < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_form, parse_rational_form, FieldSpec, Params};
    use crate::scalar::{int, Rational};

    fn q(s: &str, k: usize) -> Form<Rational> {
        parse_rational_form(s, 6, k, &Params::new()).unwrap()
    }

    fn qe(s: &str, n: usize, k: usize) -> Form<QuadExt> {
        parse_form(s, n, k, &Params::new(), FieldSpec::Auto).unwrap()
    }

    fn l61() -> LieAlgebra {
        let imgs = ["e23", "-e13", "e12", "e26-e35", "-e16+e34", "e15-e24"];
        LieAlgebra::new("L6_1", imgs.iter().map(|s| q(s, 2)).collect())
    }

    /// Brute-force K: `K^a_b = -Σ_p sgn(p) ρ(e_b, e_p1, e_p2) ρ(e_p3, e_p4, e_p5) / 12`
    /// over permutations `p` of `1..6` with `p6 = a`.
    fn k_oracle(rho: &Form<Rational>) -> Matrix<Rational> {
        let dense = |i: usize, j: usize, k: usize| -> Rational {
            match IndexTuple::sorted(&[i, j, k]) {
                Ok((s, t)) => rho.coeff(t) * int(s as i64),
                Err(_) => int(0),
            }
        };
        let mut m: Matrix<Rational> = Matrix::zeros(6, 6);
        let perms = permutations6();
        for b in 1..=6 {
            for (sign, p) in &perms {
                // Moving a = p6 to its sorted slot costs (-1)^a, κ adds
                // (-1)^{a-1}: together a uniform minus sign.
                let a = p[5];
                let val = dense(b, p[0], p[1]) * dense(p[2], p[3], p[4]);
                m[(a - 1, b - 1)] = m[(a - 1, b - 1)].clone() - val * int(*sign as i64) * Rational::new(1.into(), 12.into());
            }
        }
        m
    }

    fn permutations6() -> Vec<(i32, [usize; 6])> {
        let mut out = Vec::new();
        let mut p = [1, 2, 3, 4, 5, 6];
        fn rec(k: usize, p: &mut [usize; 6], out: &mut Vec<(i32, [usize; 6])>) {
            if k == 6 {
                let mut inv = 0;
                for i in 0..6 {
                    for j in i + 1..6 {
                        if p[i] > p[j] {
                            inv += 1;
                        }
                    }
                }
                out.push((if inv % 2 == 0 { 1 } else { -1 }, *p));
                return;
            }
            for i in k..6 {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }

    #[test]
    fn k_of_split_form() {
        let rho = q("e123+e456", 3);
        let k = k_endomorphism(&rho).unwrap();
        let d: Vec<Rational> = [1, 1, 1, -1, -1, -1].iter().map(|&x| int(x)).collect();
        assert_eq!(k.matrix, Matrix::diagonal(&d));
        assert_eq!(k.weight, 1);
        assert_eq!(lambda(&rho).unwrap(), int(1));
        assert_eq!(stability_class(&rho).unwrap(), StabilityClass::PositiveStable);
    }

    #[test]
    fn k_matches_oracle() {
        for s in ["e123+e456", "-e126-e135+e234+e456", "e124+2*e135-e236+3*e456", "e123"] {
            let rho = q(s, 3);
            assert_eq!(k_endomorphism(&rho).unwrap().matrix, k_oracle(&rho), "{s}");
        }
    }

    #[test]
    fn degenerate_forms() {
        for s in ["e123", "0"] {
            let rho = q(s, 3);
            assert!(k_endomorphism(&rho).unwrap().matrix.is_zero());
            assert_eq!(lambda(&rho).unwrap(), int(0));
            assert_eq!(stability_class(&rho).unwrap(), StabilityClass::NotStable);
        }
    }

    #[test]
    fn l61_structure() {
        let omega = q("e14+e25-e36", 2);
        let rho = q("-e126-e135+e234+e456", 3);
        assert_eq!(lambda(&rho).unwrap(), int(-4));
        let b = metric_bilinear(&omega, &rho).unwrap();
        assert_eq!(b, Matrix::identity(6).scale(&int(2)));
        let r = su3_verify(&l61(), &omega, &rho).unwrap();
        assert!(r.half_flat(), "{:?}", r.failures());
        assert!(normalization_check(&omega, &rho).unwrap().normalized);
        let rho2 = rho.scale(&int(2));
        assert!(!normalization_check(&omega, &rho2).unwrap().normalized);
    }

    #[test]
    fn failing_conditions() {
        let omega = q("e14+e25-e36", 2);
        let r = su3_verify(&l61(), &omega, &q("e123", 3)).unwrap();
        assert!(!r.lambda_negative());
        assert!(!r.half_flat());
        assert_eq!(normalization_check(&omega, &q("e123", 3)), Err(HitchinError::NotComplexType));
        assert_eq!(metric_bilinear(&omega, &q("e123", 3)), Err(HitchinError::NotComplexType));
        let bad = q("e12+e34+e56", 2);
        let rho = q("-e126-e135+e234+e456", 3);
        assert!(!bad.wedge(&rho).unwrap().is_zero());
        assert_eq!(metric_bilinear(&bad, &rho), Err(HitchinError::CompatibilityViolated));
    }

    #[test]
    fn model_phi_gives_identity() {
        let phi = qe("e123+e145+e167+e246-e257-e347-e356", 7, 3).map(QuadExt::to_f64);
        let m = g2_metric_volume(&phi).unwrap();
        assert!(m.positive_definite);
        assert!((m.volume - 1.0).abs() < 1e-12);
        for i in 0..7 {
            for j in 0..7 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((m.g[(i, j)] - e).abs() < 1e-12);
            }
        }
        assert_eq!(g2_metric_volume(&Form::zero(7, 3)), Err(HitchinError::Degenerate));
        let flipped = qe("e123+e145+e167+e246-e257-e347+e356", 7, 3).map(QuadExt::to_f64);
        assert!(!g2_metric_volume(&flipped).unwrap().positive_definite);
    }

    #[test]
    fn hodge_star_of_model() {
        let phi = qe("e123+e145+e167+e246-e257-e347-e356", 7, 3).map(QuadExt::to_f64);
        let star = hodge_star(&phi, &Matrix::identity(7), 1.0).unwrap();
        let expected = qe("e4567+e2367+e2345+e1357-e1346-e1256-e1247", 7, 4).map(QuadExt::to_f64);
        assert_eq!(star, expected);
    }

    #[test]
    fn lift_of_l61() {
        let omega = qe("e14+e25-e36", 6, 2);
        let rho = qe("-e126-e135+e234+e456", 6, 3);
        let alpha = qe("e7", 7, 1);
        let phi = g2_lift(&omega, &rho, &alpha).unwrap();
        let phi_f = g2_lift_f64(&omega.map(QuadExt::to_f64), &rho.map(QuadExt::to_f64), &alpha.map(QuadExt::to_f64)).unwrap();
        let diff = phi.map(QuadExt::to_f64).sub(&phi_f);
        assert!(diff.terms().all(|(_, c)| c.abs() < 1e-12));
        let m = g2_metric_volume(&phi_f).unwrap();
        assert!(m.positive_definite);
        for i in 0..7 {
            assert!((m.g[(i, i)] - 1.0).abs() < 1e-9);
        }
        let h = hodge_dual_check(&omega.map(QuadExt::to_f64), &rho.map(QuadExt::to_f64), &alpha.map(QuadExt::to_f64), 1e-9).unwrap();
        assert!(h.passed, "deviation {}", h.max_deviation);
        assert!(cocalibrated_check(&l61(), &omega, &rho, &alpha).unwrap().closed);
    }

    #[test]
    fn not_closed_rho_breaks_cocalibration() {
        let omega = q("e14+e25-e36", 2);
        let rho = q("e145", 3);
        let alpha = parse_rational_form("e7", 7, 1, &Params::new()).unwrap();
        let c = cocalibrated_check(&l61(), &omega, &rho, &alpha).unwrap();
        assert!(!c.closed);
        assert!(!l61().d(&rho).unwrap().is_zero());
    }

    #[test]
    fn restriction_is_complex_type() {
        let omega = q("e14+e25-e36", 2).map(|c| num::ToPrimitive::to_f64(c).unwrap());
        let rho = q("-e126-e135+e234+e456", 3).map(|c| num::ToPrimitive::to_f64(c).unwrap());
        let alpha = parse_rational_form("e7", 7, 1, &Params::new()).unwrap().map(|c| num::ToPrimitive::to_f64(c).unwrap());
        let phi = g2_lift_f64(&omega, &rho, &alpha).unwrap();
        for x in [3, 7] {
            let u: Vec<Vector<f64>> = (1..=7).filter(|&i| i != x).map(|i| Vector::basis(7, i)).collect();
            assert!(g2_restriction_stability(&phi, &Vector::basis(7, x), &u).unwrap());
        }
        let mut u: Vec<Vector<f64>> = (1..=7).filter(|&i| i != 3).map(|i| Vector::basis(7, i)).collect();
        u[0] = Vector::basis(7, 3);
        assert_eq!(g2_restriction_stability(&phi, &Vector::basis(7, 3), &u), Err(HitchinError::NotAComplement));
    }
}
