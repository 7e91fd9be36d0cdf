//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use halfflat::db;
use halfflat::exterior::{Form, IndexTuple, Vector};
use halfflat::hitchin::{
    cocalibrated_check, g2_lift_f64, g2_metric_volume, hodge_dual_check, invariants, lambda, metric_bilinear,
    normalization_check, su3_verify,
};
use halfflat::liealg::{abelian_nilradical_obstruction, LieAlgebra};
use halfflat::matrix::Matrix;
use halfflat::obstruct::{consistency_guard, obstruction2, SearchOptions, Verdict};
use halfflat::parse::{parse_algebra, parse_rational_form, Params};
use halfflat::poly::{Monomial, Polynomial};
use halfflat::scalar::{int, QuadExt, Rational, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn table_one() -> Outcome {
    let mut slowest = Duration::ZERO;
    for e in db::entries() {
        let t = Instant::now();
        let g = &e.algebra;
        g.check_d_squared().map_err(|err| format!("{}: {err}", e.name))?;
        let h = g.betti();
        ensure(h == e.expected.h, || format!("{}: h = {h:?}, expected {:?}", e.name, e.expected.h))?;
        let z = g.centre_dim();
        ensure(z == e.expected.centre_dim, || format!("{}: z = {z}, expected {}", e.name, e.expected.centre_dim))?;
        ensure(g.is_unimodular() == e.expected.unimodular(), || format!("{}: unimodularity mismatch", e.name))?;
        let elapsed = t.elapsed();
        within(elapsed, Duration::from_secs(1), e.name)?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("5 algebras, slowest {slowest:?}"))
}

fn table_two() -> Outcome {
    for e in db::entries() {
        let s = e.structure.as_ref().ok_or(format!("{}: no structure", e.name))?;
        let (omega, rho) = s.forms();
        let report = su3_verify(&e.algebra, &omega, &rho).map_err(|err| err.to_string())?;
        ensure(report.half_flat(), || format!("{}: fails {:?}", e.name, report.failures()))?;
        let norm = normalization_check(&omega, &rho).map_err(|err| err.to_string())?;
        ensure(norm.normalized, || format!("{}: not normalised", e.name))?;
        let b = metric_bilinear(&omega, &rho).map_err(|err| err.to_string())?;
        let listed = s.metric().map(|c| QuadExt::rational(c.clone()));
        let c = b[(0, 0)].clone() * listed[(0, 0)].unit_inverse().ok_or("zero metric entry")?;
        ensure(c.sign() > 0, || format!("{}: factor {c} not positive", e.name))?;
        ensure(b == listed.scale(&c), || format!("{}: B is not {c} times the listed metric", e.name))?;
        if s.is_orthonormal_basis() {
            ensure(b == Matrix::identity(6).scale(&c), || format!("{}: basis not orthonormal", e.name))?;
        }
    }
    Ok("5 structures half-flat, normalised, metrics match".into())
}

fn g2_lift() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for e in db::entries() {
        let (omega, rho) = e.structure.as_ref().unwrap().forms();
        let alpha_q = Form::basis(7, &[7]).unwrap();
        let coc = cocalibrated_check(&e.algebra, &omega, &rho, &alpha_q).map_err(|err| err.to_string())?;
        ensure(coc.closed, || format!("{}: d(star phi) = {}", e.name, coc.d_psi))?;

        let (of, rf, af) = (omega.map(QuadExt::to_f64), rho.map(QuadExt::to_f64), alpha_q.map(QuadExt::to_f64));
        let hodge = hodge_dual_check(&of, &rf, &af, 1e-9).map_err(|err| err.to_string())?;
        ensure(hodge.passed, || format!("{}: Hodge deviation {}", e.name, hodge.max_deviation))?;
        worst = worst.max(hodge.max_deviation);

        let phi = g2_lift_f64(&of, &rf, &af).map_err(|err| err.to_string())?;
        let m = g2_metric_volume(&phi).map_err(|err| err.to_string())?;
        ensure(m.positive_definite, || format!("{}: g_phi not positive definite", e.name))?;
        // exact metric g = B / sqrt|lambda|
        let b = metric_bilinear(&omega, &rho).unwrap();
        let root = (-lambda(&rho).unwrap().to_f64()).sqrt();
        for i in 0..7 {
            for j in 0..7 {
                let expected = match (i, j) {
                    (6, 6) => 1.0,
                    (6, _) | (_, 6) => 0.0,
                    _ => b[(i, j)].to_f64() / root,
                };
                let dev = (m.g[(i, j)] - expected).abs();
                worst = worst.max(dev);
                ensure(dev <= 1e-9, || format!("{}: g_phi[{i}][{j}] off by {dev}", e.name))?;
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(5), "G2 checks")?;
    Ok(format!("max deviation {worst:.1e}, {:?}", t.elapsed()))
}

fn obstruction_soundness() -> Outcome {
    let mut refuted = 0;
    for e in db::entries() {
        let (omega, rho) = e.structure.as_ref().unwrap().forms();
        let reports = consistency_guard(&e.algebra, &omega, &rho, &SearchOptions::default())
            .map_err(|err| format!("{}: {err}", e.name))?;
        refuted += reports.len();
    }
    // R^5 ⋊ R with invertible ad: an odd number of trivial zero blocks on
    // the Abelian ideal span{e1..e5, e7} of g ⊕ R.
    let r5 = parse_algebra(
        "algebra R5xR\ndim 6\nd e1 = e16\nd e2 = 2*e26\nd e3 = -e36\nd e4 = 3*e46\nd e5 = -2*e56\n",
        &Params::new(),
    )
    .unwrap();
    let ideal: Vec<Vector<Rational>> = [1, 2, 3, 4, 5, 7].iter().map(|&i| Vector::basis(7, i)).collect();
    let jordan = abelian_nilradical_obstruction(&r5, &ideal).map_err(|err| err.to_string())?;
    ensure(jordan.verdict == Verdict::Obstructed && jordan.check_certificate(), || {
        format!("Jordan parity gave {:?}", jordan.verdict)
    })?;
    // every closed 3- and 4-form is divisible by e^6, so λ(ρ̃) vanishes
    let divisible = parse_algebra(
        "algebra D\ndim 6\nd e1 = e16\nd e2 = e26\nd e3 = e36\nd e4 = e46\nd e5 = e56\n",
        &Params::new(),
    )
    .unwrap();
    let zero = obstruction2(&divisible, None, None, &SearchOptions::default()).map_err(|err| err.to_string())?;
    ensure(
        zero.verdict == Verdict::Obstructed && zero.polynomial.as_ref().is_some_and(Polynomial::is_zero) && zero.check_certificate(),
        || format!("identically-zero case gave {:?}", zero.verdict),
    )?;
    Ok(format!("{refuted} refutations on 5 entries verified; Jordan and zero-lambda certificates replay"))
}

fn random_three_form(rng: &mut ChaCha8Rng) -> Form<Rational> {
    let mut terms = Vec::new();
    for t in IndexTuple::all(6, 3) {
        if rng.gen_bool(0.4) {
            terms.push((t, int(rng.gen_range(-3..=3))));
        }
    }
    Form::from_terms(6, 3, terms).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let rows = (0..6).map(|_| (0..6).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
    Matrix::from_rows(rows)
}

fn hitchin_suite() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut stable, mut positive, mut negative) = (0, 0, 0);
    let n = 1000;
    for _ in 0..n {
        let rho = random_three_form(&mut rng);
        let inv = invariants(&rho).unwrap();
        ensure(inv.k.matrix.trace().is_zero(), || format!("tr K != 0 for {rho}"))?;
        let k2 = inv.k.matrix.mul(&inv.k.matrix);
        if !inv.lambda.is_zero() {
            stable += 1;
            if inv.lambda > int(0) {
                positive += 1;
            } else {
                negative += 1;
            }
            ensure(k2 == Matrix::identity(6).scale(&inv.lambda), || format!("K^2 != lambda Id for {rho}"))?;
        }
        let a = random_matrix(&mut rng);
        let det = a.det();
        let pulled = lambda(&rho.pullback(&a).unwrap()).unwrap();
        ensure(pulled == det.clone() * det * inv.lambda.clone(), || format!("equivariance fails for {rho}"))?;
    }
    let q = |s: &str| parse_rational_form(s, 6, 3, &Params::new()).unwrap();
    ensure(lambda(&q("e123+e456")).unwrap() == int(1), || "lambda(e123+e456) != 1".into())?;
    ensure(lambda(&q("e123")).unwrap().is_zero(), || "lambda(e123) != 0".into())?;
    ensure(positive > 0 && negative > 0, || "random sample missed a stability class".into())?;
    within(t.elapsed(), Duration::from_secs(30), "invariant suite")?;
    Ok(format!("{n} forms ({stable} stable: {positive} positive, {negative} negative), {:?}", t.elapsed()))
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: u32, max_deg: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let deg = rng.gen_range(0..=max_deg);
        let m = Monomial::from_pairs((0..deg).map(|_| (rng.gen_range(0..nvars), 1)));
        p.add_term(m, Rational::new(rng.gen_range(-5..=5i64).into(), rng.gen_range(1..=3i64).into()));
    }
    p
}

fn square_certification() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut squares = 0;
    while squares < 1000 {
        let nvars = rng.gen_range(1..=10);
        let q = random_poly(&mut rng, nvars, 4, 6);
        if q.is_zero() {
            continue;
        }
        let p = q.mul_poly(&q);
        let r = p.perfect_square_root().ok_or_else(|| format!("missed square of {q}"))?;
        ensure(r.mul_poly(&r) == p && (r == q || r == -q.clone()), || format!("wrong root for {q}"))?;
        squares += 1;

        // q^2 + c·v with v a fresh variable has a v-linear term and no v^2 term
        let fresh = Polynomial::var(nvars).scale(&int(rng.gen_range(1..=4)));
        let not_square = p.add_poly(&fresh);
        ensure(not_square.perfect_square_root().is_none(), || format!("certified non-square {not_square}"))?;
        ensure((-p.clone()).perfect_square_root().is_none() || p.as_constant().is_some_and(|c| c.is_zero()), || {
            format!("certified negative square {p}")
        })?;
        let random = random_poly(&mut rng, nvars, 8, 8);
        if let Some(r) = random.perfect_square_root() {
            ensure(r.mul_poly(&r) == random, || format!("mis-certified {random}"))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(30), "square certification")?;
    Ok(format!("1000 squares certified, 3000 other polynomials checked, {:?}", t.elapsed()))
}

fn random_algebras(rng: &mut ChaCha8Rng) -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = db::entries().into_iter().map(|e| e.algebra).collect();
    // diagonal semidirect products R^m ⋊ R
    for _ in 0..20 {
        let m = rng.gen_range(1..=5);
        let imgs = (1..=m)
            .map(|i| Form::monomial(m + 1, &[i, m + 1], int(rng.gen_range(-3..=3))).unwrap())
            .chain(std::iter::once(Form::zero(m + 1, 2)))
            .collect();
        out.push(LieAlgebra::new("diag", imgs));
    }
    // random strictly triangular presentations that pass d^2 = 0
    let mut found = 0;
    while found < 40 {
        let n = rng.gen_range(3..=6);
        let imgs: Vec<Form<Rational>> = (1..=n)
            .map(|k| {
                let mut terms = Vec::new();
                for t in IndexTuple::all(k - 1, 2) {
                    if rng.gen_bool(0.3) {
                        terms.push((t, int(rng.gen_range(-2..=2))));
                    }
                }
                Form::from_terms(n, 2, terms).unwrap()
            })
            .collect();
        let g = LieAlgebra::new("nil", imgs);
        if g.check_d_squared().is_ok() {
            out.push(g);
            found += 1;
        }
    }
    // random changes of basis of the table algebras
    for e in db::entries() {
        let a = loop {
            let a = random_matrix(rng);
            if !a.det().is_zero() {
                break a;
            }
        };
        let ainv = a.inverse().unwrap();
        let imgs = (0..6)
            .map(|i| {
                let mut f = Form::zero(6, 2);
                for j in 0..6 {
                    f = f.add(&e.algebra.d_images()[j].scale(&a[(i, j)]));
                }
                f.pullback(&ainv).unwrap()
            })
            .collect();
        out.push(LieAlgebra::new(format!("{}'", e.name), imgs));
    }
    out
}

fn ce_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let algebras = random_algebras(&mut rng);
    for g in &algebras {
        g.check_d_squared().map_err(|err| format!("{}: {err}", g.name()))?;
        let h = g.betti();
        let euler: i64 = 1 + h.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { -(x as i64) } else { x as i64 }).sum::<i64>();
        ensure(euler == 0, || format!("{}: Euler characteristic {euler} for h = {h:?}", g.name()))?;
        let top = *h.last().unwrap();
        ensure((top == 1) == g.is_unimodular(), || format!("{}: h^n = {top} but unimodular = {}", g.name(), g.is_unimodular()))?;
    }
    Ok(format!("{} algebras", algebras.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 table of algebras (cohomology, centre, unimodularity)", table_one),
        ("2 table of half-flat structures (exact)", table_two),
        ("3 G2 lift, Hodge dual and cocalibration", g2_lift),
        ("4 obstruction soundness", obstruction_soundness),
        ("5 Hitchin invariants on random forms", hitchin_suite),
        ("6 perfect-square certification", square_certification),
        ("7 Chevalley-Eilenberg sanity", ce_sanity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
