use halfflat::db;
use halfflat::exterior::{Form, Vector};
use halfflat::liealg::LieAlgebra;
use halfflat::obstruct::{
    canonical_complement, lambda_polynomial, obstruction1, obstruction2, one_form_polynomial, ObstructionReport,
    SearchOptions, Verdict,
};
use halfflat::parse::{parse_algebra, Params};
use halfflat::poly::Polynomial;
use halfflat::scalar::{int, Rational};
use proptest::prelude::*;

fn table() -> Vec<LieAlgebra> {
    db::entries().into_iter().map(|e| e.algebra).collect()
}

fn one_form(c: &[i64]) -> Form<Rational> {
    Form::one_form(&c.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn nonzero_one_form() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 6).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn replays_from_scratch(g: &LieAlgebra, r: &ObstructionReport) -> bool {
    let (p, _) = lambda_polynomial(g, r.x.as_ref().unwrap(), &r.w).unwrap();
    Some(&p) == r.polynomial.as_ref()
        && match &r.root {
            Some(q) => q.mul_poly(q) == p,
            None => p.is_zero(),
        }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_form_polynomial_bidegree(entry in 0usize..5, c in nonzero_one_form()) {
        let g = &table()[entry];
        let na = g.closed_forms_basis(3).len() as u32;
        let (p, names) = one_form_polynomial(g, &one_form(&c)).unwrap();
        prop_assert_eq!(names.len() as u32, na + g.closed_forms_basis(4).len() as u32);
        prop_assert!(p.is_homogeneous_in(2, |v| v < na));
        prop_assert!(p.is_homogeneous_in(1, |v| v >= na));
    }

    #[test]
    fn verdict_is_scale_invariant(entry in 0usize..5, c in nonzero_one_form(), s in prop_oneof![-3i64..=-1, 1i64..=3]) {
        let g = &table()[entry];
        let alpha = one_form(&c);
        let opts = SearchOptions::default();
        let a = obstruction1(g, &alpha, &opts).unwrap();
        let b = obstruction1(g, &alpha.scale(&int(s)), &opts).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        let expected = a.polynomial.unwrap().scale(&int(s * s));
        prop_assert_eq!(b.polynomial.as_ref().unwrap(), &expected);
        if b.verdict == Verdict::Refuted {
            prop_assert!(b.check_certificate());
        }
    }

    #[test]
    fn lambda_polynomial_is_quartic(entry in 0usize..5, i in 1usize..=7) {
        let g = &table()[entry];
        let (p, _) = lambda_polynomial(g, &Vector::basis(7, i), &canonical_complement(i, 7)).unwrap();
        prop_assert!(!p.is_zero());
        prop_assert!(p.is_homogeneous_in(4, |_| true));
    }

    #[test]
    fn diagonal_algebras_replay(w in prop::collection::vec(prop_oneof![Just(-1i64), Just(1i64)], 5), seed in 0u64..4) {
        let text: String = w.iter().enumerate().map(|(i, x)| format!("d e{} = {x}*e{}6\n", i + 1, i + 1)).collect();
        let g = parse_algebra(&format!("dim 6\n{text}"), &Params::new()).unwrap();
        let r = obstruction2(&g, None, None, &SearchOptions { seed, ..SearchOptions::default() }).unwrap();
        prop_assert!(r.check_certificate());
        if r.verdict == Verdict::Obstructed {
            prop_assert!(replays_from_scratch(&g, &r));
        }
        if let Some(wit) = &r.witness {
            prop_assert_eq!(r.polynomial.as_ref().unwrap().eval_dense(&wit.point).unwrap(), wit.value.clone());
        }
    }
}

#[test]
fn square_certificate_replays() {
    let g = parse_algebra("dim 6\nd e1 = -e16\nd e2 = -e26\nd e3 = e36\nd e4 = e46\nd e5 = -e56\n", &Params::new()).unwrap();
    let r = obstruction2(&g, None, None, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Obstructed);
    assert!(r.root.as_ref().is_some_and(|q| !q.is_zero()));
    assert!(replays_from_scratch(&g, &r));
}

#[test]
fn zero_certificate_replays() {
    let g = parse_algebra("dim 6\nd e1 = e16\nd e2 = e26\nd e3 = e36\nd e4 = e46\nd e5 = e56\n", &Params::new()).unwrap();
    let r = obstruction2(&g, None, None, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Obstructed);
    assert!(r.polynomial.as_ref().is_some_and(Polynomial::is_zero));
    assert!(replays_from_scratch(&g, &r));
}

#[test]
fn table_witnesses_evaluate() {
    for g in table() {
        for i in 1..=6 {
            let mut c = [0; 6];
            c[i - 1] = 1;
            let r = obstruction1(&g, &one_form(&c), &SearchOptions::default()).unwrap();
            assert_ne!(r.verdict, Verdict::Obstructed, "{} alpha = e{i}", g.name());
            if let Some(w) = &r.witness {
                let v = r.polynomial.as_ref().unwrap().eval_dense(&w.point).unwrap();
                assert_eq!(v, w.value);
                assert_ne!(v, int(0));
            }
        }
    }
}
