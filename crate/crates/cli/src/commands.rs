use std::fmt::Display;

use halfflat::db::{self, DatabaseEntry};
use halfflat::exterior::{Form, Vector};
use halfflat::hitchin::{
    cocalibrated_check, g2_lift, g2_lift_f64, g2_metric_volume, hodge_dual_check, metric_bilinear, normalization_check,
    stability_class, su3_verify, HitchinError,
};
use halfflat::liealg::{abelian_nilradical_obstruction, LieAlgebra};
use halfflat::matrix::Matrix;
use halfflat::obstruct::{
    consistency_guard, obstruction1, obstruction1_scan, obstruction2, rational_witness_pair,
    ObstructError, ObstructionReport, SearchOptions, Verdict,
};
use halfflat::parse::{parse_algebra, parse_form, parse_rational_form, parse_vector, parse_vector_list, FieldSpec, Params};
use halfflat::scalar::{QuadExt, Ring};
use serde_json::{json, Map, Value};

use crate::report::{Check, Report, Status};

/// Global settings shared by every command.
pub struct Ctx {
    pub params: Params,
    pub field: FieldSpec,
    pub tol: f64,
    pub seed: u64,
    pub json: bool,
}

/// Errors that end a command early.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Soundness(String),
}

impl Failure {
    pub fn status(&self) -> Status {
        match self {
            Failure::Input(_) => Status::InputError,
            Failure::Soundness(_) => Status::SoundnessViolation,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Soundness(m) => m,
        }
    }
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

type Res = Result<(), Failure>;

/// Reads `db:NAME` or an algebra file and checks `d^2 = 0`.
fn load(ctx: &Ctx, rep: &mut Report, source: &str) -> Result<(LieAlgebra, Option<DatabaseEntry>), Failure> {
    let (g, entry) = match source.strip_prefix("db:") {
        Some(name) => {
            let e = db::entry(name)
                .ok_or_else(|| Failure::Input(format!("no database entry `{name}`; known: {}", db::names().join(", "))))?;
            (e.algebra.clone(), Some(e))
        }
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
            (parse_algebra(&text, &ctx.params).map_err(|e| Failure::Input(format!("{source}: {e}")))?, None)
        }
    };
    rep.set("algebra", g.name());
    if let Err(e) = g.check_d_squared() {
        if let halfflat::liealg::LieError::JacobiViolated { index, witness } = &e {
            rep.set("jacobi_witness", json!({ "index": index, "d2": witness }));
        }
        return Err(input(e));
    }
    Ok((g, entry))
}

fn radicand(f: &Form<QuadExt>) -> Option<u64> {
    f.terms().find_map(|(_, c)| c.radicand())
}

/// Parses forms that must share one coefficient field.
fn parse_forms(ctx: &Ctx, dim: usize, specs: &[(&str, usize)]) -> Result<Vec<Form<QuadExt>>, Failure> {
    let mut field = ctx.field;
    let mut out = Vec::new();
    for &(text, degree) in specs {
        let f = parse_form(text, dim, degree, &ctx.params, field).map_err(|e| Failure::Input(format!("`{text}`: {e}")))?;
        if field == FieldSpec::Auto {
            if let Some(d) = radicand(&f) {
                field = FieldSpec::Quadratic(d);
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// `(ω, ρ)` from the flags, falling back to the stored structure. The flag
/// reports whether the stored pair is used unchanged.
fn structure(
    ctx: &Ctx,
    g: &LieAlgebra,
    entry: Option<&DatabaseEntry>,
    omega: Option<&str>,
    rho: Option<&str>,
) -> Result<(Form<QuadExt>, Form<QuadExt>, bool), Failure> {
    let stored = entry.and_then(|e| e.structure.as_ref());
    let pick = |flag: Option<&str>, field: fn(&db::StoredStructure) -> &'static str, name: &str| {
        flag.map(str::to_string)
            .or_else(|| stored.map(|s| field(s).to_string()))
            .ok_or_else(|| Failure::Input(format!("no stored structure; pass --{name}")))
    };
    let omega_text = pick(omega, |s| s.omega, "omega")?;
    let rho_text = pick(rho, |s| s.rho, "rho")?;
    let mut forms = parse_forms(ctx, g.dim(), &[(&omega_text, 2), (&rho_text, 3)])?;
    let rho = forms.pop().unwrap();
    let omega = forms.pop().unwrap();
    Ok((omega, rho, stored.is_some() && omega_text == stored.unwrap().omega && rho_text == stored.unwrap().rho))
}

fn matrix_json<R: Ring + Display>(m: &Matrix<R>) -> Value {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect()
}

fn float(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.trim_start_matches('-').trim_matches(|c| c == '0' || c == '.').is_empty() {
        "0.000000000".into()
    } else {
        s
    }
}

fn float_matrix_json(m: &Matrix<f64>) -> Value {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| float(*x)).collect::<Vec<_>>()).collect()
}

fn detail_form<R: Ring + halfflat::exterior::CoeffFormat>(f: &Form<R>) -> String {
    if f.is_zero() {
        String::new()
    } else {
        f.to_string()
    }
}

/// `Some(c)` when `m = c · I`.
fn scalar_multiple_of_identity(m: &Matrix<QuadExt>) -> Option<QuadExt> {
    let c = m[(0, 0)].clone();
    (*m == Matrix::identity(m.rows()).scale(&c)).then_some(c)
}

pub fn invariants(ctx: &Ctx, rep: &mut Report, source: &str) -> Res {
    let (g, entry) = load(ctx, rep, source)?;
    let h = g.betti();
    let z = g.centre_dim();
    let unimodular = g.is_unimodular();
    rep.set("dim", g.dim());
    rep.set("h", h.clone());
    rep.set("centre_dim", z);
    rep.set("unimodular", unimodular);
    rep.set("trivial_23", g.is_23_trivial());
    rep.set("derived_series", g.derived_series());
    rep.check("d^2 = 0", true, "");
    let euler: i64 = std::iter::once(1).chain(h.iter().map(|&x| x as i64)).enumerate().map(|(k, x)| if k % 2 == 0 { x } else { -x }).sum();
    rep.check("euler characteristic vanishes", euler == 0, format!("{euler}"));
    rep.check("h^n = 1 iff unimodular", (h.last() == Some(&1)) == unimodular, "");
    if let Some(e) = entry {
        rep.check("h matches table", h == e.expected.h, format!("{:?}", e.expected.h));
        rep.check("centre matches table", z == e.expected.centre_dim, format!("{}", e.expected.centre_dim));
        rep.check("unimodularity matches table", unimodular == e.expected.unimodular(), "");
    }
    Ok(())
}

pub fn closed_basis(ctx: &Ctx, rep: &mut Report, source: &str, k: usize) -> Res {
    let (g, _) = load(ctx, rep, source)?;
    if k > g.dim() {
        return Err(Failure::Input(format!("degree {k} exceeds dimension {}", g.dim())));
    }
    let basis = g.closed_forms_basis(k);
    rep.set("k", k);
    rep.set("dimension", basis.len());
    rep.set("basis", basis.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}

fn g2_checks(rep: &mut Report, g: &LieAlgebra, omega: &Form<QuadExt>, rho: &Form<QuadExt>, alpha: &Form<QuadExt>, tol: f64) {
    match cocalibrated_check(g, omega, rho, alpha) {
        Ok(c) => rep.check("d(star phi) = 0", c.closed, detail_form(&c.d_psi)),
        Err(e) => rep.check("d(star phi) = 0", false, e.to_string()),
    }
    let (of, rf, af) = (omega.map(QuadExt::to_f64), rho.map(QuadExt::to_f64), alpha.map(QuadExt::to_f64));
    match hodge_dual_check(&of, &rf, &af, tol) {
        Ok(h) => rep.check(
            "star phi = rho ^ alpha + omega^2/2",
            h.passed,
            format!("max deviation {:.1e}", h.max_deviation),
        ),
        Err(e) => rep.check("star phi = rho ^ alpha + omega^2/2", false, e.to_string()),
    }
}

fn e7() -> Form<QuadExt> {
    Form::basis(7, &[7]).expect("e7")
}

pub fn verify(ctx: &Ctx, rep: &mut Report, source: &str, omega: Option<&str>, rho: Option<&str>, normalized: bool, g2: bool) -> Res {
    let (g, entry) = load(ctx, rep, source)?;
    let (omega, rho, stored) = structure(ctx, &g, entry.as_ref(), omega, rho)?;
    let r = su3_verify(&g, &omega, &rho).map_err(input)?;
    rep.set("omega", omega.to_string());
    rep.set("rho", rho.to_string());
    rep.set("lambda", r.lambda.to_string());
    rep.set("stability", serde_json::to_value(stability_class(&rho).map_err(input)?).unwrap());
    if let Some(b) = &r.metric {
        rep.set("metric_bilinear", matrix_json(b));
        let shape = match scalar_multiple_of_identity(b) {
            Some(c) if c.sign() > 0 => "ONB".to_string(),
            _ => "general".to_string(),
        };
        rep.set("metric", shape);
    }
    let details = [
        r.omega_cubed.to_string(),
        r.lambda.to_string(),
        detail_form(&r.omega_wedge_rho),
        detail_form(&r.d_rho),
        detail_form(&r.d_omega_squared),
        String::new(),
    ];
    for ((name, ok), detail) in r.conditions().into_iter().zip(details) {
        let detail = if ok && name != "lambda(rho) < 0" { String::new() } else { detail };
        rep.check(name, ok, detail);
    }
    if stored {
        let s = entry.as_ref().and_then(|e| e.structure.as_ref()).unwrap();
        rep.set("listed_metric", s.metric_display());
        let listed = s.metric().map(|c| QuadExt::rational(c.clone()));
        let factor = r.metric.as_ref().and_then(|b| {
            let c = b[(0, 0)].clone() * listed[(0, 0)].unit_inverse()?;
            (c.sign() > 0 && *b == listed.scale(&c)).then_some(c)
        });
        rep.check("metric matches table", factor.is_some(), factor.map(|c| format!("factor {c}")).unwrap_or_default());
    }
    if normalized {
        match normalization_check(&omega, &rho) {
            Ok(n) => rep.check("normalised", n.normalized, format!("c1 = {}, c2 = {}", n.c1, n.c2)),
            Err(e) => rep.check("normalised", false, e.to_string()),
        }
    }
    if g2 {
        g2_checks(rep, &g, &omega, &rho, &e7(), ctx.tol);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    OneForm,
    LambdaSquare,
    Jordan,
}

pub struct ObstructArgs<'a> {
    pub method: MethodArg,
    pub alpha: Option<&'a str>,
    pub x: Option<&'a str>,
    pub w: Option<&'a str>,
    pub ideal: Option<&'a str>,
    pub max_sample_radius: i64,
}

fn obstruct_error(e: ObstructError) -> Failure {
    match e {
        ObstructError::SoundnessViolation(m) => Failure::Soundness(m),
        other => input(other),
    }
}

fn report_json(r: &ObstructionReport, full_polynomial: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("method".into(), r.method.to_string().into());
    m.insert("verdict".into(), r.verdict.to_string().into());
    if let Some(a) = &r.alpha {
        m.insert("alpha".into(), a.to_string().into());
    }
    if let Some(x) = &r.x {
        m.insert("x".into(), Form::one_form(&x.0).to_string().into());
        m.insert("w".into(), r.w.iter().map(|v| Form::one_form(&v.0).to_string()).collect::<Vec<_>>().into());
    }
    if let Some(p) = &r.polynomial {
        m.insert("polynomial_terms".into(), p.len().into());
        if full_polynomial || p.len() <= 12 {
            m.insert("polynomial".into(), r.show(p).into());
        }
    }
    if let Some(q) = &r.root {
        m.insert("root".into(), r.show(q).into());
    }
    if let Some(w) = &r.witness {
        let point: Map<String, Value> = r
            .variables
            .iter()
            .zip(&w.point)
            .filter(|(_, v)| !num::Zero::is_zero(*v))
            .map(|(k, v)| (k.clone(), v.to_string().into()))
            .collect();
        m.insert("witness".into(), json!({ "nonzero_coordinates": point, "value": w.value.to_string() }));
    }
    if let Some(c) = r.jordan_count {
        m.insert("jordan_count".into(), c.into());
    }
    if !r.note.is_empty() {
        m.insert("note".into(), r.note.clone().into());
    }
    m
}

pub fn obstruct(ctx: &Ctx, rep: &mut Report, source: &str, args: &ObstructArgs) -> Res {
    let (g, entry) = load(ctx, rep, source)?;
    let mut opts = SearchOptions { seed: ctx.seed, max_sample_radius: args.max_sample_radius, ..SearchOptions::default() };
    if args.max_sample_radius < 1 {
        return Err(Failure::Input("--max-sample-radius must be positive".into()));
    }
    let structure = entry.as_ref().and_then(|e| e.structure.as_ref());
    if let Some(s) = structure {
        let (omega, rho) = s.forms();
        if let Some((r, sigma)) = rational_witness_pair(&omega, &rho) {
            opts = opts.with_hint(r, sigma);
        }
    }
    let n = g.dim();
    let report = match args.method {
        MethodArg::OneForm => match args.alpha {
            Some(a) => {
                let alpha = parse_rational_form(a, n, 1, &ctx.params).map_err(|e| Failure::Input(format!("--alpha: {e}")))?;
                obstruction1(&g, &alpha, &opts)
            }
            None => obstruction1_scan(&g, None, &opts),
        }
        .map_err(obstruct_error)?,
        MethodArg::LambdaSquare => {
            let x = args
                .x
                .map(|t| parse_vector(t, n + 1, &ctx.params))
                .transpose()
                .map_err(|e| Failure::Input(format!("--x: {e}")))?;
            let w = args
                .w
                .map(|t| parse_vector_list(t, n + 1, &ctx.params))
                .transpose()
                .map_err(|e| Failure::Input(format!("--w: {e}")))?;
            obstruction2(&g, x.as_ref(), w.as_deref(), &opts).map_err(obstruct_error)?
        }
        MethodArg::Jordan => {
            let text = args.ideal.ok_or_else(|| Failure::Input("--method jordan needs --ideal".into()))?;
            let ideal: Vec<Vector<_>> =
                parse_vector_list(text, n + 1, &ctx.params).map_err(|e| Failure::Input(format!("--ideal: {e}")))?;
            abelian_nilradical_obstruction(&g, &ideal).map_err(input)?
        }
    };
    for (k, v) in report_json(&report, ctx.json) {
        rep.set(&k, v);
    }
    let replay = report.check_certificate();
    rep.check("certificate replays", replay, "");
    if !replay {
        return Err(Failure::Soundness(format!("{} certificate does not replay", report.method)));
    }
    if report.verdict == Verdict::Obstructed && structure.is_some() {
        return Err(Failure::Soundness(format!("{} obstructs {}, which carries a verified half-flat structure", report.method, g.name())));
    }
    Ok(())
}

pub fn g2(ctx: &Ctx, rep: &mut Report, source: &str, alpha: &str, omega: Option<&str>, rho: Option<&str>) -> Res {
    let (g, entry) = load(ctx, rep, source)?;
    let (omega, rho, _) = structure(ctx, &g, entry.as_ref(), omega, rho)?;
    let field = radicand(&omega).or(radicand(&rho)).map_or(ctx.field, FieldSpec::Quadratic);
    let alpha = parse_form(alpha, g.dim() + 1, 1, &ctx.params, field).map_err(|e| Failure::Input(format!("--alpha: {e}")))?;
    match g2_lift(&omega, &rho, &alpha) {
        Ok(phi) => rep.set("phi", phi.to_string()),
        Err(HitchinError::SqrtNotRepresentable) => {}
        Err(e) => return Err(input(e)),
    }
    let (of, rf, af) = (omega.map(QuadExt::to_f64), rho.map(QuadExt::to_f64), alpha.map(QuadExt::to_f64));
    let phi = g2_lift_f64(&of, &rf, &af).map_err(input)?;
    let m = g2_metric_volume(&phi).map_err(input)?;
    rep.set("volume", float(m.volume));
    rep.set("metric", float_matrix_json(&m.g));
    rep.check("g_phi positive definite", m.positive_definite, "");
    if let Ok(b) = metric_bilinear(&omega, &rho) {
        let root = (-halfflat::hitchin::lambda(&rho).map_err(input)?.to_f64()).sqrt();
        let mut dev: f64 = 0.0;
        for i in 0..7 {
            for j in 0..7 {
                let expected = match (i, j) {
                    (6, 6) => af.coeff(halfflat::exterior::IndexTuple::single(7)).powi(2),
                    (6, _) | (_, 6) => 0.0,
                    _ => b[(i, j)].to_f64() / root,
                };
                dev = dev.max((m.g[(i, j)] - expected).abs());
            }
        }
        rep.check("g_phi restricts to g_(omega, rho)", dev <= ctx.tol, format!("max deviation {dev:.1e}"));
    }
    g2_checks(rep, &g, &omega, &rho, &alpha, ctx.tol);
    Ok(())
}

pub fn db_list(rep: &mut Report) -> Res {
    let entries: Vec<Value> = db::entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "h": e.expected.h,
                "centre_dim": e.expected.centre_dim,
                "unimodular": e.expected.unimodular(),
                "metric": e.structure.as_ref().map(|s| s.metric_display()),
            })
        })
        .collect();
    rep.set("count", entries.len());
    rep.set("entries", entries);
    Ok(())
}

struct EntryOutcome {
    checks: Vec<Check>,
    summary: Value,
    soundness: Option<String>,
}

fn verify_entry(e: &DatabaseEntry, tol: f64, seed: u64) -> EntryOutcome {
    let mut rep = Report::new(Vec::new(), seed, tol);
    let g = &e.algebra;
    let mut soundness = None;
    rep.check("d^2 = 0", g.check_d_squared().is_ok(), "");
    let h = g.betti();
    rep.check("h matches table", h == e.expected.h, format!("{h:?}"));
    rep.check("centre matches table", g.centre_dim() == e.expected.centre_dim, format!("{}", g.centre_dim()));
    rep.check("unimodularity matches table", g.is_unimodular() == e.expected.unimodular(), "");
    let mut refuted = 0;
    if let Some(s) = &e.structure {
        let (omega, rho) = s.forms();
        match su3_verify(g, &omega, &rho) {
            Ok(r) => rep.check("half-flat", r.half_flat(), r.failures().join(", ")),
            Err(err) => rep.check("half-flat", false, err.to_string()),
        }
        match normalization_check(&omega, &rho) {
            Ok(n) => rep.check("normalised", n.normalized, ""),
            Err(err) => rep.check("normalised", false, err.to_string()),
        }
        let listed = s.metric().map(|c| QuadExt::rational(c.clone()));
        let matches = metric_bilinear(&omega, &rho).ok().is_some_and(|b| {
            listed[(0, 0)]
                .unit_inverse()
                .map(|inv| b[(0, 0)].clone() * inv)
                .is_some_and(|c| c.sign() > 0 && b == listed.scale(&c))
        });
        rep.check("metric matches table", matches, s.metric_display());
        g2_checks(&mut rep, g, &omega, &rho, &e7(), tol);
        match consistency_guard(g, &omega, &rho, &SearchOptions { seed, ..SearchOptions::default() }) {
            Ok(reports) => {
                refuted = reports.len();
                rep.check("obstructions refuted", true, format!("{refuted} tests"));
            }
            Err(ObstructError::SoundnessViolation(m)) => {
                rep.check("obstructions refuted", false, m.clone());
                soundness = Some(format!("{}: {m}", e.name));
            }
            Err(err) => rep.check("obstructions refuted", false, err.to_string()),
        }
    }
    let passed = rep.checks.iter().all(|c| c.passed);
    let checks = rep.checks.into_iter().map(|c| Check { name: format!("{}: {}", e.name, c.name), ..c }).collect();
    EntryOutcome {
        checks,
        summary: json!({ "name": e.name, "passed": passed, "refuted_obstructions": refuted }),
        soundness,
    }
}

pub fn db_verify_all(ctx: &Ctx, rep: &mut Report) -> Res {
    let mut entries = db::entries();
    entries.sort_by(|a, b| a.name.cmp(b.name));
    let outcomes: Vec<EntryOutcome> = std::thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(|| verify_entry(e, ctx.tol, ctx.seed))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
    });
    let mut soundness = Vec::new();
    let mut summaries = Vec::new();
    for o in outcomes {
        rep.checks.extend(o.checks);
        summaries.push(o.summary);
        soundness.extend(o.soundness);
    }
    rep.set("entries", summaries);
    if !soundness.is_empty() {
        return Err(Failure::Soundness(soundness.join("; ")));
    }
    Ok(())
}
