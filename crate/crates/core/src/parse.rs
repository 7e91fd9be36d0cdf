//! Text formats: rational and surd literals, form expressions and algebra
//! files.
//!
//! Form expressions are sums of terms such as `-e126 - e135 + e234`,
//! `sqrt(3)/2*e123`, `2*e2^e3` or `-sqrt(3)/2*(e14 + e15)`. A basis factor
//! is `e` followed by one digit per index (`e126`), or a `^`-separated chain
//! of such factors (`e1^e2^e6`). Coefficients may use integers, `/`,
//! `sqrt(D)` with `D` square-free, and bound parameter names.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use thiserror::Error;

use crate::exterior::{Form, FormError, IndexTuple, Vector};
use crate::liealg::LieAlgebra;
use crate::scalar::{is_square_free, QuadExt, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unbound parameter `{name}`")]
    UnboundParameter { line: usize, name: String },
    #[error("line {line}: index {index} out of range for dimension {dim}")]
    IndexOutOfRange { line: usize, index: usize, dim: usize },
}

impl ParseError {
    fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }

    fn at_line(self, line: usize) -> Self {
        match self {
            ParseError::Syntax { message, .. } => ParseError::Syntax { line, message },
            ParseError::UnboundParameter { name, .. } => ParseError::UnboundParameter { line, name },
            ParseError::IndexOutOfRange { index, dim, .. } => ParseError::IndexOutOfRange { line, index, dim },
        }
    }
}

/// Which scalars a parser accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldSpec {
    /// Rationals only.
    Rational,
    /// `Q(sqrt d)` for the given square-free `d`.
    Quadratic(u64),
    /// Rationals, or a single radicand chosen by the first `sqrt` seen.
    #[default]
    Auto,
}

impl std::str::FromStr for FieldSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q" => Ok(FieldSpec::Rational),
            "auto" => Ok(FieldSpec::Auto),
            _ => {
                let d = s
                    .strip_prefix("qsqrt:")
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| format!("expected `q`, `auto` or `qsqrt:<d>`, got `{s}`"))?;
                if !is_square_free(d) {
                    return Err(format!("radicand {d} is not square-free"));
                }
                Ok(FieldSpec::Quadratic(d))
            }
        }
    }
}

/// Parameter bindings available to coefficient expressions.
pub type Params = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Basis(Vec<usize>),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| ParseError::syntax(line, "bad integer"))?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "sqrt" {
                    out.push(Tok::Sqrt);
                } else if let Some(digits) = word.strip_prefix('e').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit())) {
                    out.push(Tok::Basis(digits.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()));
                } else {
                    out.push(Tok::Ident(word));
                }
            }
            other => return Err(ParseError::syntax(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    dim: usize,
    line: usize,
    params: &'a Params,
    field: FieldSpec,
    radicand: Option<u64>,
}

type Val = Form<QuadExt>;

impl<'a> ExprParser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(self.err(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn scalar(&self, q: QuadExt) -> Val {
        Form::scalar(self.dim, q)
    }

    fn form_err(&self, e: FormError) -> ParseError {
        match e {
            FormError::IndexOutOfRange(index, dim) => ParseError::IndexOutOfRange { line: self.line, index, dim },
            FormError::RepeatedIndex(i) => self.err(format!("repeated index {i}")),
            other => self.err(other.to_string()),
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            let sub = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.product()?;
            if rhs.degree() != acc.degree() {
                return Err(self.err(format!("cannot add forms of degree {} and {}", acc.degree(), rhs.degree())));
            }
            acc = if sub { acc.sub(&rhs) } else { acc.add(&rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Caret) => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    acc = acc.wedge(&rhs).map_err(|e| self.form_err(e))?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    if rhs.degree() != 0 {
                        return Err(self.err("can only divide by a scalar"));
                    }
                    let inv = rhs.coeff(IndexTuple::EMPTY).unit_inverse().ok_or_else(|| self.err("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                // juxtaposition such as `2e12` or `sqrt(3)(e1+e2)`
                Some(Tok::Basis(_)) | Some(Tok::LParen) | Some(Tok::Sqrt) | Some(Tok::Ident(_)) => {
                    let rhs = self.atom()?;
                    acc = acc.wedge(&rhs).map_err(|e| self.form_err(e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.scalar(QuadExt::rational(Rational::from_integer(n)))),
            Some(Tok::Ident(name)) => match self.params.get(&name) {
                Some(q) => Ok(self.scalar(QuadExt::rational(q.clone()))),
                None => Err(ParseError::UnboundParameter { line: self.line, name }),
            },
            Some(Tok::Sqrt) => {
                self.expect(Tok::LParen)?;
                let d = match self.next() {
                    Some(Tok::Num(n)) => n,
                    other => return Err(self.err(format!("expected integer radicand, found {other:?}"))),
                };
                self.expect(Tok::RParen)?;
                let d: u64 = d.try_into().map_err(|_| self.err("radicand too large"))?;
                self.surd(d)
            }
            Some(Tok::Basis(mut idx)) => {
                // `e1^e2^e6` is one basis factor, so repeated indices are
                // rejected instead of wedging to zero.
                while let (Some(Tok::Caret), Some(Tok::Basis(more))) = (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
                    idx.extend_from_slice(more);
                    self.pos += 2;
                }
                Form::basis(self.dim, &idx).map_err(|e| self.form_err(e))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }

    fn surd(&mut self, d: u64) -> Result<Val, ParseError> {
        if d == 0 {
            return Ok(self.scalar(QuadExt::zero()));
        }
        if let Some(r) = crate::scalar::rational_sqrt(&Rational::from_integer(d.into())) {
            return Ok(self.scalar(QuadExt::rational(r)));
        }
        if !is_square_free(d) {
            return Err(self.err(format!("sqrt({d}): radicand must be square-free")));
        }
        match self.field {
            FieldSpec::Rational => return Err(self.err(format!("sqrt({d}) not allowed over the rationals"))),
            FieldSpec::Quadratic(e) if e != d => return Err(self.err(format!("sqrt({d}) outside the field Q(sqrt({e}))"))),
            _ => {}
        }
        match self.radicand {
            Some(e) if e != d => return Err(self.err(format!("mixed radicands sqrt({e}) and sqrt({d})"))),
            _ => self.radicand = Some(d),
        }
        Ok(self.scalar(QuadExt::sqrt(d)))
    }
}

fn run_parser(text: &str, dim: usize, params: &Params, field: FieldSpec, line: usize) -> Result<Val, ParseError> {
    let toks = tokenize(text, line)?;
    if toks.is_empty() {
        return Err(ParseError::syntax(line, "empty expression"));
    }
    let mut p = ExprParser { toks, pos: 0, dim, line, params, field, radicand: None };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err(format!("trailing input at token {:?}", p.toks[p.pos])));
    }
    Ok(v)
}

/// Parses a form expression of the given degree on a `dim`-dimensional space.
/// A literal `0` denotes the zero form of that degree.
pub fn parse_form(text: &str, dim: usize, degree: usize, params: &Params, field: FieldSpec) -> Result<Form<QuadExt>, ParseError> {
    let v = run_parser(text, dim, params, field, 1)?;
    if v.degree() == 0 && v.is_zero() {
        return Ok(Form::zero(dim, degree));
    }
    if v.degree() != degree {
        return Err(ParseError::syntax(1, format!("expected a {degree}-form, got degree {}", v.degree())));
    }
    Ok(v)
}

/// Parses a form expression whose coefficients must all be rational.
pub fn parse_rational_form(text: &str, dim: usize, degree: usize, params: &Params) -> Result<Form<Rational>, ParseError> {
    let f = parse_form(text, dim, degree, params, FieldSpec::Rational)?;
    Ok(f.map(|c| c.to_rational().expect("rational field")))
}

/// Parses a scalar literal: `p`, `-p`, `p/q`, `sqrt(3)/2`, ...
pub fn parse_scalar(text: &str, params: &Params, field: FieldSpec) -> Result<QuadExt, ParseError> {
    let v = run_parser(text, 0, params, field, 1)?;
    if v.degree() != 0 {
        return Err(ParseError::syntax(1, "expected a scalar"));
    }
    Ok(v.coeff(IndexTuple::EMPTY))
}

/// Parses a rational literal `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    parse_scalar(text, &Params::new(), FieldSpec::Rational).map(|q| q.to_rational().expect("rational field"))
}

/// Parses a vector written with basis symbols, e.g. `e3` or `e1 - 2*e7`.
pub fn parse_vector(text: &str, dim: usize, params: &Params) -> Result<Vector<Rational>, ParseError> {
    let f = parse_rational_form(text, dim, 1, params)?;
    Ok(Vector((1..=dim).map(|i| f.coeff(IndexTuple::single(i))).collect()))
}

/// Parses a comma-separated list of vectors, e.g. `e1,e2,e4,e5,e6,e7`.
pub fn parse_vector_list(text: &str, dim: usize, params: &Params) -> Result<Vec<Vector<Rational>>, ParseError> {
    text.split(',').map(|part| parse_vector(part.trim(), dim, params)).collect()
}

/// Parses a `name=value` parameter binding as given on the command line.
pub fn parse_param_binding(text: &str) -> Result<(String, Rational), ParseError> {
    let (name, value) = text.split_once('=').ok_or_else(|| ParseError::syntax(1, "expected name=value"))?;
    let name = name.trim();
    if !is_identifier(name) {
        return Err(ParseError::syntax(1, format!("invalid parameter name `{name}`")));
    }
    Ok((name.to_string(), parse_rational(value.trim())?))
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
        && !(s.starts_with('e') && s.len() > 1 && s[1..].chars().all(|c| c.is_ascii_digit()))
        && s != "sqrt"
}

/// Parses an algebra file.
///
/// ```text
/// algebra L6_1
/// dim 6
/// d e1 = e2^e3        # or compact: e23
/// d e2 = -e1^e3
/// ```
///
/// `param <name> = <rational>` lines bind parameters (their order relative
/// to `d` lines does not matter); `extra` bindings override file values.
/// Omitted `d e<i>` lines mean `d e^i = 0`.
pub fn parse_algebra(text: &str, extra: &Params) -> Result<LieAlgebra, ParseError> {
    let mut name: Option<String> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut params = Params::new();
    let mut d_lines: Vec<(usize, usize, String)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = content.split_once(char::is_whitespace).map_or((content, ""), |(a, b)| (a, b.trim()));
        match kw {
            "algebra" => {
                if rest.is_empty() {
                    return Err(ParseError::syntax(line, "missing algebra name"));
                }
                name = Some(rest.to_string());
            }
            "dim" => {
                let n: usize = rest.parse().map_err(|_| ParseError::syntax(line, format!("invalid dimension `{rest}`")))?;
                if n == 0 || n > crate::exterior::MAX_DIM {
                    return Err(ParseError::syntax(line, format!("dimension {n} outside 1..=9")));
                }
                if dim.is_some() {
                    return Err(ParseError::syntax(line, "duplicate dim line"));
                }
                dim = Some((n, line));
            }
            "param" => {
                let (pname, value) = parse_param_binding(rest).map_err(|e| e.at_line(line))?;
                params.insert(pname, value);
            }
            "d" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| ParseError::syntax(line, "expected `d e<i> = <2-form>`"))?;
                let lhs = lhs.trim();
                let idx: usize = lhs
                    .strip_prefix('e')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::syntax(line, format!("expected `e<i>` on the left, got `{lhs}`")))?;
                d_lines.push((line, idx, rhs.trim().to_string()));
            }
            other => return Err(ParseError::syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let (dim, _) = dim.ok_or_else(|| ParseError::syntax(1, "missing `dim` line"))?;
    for (k, v) in extra {
        params.insert(k.clone(), v.clone());
    }
    let mut images: Vec<Option<Form<Rational>>> = vec![None; dim];
    for (line, idx, rhs) in d_lines {
        if idx == 0 || idx > dim {
            return Err(ParseError::IndexOutOfRange { line, index: idx, dim });
        }
        if images[idx - 1].is_some() {
            return Err(ParseError::syntax(line, format!("duplicate definition of d e{idx}")));
        }
        let f = run_parser(&rhs, dim, &params, FieldSpec::Rational, line)?;
        let f = if f.degree() == 0 && f.is_zero() { Form::zero(dim, 2) } else { f };
        if f.degree() != 2 {
            return Err(ParseError::syntax(line, format!("d e{idx} must be a 2-form, got degree {}", f.degree())));
        }
        images[idx - 1] = Some(f.map(|c| c.to_rational().expect("rational field")));
    }
    let images = images.into_iter().map(|f| f.unwrap_or_else(|| Form::zero(dim, 2))).collect();
    Ok(LieAlgebra::with_params(name.unwrap_or_else(|| "unnamed".into()), images, params))
}

/// Renders an algebra in the file format accepted by [`parse_algebra`].
pub fn print_algebra(g: &LieAlgebra) -> String {
    let mut out = format!("algebra {}\ndim {}\n", g.name(), g.dim());
    for (k, v) in g.params() {
        out.push_str(&format!("param {k} = {v}\n"));
    }
    for (i, f) in g.d_images().iter().enumerate() {
        if !f.is_zero() {
            out.push_str(&format!("d e{} = {}\n", i + 1, f));
        }
    }
    out
}
