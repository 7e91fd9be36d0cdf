//! Built-in table of the non-solvable indecomposable six-dimensional Lie
//! algebras, their cohomology and one normalised half-flat structure each.

use crate::exterior::Form;
use crate::liealg::LieAlgebra;
use crate::matrix::Matrix;
use crate::parse::{parse_algebra, parse_form, parse_rational, FieldSpec, Params};
use crate::scalar::{rat, QuadExt, Rational};

/// Betti numbers `h^1..h^6` and centre dimension.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ExpectedProfile {
    pub h: [usize; 6],
    pub centre_dim: usize,
}

impl ExpectedProfile {
    pub fn unimodular(&self) -> bool {
        self.h[5] == 1
    }
}

/// A stored half-flat pair with the metric it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredStructure {
    pub omega: &'static str,
    pub rho: &'static str,
    /// Diagonal entries `g(e_i, e_i)`.
    pub metric_diagonal: [&'static str; 6],
    /// Terms `c e^i · e^j` with `i < j`, contributing `c/2` to `g_ij`.
    pub metric_cross: &'static [(usize, usize, &'static str)],
    pub normalized: bool,
}

impl StoredStructure {
    /// `(ω, ρ)` over `Q` or `Q(sqrt 3)`.
    pub fn forms(&self) -> (Form<QuadExt>, Form<QuadExt>) {
        let p = Params::new();
        let omega = parse_form(self.omega, 6, 2, &p, FieldSpec::Auto).expect("stored omega parses");
        let rho = parse_form(self.rho, 6, 3, &p, FieldSpec::Auto).expect("stored rho parses");
        (omega, rho)
    }

    /// The Gram matrix of the listed metric.
    pub fn metric(&self) -> Matrix<Rational> {
        let mut g = Matrix::zeros(6, 6);
        for (i, d) in self.metric_diagonal.iter().enumerate() {
            g[(i, i)] = parse_rational(d).expect("stored metric parses");
        }
        for &(i, j, c) in self.metric_cross {
            let half = parse_rational(c).expect("stored metric parses") * rat(1, 2);
            g[(i - 1, j - 1)] = half.clone();
            g[(j - 1, i - 1)] = half;
        }
        g
    }

    /// True when the listed metric is the identity.
    pub fn is_orthonormal_basis(&self) -> bool {
        self.metric() == Matrix::identity(6)
    }

    /// The metric as `c (e^i)^2 + ... + c e^i·e^j`.
    pub fn metric_display(&self) -> String {
        if self.is_orthonormal_basis() {
            return "ONB".into();
        }
        let mut terms: Vec<String> = self
            .metric_diagonal
            .iter()
            .enumerate()
            .map(|(i, c)| if *c == "1" { format!("(e{})^2", i + 1) } else { format!("{c}*(e{})^2", i + 1) })
            .collect();
        terms.extend(self.metric_cross.iter().map(|(i, j, c)| match *c {
            "1" => format!("e{i}.e{j}"),
            "-1" => format!("-e{i}.e{j}"),
            _ => format!("{c}*e{i}.e{j}"),
        }));
        terms.join(" + ").replace("+ -", "- ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatabaseEntry {
    pub name: &'static str,
    /// The presentation in the algebra file format.
    pub source: &'static str,
    pub algebra: LieAlgebra,
    pub expected: ExpectedProfile,
    pub structure: Option<StoredStructure>,
}

struct Row {
    name: &'static str,
    source: &'static str,
    h: [usize; 6],
    z: usize,
    structure: Option<StoredStructure>,
}

/// so(3,1) with the second terms of `d e^4`, `d e^5`, `d e^6` missing. This
/// is not a Lie algebra (`d^2 e^1 = e^{245}`); the table entry restores the
/// terms, which are forced by `d^2 = 0` and the action of so(3) on the
/// boosts.
pub const SO31_TRUNCATED: &str =
    "algebra so(3,1)-truncated\ndim 6\nd e1 = e23 - e56\nd e2 = -e13 + e46\nd e3 = e12 - e45\nd e4 = e26\nd e5 = e34\nd e6 = e15\n";

const ONB: [&str; 6] = ["1", "1", "1", "1", "1", "1"];

fn rows() -> Vec<Row> {
    let standard = StoredStructure {
        omega: "e14 + e25 - e36",
        rho: "-e126 - e135 + e234 + e456",
        metric_diagonal: ONB,
        metric_cross: &[],
        normalized: true,
    };
    vec![
        Row {
            name: "L6_1",
            source: "algebra L6_1\ndim 6\nd e1 = e23\nd e2 = -e13\nd e3 = e12\nd e4 = e26 - e35\nd e5 = -e16 + e34\nd e6 = e15 - e24\n",
            h: [0, 0, 2, 0, 0, 1],
            z: 0,
            structure: Some(standard.clone()),
        },
        Row {
            name: "L6_2",
            source: "algebra L6_2\ndim 6\nd e1 = e23\nd e2 = 2*e12\nd e3 = -2*e13\nd e4 = e14 + e25\nd e5 = -e15 + e34\nd e6 = e45\n",
            h: [0, 0, 2, 0, 0, 1],
            z: 1,
            structure: Some(StoredStructure {
                omega: "-e14 + e25 + e36",
                rho: "-2*e125 - 2*e126 + 3*e135 + 2*e136 + e156 + 2*e234 + e245 + e345 - e346 - 19/4*e456",
                metric_diagonal: ["2", "4", "6", "17/2", "53/4", "19/2"],
                metric_cross: &[(1, 4, "-8"), (2, 3, "-8"), (2, 6, "-4"), (3, 5, "-10"), (3, 6, "-4"), (5, 6, "21")],
                normalized: true,
            }),
        },
        Row {
            name: "L6_3",
            source: "algebra L6_3\ndim 6\nd e1 = e23\nd e2 = 2*e12\nd e3 = -2*e13\nd e4 = e14 + e25 + e46\nd e5 = -e15 + e34 + e56\nd e6 = 0\n",
            h: [1, 0, 1, 1, 0, 0],
            z: 0,
            structure: Some(StoredStructure {
                omega: "e15 + e24 - e26 + e36 + e56",
                rho: "3*e124 + 11*e126 - e134 - 2*e136 - 2*e156 + e235 - e246 + e346 + e456",
                metric_diagonal: ["5", "14", "1", "1", "1", "18"],
                metric_cross: &[(1, 4, "-4"), (1, 6, "-18"), (2, 3, "-6"), (2, 5, "-4"), (4, 6, "8")],
                normalized: true,
            }),
        },
        Row {
            name: "L6_4",
            source: "algebra L6_4\ndim 6\nd e1 = e23\nd e2 = 2*e12\nd e3 = -2*e13\nd e4 = 2*e14 + 2*e25\nd e5 = e26 + e34\nd e6 = -2*e16 + 2*e35\n",
            h: [0, 0, 2, 0, 0, 1],
            z: 0,
            structure: Some(StoredStructure {
                omega: "-sqrt(3)/2*(e14 + e15 - 2*e24 - e25 + e36)",
                rho: "sqrt(3)/2*(e123 + e126 + e134 + e235 - e456)",
                metric_diagonal: ["1", "2", "1", "2", "1", "1"],
                metric_cross: &[(1, 2, "-2"), (1, 4, "1"), (1, 5, "1"), (2, 4, "-2"), (2, 5, "-1"), (3, 6, "1"), (4, 5, "2")],
                normalized: true,
            }),
        },
        Row {
            name: "so(3,1)",
            source: "algebra so(3,1)\ndim 6\nd e1 = e23 - e56\nd e2 = -e13 + e46\nd e3 = e12 - e45\nd e4 = e26 - e35\nd e5 = -e16 + e34\nd e6 = e15 - e24\n",
            h: [0, 0, 2, 0, 0, 1],
            z: 0,
            structure: Some(standard),
        },
    ]
}

/// Every entry in table order.
pub fn entries() -> Vec<DatabaseEntry> {
    rows()
        .into_iter()
        .map(|r| DatabaseEntry {
            name: r.name,
            source: r.source,
            algebra: parse_algebra(r.source, &Params::new()).expect("stored algebra parses"),
            expected: ExpectedProfile { h: r.h, centre_dim: r.z },
            structure: r.structure,
        })
        .collect()
}

pub fn names() -> Vec<&'static str> {
    rows().iter().map(|r| r.name).collect()
}

/// Looks up an entry by name.
pub fn entry(name: &str) -> Option<DatabaseEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::print_algebra;

    #[test]
    fn five_entries() {
        assert_eq!(names(), ["L6_1", "L6_2", "L6_3", "L6_4", "so(3,1)"]);
    }

    #[test]
    fn round_trip() {
        for e in entries() {
            let printed = print_algebra(&e.algebra);
            assert_eq!(parse_algebra(&printed, &Params::new()).unwrap(), e.algebra, "{}", e.name);
        }
    }

    #[test]
    fn truncated_so31_fails_jacobi() {
        let g = parse_algebra(SO31_TRUNCATED, &Params::new()).unwrap();
        match g.check_d_squared() {
            Err(crate::liealg::LieError::JacobiViolated { index, witness }) => {
                assert_eq!(index, 1);
                assert_eq!(witness, "e245");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(entry("so(3,1)").unwrap().algebra.check_d_squared().is_ok());
    }

    #[test]
    fn metrics() {
        let e = entry("L6_1").unwrap();
        assert!(e.structure.as_ref().unwrap().is_orthonormal_basis());
        let s = entry("L6_2").unwrap().structure.unwrap();
        let g = s.metric();
        assert_eq!(g[(0, 3)], rat(-4, 1));
        assert_eq!(g[(4, 4)], rat(53, 4));
        assert!(s.metric_display().starts_with("2*(e1)^2 + 4*(e2)^2"));
        assert!(s.metric_display().contains("- 8*e1.e4"));
    }
}
