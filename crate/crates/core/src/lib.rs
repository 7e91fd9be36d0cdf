//! Exact computations for half-flat SU(3)-structures on six-dimensional Lie
//! algebras and cocalibrated G2-structures on their one-dimensional
//! extensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`poly`]: exact rationals, the quadratic fields
//!   `Q(sqrt d)`, and sparse multivariate polynomials with a certified
//!   perfect-square test.
//! * [`matrix`]: dense exact linear algebra (Bareiss rank, kernels).
//! * [`exterior`]: alternating forms with wedge, interior product, the
//!   isomorphism `κ: Λ^{n-1} → V ⊗ Λ^n` and pullbacks.
//! * [`liealg`]: Lie algebras given by their Chevalley–Eilenberg
//!   differential, cohomology, centre, unimodularity and the
//!   Jordan-block parity test.
//! * [`hitchin`]: the invariants `K_ρ`, `λ(ρ)` of three-forms in dimension
//!   six, half-flat verification and the G2 lift.
//! * [`obstruct`]: the two symbolic non-existence procedures.
//! * [`db`]: the built-in table of non-solvable algebras and their
//!   structures.
//!
//! ```
//! use halfflat::db;
//! use halfflat::hitchin::{lambda, StabilityClass, stability_class};
//!
//! let entry = db::entry("L6_1").unwrap();
//! let (_omega, rho) = entry.structure.as_ref().unwrap().forms();
//! assert_eq!(stability_class(&rho).unwrap(), StabilityClass::ComplexStable);
//! assert_eq!(lambda(&rho).unwrap().to_string(), "-4");
//! ```

pub mod db;
pub mod exterior;
pub mod hitchin;
pub mod liealg;
pub mod matrix;
pub mod obstruct;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use exterior::{Form, IndexTuple, Vector};
pub use liealg::LieAlgebra;
pub use poly::Polynomial;
pub use scalar::{QuadExt, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/index.md")]
    mod index {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/lie-algebras.md")]
    mod lie_algebras {}
    #[doc = include_str!("../../../book/src/stable-forms.md")]
    mod stable_forms {}
    #[doc = include_str!("../../../book/src/half-flat.md")]
    mod half_flat {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/database.md")]
    mod database {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
