//! Exact scalars: arbitrary-precision rationals and the quadratic extension
//! `Q(sqrt d)`, together with the [`Ring`] and [`Field`] traits every
//! coefficient type in the crate implements.
//!
//! Forms, matrices and polynomials are generic over [`Ring`], so the same
//! sign bookkeeping serves exact verification (rationals, surds), symbolic
//! computations ([`Polynomial`](crate::poly::Polynomial) coefficients) and
//! the floating-point metric reconstruction (`f64`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Builds the rational `n / d`.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Commutative ring with unit; the coefficient domain of forms and matrices.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    /// # Panics
    ///
    /// Panics on division by zero.
    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.unit_inverse().expect("division by zero"))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Field for Rational {}

/// A [`Field`] with an exact ordering, so that signs are decidable.
pub trait OrderedField: Field {
    /// `-1`, `0` or `1`.
    fn signum_exact(&self) -> i32;
}

impl OrderedField for Rational {
    fn signum_exact(&self) -> i32 {
        sign_of(self)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl Field for f64 {}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// True when `d > 1` has no repeated prime factor.
pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element `a + b·sqrt(d)` of a real quadratic field.
///
/// Purely rational values (`b == 0`) carry no radicand and combine with any
/// field. Mixing two irrational values with different radicands is a logic
/// error and panics; parsers reject such input up front.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    /// Square-free radicand, or 0 when `b == 0`.
    d: u64,
}

impl QuadExt {
    /// # Panics
    ///
    /// Panics if `b != 0` and `d` is not square-free.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        if Zero::is_zero(&b) {
            return Self::rational(a);
        }
        assert!(is_square_free(d), "radicand {d} is not square-free");
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Zero::zero(), d: 0 }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Zero::zero(), One::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand, `None` for rational values.
    pub fn radicand(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed radicands sqrt({d}) and sqrt({e})"),
        }
    }

    /// Exact sign of `a + b·sqrt(d)`.
    pub fn sign(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Square root inside the same field, when one exists.
    ///
    /// Only square roots that are rational, or rational multiples of a
    /// surd, are searched for; that covers every value this crate needs.
    pub fn sqrt_in_field(&self, radicand_hint: Option<u64>) -> Option<QuadExt> {
        let q = self.to_rational()?;
        if let Some(r) = rational_sqrt(&q) {
            return Some(QuadExt::rational(r));
        }
        let d = radicand_hint?;
        let scaled = q / Rational::from_integer(BigInt::from(d));
        rational_sqrt(&scaled).map(|r| QuadExt::new(Zero::zero(), r, d))
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact sign of a rational.
pub fn rational_sign(q: &Rational) -> i32 {
    sign_of(q)
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        let dq = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::new(a, b, d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Zero::zero())
    }
    fn one() -> Self {
        QuadExt::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_rational(q: &Rational) -> Self {
        QuadExt::rational(q.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(QuadExt::new(c.a / &n, c.b / &n, c.d))
    }
}

impl Field for QuadExt {}

impl OrderedField for QuadExt {
    fn signum_exact(&self) -> i32 {
        self.sign()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else if self.b.is_integer() {
            format!("{}*sqrt({})", self.b, self.d)
        } else {
            let n = self.b.numer();
            let d = self.b.denom();
            if n.is_one() {
                format!("sqrt({})/{}", self.d, d)
            } else if (-n).is_one() {
                format!("-sqrt({})/{}", self.d, d)
            } else {
                format!("{}*sqrt({})/{}", n, self.d, d)
            }
        };
        if Zero::is_zero(&self.a) {
            write!(f, "{surd}")
        } else if let Some(rest) = surd.strip_prefix('-') {
            write!(f, "{} - {}", self.a, rest)
        } else {
            write!(f, "{} + {}", self.a, surd)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
