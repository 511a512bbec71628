//! Exact scalar rings used as multivector coefficients.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::index::Sign;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Coefficient ring of multivectors and matrices.
///
/// Implemented for [`Rational`] and for polynomials with rational
/// coefficients ([`crate::poly::PolyScalar`]).
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(value: &Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn plus_assign(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self.times(&Self::from_rational(factor))
    }

    fn signed(&self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.negated(),
            Sign::Zero => Self::zero(),
        }
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn plus_assign(&mut self, other: &Self) {
        *self += other;
    }
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Signed rational `±1`.
pub fn sign_rational(sign: Sign) -> Rational {
    integer(sign.to_i32() as i64)
}

/// Canonical `p/q` text, with integers written without a denominator.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `-p`, `p/q` into lowest terms.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(numer) || !valid(denom) {
        return None;
    }
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

pub(crate) fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}
