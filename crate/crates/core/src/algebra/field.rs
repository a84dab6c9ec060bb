use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tower::Split;

/// Arbitrary-precision rational numbers. `BigRational` keeps the denominator
/// positive and the fraction reduced.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficient arithmetic shared by the rationals and extension-tower elements.
///
/// Elements of a tower need their tower to build constants, so constructors
/// take an existing element as a template (`zero_like`, `one_like`).
/// Inversion is the only fallible operation: in a tower that is not yet known
/// to be a field it may run into a zero divisor, which is reported as a
/// [`Split`].
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn rational_like(&self, q: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self, Split>;

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }

    fn int_like(&self, n: i64) -> Self {
        self.rational_like(&rat(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Returns the value as a rational if the element lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// True when printing needs parentheses as a factor (sums, negatives).
    fn needs_parens(&self) -> bool {
        false
    }
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, Split> {
        assert!(!Zero::is_zero(self), "inverse of zero");
        Ok(self.recip())
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn needs_parens(&self) -> bool {
        self.is_negative() || !self.is_integer()
    }
}
