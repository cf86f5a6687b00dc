//! Exact arithmetic: rationals, number fields, dense univariate polynomials,
//! dual numbers and square matrices over any of them.
//!
//! Everything is generic over [`Ring`], a commutative ring containing ℚ.
//! Ring values carry enough context to make `zero()`/`one()` free of any
//! ambient parameter: a [`FieldElement`] built from a rational has no field
//! tag and combines with elements of any field.

mod dual;
mod field;
pub mod linalg;
mod matrix;
mod poly;
mod rational;

pub use dual::Dual;
pub use field::{FieldElement, NumberField};
pub use matrix::{Matrix, ShiftedInverse};
pub use poly::{Beta, Eps, Indeterminate, Lambda, Poly, Tau, TParam, Z};
pub use rational::Rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative ring containing ℚ.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rational(&Rational::from_int(k))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Multiplicative inverse when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }
}

/// `(-1)^k` as a ring element.
pub fn sign_power<R: Ring>(k: usize) -> R {
    if k.is_multiple_of(2) {
        R::one()
    } else {
        -R::one()
    }
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * Rational::from_int((n - j) as i64) / Rational::from_int((j + 1) as i64);
    }
    acc
}

/// `k!` as an exact rational.
pub fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * Rational::from_int(j as i64))
}
