use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Ring};

/// Element `re + eps·ε` of `R[ε]/(ε²)`.
#[derive(Clone, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub eps: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: R) -> Self {
        Dual { re, eps: R::zero() }
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.re.clone() * rhs.eps + self.eps * rhs.re.clone();
        Dual::new(self.re * rhs.re, eps)
    }
}

impl<R: Ring> Ring for Dual<R> {
    fn zero() -> Self {
        Dual::constant(R::zero())
    }
    fn one() -> Self {
        Dual::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        Dual::constant(R::from_rational(q))
    }
    fn try_inverse(&self) -> Option<Self> {
        let inv = self.re.try_inverse()?;
        let eps = -(self.eps.clone() * inv.clone() * inv.clone());
        Some(Dual::new(inv, eps))
    }
}

impl<R: Ring> fmt::Display for Dual<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})·ε", self.re, self.eps)
    }
}

impl<R: Ring> fmt::Debug for Dual<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_squares_to_zero() {
        let e = Dual::new(Rational::zero(), Rational::one());
        assert!((e.clone() * e).is_zero());
        let x = Dual::new(Rational::from_int(3), Rational::from_int(2));
        let inv = x.try_inverse().unwrap();
        assert_eq!(x * inv, Dual::one());
    }
}
