use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Marker naming the indeterminate of a [`Poly`].
pub trait Indeterminate: Copy + Clone + PartialEq + Eq + fmt::Debug + Default + 'static {
    const SYMBOL: &'static str;
}

macro_rules! indeterminate {
    ($(#[$doc:meta])* $name:ident, $sym:expr) => {
        $(#[$doc])*
        #[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
        pub struct $name;
        impl Indeterminate for $name {
            const SYMBOL: &'static str = $sym;
        }
    };
}

indeterminate!(
    /// Characteristic-polynomial variable.
    Lambda, "λ"
);
indeterminate!(
    /// Cusp shape.
    Tau, "τ"
);
indeterminate!(
    /// Deformation parameter.
    Eps, "ε"
);
indeterminate!(
    /// Parameter of a one-parameter unipotent subgroup.
    Beta, "β"
);
indeterminate!(
    /// Integration parameter along a segment.
    TParam, "t"
);
indeterminate!(
    /// Coordinate `x + τy` on the cusp torus.
    Z, "z"
);

/// Dense univariate polynomial, lowest degree first.
///
/// Invariant: the coefficient vector has no trailing zeros, so the zero
/// polynomial is the empty vector.
pub struct Poly<R, V> {
    coeffs: Vec<R>,
    _var: PhantomData<V>,
}

impl<R: Clone, V> Clone for Poly<R, V> {
    fn clone(&self) -> Self {
        Poly {
            coeffs: self.coeffs.clone(),
            _var: PhantomData,
        }
    }
}

impl<R: PartialEq, V> PartialEq for Poly<R, V> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring, V: Indeterminate> Poly<R, V> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let mut p = Poly {
            coeffs,
            _var: PhantomData,
        };
        p.normalize();
        p
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `var - root`.
    pub fn linear(root: R) -> Self {
        Self::from_coeffs(vec![-root, R::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map_coeffs<S: Ring, W: Indeterminate>(&self, f: impl Fn(&R) -> S) -> Poly<S, W> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * R::from_int(k as i64))
                .collect(),
        )
    }

    /// `∫₀¹ p(t) dt`.
    pub fn integrate_unit_interval(&self) -> R {
        self.coeffs.iter().enumerate().fold(R::zero(), |acc, (k, c)| {
            acc + c.scale(&Rational::new(1, k as i64 + 1))
        })
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = divisor
            .leading()
            .unwrap()
            .try_inverse()
            .ok_or(Error::NonInvertibleLeading)?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![R::zero(); rem.len() - dlen + 1];
        while rem.len() >= dlen {
            let shift = rem.len() - dlen;
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = rem[shift + k].clone() - c.clone() * d.clone();
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Synthetic division by `var - root`: returns the quotient and `p(root)`.
    fn deflate(&self, root: &R) -> (Self, R) {
        if self.coeffs.is_empty() {
            return (Self::zero(), R::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![R::zero(); n - 1];
        let mut acc = R::zero();
        for k in (0..n).rev() {
            acc = acc * root.clone() + self.coeffs[k].clone();
            if k > 0 {
                quot[k - 1] = acc.clone();
            }
        }
        (Self::from_coeffs(quot), acc)
    }

    /// Largest `k` with `(var - root)^k` dividing `self`.
    pub fn valuation_at(&self, root: &R) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut k = 0;
        let mut p = self.clone();
        loop {
            let (q, r) = p.deflate(root);
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            p = q;
        }
    }

    /// Coefficients of the expansion `Σ a_k (var - root)^k`.
    pub fn taylor_at(&self, root: &R) -> Vec<R> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.deflate(root);
            out.push(r);
            p = q;
        }
        out
    }

    /// Exact quotient by `(var - root)^k`, failing if it does not divide.
    pub fn divide_by_root_power(&self, root: &R, k: usize) -> Option<Self> {
        let mut p = self.clone();
        for _ in 0..k {
            let (q, r) = p.deflate(root);
            if !r.is_zero() {
                return None;
            }
            p = q;
        }
        Some(p)
    }
}

impl<R: Ring, V: Indeterminate> Ring for Poly<R, V> {
    fn zero() -> Self {
        Poly {
            coeffs: Vec::new(),
            _var: PhantomData,
        }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].try_inverse().map(Self::constant)
        } else {
            None
        }
    }
}

impl<R: Ring, V: Indeterminate> Add for Poly<R, V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (k, c) in short.into_iter().enumerate() {
            long[k] = long[k].clone() + c;
        }
        Self::from_coeffs(long)
    }
}

impl<R: Ring, V: Indeterminate> Neg for Poly<R, V> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            _var: PhantomData,
        }
    }
}

impl<R: Ring, V: Indeterminate> Sub for Poly<R, V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring, V: Indeterminate> Mul for Poly<R, V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<R: Ring, V: Indeterminate> fmt::Display for Poly<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let var = V::SYMBOL;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.trim_start_matches('-').contains([' ', '+']);
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ if compound => (false, format!("({text})")),
                _ => (false, text),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 {
                write!(f, "{body}")?;
                continue;
            }
            if body != "1" {
                write!(f, "{body}·")?;
            }
            if k == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{k}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring, V: Indeterminate> fmt::Debug for Poly<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational, Lambda>;

    fn p(c: &[i64]) -> P {
        P::from_coeffs(c.iter().map(|&k| Rational::from_int(k)).collect())
    }

    #[test]
    fn divide_examples() {
        let lm1 = p(&[-1, 1]);
        let (q, r) = p(&[1, -2, 1]).div_rem(&lm1).unwrap();
        assert_eq!((q, r), (lm1.clone(), P::zero()));
        let (q, r) = p(&[0, 1]).div_rem(&lm1).unwrap();
        assert_eq!((q, r), (p(&[1]), p(&[1])));
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&lm1).unwrap();
        assert_eq!((q, r), (p(&[1, 1, 1]), P::zero()));
        assert_eq!(p(&[1, 1]).div_rem(&P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        let one = Rational::one();
        // λ(λ-1)^2
        assert_eq!(p(&[0, 1, -2, 1]).valuation_at(&one).unwrap(), 2);
        assert_eq!(p(&[0, 1]).valuation_at(&Rational::zero()).unwrap(), 1);
        assert_eq!(P::zero().valuation_at(&one), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn taylor_and_eval() {
        let q = p(&[3, 0, 2]);
        let t = q.taylor_at(&Rational::one());
        // 2λ² + 3 = 5 + 4(λ-1) + 2(λ-1)²
        assert_eq!(t, vec![5.into(), 4.into(), 2.into()]);
        assert_eq!(q.eval(&Rational::from_int(2)), Rational::from_int(11));
        assert_eq!(q.integrate_unit_interval(), Rational::new(11, 3));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "λ^2 - 2·λ + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-λ");
    }
}
