use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{factorial, Indeterminate, Lambda, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, c: R) -> Self {
        Self::from_fn(n, |r, col| if r == col { c.clone() } else { R::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The elementary matrix with a single 1 at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(r, c, R::one());
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.n).map(|row| row.to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Embeds the entries as constant polynomials.
    pub fn to_poly<V: Indeterminate>(&self) -> Matrix<Poly<R, V>> {
        self.map(|x| Poly::constant(x.clone()))
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map(|x| x.scale(q))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * n + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.matmul(self))
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs) - rhs.matmul(self)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| self.get(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<R> {
        (0..self.n).map(|k| self.get(k, k).clone()).collect()
    }

    /// Smallest `m ≤ n` with `self^m = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = Self::identity(self.n);
        for m in 1..=self.n.max(1) {
            p = p.matmul(self);
            if p.is_zero() {
                return Some(m);
            }
        }
        None
    }

    /// `exp(β·N) = Σ_k β^k N^k / k!` for nilpotent `N`, as a finite sum.
    pub fn exp_nilpotent(&self, beta: &R) -> Result<Self> {
        let m = self.nilpotency_index().ok_or(Error::NotNilpotent(self.n))?;
        let mut acc = Self::identity(self.n);
        let mut power = Self::identity(self.n);
        let mut beta_k = R::one();
        for k in 1..m {
            power = power.matmul(self);
            beta_k = beta_k * beta.clone();
            let coeff = beta_k.scale(&factorial(k).recip().unwrap());
            acc = acc + power.scale(&coeff);
        }
        Ok(acc)
    }

    /// `det(λ·Id − M)` by Faddeev–LeVerrier; only divides by integers.
    pub fn char_poly(&self) -> Poly<R, Lambda> {
        let n = self.n;
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = R::one();
        let mut m_k = Self::zeros(n);
        for k in 1..=n {
            m_k = self.matmul(&m_k) + Self::scalar(n, coeffs[n - k + 1].clone());
            let t = self.matmul(&m_k).trace();
            coeffs[n - k] = -t.scale(&Rational::new(1, k as i64));
        }
        Poly::from_coeffs(coeffs)
    }

    /// `σ_i(M)`: `(−1)^i` times the `λ^{n−i}` coefficient of the characteristic
    /// polynomial. Defined for `1 ≤ i ≤ n−1`.
    pub fn elementary_symmetric(&self, i: usize) -> Result<R> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n.saturating_sub(1),
            });
        }
        let c = self.char_poly().coeff(self.n - i);
        Ok(if i.is_multiple_of(2) { c } else { -c })
    }

    /// Determinant by cofactor expansion memoised over column subsets.
    /// Division-free, `O(n·2ⁿ)` ring multiplications.
    pub fn det(&self) -> R {
        let n = self.n;
        if n == 0 {
            return R::one();
        }
        let full = 1usize << n;
        let mut minors = vec![R::zero(); full];
        minors[0] = R::one();
        for mask in 1..full {
            // expand the last of the first |mask| rows along the columns in `mask`
            let row = mask.count_ones() as usize - 1;
            let mut acc = R::zero();
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let rest = mask & !(1 << c);
                let a = self.get(row, c);
                if a.is_zero() || minors[rest].is_zero() {
                    continue;
                }
                let term = a.clone() * minors[rest].clone();
                let to_the_right = (mask >> (c + 1)).count_ones();
                acc = if to_the_right % 2 == 0 { acc + term } else { acc - term };
            }
            minors[mask] = acc;
        }
        minors[full - 1].clone()
    }

    /// For nilpotent `N` and `A = (λ − shift)·Id − N`, returns the finite Neumann
    /// series `A⁻¹ = Σ_{k<m} (λ − shift)^{m−1−k} N^k / (λ − shift)^m`.
    pub fn inverse_shifted_nilpotent(&self, shift: &R) -> Result<ShiftedInverse<R>> {
        let m = self.nilpotency_index().ok_or(Error::NotNilpotent(self.n))?;
        let lin = Poly::<R, Lambda>::linear(shift.clone());
        let mut numerator = Matrix::<Poly<R, Lambda>>::zeros(self.n);
        let mut power = Self::identity(self.n);
        for k in 0..m {
            let factor = lin.pow((m - 1 - k) as u32);
            numerator = numerator + power.to_poly().scale(&factor);
            power = power.matmul(self);
        }
        Ok(ShiftedInverse {
            numerator,
            shift: shift.clone(),
            exponent: m,
        })
    }
}

/// `A⁻¹ = numerator / (λ − shift)^exponent` for `A = (λ − shift)·Id − N`.
#[derive(Clone, Debug)]
pub struct ShiftedInverse<R: Ring> {
    pub numerator: Matrix<Poly<R, Lambda>>,
    pub shift: R,
    pub exponent: usize,
}

impl<R: Ring> ShiftedInverse<R> {
    pub fn denominator(&self) -> Poly<R, Lambda> {
        Poly::linear(self.shift.clone()).pow(self.exponent as u32)
    }

    /// Checks `A · numerator = denominator · Id` exactly.
    pub fn verify(&self, nilpotent: &Matrix<R>) -> bool {
        let n = nilpotent.n();
        let a = Matrix::scalar(n, Poly::linear(self.shift.clone())) - nilpotent.to_poly();
        a.matmul(&self.numerator) == Matrix::scalar(n, self.denominator())
    }
}

impl<R: Ring> Add for Matrix<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<R: Ring> Sub for Matrix<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<R: Ring> Neg for Matrix<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<R: Ring> Mul for Matrix<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

impl<'a, R: Ring> Mul<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &'a Matrix<R>) -> Matrix<R> {
        self.matmul(rhs)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> Rational {
        Rational::from_int(k)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| q(k)).collect()).collect()).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        let a = mat(&[&[2, 1], &[1, 2]]);
        assert_eq!(a.char_poly().to_string(), "λ^2 - 4·λ + 3");
        let j = mat(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let lin = Poly::<Rational, Lambda>::linear(q(1));
        assert_eq!(j.char_poly(), lin.pow(3));
        assert_eq!(j.elementary_symmetric(1).unwrap(), q(3));
        assert_eq!(j.elementary_symmetric(2).unwrap(), q(3));
        assert!(j.elementary_symmetric(3).is_err());
    }

    #[test]
    fn det_agrees_with_char_poly_constant() {
        let a = mat(&[&[0, 2, -1, 3], &[1, 0, 4, -2], &[5, -3, 0, 1], &[2, 2, 2, 0]]);
        let c0 = a.char_poly().coeff(0);
        assert_eq!(a.det(), c0);
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).det(), q(-2));
        assert_eq!(mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).det(), q(1));
        assert_eq!(mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).det(), q(-1));
    }

    #[test]
    fn exp_of_jordan_block() {
        let n = mat(&[&[0, 1], &[0, 0]]);
        assert_eq!(n.exp_nilpotent(&q(5)).unwrap(), mat(&[&[1, 5], &[0, 1]]));
        assert!(mat(&[&[1, 0], &[0, 0]]).exp_nilpotent(&q(1)).is_err());
    }

    #[test]
    fn shifted_inverse_of_unipotent_blocks() {
        for size in 1..=5 {
            let n = Matrix::from_fn(size, |r, c| if c == r + 1 { q(c as i64) } else { q(0) });
            let inv = n.inverse_shifted_nilpotent(&q(1)).unwrap();
            assert_eq!(inv.exponent, size);
            assert!(inv.verify(&n));
            let inv_neg = n.inverse_shifted_nilpotent(&q(-1)).unwrap();
            assert!(inv_neg.verify(&n));
        }
        let zero = Matrix::<Rational>::zeros(3);
        let inv = zero.inverse_shifted_nilpotent(&q(1)).unwrap();
        assert_eq!(inv.exponent, 1);
        assert!(inv.verify(&zero));
    }
}
