//! The irreducible representation `ς_n = Sym^{n−1}` of SL(2) and its
//! derivative on 𝔰𝔩(2).
//!
//! Basis `b_j = x^{n−1−j} y^j`, `j = 0..n`, with `A = (a b; c d)` acting by
//! `x ↦ a·x + c·y`, `y ↦ b·x + d·y`. With this ordering the image of
//! `f = (0 1; 0 0)` is `h₊` with `(j−1, j)`-entry `j` and the image of
//! `g = (0 0; 1 0)` is `h₋` with `(j+1, j)`-entry `n−1−j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Ring};

/// Which of the two lifts `±A` of a PSL(2) element is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(negative: bool) -> Self {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// `(±1)^k`.
    pub fn power<R: Ring>(self, k: usize) -> R {
        match self {
            Sign::Minus if k % 2 == 1 => -R::one(),
            _ => R::one(),
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An element `sign · matrix` of SL(2). The matrix itself has determinant 1;
/// keeping the sign apart lets `−(1 τ; 0 1)` stay recognisably unipotent.
#[derive(Clone, PartialEq)]
pub struct SL2Matrix<R> {
    matrix: Matrix<R>,
    sign: Sign,
}

/// Image of `ς_n`: a plain `n×n` matrix.
pub type SLnMatrix<R> = Matrix<R>;

impl<R: Ring> SL2Matrix<R> {
    pub fn new(matrix: Matrix<R>, sign: Sign) -> Result<Self> {
        if matrix.n() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: matrix.n(),
            });
        }
        if !matrix.det().is_one() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(SL2Matrix { matrix, sign })
    }

    /// `sign · (a b; c d)`.
    pub fn from_entries(a: R, b: R, c: R, d: R, sign: Sign) -> Result<Self> {
        Self::new(Matrix::from_rows(vec![vec![a, b], vec![c, d]])?, sign)
    }

    pub fn identity() -> Self {
        SL2Matrix {
            matrix: Matrix::identity(2),
            sign: Sign::Plus,
        }
    }

    /// `(1 β; 0 1)`.
    pub fn upper(beta: R) -> Self {
        SL2Matrix {
            matrix: Matrix::from_fn(2, |r, c| match (r, c) {
                (0, 1) => beta.clone(),
                (r, c) if r == c => R::one(),
                _ => R::zero(),
            }),
            sign: Sign::Plus,
        }
    }

    /// `(1 0; β 1)`.
    pub fn lower(beta: R) -> Self {
        SL2Matrix {
            matrix: Matrix::from_fn(2, |r, c| match (r, c) {
                (1, 0) => beta.clone(),
                (r, c) if r == c => R::one(),
                _ => R::zero(),
            }),
            sign: Sign::Plus,
        }
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// The honest SL(2) element `sign · matrix`.
    pub fn to_matrix(&self) -> Matrix<R> {
        self.matrix.scale(&self.sign.power(1))
    }

    pub fn trace(&self) -> R {
        self.to_matrix().trace()
    }

    pub fn inverse(&self) -> Self {
        let m = &self.matrix;
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        SL2Matrix {
            matrix: Matrix::from_rows(vec![
                vec![d.clone(), -b.clone()],
                vec![-c.clone(), a.clone()],
            ])
            .expect("2x2"),
            sign: self.sign,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        SL2Matrix {
            matrix: self.matrix.matmul(&rhs.matrix),
            sign: self.sign * rhs.sign,
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SL2Matrix<S> {
        SL2Matrix {
            matrix: self.matrix.map(f),
            sign: self.sign,
        }
    }
}

impl<R: Ring> fmt::Display for SL2Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(
            f,
            "{}({} {}; {} {})",
            self.sign,
            m.get(0, 0),
            m.get(0, 1),
            m.get(1, 0),
            m.get(1, 1)
        )
    }
}

impl<R: Ring> fmt::Debug for SL2Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

/// Multiplies two binary forms given by coefficient lists indexed by the
/// power of `y`.
fn form_mul<R: Ring>(p: &[R], q: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

/// Action of an arbitrary 2×2 matrix on binary forms of degree `n−1`. This is
/// the polynomial GL(2) representation; on SL(2) it agrees with `ς_n`.
pub fn sym_power_gl2<R: Ring>(m: &Matrix<R>, n: usize) -> SLnMatrix<R> {
    let x_image = [m.get(0, 0).clone(), m.get(1, 0).clone()];
    let y_image = [m.get(0, 1).clone(), m.get(1, 1).clone()];
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut form = vec![R::one()];
        for _ in 0..n - 1 - j {
            form = form_mul(&form, &x_image);
        }
        for _ in 0..j {
            form = form_mul(&form, &y_image);
        }
        columns.push(form);
    }
    Matrix::from_fn(n, |r, c| columns[c][r].clone())
}

/// `ς_n(A)`, including the `(−1)^{n−1}` factor of a minus lift.
pub fn sym_power<R: Ring>(a: &SL2Matrix<R>, n: usize) -> Result<SLnMatrix<R>> {
    check_dimension(n)?;
    if !a.matrix.det().is_one() {
        return Err(Error::DeterminantNotOne);
    }
    let image = sym_power_gl2(&a.matrix, n);
    Ok(match a.sign {
        Sign::Plus => image,
        Sign::Minus => image.scale(&a.sign.power(n - 1)),
    })
}

/// Derivative of `ς_n` at the identity, applied to a traceless `X`.
pub fn sym_power_lie<R: Ring>(x: &Matrix<R>, n: usize) -> Result<SLnMatrix<R>> {
    check_dimension(n)?;
    if x.n() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: x.n(),
        });
    }
    if !x.trace().is_zero() {
        return Err(Error::NonzeroTrace);
    }
    let (p, q, r) = (x.get(0, 0), x.get(0, 1), x.get(1, 0));
    Ok(Matrix::from_fn(n, |row, col| {
        if row == col {
            p.clone() * R::from_int(n as i64 - 1 - 2 * col as i64)
        } else if row == col + 1 {
            r.clone() * R::from_int((n - 1 - col) as i64)
        } else if row + 1 == col {
            q.clone() * R::from_int(col as i64)
        } else {
            R::zero()
        }
    }))
}

/// Standard basis `e = diag(1, −1)`, `f = (0 1; 0 0)`, `g = (0 0; 1 0)`.
pub fn sl2_e<R: Ring>() -> Matrix<R> {
    Matrix::from_fn(2, |r, c| match (r, c) {
        (0, 0) => R::one(),
        (1, 1) => -R::one(),
        _ => R::zero(),
    })
}

pub fn sl2_f<R: Ring>() -> Matrix<R> {
    Matrix::unit(2, 0, 1)
}

pub fn sl2_g<R: Ring>() -> Matrix<R> {
    Matrix::unit(2, 1, 0)
}

/// `h₊ = ς_n(f)`.
pub fn h_plus<R: Ring>(n: usize) -> SLnMatrix<R> {
    Matrix::from_fn(n, |r, c| {
        if r + 1 == c {
            R::from_int(c as i64)
        } else {
            R::zero()
        }
    })
}

/// `h₋ = ς_n(g)`.
pub fn h_minus<R: Ring>(n: usize) -> SLnMatrix<R> {
    Matrix::from_fn(n, |r, c| {
        if r == c + 1 {
            R::from_int((n - 1 - c) as i64)
        } else {
            R::zero()
        }
    })
}

fn check_power(n: usize, i: usize) -> Result<()> {
    check_dimension(n)?;
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    Ok(())
}

/// `h₊^i` for `1 ≤ i ≤ n−1`.
pub fn h_plus_power<R: Ring>(n: usize, i: usize) -> Result<SLnMatrix<R>> {
    check_power(n, i)?;
    Ok(h_plus::<R>(n).pow(i as u32))
}

/// `h₋^i` for `1 ≤ i ≤ n−1`.
pub fn h_minus_power<R: Ring>(n: usize, i: usize) -> Result<SLnMatrix<R>> {
    check_power(n, i)?;
    Ok(h_minus::<R>(n).pow(i as u32))
}

/// `exp(β·M)` for nilpotent `M`.
pub fn nilpotent_exp<R: Ring>(m: &SLnMatrix<R>, beta: &R) -> Result<SLnMatrix<R>> {
    m.exp_nilpotent(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Beta, FieldElement, NumberField, Poly, Rational};

    fn q(k: i64) -> Rational {
        Rational::from_int(k)
    }

    #[test]
    fn identity_and_diagonal() {
        for n in 2..6 {
            let id = sym_power(&SL2Matrix::<Rational>::identity(), n).unwrap();
            assert_eq!(id, Matrix::identity(n));
        }
        let d = SL2Matrix::from_entries(q(2), q(0), q(0), Rational::new(1, 2), Sign::Plus).unwrap();
        let img = sym_power(&d, 3).unwrap();
        assert_eq!(img.diagonal(), vec![q(4), q(1), Rational::new(1, 4)]);
        assert!(SL2Matrix::from_entries(q(2), q(0), q(0), q(1), Sign::Plus).is_err());
    }

    #[test]
    fn lie_images_of_standard_basis() {
        let hp = sym_power_lie(&sl2_f::<Rational>(), 4).unwrap();
        assert_eq!(hp, h_plus(4));
        assert_eq!(*hp.get(0, 1), q(1));
        assert_eq!(*hp.get(2, 3), q(3));
        let hm = sym_power_lie(&sl2_g::<Rational>(), 3).unwrap();
        assert_eq!(*hm.get(1, 0), q(2));
        assert_eq!(*hm.get(2, 1), q(1));
        let he = sym_power_lie(&sl2_e::<Rational>(), 3).unwrap();
        assert_eq!(he.diagonal(), vec![q(2), q(0), q(-2)]);
        assert_eq!(h_plus::<Rational>(3).commutator(&hm), he);
        assert!(sym_power_lie(&Matrix::<Rational>::identity(2), 3).is_err());
    }

    #[test]
    fn powers_of_nilpotents() {
        let hm2 = h_minus_power::<Rational>(3, 2).unwrap();
        assert_eq!(*hm2.get(2, 0), q(2));
        assert!(h_plus::<Rational>(5).pow(5).is_zero());
        assert!(h_plus_power::<Rational>(3, 3).is_err());
        assert!(h_plus_power::<Rational>(3, 0).is_err());
    }

    #[test]
    fn bracket_is_preserved() {
        let basis = [sl2_e::<Rational>(), sl2_f(), sl2_g()];
        for n in 2..7 {
            for x in &basis {
                for y in &basis {
                    let lhs = sym_power_lie(&x.commutator(y), n).unwrap();
                    let rhs = sym_power_lie(x, n)
                        .unwrap()
                        .commutator(&sym_power_lie(y, n).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn one_parameter_subgroups_match_exponentials() {
        let beta = Poly::<Rational, Beta>::var();
        for n in 2..7 {
            let up = sym_power(&SL2Matrix::upper(beta.clone()), n).unwrap();
            let hp = h_plus::<Poly<Rational, Beta>>(n);
            assert_eq!(up, nilpotent_exp(&hp, &beta).unwrap());
            let down = sym_power(&SL2Matrix::lower(beta.clone()), n).unwrap();
            let hm = h_minus::<Poly<Rational, Beta>>(n);
            assert_eq!(down, nilpotent_exp(&hm, &beta).unwrap());
            let back = nilpotent_exp(&hp, &-beta.clone()).unwrap();
            assert_eq!(up.matmul(&back), Matrix::identity(n));
        }
    }

    #[test]
    fn homomorphism_over_gaussian_rationals() {
        let k = NumberField::gaussian();
        let i = FieldElement::generator(&k);
        let r = |a: i64, b: i64| FieldElement::rational(Rational::new(a, b));
        let a = SL2Matrix::upper(i.clone() + r(1, 2))
            .mul(&SL2Matrix::lower(r(-3, 1) * i.clone()))
            .with_sign(Sign::Minus);
        let b = SL2Matrix::lower(r(2, 3)).mul(&SL2Matrix::upper(i.clone() - r(1, 1)));
        for n in 2..8 {
            let lhs = sym_power(&a.mul(&b), n).unwrap();
            let rhs = sym_power(&a, n).unwrap().matmul(&sym_power(&b, n).unwrap());
            assert_eq!(lhs, rhs);
            assert!(sym_power(&a, n).unwrap().det().is_one());
        }
    }

    #[test]
    fn minus_identity_maps_to_sign_power() {
        let minus = SL2Matrix::<Rational>::identity().with_sign(Sign::Minus);
        for n in 2..7 {
            let expected = Matrix::scalar(n, Sign::Minus.power(n - 1));
            assert_eq!(sym_power(&minus, n).unwrap(), expected);
        }
    }
}
