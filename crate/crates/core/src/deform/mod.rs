//! First-order deformations `ρ_ε(γ) = (Id + ε·d(γ))·ρ(γ)` and the
//! perturbation `Q` of the characteristic polynomial
//! `det(λ·Id − ρ_ε(γ)) = det(λ·Id − ρ(γ)) + ε·Q(λ) + O(ε²)`.
//!
//! For a peripheral `ρ(γ) = σ·(Id + N)` with `σ = ±1` and `N` nilpotent,
//! writing `μ = σλ` and `X = d(γ)·ρ(γ)`,
//!
//! ```text
//! Q(λ) = −σ^{n−1} Σ_{k=0}^{n−1} (μ − 1)^{n−1−k} tr(N^k X).
//! ```
//!
//! Two further routes compute the same polynomial independently: the
//! derivative `−det(A)·tr(A⁻¹X)` with `A = λ·Id − ρ(γ)` inverted by a finite
//! Neumann series, and a determinant expansion over `R[λ][ε]/(ε²)`.

mod certificate;

pub use certificate::{
    basis_certificate, sigma_derivative_matrix, BasisVerdict, CertificateRecord, JacobianCertificate,
    QRecord, scalar_from_record, scalar_record, ScalarRecord,
};

use std::collections::BTreeMap;

use crate::cusp::{cocycle_from_form, integrate_form, Cocycle, CuspShape, Scalar, TorusForm};
use crate::error::{Error, Result};
use crate::exact::{Dual, Lambda, Matrix, Poly, Rational, Ring};
use crate::word::Word;

/// `(ρ(γ), X = d(γ)·ρ(γ))`.
pub fn weil_deform<R: Ring>(cocycle: &Cocycle<R>, word: &Word) -> Result<(Matrix<R>, Matrix<R>)> {
    let (rho, d) = cocycle.evaluate_with_rho(word)?;
    let x = d.matmul(&rho);
    Ok((rho, x))
}

/// A representation together with a cocycle, evaluated in `R[ε]/(ε²)`.
#[derive(Clone, Debug)]
pub struct FirstOrderRep<R: Ring> {
    cocycle: Cocycle<R>,
}

impl<R: Ring> FirstOrderRep<R> {
    pub fn new(cocycle: Cocycle<R>) -> Self {
        FirstOrderRep { cocycle }
    }

    fn generator(&self, g: char, inverse: bool) -> Result<Matrix<Dual<R>>> {
        let (rho, rho_inv) = self
            .cocycle
            .images()
            .get(&g)
            .ok_or_else(|| Error::UndefinedGenerator(g.to_string()))?;
        let d = self
            .cocycle
            .value(g)
            .ok_or_else(|| Error::UndefinedGenerator(g.to_string()))?;
        let n = rho.n();
        Ok(if inverse {
            // ((Id + εd)ρ)⁻¹ = ρ⁻¹(Id − εd)
            Matrix::from_fn(n, |r, c| Dual::new(rho_inv.get(r, c).clone(), R::zero()))
                .matmul(&Matrix::from_fn(n, |r, c| {
                    Dual::new(if r == c { R::one() } else { R::zero() }, -d.get(r, c).clone())
                }))
        } else {
            let x = d.matmul(rho);
            Matrix::from_fn(n, |r, c| Dual::new(rho.get(r, c).clone(), x.get(r, c).clone()))
        })
    }

    /// `ρ_ε(w)` as a product of deformed generator images.
    pub fn evaluate(&self, word: &Word) -> Result<Matrix<Dual<R>>> {
        let n = self.cocycle.n();
        word.letters().iter().try_fold(Matrix::identity(n), |acc, l| {
            Ok(acc.matmul(&self.generator(l.generator, l.inverse)?))
        })
    }

    /// Whether the relator evaluates to `Id` exactly modulo `ε²`.
    pub fn relator_holds(&self, relator: &Word) -> Result<bool> {
        let n = self.cocycle.n();
        Ok(self.evaluate(relator)? == Matrix::identity(n))
    }
}

/// Splits a peripheral image as `σ·(Id + N)` with `σ = ±1`, `N` nilpotent.
pub fn unipotent_part<R: Ring>(rho: &Matrix<R>) -> Result<(R, Matrix<R>)> {
    let n = rho.n();
    let sigma = rho.trace().scale(&Rational::new(1, n as i64));
    if !(sigma.clone() * sigma.clone()).is_one() {
        return Err(Error::NotUnipotent);
    }
    let nil = rho.scale(&sigma) - Matrix::identity(n);
    if nil.nilpotency_index().is_none() {
        return Err(Error::NotUnipotent);
    }
    Ok((sigma, nil))
}

fn lambda_poly<R: Ring>(c: R) -> Poly<R, Lambda> {
    Poly::constant(c)
}

/// Closed form of `Q` from `ρ(γ)` and `X = d(γ)ρ(γ)`.
pub fn q_closed_form<R: Ring>(rho: &Matrix<R>, x: &Matrix<R>) -> Result<Poly<R, Lambda>> {
    let n = rho.n();
    let (sigma, nil) = unipotent_part(rho)?;
    // μ − 1 = σλ − 1
    let mu_minus_one = Poly::from_coeffs(vec![-R::one(), sigma.clone()]);
    let mut acc = Poly::<R, Lambda>::zero();
    let mut power = Matrix::identity(n);
    for k in 0..n {
        let t = power.matmul(x).trace();
        if !t.is_zero() {
            acc = acc + mu_minus_one.pow((n - 1 - k) as u32) * lambda_poly(t);
        }
        power = power.matmul(&nil);
    }
    let prefactor = -sigma.pow((n - 1) as u32);
    Ok(acc * lambda_poly(prefactor))
}

/// `Q = −det(A)·tr(A⁻¹X)` with `A = λ·Id − ρ(γ)` and `A⁻¹` from the finite
/// Neumann series around `λ = σ`.
pub fn q_via_inverse<R: Ring>(rho: &Matrix<R>, x: &Matrix<R>) -> Result<Poly<R, Lambda>> {
    let n = rho.n();
    let (sigma, nil) = unipotent_part(rho)?;
    let shifted_nil = nil.scale(&sigma);
    let inv = shifted_nil.inverse_shifted_nilpotent(&sigma)?;
    let trace = inv.numerator.matmul(&x.to_poly()).trace();
    let cofactor = Poly::linear(sigma).pow((n - inv.exponent) as u32);
    Ok(-(cofactor * trace))
}

/// `ε`-coefficient of `det(λ·Id − (Id + ε·d)ρ)` by direct expansion.
pub fn q_oracle<R: Ring>(rho: &Matrix<R>, d: &Matrix<R>) -> Poly<R, Lambda> {
    let n = rho.n();
    let x = d.matmul(rho);
    let lambda = Poly::<R, Lambda>::var();
    let m = Matrix::from_fn(n, |r, c| {
        let diag = if r == c { lambda.clone() } else { Poly::zero() };
        Dual::new(
            diag - lambda_poly(rho.get(r, c).clone()),
            -lambda_poly(x.get(r, c).clone()),
        )
    });
    m.det().eps
}

/// `∂σ_j/∂(direction)` for `j = 1..n−1`, read off `Q` as `(−1)^j` times the
/// `λ^{n−j}` coefficient.
pub fn sigma_derivatives<R: Ring>(q: &Poly<R, Lambda>, n: usize) -> Vec<R> {
    (1..n)
        .map(|j| {
            let c = q.coeff(n - j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// A peripheral class `m^p l^q` of the cusp torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PeripheralClass {
    pub p: i64,
    pub q: i64,
}

impl PeripheralClass {
    pub const MERIDIAN: PeripheralClass = PeripheralClass { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Self {
        PeripheralClass { p, q }
    }

    pub fn word(&self) -> Word {
        CuspShape::class_word(self.p, self.q)
    }

    pub fn is_trivial(&self) -> bool {
        self.p == 0 && self.q == 0
    }
}

/// The polynomial `Q` for one cocycle direction and one peripheral class,
/// with its valuations at `λ = 0` and at the eigenvalue `λ = σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomial {
    pub i: usize,
    pub class: PeripheralClass,
    pub sigma: Scalar,
    pub q: Poly<Scalar, Lambda>,
    pub v0: usize,
    pub v1: usize,
}

/// `(ρ_n(γ), d(γ))` for the class and a torus form.
pub fn peripheral_data(
    form: &TorusForm,
    n: usize,
    shape: &CuspShape,
    class: PeripheralClass,
) -> Result<(Matrix<Scalar>, Matrix<Scalar>)> {
    if class.is_trivial() {
        return Err(Error::NotParabolic {
            word: class.word().to_string(),
        });
    }
    let rho = shape.rho_n(n, class.p, class.q);
    let d = integrate_form(form, n, shape, class.p, class.q)?;
    Ok((rho, d))
}

/// `Q_i` for the direction `ω_i` by the closed form, with valuations.
pub fn q_polynomial(i: usize, n: usize, shape: &CuspShape, class: PeripheralClass) -> Result<QPolynomial> {
    let (rho, d) = peripheral_data(&TorusForm::Omega(i), n, shape, class)?;
    let x = d.matmul(&rho);
    let q = q_closed_form(&rho, &x)?;
    let (sigma, _) = unipotent_part(&rho)?;
    let v0 = q.valuation_at(&Scalar::zero())?;
    let v1 = q.valuation_at(&sigma)?;
    Ok(QPolynomial {
        i,
        class,
        sigma,
        q,
        v0,
        v1,
    })
}

/// `Q_i` by the dual-number determinant.
pub fn q_polynomial_oracle(i: usize, n: usize, shape: &CuspShape, class: PeripheralClass) -> Result<Poly<Scalar, Lambda>> {
    let (rho, d) = peripheral_data(&TorusForm::Omega(i), n, shape, class)?;
    Ok(q_oracle(&rho, &d))
}

/// `Q_i` by the Neumann-series inverse.
pub fn q_polynomial_via_inverse(
    i: usize,
    n: usize,
    shape: &CuspShape,
    class: PeripheralClass,
) -> Result<Poly<Scalar, Lambda>> {
    let (rho, d) = peripheral_data(&TorusForm::Omega(i), n, shape, class)?;
    q_via_inverse(&rho, &d.matmul(&rho))
}

/// `σ`-derivatives along `(a·dx + b·dy)⊗h₊^j`. These vanish identically.
pub fn const_direction_derivatives(
    form: &TorusForm,
    n: usize,
    shape: &CuspShape,
    class: PeripheralClass,
) -> Result<Vec<Scalar>> {
    let (rho, d) = peripheral_data(form, n, shape, class)?;
    let x = d.matmul(&rho);
    Ok(sigma_derivatives(&q_closed_form(&rho, &x)?, n))
}

/// Whether the deformed peripheral matrix along a constant direction stays
/// `σ` times a unipotent upper-triangular matrix to first order.
pub fn const_direction_stays_unipotent(
    form: &TorusForm,
    n: usize,
    shape: &CuspShape,
    class: PeripheralClass,
) -> Result<bool> {
    let (rho, d) = peripheral_data(form, n, shape, class)?;
    let x = d.matmul(&rho);
    let strictly_upper = (0..n).all(|r| (0..=r).all(|c| x.get(r, c).is_zero()));
    Ok(strictly_upper && rho.is_upper_triangular())
}

/// `σ`-derivatives along a cocycle, evaluated on a peripheral word.
pub fn cocycle_sigma_derivatives(cocycle: &Cocycle<Scalar>, word: &Word) -> Result<Vec<Scalar>> {
    let (rho, x) = weil_deform(cocycle, word)?;
    Ok(sigma_derivatives(&q_closed_form(&rho, &x)?, rho.n()))
}

/// The torus cocycles of `ω_1, …, ω_{n−1}`, keyed by index.
pub fn omega_cocycles(n: usize, shape: &CuspShape) -> Result<BTreeMap<usize, Cocycle<Scalar>>> {
    (1..n)
        .map(|i| Ok((i, cocycle_from_form(&TorusForm::Omega(i), n, shape)?)))
        .collect()
}
