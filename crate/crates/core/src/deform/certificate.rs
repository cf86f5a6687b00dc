//! The Jacobian of `((−1)^j σ_j)_j` with respect to the `ω_i` directions on
//! one peripheral class, and its serialisable record.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    const_direction_derivatives, const_direction_stays_unipotent, q_polynomial, PeripheralClass,
    QPolynomial,
};
use crate::cusp::{CuspShape, Scalar, TorusForm};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, Lambda, Matrix, NumberField, Poly, Rational, Ring};

/// Independence of `Q_1, …, Q_{n−1}` as read from their valuations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVerdict {
    pub n: usize,
    /// `v₁(Q_i)` in index order.
    pub valuations: Vec<usize>,
    pub multiples_of_lambda: bool,
    pub valuations_strict: bool,
    pub span: usize,
    pub is_basis: bool,
}

/// `Q_1, …, Q_{n−1}` span `λ·(polynomials of degree ≤ n−2)` when each is a
/// multiple of `λ` and `v₁(Q_i) = n−i−1` are pairwise distinct.
pub fn basis_certificate(polys: &[QPolynomial], n: usize) -> Result<BasisVerdict> {
    let mut seen = vec![false; n];
    for q in polys {
        if q.i == 0 || q.i >= n {
            return Err(Error::IndexOutOfRange {
                index: q.i,
                max: n - 1,
            });
        }
        if std::mem::replace(&mut seen[q.i], true) {
            return Err(Error::DuplicateIndex(q.i));
        }
    }
    if let Some(missing) = (1..n).find(|&i| !seen[i]) {
        return Err(Error::MissingIndex(missing));
    }
    let mut sorted: Vec<&QPolynomial> = polys.iter().collect();
    sorted.sort_by_key(|q| q.i);
    let valuations: Vec<usize> = sorted.iter().map(|q| q.v1).collect();
    let multiples_of_lambda = sorted.iter().all(|q| q.v0 >= 1 && q.q.coeff(0).is_zero());
    let valuations_strict = sorted.iter().all(|q| q.v1 == n - q.i - 1);
    let mut distinct = valuations.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let span = distinct.len();
    Ok(BasisVerdict {
        n,
        valuations,
        multiples_of_lambda,
        valuations_strict,
        span,
        is_basis: multiples_of_lambda && valuations_strict && span == n - 1,
    })
}

/// Exact certificate for one `(n, γ)`.
#[derive(Clone, Debug)]
pub struct JacobianCertificate {
    pub n: usize,
    pub class: PeripheralClass,
    pub shape: CuspShape,
    pub q_polynomials: Vec<QPolynomial>,
    /// `J[i−1][j−1]`: the `λ^{n−j}` coefficient of `Q_i`.
    pub jacobian: Vec<Vec<Scalar>>,
    /// `(−1)^j`, so that `∂σ_j/∂ω_i = (−1)^j J[i][j]`.
    pub column_signs: Vec<i32>,
    pub determinant: Scalar,
    /// `Π_i` of the lowest Taylor coefficient of `Q_i/λ` at the eigenvalue.
    pub lead_product: Scalar,
    /// Whether every constant direction has zero `σ`-derivatives.
    pub const_rows_zero: bool,
    pub basis: BasisVerdict,
    /// `det J = (p + qτ)^k · cofactor` with formal τ.
    pub tau_factor_power: usize,
    pub cofactor: Scalar,
    pub certified: bool,
}

fn leading_term(q: &Poly<Scalar, Lambda>, sigma: &Scalar, order: usize) -> Scalar {
    let reduced = q
        .divide_by_root_power(&Scalar::zero(), 1)
        .unwrap_or_else(Poly::zero);
    reduced.taylor_at(sigma).get(order).cloned().unwrap_or_else(Scalar::zero)
}

/// Strips factors of `s` from `x` while `s` is a non-constant polynomial.
fn factor_out(x: &Scalar, s: &Scalar) -> (usize, Scalar) {
    if s.degree().unwrap_or(0) == 0 || x.is_zero() {
        return (0, x.clone());
    }
    let mut power = 0;
    let mut rest = x.clone();
    while let Ok((quotient, remainder)) = rest.div_rem(s) {
        if !remainder.is_zero() {
            break;
        }
        rest = quotient;
        power += 1;
    }
    (power, rest)
}

/// Assembles `J`, its determinant two ways, the constant-direction rows and
/// the valuation-based basis check.
pub fn sigma_derivative_matrix(n: usize, shape: &CuspShape, class: PeripheralClass) -> Result<JacobianCertificate> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let q_polynomials: Vec<QPolynomial> = (1..n)
        .map(|i| q_polynomial(i, n, shape, class))
        .collect::<Result<_>>()?;
    let jacobian: Vec<Vec<Scalar>> = q_polynomials
        .iter()
        .map(|q| (1..n).map(|j| q.q.coeff(n - j)).collect())
        .collect();
    let column_signs = (1..n).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    let determinant = Matrix::from_rows(jacobian.clone())?.det();
    let lead_product = q_polynomials.iter().fold(Scalar::one(), |acc, q| {
        acc * leading_term(&q.q, &q.sigma, n - q.i - 1)
    });

    let mut const_rows_zero = true;
    for j in 1..n {
        for (a, b) in [(1, 0), (0, 1)] {
            let form = TorusForm::constant(a, b, j);
            let flat = const_direction_derivatives(&form, n, shape, class)?
                .iter()
                .all(Ring::is_zero);
            const_rows_zero &= flat && const_direction_stays_unipotent(&form, n, shape, class)?;
        }
    }

    let basis = basis_certificate(&q_polynomials, n)?;
    let (tau_factor_power, cofactor) = factor_out(&determinant, &shape.parameter(class.p, class.q));
    let certified = !determinant.is_zero() && determinant == lead_product && const_rows_zero && basis.is_basis;
    Ok(JacobianCertificate {
        n,
        class,
        shape: shape.clone(),
        q_polynomials,
        jacobian,
        column_signs,
        determinant,
        lead_product,
        const_rows_zero,
        basis,
        tau_factor_power,
        cofactor,
        certified,
    })
}

/// A scalar as `τ`-coefficients (lowest first), each a list of rational
/// coordinates in the number field, serialised as `"p/q"` strings.
pub type ScalarRecord = Vec<Vec<String>>;

pub fn scalar_record(x: &Scalar) -> ScalarRecord {
    x.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().map(Rational::to_string).collect())
        .collect()
}

/// Inverse of [`scalar_record`].
pub fn scalar_from_record(record: &ScalarRecord, field: Option<&Arc<NumberField>>) -> Result<Scalar> {
    let coeffs = record
        .iter()
        .map(|entry| {
            let rationals = entry
                .iter()
                .map(|s| {
                    s.parse::<Rational>().map_err(|_| Error::Parse {
                        line: 0,
                        message: format!("bad rational {s:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(match field {
                Some(k) => FieldElement::new(k, rationals),
                None if rationals.len() <= 1 => {
                    FieldElement::rational(rationals.into_iter().next().unwrap_or_else(Rational::zero))
                }
                None => {
                    return Err(Error::Parse {
                        line: 0,
                        message: "field element without a field".into(),
                    })
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QRecord {
    pub i: usize,
    /// `λ`-coefficients, lowest first.
    pub coefficients: Vec<ScalarRecord>,
    pub display: String,
    pub valuation_at_zero: usize,
    pub valuation_at_eigenvalue: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: usize,
    pub word: String,
    pub class: [i64; 2],
    pub eigenvalue: String,
    pub tau: String,
    pub q_polynomials: Vec<QRecord>,
    pub jacobian: Vec<Vec<ScalarRecord>>,
    pub column_signs: Vec<i32>,
    pub det_j: ScalarRecord,
    pub det_j_display: String,
    pub lead_product_matches: bool,
    pub const_rows_zero: bool,
    pub valuations: Vec<usize>,
    pub basis: bool,
    pub det_j_tau_factor_power: usize,
    pub det_j_cofactor: String,
    pub verdict: String,
}

impl JacobianCertificate {
    pub fn record(&self, word: &str) -> CertificateRecord {
        CertificateRecord {
            n: self.n,
            word: word.to_string(),
            class: [self.class.p, self.class.q],
            eigenvalue: self.q_polynomials[0].sigma.to_string(),
            tau: self.shape.tau().to_string(),
            q_polynomials: self
                .q_polynomials
                .iter()
                .map(|q| QRecord {
                    i: q.i,
                    coefficients: q.q.coeffs().iter().map(scalar_record).collect(),
                    display: q.q.to_string(),
                    valuation_at_zero: q.v0,
                    valuation_at_eigenvalue: q.v1,
                })
                .collect(),
            jacobian: self
                .jacobian
                .iter()
                .map(|row| row.iter().map(scalar_record).collect())
                .collect(),
            column_signs: self.column_signs.clone(),
            det_j: scalar_record(&self.determinant),
            det_j_display: self.determinant.to_string(),
            lead_product_matches: self.determinant == self.lead_product,
            const_rows_zero: self.const_rows_zero,
            valuations: self.basis.valuations.clone(),
            basis: self.basis.is_basis,
            det_j_tau_factor_power: self.tau_factor_power,
            det_j_cofactor: self.cofactor.to_string(),
            verdict: if self.certified { "certified" } else { "failed" }.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_two_certificate() {
        let cert = sigma_derivative_matrix(2, &CuspShape::formal(), PeripheralClass::MERIDIAN).unwrap();
        assert_eq!(cert.jacobian, vec![vec![-Scalar::one()]]);
        assert_eq!(cert.determinant, -Scalar::one());
        assert!(cert.certified);
        assert_eq!(cert.column_signs, vec![-1]);
    }

    #[test]
    fn determinant_scales_with_class_parameter() {
        let shape = CuspShape::formal();
        for n in 2..6 {
            let base = sigma_derivative_matrix(n, &shape, PeripheralClass::MERIDIAN).unwrap();
            let other = sigma_derivative_matrix(n, &shape, PeripheralClass::new(1, 1)).unwrap();
            let s = shape.parameter(1, 1);
            let k: usize = (1..n).map(|i| i + 1).sum();
            assert_eq!(other.determinant, base.determinant.clone() * s.pow(k as u32));
            assert_eq!(other.tau_factor_power, k);
            assert_eq!(other.cofactor, base.determinant);
            assert!(base.certified && other.certified);
        }
    }

    #[test]
    fn basis_certificate_rejects_bad_input() {
        let shape = CuspShape::formal();
        let q1 = q_polynomial(1, 3, &shape, PeripheralClass::MERIDIAN).unwrap();
        let q2 = q_polynomial(2, 3, &shape, PeripheralClass::MERIDIAN).unwrap();
        let verdict = basis_certificate(&[q2.clone(), q1.clone()], 3).unwrap();
        assert!(verdict.is_basis);
        assert_eq!(verdict.valuations, vec![1, 0]);
        assert!(matches!(basis_certificate(&[q1.clone(), q1.clone()], 3), Err(Error::DuplicateIndex(1))));
        assert!(matches!(basis_certificate(&[q1], 3), Err(Error::MissingIndex(2))));
    }

    #[test]
    fn record_round_trips_scalars() {
        let k = NumberField::sixth_roots();
        let w = FieldElement::generator(&k);
        let x = Scalar::from_coeffs(vec![w.clone(), FieldElement::from_int(0), w.clone() * w - FieldElement::from_int(3)]);
        let rec = scalar_record(&x);
        assert_eq!(scalar_from_record(&rec, Some(&k)).unwrap(), x);
        let cert = sigma_derivative_matrix(3, &CuspShape::formal(), PeripheralClass::new(1, 1)).unwrap();
        let json = serde_json::to_string(&cert.record("ml")).unwrap();
        let back: CertificateRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert.record("ml"));
        assert_eq!(scalar_from_record(&back.det_j, None).unwrap(), cert.determinant);
    }
}
