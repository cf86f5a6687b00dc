//! The trace pairing on 𝔰𝔩(n), the constants `c_i = tr(h₋^i h₊^i)`, the
//! adjoint action of SL(2) through `ς_n`, and the parabolic invariants.

use crate::error::{Error, Result};
use crate::exact::{linalg, Matrix, Rational, Ring};
use crate::rep::{h_minus, h_plus, h_plus_power, sym_power, sym_power_lie, sl2_e, SL2Matrix};

/// `c_i = tr(h₋^i h₊^i)` for `i = 1..n−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingConstants {
    pub n: usize,
    pub c: Vec<Rational>,
}

impl PairingConstants {
    pub fn compute(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let hp = h_plus::<Rational>(n);
        let hm = h_minus::<Rational>(n);
        let mut p = hp.clone();
        let mut m = hm.clone();
        let mut c = Vec::with_capacity(n - 1);
        for _ in 1..n {
            c.push(m.matmul(&p).trace());
            p = p.matmul(&hp);
            m = m.matmul(&hm);
        }
        Ok(PairingConstants { n, c })
    }

    /// `c_i`, 1-based.
    pub fn get(&self, i: usize) -> &Rational {
        &self.c[i - 1]
    }
}

/// `tr(v·w)`.
pub fn trace_form<R: Ring>(v: &Matrix<R>, w: &Matrix<R>) -> Result<R> {
    if v.n() != w.n() {
        return Err(Error::DimensionMismatch {
            left: v.n(),
            right: w.n(),
        });
    }
    let n = v.n();
    let mut acc = R::zero();
    for r in 0..n {
        for k in 0..n {
            let a = v.get(r, k);
            let b = w.get(k, r);
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
    }
    Ok(acc)
}

/// `ς_n(A) · v · ς_n(A)⁻¹`.
pub fn adjoint_action<R: Ring>(a: &SL2Matrix<R>, v: &Matrix<R>) -> Result<Matrix<R>> {
    let n = v.n();
    let g = sym_power(a, n)?;
    let g_inv = sym_power(&a.inverse(), n)?;
    Ok(g.matmul(v).matmul(&g_inv))
}

/// Standard basis of traceless `n×n` matrices: off-diagonal units followed by
/// `E_kk − E_{k+1,k+1}`.
pub fn traceless_basis(n: usize) -> Vec<Matrix<Rational>> {
    let mut basis = Vec::with_capacity(n * n - 1);
    for r in 0..n {
        for c in 0..n {
            if r != c {
                basis.push(Matrix::unit(n, r, c));
            }
        }
    }
    for k in 0..n - 1 {
        basis.push(Matrix::unit(n, k, k) - Matrix::unit(n, k + 1, k + 1));
    }
    basis
}

/// Gram matrix of the trace form on [`traceless_basis`].
pub fn gram_matrix(n: usize) -> Vec<Vec<Rational>> {
    let basis = traceless_basis(n);
    basis
        .iter()
        .map(|v| basis.iter().map(|w| trace_form(v, w).unwrap()).collect())
        .collect()
}

pub fn gram_determinant(n: usize) -> Rational {
    linalg::determinant(&gram_matrix(n))
}

/// Fixed subspace of the unipotent subgroup `(1 β; 0 1)` acting on 𝔰𝔩(n).
#[derive(Clone, Debug)]
pub struct ParabolicInvariants {
    pub n: usize,
    pub basis: Vec<Matrix<Rational>>,
    /// Whether the span coincides with `⟨h₊, …, h₊^{n−1}⟩`.
    pub spans_powers: bool,
}

/// Kernel of `v ↦ [h₊, v]` on traceless matrices, compared with the powers
/// of `h₊`.
pub fn parabolic_invariants(n: usize) -> Result<ParabolicInvariants> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let hp = h_plus::<Rational>(n);
    let nn = n * n;
    // column k of the linear map is the image of the k-th unit matrix
    let images: Vec<Matrix<Rational>> = (0..nn)
        .map(|k| hp.commutator(&Matrix::unit(n, k / n, k % n)))
        .collect();
    let mut rows: Vec<Vec<Rational>> = (0..nn)
        .map(|e| images.iter().map(|img| img.entries()[e].clone()).collect())
        .collect();
    rows.push(
        (0..nn)
            .map(|k| if k / n == k % n { Rational::one() } else { Rational::zero() })
            .collect(),
    );
    let basis: Vec<Matrix<Rational>> = linalg::nullspace(&rows, nn)
        .into_iter()
        .map(|v| Matrix::from_fn(n, |r, c| v[r * n + c].clone()))
        .collect();

    let powers: Vec<Vec<Rational>> = (1..n)
        .map(|i| h_plus_power::<Rational>(n, i).unwrap().entries().to_vec())
        .collect();
    let kernel_rows: Vec<Vec<Rational>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let joint: Vec<Vec<Rational>> = powers.iter().chain(&kernel_rows).cloned().collect();
    let spans_powers = linalg::rank(&powers) == n - 1
        && kernel_rows.len() == n - 1
        && linalg::rank(&joint) == n - 1;
    Ok(ParabolicInvariants {
        n,
        basis,
        spans_powers,
    })
}

/// Dimensions of the irreducible summands of 𝔰𝔩(n) under `Ad ∘ ς_n`, read
/// off from the weights of `ad ς_n(e)` on the unit-matrix basis.
pub fn clebsch_gordan_dims(n: usize) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let he = sym_power_lie(&sl2_e::<Rational>(), n)?;
    let max_weight = 2 * (n - 1);
    // multiplicity of weight w ≥ 0, offset by max_weight for negative ones
    let mut mult = vec![0usize; 2 * max_weight + 1];
    for r in 0..n {
        for c in 0..n {
            let unit = Matrix::unit(n, r, c);
            let weight = he.commutator(&unit).get(r, c).clone();
            let w = weight.to_f64().round() as i64;
            mult[(w + max_weight as i64) as usize] += 1;
        }
    }
    // the identity matrix carries one unit of weight 0 outside 𝔰𝔩(n)
    mult[max_weight] -= 1;
    let mut dims = Vec::new();
    for w in (0..=max_weight).rev().step_by(2) {
        let here = mult[max_weight + w];
        let above = if w + 2 <= max_weight {
            mult[max_weight + w + 2]
        } else {
            0
        };
        for _ in above..here {
            dims.push(w + 1);
        }
    }
    Ok(dims)
}
