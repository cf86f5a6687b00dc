//! Exact self-checks of the representation theory behind the certificates,
//! run per dimension by `charvar verify-lemmas`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cusp::{cohomology_basis, cup_pairing, growth_exponent, CuspShape, Scalar, TorusForm};
use crate::error::Result;
use crate::exact::{Beta, FieldElement, Lambda, Matrix, NumberField, Poly, Rational, Ring};
use crate::liealg::{
    adjoint_action, clebsch_gordan_dims, gram_determinant, parabolic_invariants, trace_form, PairingConstants,
};
use crate::rep::{
    h_minus, h_minus_power, h_plus, h_plus_power, nilpotent_exp, sl2_e, sl2_f, sl2_g, sym_power, sym_power_gl2,
    sym_power_lie, SL2Matrix, Sign,
};

/// Largest `n` for which the Gram determinant of the trace form is computed.
pub const GRAM_LIMIT: usize = 8;

/// Outcome of one named check at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

fn check(lemma: &'static str, n: usize, passed: bool, detail: impl Into<String>) -> LemmaCheck {
    LemmaCheck {
        lemma,
        n,
        passed,
        detail: detail.into(),
    }
}

fn gaussian_entry(rng: &mut impl Rng, i: &FieldElement) -> FieldElement {
    let mut part = || Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    FieldElement::rational(part()) + FieldElement::rational(part()) * i.clone()
}

/// A random element of SL(2, ℚ(i)) as a product of three elementary
/// unipotents, with a random sign.
pub fn random_gaussian_sl2(rng: &mut impl Rng) -> SL2Matrix<FieldElement> {
    let i = FieldElement::generator(&NumberField::gaussian());
    let a = SL2Matrix::upper(gaussian_entry(rng, &i));
    let b = SL2Matrix::lower(gaussian_entry(rng, &i));
    let c = SL2Matrix::upper(gaussian_entry(rng, &i));
    a.mul(&b).mul(&c).with_sign(Sign::from_bool(rng.gen()))
}

fn homomorphism(n: usize, pairs: usize, seed: u64) -> Result<LemmaCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    for _ in 0..pairs {
        let a = random_gaussian_sl2(&mut rng);
        let b = random_gaussian_sl2(&mut rng);
        let lhs = sym_power(&a.mul(&b), n)?;
        let rhs = sym_power(&a, n)?.matmul(&sym_power(&b, n)?);
        if lhs != rhs || !lhs.det().is_one() {
            return Ok(check("symmetric-power-homomorphism", n, false, "ς(AB) ≠ ς(A)ς(B)"));
        }
    }
    Ok(check(
        "symmetric-power-homomorphism",
        n,
        true,
        format!("{pairs} random pairs in SL(2,Q(i))"),
    ))
}

fn lie_images(n: usize) -> Result<LemmaCheck> {
    let hp = sym_power_lie(&sl2_f::<Rational>(), n)?;
    let hm = sym_power_lie(&sl2_g::<Rational>(), n)?;
    let he = sym_power_lie(&sl2_e::<Rational>(), n)?;
    let expected_plus = Matrix::from_fn(n, |r, c| {
        if c == r + 1 {
            Rational::from_int(c as i64)
        } else {
            Rational::zero()
        }
    });
    let expected_minus = Matrix::from_fn(n, |r, c| {
        if r == c + 1 {
            Rational::from_int((n - 1 - c) as i64)
        } else {
            Rational::zero()
        }
    });
    let passed = hp == expected_plus
        && hm == expected_minus
        && hp == h_plus(n)
        && hm == h_minus(n)
        && hp.commutator(&hm) == he
        && he.commutator(&hp) == hp.scale_rational(&Rational::from_int(2));
    Ok(check("lie-images", n, passed, "h+ has (i,i+1) entry i; brackets preserved"))
}

fn exponentials(n: usize) -> Result<LemmaCheck> {
    let beta = Poly::<Rational, Beta>::var();
    let mut passed = true;
    for sign in [Sign::Plus, Sign::Minus] {
        let up = sym_power(&SL2Matrix::upper(beta.clone()).with_sign(sign), n)?;
        let exp = nilpotent_exp(&h_plus(n), &beta)?.scale(&sign.power(n - 1));
        let down = sym_power(&SL2Matrix::lower(beta.clone()).with_sign(sign), n)?;
        let exp_down = nilpotent_exp(&h_minus(n), &beta)?.scale(&sign.power(n - 1));
        passed &= up == exp && down == exp_down && up.is_upper_triangular();
    }
    Ok(check(
        "unipotent-exponentials",
        n,
        passed,
        "ς(±(1 β; 0 1)) = (±1)^(n-1) exp(β h+) in Q[β]",
    ))
}

/// Conjugation by `ς_n(diag(λ, 1/λ))` equals conjugation by
/// `ς̃_n(diag(λ², 1))`, which stays polynomial in λ.
fn diagonal_scaling(n: usize) -> Result<LemmaCheck> {
    type L = Poly<Rational, Lambda>;
    let lambda = L::var();
    let zero = L::zero();
    let d = sym_power_gl2(
        &Matrix::from_rows(vec![vec![lambda.pow(2), zero.clone()], vec![zero, L::one()]])?,
        n,
    );
    let mut passed = true;
    for i in 1..n {
        let scale = lambda.pow(2 * i as u32);
        let hp = h_plus_power::<L>(n, i)?;
        let hm = h_minus_power::<L>(n, i)?;
        passed &= d.matmul(&hp) == hp.matmul(&d).scale(&scale);
        passed &= d.matmul(&hm).scale(&scale) == hm.matmul(&d);
    }
    Ok(check("diagonal-scaling", n, passed, "Ad diag(λ,1/λ) h+^i = λ^(2i) h+^i"))
}

fn killing_multiple(n: usize, seed: u64) -> Result<LemmaCheck> {
    let basis = [sl2_e::<Rational>(), sl2_f(), sl2_g()];
    let k = Rational::new((n * (n * n - 1)) as i64, 6);
    let mut passed = true;
    for x in &basis {
        for y in &basis {
            let lhs = trace_form(&sym_power_lie(x, n)?, &sym_power_lie(y, n)?)?;
            passed &= lhs == k.clone() * x.matmul(y).trace();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 8);
    let a = random_gaussian_sl2(&mut rng);
    let lift = |m: &Matrix<Rational>| m.map(|q| FieldElement::rational(q.clone()));
    let v = lift(&h_plus(n)).scale(&FieldElement::from_int(3)) + lift(&h_minus_power(n, n - 1)?);
    let w = lift(&h_minus(n)) + lift(&sym_power_lie(&sl2_e(), n)?);
    passed &= trace_form(&adjoint_action(&a, &v)?, &adjoint_action(&a, &w)?)? == trace_form(&v, &w)?;
    Ok(check(
        "trace-form",
        n,
        passed,
        format!("tr(ς(X)ς(Y)) = {k}·tr(XY); Ad-invariant"),
    ))
}

fn centralizer(n: usize) -> Result<LemmaCheck> {
    let inv = parabolic_invariants(n)?;
    let dims = clebsch_gordan_dims(n)?;
    let expected: Vec<usize> = (1..n).rev().map(|k| 2 * k + 1).collect();
    let passed = inv.basis.len() == n - 1 && inv.spans_powers && dims == expected;
    Ok(check(
        "parabolic-invariants",
        n,
        passed,
        format!("dim ker ad h+ = {} spanned by h+^i; summands {:?}", inv.basis.len(), dims),
    ))
}

fn pairing(n: usize) -> Result<LemmaCheck> {
    let c = PairingConstants::compute(n)?;
    let mut passed = c.c.iter().all(|ci| !ci.is_zero());
    for i in 1..n {
        for j in 1..n {
            let value = trace_form(&h_minus_power::<Rational>(n, i)?, &h_plus_power(n, j)?)?;
            let expected = if i == j { c.get(i).clone() } else { Rational::zero() };
            passed &= value == expected;
        }
    }
    let gram = if n <= GRAM_LIMIT {
        let det = gram_determinant(n);
        passed &= !det.is_zero();
        "; Gram determinant nonzero"
    } else {
        ""
    };
    let shown: Vec<String> = c.c.iter().map(|x| x.to_string()).collect();
    Ok(check(
        "trace-pairing",
        n,
        passed,
        format!("c = [{}]{gram}", shown.join(", ")),
    ))
}

fn cusp_cohomology(n: usize) -> Result<LemmaCheck> {
    let shape = CuspShape::formal();
    let tau = shape.tau().clone();
    let c = PairingConstants::compute(n)?;
    let (a, b) = (2, 5);
    let mut passed = true;
    for i in 1..n {
        for j in 1..n {
            let value = cup_pairing(&TorusForm::constant(a, b, i), &TorusForm::Omega(j), n, &shape)?;
            let expected = if i == j {
                (tau.clone() * Scalar::from_int(a) - Scalar::from_int(b)).scale(c.get(i))
            } else {
                Scalar::zero()
            };
            passed &= value == expected;
        }
        passed &= growth_exponent(&TorusForm::Omega(i), n)? == 2 * i as i64;
        passed &= growth_exponent(&TorusForm::constant(a, b, i), n)? == -2 * i as i64;
    }
    let basis = cohomology_basis(n, &FieldElement::from_int(a), &FieldElement::from_int(b), &shape)?;
    passed &= !basis.determinant.is_zero();
    Ok(check(
        "cusp-cohomology-basis",
        n,
        passed,
        "cup(CONST_i, OMEGA_j) = c_i δ_ij (aτ-b); basis pairing nondegenerate; growth ±2i",
    ))
}

/// Every check for one `n ≥ 2`.
pub fn verify_lemmas(n: usize, seed: u64) -> Result<Vec<LemmaCheck>> {
    Ok(vec![
        homomorphism(n, 5, seed)?,
        lie_images(n)?,
        exponentials(n)?,
        diagonal_scaling(n)?,
        killing_multiple(n, seed)?,
        centralizer(n)?,
        pairing(n)?,
        cusp_cohomology(n)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_for_small_n() {
        for n in 2..5 {
            for c in verify_lemmas(n, 1).unwrap() {
                assert!(c.passed, "{} at n = {n}", c.lemma);
            }
        }
    }

    #[test]
    fn random_elements_have_determinant_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert!(random_gaussian_sl2(&mut rng).matrix().det().is_one());
        }
    }
}
