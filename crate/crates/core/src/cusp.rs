//! Closed 1-forms on a cusp torus with values in 𝔰𝔩(n), the cocycles they
//! integrate to, their cup products and their growth along the cusp.
//!
//! The torus group is generated by `m = γ₁` acting as `(x, y) ↦ (x+1, y)` and
//! `l = γ₂` acting as `(x, y) ↦ (x, y+1)`, with holonomies `±(1 1; 0 1)` and
//! `±(1 τ; 0 1)`. The class `(p, q)` is `m^p l^q`, with parameter `s = p + qτ`.
//!
//! Scalars are polynomials in τ over a number field ([`Scalar`]); a
//! specialised shape is the constant polynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{binomial, FieldElement, Matrix, Poly, Rational, Ring, Tau, Z};
use crate::liealg::trace_form;
use crate::rep::{h_minus_power, h_plus, h_plus_power, nilpotent_exp, Sign};
use crate::word::Word;

/// Polynomials in the cusp shape τ.
pub type Scalar = Poly<FieldElement, Tau>;

pub const MERIDIAN: char = 'm';
pub const LONGITUDE: char = 'l';

/// Cusp shape τ and the sign lifts of the two generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspShape {
    tau: Scalar,
    signs: [Sign; 2],
}

impl CuspShape {
    /// τ kept as an indeterminate.
    pub fn formal() -> Self {
        CuspShape {
            tau: Scalar::var(),
            signs: [Sign::Plus, Sign::Plus],
        }
    }

    /// A concrete τ, which must not be real.
    pub fn specialized(tau: FieldElement) -> Result<Self> {
        if tau.to_complex().im.abs() < 1e-12 {
            return Err(Error::RealCuspShape);
        }
        Ok(CuspShape {
            tau: Scalar::constant(tau),
            signs: [Sign::Plus, Sign::Plus],
        })
    }

    pub fn with_signs(mut self, meridian: Sign, longitude: Sign) -> Self {
        self.signs = [meridian, longitude];
        self
    }

    pub fn tau(&self) -> &Scalar {
        &self.tau
    }

    pub fn is_formal(&self) -> bool {
        self.tau.degree().unwrap_or(0) > 0
    }

    pub fn signs(&self) -> [Sign; 2] {
        self.signs
    }

    /// `s = p + qτ`.
    pub fn parameter(&self, p: i64, q: i64) -> Scalar {
        Scalar::from_int(p) + self.tau.clone() * Scalar::from_int(q)
    }

    /// Sign of the lift of `m^p l^q`.
    pub fn class_sign(&self, p: i64, q: i64) -> Sign {
        let odd = |k: i64, s: Sign| s.is_minus() && k.rem_euclid(2) == 1;
        Sign::from_bool(odd(p, self.signs[0]) != odd(q, self.signs[1]))
    }

    /// `ρ_n(m^p l^q) = (±1)^{n−1} exp(s·h₊)`.
    pub fn rho_n(&self, n: usize, p: i64, q: i64) -> Matrix<Scalar> {
        let u = nilpotent_exp(&h_plus::<Scalar>(n), &self.parameter(p, q)).expect("h₊ is nilpotent");
        u.scale(&self.class_sign(p, q).power(n - 1))
    }

    /// The word `m^p l^q`.
    pub fn class_word(p: i64, q: i64) -> Word {
        Word::generator(MERIDIAN)
            .power(p)
            .concat(&Word::generator(LONGITUDE).power(q))
    }
}

/// A closed 𝔰𝔩(n)-valued 1-form on the cusp torus.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusForm {
    /// `ω_i = dz ⊗ Ad_{u(z)} h₋^i` with `z = x + τy`.
    Omega(usize),
    /// `(a·dx + b·dy) ⊗ h₊^j`.
    Const {
        a: FieldElement,
        b: FieldElement,
        j: usize,
    },
}

impl TorusForm {
    pub fn constant(a: i64, b: i64, j: usize) -> Self {
        TorusForm::Const {
            a: FieldElement::from_int(a),
            b: FieldElement::from_int(b),
            j,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            TorusForm::Omega(i) => *i,
            TorusForm::Const { j, .. } => *j,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let k = self.index();
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: n - 1,
            });
        }
        Ok(())
    }
}

impl fmt::Display for TorusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusForm::Omega(i) => write!(f, "omega_{i}"),
            TorusForm::Const { a, b, j } => write!(f, "({a})dx + ({b})dy ⊗ h+^{j}"),
        }
    }
}

/// Coefficients `C_k` of `Ad_{u(z)} h₋^i = Σ_k C_k z^k`.
pub fn adjoint_orbit_coefficients(n: usize, i: usize) -> Result<Vec<Matrix<Rational>>> {
    let z = Poly::<Rational, Z>::var();
    let hp = h_plus::<Poly<Rational, Z>>(n);
    let u = nilpotent_exp(&hp, &z)?;
    let u_inv = nilpotent_exp(&hp, &-z)?;
    let conj = u.matmul(&h_minus_power(n, i)?).matmul(&u_inv);
    let top = conj.entries().iter().filter_map(Poly::degree).max().unwrap_or(0);
    Ok((0..=top)
        .map(|k| conj.map(|entry| entry.coeff(k)))
        .collect())
}

fn embed(m: &Matrix<Rational>) -> Matrix<Scalar> {
    m.map(Scalar::from_rational)
}

fn field_scalar(x: &FieldElement) -> Scalar {
    Scalar::constant(x.clone())
}

/// `∫` of the form along the straight segment from `(0,0)` to `(p,q)`.
pub fn integrate_form(
    form: &TorusForm,
    n: usize,
    shape: &CuspShape,
    p: i64,
    q: i64,
) -> Result<Matrix<Scalar>> {
    form.check(n)?;
    match form {
        TorusForm::Const { a, b, j } => {
            let weight = field_scalar(a) * Scalar::from_int(p) + field_scalar(b) * Scalar::from_int(q);
            Ok(embed(&h_plus_power(n, *j)?).scale(&weight))
        }
        TorusForm::Omega(i) => {
            // ∫₀¹ s·C_k·(ts)^k dt = C_k s^{k+1}/(k+1)
            let s = shape.parameter(p, q);
            let mut acc = Matrix::zeros(n);
            let mut s_power = s.clone();
            for (k, c) in adjoint_orbit_coefficients(n, *i)?.iter().enumerate() {
                let weight = s_power.scale(&Rational::new(1, k as i64 + 1));
                acc = acc + embed(c).scale(&weight);
                s_power = s_power * s.clone();
            }
            Ok(acc)
        }
    }
}

/// A twisted 1-cocycle on a finitely generated group: values on generators,
/// extended by `d(γγ') = d(γ) + Ad_{ρ(γ)} d(γ')`.
#[derive(Clone, Debug)]
pub struct Cocycle<R: Ring> {
    n: usize,
    images: BTreeMap<char, (Matrix<R>, Matrix<R>)>,
    values: BTreeMap<char, Matrix<R>>,
}

impl<R: Ring> Cocycle<R> {
    /// `images` maps each generator to `(ρ(g), ρ(g)⁻¹)`.
    pub fn new(
        n: usize,
        images: BTreeMap<char, (Matrix<R>, Matrix<R>)>,
        values: BTreeMap<char, Matrix<R>>,
    ) -> Self {
        Cocycle { n, images, values }
    }

    /// The coboundary `γ ↦ v − Ad_{ρ(γ)} v`.
    pub fn coboundary(n: usize, images: BTreeMap<char, (Matrix<R>, Matrix<R>)>, v: &Matrix<R>) -> Self {
        let values = images
            .iter()
            .map(|(&g, (rho, rho_inv))| (g, v.clone() - rho.matmul(v).matmul(rho_inv)))
            .collect();
        Cocycle { n, images, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, g: char) -> Option<&Matrix<R>> {
        self.values.get(&g)
    }

    pub fn images(&self) -> &BTreeMap<char, (Matrix<R>, Matrix<R>)> {
        &self.images
    }

    /// Pointwise sum of two cocycles for the same representation.
    pub fn add(&self, other: &Self) -> Self {
        let values = self
            .values
            .iter()
            .map(|(g, v)| (*g, v.clone() + other.values[g].clone()))
            .collect();
        Cocycle {
            n: self.n,
            images: self.images.clone(),
            values,
        }
    }

    fn letter(&self, g: char) -> Result<(&Matrix<R>, &Matrix<R>, &Matrix<R>)> {
        let (rho, rho_inv) = self
            .images
            .get(&g)
            .ok_or_else(|| Error::UndefinedGenerator(g.to_string()))?;
        let d = self
            .values
            .get(&g)
            .ok_or_else(|| Error::UndefinedGenerator(g.to_string()))?;
        Ok((rho, rho_inv, d))
    }

    /// `(ρ(w), d(w))`.
    pub fn evaluate_with_rho(&self, word: &Word) -> Result<(Matrix<R>, Matrix<R>)> {
        let mut rho = Matrix::identity(self.n);
        let mut rho_inv = Matrix::identity(self.n);
        let mut d = Matrix::zeros(self.n);
        for letter in word.letters() {
            let (g, g_inv, dg) = self.letter(letter.generator)?;
            let (step, step_inv, d_step) = if letter.inverse {
                (g_inv, g, -g_inv.matmul(dg).matmul(g))
            } else {
                (g, g_inv, dg.clone())
            };
            d = d + rho.matmul(&d_step).matmul(&rho_inv);
            rho = rho.matmul(step);
            rho_inv = step_inv.matmul(&rho_inv);
        }
        Ok((rho, d))
    }

    pub fn evaluate(&self, word: &Word) -> Result<Matrix<R>> {
        Ok(self.evaluate_with_rho(word)?.1)
    }

    /// A cocycle must vanish on every relator.
    pub fn check_relator(&self, relator: &Word) -> Result<()> {
        if self.evaluate(relator)?.is_zero() {
            Ok(())
        } else {
            Err(Error::CocycleRelator(relator.to_string()))
        }
    }
}

/// `(ρ(g), ρ(g)⁻¹)` for the two torus generators.
pub fn torus_images(n: usize, shape: &CuspShape) -> BTreeMap<char, (Matrix<Scalar>, Matrix<Scalar>)> {
    BTreeMap::from([
        (MERIDIAN, (shape.rho_n(n, 1, 0), shape.rho_n(n, -1, 0))),
        (LONGITUDE, (shape.rho_n(n, 0, 1), shape.rho_n(n, 0, -1))),
    ])
}

pub fn torus_relator() -> Word {
    "mlML".parse().expect("valid word")
}

/// The cocycle `[γ] ↦ ∫_γ form` on the torus group, checked on the
/// commutation relator.
pub fn cocycle_from_form(form: &TorusForm, n: usize, shape: &CuspShape) -> Result<Cocycle<Scalar>> {
    let values = BTreeMap::from([
        (MERIDIAN, integrate_form(form, n, shape, 1, 0)?),
        (LONGITUDE, integrate_form(form, n, shape, 0, 1)?),
    ]);
    let cocycle = Cocycle::new(n, torus_images(n, shape), values);
    cocycle.check_relator(&torus_relator())?;
    Ok(cocycle)
}

/// The `dx` and `dy` coefficients of a form as matrices of polynomials in `z = x + τy`.
fn components(form: &TorusForm, n: usize, shape: &CuspShape) -> Result<[Matrix<Poly<Scalar, Z>>; 2]> {
    form.check(n)?;
    let lift = |m: &Matrix<Scalar>| m.map(|x| Poly::<Scalar, Z>::constant(x.clone()));
    Ok(match form {
        TorusForm::Const { a, b, j } => {
            let h = embed(&h_plus_power(n, *j)?);
            [lift(&h.scale(&field_scalar(a))), lift(&h.scale(&field_scalar(b)))]
        }
        TorusForm::Omega(i) => {
            let coeffs = adjoint_orbit_coefficients(n, *i)?;
            let dx = Matrix::from_fn(n, |r, c| {
                Poly::from_coeffs(coeffs.iter().map(|m| Scalar::from_rational(m.get(r, c))).collect())
            });
            let dy = dx.scale(&Poly::constant(shape.tau.clone()));
            [dx, dy]
        }
    })
}

/// `∫∫_{[0,1]²} (x + τy)^k dx dy`.
fn square_moment(k: usize, tau: &Scalar) -> Scalar {
    (0..=k).fold(Scalar::zero(), |acc, m| {
        let weight = binomial(k, m) * Rational::new(1, ((k - m + 1) * (m + 1)) as i64);
        acc + tau.pow(m as u32).scale(&weight)
    })
}

/// Coefficient of `dx∧dy` in `f ∧ g` (trace-paired), integrated over the unit square.
pub fn cup_pairing(f: &TorusForm, g: &TorusForm, n: usize, shape: &CuspShape) -> Result<Scalar> {
    let [fx, fy] = components(f, n, shape)?;
    let [gx, gy] = components(g, n, shape)?;
    let density = trace_form(&fx, &gy)? - trace_form(&fy, &gx)?;
    Ok(density
        .coeffs()
        .iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (k, c)| acc + c.clone() * square_moment(k, &shape.tau)))
}

/// Exponent `κ` with `|form|² dvol ~ e^{κt}` along the cusp.
///
/// Under the cusp flow `E_rc` scales by `e^{(r−c)t}`, a coordinate 1-form by
/// `e^{t}` and the volume form by `e^{−2t}`.
pub fn growth_exponent(form: &TorusForm, n: usize) -> Result<i64> {
    let shape = CuspShape::formal();
    let [dx, dy] = components(form, n, &shape)?;
    let weight = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !dx.get(r, c).is_zero() || !dy.get(r, c).is_zero())
        .map(|(r, c)| r as i64 - c as i64)
        .max()
        .unwrap_or(i64::MIN / 4);
    Ok(2 * (weight + 1) - 2)
}

pub fn is_square_integrable(form: &TorusForm, n: usize) -> Result<bool> {
    Ok(growth_exponent(form, n)? < 0)
}

/// `{ω_1, …, ω_{n−1}, (a dx + b dy)⊗h₊, …, ⊗h₊^{n−1}}` with its cup-pairing matrix.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub forms: Vec<TorusForm>,
    pub pairing: Matrix<Scalar>,
    pub determinant: Scalar,
}

pub fn cohomology_basis(
    n: usize,
    a: &FieldElement,
    b: &FieldElement,
    shape: &CuspShape,
) -> Result<CohomologyBasis> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if (field_scalar(a) * shape.tau.clone() - field_scalar(b)).is_zero() {
        return Err(Error::DegenerateBasis);
    }
    let forms: Vec<TorusForm> = (1..n)
        .map(TorusForm::Omega)
        .chain((1..n).map(|j| TorusForm::Const {
            a: a.clone(),
            b: b.clone(),
            j,
        }))
        .collect();
    let size = forms.len();
    let mut pairing = Matrix::zeros(size);
    for (r, f) in forms.iter().enumerate() {
        for (c, g) in forms.iter().enumerate() {
            pairing.set(r, c, cup_pairing(f, g, n, shape)?);
        }
    }
    let determinant = pairing.det();
    if determinant.is_zero() {
        return Err(Error::DegenerateBasis);
    }
    Ok(CohomologyBasis {
        forms,
        pairing,
        determinant,
    })
}
