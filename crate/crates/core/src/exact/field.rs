use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// A number field ℚ[x]/(m(x)) with a chosen complex embedding of `x`.
///
/// The minimal polynomial is stored monic, lowest degree first. It is the
/// caller's responsibility that it is irreducible; inverses of elements
/// sharing a factor with `m` do not exist and [`FieldElement::try_inverse`]
/// returns `None` for them.
#[derive(Clone, Debug)]
pub struct NumberField {
    var: String,
    minpoly: Vec<Rational>,
    root: Complex64,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl NumberField {
    /// Builds the field from a minimal polynomial (lowest degree first). The
    /// embedding is the complex root with the largest imaginary part.
    pub fn new(var: &str, minpoly: Vec<Rational>) -> Result<Self> {
        let mut minpoly = minpoly;
        while minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(Error::Usage(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        let lead = minpoly.last().unwrap().clone();
        let minpoly: Vec<Rational> = minpoly.iter().map(|c| c / &lead).collect();
        let roots = complex_roots(&minpoly);
        let root = roots
            .into_iter()
            .max_by(|a, b| {
                (a.im, a.re)
                    .partial_cmp(&(b.im, b.re))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        Ok(NumberField {
            var: var.to_string(),
            minpoly,
            root,
        })
    }

    /// Overrides the complex embedding used for numerics.
    pub fn with_root(mut self, root: Complex64) -> Self {
        self.root = root;
        self
    }

    /// ℚ(i), `i² + 1 = 0`.
    pub fn gaussian() -> Arc<Self> {
        Arc::new(Self::new("i", vec![1.into(), 0.into(), 1.into()]).unwrap())
    }

    /// ℚ(w), `w² - w + 1 = 0`: `w` is a primitive sixth root of unity.
    pub fn sixth_roots() -> Arc<Self> {
        Arc::new(Self::new("w", vec![1.into(), (-1).into(), 1.into()]).unwrap())
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn root(&self) -> Complex64 {
        self.root
    }

    fn reduce(&self, coeffs: &mut Vec<Rational>) {
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = coeffs.len() - d;
            for (k, m) in self.minpoly.iter().take(d).enumerate() {
                coeffs[base + k] = &coeffs[base + k] - &(&top * m);
            }
        }
        trim(coeffs);
    }
}

/// Durand–Kerner iteration on a monic polynomial.
fn complex_roots(monic: &[Rational]) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = monic.iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect();
    let d = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

fn trim(coeffs: &mut Vec<Rational>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Element of a number field, or of ℚ when `field` is `None`.
///
/// Rational elements (no field tag) combine with elements of every field.
/// Combining elements of two different fields panics.
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<NumberField>>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn rational(q: Rational) -> Self {
        let mut coeffs = vec![q];
        trim(&mut coeffs);
        FieldElement { field: None, coeffs }
    }

    /// Element `Σ coeffs[k]·x^k`, reduced modulo the minimal polynomial.
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        let mut coeffs = coeffs;
        field.reduce(&mut coeffs);
        FieldElement {
            field: Some(Arc::clone(field)),
            coeffs,
        }
    }

    /// The generator `x` of the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Coefficients in the power basis, lowest first, without trailing zeros.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Value under the field's complex embedding.
    pub fn to_complex(&self) -> Complex64 {
        let root = self.field.as_ref().map_or(Complex64::new(0.0, 0.0), |f| f.root);
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * root + c.to_f64())
    }

    fn join(a: &Option<Arc<NumberField>>, b: &Option<Arc<NumberField>>) -> Option<Arc<NumberField>> {
        match (a, b) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(Arc::clone(f)),
            (Some(f), Some(g)) => {
                assert!(
                    Arc::ptr_eq(f, g) || **f == **g,
                    "arithmetic between elements of different number fields"
                );
                Some(Arc::clone(f))
            }
        }
    }

    fn inverse_in(field: &NumberField, a: &[Rational]) -> Option<Vec<Rational>> {
        // Extended Euclid on (m, a): track s with s·a ≡ r (mod m).
        let mut r0 = field.minpoly.clone();
        let mut r1 = a.to_vec();
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = vec_divrem(&r0, &r1);
            let s2 = vec_sub(&s0, &vec_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip()?;
        let mut out: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        field.reduce(&mut out);
        Some(out)
    }
}

fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_default();
            let y = b.get(k).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn vec_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn vec_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().recip().unwrap();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (k, y) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&c * y);
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs != other.coeffs {
            return false;
        }
        match (&self.field, &other.field) {
            (Some(f), Some(g)) => self.coeffs.len() <= 1 || Arc::ptr_eq(f, g) || **f == **g,
            _ => true,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let var = self.field.as_ref().map_or("x", |fld| fld.var.as_str());
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != Rational::one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let field = Self::join(&self.field, &rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs: Vec<Rational> = (0..n)
            .map(|k| {
                let x = self.coeffs.get(k).cloned().unwrap_or_default();
                let y = rhs.coeffs.get(k).cloned().unwrap_or_default();
                x + y
            })
            .collect();
        trim(&mut coeffs);
        FieldElement { field, coeffs }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let field = Self::join(&self.field, &rhs.field);
        let mut coeffs = vec_mul(&self.coeffs, &rhs.coeffs);
        if let Some(fld) = &field {
            fld.reduce(&mut coeffs);
        }
        FieldElement { field, coeffs }
    }
}

impl Ring for FieldElement {
    fn zero() -> Self {
        FieldElement {
            field: None,
            coeffs: Vec::new(),
        }
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        if let Some(q) = self.as_rational() {
            let inv = q.recip()?;
            let mut out = Self::rational(inv);
            out.field = self.field.clone();
            return Some(out);
        }
        let field = self.field.as_ref()?;
        let coeffs = Self::inverse_in(field, &self.coeffs)?;
        Some(FieldElement {
            field: Some(Arc::clone(field)),
            coeffs,
        })
    }
}
