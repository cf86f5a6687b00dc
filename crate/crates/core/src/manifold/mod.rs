//! Group presentations of cusped 3-manifolds, holonomy lifts to SL(2) over a
//! number field, and the peripheral normalisation that puts each cusp in
//! upper-triangular form.

mod parse;

pub use parse::parse_manifold;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{FieldElement, Matrix, NumberField, Ring};
use crate::rep::{sym_power, SL2Matrix, Sign};
use crate::word::Word;

/// Generators, relators and one (meridian, longitude) pair per cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub generators: Vec<char>,
    pub relators: Vec<Word>,
    pub cusps: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.generators().find(|g| !self.generators.contains(g)) {
            Some(g) => Err(Error::UndefinedGenerator(g.to_string())),
            None => Ok(()),
        }
    }
}

/// Images of the generators in SL(2, K).
#[derive(Clone, Debug)]
pub struct HolonomyLift {
    pub field: Option<Arc<NumberField>>,
    pub images: BTreeMap<char, SL2Matrix<FieldElement>>,
}

impl HolonomyLift {
    pub fn image(&self, g: char) -> Result<&SL2Matrix<FieldElement>> {
        self.images
            .get(&g)
            .ok_or_else(|| Error::UndefinedGenerator(g.to_string()))
    }

    /// Image of a word in SL(2).
    pub fn evaluate(&self, word: &Word) -> Result<SL2Matrix<FieldElement>> {
        word.letters().iter().try_fold(SL2Matrix::identity(), |acc, l| {
            let g = self.image(l.generator)?;
            Ok(acc.mul(&if l.inverse { g.inverse() } else { g.clone() }))
        })
    }

    /// `G⁻¹ · ρ(g) · G` for every generator.
    pub fn conjugate(&self, g: &Matrix<FieldElement>) -> Result<HolonomyLift> {
        let det = g.det();
        let det_inv = det.try_inverse().ok_or(Error::DivisionByZero)?;
        let g_inv = Matrix::from_rows(vec![
            vec![g.get(1, 1).clone() * det_inv.clone(), -g.get(0, 1).clone() * det_inv.clone()],
            vec![-g.get(1, 0).clone() * det_inv.clone(), g.get(0, 0).clone() * det_inv],
        ])?;
        let images = self
            .images
            .iter()
            .map(|(&name, a)| {
                let m = g_inv.matmul(&a.to_matrix()).matmul(g);
                Ok((name, SL2Matrix::new(m, Sign::Plus)?))
            })
            .collect::<Result<_>>()?;
        Ok(HolonomyLift {
            field: self.field.clone(),
            images,
        })
    }
}

/// A presentation together with a holonomy lift.
#[derive(Clone, Debug)]
pub struct Manifold {
    pub name: String,
    pub presentation: Presentation,
    pub lift: HolonomyLift,
}

const FIGURE_EIGHT: &str = include_str!("data/fig8.txt");

impl Manifold {
    pub fn figure_eight() -> Self {
        parse_manifold("fig8", FIGURE_EIGHT).expect("built-in data parses")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "fig8" | "figure-eight" | "4_1" => Some(Self::figure_eight()),
            _ => None,
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map_or_else(|| "manifold".to_string(), |s| s.to_string_lossy().into_owned());
        parse_manifold(&name, &text)
    }
}

/// Value of one relator under the lift.
#[derive(Clone, Debug, PartialEq)]
pub struct RelatorReport {
    pub relator: Word,
    pub sign: Sign,
}

/// Every relator must evaluate to `±Id`.
pub fn check_relators(pres: &Presentation, lift: &HolonomyLift) -> Result<Vec<RelatorReport>> {
    pres.relators
        .iter()
        .map(|rel| {
            let m = lift.evaluate(rel)?.to_matrix();
            let sign = if m == Matrix::identity(2) {
                Sign::Plus
            } else if m == -Matrix::identity(2) {
                Sign::Minus
            } else {
                return Err(Error::NonCentralRelator {
                    relator: rel.to_string(),
                });
            };
            Ok(RelatorReport {
                relator: rel.clone(),
                sign,
            })
        })
        .collect()
}

/// Normal form of one cusp: after conjugating by `conjugator`, the meridian
/// is `±(1 1; 0 1)` and the longitude `±(1 τ; 0 1)`.
#[derive(Clone, Debug)]
pub struct PeripheralReport {
    pub meridian: Word,
    pub longitude: Word,
    pub meridian_sign: Sign,
    pub longitude_sign: Sign,
    pub tau: FieldElement,
    pub conjugator: Matrix<FieldElement>,
    pub normalized: HolonomyLift,
}

fn parabolic_sign(m: &Matrix<FieldElement>, word: &Word) -> Result<Sign> {
    let two = FieldElement::from_int(2);
    let trace = m.trace();
    let sign = if trace == two {
        Sign::Plus
    } else if trace == -two {
        Sign::Minus
    } else {
        return Err(Error::NotParabolic {
            word: word.to_string(),
        });
    };
    if *m == Matrix::scalar(2, sign.power(1)) {
        return Err(Error::NotParabolic {
            word: word.to_string(),
        });
    }
    Ok(sign)
}

/// `G = [v w]` with `K v = 0` and `K w = v` for the nonzero nilpotent `K`.
fn jordan_basis(k: &Matrix<FieldElement>) -> Result<Matrix<FieldElement>> {
    let row = if !k.get(0, 0).is_zero() || !k.get(0, 1).is_zero() { 0 } else { 1 };
    let v = [-k.get(row, 1).clone(), k.get(row, 0).clone()];
    let col = if !k.get(0, 0).is_zero() || !k.get(1, 0).is_zero() { 0 } else { 1 };
    // K e_col = α v
    let image = [k.get(0, col).clone(), k.get(1, col).clone()];
    let alpha = if !v[0].is_zero() {
        image[0].clone() * v[0].try_inverse().ok_or(Error::NotUnipotent)?
    } else {
        image[1].clone() * v[1].try_inverse().ok_or(Error::NotUnipotent)?
    };
    let alpha_inv = alpha.try_inverse().ok_or(Error::NotUnipotent)?;
    let mut w = [FieldElement::zero(), FieldElement::zero()];
    w[col] = alpha_inv;
    Matrix::from_rows(vec![
        vec![v[0].clone(), w[0].clone()],
        vec![v[1].clone(), w[1].clone()],
    ])
}

/// Checks each cusp pair is parabolic and commuting, conjugates the meridian
/// to `±(1 1; 0 1)` and reads off the cusp shape.
pub fn peripheral_parabolic_check(pres: &Presentation, lift: &HolonomyLift) -> Result<Vec<PeripheralReport>> {
    pres.cusps
        .iter()
        .map(|(mer, lon)| {
            pres.check_word(mer)?;
            pres.check_word(lon)?;
            let m = lift.evaluate(mer)?.to_matrix();
            let l = lift.evaluate(lon)?.to_matrix();
            let meridian_sign = parabolic_sign(&m, mer)?;
            let longitude_sign = parabolic_sign(&l, lon)?;
            if m.matmul(&l) != l.matmul(&m) {
                return Err(Error::NonCommuting(mer.to_string(), lon.to_string()));
            }
            let k = m.scale(&meridian_sign.power(1)) - Matrix::identity(2);
            let conjugator = jordan_basis(&k)?;
            let normalized = lift.conjugate(&conjugator)?;
            let l_norm = normalized.evaluate(lon)?.to_matrix().scale(&longitude_sign.power(1));
            let one = FieldElement::one();
            if !l_norm.get(1, 0).is_zero() || *l_norm.get(0, 0) != one || *l_norm.get(1, 1) != one {
                return Err(Error::NonCommuting(mer.to_string(), lon.to_string()));
            }
            let tau = l_norm.get(0, 1).clone();
            if tau.to_complex().im.abs() < 1e-12 {
                return Err(Error::RealCuspShape);
            }
            Ok(PeripheralReport {
                meridian: mer.clone(),
                longitude: lon.clone(),
                meridian_sign,
                longitude_sign,
                tau,
                conjugator,
                normalized,
            })
        })
        .collect()
}

/// `ρ_n(w) = ς_n(Hol(w))`.
pub fn rho_n_of_word(lift: &HolonomyLift, n: usize, word: &Word) -> Result<Matrix<FieldElement>> {
    word.letters().iter().try_fold(Matrix::identity(n), |acc, l| {
        let g = lift.image(l.generator)?;
        let g = if l.inverse { g.inverse() } else { g.clone() };
        Ok(acc.matmul(&sym_power(&g, n)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_relator_is_identity() {
        let m = Manifold::figure_eight();
        let reports = check_relators(&m.presentation, &m.lift).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].sign, Sign::Plus);
        let empty = Presentation {
            generators: vec!['x'],
            relators: vec![],
            cusps: vec![],
        };
        assert!(check_relators(&empty, &m.lift).unwrap().is_empty());
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let mut m = Manifold::figure_eight();
        let y = m.lift.images[&'y'].clone();
        let two = FieldElement::from_int(2);
        let bad = SL2Matrix::from_entries(
            FieldElement::one(),
            FieldElement::zero(),
            y.matrix().get(1, 0).clone() * two,
            FieldElement::one(),
            Sign::Plus,
        )
        .unwrap();
        m.lift.images.insert('y', bad);
        match check_relators(&m.presentation, &m.lift) {
            Err(Error::NonCentralRelator { relator }) => assert_eq!(relator, "XyxYxyXYxY"),
            other => panic!("expected a relator failure, got {other:?}"),
        }
    }

    #[test]
    fn figure_eight_cusp() {
        let m = Manifold::figure_eight();
        let mer = &m.presentation.cusps[0].0;
        assert_eq!(m.lift.evaluate(mer).unwrap().trace(), FieldElement::from_int(2));
        let report = &peripheral_parabolic_check(&m.presentation, &m.lift).unwrap()[0];
        assert_eq!(report.meridian_sign, Sign::Plus);
        assert_eq!(report.longitude_sign, Sign::Minus);
        let w = FieldElement::generator(m.lift.field.as_ref().unwrap());
        assert_eq!(report.tau, FieldElement::from_int(2) - FieldElement::from_int(4) * w);
        let normal = report.normalized.evaluate(mer).unwrap().to_matrix();
        assert_eq!(normal, SL2Matrix::upper(FieldElement::one()).to_matrix());
        let again = &peripheral_parabolic_check(&m.presentation, &report.normalized).unwrap()[0];
        assert_eq!(again.tau, report.tau);
    }

    #[test]
    fn rho_n_is_multiplicative() {
        let m = Manifold::figure_eight();
        let a: Word = "xyX".parse().unwrap();
        let b: Word = "YYx".parse().unwrap();
        for n in 2..5 {
            assert_eq!(rho_n_of_word(&m.lift, n, &Word::empty()).unwrap(), Matrix::identity(n));
            let lhs = rho_n_of_word(&m.lift, n, &a.concat(&b)).unwrap();
            let rhs = rho_n_of_word(&m.lift, n, &a)
                .unwrap()
                .matmul(&rho_n_of_word(&m.lift, n, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
        assert!(rho_n_of_word(&m.lift, 2, &"z".parse().unwrap()).is_err());
    }
}
