//! Plain-text manifold descriptions.
//!
//! ```text
//! # comment
//! field: 1,-1,1            # minimal polynomial, lowest degree first (optional)
//! gens: x y
//! rel: XyxYxyXYxY
//! cusp: x yXYxxYXy         # meridian, longitude
//! mat x: 1 1 0 1           # a b c d, each a comma list of field coordinates
//! mat y: 1 0 0,1 1
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{HolonomyLift, Manifold, Presentation};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, NumberField, Rational};
use crate::rep::{SL2Matrix, Sign};
use crate::word::Word;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rationals(line: usize, text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| err(line, format!("invalid rational {:?}", s.trim())))
        })
        .collect()
}

fn parse_word(line: usize, text: &str) -> Result<Word> {
    let word: Word = text
        .parse()
        .map_err(|_| err(line, format!("invalid word {text:?}")))?;
    if !word.is_reduced() {
        return Err(err(line, format!("word {text:?} is not freely reduced")));
    }
    Ok(word)
}

pub fn parse_manifold(name: &str, text: &str) -> Result<Manifold> {
    let mut field: Option<Arc<NumberField>> = None;
    let mut generators: Option<(usize, Vec<char>)> = None;
    let mut relators: Vec<(usize, Word)> = Vec::new();
    let mut cusps: Vec<(usize, Word, Word)> = Vec::new();
    let mut mats: Vec<(usize, char, Vec<Vec<Rational>>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "field" => {
                if field.is_some() {
                    return Err(err(line, "field declared twice"));
                }
                let minpoly = parse_rationals(line, value)?;
                let k = NumberField::new("w", minpoly).map_err(|e| err(line, e.to_string()))?;
                field = Some(Arc::new(k));
            }
            "gens" => {
                if generators.is_some() {
                    return Err(err(line, "generators declared twice"));
                }
                let gens = value
                    .split_whitespace()
                    .map(|g| {
                        let mut chars = g.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) if c.is_ascii_lowercase() => Ok(c),
                            _ => Err(err(line, format!("generator {g:?} must be one lowercase letter"))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                if gens.is_empty() {
                    return Err(err(line, "no generators"));
                }
                generators = Some((line, gens));
            }
            "rel" => relators.push((line, parse_word(line, value)?)),
            "cusp" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err(line, "cusp needs a meridian and a longitude word"));
                }
                cusps.push((line, parse_word(line, parts[0])?, parse_word(line, parts[1])?));
            }
            _ => {
                let Some(gen) = key.strip_prefix("mat ") else {
                    return Err(err(line, format!("unknown key {key:?}")));
                };
                let gen = gen.trim();
                let g = match (gen.len(), gen.chars().next()) {
                    (1, Some(c)) if c.is_ascii_lowercase() => c,
                    _ => return Err(err(line, format!("invalid generator {gen:?}"))),
                };
                let entries = value
                    .split_whitespace()
                    .map(|e| parse_rationals(line, e))
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != 4 {
                    return Err(err(line, format!("expected 4 matrix entries, found {}", entries.len())));
                }
                mats.push((line, g, entries));
            }
        }
    }

    let (gens_line, generators) = generators.ok_or_else(|| err(0, "missing `gens:` line"))?;
    let check = |line: usize, w: &Word| -> Result<()> {
        match w.generators().find(|g| !generators.contains(g)) {
            Some(g) => Err(err(line, format!("undefined generator {g:?}"))),
            None => Ok(()),
        }
    };
    for (line, rel) in &relators {
        check(*line, rel)?;
    }
    for (line, m, l) in &cusps {
        check(*line, m)?;
        check(*line, l)?;
    }

    let mut images = BTreeMap::new();
    for (line, g, entries) in mats {
        if !generators.contains(&g) {
            return Err(err(line, format!("undefined generator {g:?}")));
        }
        let elems = entries
            .into_iter()
            .map(|coeffs| match &field {
                Some(k) => {
                    if coeffs.len() > k.degree() {
                        Err(err(line, "too many coordinates for the field"))
                    } else {
                        Ok(FieldElement::new(k, coeffs))
                    }
                }
                None if coeffs.len() == 1 => Ok(FieldElement::rational(coeffs[0].clone())),
                None => Err(err(line, "field coordinates given without a `field:` line")),
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [FieldElement; 4] = elems.try_into().expect("four entries");
        let m = SL2Matrix::from_entries(a, b, c, d, Sign::Plus)
            .map_err(|_| err(line, format!("matrix for {g:?} does not have determinant 1")))?;
        if images.insert(g, m).is_some() {
            return Err(err(line, format!("matrix for {g:?} given twice")));
        }
    }
    if let Some(g) = generators.iter().find(|g| !images.contains_key(g)) {
        return Err(err(gens_line, format!("no matrix for generator {g:?}")));
    }

    Ok(Manifold {
        name: name.to_string(),
        presentation: Presentation {
            generators,
            relators: relators.into_iter().map(|(_, w)| w).collect(),
            cusps: cusps.into_iter().map(|(_, m, l)| (m, l)).collect(),
        },
        lift: HolonomyLift { field, images },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(result: Result<Manifold>) -> usize {
        match result {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(line_of(parse_manifold("t", "gens: x\nrel: xq\nmat x: 1 1 0 1")), 2);
        assert_eq!(line_of(parse_manifold("t", "gens: x\n\nmat x: 1 1 0")), 3);
        assert_eq!(line_of(parse_manifold("t", "gens: x\nmat x: 2 0 0 1")), 2);
        assert_eq!(line_of(parse_manifold("t", "# c\ngens: x y\nmat x: 1 1 0 1")), 2);
        assert_eq!(line_of(parse_manifold("t", "gens: x\nbogus: 1")), 2);
        assert_eq!(line_of(parse_manifold("t", "gens: x\nrel: xX\nmat x: 1 1 0 1")), 2);
    }

    #[test]
    fn rational_lift_without_field() {
        let m = parse_manifold("t", "gens: a\ncusp: a a\nmat a: 1 1/2 0 1\n").unwrap();
        assert!(m.lift.field.is_none());
        assert_eq!(m.lift.images[&'a'].matrix().get(0, 1).to_string(), "1/2");
    }
}
