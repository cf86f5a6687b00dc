//! Words in a free group on single-letter generators. A lowercase letter is a
//! generator, the matching uppercase letter its inverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: char,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn to_char(self) -> char {
        if self.inverse {
            self.generator.to_ascii_uppercase()
        } else {
            self.generator
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: char) -> Self {
        Word {
            letters: vec![Letter {
                generator: g,
                inverse: false,
            }],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, rhs: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }.reduced()
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// Cancels adjacent `g g⁻¹` pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverted())
    }

    pub fn generators(&self) -> impl Iterator<Item = char> + '_ {
        self.letters.iter().map(|l| l.generator)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses letters; `1` or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let letters = s
            .chars()
            .map(|ch| {
                if ch.is_ascii_lowercase() {
                    Ok(Letter {
                        generator: ch,
                        inverse: false,
                    })
                } else if ch.is_ascii_uppercase() {
                    Ok(Letter {
                        generator: ch.to_ascii_lowercase(),
                        inverse: true,
                    })
                } else {
                    Err(Error::UndefinedGenerator(ch.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_invert_reduce() {
        let w: Word = "xyXY".parse().unwrap();
        assert_eq!(w.to_string(), "xyXY");
        assert_eq!(w.inverse().to_string(), "yxYX");
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!("xXy".parse::<Word>().unwrap().reduced().to_string(), "y");
        assert_eq!(Word::generator('m').power(-2).to_string(), "MM");
        assert!("x1".parse::<Word>().is_err());
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
    }
}
