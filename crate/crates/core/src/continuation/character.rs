use num_complex::Complex64;

use super::{word_product, CMatrix};
use crate::word::{Letter, Word};

/// Traces of every freely reduced nonempty word of length at most `max_len`
/// in the generators and their inverses, in a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSample {
    pub words: Vec<Word>,
    pub traces: Vec<Complex64>,
}

/// All freely reduced nonempty words up to `max_len`, shortest first.
pub fn reduced_words(generators: &[char], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = generators
        .iter()
        .flat_map(|&g| {
            [false, true].map(|inverse| Letter {
                generator: g,
                inverse,
            })
        })
        .collect();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&l.inverted()) {
                    continue;
                }
                let mut grown = w.clone();
                grown.push(l);
                next.push(grown);
            }
        }
        out.extend(next.iter().map(|w| {
            w.iter().fold(Word::empty(), |acc, l| {
                let g = Word::generator(l.generator);
                acc.concat(&if l.inverse { g.inverse() } else { g })
            })
        }));
        layer = next;
    }
    out
}

impl CharacterSample {
    pub fn new(generators: &[char], matrices: &[CMatrix], max_len: usize) -> Self {
        let words = reduced_words(generators, max_len);
        let index = |g: char| generators.iter().position(|&h| h == g).expect("known generator");
        let traces = words
            .iter()
            .map(|w| word_product(matrices, &index, w).trace())
            .collect();
        CharacterSample { words, traces }
    }

    /// Largest absolute difference of corresponding traces.
    pub fn distance(&self, other: &CharacterSample) -> f64 {
        self.traces
            .iter()
            .zip(&other.traces)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
