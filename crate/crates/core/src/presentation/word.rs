use std::fmt;

use serde::{Serialize, Serializer};

use crate::exchange::{ExchangeError, ExchangeMatrix};

/// A product of involutive generators, stored as 0-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The inverse, since every letter is an involution.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Cancels adjacent equal letters until none remain.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self · other · self⁻¹`, freely reduced.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.reversed()).reduced()
    }

    pub fn power(&self, m: u32) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * m as usize).collect())
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// Letters shifted to 1-based indices, joined by spaces.
    pub fn to_indices(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{}", i + 1)).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|i| i + 1))
    }
}

/// Expressions of the generators of a mutated diagram in the generators of
/// the starting one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWords(Vec<Word>);

impl GeneratorWords {
    pub fn identity(n: usize) -> Self {
        GeneratorWords((0..n).map(Word::generator).collect())
    }

    pub fn from_words(words: Vec<Word>) -> Self {
        GeneratorWords(words)
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One change of generators for the mutation of `current` at `k`:
    /// `t_i = s_k s_i s_k` when `current` has an arrow `i → k`.
    pub fn step(&self, current: &ExchangeMatrix, k: usize) -> GeneratorWords {
        let wk = &self.0[k];
        GeneratorWords(
            self.0
                .iter()
                .enumerate()
                .map(|(i, wi)| if current.entry(i, k) > 0 { wk.conjugate(wi) } else { wi.clone() })
                .collect(),
        )
    }
}

/// Generator words of `μ_seq(m)` in terms of the generators of `m`.
pub fn evolve_generators(
    m: &ExchangeMatrix,
    seq: &[usize],
) -> Result<GeneratorWords, ExchangeError> {
    let mut words = GeneratorWords::identity(m.rank());
    let mut current = m.clone();
    for &k in seq {
        let next = current.mutate(k)?;
        words = words.step(&current, k);
        current = next;
    }
    Ok(words)
}
