use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::WordError;

/// Index of a generator in an [`Alphabet`].
pub type Gen = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i32,
}

/// A braid-group word, kept reduced: no zero exponents and no two adjacent
/// letters on the same generator. The empty word is the identity.
///
/// Words are ordered by total length `Σ|exp|`, then lexicographically on
/// their letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: Gen) -> Self {
        Word {
            letters: vec![Letter { gen, exp: 1 }],
        }
    }

    pub fn power(gen: Gen, exp: i32) -> Self {
        let mut w = Word::identity();
        w.push(gen, exp);
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (Gen, i32)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `gen^exp`, merging with the last letter when possible.
    pub fn push(&mut self, gen: Gen, exp: i32) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { gen, exp }),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length in the generators, `Σ|exp|`.
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.exp.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Word {
        (0..n).fold(Word::identity(), |acc, _| acc.mul(self))
    }

    /// The word spelled out as unit letters `g^±1`.
    pub fn unit_letters(&self) -> Vec<(Gen, i32)> {
        let mut out = Vec::with_capacity(self.len());
        for l in &self.letters {
            let s = l.exp.signum();
            for _ in 0..l.exp.unsigned_abs() {
                out.push((l.gen, s));
            }
        }
        out
    }

    pub fn from_unit_letters(units: &[(Gen, i32)]) -> Word {
        Word::from_letters(units.iter().copied())
    }

    /// Whether every exponent is positive.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exp > 0)
    }

    pub fn max_gen(&self) -> Option<Gen> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Generator names used to read and print words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        if names.len() > Gen::MAX as usize {
            return Err(WordError::TooManyGenerators(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || n == "1" {
                return Err(WordError::BadGeneratorName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(WordError::BadGeneratorName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: Gen) -> &str {
        &self.names[gen as usize]
    }

    pub fn gen(&self, name: &str) -> Result<Gen, WordError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Gen)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_owned()))
    }

    /// Parses whitespace-separated letters `g` or `g^k`; `1` or the empty
    /// string is the identity.
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        let mut w = Word::identity();
        if text == "1" {
            return Ok(w);
        }
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let exp: i32 = e
                        .parse()
                        .map_err(|_| WordError::BadExponent(tok.to_owned()))?;
                    if exp == 0 {
                        return Err(WordError::BadExponent(tok.to_owned()));
                    }
                    (n, exp)
                }
                None => (tok, 1),
            };
            w.push(self.gen(name)?, exp);
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            alphabet: self,
            word,
        }
    }

    pub fn format(&self, word: &Word) -> String {
        self.display(word).to_string()
    }
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(l.gen))?;
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}
