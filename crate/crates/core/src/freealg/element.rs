use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;

use super::{Alphabet, Word, WordError};

/// A finite linear combination of words, stored in canonical word order
/// without zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<K: Coefficient> {
    ctx: K::Context,
    terms: BTreeMap<Word, K>,
}

impl<K: Coefficient> AlgebraElement<K> {
    pub fn zero(ctx: &K::Context) -> Self {
        AlgebraElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &K::Context) -> Self {
        Self::from_word(ctx, Word::identity())
    }

    pub fn from_word(ctx: &K::Context, word: Word) -> Self {
        Self::term(ctx, K::one(ctx), word)
    }

    pub fn term(ctx: &K::Context, coeff: K, word: Word) -> Self {
        let mut x = Self::zero(ctx);
        x.add_term(word, coeff);
        x
    }

    pub fn context(&self) -> &K::Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order; a term's position here is its index.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn term_at(&self, index: usize) -> Option<(&Word, &K)> {
        self.terms.iter().nth(index)
    }

    pub fn coeff(&self, word: &Word) -> K {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| K::zero(&self.ctx))
    }

    pub fn add_term(&mut self, word: Word, coeff: K) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&K::one(&self.ctx).neg()))
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(k));
        }
        out
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a.mul(b));
            }
        }
        out
    }

    /// Applies a coefficient map, e.g. a specialization.
    pub fn map_coeffs<L: Coefficient>(
        &self,
        ctx: &L::Context,
        f: impl Fn(&K) -> L,
    ) -> AlgebraElement<L> {
        let mut out = AlgebraElement::zero(ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ElementDisplay<'a, K> {
        ElementDisplay {
            elem: self,
            alphabet,
        }
    }

    /// Parses `[coeff] word + [coeff] word + …`; a missing bracket means
    /// coefficient 1, and `0` is the zero element.
    pub fn parse(ctx: &K::Context, alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        let mut out = Self::zero(ctx);
        if text == "0" {
            return Ok(out);
        }
        for part in split_top_level(text)? {
            let part = part.trim();
            let (coeff, rest) = if let Some(stripped) = part.strip_prefix('[') {
                let close = stripped
                    .find(']')
                    .ok_or_else(|| WordError::BadElement(text.to_owned()))?;
                let c = K::parse(ctx, &stripped[..close])?;
                (c, &stripped[close + 1..])
            } else {
                (K::one(ctx), part)
            };
            if rest.trim().is_empty() {
                return Err(WordError::BadElement(text.to_owned()));
            }
            out.add_term(alphabet.parse(rest)?, coeff);
        }
        Ok(out)
    }
}

fn split_top_level(text: &str) -> Result<Vec<&str>, WordError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if !(0..=1).contains(&depth) {
            return Err(WordError::BadElement(text.to_owned()));
        }
    }
    if depth != 0 {
        return Err(WordError::BadElement(text.to_owned()));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

pub struct ElementDisplay<'a, K: Coefficient> {
    elem: &'a AlgebraElement<K>,
    alphabet: &'a Alphabet,
}

impl<K: Coefficient> fmt::Display for ElementDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.elem.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "[{c}] ")?;
            }
            write!(f, "{}", self.alphabet.display(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{LaurentPoly, RingSpec};
    use num_rational::BigRational;

    #[test]
    fn text_round_trip() {
        let ring = RingSpec::new(&["a", "c"], &["c"]).unwrap();
        let alpha = Alphabet::new(&["s1", "s2"]).unwrap();
        for s in [
            "[c] s1^2 s2^2",
            "0",
            "1 + [-a + 2*c^-1] s1 s2^-1",
            "[c^9] 1",
        ] {
            let x = AlgebraElement::<LaurentPoly>::parse(&ring, &alpha, s).unwrap();
            assert_eq!(x.display(&alpha).to_string(), s);
        }
        assert!(AlgebraElement::<LaurentPoly>::parse(&ring, &alpha, "[c s1").is_err());
        assert!(AlgebraElement::<LaurentPoly>::parse(&ring, &alpha, "[c]").is_err());
    }

    #[test]
    fn unit_and_zero() {
        let alpha = Alphabet::new(&["s1", "s2"]).unwrap();
        let x = AlgebraElement::<BigRational>::parse(&(), &alpha, "[1/2] s1 + [3] s2 s1").unwrap();
        assert_eq!(AlgebraElement::one(&()).mul(&x), x);
        assert!(x.mul(&AlgebraElement::zero(&())).is_zero());
        assert!(x.sub(&x).is_zero());
    }
}
