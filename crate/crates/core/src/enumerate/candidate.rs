//! The 1296-word spanning candidate for the `G26` Hecke algebra.
//!
//! Words use the `G26` alphabet `s1 s2 t`. The list is `{b·g}` for `b` in a
//! 24-word basis `B24` of `A3 = ⟨s1, s2⟩` and `g` in a 54-word list of left
//! `A3`-module generators.

use serde::{Deserialize, Serialize};

use crate::coeff::Specialization;
use crate::freealg::{Alphabet, Gen, Word};
use crate::presentations::catalogue;

use super::certify::{certify_spanning, SpanningCertificate};
use super::{enumerate, Budget, EnumerationError, EnumerationResult, DEFAULT_SEED};

const S1: Gen = 0;
const S2: Gen = 1;
const T: Gen = 2;

fn g26_alphabet() -> Alphabet {
    Alphabet::new(&["s1", "s2", "t"]).expect("valid names")
}

fn words(texts: &[&str]) -> Vec<Word> {
    let a = g26_alphabet();
    texts
        .iter()
        .map(|t| a.parse(t).expect("valid word"))
        .collect()
}

fn cat(prefix: &Word, tails: &[Word]) -> Vec<Word> {
    tails.iter().map(|m| prefix.mul(m)).collect()
}

/// `{s1^α s2^β s1^γ : α, β, γ ∈ {−1, 0, 1}} ∪ {s1^α s2 s1^-1 s2}`, with
/// multiplicity (30 entries, letters merged).
pub fn a3_family() -> Vec<Word> {
    let mut out = Vec::with_capacity(30);
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                out.push(Word::from_letters([(S1, a), (S2, b), (S1, c)]));
            }
        }
    }
    for a in -1..=1 {
        out.push(Word::from_letters([(S1, a), (S2, 1), (S1, -1), (S2, 1)]));
    }
    out
}

fn in_a3_window(w: &Word) -> bool {
    w.letters().iter().all(|l| l.exp.abs() <= 1)
}

/// Greedy basis of `A3` from [`a3_family`]: window-reduced members,
/// deduplicated, in canonical order, kept when independent of those before
/// them in the `G4` enumeration at the seeded specialization.
pub fn select_b24(seed: u64) -> Result<Vec<Word>, EnumerationError> {
    let g4 = catalogue("G4")?;
    let r = enumerate(
        &g4,
        &Specialization::random(&g4.ring, seed),
        Some(seed),
        Budget::default(),
    )?;
    let mut family: Vec<Word> = a3_family().into_iter().filter(in_a3_window).collect();
    family.sort();
    family.dedup();
    let cert = certify_spanning(&family, &r)?;
    Ok(cert
        .independent
        .iter()
        .map(|&i| family[i].clone())
        .collect())
}

/// Left `⟨s1⟩`-module generators of `A3`: `1, s2·{1, s1, s1^-1}, s2^-1·{…}, s2 s1^-1 s2`.
pub fn m8() -> Vec<Word> {
    words(&[
        "1",
        "s2",
        "s2 s1",
        "s2 s1^-1",
        "s2^-1",
        "s2^-1 s1",
        "s2^-1 s1^-1",
        "s2 s1^-1 s2",
    ])
}

/// [`m8`] with `s1` and `s2` exchanged.
pub fn m8_prime() -> Vec<Word> {
    words(&[
        "1",
        "s1",
        "s1 s2",
        "s1 s2^-1",
        "s1^-1",
        "s1^-1 s2",
        "s1^-1 s2^-1",
        "s1 s2^-1 s1",
    ])
}

/// The nine generators of `A3 t s2 s1 t s2^±1 t A3` modulo the second layer.
pub fn middle_nine() -> Vec<Word> {
    let y = words(&["t s2 s1 t s2 t"]).remove(0);
    let z = words(&["t s2 s1 t s2^-1 t"]).remove(0);
    let mut out = vec![y];
    for b in [-1, 1] {
        for a in -1..=1 {
            out.push(z.mul(&Word::from_letters([(S1, b), (S2, a)])));
        }
    }
    out.push(z.mul(&Word::from_letters([(S1, 1), (S2, -1), (S1, 1)])));
    out.push(z);
    out
}

/// Image under `s_i ↦ s_i^-1, t ↦ t^-1`.
pub fn phi(w: &Word) -> Word {
    Word::from_letters(w.letters().iter().map(|l| (l.gen, -l.exp)))
}

/// [`phi`] with every `t^-1` replaced by `t`, which differs from it by a unit
/// and words with fewer `t` letters.
pub fn phi_surrogate(w: &Word) -> Word {
    Word::from_letters(
        w.letters()
            .iter()
            .map(|l| (l.gen, if l.gen == T { l.exp } else { -l.exp })),
    )
}

fn central() -> Word {
    words(&["t s2 s1"]).remove(0).pow(3)
}

/// The 54 left `A3`-module generators.
pub fn generators_54() -> Vec<Word> {
    let t = Word::gen(T);
    let mut out = vec![Word::identity()];
    out.extend(cat(&t, &m8()));
    for prefix in ["t s2 t", "t s2^-1 t"] {
        out.extend(cat(&words(&[prefix])[0], &m8_prime()));
    }
    out.extend(cat(&words(&["t s2 s1^-1 s2 t"])[0], &m8()));
    let nine = middle_nine();
    out.extend(nine.iter().cloned());
    out.extend(nine.iter().map(phi_surrogate));
    let c = central();
    out.push(c.pow(2));
    out.push(c.pow(3));
    // C^-2 = (t^-1 s1^-1 s2^-1)^6 by centrality, surrogated
    out.push(words(&["t s1^-1 s2^-1"]).remove(0).pow(6));
    out
}

/// The exact `φ`-images (with `t^-1` letters) of the surrogated generators.
pub fn inverse_generators() -> Vec<Word> {
    let mut out: Vec<Word> = middle_nine().iter().map(phi).collect();
    out.push(central().inverse().pow(2));
    out
}

fn products(b24: &[Word], gens: &[Word]) -> Vec<Word> {
    b24.iter()
        .flat_map(|b| gens.iter().map(move |g| b.mul(g)))
        .collect()
}

pub fn build_candidate_1296_with_seed(seed: u64) -> Result<Vec<Word>, EnumerationError> {
    Ok(products(&select_b24(seed)?, &generators_54()))
}

/// `{b·g : b ∈ B24, g ∈ G54}` with `B24` selected at [`DEFAULT_SEED`].
pub fn build_candidate_1296() -> Vec<Word> {
    build_candidate_1296_with_seed(DEFAULT_SEED).expect("G4 enumeration at the default seed closes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateList {
    Surrogate,
    /// The surrogate list followed by `A3 · inverse_generators()`.
    WithInverseWords,
}

/// Certifies the candidate against a `G26` result, falling back to the list
/// extended by the exact inverse words.
pub fn certify_candidate(
    r: &EnumerationResult,
    seed: u64,
) -> Result<(CandidateList, Vec<Word>, SpanningCertificate), EnumerationError> {
    let b24 = select_b24(seed)?;
    let list = products(&b24, &generators_54());
    match certify_spanning(&list, r) {
        Ok(cert) => Ok((CandidateList::Surrogate, list, cert)),
        Err(EnumerationError::RankDeficit { .. }) => {
            let mut extended = list;
            extended.extend(products(&b24, &inverse_generators()));
            let cert = certify_spanning(&extended, r)?;
            Ok((CandidateList::WithInverseWords, extended, cert))
        }
        Err(e) => Err(e),
    }
}

/// The 18 words `s2^a`, `s2^a t s2^b`, `s2^a t s2 t`, `s2^a t s2^-1 t` in
/// the alphabet `s2 t` of the parabolic presentation.
pub fn parabolic_s2t_family() -> Vec<Word> {
    let (s, t) = (0, 1);
    let mut out = Vec::with_capacity(18);
    for a in -1..=1 {
        out.push(Word::power(s, a));
    }
    for a in -1..=1 {
        for b in -1..=1 {
            out.push(Word::from_letters([(s, a), (t, 1), (s, b)]));
        }
    }
    for e in [1, -1] {
        for a in -1..=1 {
            out.push(Word::from_letters([(s, a), (t, 1), (s, e), (t, 1)]));
        }
    }
    out
}
