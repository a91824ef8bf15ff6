//! Explicit infinite-rank modules over 0-Hecke style quotients.
//!
//! A module has finitely many families of basis symbols `f[r]`, `r ≥ 1`, and
//! each generator sends `f[r]` to an integer combination of symbols
//! `f'[r + δ]`. Witness files are line oriented; `#` starts a comment.
//!
//! ```text
//! hecke-witness 1
//! name G4-nil
//! presentation G4-nil(0)
//! families w w' y y'
//! act s2 w[r] = y[r+1]
//! act s1 w[r] = 0
//! act s1 y[r] = [2] w[r] + [-1] y[r-1]
//! growth s1^2 s2^2 from w[1]
//! ```
//!
//! Words act on the left: `g1 g2 · v = g1 · (g2 · v)`.

mod torsion;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::EnumerationError;
use crate::freealg::{Alphabet, Gen, Word};
use crate::presentations::{catalogue, Presentation, PresentationError};
use crate::rewrite::RewriteError;

pub use torsion::{torsion_witness, TorsionCertificate};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("index bound {0} is below 4")]
    BoundTooSmall(usize),
    #[error("relation {relation} fails on {symbol}: {lhs} != {rhs}")]
    Violated {
        relation: String,
        symbol: String,
        lhs: String,
        rhs: String,
    },
    #[error("relation {0} has a non-constant or non-positive part")]
    Unsupported(String),
    #[error("iteration {iteration}: orbit reached {vector}, not a single symbol of higher index")]
    Orbit { iteration: usize, vector: String },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Trace(Box<RewriteError>),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

impl From<RewriteError> for WitnessError {
    fn from(e: RewriteError) -> Self {
        WitnessError::Trace(Box::new(e))
    }
}

/// A basis symbol `family[index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub family: usize,
    pub index: i64,
}

/// A finitely supported integer vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vector(BTreeMap<Symbol, BigInt>);

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(s: Symbol) -> Self {
        Vector(BTreeMap::from([(s, BigInt::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &BigInt)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, s: Symbol, c: BigInt) {
        let e = self.0.entry(s).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&s);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, k: &BigInt) {
        for (s, c) in &other.0 {
            self.add_term(*s, c * k);
        }
    }

    /// The symbol and coefficient of a one-term vector.
    pub fn single(&self) -> Option<(Symbol, &BigInt)> {
        let mut it = self.0.iter();
        match (it.next(), it.next()) {
            (Some((s, c)), None) => Some((*s, c)),
            _ => None,
        }
    }
}

/// One term `coeff · family[r + offset]` of an action rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTerm {
    pub coeff: BigInt,
    pub family: usize,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessModule {
    pub name: String,
    /// Catalogue name of the presentation the module is checked against.
    pub presentation: String,
    pub generators: Alphabet,
    pub families: Vec<String>,
    /// `rules[g][f]` is the image of `f[r]` under generator `g`.
    pub rules: Vec<Vec<Vec<RuleTerm>>>,
    pub growth_word: Word,
    pub growth_start: Symbol,
}

pub struct VectorDisplay<'a> {
    module: &'a WitnessModule,
    vector: &'a Vector,
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vector.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.vector.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "[{c}] ")?;
            }
            write!(f, "{}", self.module.symbol_name(*s))?;
        }
        Ok(())
    }
}

impl WitnessModule {
    pub fn symbol_name(&self, s: Symbol) -> String {
        format!("{}[{}]", self.families[s.family], s.index)
    }

    pub fn display<'a>(&'a self, vector: &'a Vector) -> VectorDisplay<'a> {
        VectorDisplay {
            module: self,
            vector,
        }
    }

    pub fn symbol(&self, family: &str, index: i64) -> Result<Symbol, WitnessError> {
        let family = self
            .families
            .iter()
            .position(|f| f == family)
            .ok_or_else(|| WitnessError::UnknownFamily(family.to_owned()))?;
        Ok(Symbol { family, index })
    }

    /// Image of `v` under one generator. Symbols with index below 1 do not
    /// exist and are dropped unless `symbolic`, where indices are offsets
    /// from a generic `r`.
    fn act_gen(&self, g: Gen, v: &Vector, symbolic: bool) -> Vector {
        let mut out = Vector::zero();
        for (s, c) in v.terms() {
            for t in &self.rules[g as usize][s.family] {
                let index = s.index + t.offset;
                if symbolic || index >= 1 {
                    out.add_term(
                        Symbol {
                            family: t.family,
                            index,
                        },
                        c * &t.coeff,
                    );
                }
            }
        }
        out
    }

    fn act_word(&self, w: &Word, v: &Vector, symbolic: bool) -> Result<Vector, WitnessError> {
        let mut out = v.clone();
        for (g, e) in w.unit_letters().into_iter().rev() {
            if e < 0 {
                return Err(WitnessError::Unsupported(format!(
                    "inverse of {}",
                    self.generators.name(g)
                )));
            }
            out = self.act_gen(g, &out, symbolic);
        }
        Ok(out)
    }

    /// `g · v` for a generator name.
    pub fn act(&self, g: &str, v: &Vector) -> Result<Vector, WitnessError> {
        let g = self
            .generators
            .gen(g)
            .map_err(|_| WitnessError::UnknownGenerator(g.to_owned()))?;
        Ok(self.act_gen(g, v, false))
    }

    pub fn act_by(&self, w: &Word, v: &Vector) -> Result<Vector, WitnessError> {
        self.act_word(w, v, false)
    }

    pub fn load_presentation(&self) -> Result<Presentation, WitnessError> {
        let p = catalogue(&self.presentation)?;
        if p.alphabet != self.generators {
            return Err(WitnessError::Unsupported(format!(
                "presentation generators {:?} differ from module generators {:?}",
                p.alphabet.names(),
                self.generators.names()
            )));
        }
        Ok(p)
    }
}

/// A defining relation as `Σ c·word = 0` with integer coefficients.
struct Relation {
    name: String,
    terms: Vec<(Word, BigInt)>,
}

fn relations(p: &Presentation) -> Result<Vec<Relation>, WitnessError> {
    let mut out = Vec::new();
    for (l, r) in &p.braid_relations {
        out.push(Relation {
            name: format!("{} = {}", p.alphabet.format(l), p.alphabet.format(r)),
            terms: vec![(l.clone(), BigInt::one()), (r.clone(), -BigInt::one())],
        });
    }
    for rel in &p.order_relations {
        let n = rel.order() as i32;
        let name = format!("order of {}", p.alphabet.name(rel.gen));
        let mut terms = vec![(Word::power(rel.gen, n), BigInt::one())];
        for (i, c) in rel.coeffs.iter().enumerate() {
            let k = c
                .as_constant()
                .ok_or_else(|| WitnessError::Unsupported(name.clone()))?;
            if !k.is_zero() {
                terms.push((Word::power(rel.gen, i as i32), -k));
            }
        }
        out.push(Relation { name, terms });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub module: String,
    pub presentation: String,
    pub bound: usize,
    pub relations: Vec<String>,
    /// Basis symbols checked exactly.
    pub symbols: usize,
    /// Every relation also holds at a generic index `r`, so the check is
    /// independent of the bound.
    pub symbolic: bool,
}

/// Checks every defining relation of `p` on every basis symbol with index
/// at most `bound`, and once more at a generic index.
pub fn check_relations(
    m: &WitnessModule,
    p: &Presentation,
    bound: usize,
) -> Result<RelationCertificate, WitnessError> {
    if bound < 4 {
        return Err(WitnessError::BoundTooSmall(bound));
    }
    let rels = relations(p)?;
    let evaluate =
        |rel: &Relation, s: Symbol, symbolic: bool| -> Result<(Vector, Vector), WitnessError> {
            let e = Vector::basis(s);
            let (mut lhs, mut rhs) = (Vector::zero(), Vector::zero());
            for (w, c) in &rel.terms {
                let image = m.act_word(w, &e, symbolic)?;
                if c > &BigInt::zero() {
                    lhs.add_scaled(&image, c);
                } else {
                    rhs.add_scaled(&image, &-c);
                }
            }
            Ok((lhs, rhs))
        };
    let mut symbols = 0;
    for family in 0..m.families.len() {
        for index in 1..=bound as i64 {
            symbols += 1;
            let s = Symbol { family, index };
            for rel in &rels {
                let (lhs, rhs) = evaluate(rel, s, false)?;
                if lhs != rhs {
                    return Err(WitnessError::Violated {
                        relation: rel.name.clone(),
                        symbol: m.symbol_name(s),
                        lhs: m.display(&lhs).to_string(),
                        rhs: m.display(&rhs).to_string(),
                    });
                }
            }
        }
    }
    let mut symbolic = true;
    for family in 0..m.families.len() {
        for rel in &rels {
            let (lhs, rhs) = evaluate(rel, Symbol { family, index: 0 }, true)?;
            symbolic &= lhs == rhs;
        }
    }
    Ok(RelationCertificate {
        module: m.name.clone(),
        presentation: m.presentation.clone(),
        bound,
        relations: rels.into_iter().map(|r| r.name).collect(),
        symbols,
        symbolic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCertificate {
    pub module: String,
    pub word: String,
    pub start: String,
    pub iterations: usize,
    /// The symbols `word^i · start` for `i = 0..=iterations`.
    pub orbit: Vec<String>,
    pub indices: Vec<i64>,
    /// Common difference of `indices`.
    pub step: i64,
}

/// Iterates `word` on `start` and certifies each image is a single basis
/// symbol with coefficient 1 and strictly larger index, in arithmetic
/// progression.
pub fn growth_witness(
    m: &WitnessModule,
    word: &Word,
    start: Symbol,
    k: usize,
) -> Result<GrowthCertificate, WitnessError> {
    let mut v = Vector::basis(start);
    let mut orbit = vec![start];
    for iteration in 1..=k {
        v = m.act_by(word, &v)?;
        let next = match v.single() {
            Some((s, c)) if c.is_one() && s.index > orbit.last().expect("nonempty").index => s,
            _ => {
                return Err(WitnessError::Orbit {
                    iteration,
                    vector: m.display(&v).to_string(),
                })
            }
        };
        orbit.push(next);
    }
    let indices: Vec<i64> = orbit.iter().map(|s| s.index).collect();
    let step = indices.get(1).map_or(0, |i| i - indices[0]);
    if let Some(i) = indices.windows(2).position(|p| p[1] - p[0] != step) {
        return Err(WitnessError::Orbit {
            iteration: i + 1,
            vector: m.symbol_name(orbit[i + 1]),
        });
    }
    Ok(GrowthCertificate {
        module: m.name.clone(),
        word: m.generators.format(word),
        start: m.symbol_name(start),
        iterations: k,
        orbit: orbit.iter().map(|s| m.symbol_name(*s)).collect(),
        indices,
        step,
    })
}

fn parse_symbol(text: &str, families: &[String], generic: bool) -> Result<(usize, i64), String> {
    let text = text.trim();
    let (name, rest) = text
        .split_once('[')
        .ok_or_else(|| format!("expected family[index] in {text:?}"))?;
    let inner = rest
        .strip_suffix(']')
        .ok_or_else(|| format!("unclosed index in {text:?}"))?;
    let family = families
        .iter()
        .position(|f| f == name.trim())
        .ok_or_else(|| format!("unknown family {name:?}"))?;
    let inner: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
    let index = if generic {
        match inner.strip_prefix('r') {
            Some("") => 0,
            Some(off) => off
                .parse::<i64>()
                .map_err(|_| format!("bad offset in {text:?}"))?,
            None => return Err(format!("expected an index relative to r in {text:?}")),
        }
    } else {
        inner
            .parse::<i64>()
            .ok()
            .filter(|i| *i >= 1)
            .ok_or_else(|| format!("bad index in {text:?}"))?
    };
    Ok((family, index))
}

fn parse_combination(text: &str, families: &[String]) -> Result<Vec<RuleTerm>, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    let (mut depth, mut from) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 && text[..i].ends_with(char::is_whitespace) => {
                parts.push(&text[from..i]);
                from = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[from..]);
    for part in parts {
        let part = part.trim();
        let (coeff, sym) = match part.strip_prefix('[') {
            Some(rest) => {
                let (k, sym) = rest
                    .split_once(']')
                    .ok_or_else(|| format!("unclosed coefficient in {part:?}"))?;
                (
                    k.trim()
                        .parse::<BigInt>()
                        .map_err(|_| format!("bad coefficient in {part:?}"))?,
                    sym,
                )
            }
            None => (BigInt::one(), part),
        };
        let (family, offset) = parse_symbol(sym, families, true)?;
        if offset.abs() > 2 {
            return Err(format!("offset {offset} outside r-2..r+2"));
        }
        out.push(RuleTerm {
            coeff,
            family,
            offset,
        });
    }
    Ok(out)
}

impl WitnessModule {
    pub fn parse(text: &str) -> Result<Self, WitnessError> {
        let bad = |line: usize, msg: String| WitnessError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, header) = lines
            .next()
            .ok_or_else(|| bad(0, "empty witness file".into()))?;
        if header != format!("hecke-witness {FORMAT_VERSION}") {
            return Err(bad(
                n,
                format!("expected header `hecke-witness {FORMAT_VERSION}`"),
            ));
        }
        let (mut name, mut presentation, mut families) = (None, None, None);
        let mut acts = Vec::new();
        let mut growth = None;
        for (n, l) in lines {
            let (key, rest) = l.split_once(' ').unwrap_or((l, ""));
            let rest = rest.trim();
            match key {
                "name" => name = Some(rest.to_owned()),
                "presentation" => presentation = Some(rest.to_owned()),
                "families" => {
                    families = Some(
                        rest.split_whitespace()
                            .map(str::to_owned)
                            .collect::<Vec<_>>(),
                    )
                }
                "act" => acts.push((n, rest.to_owned())),
                "growth" => growth = Some((n, rest.to_owned())),
                _ => return Err(bad(n, format!("unrecognized line {l:?}"))),
            }
        }
        let name = name.ok_or_else(|| bad(0, "missing `name`".into()))?;
        let presentation = presentation.ok_or_else(|| bad(0, "missing `presentation`".into()))?;
        let families = families.ok_or_else(|| bad(0, "missing `families`".into()))?;
        let generators = catalogue(&presentation)?.alphabet;
        let mut rules: Vec<Vec<Option<Vec<RuleTerm>>>> =
            vec![vec![None; families.len()]; generators.len()];
        for (n, act) in acts {
            let (lhs, rhs) = act
                .split_once('=')
                .ok_or_else(|| bad(n, "expected `act g f[r] = …`".into()))?;
            let (g, sym) = lhs
                .trim()
                .split_once(' ')
                .ok_or_else(|| bad(n, "expected `act g f[r]`".into()))?;
            let g = generators
                .gen(g)
                .map_err(|_| WitnessError::UnknownGenerator(g.to_owned()))?;
            let (f, offset) = parse_symbol(sym, &families, true).map_err(|m| bad(n, m))?;
            if offset != 0 {
                return Err(bad(n, "rules are stated on f[r]".into()));
            }
            let slot = &mut rules[g as usize][f];
            if slot.is_some() {
                return Err(bad(n, "duplicate rule".into()));
            }
            *slot = Some(parse_combination(rhs, &families).map_err(|m| bad(n, m))?);
        }
        let rules = rules
            .into_iter()
            .enumerate()
            .map(|(g, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(f, r)| {
                        r.ok_or_else(|| {
                            bad(
                                0,
                                format!(
                                    "no rule for {} on {}[r]",
                                    generators.name(g as Gen),
                                    families[f]
                                ),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (n, growth) = growth.ok_or_else(|| bad(0, "missing `growth`".into()))?;
        let (word, start) = growth
            .split_once(" from ")
            .ok_or_else(|| bad(n, "expected `growth word from f[1]`".into()))?;
        let growth_word = generators
            .parse(word.trim())
            .map_err(|e| bad(n, e.to_string()))?;
        let (family, index) = parse_symbol(start, &families, false).map_err(|m| bad(n, m))?;
        Ok(WitnessModule {
            name,
            presentation,
            generators,
            families,
            rules,
            growth_word,
            growth_start: Symbol { family, index },
        })
    }
}

/// Shipped modules, by name.
pub fn witness_catalogue() -> Vec<(&'static str, &'static str)> {
    vec![
        ("G4-nil", include_str!("../../data/witness/g4-nil.witness")),
        (
            "G12-nil",
            include_str!("../../data/witness/g12-nil.witness"),
        ),
        (
            "G12-idem",
            include_str!("../../data/witness/g12-idem.witness"),
        ),
        (
            "Gd12-nil",
            include_str!("../../data/witness/gd12-nil.witness"),
        ),
        (
            "G422-AB-nil",
            include_str!("../../data/witness/g422-ab-nil.witness"),
        ),
    ]
}

pub fn witness_module(name: &str) -> Result<WitnessModule, WitnessError> {
    let (_, text) = witness_catalogue()
        .into_iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| WitnessError::UnknownFamily(format!("no witness module {name:?}")))?;
    WitnessModule::parse(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub relations: RelationCertificate,
    pub growth: GrowthCertificate,
}

/// Relation check at `bound` and the module's growth orbit of length `k`.
pub fn certify_module(
    m: &WitnessModule,
    bound: usize,
    k: usize,
) -> Result<WitnessCertificate, WitnessError> {
    let p = m.load_presentation()?;
    Ok(WitnessCertificate {
        relations: check_relations(m, &p, bound)?,
        growth: growth_witness(m, &m.growth_word, m.growth_start, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rules() {
        let m = witness_module("G4-nil").unwrap();
        assert_eq!(m.families, ["w", "w'", "y", "y'"]);
        let w3 = Vector::basis(m.symbol("w", 3).unwrap());
        assert_eq!(m.display(&m.act("s2", &w3).unwrap()).to_string(), "y[4]");
        assert!(m.act("s1", &w3).unwrap().is_zero());
        assert!(matches!(
            m.act("t", &w3),
            Err(WitnessError::UnknownGenerator(_))
        ));
        assert!(matches!(
            m.symbol("z", 1),
            Err(WitnessError::UnknownFamily(_))
        ));
    }

    #[test]
    fn combinations_and_offsets() {
        let fams = vec!["w".to_owned(), "y".to_owned()];
        let terms = parse_combination("[2] w[r+1] + [-1] y[r-1] + y[r]", &fams).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(
            (terms[1].coeff.clone(), terms[1].offset),
            (BigInt::from(-1), -1)
        );
        assert!(parse_combination("w[r+3]", &fams).is_err());
        let signed = vec!["w+".to_owned(), "w-".to_owned()];
        let terms = parse_combination("w+[r+1] + [3] w-[r]", &signed).unwrap();
        assert_eq!((terms[0].family, terms[1].family), (0, 1));
        assert!(parse_combination("z[r]", &fams).is_err());
    }

    #[test]
    fn incomplete_module_is_refused() {
        let text = witness_catalogue()[0].1.replace("act s2 y'[r] = 0\n", "");
        assert!(matches!(
            WitnessModule::parse(&text),
            Err(WitnessError::Parse { .. })
        ));
    }
}
