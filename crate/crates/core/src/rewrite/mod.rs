//! Single-step relation application and replay of rewriting traces.
//!
//! A trace file is line oriented; `#` starts a comment.
//!
//! ```text
//! hecke-trace 1
//! ring c
//! invertible
//! generators s1 s2
//! rule braid: s1 s2 s1 = s2 s1 s2
//! rule s1cube: s1^3 = [c] 1
//! start [c] s1^2 s2^2
//! end [c] s1^2 s2^2
//! term=0 pos=1 rule=braid dir=fwd
//! ```
//!
//! Steps address a term by its index in the canonical term order and a
//! position by its offset in the term's word written with unit exponents.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffError, Coefficient, LaurentPoly, RingSpec};
use crate::freealg::{AlgebraElement, Alphabet, Gen, Word, WordError};

pub type Element = AlgebraElement<LaurentPoly>;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum RewriteError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("step {step}: no term {term} in {element}")]
    NoTerm {
        step: usize,
        term: usize,
        element: String,
    },
    #[error("step {step}: unknown rule {rule:?}")]
    UnknownRule { step: usize, rule: String },
    #[error("step {step}: rule {rule} has a multi-term side and cannot be applied backwards")]
    NotReversible { step: usize, rule: String },
    #[error("step {step}: rule {rule} {dir} expects {expected:?} at position {pos} of term {term} ({word}), found {found:?}")]
    Mismatch {
        step: usize,
        term: usize,
        pos: usize,
        rule: String,
        dir: Direction,
        word: String,
        expected: String,
        found: String,
    },
    #[error("step {step}: {source}")]
    Coeff { step: usize, source: CoeffError },
    #[error("trace ends at {reached} instead of {expected}; difference {diff}")]
    EndMismatch {
        reached: String,
        expected: String,
        diff: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Fwd,
    Bwd,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Fwd => "fwd",
            Direction::Bwd => "bwd",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub id: String,
    pub lhs: Word,
    pub rhs: Element,
}

impl RewriteRule {
    /// Word-to-word rules with unit coefficient.
    pub fn is_braid(&self) -> bool {
        self.rhs.len() == 1 && self.rhs.term_at(0).is_some_and(|(_, c)| c.is_one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub term: usize,
    pub pos: usize,
    pub rule: usize,
    pub dir: Direction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteTrace {
    pub ring: Arc<RingSpec>,
    pub alphabet: Alphabet,
    pub rules: Vec<RewriteRule>,
    pub start: Element,
    pub steps: Vec<RewriteStep>,
    pub end: Element,
    /// Comment lines of the source file.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCertificate {
    pub start: String,
    pub end: String,
    pub steps: usize,
    pub rules: Vec<String>,
}

fn units_text(alphabet: &Alphabet, units: &[(Gen, i32)]) -> String {
    alphabet.format(&Word::from_unit_letters(units))
}

/// Applies `step` of a trace to `x`; `index` only labels errors.
pub fn apply_rule(
    x: &Element,
    rules: &[RewriteRule],
    alphabet: &Alphabet,
    step: &RewriteStep,
    index: usize,
) -> Result<Element, RewriteError> {
    let rule = rules
        .get(step.rule)
        .ok_or_else(|| RewriteError::UnknownRule {
            step: index,
            rule: step.rule.to_string(),
        })?;
    let (word, coeff) = x.term_at(step.term).ok_or_else(|| RewriteError::NoTerm {
        step: index,
        term: step.term,
        element: x.display(alphabet).to_string(),
    })?;
    let (pattern, replacement, coeff) = match step.dir {
        Direction::Fwd => (rule.lhs.unit_letters(), rule.rhs.clone(), coeff.clone()),
        Direction::Bwd => {
            if rule.rhs.len() != 1 {
                return Err(RewriteError::NotReversible {
                    step: index,
                    rule: rule.id.clone(),
                });
            }
            let (u, m) = rule.rhs.term_at(0).expect("one term");
            let q = coeff.div_by_term(m).map_err(|source| RewriteError::Coeff {
                step: index,
                source,
            })?;
            (
                u.unit_letters(),
                Element::from_word(x.context(), rule.lhs.clone()),
                q,
            )
        }
    };
    let units = word.unit_letters();
    let found = units.get(step.pos..step.pos + pattern.len());
    if found != Some(&pattern[..]) {
        let tail = &units[step.pos.min(units.len())..];
        return Err(RewriteError::Mismatch {
            step: index,
            term: step.term,
            pos: step.pos,
            rule: rule.id.clone(),
            dir: step.dir,
            word: alphabet.format(word),
            expected: units_text(alphabet, &pattern),
            found: units_text(alphabet, &tail[..pattern.len().min(tail.len())]),
        });
    }
    let prefix = Word::from_unit_letters(&units[..step.pos]);
    let suffix = Word::from_unit_letters(&units[step.pos + pattern.len()..]);
    let mut out = x.clone();
    out.add_term(word.clone(), x.term_at(step.term).expect("present").1.neg());
    for (w, c) in replacement.terms() {
        out.add_term(prefix.mul(w).mul(&suffix), c.mul(&coeff));
    }
    Ok(out)
}

/// Every intermediate element of the trace, starting with `start`.
pub fn replay(tr: &RewriteTrace) -> Result<Vec<Element>, RewriteError> {
    let mut states = vec![tr.start.clone()];
    for (i, step) in tr.steps.iter().enumerate() {
        let next = apply_rule(
            states.last().expect("nonempty"),
            &tr.rules,
            &tr.alphabet,
            step,
            i,
        )?;
        states.push(next);
    }
    Ok(states)
}

/// Succeeds iff every step is legal and the last element equals `end`.
pub fn check_trace(tr: &RewriteTrace) -> Result<TraceCertificate, RewriteError> {
    let reached = replay(tr)?.pop().expect("nonempty");
    if reached != tr.end {
        return Err(RewriteError::EndMismatch {
            reached: reached.display(&tr.alphabet).to_string(),
            expected: tr.end.display(&tr.alphabet).to_string(),
            diff: reached.sub(&tr.end).display(&tr.alphabet).to_string(),
        });
    }
    Ok(TraceCertificate {
        start: tr.start.display(&tr.alphabet).to_string(),
        end: tr.end.display(&tr.alphabet).to_string(),
        steps: tr.steps.len(),
        rules: tr.rules.iter().map(|r| r.id.clone()).collect(),
    })
}

fn word_err(line: usize) -> impl Fn(WordError) -> RewriteError {
    move |e| RewriteError::Parse {
        line,
        msg: e.to_string(),
    }
}

impl RewriteTrace {
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        let bad = |line: usize, msg: String| RewriteError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut notes = Vec::new();
        let mut content = Vec::new();
        for (n, l) in lines.by_ref() {
            match l.strip_prefix('#') {
                Some(c) => notes.push(c.trim().to_owned()),
                None => content.push((n, l)),
            }
        }
        let mut it = content.into_iter();
        let (n, header) = it.next().ok_or_else(|| bad(0, "empty trace".into()))?;
        if header != format!("hecke-trace {FORMAT_VERSION}") {
            return Err(bad(
                n,
                format!("expected header `hecke-trace {FORMAT_VERSION}`, got {header:?}"),
            ));
        }
        let mut field = |key: &str| -> Result<(usize, String), RewriteError> {
            let (n, l) = it
                .next()
                .ok_or_else(|| bad(0, format!("missing `{key}` line")))?;
            let rest = l
                .strip_prefix(key)
                .filter(|r| r.is_empty() || r.starts_with(' '))
                .ok_or_else(|| bad(n, format!("expected `{key}`")))?;
            Ok((n, rest.trim().to_owned()))
        };
        let (_, ring) = field("ring")?;
        let (n_inv, invertible) = field("invertible")?;
        let (n_gen, generators) = field("generators")?;
        let vars: Vec<&str> = ring.split_whitespace().collect();
        let inv: Vec<&str> = invertible.split_whitespace().collect();
        let ring = RingSpec::new(&vars, &inv).map_err(|e| bad(n_inv, e.to_string()))?;
        let gens: Vec<&str> = generators.split_whitespace().collect();
        let alphabet = Alphabet::new(&gens).map_err(word_err(n_gen))?;
        let elem = |n: usize, s: &str| Element::parse(&ring, &alphabet, s).map_err(word_err(n));

        let mut rules: Vec<RewriteRule> = Vec::new();
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        for (n, l) in it {
            if let Some(rest) = l.strip_prefix("rule ") {
                let (id, body) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(n, "expected `rule id: lhs = rhs`".into()))?;
                let (lhs, rhs) = body
                    .split_once('=')
                    .ok_or_else(|| bad(n, "expected `lhs = rhs`".into()))?;
                let id = id.trim().to_owned();
                if rules.iter().any(|r| r.id == id) {
                    return Err(bad(n, format!("duplicate rule {id:?}")));
                }
                let lhs = alphabet.parse(lhs.trim()).map_err(word_err(n))?;
                rules.push(RewriteRule {
                    id,
                    lhs,
                    rhs: elem(n, rhs)?,
                });
            } else if let Some(rest) = l.strip_prefix("start ") {
                start = Some(elem(n, rest)?);
            } else if let Some(rest) = l.strip_prefix("end ") {
                end = Some(elem(n, rest)?);
            } else if l.starts_with("term=") {
                steps.push(parse_step(l, &rules).map_err(|m| bad(n, m))?);
            } else {
                return Err(bad(n, format!("unrecognized line {l:?}")));
            }
        }
        Ok(RewriteTrace {
            ring,
            alphabet,
            rules,
            start: start.ok_or_else(|| bad(0, "missing `start`".into()))?,
            steps,
            end: end.ok_or_else(|| bad(0, "missing `end`".into()))?,
            notes,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out.push_str(&format!("hecke-trace {FORMAT_VERSION}\n"));
        out.push_str(&format!("ring {}\n", self.ring.variables().join(" ")));
        out.push_str(&format!(
            "invertible {}\n",
            self.ring.invertible_names().collect::<Vec<_>>().join(" ")
        ));
        out.push_str(&format!("generators {}\n", self.alphabet.names().join(" ")));
        for r in &self.rules {
            out.push_str(&format!(
                "rule {}: {} = {}\n",
                r.id,
                self.alphabet.format(&r.lhs),
                r.rhs.display(&self.alphabet)
            ));
        }
        out.push_str(&format!("start {}\n", self.start.display(&self.alphabet)));
        out.push_str(&format!("end {}\n", self.end.display(&self.alphabet)));
        for s in &self.steps {
            out.push_str(&format!(
                "term={} pos={} rule={} dir={}\n",
                s.term, s.pos, self.rules[s.rule].id, s.dir
            ));
        }
        out
    }

    pub fn load(path: &std::path::Path) -> Result<Self, RewriteError> {
        let text = std::fs::read_to_string(path).map_err(|e| RewriteError::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }
}

fn parse_step(line: &str, rules: &[RewriteRule]) -> Result<RewriteStep, String> {
    let (mut term, mut pos, mut rule, mut dir) = (None, None, None, None);
    for part in line.split_whitespace() {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("bad field {part:?}"))?;
        let num = || v.parse::<usize>().map_err(|_| format!("bad number {v:?}"));
        match k {
            "term" => term = Some(num()?),
            "pos" => pos = Some(num()?),
            "rule" => {
                rule = Some(
                    rules
                        .iter()
                        .position(|r| r.id == v)
                        .ok_or_else(|| format!("unknown rule {v:?}"))?,
                )
            }
            "dir" => {
                dir = Some(match v {
                    "fwd" => Direction::Fwd,
                    "bwd" => Direction::Bwd,
                    _ => return Err(format!("bad direction {v:?}")),
                })
            }
            _ => return Err(format!("unknown field {k:?}")),
        }
    }
    Ok(RewriteStep {
        term: term.ok_or("missing term")?,
        pos: pos.ok_or("missing pos")?,
        rule: rule.ok_or("missing rule")?,
        dir: dir.ok_or("missing dir")?,
    })
}

/// Shipped traces, by name.
pub fn trace_catalogue() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "g4-torsion",
            include_str!("../../data/traces/g4-torsion.trace"),
        ),
        (
            "g26-central-s1",
            include_str!("../../data/traces/g26-central-s1.trace"),
        ),
        (
            "g26-central-s2",
            include_str!("../../data/traces/g26-central-s2.trace"),
        ),
        (
            "g26-central-t",
            include_str!("../../data/traces/g26-central-t.trace"),
        ),
        (
            "g26-central-form",
            include_str!("../../data/traces/g26-central-form.trace"),
        ),
    ]
}

pub fn shipped_trace(name: &str) -> Option<RewriteTrace> {
    trace_catalogue()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| RewriteTrace::parse(text).expect("shipped traces parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid_trace(start: &str, end: &str, steps: &str) -> RewriteTrace {
        RewriteTrace::parse(&format!(
            "hecke-trace 1\nring\ninvertible\ngenerators s2 t s1\nrule ts2: t s2 t s2 = s2 t s2 t\nrule ts1: t s1 = s1 t\nstart {start}\nend {end}\n{steps}"
        ))
        .unwrap()
    }

    #[test]
    fn single_braid_step() {
        let tr = braid_trace("t s2 t s2", "s2 t s2 t", "term=0 pos=0 rule=ts2 dir=fwd");
        check_trace(&tr).unwrap();
        let tr = braid_trace("s2 t s1 s2", "s2 s1 t s2", "term=0 pos=1 rule=ts1 dir=fwd");
        check_trace(&tr).unwrap();
    }

    #[test]
    fn mismatch_reports_the_step() {
        let tr = braid_trace("t s2 t s2", "s2 t s2 t", "term=0 pos=1 rule=ts2 dir=fwd");
        assert!(matches!(
            check_trace(&tr),
            Err(RewriteError::Mismatch {
                step: 0,
                pos: 1,
                ..
            })
        ));
        let tr = braid_trace("t s2 t s2", "t s2 t s2", "term=1 pos=0 rule=ts2 dir=fwd");
        assert!(matches!(
            check_trace(&tr),
            Err(RewriteError::NoTerm {
                step: 0,
                term: 1,
                ..
            })
        ));
    }

    #[test]
    fn scalar_rule_both_ways() {
        let text = "hecke-trace 1\nring c\ninvertible\ngenerators s1 s2\nrule s2cube: s2^3 = [c] 1\n\
                    start [c] s1 s1\nend [c] s1 s1\nterm=0 pos=1 rule=s2cube dir=bwd\nterm=0 pos=1 rule=s2cube dir=fwd\n";
        let tr = RewriteTrace::parse(text).unwrap();
        let states = replay(&tr).unwrap();
        assert_eq!(states[1].display(&tr.alphabet).to_string(), "s1 s2^3 s1");
        check_trace(&tr).unwrap();
        // c does not divide 1
        let text = text
            .replace("start [c] s1 s1", "start s1 s1")
            .replace("end [c] s1 s1", "end s1 s1");
        let tr = RewriteTrace::parse(&text).unwrap();
        assert!(matches!(
            check_trace(&tr),
            Err(RewriteError::Coeff { step: 0, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        for (name, text) in trace_catalogue() {
            let tr = RewriteTrace::parse(text).unwrap();
            assert_eq!(RewriteTrace::parse(&tr.to_text()).unwrap(), tr, "{name}");
        }
    }
}
