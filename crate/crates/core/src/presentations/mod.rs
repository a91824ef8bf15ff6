//! Finitely presented algebras: braid relations plus one monic order
//! relation per generator, read from a small structured-text format.
//!
//! ```text
//! # comment
//! name G4
//! ring a b c
//! invertible c
//! generators s1 s2
//! flag non_unital_constant        (optional)
//! braid s1 s2 s1 = s2 s1 s2
//! order s1 c, b, a                (a_0, …, a_{n−1}: s1^3 = a s1^2 + b s1 + c)
//! ```

mod catalogue;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{CoeffError, LaurentPoly, RingSpec, Specialization};
use crate::freealg::{AlgebraElement, Alphabet, Gen, OrderRule, WindowPolicy, Word, WordError};

pub use catalogue::{catalogue, catalogue_names, CATALOGUE_HELP};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown presentation {0:?}")]
    UnknownName(String),
    #[error("G(d,1,2) needs d >= 2, got {0}")]
    BadRank(i64),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("braid relation {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("generator {0} has no order relation")]
    MissingOrder(String),
    #[error("order relation of {0} has a non-unit constant term")]
    NonUnitConstant(String),
    #[error(
        "presentation {0} is flagged non_unital_constant; windows and enumeration are disabled"
    )]
    NonUnital(String),
    #[error("cannot derive the group specialization: {0}")]
    NoGroupSpecialization(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `gen^n = coeffs[n−1] gen^{n−1} + … + coeffs[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderRelation {
    pub gen: Gen,
    pub coeffs: Vec<LaurentPoly>,
}

impl OrderRelation {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub ring: Arc<RingSpec>,
    pub braid_relations: Vec<(Word, Word)>,
    /// Indexed by generator.
    pub order_relations: Vec<OrderRelation>,
    /// Some order relation has a constant term that is not a unit (0-Hecke
    /// style); such presentations are never enumerated.
    pub non_unital_constant: bool,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut name = None;
        let mut vars: Vec<String> = Vec::new();
        let mut invertible: Vec<String> = Vec::new();
        let mut alphabet = None;
        let mut non_unital = false;
        let mut braid_lines = Vec::new();
        let mut order_lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let syntax = |msg: &str| PresentationError::Syntax {
                line: lineno,
                msg: msg.to_owned(),
            };
            match key {
                "name" => name = Some(rest.to_owned()),
                "ring" => vars = rest.split_whitespace().map(str::to_owned).collect(),
                "invertible" => invertible = rest.split_whitespace().map(str::to_owned).collect(),
                "generators" => {
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    alphabet = Some(Alphabet::new(&names)?);
                }
                "flag" => match rest {
                    "non_unital_constant" => non_unital = true,
                    _ => return Err(syntax("unknown flag")),
                },
                "braid" => braid_lines.push((lineno, rest.to_owned())),
                "order" => order_lines.push((lineno, rest.to_owned())),
                _ => return Err(syntax(&format!("unknown directive {key:?}"))),
            }
        }
        let name = name.ok_or(PresentationError::Syntax {
            line: 0,
            msg: "missing name".into(),
        })?;
        let alphabet = alphabet.ok_or(PresentationError::Syntax {
            line: 0,
            msg: "missing generators".into(),
        })?;
        let ring = RingSpec::new(&vars, &invertible)?;

        let mut braid_relations = Vec::new();
        for (lineno, line) in braid_lines {
            let (l, r) = line.split_once('=').ok_or(PresentationError::Syntax {
                line: lineno,
                msg: "braid relation needs '='".into(),
            })?;
            let (l, r) = (alphabet.parse(l)?, alphabet.parse(r)?);
            if !l.is_positive() || !r.is_positive() || l.len() != r.len() {
                return Err(PresentationError::Inhomogeneous(line));
            }
            braid_relations.push((l, r));
        }

        let mut orders: BTreeMap<Gen, OrderRelation> = BTreeMap::new();
        for (lineno, line) in order_lines {
            let (g, coeffs) =
                line.split_once(char::is_whitespace)
                    .ok_or(PresentationError::Syntax {
                        line: lineno,
                        msg: "order needs coefficients".into(),
                    })?;
            let gen = alphabet.gen(g)?;
            let coeffs = coeffs
                .split(',')
                .map(|c| LaurentPoly::parse(&ring, c.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.is_empty() {
                return Err(PresentationError::Syntax {
                    line: lineno,
                    msg: "empty coefficient list".into(),
                });
            }
            orders.insert(gen, OrderRelation { gen, coeffs });
        }
        let order_relations = (0..alphabet.len() as Gen)
            .map(|g| {
                orders
                    .remove(&g)
                    .ok_or_else(|| PresentationError::MissingOrder(alphabet.name(g).to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let p = Presentation {
            name,
            alphabet,
            ring,
            braid_relations,
            order_relations,
            non_unital_constant: non_unital,
        };
        if !p.non_unital_constant {
            for o in &p.order_relations {
                if o.coeffs[0].unit_inverse().is_none() {
                    return Err(PresentationError::NonUnitConstant(
                        p.alphabet.name(o.gen).to_owned(),
                    ));
                }
            }
        }
        Ok(p)
    }

    /// Serializes back to the text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("name {}\n", self.name);
        s += &format!("ring {}\n", self.ring.variables().join(" "));
        let inv: Vec<&str> = self.ring.invertible_names().collect();
        if !inv.is_empty() {
            s += &format!("invertible {}\n", inv.join(" "));
        }
        s += &format!("generators {}\n", self.alphabet.names().join(" "));
        if self.non_unital_constant {
            s += "flag non_unital_constant\n";
        }
        for (l, r) in &self.braid_relations {
            s += &format!(
                "braid {} = {}\n",
                self.alphabet.format(l),
                self.alphabet.format(r)
            );
        }
        for o in &self.order_relations {
            let cs: Vec<String> = o.coeffs.iter().map(|c| c.to_string()).collect();
            s += &format!("order {} {}\n", self.alphabet.name(o.gen), cs.join(", "));
        }
        s
    }

    fn ensure_unital(&self) -> Result<(), PresentationError> {
        if self.non_unital_constant {
            Err(PresentationError::NonUnital(self.name.clone()))
        } else {
            Ok(())
        }
    }

    /// Window policy over the ring of definition.
    pub fn window_policy(&self) -> Result<WindowPolicy<LaurentPoly>, PresentationError> {
        self.ensure_unital()?;
        let rules = self
            .order_relations
            .iter()
            .map(|o| {
                let inv = o.coeffs[0].unit_inverse().expect("checked at parse time");
                Some(OrderRule {
                    coeffs: o.coeffs.clone(),
                    inv_constant: inv,
                })
            })
            .collect();
        Ok(WindowPolicy::new(rules))
    }

    /// Window policy after specializing the coefficients to rationals.
    pub fn specialized_policy(
        &self,
        spec: &Specialization,
    ) -> Result<WindowPolicy<BigRational>, PresentationError> {
        self.ensure_unital()?;
        let rules = self
            .order_relations
            .iter()
            .map(|o| {
                let coeffs: Vec<BigRational> =
                    o.coeffs.iter().map(|c| c.specialize(spec)).collect();
                if coeffs[0].is_zero() {
                    return Err(PresentationError::NonUnitConstant(
                        self.alphabet.name(o.gen).to_owned(),
                    ));
                }
                let inv = coeffs[0].recip();
                Ok(Some(OrderRule {
                    coeffs,
                    inv_constant: inv,
                }))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WindowPolicy::new(rules))
    }

    /// The specialization turning every order relation into `g^n = 1`:
    /// `a_0 ↦ 1`, `a_i ↦ 0` for `i > 0`.
    pub fn group_specialization(&self) -> Result<Specialization, PresentationError> {
        self.ensure_unital()?;
        let mut map: BTreeMap<String, BigRational> = BTreeMap::new();
        for o in &self.order_relations {
            for (i, c) in o.coeffs.iter().enumerate() {
                let target = if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                match single_variable(c) {
                    Some(v) => {
                        if let Some(prev) = map.insert(v.clone(), target.clone()) {
                            if prev != target {
                                return Err(PresentationError::NoGroupSpecialization(format!(
                                    "variable {v} used inconsistently"
                                )));
                            }
                        }
                    }
                    None => {
                        let value = c.as_constant().map(BigRational::from_integer);
                        if value != Some(target) {
                            return Err(PresentationError::NoGroupSpecialization(format!(
                                "coefficient {c}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Specialization::from_map(&self.ring, &map)?)
    }

    /// Relators as elements of the free algebra over the ring: `lhs − rhs`
    /// for braid relations and `g^n − Σ a_i g^i` for order relations.
    pub fn relators(&self) -> Vec<AlgebraElement<LaurentPoly>> {
        let mut out = Vec::new();
        let one = LaurentPoly::one(&self.ring);
        for (l, r) in &self.braid_relations {
            let mut x = AlgebraElement::zero(&self.ring);
            x.add_term(l.clone(), one.clone());
            x.add_term(r.clone(), -&one);
            out.push(x);
        }
        for o in &self.order_relations {
            let mut x = AlgebraElement::zero(&self.ring);
            x.add_term(Word::power(o.gen, o.order() as i32), one.clone());
            for (i, c) in o.coeffs.iter().enumerate() {
                x.add_term(Word::power(o.gen, i as i32), -c);
            }
            out.push(x);
        }
        out
    }
}

fn single_variable(p: &LaurentPoly) -> Option<String> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.terms().next().unwrap();
    if !c.is_one() {
        return None;
    }
    let mut nonzero = m.0.iter().enumerate().filter(|(_, &e)| e != 0);
    match (nonzero.next(), nonzero.next()) {
        (Some((i, 1)), None) => Some(p.ring().variables()[i].clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors() {
        let base = "name X\nring a\ninvertible a\ngenerators s\n";
        assert!(matches!(
            Presentation::parse(&format!("{base}order s a, 0\nbraid s = s s\n")),
            Err(PresentationError::Inhomogeneous(_))
        ));
        assert!(matches!(
            Presentation::parse(base),
            Err(PresentationError::MissingOrder(_))
        ));
        assert!(matches!(
            Presentation::parse("name X\nring a\ngenerators s\norder s a, 1\n"),
            Err(PresentationError::NonUnitConstant(_))
        ));
        assert!(matches!(
            Presentation::parse(&format!("{base}frobnicate\n")),
            Err(PresentationError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        for name in catalogue_names() {
            let p = catalogue(name).unwrap();
            assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p, "{name}");
        }
    }

    #[test]
    fn relators_of_g4() {
        let p = catalogue("G4").unwrap();
        let rels = p.relators();
        assert_eq!(rels.len(), 3);
        assert_eq!(
            rels[1].display(&p.alphabet).to_string(),
            "[-c] 1 + [-b] s1 + [-a] s1^2 + s1^3"
        );
    }
}
