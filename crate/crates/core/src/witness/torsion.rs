use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::enumerate::{enumerate, Budget};
use crate::presentations::catalogue;
use crate::rewrite::{check_trace, shipped_trace, Element, RewriteError, TraceCertificate};

use super::{check_relations, witness_module, RelationCertificate, Vector, WitnessError};

/// `c·((s1^2 s2^2)^6 − c^8) = 0` at `a = b = 0`, while `(s1^2 s2^2)^6 ≠ c^8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub element: String,
    pub trace: TraceCertificate,
    pub module_relations: RelationCertificate,
    /// `(S1^2 S2^2)^6 · w[1]` in the nil module at `c = 0`.
    pub module_image: String,
    /// `(s1^2 s2^2)^6` is the identity in the `G4` group algebra.
    pub group_identity: bool,
}

const BOUND: usize = 16;

pub fn torsion_witness() -> Result<TorsionCertificate, WitnessError> {
    let tr = shipped_trace("g4-torsion")
        .ok_or_else(|| WitnessError::UnknownFamily("trace g4-torsion".into()))?;
    let word = tr.alphabet.parse("s1^2 s2^2").expect("valid word").pow(6);
    let c = |k: i32| LaurentPoly::var(&tr.ring, "c", k).expect("ring has c");
    let start = Element::term(&tr.ring, c(1), word.clone());
    let end = Element::term(&tr.ring, c(9), Default::default());
    if tr.start != start || tr.end != end {
        return Err(RewriteError::EndMismatch {
            reached: format!(
                "{} .. {}",
                tr.start.display(&tr.alphabet),
                tr.end.display(&tr.alphabet)
            ),
            expected: format!(
                "{} .. {}",
                start.display(&tr.alphabet),
                end.display(&tr.alphabet)
            ),
            diff: "trace endpoints".into(),
        }
        .into());
    }
    let trace = check_trace(&tr)?;

    let m = witness_module("G4-nil")?;
    let module_relations = check_relations(&m, &m.load_presentation()?, BOUND)?;
    let w1 = Vector::basis(m.symbol("w", 1)?);
    let image = m.act_by(
        &m.generators
            .parse(&tr.alphabet.format(&word))
            .expect("same generators"),
        &w1,
    )?;
    if image != Vector::basis(m.symbol("w", 13)?) {
        return Err(WitnessError::Orbit {
            iteration: 6,
            vector: m.display(&image).to_string(),
        });
    }

    let g4 = catalogue("G4")?;
    let r = enumerate(&g4, &g4.group_specialization()?, None, Budget::default())?;
    let group_identity = r
        .eval_word(
            &g4.alphabet
                .parse(&tr.alphabet.format(&word))
                .expect("same generators"),
        )
        .is_identity();

    Ok(TorsionCertificate {
        element: format!("{} - c^8", tr.alphabet.format(&word)),
        trace,
        module_relations,
        module_image: m.display(&image).to_string(),
        group_identity,
    })
}
