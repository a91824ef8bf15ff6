//! Vector enumeration of the regular representation of a finitely presented
//! algebra at a rational specialization, with independent verification of
//! the resulting matrices and rank certificates for spanning families.

pub mod candidate;
pub mod certify;
mod engine;
pub mod io;
pub mod modular;
pub mod sparse;

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coeff::{CoeffError, Specialization};
use crate::freealg::{Alphabet, Word};
use crate::presentations::{Presentation, PresentationError};

pub use candidate::{build_candidate_1296, certify_candidate, CandidateList};
pub use certify::{certify_spanning, RankMethod, SpanningCertificate};
pub use engine::{Budget, EnumerationState, EnumerationStats};
pub use io::{Checkpoint, ResultFile};
pub use sparse::{IntegralMatrix, SparseMatrix, SparseVec, Triplet};

use engine::Relator;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 26;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("budget exceeded: live dimension {live_dimension}, frontier {frontier}")]
    BudgetExceeded {
        live_dimension: usize,
        frontier: usize,
    },
    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),
    #[error("verification failed: {0}")]
    Falsified(String),
    #[error("malformed result: {0}")]
    Malformed(String),
    #[error("rank deficit: rank {rank} of {dimension}{}", first_dependent.as_ref().map(|w| format!(", first dependent word {w}")).unwrap_or_default())]
    RankDeficit {
        rank: usize,
        dimension: usize,
        first_dependent: Option<String>,
    },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A closed enumeration: a word basis of the regular module and the action
/// matrices of all generators, at one specialization.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationResult {
    pub presentation: String,
    pub alphabet: Alphabet,
    pub specialization: Specialization,
    pub seed: Option<u64>,
    pub basis: Vec<Word>,
    /// Row `i` of `matrices[g]` is `e_i · g`.
    pub matrices: Vec<SparseMatrix>,
    /// Specialized order relations `g^n = Σ a_i g^i`, coefficients `a_0…a_{n−1}`.
    pub order_coeffs: Vec<Vec<BigRational>>,
    /// Specialized braid relations.
    pub braid_relations: Vec<(Word, Word)>,
    pub stats: EnumerationStats,
    pub elapsed_ms: u128,
}

impl EnumerationResult {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `v · M_g^{-1}` via `M^{-1} = a_0^{-1}(M^{n−1} − a_{n−1}M^{n−2} − … − a_1)`.
    pub fn vec_mul_inverse(&self, v: &[(u32, BigRational)], g: usize) -> SparseVec {
        Action::new(self).vec_mul_inverse(v, g)
    }

    /// `v · M_w`.
    pub fn vec_mul_word(&self, v: &[(u32, BigRational)], w: &Word) -> SparseVec {
        Action::new(self).vec_mul_word(v, w)
    }

    /// Coordinates of the image of `w` in the basis: `e_ε · M_w`.
    pub fn coordinates(&self, w: &Word) -> SparseVec {
        let one = self
            .basis
            .iter()
            .position(Word::is_identity)
            .expect("basis contains the identity");
        self.vec_mul_word(&sparse::unit(one as u32), w)
    }

    /// The matrix of a word (identity for the empty word).
    pub fn eval_word(&self, w: &Word) -> SparseMatrix {
        let dim = self.dimension();
        let action = Action::new(self);
        SparseMatrix {
            dim,
            rows: (0..dim as u32)
                .into_par_iter()
                .map(|i| action.vec_mul_word(&sparse::unit(i), w))
                .collect(),
        }
    }
}

/// Generator matrices in integral form, for chains of products.
struct Action<'a> {
    matrices: Vec<IntegralMatrix>,
    order_coeffs: &'a [Vec<BigRational>],
}

impl<'a> Action<'a> {
    fn new(r: &'a EnumerationResult) -> Self {
        Action {
            matrices: r.matrices.iter().map(IntegralMatrix::new).collect(),
            order_coeffs: &r.order_coeffs,
        }
    }

    fn vec_mul_inverse(&self, v: &[(u32, BigRational)], g: usize) -> SparseVec {
        let coeffs = &self.order_coeffs[g];
        let n = coeffs.len();
        let mut powers = vec![v.to_vec()];
        for _ in 1..n {
            let next = self.matrices[g].vec_mul(powers.last().unwrap());
            powers.push(next);
        }
        let mut out = powers[n - 1].clone();
        for (i, a) in coeffs.iter().enumerate().skip(1) {
            out = sparse::add_scaled(&out, &powers[i - 1], &-a);
        }
        sparse::scale(&out, &coeffs[0].recip())
    }

    fn vec_mul_word(&self, v: &[(u32, BigRational)], w: &Word) -> SparseVec {
        let mut acc = v.to_vec();
        for (g, e) in w.unit_letters() {
            acc = if e > 0 {
                self.matrices[g as usize].vec_mul(&acc)
            } else {
                self.vec_mul_inverse(&acc, g as usize)
            };
        }
        acc
    }
}

fn relators(p: &Presentation, spec: &Specialization) -> Vec<Relator> {
    p.relators()
        .iter()
        .map(|r| Relator {
            terms: r
                .terms()
                .map(|(w, c)| {
                    (
                        c.specialize(spec),
                        w.unit_letters().into_iter().map(|(g, _)| g).collect(),
                    )
                })
                .collect(),
        })
        .collect()
}

fn check_specialization(p: &Presentation, spec: &Specialization) -> Result<(), EnumerationError> {
    if spec.ring().as_ref() != p.ring.as_ref() {
        return Err(EnumerationError::InvalidSpecialization(format!(
            "specialization over {} for presentation over {}",
            spec.ring(),
            p.ring
        )));
    }
    for o in &p.order_relations {
        if o.coeffs[0].specialize(spec).is_zero() {
            return Err(EnumerationError::InvalidSpecialization(format!(
                "constant term of the order relation of {} vanishes",
                p.alphabet.name(o.gen)
            )));
        }
    }
    Ok(())
}

/// Starts a fresh enumeration state.
pub fn start(
    p: &Presentation,
    spec: &Specialization,
    budget: Budget,
) -> Result<EnumerationState, EnumerationError> {
    check_specialization(p, spec)?;
    let policy = p.specialized_policy(spec)?;
    Ok(EnumerationState::new(policy, budget))
}

/// Runs `state` to closure. `on_progress` is called after every processed
/// word (checkpointing hooks in here).
pub fn resume(
    p: &Presentation,
    spec: &Specialization,
    seed: Option<u64>,
    mut state: EnumerationState,
    on_progress: impl FnMut(&EnumerationState) -> Result<(), EnumerationError>,
) -> Result<EnumerationResult, EnumerationError> {
    let started = Instant::now();
    let rels = relators(p, spec);
    state.run(&rels, on_progress)?;
    let (basis, rows) = state.finish();
    let dim = basis.len();
    let matrices = rows
        .into_iter()
        .map(|rows| SparseMatrix { dim, rows })
        .collect();
    let order_coeffs = p
        .order_relations
        .iter()
        .map(|o| o.coeffs.iter().map(|c| c.specialize(spec)).collect())
        .collect();
    Ok(EnumerationResult {
        presentation: p.name.clone(),
        alphabet: p.alphabet.clone(),
        specialization: spec.clone(),
        seed,
        basis,
        matrices,
        order_coeffs,
        braid_relations: p.braid_relations.clone(),
        stats: state.stats.clone(),
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Enumerates the regular module of `p` at `spec`.
pub fn enumerate(
    p: &Presentation,
    spec: &Specialization,
    seed: Option<u64>,
    budget: Budget,
) -> Result<EnumerationResult, EnumerationError> {
    let state = start(p, spec, budget)?;
    resume(p, spec, seed, state, |_| Ok(()))
}

/// Re-checks, from the matrices alone, that every braid relation holds,
/// every order relation annihilates its generator, and every generator is
/// invertible.
pub fn verify_result(r: &EnumerationResult) -> Result<(), EnumerationError> {
    let dim = r.dimension();
    let fail = |msg: String| Err(EnumerationError::Falsified(msg));
    if r.matrices.len() != r.alphabet.len() || r.order_coeffs.len() != r.alphabet.len() {
        return Err(EnumerationError::Malformed(
            "generator count mismatch".into(),
        ));
    }
    if r.matrices
        .iter()
        .any(|m| m.dim != dim || m.rows.len() != dim)
    {
        return Err(EnumerationError::Malformed(
            "matrix dimension mismatch".into(),
        ));
    }
    let id = SparseMatrix::identity(dim);
    for (l, rgt) in &r.braid_relations {
        let (ml, mr) = (word_matrix(r, l), word_matrix(r, rgt));
        if ml != mr {
            return fail(format!(
                "braid relation {} = {} does not hold",
                r.alphabet.format(l),
                r.alphabet.format(rgt)
            ));
        }
    }
    for (g, coeffs) in r.order_coeffs.iter().enumerate() {
        let m = &r.matrices[g];
        let n = coeffs.len();
        let mut powers = vec![id.clone()];
        for _ in 0..n {
            let next = powers.last().unwrap().mul(m);
            powers.push(next);
        }
        let mut residual = powers[n].clone();
        for (i, a) in coeffs.iter().enumerate() {
            residual = residual.add_scaled(&powers[i], &-a);
        }
        if residual.nnz() != 0 {
            return fail(format!(
                "order relation of {} does not annihilate its matrix",
                r.alphabet.name(g as u8)
            ));
        }
        if coeffs[0].is_zero() {
            return fail(format!(
                "generator {} is not invertible",
                r.alphabet.name(g as u8)
            ));
        }
        // explicit inverse from the order relation
        let mut inv = powers[n - 1].clone();
        for (i, a) in coeffs.iter().enumerate().skip(1) {
            inv = inv.add_scaled(&powers[i - 1], &-a);
        }
        let inv = inv.scale(&coeffs[0].recip());
        if !m.mul(&inv).is_identity() {
            return fail(format!(
                "generator {} is not invertible",
                r.alphabet.name(g as u8)
            ));
        }
    }
    Ok(())
}

fn word_matrix(r: &EnumerationResult, w: &Word) -> SparseMatrix {
    let mut m = SparseMatrix::identity(r.dimension());
    for (g, e) in w.unit_letters() {
        debug_assert!(e > 0);
        m = m.mul(&r.matrices[g as usize]);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalogue;
    use num_traits::One;

    #[test]
    fn g4_group_algebra() {
        let p = catalogue("G4").unwrap();
        let s = p.group_specialization().unwrap();
        let r = enumerate(&p, &s, None, Budget::default()).unwrap();
        assert_eq!(r.dimension(), 24);
        verify_result(&r).unwrap();
    }

    #[test]
    fn g4_random() {
        let p = catalogue("G4").unwrap();
        for seed in 0..5 {
            let s = Specialization::random(&p.ring, seed);
            let r = enumerate(&p, &s, Some(seed), Budget::default()).unwrap();
            assert_eq!(r.dimension(), 24, "seed {seed}");
            verify_result(&r).unwrap();
        }
    }

    #[test]
    fn z2_group_algebra() {
        let p =
            Presentation::parse("name Z2\nring d e\ninvertible e\ngenerators t\norder t e, d\n")
                .unwrap();
        let s = Specialization::parse(&p.ring, "d=0,e=1").unwrap();
        let r = enumerate(&p, &s, None, Budget::default()).unwrap();
        assert_eq!(r.dimension(), 2);
        let one = BigRational::one();
        assert_eq!(
            r.matrices[0].rows,
            vec![vec![(1, one.clone())], vec![(0, one)]]
        );
    }
}
