//! JSON forms of enumeration results and checkpoints.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff::{RingSpec, Specialization};
use crate::freealg::{Alphabet, Word};
use crate::presentations::Presentation;

use super::engine::{Budget, EnumerationState, EnumerationStats};
use super::sparse::{IntRow, SparseMatrix, Triplet};
use super::{EnumerationError, EnumerationResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    pub generator: String,
    /// Row-major `(row, column, value)`; row `i` is the image of basis vector `i`.
    pub entries: Vec<Triplet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub enumerate_ms: u128,
}

/// Self-contained serialized [`EnumerationResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub presentation: String,
    pub generators: Vec<String>,
    pub ring: Vec<String>,
    pub invertible: Vec<String>,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub matrices: Vec<GeneratorMatrix>,
    pub specialization: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// `lhs = rhs` per braid relation.
    pub braid_relations: Vec<String>,
    /// Per generator, the specialized `a_0 … a_{n−1}` of `g^n = Σ a_i g^i`.
    pub order_coeffs: Vec<Vec<String>>,
    pub closure: EnumerationStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn malformed(msg: impl Into<String>) -> EnumerationError {
    EnumerationError::Malformed(msg.into())
}

fn rational(text: &str) -> Result<BigRational, EnumerationError> {
    text.parse()
        .map_err(|_| malformed(format!("bad rational {text:?}")))
}

impl EnumerationResult {
    pub fn to_file(&self, with_timings: bool) -> ResultFile {
        let ring = self.specialization.ring();
        ResultFile {
            presentation: self.presentation.clone(),
            generators: self.alphabet.names().to_vec(),
            ring: ring.variables().to_vec(),
            invertible: ring.invertible_names().map(str::to_owned).collect(),
            dimension: self.dimension(),
            basis: self.basis.iter().map(|w| self.alphabet.format(w)).collect(),
            matrices: self
                .matrices
                .iter()
                .enumerate()
                .map(|(g, m)| GeneratorMatrix {
                    generator: self.alphabet.name(g as u8).to_owned(),
                    entries: m.to_triplets(),
                })
                .collect(),
            specialization: self.specialization.to_map(),
            seed: self.seed,
            braid_relations: self
                .braid_relations
                .iter()
                .map(|(l, r)| format!("{} = {}", self.alphabet.format(l), self.alphabet.format(r)))
                .collect(),
            order_coeffs: self
                .order_coeffs
                .iter()
                .map(|cs| cs.iter().map(|c| c.to_string()).collect())
                .collect(),
            closure: self.stats.clone(),
            timings: with_timings.then_some(Timings {
                enumerate_ms: self.elapsed_ms,
            }),
        }
    }

    pub fn from_file(f: &ResultFile) -> Result<Self, EnumerationError> {
        let alphabet = Alphabet::new(&f.generators).map_err(|e| malformed(e.to_string()))?;
        let ring = RingSpec::new(&f.ring, &f.invertible)?;
        let spec = Specialization::parse(
            &ring,
            &f.specialization
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(","),
        )?;
        let word = |s: &str| alphabet.parse(s).map_err(|e| malformed(e.to_string()));
        let basis = f
            .basis
            .iter()
            .map(|s| word(s))
            .collect::<Result<Vec<_>, _>>()?;
        if basis.len() != f.dimension {
            return Err(malformed("basis length differs from dimension"));
        }
        if f.matrices.len() != alphabet.len() {
            return Err(malformed("one matrix per generator expected"));
        }
        let matrices = f
            .matrices
            .iter()
            .map(|m| SparseMatrix::from_triplets(f.dimension, &m.entries).map_err(malformed))
            .collect::<Result<Vec<_>, _>>()?;
        let braid_relations = f
            .braid_relations
            .iter()
            .map(|line| {
                let (l, r) = line
                    .split_once('=')
                    .ok_or_else(|| malformed(format!("bad relation {line:?}")))?;
                Ok((word(l)?, word(r)?))
            })
            .collect::<Result<Vec<_>, EnumerationError>>()?;
        let order_coeffs = f
            .order_coeffs
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| rational(c))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EnumerationResult {
            presentation: f.presentation.clone(),
            alphabet,
            specialization: spec,
            seed: f.seed,
            basis,
            matrices,
            order_coeffs,
            braid_relations,
            stats: f.closure.clone(),
            elapsed_ms: f.timings.as_ref().map_or(0, |t| t.enumerate_ms),
        })
    }

    pub fn to_json(&self, with_timings: bool) -> String {
        serde_json::to_string_pretty(&self.to_file(with_timings)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, EnumerationError> {
        let f: ResultFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        Self::from_file(&f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RowJson {
    den: String,
    nums: Vec<(u32, String)>,
}

impl RowJson {
    fn from_row(r: &IntRow) -> Self {
        RowJson {
            den: r.den.to_string(),
            nums: r.nums.iter().map(|(j, n)| (*j, n.to_string())).collect(),
        }
    }

    fn to_row(&self) -> Result<IntRow, EnumerationError> {
        let int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| EnumerationError::Checkpoint(format!("bad integer {s:?}")))
        };
        let nums = self
            .nums
            .iter()
            .map(|(j, n)| Ok((*j, int(n)?)))
            .collect::<Result<Vec<_>, EnumerationError>>()?;
        Ok(IntRow {
            den: int(&self.den)?,
            nums,
        })
    }
}

/// A resumable snapshot of an [`EnumerationState`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    presentation: String,
    specialization: String,
    seed: Option<u64>,
    budget: Budget,
    words: Vec<Word>,
    retired: Vec<Option<RowJson>>,
    table: Vec<Vec<Option<RowJson>>>,
    cursor: usize,
    stats: EnumerationStats,
}

impl Checkpoint {
    pub fn capture(
        state: &EnumerationState,
        p: &Presentation,
        spec: &Specialization,
        seed: Option<u64>,
    ) -> Self {
        let row = |r: &Option<IntRow>| r.as_ref().map(RowJson::from_row);
        Checkpoint {
            presentation: p.name.clone(),
            specialization: spec.to_string(),
            seed,
            budget: state.budget(),
            words: state.words.clone(),
            retired: state.retired.iter().map(row).collect(),
            table: state
                .table
                .iter()
                .map(|r| r.iter().map(row).collect())
                .collect(),
            cursor: state.cursor,
            stats: state.stats.clone(),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn definitions(&self) -> u64 {
        self.stats.definitions
    }

    /// Rebuilds the state; `p` and `spec` must be the ones it was captured with.
    pub fn restore(
        &self,
        p: &Presentation,
        spec: &Specialization,
    ) -> Result<EnumerationState, EnumerationError> {
        let bad = |m: String| EnumerationError::Checkpoint(m);
        if p.name != self.presentation || spec.to_string() != self.specialization {
            return Err(bad(format!(
                "checkpoint is for {} at {}, not {} at {}",
                self.presentation, self.specialization, p.name, spec
            )));
        }
        let n = self.words.len();
        if self.retired.len() != n || self.table.len() != n || self.cursor > n {
            return Err(bad("inconsistent lengths".into()));
        }
        let row = |r: &Option<RowJson>| r.as_ref().map(RowJson::to_row).transpose();
        let retired = self
            .retired
            .iter()
            .map(row)
            .collect::<Result<Vec<_>, _>>()?;
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(row).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let policy = p.specialized_policy(spec)?;
        if table.iter().any(|r| r.len() != policy.num_generators()) {
            return Err(bad("table width differs from generator count".into()));
        }
        Ok(EnumerationState::from_parts(
            policy,
            self.budget,
            self.words.clone(),
            retired,
            table,
            self.cursor,
            self.stats.clone(),
        ))
    }

    pub fn save(&self, path: &Path) -> Result<(), EnumerationError> {
        let text =
            serde_json::to_string(self).map_err(|e| EnumerationError::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| EnumerationError::Checkpoint(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, EnumerationError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| EnumerationError::Checkpoint(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| EnumerationError::Checkpoint(e.to_string()))
    }
}
