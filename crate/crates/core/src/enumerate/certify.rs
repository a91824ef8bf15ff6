use serde::{Deserialize, Serialize};

use crate::freealg::Word;

use super::modular::{greedy_independent_exact, greedy_independent_mod, ModularImage, PRIMES};
use super::{EnumerationError, EnumerationResult};

/// Results up to this dimension are always row-reduced exactly.
pub const EXACT_DIMENSION_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankMethod {
    /// Full rank of the reduction modulo `prime`.
    Modular {
        prime: u64,
    },
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningCertificate {
    pub dimension: usize,
    pub rank: usize,
    pub words: usize,
    /// Positions in the input list, greedy in listed order.
    pub independent: Vec<usize>,
    pub method: RankMethod,
}

impl SpanningCertificate {
    pub fn is_basis(&self) -> bool {
        self.words == self.dimension && self.rank == self.dimension
    }
}

/// Certifies that `words` span the enumerated module. Large results are
/// certified by full rank modulo a prime (which implies full rank over
/// `ℚ`); small ones, and any modular deficit, by exact row reduction.
pub fn certify_spanning(
    words: &[Word],
    r: &EnumerationResult,
) -> Result<SpanningCertificate, EnumerationError> {
    let ngens = r.alphabet.len();
    if let Some(w) = words
        .iter()
        .find(|w| w.letters().iter().any(|l| l.gen as usize >= ngens))
    {
        return Err(EnumerationError::Malformed(format!(
            "word with {} letters uses a generator outside {}",
            w.len(),
            r.presentation
        )));
    }
    let dim = r.dimension();
    let certificate = |independent: Vec<usize>, method| SpanningCertificate {
        dimension: dim,
        rank: independent.len(),
        words: words.len(),
        independent,
        method,
    };
    if dim > EXACT_DIMENSION_LIMIT {
        let mut best: Option<SpanningCertificate> = None;
        for &p in &PRIMES {
            let Some(image) = ModularImage::new(r, p) else {
                continue;
            };
            let independent = greedy_independent_mod(image.coordinates_all(words), p);
            let cert = certificate(independent, RankMethod::Modular { prime: p });
            if cert.rank == dim {
                return Ok(cert);
            }
            if best.as_ref().is_none_or(|b| cert.rank > b.rank) {
                best = Some(cert);
            }
        }
        // modular ranks are lower bounds; report the best one
        let best =
            best.ok_or_else(|| EnumerationError::Malformed("no prime reduces the result".into()))?;
        return Err(deficit(words, r, &best));
    }
    let rows = words.iter().map(|w| r.coordinates(w)).collect();
    let cert = certificate(greedy_independent_exact(rows), RankMethod::Exact);
    if cert.rank == dim {
        Ok(cert)
    } else {
        Err(deficit(words, r, &cert))
    }
}

fn deficit(words: &[Word], r: &EnumerationResult, cert: &SpanningCertificate) -> EnumerationError {
    let first = (0..words.len()).find(|i| !cert.independent.contains(i));
    EnumerationError::RankDeficit {
        rank: cert.rank,
        dimension: cert.dimension,
        first_dependent: first.map(|i| r.alphabet.format(&words[i])),
    }
}
