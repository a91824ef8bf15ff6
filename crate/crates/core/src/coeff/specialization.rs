use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CoeffError, RingSpec};

/// A ring morphism `R → Q` given by rational values of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    ring: Arc<RingSpec>,
    values: Vec<BigRational>,
}

impl Specialization {
    pub fn new(ring: &Arc<RingSpec>, values: Vec<BigRational>) -> Result<Self, CoeffError> {
        if values.len() != ring.len() {
            return Err(CoeffError::IncompleteSpecialization(
                ring.variables()
                    .get(values.len())
                    .cloned()
                    .unwrap_or_default(),
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if ring.is_invertible(i) && v.is_zero() {
                return Err(CoeffError::ZeroUnit(ring.variables()[i].clone()));
            }
        }
        Ok(Specialization {
            ring: ring.clone(),
            values,
        })
    }

    /// Builds a specialization from `name → value` pairs; every ring
    /// variable must be assigned.
    pub fn from_map(
        ring: &Arc<RingSpec>,
        map: &BTreeMap<String, BigRational>,
    ) -> Result<Self, CoeffError> {
        for name in map.keys() {
            if ring.index_of(name).is_none() {
                return Err(CoeffError::UnknownVariable(name.clone()));
            }
        }
        let values = ring
            .variables()
            .iter()
            .map(|v| {
                map.get(v)
                    .cloned()
                    .ok_or_else(|| CoeffError::IncompleteSpecialization(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, values)
    }

    /// Parses `a=0,b=1/2,c=3`.
    pub fn parse(ring: &Arc<RingSpec>, text: &str) -> Result<Self, CoeffError> {
        let mut map = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| CoeffError::Parse {
                input: text.to_owned(),
                pos: 0,
                msg: format!("expected k=v in {part:?}"),
            })?;
            let value: BigRational = v.trim().parse().map_err(|_| CoeffError::Parse {
                input: text.to_owned(),
                pos: 0,
                msg: format!("bad rational {v:?}"),
            })?;
            map.insert(k.trim().to_owned(), value);
        }
        Self::from_map(ring, &map)
    }

    /// Seeded pseudorandom specialization: each variable gets `p/q` with
    /// `p, q` uniform in `[1, 100]`.
    pub fn random(ring: &Arc<RingSpec>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..ring.len())
            .map(|_| {
                let p: i64 = rng.gen_range(1..=100);
                let q: i64 = rng.gen_range(1..=100);
                BigRational::new(BigInt::from(p), BigInt::from(q))
            })
            .collect();
        Specialization {
            ring: ring.clone(),
            values,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, name: &str) -> Option<&BigRational> {
        self.ring.index_of(name).map(|i| &self.values[i])
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.ring
            .variables()
            .iter()
            .zip(&self.values)
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect()
    }
}

impl std::fmt::Display for Specialization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.ring.variables().iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
