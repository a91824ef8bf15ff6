use std::fmt;
use std::sync::Arc;

use super::CoeffError;

/// The variables of an integer Laurent polynomial ring, in storage order, and
/// which of them may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    variables: Vec<String>,
    invertible: Vec<bool>,
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(variables: &[S], invertible: &[S]) -> Result<Arc<Self>, CoeffError> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_owned()).collect();
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(CoeffError::BadVariable(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(CoeffError::DuplicateVariable(v.clone()));
            }
        }
        let mut flags = vec![false; variables.len()];
        for inv in invertible {
            let inv = inv.as_ref();
            let pos = variables
                .iter()
                .position(|v| v == inv)
                .ok_or_else(|| CoeffError::UnknownVariable(inv.to_owned()))?;
            flags[pos] = true;
        }
        Ok(Arc::new(RingSpec {
            variables,
            invertible: flags,
        }))
    }

    /// The ring with no variables, i.e. the integers.
    pub fn integers() -> Arc<Self> {
        Arc::new(RingSpec {
            variables: Vec::new(),
            invertible: Vec::new(),
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn is_invertible(&self, index: usize) -> bool {
        self.invertible[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn invertible_names(&self) -> impl Iterator<Item = &str> {
        self.variables
            .iter()
            .zip(&self.invertible)
            .filter(|(_, inv)| **inv)
            .map(|(v, _)| v.as_str())
    }
}

impl fmt::Display for RingSpec {
    /// `Z[a, b, c^±1]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[")?;
        for (i, v) in self.variables.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
            if self.invertible[i] {
                write!(f, "^±1")?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
