use std::fmt;

use thiserror::Error;

use crate::linalg::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A single failed identity: which one, on which basis indices, and both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {:?}: lhs = {}, rhs = {}",
            self.identity,
            self.indices,
            fmt_vec(&self.lhs),
            fmt_vec(&self.rhs)
        )
    }
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("axiom violated: {0}")]
    Axiom(Violation),

    /// A named hypothesis of a construction does not hold.
    #[error("hypothesis `{hypothesis}` fails: {detail}")]
    Hypothesis {
        hypothesis: String,
        detail: String,
        witness: Option<Violation>,
    },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn hypothesis(hypothesis: &str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis: hypothesis.to_string(),
            detail: detail.into(),
            witness: None,
        }
    }

    pub(crate) fn hypothesis_with(hypothesis: &str, witness: Violation) -> Self {
        Error::Hypothesis {
            hypothesis: hypothesis.to_string(),
            detail: witness.to_string(),
            witness: Some(witness),
        }
    }

    /// Name of the failed hypothesis, if this is a hypothesis failure.
    pub fn hypothesis_name(&self) -> Option<&str> {
        match self {
            Error::Hypothesis { hypothesis, .. } => Some(hypothesis),
            _ => None,
        }
    }
}
