use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("X-class parameters violate z^2/4 <= x(1-x): x = {x}, z = {z}")]
    Constraint { x: f64, z: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("{}: {msg}", path.display())]
    Format { path: PathBuf, msg: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix is not of X form: entry ({row},{col}) has modulus {modulus:e}")]
    NotXForm {
        row: usize,
        col: usize,
        modulus: f64,
    },

    #[error("fidelity {fidelity} lies below the threshold fidelity {threshold}; no Werner decomposition exists")]
    BelowThreshold { fidelity: f64, threshold: f64 },

    #[error("stationary subspace has dimension {found}, expected {expected}")]
    Degeneracy { found: usize, expected: usize },

    #[error("propagation did not reach a stationary state by t = {t} (residual {residual:e})")]
    NotConverged { t: f64, residual: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("non-finite value in column `{column}`")]
    NonFinite { column: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }

    /// Whether the error stems from the numerics rather than from the
    /// inputs: failed linear algebra, non-convergence, an unexpected
    /// stationary-space dimension or a non-finite result.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_)
                | Error::NotConverged { .. }
                | Error::Degeneracy { .. }
                | Error::NonFinite { .. }
        )
    }
}
