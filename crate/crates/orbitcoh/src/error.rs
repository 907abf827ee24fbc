//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

/// Errors produced by any stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Input document failed validation; carries every problem found, not just the first.
    #[error("invalid input:\n  {}", .0.join("\n  "))]
    InvalidInput(Vec<String>),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// A connected component of the diagram is not of finite type A-G.
    #[error("diagram component [{component}] is not of finite type: {reason}")]
    NotFiniteType { component: String, reason: String },

    #[error("vector {0:?} is not a root of the system")]
    NotARoot(Vec<i64>),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    /// Construction of the conjugation from Satake data produced a map that
    /// failed its validation; the user can supply the matrix directly instead.
    #[error(
        "conjugation construction from Satake data failed validation: {0}; \
         supply `sigma` directly as an integer matrix in the `real_form` field"
    )]
    SigmaConstruction(String),

    /// The orbit is generic: the union of the parabolic root set with its
    /// conjugate is not closed under root addition.
    #[error(
        "orbit is generic (not Levi-flat): closure fails for the root pair \
         {a:?} + {b:?}; only totally real and Levi-flat orbits are supported"
    )]
    GenericOrbit { a: Vec<i64>, b: Vec<i64> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 invalid input, 3 unsupported feature,
    /// 4 internal invariant failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::GenericOrbit { .. } | Error::Unsupported(_) | Error::Overflow(_) => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::InvalidInput(vec!["x".into()]).exit_code(), 2);
        assert_eq!(Error::NotARoot(vec![2, 0]).exit_code(), 2);
        assert_eq!(
            Error::GenericOrbit {
                a: vec![-1, -1, 0],
                b: vec![0, 0, -1]
            }
            .exit_code(),
            3
        );
        assert_eq!(Error::Unsupported("x".into()).exit_code(), 3);
        assert_eq!(Error::Internal("x".into()).exit_code(), 4);
    }
}
