use std::path::PathBuf;

use khbound_core::{CertifyError, ComputeError, DiagramError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {msg}")]
    Parse { context: String, msg: String },
    #[error("unknown knot name or unparsable PD code: {0}")]
    UnknownTarget(String),
    #[error("duplicate name {0:?} in knot table")]
    Duplicate(String),
    #[error("{context}: {source}")]
    Diagram { context: String, source: DiagramError },
    #[error(transparent)]
    Compute(#[from] ComputeError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("invalid argument: {0}")]
    Usage(String),
}

impl From<DiagramError> for CliError {
    fn from(source: DiagramError) -> Self {
        CliError::Diagram { context: "diagram".into(), source }
    }
}

impl CliError {
    /// 2 for bad input, 3 when the resource ceiling is hit, 4 for internal
    /// invariant violations.
    pub fn exit_code(&self) -> i32 {
        let compute = |e: &ComputeError| match e {
            ComputeError::Ceiling { .. } => 3,
            ComputeError::Invariant(_) | ComputeError::NotInvertible { .. } | ComputeError::EmptyTable | ComputeError::Linalg(_) => 4,
            _ => 2,
        };
        match self {
            CliError::Compute(e) => compute(e),
            CliError::Certify(CertifyError::Compute(e)) => compute(e),
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_kind() {
        let ceiling = ComputeError::Ceiling { live: 2, ceiling: 1, processed: 1 };
        assert_eq!(CliError::Compute(ceiling.clone()).exit_code(), 3);
        assert_eq!(CliError::Certify(CertifyError::Compute(ceiling)).exit_code(), 3);
        assert_eq!(CliError::Compute(ComputeError::Invariant("x".into())).exit_code(), 4);
        assert_eq!(CliError::Compute(ComputeError::EmptyTable).exit_code(), 4);
        assert_eq!(CliError::Compute(ComputeError::CrossingLimit { crossings: 30, limit: 14 }).exit_code(), 2);
        assert_eq!(CliError::Certify(CertifyError::Hypothesis { t: 9, lower: 1 }).exit_code(), 2);
        assert_eq!(CliError::UnknownTarget("k".into()).exit_code(), 2);
    }
}
