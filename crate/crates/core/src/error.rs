use thiserror::Error;

use crate::classify::ClassifyError;
use crate::diagram::DiagramError;
use crate::dual::DualError;
use crate::expansion::ExpansionError;
use crate::selftest::SelftestFailure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Selftest(#[from] SelftestFailure),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;

fn diagram_code(e: &DiagramError) -> i32 {
    match e {
        DiagramError::Parse(_)
        | DiagramError::Validation { .. }
        | DiagramError::NoSuchComponent(_) => EXIT_INPUT,
        DiagramError::DualIsSurgered(_) | DiagramError::ZeroPushOffs => EXIT_INPUT,
        _ => EXIT_FAILURE,
    }
}

fn dual_code(e: &DualError) -> i32 {
    match e {
        DualError::NonNullhomologousDual(_) => EXIT_UNDEFINED,
        DualError::ZeroPushOffs => EXIT_INPUT,
        DualError::Diagram(d) => diagram_code(d),
        _ => EXIT_FAILURE,
    }
}

fn expansion_code(e: &ExpansionError) -> i32 {
    match e {
        ExpansionError::NotCoprime { .. } | ExpansionError::Range(_) => EXIT_INPUT,
        ExpansionError::PolicyExhausted(_) | ExpansionError::PolicyUnused { .. } => EXIT_INPUT,
        ExpansionError::Diagram(d) => diagram_code(d),
        _ => EXIT_FAILURE,
    }
}

impl Error {
    /// Process exit code: 2 for unreadable or invalid input, 3 when the
    /// requested invariants are mathematically undefined, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Usage(_) => EXIT_INPUT,
            Error::Diagram(e) => diagram_code(e),
            Error::Expansion(e) => expansion_code(e),
            Error::Dual(e) => dual_code(e),
            Error::Classify(e) => match e {
                ClassifyError::NotCoprime { .. }
                | ClassifyError::NonPositive
                | ClassifyError::UnknownComponent(_)
                | ClassifyError::ConflictingAssumptions { .. } => EXIT_INPUT,
                ClassifyError::Dual(d) => dual_code(d),
                ClassifyError::Expansion(x) => expansion_code(x),
                ClassifyError::Contradiction(_) => EXIT_FAILURE,
            },
            Error::Selftest(_) => EXIT_FAILURE,
        }
    }
}
