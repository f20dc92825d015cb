//! Library side of the `fogsim` binary: scenario loading, golden-case
//! replay tables, and the engine-vs-reference cross-check. Kept as a library
//! so integration tests drive the same code paths as the binary.

pub mod cases;
pub mod check;
pub mod load;

/// Failure classes mapped onto exit codes: bad input or validation problems
/// exit 1, internal contract violations (golden mismatches, cross-check
/// divergence) exit 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Invalid(String),
    Contract(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Contract(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Contract(m) => m,
        }
    }
}
