use thiserror::Error;

use crate::partitions::{Family, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported (q = {q})")]
    EvenCharacteristic { q: u64 },

    #[error("{p} is not a prime")]
    NotPrime { p: u64 },

    #[error("q = {q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("q = {q} = {p}^{r} needs an explicit degree-{r} irreducible modulus")]
    MissingModulus { q: u64, p: u64, r: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("field too large: q = {q}")]
    FieldTooLarge { q: u64 },

    #[error("element code {code} is not in F_{q}")]
    NotInField { code: u64, q: u32 },

    #[error("division by zero in F_{q}")]
    DivisionByZero { q: u32 },

    #[error("partition is invalid: {}", format_violations(.0))]
    InvalidPartition(Vec<Violation>),

    #[error("operation not available for family {family}: {what}")]
    UnsupportedFamily { family: Family, what: &'static str },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("mixed bases: {0}")]
    MixedBasis(String),

    #[error("matrix is not in {which}: {reason}")]
    NotInGroup { which: &'static str, reason: String },

    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: u128,
        budget: u64,
    },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("indexing failure: {0}")]
    Indexing(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Short machine-readable tag, used in the CLI's error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EvenCharacteristic { .. } => "even_characteristic",
            Error::NotPrime { .. } | Error::NotPrimePower { .. } => "bad_q",
            Error::MissingModulus { .. } | Error::InvalidModulus(_) => "bad_modulus",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::NotInField { .. } => "not_in_field",
            Error::DivisionByZero { .. } => "division_by_zero",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::UnsupportedFamily { .. } => "unsupported_family",
            Error::ContextMismatch(_) => "context_mismatch",
            Error::MixedBasis(_) => "mixed_basis",
            Error::NotInGroup { .. } => "not_in_group",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::OutOfRange(_) => "out_of_range",
            Error::Malformed(_) => "malformed_input",
            Error::Indexing(_) => "indexing_failure",
        }
    }
}
