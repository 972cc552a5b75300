use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("element is not homogeneous in parity")]
    NonHomogeneous,

    #[error("generator {generator} is not in the acting algebra {domain}")]
    OutsideDomain { generator: String, domain: String },

    #[error("monomial {monomial} is not split-compatible with {boundary}; re-normalize with the boundary-adapted order")]
    SplitIncompatible { monomial: String, boundary: String },

    #[error("unsupported induction from {inner} to {outer}")]
    UnsupportedInduction { inner: String, outer: String },

    #[error("invalid Whittaker data: {0}")]
    InvalidWhittaker(String),

    #[error("invalid module parameters: {0}")]
    InvalidModule(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("weight budget exceeded: output weight {weight} > max weight {max_weight}")]
    WeightBudget { weight: u64, max_weight: u64 },

    #[error("the zero vector has no degree")]
    ZeroVector,

    #[error("base module is infinite-dimensional")]
    InfiniteDimensional,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis violation: {detail}")]
    HypothesisViolation { detail: String, witness: String },
}

impl Error {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::NonHomogeneous => "non_homogeneous",
            Error::OutsideDomain { .. } => "outside_domain",
            Error::SplitIncompatible { .. } => "split_incompatible",
            Error::UnsupportedInduction { .. } => "unsupported_induction",
            Error::InvalidWhittaker(_) => "invalid_whittaker",
            Error::InvalidModule(_) => "invalid_module",
            Error::UnknownLabel(_) => "unknown_label",
            Error::WeightBudget { .. } => "weight_budget",
            Error::ZeroVector => "zero_vector",
            Error::InfiniteDimensional => "infinite_dimensional",
            Error::Precondition(_) => "precondition",
            Error::HypothesisViolation { .. } => "hypothesis_violation",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Error::HypothesisViolation { witness, .. } => Some(witness),
            _ => None,
        }
    }
}
