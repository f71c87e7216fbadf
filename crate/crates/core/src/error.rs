use alloc::string::String;

use crate::coefficients::Family;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no builtin data for family {family} at genus {genus}")]
    NoBuiltinData { family: Family, genus: u32 },

    #[error("malformed rational literal {0:?}")]
    MalformedRational(String),

    #[error("coefficient vector has {len} entries but at most {max} are allowed here")]
    TooManyCoefficients { len: usize, max: usize },

    #[error("coefficient vector is empty")]
    EmptyVector,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("non-invertible step: zero pivot at power {power}")]
    NonInvertibleStep { power: i64 },

    #[error("inconsistent vector: equation at power {power} does not hold")]
    InconsistentVector { power: i64 },

    #[error("count is not an integer ({value}); coefficient data is corrupted")]
    NonIntegerCount { value: String },

    #[error("fast path undefined: {0}")]
    FastPathUndefined(String),

    #[error("hypergeometric sum undefined under the terminating convention: {0}")]
    UndefinedHypergeometric(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("census over {darts} darts ({matchings} matchings) exceeds the limit of {limit} darts")]
    CensusTooLarge {
        darts: usize,
        limit: usize,
        matchings: String,
    },

    #[error("series truncated at order {have}, order {need} required")]
    OrderMismatch { have: usize, need: usize },

    #[error("vertex count {j} is outside the domain of this method: {reason}")]
    OutOfDomain { j: u32, reason: String },
}
