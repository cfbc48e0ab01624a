use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid proportions: {0}")]
    InvalidProportions(String),

    #[error("invalid caps: {0}")]
    InvalidCaps(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// Every group budget rounds down to zero selections.
    #[error("degenerate budget: no element can ever be selected")]
    DegenerateBudget,

    #[error("infeasible threshold: {0}")]
    InfeasibleThreshold(String),

    #[error("infeasible fairness bounds: {0}")]
    InfeasibleFairness(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance too large for enumeration: n = {n} exceeds {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
}
