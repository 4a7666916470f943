use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("address of length {len} exceeds available depth {depth}")]
    AddressRange { len: u32, depth: u32 },

    #[error("point {0} does not lie in the set at the requested depth")]
    NotInSet(f64),

    #[error("function is not injective on the support: addresses {u} and {v} collide")]
    NonInjective { u: String, v: String },

    #[error("weights sum to {total}, expected 1 within {tol}")]
    Unnormalized { total: f64, tol: f64 },

    #[error("only {admissible} admissible scales after windowing, need at least {needed}")]
    InsufficientScales { admissible: usize, needed: usize },

    #[error("product of {size} points exceeds the configured cap {cap}")]
    ProductTooLarge { size: u128, cap: u64 },

    #[error("inequality chain violated: {0}")]
    ChainViolated(String),
}
