//! Error type shared by every evaluator in the crate.

/// Failure modes of theta, factorial, and series evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// `θ(0;p)` is undefined: the second product needs `1/a`.
    #[error("theta argument must be nonzero")]
    ZeroThetaArgument,

    /// The nome magnitude is too close to 1 for the truncated product.
    #[error("nome magnitude {0} exceeds the supported bound 0.95")]
    UnsupportedNome(f64),

    /// The truncation depth needed for the requested accuracy is absurd;
    /// only reachable through a hand-built context, not the stock tiers.
    #[error("theta truncation depth {needed} exceeds cap {cap}")]
    TruncationCap { needed: f64, cap: usize },

    /// Shifted factorials are defined here for nonnegative length only.
    #[error("factorial length must be nonnegative, got {0}")]
    NegativeLength(i64),

    /// A multi-parameter product was called with no parameters.
    #[error("empty parameter list")]
    EmptyParams,

    /// A series was given a negative number of terms.
    #[error("series length must be nonnegative, got {0}")]
    NegativeSeriesLength(i64),

    /// A series parameter (or series argument) was exactly zero.
    #[error("series parameters must be nonzero")]
    ZeroSeriesParam,

    /// A denominator theta factor fell at or below the singularity floor.
    /// `k` is the first term index whose denominator is affected.
    #[error("singular denominator at term {k}: |theta| = {magnitude:e} is at or below the floor")]
    SingularDenominator { k: usize, magnitude: f64 },

    /// A structural precondition of a named series family failed.
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    /// Registry lookup failed.
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, EvalError>;
