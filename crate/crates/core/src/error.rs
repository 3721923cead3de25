//! Error types shared across the crate.

/// Errors produced by the numerical routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not reach its truncation threshold within the term cap.
    #[error("series did not converge within {max_terms} terms (last term ~ {last_term:e})")]
    Convergence { max_terms: usize, last_term: f64 },

    /// Invalid precision or tolerance configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A forward iteration divided by a quantity too small to trust.
    #[error("iteration unstable at index {index}: divisor magnitude ~ {magnitude:e}")]
    Instability { index: usize, magnitude: f64 },

    /// A recurrence coefficient that must be positive came out non-positive.
    #[error("positivity lost at index {index}; working precision exhausted")]
    PositivityLoss { index: usize },

    /// A squared norm came out non-positive while pairing against moments.
    #[error("precision exhausted at index {index}: squared norm non-positive")]
    PrecisionExhausted { index: usize },

    /// Not enough moments were supplied for the requested check.
    #[error("moment table too short: need {needed} even moments, have {have}")]
    InsufficientTable { needed: usize, have: usize },

    /// Evaluation requested at (or too near) a pole of a rational coefficient.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// A Stieltjes series was requested outside its convergence regime.
    #[error("series divergence: {0}")]
    SeriesDivergence(String),

    /// A trajectory integration ran into a vanishing denominator.
    #[error("singularity during integration near z = {z}: {what}")]
    Singularity { z: f64, what: String },

    /// A finite-difference step too small for the working precision.
    #[error("cancellation: {0}")]
    Cancellation(String),

    /// The quartic factor failed to split into real and imaginary pairs.
    #[error("structure violation at n = {n}: {what}")]
    StructureViolation { n: usize, what: String },

    /// A sequence index beyond the constructed range.
    #[error("index {index} out of range; sequence holds 0..={max}")]
    IndexRange { index: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
