use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision cap of {bits} bits reached: {what}")]
    PrecisionCap { bits: u32, what: String },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("root not extractable: {0}")]
    NotExtractable(String),
    #[error("truncation order insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integration failed at x = {at}: {reason}")]
    Integration { at: f64, reason: String },
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
    #[error("synthesis failed: {0}")]
    SynthesisFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
