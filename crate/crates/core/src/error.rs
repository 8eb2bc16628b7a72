use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum GaborError {
    #[error("window is identically zero")]
    ZeroWindow,

    #[error("modulation index {m} out of range for M = {modulation_count}")]
    ModulationOutOfRange { m: i64, modulation_count: u32 },

    #[error("empty translation range: n_lo = {n_lo} > n_hi = {n_hi}")]
    EmptyRange { n_lo: i64, n_hi: i64 },

    #[error(
        "no dependency is guaranteed for M = {modulation_count}, N = {translation_step}, \
         support size {support_size}: both dependent and independent systems exist here"
    )]
    NoGuaranteedDependency {
        modulation_count: u32,
        translation_step: u32,
        support_size: usize,
    },

    #[error("closed-form bounds need the support inside {width} consecutive indices (span is {span})")]
    SupportTooWide { width: u32, span: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("certificate has no nonzero coefficient")]
    EmptyCertificate,

    #[error("witness validation failed: {0}")]
    WitnessInconsistency(String),
}

pub type Result<T> = std::result::Result<T, GaborError>;
