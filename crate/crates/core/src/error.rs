//! Error types shared across the crate.

use thiserror::Error;

/// Violation of a value-level invariant: a quantity outside its physical
/// domain, or a model asked to predict outside its contract.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("{quantity} must be positive, got {value}")]
    NonPositive { quantity: &'static str, value: f64 },

    #[error("{quantity} must be finite, got {value}")]
    NotFinite { quantity: &'static str, value: f64 },

    #[error("{quantity} must not be negative, got {value}")]
    Negative { quantity: &'static str, value: f64 },

    #[error("base antenna must sit above the receiver: hb = {base_m} m, hr = {mobile_m} m")]
    HeightOrder { base_m: f64, mobile_m: f64 },

    #[error("shadowing term must lie in [8.2, 10.6] dB, got {value}")]
    ShadowingOutOfRange { value: f64 },

    #[error("sector must be 1, 2 or 3, got {sector}")]
    SectorOutOfRange { sector: i64 },

    #[error("distance {distance_m} m is below the reference distance {reference_m} m")]
    BelowReferenceDistance { distance_m: f64, reference_m: f64 },

    #[error("invalid sweep: d_min = {d_min_m} m exceeds d_max = {d_max_m} m")]
    InvalidSweep { d_min_m: f64, d_max_m: f64 },

    #[error("curve distances must be strictly increasing (violation at point {index})")]
    UnorderedCurve { index: usize },
}

/// Failure while scoring models against a measurement set or fitting the
/// path-loss exponent.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("a measurement set needs at least 2 samples, got {count}")]
    TooFewSamples { count: usize },

    #[error("sample distances must be strictly increasing (violation at index {index})")]
    NonIncreasingDistances { index: usize },

    #[error("first sample at {first_m} m lies before the reference distance {reference_m} m")]
    FirstSampleBeforeReference { first_m: f64, reference_m: f64 },

    #[error("path loss at index {index} is not finite")]
    NonFiniteLoss { index: usize },

    #[error("degenerate fit: every sample sits at the reference anchor distance")]
    DegenerateFit,

    #[error("series length mismatch: {measured} measured vs {predicted} predicted")]
    LengthMismatch { measured: usize, predicted: usize },

    #[error("cannot score an empty series")]
    EmptySeries,

    #[error("no evaluation reports to rank")]
    NoReports,

    #[error(transparent)]
    Model(#[from] DomainError),
}

/// Failure while turning a drive-test log into a measurement set.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("empty file: no header row")]
    EmptyFile,

    #[error("no samples: the file contains a header but no data rows")]
    NoSamples,

    #[error("missing required column `{column}`")]
    MissingColumn { column: &'static str },

    #[error("line {line}: invalid {column} value `{value}`")]
    InvalidCell {
        line: u64,
        column: &'static str,
        value: String,
    },

    #[error("line {line}: sector out of range (expected 1-3, got `{value}`)")]
    SectorOutOfRange { line: u64, value: String },

    #[error("line {line}: site_id `{found}` differs from `{expected}`; one log holds one site")]
    MixedSiteIds {
        line: u64,
        expected: String,
        found: String,
    },

    #[error("degenerate measurement set: {bins} distance bin(s) after binning, need at least 2")]
    DegenerateSet { bins: usize },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Set(#[from] CalibrationError),
}
