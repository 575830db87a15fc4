//! Empirical LTE path-loss prediction and drive-test calibration.
//!
//! The crate covers the full workflow of a coverage-planning measurement
//! campaign:
//!
//! - six empirical propagation models (free space, Hata, COST-231, ECC-33,
//!   SUI, Ericsson) behind unit-safe frequency and distance types,
//! - an EIRP link budget that turns RSRP readings into experienced path loss,
//! - drive-test CSV ingestion with sector averaging and distance binning,
//! - RMSE scoring, per-environment model ranking, path-loss-exponent fitting,
//!   and offset calibration producing "modified" models.
//!
//! Everything is pure computation over immutable values: identical inputs
//! give bit-identical outputs, and evaluation is safe to run concurrently.

pub mod budget;
pub mod calibration;
pub mod context;
pub mod error;
pub mod ingest;
pub mod models;
pub mod units;
pub mod warnings;

pub use budget::{measured_path_loss, LinkBudget, RsrpSample};
pub use calibration::{
    calibrate_bias_offset, calibrate_rmse_offset, evaluate, path_loss_exponent, rmse, select_best,
    validate, CalibratedModel, EvaluationReport, MeasurementSet, OffsetMethod, ValidationOutcome,
};
pub use context::{
    EnvironmentClass, EricssonParams, RadioContext, TerrainCategory, TerrainConstants,
};
pub use error::{CalibrationError, DomainError, IngestError};
pub use ingest::{
    average_sectors, bin_by_distance, parse_csv, to_csv_string, to_measurement_set, Binned,
    DistanceBin, DriveTestLog, LogMetadata,
};
pub use models::{
    applicability_warnings, cost231, ecc33, ericsson, ericsson_frequency_gain, fspl, hata,
    hata_mobile_correction, predict, sui, sui_exponent, sui_intercept, sweep, ModelId,
    PathLossCurve, PathLossModel,
};
pub use units::{Distance, Frequency};
pub use warnings::Warning;
