//! The JSON report document emitted by `evaluate`, `calibrate` and
//! `exponent`.

use serde::Serialize;

use pathcal_core::{
    EnvironmentClass, EvaluationReport, ModelId, OffsetMethod, PathLossCurve, PathLossModel,
};

pub const DOCUMENT_VERSION: u32 = 1;

/// Machine-readable result of one command over one site. Field order is
/// fixed, floats render at full round-trip precision, and optional sections
/// are omitted rather than null, so identical inputs produce identical bytes.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub version: u32,
    pub command: &'static str,
    pub site_id: String,
    pub frequency_mhz: f64,
    pub environment: EnvironmentClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_model: Option<PathLossModel>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<EvaluationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<CalibrationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_loss_exponent: Option<f64>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(
        command: &'static str,
        site_id: String,
        frequency_mhz: f64,
        environment: EnvironmentClass,
    ) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            command,
            site_id,
            frequency_mhz,
            environment,
            best_model: None,
            reports: Vec::new(),
            calibration: None,
            validation: None,
            path_loss_exponent: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

/// The fitted offset plus before/after RMSE.
#[derive(Debug, Serialize)]
pub struct CalibrationSection {
    pub base: ModelId,
    pub offset_db: f64,
    pub method: OffsetMethod,
    pub source_site: String,
    pub rmse_before_db: f64,
    pub rmse_after_db: f64,
}

/// The calibrated model re-scored against the measurements.
#[derive(Debug, Serialize)]
pub struct ValidationSection {
    pub model: PathLossModel,
    pub rmse_db: f64,
    pub bias_db: f64,
    pub base_rmse_db: f64,
    pub improved: bool,
}

/// JSON rendering of a predicted curve, full precision.
#[derive(Debug, Serialize)]
pub struct CurveDocument {
    pub version: u32,
    pub model: PathLossModel,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub distance_m: f64,
    pub path_loss_db: f64,
}

impl CurveDocument {
    pub fn from_curve(curve: &PathLossCurve) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            model: curve.model(),
            points: curve
                .points()
                .iter()
                .map(|(d, loss)| CurvePoint {
                    distance_m: d.meters(),
                    path_loss_db: *loss,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("curve serialization");
        text.push('\n');
        text
    }
}
