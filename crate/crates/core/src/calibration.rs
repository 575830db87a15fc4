//! Scoring models against measurements and deriving the offset-calibrated
//! "modified" variants.
//!
//! Two offset rules are provided. The RMSE rule mirrors the campaign
//! write-up: add the base model's RMSE, signed by the mean residual. The
//! bias rule uses the mean residual itself, which is the constant offset
//! that minimizes the post-calibration RMSE.

use serde::Serialize;

use crate::context::{EricssonParams, RadioContext};
use crate::error::CalibrationError;
use crate::models::{ModelId, PathLossModel};
use crate::units::Distance;

/// Distance-binned path-loss samples for one site.
///
/// Invariants: at least two samples, strictly increasing distances, first
/// sample at or past the context's reference distance, finite losses.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    site_id: String,
    ctx: RadioContext,
    samples: Vec<(Distance, f64)>,
}

impl MeasurementSet {
    pub fn new(
        site_id: impl Into<String>,
        ctx: RadioContext,
        samples: Vec<(Distance, f64)>,
    ) -> Result<Self, CalibrationError> {
        if samples.len() < 2 {
            return Err(CalibrationError::TooFewSamples {
                count: samples.len(),
            });
        }
        for (i, (d, loss)) in samples.iter().enumerate() {
            if !loss.is_finite() {
                return Err(CalibrationError::NonFiniteLoss { index: i });
            }
            if i > 0 && samples[i - 1].0.meters() >= d.meters() {
                return Err(CalibrationError::NonIncreasingDistances { index: i });
            }
        }
        let first_m = samples[0].0.meters();
        let reference_m = ctx.reference_distance().meters();
        if first_m < reference_m {
            return Err(CalibrationError::FirstSampleBeforeReference {
                first_m,
                reference_m,
            });
        }
        Ok(Self {
            site_id: site_id.into(),
            ctx,
            samples,
        })
    }

    pub fn site_id(&self) -> &str {
        &self.site_id
    }

    pub fn context(&self) -> &RadioContext {
        &self.ctx
    }

    pub fn samples(&self) -> &[(Distance, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Root-mean-square error between paired series.
pub fn rmse(measured: &[f64], predicted: &[f64]) -> Result<f64, CalibrationError> {
    if measured.len() != predicted.len() {
        return Err(CalibrationError::LengthMismatch {
            measured: measured.len(),
            predicted: predicted.len(),
        });
    }
    if measured.is_empty() {
        return Err(CalibrationError::EmptySeries);
    }
    let sum_sq: f64 = measured
        .iter()
        .zip(predicted)
        .map(|(m, p)| (m - p) * (m - p))
        .sum();
    Ok((sum_sq / measured.len() as f64).sqrt())
}

/// Zero-intercept least-squares slope of loss deltas against
/// `10 log10(d/d_ref)`, anchored at the first (reference-distance) sample.
///
/// Recovers 2 for free-space data and grows with clutter.
pub fn path_loss_exponent(ms: &MeasurementSet) -> Result<f64, CalibrationError> {
    let (d_ref, loss_ref) = ms.samples()[0];
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for &(d, loss) in ms.samples() {
        let x = 10.0 * (d.meters() / d_ref.meters()).log10();
        numerator += (loss - loss_ref) * x;
        denominator += x * x;
    }
    if denominator == 0.0 {
        return Err(CalibrationError::DegenerateFit);
    }
    Ok(numerator / denominator)
}

/// Per-model fit against one measurement set.
///
/// Residuals are measured minus predicted, in sample order; `rmse_db` is
/// always at least `|bias_db|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub model: PathLossModel,
    pub rmse_db: f64,
    pub bias_db: f64,
    pub residuals_db: Vec<f64>,
}

/// Predicts at every sample distance and scores the fit.
pub fn evaluate(
    ms: &MeasurementSet,
    model: PathLossModel,
    params: &EricssonParams,
) -> Result<EvaluationReport, CalibrationError> {
    let ctx = ms.context();
    let mut residuals = Vec::with_capacity(ms.len());
    for &(d, measured) in ms.samples() {
        let predicted = model.predict(ctx, params, d)?;
        residuals.push(measured - predicted);
    }
    let n = residuals.len() as f64;
    let bias_db = residuals.iter().sum::<f64>() / n;
    let rmse_db = (residuals.iter().map(|r| r * r).sum::<f64>() / n).sqrt();
    Ok(EvaluationReport {
        model,
        rmse_db,
        bias_db,
        residuals_db: residuals,
    })
}

/// Picks the report with the least RMSE; ties go to the earlier model in the
/// fixed declaration order, with a base model beating a calibrated one.
pub fn select_best(reports: &[EvaluationReport]) -> Result<PathLossModel, CalibrationError> {
    reports
        .iter()
        .min_by(|a, b| {
            a.rmse_db
                .total_cmp(&b.rmse_db)
                .then_with(|| rank_key(a.model).cmp(&rank_key(b.model)))
        })
        .map(|r| r.model)
        .ok_or(CalibrationError::NoReports)
}

fn rank_key(model: PathLossModel) -> (usize, u8) {
    match model {
        PathLossModel::Base(id) => (id.order_index(), 0),
        PathLossModel::Calibrated { base, .. } => (base.order_index(), 1),
    }
}

/// How a calibrated model's offset was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffsetMethod {
    /// The base model's RMSE, signed by the mean residual.
    RmseOffset,
    /// The mean residual itself; minimizes the post-calibration RMSE.
    BiasOffset,
}

/// A base model plus a constant dB offset fitted on one site.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct CalibratedModel {
    pub base: ModelId,
    pub offset_db: f64,
    pub method: OffsetMethod,
    pub source_site: String,
}

impl CalibratedModel {
    pub fn model(&self) -> PathLossModel {
        PathLossModel::Calibrated {
            base: self.base,
            offset_db: self.offset_db,
        }
    }

    pub fn predict(
        &self,
        ctx: &RadioContext,
        params: &EricssonParams,
        d: Distance,
    ) -> Result<f64, crate::error::DomainError> {
        self.model().predict(ctx, params, d)
    }
}

/// Calibrates by adding the base model's RMSE, signed by the mean residual:
/// the offset is `+rmse` when the base model under-predicts on average and
/// `-rmse` when it over-predicts.
pub fn calibrate_rmse_offset(
    ms: &MeasurementSet,
    base: ModelId,
    params: &EricssonParams,
) -> Result<CalibratedModel, CalibrationError> {
    let report = evaluate(ms, base.into(), params)?;
    let offset_db = if report.bias_db < 0.0 {
        -report.rmse_db
    } else {
        report.rmse_db
    };
    Ok(CalibratedModel {
        base,
        offset_db,
        method: OffsetMethod::RmseOffset,
        source_site: ms.site_id().to_owned(),
    })
}

/// Calibrates with the mean residual, the RMSE-optimal constant offset.
pub fn calibrate_bias_offset(
    ms: &MeasurementSet,
    base: ModelId,
    params: &EricssonParams,
) -> Result<CalibratedModel, CalibrationError> {
    let report = evaluate(ms, base.into(), params)?;
    Ok(CalibratedModel {
        base,
        offset_db: report.bias_db,
        method: OffsetMethod::BiasOffset,
        source_site: ms.site_id().to_owned(),
    })
}

/// A calibrated model re-scored against a measurement set, with the base
/// model's RMSE for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationOutcome {
    pub report: EvaluationReport,
    pub base_rmse_db: f64,
    /// True when the calibrated RMSE fell below the base RMSE.
    pub improved: bool,
}

/// Scores calibrated predictions and flags whether they beat the base model.
pub fn validate(
    ms: &MeasurementSet,
    cal: &CalibratedModel,
    params: &EricssonParams,
) -> Result<ValidationOutcome, CalibrationError> {
    let base_report = evaluate(ms, cal.base.into(), params)?;
    let report = evaluate(ms, cal.model(), params)?;
    let improved = report.rmse_db < base_report.rmse_db;
    Ok(ValidationOutcome {
        report,
        base_rmse_db: base_report.rmse_db,
        improved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::EnvironmentClass;
    use crate::models;
    use crate::units::Frequency;

    const TOL: f64 = 1e-9;

    fn meters(m: f64) -> Distance {
        Distance::from_meters(m).unwrap()
    }

    fn urban_ctx() -> RadioContext {
        RadioContext::new(
            Frequency::from_mhz(800.0).unwrap(),
            24.0,
            1.5,
            EnvironmentClass::UrbanLargeCity,
        )
        .unwrap()
    }

    fn log_linear_set(slope_n: f64) -> MeasurementSet {
        let samples = (1..=10)
            .map(|k| {
                let d = 50.0 * k as f64;
                (meters(d), 100.0 + 10.0 * slope_n * (d / 50.0).log10())
            })
            .collect();
        MeasurementSet::new("synthetic", urban_ctx(), samples).unwrap()
    }

    fn model_set(model: ModelId, residuals: &[f64]) -> MeasurementSet {
        let ctx = urban_ctx();
        let params = EricssonParams::URBAN;
        let samples = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let d = meters(50.0 * (i + 1) as f64);
                let predicted = models::predict(model, &ctx, &params, d).unwrap();
                (d, predicted + r)
            })
            .collect();
        MeasurementSet::new("synthetic", ctx, samples).unwrap()
    }

    #[test]
    fn set_invariants_are_enforced() {
        let ctx = urban_ctx();
        assert!(matches!(
            MeasurementSet::new("s", ctx, vec![(meters(50.0), 100.0)]),
            Err(CalibrationError::TooFewSamples { count: 1 })
        ));
        assert!(matches!(
            MeasurementSet::new("s", ctx, vec![(meters(100.0), 1.0), (meters(100.0), 2.0)]),
            Err(CalibrationError::NonIncreasingDistances { index: 1 })
        ));
        assert!(matches!(
            MeasurementSet::new("s", ctx, vec![(meters(25.0), 1.0), (meters(100.0), 2.0)]),
            Err(CalibrationError::FirstSampleBeforeReference { .. })
        ));
        assert!(matches!(
            MeasurementSet::new(
                "s",
                ctx,
                vec![(meters(50.0), f64::NAN), (meters(100.0), 2.0)]
            ),
            Err(CalibrationError::NonFiniteLoss { index: 0 })
        ));
    }

    #[test]
    fn rmse_of_identical_series_is_zero() {
        let series = [101.5, 110.0, 125.25];
        assert_eq!(rmse(&series, &series).unwrap(), 0.0);
    }

    #[test]
    fn rmse_of_constant_offset_is_the_offset() {
        let measured = [100.0, 110.0, 120.0];
        let predicted: Vec<f64> = measured.iter().map(|m| m - 7.5).collect();
        assert!((rmse(&measured, &predicted).unwrap() - 7.5).abs() < TOL);
    }

    #[test]
    fn rmse_hand_fixture() {
        let r = rmse(&[100.0, 110.0], &[103.0, 105.0]).unwrap();
        assert!((r - 4.123_105_625_617_661).abs() < TOL);
    }

    #[test]
    fn rmse_rejects_mismatched_or_empty_series() {
        assert!(matches!(
            rmse(&[1.0], &[1.0, 2.0]),
            Err(CalibrationError::LengthMismatch { .. })
        ));
        assert!(matches!(rmse(&[], &[]), Err(CalibrationError::EmptySeries)));
    }

    #[test]
    fn exponent_recovers_free_space_slope() {
        let n = path_loss_exponent(&log_linear_set(2.0)).unwrap();
        assert!((n - 2.0).abs() < TOL, "got {n}");
    }

    #[test]
    fn exponent_recovers_arbitrary_slopes() {
        for n_true in [2.0, 3.5, 5.0, 6.0] {
            let n = path_loss_exponent(&log_linear_set(n_true)).unwrap();
            assert!((n - n_true).abs() < 1e-6, "expected {n_true}, got {n}");
        }
    }

    #[test]
    fn exponent_ignores_noise_orthogonal_to_the_regressor() {
        let clean = log_linear_set(3.0);
        let xs: Vec<f64> = clean
            .samples()
            .iter()
            .map(|(d, _)| 10.0 * (d.meters() / 50.0).log10())
            .collect();
        // Project an arbitrary disturbance onto the regressor's complement.
        // The anchor sample stays clean: the estimator pivots on it.
        let mut raw: Vec<f64> = (0..xs.len()).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
        raw[0] = 0.0;
        let dot_xx: f64 = xs.iter().map(|x| x * x).sum();
        let dot_rx: f64 = raw.iter().zip(&xs).map(|(r, x)| r * x).sum();
        let noise: Vec<f64> = raw
            .iter()
            .zip(&xs)
            .map(|(r, x)| r - dot_rx / dot_xx * x)
            .collect();
        let noisy_samples: Vec<(Distance, f64)> = clean
            .samples()
            .iter()
            .zip(&noise)
            .map(|(&(d, pl), e)| (d, pl + e))
            .collect();
        let noisy = MeasurementSet::new("noisy", *clean.context(), noisy_samples).unwrap();
        let n_clean = path_loss_exponent(&clean).unwrap();
        let n_noisy = path_loss_exponent(&noisy).unwrap();
        assert!((n_clean - n_noisy).abs() < TOL);
    }

    #[test]
    fn evaluate_is_exact_on_model_generated_data() {
        for model in ModelId::ALL {
            let ms = model_set(model, &[0.0; 10]);
            let report = evaluate(&ms, model.into(), &EricssonParams::URBAN).unwrap();
            assert!(report.rmse_db < 1e-12, "{model}: rmse {}", report.rmse_db);
            assert!(report.bias_db.abs() < 1e-12);
            assert_eq!(report.residuals_db.len(), 10);
        }
    }

    #[test]
    fn evaluate_rmse_dominates_bias() {
        let ms = model_set(ModelId::Hata, &[3.0, -1.0, 4.0, 0.5, -2.5, 1.0, 2.0, -3.0, 0.0, 1.5]);
        let report = evaluate(&ms, ModelId::Hata.into(), &EricssonParams::URBAN).unwrap();
        assert!(report.rmse_db >= report.bias_db.abs());
    }

    #[test]
    fn select_best_prefers_least_rmse() {
        let mk = |model: ModelId, rmse_db: f64| EvaluationReport {
            model: model.into(),
            rmse_db,
            bias_db: 0.0,
            residuals_db: vec![],
        };
        // The campaign's urban ranking shape: Ericsson wins.
        let reports = vec![
            mk(ModelId::Hata, 30.66),
            mk(ModelId::Sui, 32.96),
            mk(ModelId::Ericsson, 17.98),
        ];
        assert_eq!(
            select_best(&reports).unwrap(),
            PathLossModel::Base(ModelId::Ericsson)
        );

        let single = vec![mk(ModelId::Ecc33, 12.0)];
        assert_eq!(
            select_best(&single).unwrap(),
            PathLossModel::Base(ModelId::Ecc33)
        );

        // Ties break on the fixed declaration order, however the input is sorted.
        let tied = vec![mk(ModelId::Sui, 10.0), mk(ModelId::Hata, 10.0)];
        assert_eq!(
            select_best(&tied).unwrap(),
            PathLossModel::Base(ModelId::Hata)
        );

        assert!(matches!(
            select_best(&[]),
            Err(CalibrationError::NoReports)
        ));
    }

    #[test]
    fn constant_residual_calibrates_to_zero_rmse_both_ways() {
        let ms = model_set(ModelId::Ericsson, &[6.25; 10]);
        let params = EricssonParams::URBAN;

        let by_rmse = calibrate_rmse_offset(&ms, ModelId::Ericsson, &params).unwrap();
        assert!((by_rmse.offset_db - 6.25).abs() < TOL);
        let after = validate(&ms, &by_rmse, &params).unwrap();
        assert!(after.report.rmse_db < 1e-9);
        assert!(after.improved);

        let by_bias = calibrate_bias_offset(&ms, ModelId::Ericsson, &params).unwrap();
        assert!((by_bias.offset_db - 6.25).abs() < TOL);
        let after = validate(&ms, &by_bias, &params).unwrap();
        assert!(after.report.rmse_db < 1e-9);
    }

    #[test]
    fn rmse_offset_follows_the_residual_sign() {
        let params = EricssonParams::URBAN;

        let under = model_set(ModelId::Sui, &[5.0, 6.0, 7.0, 5.5, 6.5]);
        let cal = calibrate_rmse_offset(&under, ModelId::Sui, &params).unwrap();
        assert!(cal.offset_db > 0.0, "under-prediction adds the RMSE");

        let over = model_set(ModelId::Sui, &[-5.0, -6.0, -7.0, -5.5, -6.5]);
        let cal = calibrate_rmse_offset(&over, ModelId::Sui, &params).unwrap();
        assert!(cal.offset_db < 0.0, "over-prediction subtracts the RMSE");
        assert_eq!(cal.method, OffsetMethod::RmseOffset);
    }

    #[test]
    fn bias_offset_never_loses_to_rmse_offset() {
        let residual_sets: [&[f64]; 4] = [
            &[2.0, 3.0, 1.0, 4.0, 2.5],
            &[-1.0, 5.0, -2.0, 4.0, 0.5],
            &[10.0, 10.5, 9.5, 10.2, 9.8],
            &[-0.1, 0.1, -0.2, 0.2, 0.0],
        ];
        let params = EricssonParams::URBAN;
        for residuals in residual_sets {
            let ms = model_set(ModelId::Hata, residuals);
            let bias_cal = calibrate_bias_offset(&ms, ModelId::Hata, &params).unwrap();
            let rmse_cal = calibrate_rmse_offset(&ms, ModelId::Hata, &params).unwrap();
            let bias_after = validate(&ms, &bias_cal, &params).unwrap().report.rmse_db;
            let rmse_after = validate(&ms, &rmse_cal, &params).unwrap().report.rmse_db;
            assert!(
                bias_after <= rmse_after + TOL,
                "bias {bias_after} vs rmse {rmse_after}"
            );
        }
    }

    #[test]
    fn bias_calibration_leaves_the_residual_standard_deviation() {
        let residuals = [4.0, 6.0, 5.0, 7.0, 3.0];
        let ms = model_set(ModelId::Cost231, &residuals);
        let params = EricssonParams::URBAN;
        let cal = calibrate_bias_offset(&ms, ModelId::Cost231, &params).unwrap();
        let outcome = validate(&ms, &cal, &params).unwrap();

        let mean: f64 = residuals.iter().sum::<f64>() / residuals.len() as f64;
        let std_dev =
            (residuals.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>()
                / residuals.len() as f64)
                .sqrt();
        assert!((outcome.report.rmse_db - std_dev).abs() < TOL);
        assert!(outcome.report.bias_db.abs() < TOL);
    }

    #[test]
    fn zero_offset_validation_matches_plain_evaluation() {
        let ms = model_set(ModelId::Ecc33, &[1.0, -2.0, 3.0, -1.0, 0.5]);
        let params = EricssonParams::URBAN;
        let cal = CalibratedModel {
            base: ModelId::Ecc33,
            offset_db: 0.0,
            method: OffsetMethod::BiasOffset,
            source_site: "synthetic".into(),
        };
        let outcome = validate(&ms, &cal, &params).unwrap();
        let plain = evaluate(&ms, ModelId::Ecc33.into(), &params).unwrap();
        assert_eq!(outcome.report.rmse_db, plain.rmse_db);
        assert_eq!(outcome.report.bias_db, plain.bias_db);
        assert!(!outcome.improved);
    }

    #[test]
    fn calibrated_model_file_schema_round_trips() {
        let cal = CalibratedModel {
            base: ModelId::Ericsson,
            offset_db: 17.98,
            method: OffsetMethod::RmseOffset,
            source_site: "adum".into(),
        };
        let json = serde_json::to_string(&cal).unwrap();
        assert!(json.contains("\"base\":\"ericsson\""));
        assert!(json.contains("\"method\":\"rmse-offset\""));
        let back: CalibratedModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cal);
    }
}
