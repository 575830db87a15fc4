//! The six empirical path-loss models.
//!
//! All formulas take distance in km (SUI in d/d0 ratio) and frequency in MHz
//! (ECC-33 in GHz) internally; the unit types make the conversions explicit.
//! Every logarithm is base 10 and every model is a pure function: identical
//! inputs produce bit-identical outputs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::context::{EnvironmentClass, EricssonParams, RadioContext};
use crate::error::DomainError;
use crate::units::{Distance, Frequency};
use crate::warnings::Warning;

/// Identifier of a base model, in the fixed ranking order used to break RMSE
/// ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Fspl,
    Hata,
    Cost231,
    Ecc33,
    Sui,
    Ericsson,
}

impl ModelId {
    /// Every base model, in declaration order.
    pub const ALL: [ModelId; 6] = [
        ModelId::Fspl,
        ModelId::Hata,
        ModelId::Cost231,
        ModelId::Ecc33,
        ModelId::Sui,
        ModelId::Ericsson,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fspl => "fspl",
            Self::Hata => "hata",
            Self::Cost231 => "cost231",
            Self::Ecc33 => "ecc33",
            Self::Sui => "sui",
            Self::Ericsson => "ericsson",
        }
    }

    /// Position in the fixed ranking order.
    pub fn order_index(self) -> usize {
        Self::ALL.iter().position(|m| *m == self).unwrap()
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fspl" => Ok(Self::Fspl),
            "hata" => Ok(Self::Hata),
            "cost231" => Ok(Self::Cost231),
            "ecc33" => Ok(Self::Ecc33),
            "sui" => Ok(Self::Sui),
            "ericsson" => Ok(Self::Ericsson),
            other => Err(format!(
                "unknown model `{other}` (expected fspl, hata, cost231, ecc33, sui or ericsson)"
            )),
        }
    }
}

/// Free-space path loss: `32.44 + 20 log10(d_km) + 20 log10(f_MHz)`.
pub fn fspl(f: Frequency, d: Distance) -> f64 {
    32.44 + 20.0 * d.km().log10() + 20.0 * f.mhz().log10()
}

/// Mobile-antenna correction `a(hr)` shared by the Hata and COST-231 models.
///
/// Large cities use the dedicated expression (with a split at 300 MHz); every
/// other environment class uses the medium/small-city form.
pub fn hata_mobile_correction(f: Frequency, mobile_height_m: f64, env: EnvironmentClass) -> f64 {
    debug_assert!(mobile_height_m > 0.0);
    match env {
        EnvironmentClass::UrbanLargeCity => {
            if f.mhz() > 300.0 {
                3.2 * (11.75 * mobile_height_m).log10().powi(2) - 4.97
            } else {
                8.29 * (1.54 * mobile_height_m).log10().powi(2) - 1.1
            }
        }
        _ => {
            let log_f = f.mhz().log10();
            (1.1 * log_f - 0.7) * mobile_height_m - (1.56 * log_f - 0.8)
        }
    }
}

/// Hata model. Suburban and open areas apply the suburban correction to the
/// urban form.
pub fn hata(ctx: &RadioContext, d: Distance) -> f64 {
    let f_mhz = ctx.frequency().mhz();
    let log_f = f_mhz.log10();
    let log_hb = ctx.base_height_m().log10();
    let a = hata_mobile_correction(ctx.frequency(), ctx.mobile_height_m(), ctx.environment());
    let urban = 69.55 + 26.16 * log_f - 13.82 * log_hb - a
        + (44.9 - 6.55 * log_hb) * d.km().log10();
    if ctx.environment().is_urban() {
        urban
    } else {
        urban - 2.0 * (f_mhz / 28.0).log10().powi(2) - 5.4
    }
}

/// COST-231 Hata extension. The area correction is 3 dB in urban
/// environments and 0 dB in suburban or open ones.
pub fn cost231(ctx: &RadioContext, d: Distance) -> f64 {
    let log_f = ctx.frequency().mhz().log10();
    let log_hb = ctx.base_height_m().log10();
    let a = hata_mobile_correction(ctx.frequency(), ctx.mobile_height_m(), ctx.environment());
    let area_correction = if ctx.environment().is_urban() { 3.0 } else { 0.0 };
    46.3 + 33.9 * log_f - 13.82 * log_hb - a
        + (44.9 - 6.55 * log_hb) * d.km().log10()
        + area_correction
}

/// ECC-33 model. Frequency enters in GHz.
pub fn ecc33(ctx: &RadioContext, d: Distance) -> f64 {
    let log_f = ctx.frequency().ghz().log10();
    let log_d = d.km().log10();
    let free_space = 92.4 + 20.0 * log_d + 20.0 * log_f;
    let basic_median = 20.41 + 9.83 * log_d + 7.894 * log_f + 9.56 * log_f.powi(2);
    let base_gain = (ctx.base_height_m() / 200.0).log10() * (13.958 + 5.8 * log_d.powi(2));
    free_space + basic_median - base_gain - ecc33_receiver_gain(ctx)
}

fn ecc33_receiver_gain(ctx: &RadioContext) -> f64 {
    let hr = ctx.mobile_height_m();
    match ctx.environment() {
        EnvironmentClass::UrbanLargeCity => 0.759 * hr - 1.862,
        _ => (42.57 + 13.7 * ctx.frequency().ghz().log10()) * (hr.log10() - 0.585),
    }
}

/// SUI fixed intercept `A = 20 log10(4 pi d0 / lambda)`.
pub fn sui_intercept(ctx: &RadioContext) -> f64 {
    let d0_m = ctx.reference_distance().meters();
    20.0 * (4.0 * std::f64::consts::PI * d0_m / ctx.frequency().wavelength_m()).log10()
}

/// SUI terrain exponent `gamma = a - b*hb + c/hb`.
pub fn sui_exponent(ctx: &RadioContext) -> f64 {
    let t = ctx.terrain().constants();
    let hb = ctx.base_height_m();
    t.a - t.b_per_m * hb + t.c_m / hb
}

/// SUI model: `A + 10 gamma log10(d/d0) + s`. Only defined from the
/// reference distance outward.
pub fn sui(ctx: &RadioContext, d: Distance) -> Result<f64, DomainError> {
    let d0 = ctx.reference_distance();
    if d.meters() < d0.meters() {
        return Err(DomainError::BelowReferenceDistance {
            distance_m: d.meters(),
            reference_m: d0.meters(),
        });
    }
    Ok(sui_intercept(ctx)
        + 10.0 * sui_exponent(ctx) * (d.meters() / d0.meters()).log10()
        + ctx.shadowing_db())
}

/// Ericsson frequency term `g(f) = 44.49 log10(f) - 4.78 (log10 f)^2`.
pub fn ericsson_frequency_gain(f: Frequency) -> f64 {
    let log_f = f.mhz().log10();
    44.49 * log_f - 4.78 * log_f.powi(2)
}

/// Ericsson model with explicit constants. Distance enters in km.
pub fn ericsson(ctx: &RadioContext, params: &EricssonParams, d: Distance) -> f64 {
    let log_d = d.km().log10();
    let log_hb = ctx.base_height_m().log10();
    params.a0 + params.a1 * log_d + params.a2 * log_hb + params.a3 * log_hb * log_d
        - 3.2 * (11.75 * ctx.mobile_height_m()).log10().powi(2)
        + ericsson_frequency_gain(ctx.frequency())
}

/// Evaluates one base model at one distance.
pub fn predict(
    model: ModelId,
    ctx: &RadioContext,
    params: &EricssonParams,
    d: Distance,
) -> Result<f64, DomainError> {
    match model {
        ModelId::Fspl => Ok(fspl(ctx.frequency(), d)),
        ModelId::Hata => Ok(hata(ctx, d)),
        ModelId::Cost231 => Ok(cost231(ctx, d)),
        ModelId::Ecc33 => Ok(ecc33(ctx, d)),
        ModelId::Sui => sui(ctx, d),
        ModelId::Ericsson => Ok(ericsson(ctx, params, d)),
    }
}

/// Soft applicability checks for a model against a context. Never blocks
/// evaluation; the SUI constants are applied at both campaign bands even
/// though the model is stated for f < 2 GHz.
pub fn applicability_warnings(model: ModelId, ctx: &RadioContext) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if model == ModelId::Sui {
        let mhz = ctx.frequency().mhz();
        if mhz >= 2000.0 {
            warnings.push(Warning::SuiFrequencyOutOfRange { mhz });
        }
        let hb = ctx.base_height_m();
        if !(10.0 < hb && hb < 80.0) {
            warnings.push(Warning::SuiBaseHeightOutOfRange { base_height_m: hb });
        }
    }
    warnings
}

/// A base model or a calibrated variant carrying an additive offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathLossModel {
    Base(ModelId),
    Calibrated { base: ModelId, offset_db: f64 },
}

impl PathLossModel {
    pub fn predict(
        self,
        ctx: &RadioContext,
        params: &EricssonParams,
        d: Distance,
    ) -> Result<f64, DomainError> {
        match self {
            Self::Base(id) => predict(id, ctx, params, d),
            Self::Calibrated { base, offset_db } => {
                Ok(predict(base, ctx, params, d)? + offset_db)
            }
        }
    }

    pub fn base_id(self) -> ModelId {
        match self {
            Self::Base(id) => id,
            Self::Calibrated { base, .. } => base,
        }
    }

    pub fn offset_db(self) -> f64 {
        match self {
            Self::Base(_) => 0.0,
            Self::Calibrated { offset_db, .. } => offset_db,
        }
    }
}

impl From<ModelId> for PathLossModel {
    fn from(id: ModelId) -> Self {
        Self::Base(id)
    }
}

impl fmt::Display for PathLossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Base(id) => id.fmt(f),
            Self::Calibrated { base, offset_db } => {
                write!(f, "{base}{offset_db:+.4}dB")
            }
        }
    }
}

/// A model's predicted loss over a distance sweep. Distances are strictly
/// increasing and every loss value is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLossCurve {
    model: PathLossModel,
    points: Vec<(Distance, f64)>,
}

impl PathLossCurve {
    pub fn new(
        model: PathLossModel,
        points: Vec<(Distance, f64)>,
    ) -> Result<Self, DomainError> {
        for (i, (d, loss)) in points.iter().enumerate() {
            if !loss.is_finite() {
                return Err(DomainError::NotFinite {
                    quantity: "path loss",
                    value: *loss,
                });
            }
            if i > 0 && points[i - 1].0.meters() >= d.meters() {
                return Err(DomainError::UnorderedCurve { index: i });
            }
        }
        Ok(Self { model, points })
    }

    pub fn model(&self) -> PathLossModel {
        self.model
    }

    pub fn points(&self) -> &[(Distance, f64)] {
        &self.points
    }
}

/// Samples a model at `d_min, d_min + step, ... <= d_max`.
pub fn sweep(
    model: PathLossModel,
    ctx: &RadioContext,
    params: &EricssonParams,
    d_min: Distance,
    d_max: Distance,
    step: Distance,
) -> Result<PathLossCurve, DomainError> {
    if d_min.meters() > d_max.meters() {
        return Err(DomainError::InvalidSweep {
            d_min_m: d_min.meters(),
            d_max_m: d_max.meters(),
        });
    }
    let mut points = Vec::new();
    // Guard against float drift excluding an exactly-representable endpoint.
    let limit = d_max.meters() + step.meters() * 1e-9;
    let mut i = 0u32;
    loop {
        let d_m = d_min.meters() + f64::from(i) * step.meters();
        if d_m > limit {
            break;
        }
        let d = Distance::from_meters(d_m)?;
        points.push((d, model.predict(ctx, params, d)?));
        i += 1;
    }
    PathLossCurve::new(model, points)
}
