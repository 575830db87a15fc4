//! Soft diagnostics the pipeline reports without failing.

use std::fmt;

/// A non-fatal condition worth surfacing in reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// SUI is stated for f < 2 GHz; evaluation proceeds anyway.
    SuiFrequencyOutOfRange { mhz: f64 },
    /// SUI is stated for 10 m < hb < 80 m; evaluation proceeds anyway.
    SuiBaseHeightOutOfRange { base_height_m: f64 },
    /// RSRP readings normally fall in [-140, -40] dBm.
    RsrpOutOfTypicalRange { line: u64, rsrp_dbm: f64 },
    /// The measurement campaign ran at 800 and 2600 MHz.
    UnexpectedFrequency { mhz: f64 },
    /// Samples past the last distance bin were discarded.
    SamplesBeyondMaxDropped { count: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SuiFrequencyOutOfRange { mhz } => write!(
                f,
                "sui: frequency {mhz} MHz is outside the model's stated range (f < 2000 MHz)"
            ),
            Self::SuiBaseHeightOutOfRange { base_height_m } => write!(
                f,
                "sui: base antenna height {base_height_m} m is outside the model's stated range (10 m < hb < 80 m)"
            ),
            Self::RsrpOutOfTypicalRange { line, rsrp_dbm } => write!(
                f,
                "line {line}: rsrp {rsrp_dbm} dBm is outside the typical [-140, -40] dBm range"
            ),
            Self::UnexpectedFrequency { mhz } => write!(
                f,
                "frequency {mhz} MHz is not one of the campaign bands (800 or 2600 MHz)"
            ),
            Self::SamplesBeyondMaxDropped { count } => write!(
                f,
                "{count} sample(s) beyond the last distance bin were dropped"
            ),
        }
    }
}
