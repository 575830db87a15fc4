//! Unit-carrying scalars for the model formulas.
//!
//! Frequencies are stored in MHz and distances in metres. Every formula pulls
//! the representation it needs (GHz, km, wavelength) through an accessor, so
//! a raw number can never enter a model in the wrong unit.

use crate::error::DomainError;

/// Speed of light in metres per second.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

fn check_positive(quantity: &'static str, value: f64) -> Result<(), DomainError> {
    if !value.is_finite() {
        return Err(DomainError::NotFinite { quantity, value });
    }
    if value <= 0.0 {
        return Err(DomainError::NonPositive { quantity, value });
    }
    Ok(())
}

/// Carrier frequency. Constructed in MHz or GHz, always positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Frequency {
    mhz: f64,
}

impl Frequency {
    pub fn from_mhz(mhz: f64) -> Result<Self, DomainError> {
        check_positive("frequency", mhz)?;
        Ok(Self { mhz })
    }

    pub fn from_ghz(ghz: f64) -> Result<Self, DomainError> {
        Self::from_mhz(ghz * 1000.0)
    }

    pub fn mhz(self) -> f64 {
        self.mhz
    }

    pub fn ghz(self) -> f64 {
        self.mhz / 1000.0
    }

    pub fn hz(self) -> f64 {
        self.mhz * 1e6
    }

    /// Free-space wavelength in metres.
    pub fn wavelength_m(self) -> f64 {
        SPEED_OF_LIGHT_M_PER_S / self.hz()
    }
}

/// Transmitter-receiver separation. Always positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Distance {
    meters: f64,
}

impl Distance {
    pub fn from_meters(meters: f64) -> Result<Self, DomainError> {
        check_positive("distance", meters)?;
        Ok(Self { meters })
    }

    pub fn from_km(km: f64) -> Result<Self, DomainError> {
        Self::from_meters(km * 1000.0)
    }

    /// Wraps a value already known to be positive and finite.
    pub(crate) const fn from_meters_unchecked(meters: f64) -> Self {
        Self { meters }
    }

    pub fn meters(self) -> f64 {
        self.meters
    }

    pub fn km(self) -> f64 {
        self.meters / 1000.0
    }
}
