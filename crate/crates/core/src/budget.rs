//! Link budget: EIRP and the conversion from measured RSRP to path loss.

use crate::error::DomainError;
use crate::units::Distance;

fn check_finite(quantity: &'static str, value: f64) -> Result<(), DomainError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NotFinite { quantity, value })
    }
}

fn check_loss(quantity: &'static str, value: f64) -> Result<(), DomainError> {
    check_finite(quantity, value)?;
    if value < 0.0 {
        return Err(DomainError::Negative { quantity, value });
    }
    Ok(())
}

/// Transmit-side power, gains and losses. All losses are non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    tx_power_dbm: f64,
    tx_antenna_gain_dbi: f64,
    rx_antenna_gain_dbi: f64,
    connector_loss_db: f64,
    body_loss_db: f64,
    combiner_loss_db: f64,
}

impl Default for LinkBudget {
    /// Common LTE macro-site values: 40 W amplifier, 18.15 dBi panel,
    /// unity-gain handset, 4.7 dB connector, 3 dB body, 3 dB combiner.
    fn default() -> Self {
        Self {
            tx_power_dbm: 46.0,
            tx_antenna_gain_dbi: 18.15,
            rx_antenna_gain_dbi: 0.0,
            connector_loss_db: 4.7,
            body_loss_db: 3.0,
            combiner_loss_db: 3.0,
        }
    }
}

impl LinkBudget {
    pub fn new(
        tx_power_dbm: f64,
        tx_antenna_gain_dbi: f64,
        rx_antenna_gain_dbi: f64,
        connector_loss_db: f64,
        body_loss_db: f64,
        combiner_loss_db: f64,
    ) -> Result<Self, DomainError> {
        Self {
            tx_power_dbm,
            tx_antenna_gain_dbi,
            rx_antenna_gain_dbi,
            connector_loss_db,
            body_loss_db,
            combiner_loss_db,
        }
        .validated()
    }

    fn validated(self) -> Result<Self, DomainError> {
        check_finite("transmit power", self.tx_power_dbm)?;
        check_finite("transmit antenna gain", self.tx_antenna_gain_dbi)?;
        check_finite("receive antenna gain", self.rx_antenna_gain_dbi)?;
        check_loss("connector loss", self.connector_loss_db)?;
        check_loss("body loss", self.body_loss_db)?;
        check_loss("combiner loss", self.combiner_loss_db)?;
        Ok(self)
    }

    pub fn with_tx_power_dbm(mut self, v: f64) -> Result<Self, DomainError> {
        self.tx_power_dbm = v;
        self.validated()
    }

    pub fn with_tx_antenna_gain_dbi(mut self, v: f64) -> Result<Self, DomainError> {
        self.tx_antenna_gain_dbi = v;
        self.validated()
    }

    pub fn with_rx_antenna_gain_dbi(mut self, v: f64) -> Result<Self, DomainError> {
        self.rx_antenna_gain_dbi = v;
        self.validated()
    }

    pub fn with_connector_loss_db(mut self, v: f64) -> Result<Self, DomainError> {
        self.connector_loss_db = v;
        self.validated()
    }

    pub fn with_body_loss_db(mut self, v: f64) -> Result<Self, DomainError> {
        self.body_loss_db = v;
        self.validated()
    }

    pub fn with_combiner_loss_db(mut self, v: f64) -> Result<Self, DomainError> {
        self.combiner_loss_db = v;
        self.validated()
    }

    pub fn tx_power_dbm(&self) -> f64 {
        self.tx_power_dbm
    }

    pub fn tx_antenna_gain_dbi(&self) -> f64 {
        self.tx_antenna_gain_dbi
    }

    pub fn rx_antenna_gain_dbi(&self) -> f64 {
        self.rx_antenna_gain_dbi
    }

    pub fn connector_loss_db(&self) -> f64 {
        self.connector_loss_db
    }

    pub fn body_loss_db(&self) -> f64 {
        self.body_loss_db
    }

    pub fn combiner_loss_db(&self) -> f64 {
        self.combiner_loss_db
    }

    /// Effective isotropic radiated power:
    /// `Pt + Gt + Gr - Lcon - Lbo - Lco`, carried at full precision.
    pub fn eirp_dbm(&self) -> f64 {
        self.tx_power_dbm + self.tx_antenna_gain_dbi + self.rx_antenna_gain_dbi
            - self.connector_loss_db
            - self.body_loss_db
            - self.combiner_loss_db
    }
}

/// Experienced path loss from a received-power reading: `EIRP - Pr`.
pub fn measured_path_loss(eirp_dbm: f64, rsrp_dbm: f64) -> f64 {
    eirp_dbm - rsrp_dbm
}

/// One RSRP reading from a drive-test log.
#[derive(Debug, Clone, PartialEq)]
pub struct RsrpSample {
    site_id: String,
    sector: u8,
    distance: Distance,
    rsrp_dbm: f64,
    lat: Option<String>,
    lon: Option<String>,
}

impl RsrpSample {
    pub fn new(
        site_id: impl Into<String>,
        sector: i64,
        distance: Distance,
        rsrp_dbm: f64,
    ) -> Result<Self, DomainError> {
        if !(1..=3).contains(&sector) {
            return Err(DomainError::SectorOutOfRange { sector });
        }
        check_finite("rsrp", rsrp_dbm)?;
        Ok(Self {
            site_id: site_id.into(),
            sector: sector as u8,
            distance,
            rsrp_dbm,
            lat: None,
            lon: None,
        })
    }

    /// Attaches raw coordinate strings; they are carried through untouched.
    pub fn with_coordinates(mut self, lat: Option<String>, lon: Option<String>) -> Self {
        self.lat = lat;
        self.lon = lon;
        self
    }

    pub fn site_id(&self) -> &str {
        &self.site_id
    }

    pub fn sector(&self) -> u8 {
        self.sector
    }

    pub fn distance(&self) -> Distance {
        self.distance
    }

    pub fn rsrp_dbm(&self) -> f64 {
        self.rsrp_dbm
    }

    pub fn lat(&self) -> Option<&str> {
        self.lat.as_deref()
    }

    pub fn lon(&self) -> Option<&str> {
        self.lon.as_deref()
    }

    /// True when the reading falls inside the usual LTE RSRP window.
    pub fn rsrp_in_typical_range(&self) -> bool {
        (-140.0..=-40.0).contains(&self.rsrp_dbm)
    }
}
