//! Flat `key = value` site-configuration files.
//!
//! One pair per line; `#` starts a comment and blank lines are ignored.
//! Recognized keys:
//!
//! ```text
//! site_id              = adum
//! frequency_mhz        = 800
//! base_height_m        = 24
//! mobile_height_m      = 1.5            # default 1.5
//! environment          = urban-large    # urban-large | urban-medium | suburban | open
//! terrain              = A              # default: A urban, B otherwise
//! shadowing_db         = 10.6           # default: 10.6 urban, 8.2 otherwise
//! reference_distance_m = 50             # default 50
//! tx_power_dbm         = 46             # link-budget overrides, defaults as shown
//! tx_gain_dbi          = 18.15
//! rx_gain_dbi          = 0
//! connector_loss_db    = 4.7
//! body_loss_db         = 3
//! combiner_loss_db     = 3
//! ericsson_a0          = 36.2           # model constants, defaults by environment
//! ericsson_a1          = 30.2
//! ericsson_a2          = 12.0
//! ericsson_a3          = 0.1
//! ```

use std::fs;
use std::path::Path;

use pathcal_core::{
    Distance, EnvironmentClass, EricssonParams, Frequency, LinkBudget, ModelId, RadioContext,
    TerrainCategory, Warning,
};

use crate::CliError;

/// Site parameters gathered from a config file and/or command-line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SiteSettings {
    pub site_id: Option<String>,
    pub frequency_mhz: Option<f64>,
    pub base_height_m: Option<f64>,
    pub mobile_height_m: Option<f64>,
    pub environment: Option<EnvironmentClass>,
    pub terrain: Option<TerrainCategory>,
    pub shadowing_db: Option<f64>,
    pub reference_distance_m: Option<f64>,
    pub tx_power_dbm: Option<f64>,
    pub tx_gain_dbi: Option<f64>,
    pub rx_gain_dbi: Option<f64>,
    pub connector_loss_db: Option<f64>,
    pub body_loss_db: Option<f64>,
    pub combiner_loss_db: Option<f64>,
    pub ericsson_a0: Option<f64>,
    pub ericsson_a1: Option<f64>,
    pub ericsson_a2: Option<f64>,
    pub ericsson_a3: Option<f64>,
}

impl SiteSettings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text).map_err(|e| {
            CliError::Usage(format!("config {}: {e}", path.display()))
        })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut settings = Self::default();
        for (index, raw_line) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {line_no}: expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            if value.is_empty() {
                return Err(format!("line {line_no}: empty value for `{key}`"));
            }
            let number = || {
                value
                    .parse::<f64>()
                    .map_err(|_| format!("line {line_no}: `{key}` is not a number: `{value}`"))
            };
            match key {
                "site_id" => settings.site_id = Some(value.to_owned()),
                "frequency_mhz" => settings.frequency_mhz = Some(number()?),
                "base_height_m" => settings.base_height_m = Some(number()?),
                "mobile_height_m" => settings.mobile_height_m = Some(number()?),
                "environment" => {
                    settings.environment = Some(
                        value
                            .parse()
                            .map_err(|e| format!("line {line_no}: {e}"))?,
                    )
                }
                "terrain" => {
                    settings.terrain = Some(
                        value
                            .parse()
                            .map_err(|e| format!("line {line_no}: {e}"))?,
                    )
                }
                "shadowing_db" => settings.shadowing_db = Some(number()?),
                "reference_distance_m" => settings.reference_distance_m = Some(number()?),
                "tx_power_dbm" => settings.tx_power_dbm = Some(number()?),
                "tx_gain_dbi" => settings.tx_gain_dbi = Some(number()?),
                "rx_gain_dbi" => settings.rx_gain_dbi = Some(number()?),
                "connector_loss_db" => settings.connector_loss_db = Some(number()?),
                "body_loss_db" => settings.body_loss_db = Some(number()?),
                "combiner_loss_db" => settings.combiner_loss_db = Some(number()?),
                "ericsson_a0" => settings.ericsson_a0 = Some(number()?),
                "ericsson_a1" => settings.ericsson_a1 = Some(number()?),
                "ericsson_a2" => settings.ericsson_a2 = Some(number()?),
                "ericsson_a3" => settings.ericsson_a3 = Some(number()?),
                other => return Err(format!("line {line_no}: unknown key `{other}`")),
            }
        }
        Ok(settings)
    }

    fn require(&self, field: Option<f64>, key: &str) -> Result<f64, CliError> {
        field.ok_or_else(|| {
            CliError::Usage(format!(
                "missing `{key}`: set it in the config file or pass the matching flag"
            ))
        })
    }

    /// Builds the radio context every model except free space needs.
    pub fn radio_context(&self) -> Result<RadioContext, CliError> {
        let frequency_mhz = self.require(self.frequency_mhz, "frequency_mhz")?;
        let base_height_m = self.require(self.base_height_m, "base_height_m")?;
        let environment = self.environment.ok_or_else(|| {
            CliError::Usage("missing `environment`: set it in the config file or pass --env".into())
        })?;
        self.build_context(frequency_mhz, base_height_m, environment)
    }

    /// Builds a context for one model. Free space only reads the frequency,
    /// so a bare `frequency_mhz` suffices; stand-ins fill the unused fields.
    pub fn radio_context_for(&self, base: ModelId) -> Result<RadioContext, CliError> {
        if base == ModelId::Fspl {
            let frequency_mhz = self.require(self.frequency_mhz, "frequency_mhz")?;
            let base_height_m = self.base_height_m.unwrap_or(30.0);
            let environment = self
                .environment
                .unwrap_or(EnvironmentClass::UrbanMediumSmallCity);
            self.build_context(frequency_mhz, base_height_m, environment)
        } else {
            self.radio_context()
        }
    }

    fn build_context(
        &self,
        frequency_mhz: f64,
        base_height_m: f64,
        environment: EnvironmentClass,
    ) -> Result<RadioContext, CliError> {
        let frequency = Frequency::from_mhz(frequency_mhz)?;
        let mobile_height_m = self.mobile_height_m.unwrap_or(1.5);
        let mut ctx = RadioContext::new(frequency, base_height_m, mobile_height_m, environment)?;
        if let Some(terrain) = self.terrain {
            ctx = ctx.with_terrain(terrain);
        }
        if let Some(s) = self.shadowing_db {
            ctx = ctx.with_shadowing_db(s)?;
        }
        if let Some(d0) = self.reference_distance_m {
            ctx = ctx.with_reference_distance(Distance::from_meters(d0)?);
        }
        Ok(ctx)
    }

    pub fn link_budget(&self) -> Result<LinkBudget, CliError> {
        let mut budget = LinkBudget::default();
        if let Some(v) = self.tx_power_dbm {
            budget = budget.with_tx_power_dbm(v)?;
        }
        if let Some(v) = self.tx_gain_dbi {
            budget = budget.with_tx_antenna_gain_dbi(v)?;
        }
        if let Some(v) = self.rx_gain_dbi {
            budget = budget.with_rx_antenna_gain_dbi(v)?;
        }
        if let Some(v) = self.connector_loss_db {
            budget = budget.with_connector_loss_db(v)?;
        }
        if let Some(v) = self.body_loss_db {
            budget = budget.with_body_loss_db(v)?;
        }
        if let Some(v) = self.combiner_loss_db {
            budget = budget.with_combiner_loss_db(v)?;
        }
        Ok(budget)
    }

    pub fn ericsson_params(&self, environment: EnvironmentClass) -> EricssonParams {
        let defaults = EricssonParams::for_environment(environment);
        EricssonParams {
            a0: self.ericsson_a0.unwrap_or(defaults.a0),
            a1: self.ericsson_a1.unwrap_or(defaults.a1),
            a2: self.ericsson_a2.unwrap_or(defaults.a2),
            a3: self.ericsson_a3.unwrap_or(defaults.a3),
        }
    }

    /// Campaign-band check on the configured frequency.
    pub fn band_warning(&self) -> Option<Warning> {
        match self.frequency_mhz {
            Some(mhz) if mhz != 800.0 && mhz != 2600.0 => {
                Some(Warning::UnexpectedFrequency { mhz })
            }
            _ => None,
        }
    }
}
