//! Shared model inputs: environment class, SUI terrain category, antenna
//! heights, shadowing, and the tunable Ericsson constants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::units::{Distance, Frequency};

/// Reference distance used throughout the measurement campaign.
pub const DEFAULT_REFERENCE_DISTANCE_M: f64 = 50.0;

/// Propagation environment class.
///
/// The class selects the Hata/COST-231 mobile-antenna correction variant, the
/// COST-231 area correction, the ECC-33 receiver-gain variant, the default
/// Ericsson constants, and the default shadowing allowance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnvironmentClass {
    #[serde(rename = "urban-large")]
    UrbanLargeCity,
    #[serde(rename = "urban-medium")]
    UrbanMediumSmallCity,
    #[serde(rename = "suburban")]
    Suburban,
    #[serde(rename = "open")]
    Open,
}

impl EnvironmentClass {
    pub fn is_urban(self) -> bool {
        matches!(self, Self::UrbanLargeCity | Self::UrbanMediumSmallCity)
    }

    /// Default shadowing allowance: 10.6 dB urban, 8.2 dB otherwise.
    pub fn default_shadowing_db(self) -> f64 {
        if self.is_urban() {
            10.6
        } else {
            8.2
        }
    }

    /// Default SUI terrain mapping: urban sites on category A, the rest on B.
    pub fn default_terrain(self) -> TerrainCategory {
        if self.is_urban() {
            TerrainCategory::A
        } else {
            TerrainCategory::B
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::UrbanLargeCity => "urban-large",
            Self::UrbanMediumSmallCity => "urban-medium",
            Self::Suburban => "suburban",
            Self::Open => "open",
        }
    }
}

impl fmt::Display for EnvironmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnvironmentClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "urban-large" => Ok(Self::UrbanLargeCity),
            "urban-medium" => Ok(Self::UrbanMediumSmallCity),
            "suburban" => Ok(Self::Suburban),
            "open" => Ok(Self::Open),
            other => Err(format!(
                "unknown environment `{other}` (expected urban-large, urban-medium, suburban or open)"
            )),
        }
    }
}

/// SUI terrain category with its tabulated constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TerrainCategory {
    A,
    B,
    C,
}

/// The `(a, b, c)` constants of a terrain category.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerrainConstants {
    pub a: f64,
    /// Per-metre coefficient multiplying the base-station height.
    pub b_per_m: f64,
    /// Metre-valued coefficient divided by the base-station height.
    pub c_m: f64,
}

impl TerrainCategory {
    pub fn constants(self) -> TerrainConstants {
        match self {
            Self::A => TerrainConstants {
                a: 4.6,
                b_per_m: 0.0075,
                c_m: 12.6,
            },
            Self::B => TerrainConstants {
                a: 4.0,
                b_per_m: 0.0065,
                c_m: 17.1,
            },
            Self::C => TerrainConstants {
                a: 3.6,
                b_per_m: 0.005,
                c_m: 20.0,
            },
        }
    }
}

impl fmt::Display for TerrainCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
        })
    }
}

impl FromStr for TerrainCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            other => Err(format!("unknown terrain category `{other}` (expected A, B or C)")),
        }
    }
}

/// The set of inputs every model draws from.
///
/// Invariants enforced on construction: `hb > hr > 0`, shadowing within
/// [8.2, 10.6] dB, positive reference distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioContext {
    frequency: Frequency,
    base_height_m: f64,
    mobile_height_m: f64,
    environment: EnvironmentClass,
    terrain: TerrainCategory,
    shadowing_db: f64,
    reference_distance: Distance,
}

impl RadioContext {
    /// Builds a context with environment-derived defaults for terrain,
    /// shadowing, and the 50 m reference distance.
    pub fn new(
        frequency: Frequency,
        base_height_m: f64,
        mobile_height_m: f64,
        environment: EnvironmentClass,
    ) -> Result<Self, DomainError> {
        if !base_height_m.is_finite() {
            return Err(DomainError::NotFinite {
                quantity: "base antenna height",
                value: base_height_m,
            });
        }
        if mobile_height_m <= 0.0 || !mobile_height_m.is_finite() {
            return Err(DomainError::NonPositive {
                quantity: "mobile antenna height",
                value: mobile_height_m,
            });
        }
        if base_height_m <= mobile_height_m {
            return Err(DomainError::HeightOrder {
                base_m: base_height_m,
                mobile_m: mobile_height_m,
            });
        }
        Ok(Self {
            frequency,
            base_height_m,
            mobile_height_m,
            environment,
            terrain: environment.default_terrain(),
            shadowing_db: environment.default_shadowing_db(),
            reference_distance: Distance::from_meters_unchecked(DEFAULT_REFERENCE_DISTANCE_M),
        })
    }

    pub fn with_terrain(mut self, terrain: TerrainCategory) -> Self {
        self.terrain = terrain;
        self
    }

    pub fn with_shadowing_db(mut self, shadowing_db: f64) -> Result<Self, DomainError> {
        if !(8.2..=10.6).contains(&shadowing_db) {
            return Err(DomainError::ShadowingOutOfRange {
                value: shadowing_db,
            });
        }
        self.shadowing_db = shadowing_db;
        Ok(self)
    }

    pub fn with_reference_distance(mut self, d0: Distance) -> Self {
        self.reference_distance = d0;
        self
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    pub fn base_height_m(&self) -> f64 {
        self.base_height_m
    }

    pub fn mobile_height_m(&self) -> f64 {
        self.mobile_height_m
    }

    pub fn environment(&self) -> EnvironmentClass {
        self.environment
    }

    pub fn terrain(&self) -> TerrainCategory {
        self.terrain
    }

    pub fn shadowing_db(&self) -> f64 {
        self.shadowing_db
    }

    pub fn reference_distance(&self) -> Distance {
        self.reference_distance
    }
}

/// Tunable constants of the Ericsson model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EricssonParams {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl EricssonParams {
    pub const URBAN: Self = Self {
        a0: 36.2,
        a1: 30.2,
        a2: 12.0,
        a3: 0.1,
    };

    pub const SUBURBAN: Self = Self {
        a0: 43.20,
        a1: 68.93,
        a2: 12.0,
        a3: 0.1,
    };

    /// Default constants for an environment class; open areas fall back to
    /// the suburban set.
    pub fn for_environment(env: EnvironmentClass) -> Self {
        if env.is_urban() {
            Self::URBAN
        } else {
            Self::SUBURBAN
        }
    }
}
