//! Drive-test log ingestion: CSV parsing, sector averaging, distance
//! binning, and conversion to a path-loss measurement set.
//!
//! The CSV schema is `site_id,sector,distance_m,rsrp_dbm[,lat,lon]`. Unknown
//! columns are ignored; `lat`/`lon` are carried through as opaque strings.
//! Averaging is done on dBm values directly, reproducing the campaign's
//! workflow, in which order of averaging and path-loss conversion does not
//! matter.

use std::io;

use crate::budget::{measured_path_loss, LinkBudget, RsrpSample};
use crate::calibration::MeasurementSet;
use crate::context::{EnvironmentClass, RadioContext};
use crate::error::IngestError;
use crate::units::{Distance, Frequency};
use crate::warnings::Warning;

/// Default bin width: one bin per campaign sampling interval.
pub const DEFAULT_BIN_WIDTH_M: f64 = 50.0;
/// Default last bin center; samples past its window are dropped.
pub const DEFAULT_MAX_DISTANCE_M: f64 = 500.0;

/// Site-level facts attached to a log from the site configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMetadata {
    pub frequency: Frequency,
    pub base_height_m: f64,
    pub environment: EnvironmentClass,
}

/// A parsed drive-test log: one site, any number of sector readings.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveTestLog {
    pub site_id: String,
    pub metadata: Option<LogMetadata>,
    pub rows: Vec<RsrpSample>,
}

const COL_SITE_ID: &str = "site_id";
const COL_SECTOR: &str = "sector";
const COL_DISTANCE: &str = "distance_m";
const COL_RSRP: &str = "rsrp_dbm";
const COL_LAT: &str = "lat";
const COL_LON: &str = "lon";

struct Columns {
    site_id: usize,
    sector: usize,
    distance: usize,
    rsrp: usize,
    lat: Option<usize>,
    lon: Option<usize>,
}

impl Columns {
    fn locate(headers: &csv::StringRecord) -> Result<Self, IngestError> {
        let find = |name: &'static str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or(IngestError::MissingColumn { column: name })
        };
        Ok(Self {
            site_id: find(COL_SITE_ID)?,
            sector: find(COL_SECTOR)?,
            distance: find(COL_DISTANCE)?,
            rsrp: find(COL_RSRP)?,
            lat: headers.iter().position(|h| h == COL_LAT),
            lon: headers.iter().position(|h| h == COL_LON),
        })
    }
}

/// Parses a drive-test CSV. Returns the log plus soft warnings (RSRP
/// readings outside the typical window).
pub fn parse_csv<R: io::Read>(reader: R) -> Result<(DriveTestLog, Vec<Warning>), IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let headers = csv_reader.headers()?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(IngestError::EmptyFile);
    }
    let columns = Columns::locate(&headers)?;

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut site_id: Option<String> = None;

    for record in csv_reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |index: usize, column: &'static str| {
            record
                .get(index)
                .filter(|v| !v.is_empty())
                .ok_or(IngestError::InvalidCell {
                    line,
                    column,
                    value: String::new(),
                })
        };

        let row_site = cell(columns.site_id, COL_SITE_ID)?;
        match &site_id {
            None => site_id = Some(row_site.to_owned()),
            Some(expected) if expected != row_site => {
                return Err(IngestError::MixedSiteIds {
                    line,
                    expected: expected.clone(),
                    found: row_site.to_owned(),
                });
            }
            _ => {}
        }

        let sector_text = cell(columns.sector, COL_SECTOR)?;
        let sector: i64 = sector_text.parse().map_err(|_| IngestError::InvalidCell {
            line,
            column: COL_SECTOR,
            value: sector_text.to_owned(),
        })?;
        if !(1..=3).contains(&sector) {
            return Err(IngestError::SectorOutOfRange {
                line,
                value: sector_text.to_owned(),
            });
        }

        let distance_text = cell(columns.distance, COL_DISTANCE)?;
        let distance = distance_text
            .parse::<f64>()
            .ok()
            .and_then(|m| Distance::from_meters(m).ok())
            .ok_or_else(|| IngestError::InvalidCell {
                line,
                column: COL_DISTANCE,
                value: distance_text.to_owned(),
            })?;

        let rsrp_text = cell(columns.rsrp, COL_RSRP)?;
        let rsrp_dbm: f64 = rsrp_text
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| IngestError::InvalidCell {
                line,
                column: COL_RSRP,
                value: rsrp_text.to_owned(),
            })?;

        let sample = RsrpSample::new(row_site, sector, distance, rsrp_dbm)
            .expect("cells were validated above")
            .with_coordinates(
                columns
                    .lat
                    .and_then(|i| record.get(i))
                    .filter(|v| !v.is_empty())
                    .map(str::to_owned),
                columns
                    .lon
                    .and_then(|i| record.get(i))
                    .filter(|v| !v.is_empty())
                    .map(str::to_owned),
            );
        if !sample.rsrp_in_typical_range() {
            warnings.push(Warning::RsrpOutOfTypicalRange { line, rsrp_dbm });
        }
        rows.push(sample);
    }

    let site_id = site_id.ok_or(IngestError::NoSamples)?;
    Ok((
        DriveTestLog {
            site_id,
            metadata: None,
            rows,
        },
        warnings,
    ))
}

/// Renders a log back to the CSV schema. Floats use the shortest
/// round-trippable form, so `parse_csv` recovers the log exactly.
pub fn to_csv_string(log: &DriveTestLog) -> String {
    let has_coords = log
        .rows
        .iter()
        .any(|r| r.lat().is_some() || r.lon().is_some());
    let mut out = String::from("site_id,sector,distance_m,rsrp_dbm");
    if has_coords {
        out.push_str(",lat,lon");
    }
    out.push('\n');
    for row in &log.rows {
        out.push_str(&format!(
            "{},{},{},{}",
            row.site_id(),
            row.sector(),
            row.distance().meters(),
            row.rsrp_dbm()
        ));
        if has_coords {
            out.push_str(&format!(
                ",{},{}",
                row.lat().unwrap_or(""),
                row.lon().unwrap_or("")
            ));
        }
        out.push('\n');
    }
    out
}

/// Arithmetic mean of the dBm readings at each exact distance, across
/// whichever sectors reported there. Output is sorted by distance.
pub fn average_sectors(log: &DriveTestLog) -> Vec<(Distance, f64)> {
    let mut readings: Vec<(f64, f64)> = log
        .rows
        .iter()
        .map(|r| (r.distance().meters(), r.rsrp_dbm()))
        .collect();
    readings.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut averaged = Vec::new();
    let mut i = 0;
    while i < readings.len() {
        let d = readings[i].0;
        let mut sum = 0.0;
        let mut count = 0usize;
        while i < readings.len() && readings[i].0 == d {
            sum += readings[i].1;
            count += 1;
            i += 1;
        }
        averaged.push((Distance::from_meters_unchecked(d), sum / count as f64));
    }
    averaged
}

/// One distance bin with the mean RSRP of the samples assigned to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBin {
    /// Bin center, a multiple of the bin width.
    pub center: Distance,
    pub mean_rsrp_dbm: f64,
    pub count: usize,
}

/// Binning outcome: the populated bins plus how many samples fell past the
/// last bin's window.
#[derive(Debug, Clone, PartialEq)]
pub struct Binned {
    pub bins: Vec<DistanceBin>,
    pub dropped: usize,
}

/// Assigns samples to the nearest bin center `k * width`, `k = 1..max/width`.
///
/// Each center owns the half-open window `[center - width/2, center +
/// width/2)`; samples past the last window are dropped and counted. Bin
/// counts plus the dropped count always equal the input length.
pub fn bin_by_distance(samples: &[(Distance, f64)], width: Distance, max: Distance) -> Binned {
    let width_m = width.meters();
    let k_max = ((max.meters() / width_m) + 1e-9).floor() as i64;

    let mut sums = vec![0.0; k_max as usize + 1];
    let mut counts = vec![0usize; k_max as usize + 1];
    let mut dropped = 0usize;

    for &(d, rsrp) in samples {
        let k = ((d.meters() / width_m) + 0.5).floor() as i64;
        let k = k.max(1);
        if k > k_max {
            dropped += 1;
            continue;
        }
        sums[k as usize] += rsrp;
        counts[k as usize] += 1;
    }

    let bins = (1..=k_max as usize)
        .filter(|&k| counts[k] > 0)
        .map(|k| DistanceBin {
            center: Distance::from_meters_unchecked(k as f64 * width_m),
            mean_rsrp_dbm: sums[k] / counts[k] as f64,
            count: counts[k],
        })
        .collect();
    Binned { bins, dropped }
}

/// Full pipeline for one log: average sectors, bin by distance, convert each
/// bin's mean RSRP to path loss through the budget's EIRP.
pub fn to_measurement_set(
    log: &DriveTestLog,
    budget: &LinkBudget,
    ctx: &RadioContext,
) -> Result<(MeasurementSet, Vec<Warning>), IngestError> {
    let averaged = average_sectors(log);
    let binned = bin_by_distance(
        &averaged,
        Distance::from_meters_unchecked(DEFAULT_BIN_WIDTH_M),
        Distance::from_meters_unchecked(DEFAULT_MAX_DISTANCE_M),
    );

    let mut warnings = Vec::new();
    if binned.dropped > 0 {
        warnings.push(Warning::SamplesBeyondMaxDropped {
            count: binned.dropped,
        });
    }
    if binned.bins.len() < 2 {
        return Err(IngestError::DegenerateSet {
            bins: binned.bins.len(),
        });
    }

    let eirp = budget.eirp_dbm();
    let samples = binned
        .bins
        .iter()
        .map(|bin| (bin.center, measured_path_loss(eirp, bin.mean_rsrp_dbm)))
        .collect();
    let set = MeasurementSet::new(&log.site_id, *ctx, samples)?;
    Ok((set, warnings))
}
