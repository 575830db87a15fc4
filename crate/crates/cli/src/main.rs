//! pathcal: batch path-loss prediction and drive-test calibration.
//!
//! Verbs: `predict` sweeps a model into a plot-ready CSV curve, `evaluate`
//! scores models against a measurement CSV, `calibrate` fits a constant
//! offset to a base model, `exponent` fits the path-loss exponent. Reports
//! are deterministic: identical inputs produce byte-identical output.

mod config;
mod report;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pathcal_core::{
    applicability_warnings, calibrate_bias_offset, calibrate_rmse_offset, evaluate, parse_csv,
    path_loss_exponent, select_best, sweep, to_measurement_set, validate, CalibratedModel,
    CalibrationError, Distance, DomainError, IngestError, MeasurementSet, ModelId, OffsetMethod,
    PathLossCurve, PathLossModel, RadioContext,
};

use config::SiteSettings;
use report::{CalibrationSection, CurveDocument, ReportDocument, ValidationSection};

#[derive(Parser)]
#[command(
    name = "pathcal",
    version,
    about = "Path-loss prediction and drive-test calibration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a model over a distance range and emit the curve
    Predict(PredictArgs),
    /// Score models against a drive-test measurement CSV
    Evaluate(EvaluateArgs),
    /// Fit a constant dB offset to a base model
    Calibrate(CalibrateArgs),
    /// Fit the path-loss exponent to a measurement CSV
    Exponent(ExponentArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Site configuration file (key = value lines)
    #[arg(long, env = "PATHCAL_CONFIG")]
    config: Option<PathBuf>,

    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format (default: csv for predict, json elsewhere)
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct PredictArgs {
    /// fspl | hata | cost231 | ecc33 | sui | ericsson | calibrated
    #[arg(long)]
    model: String,

    /// Calibrated-model JSON, required with --model calibrated
    #[arg(long)]
    cal_file: Option<PathBuf>,

    /// Carrier frequency in MHz (overrides the config)
    #[arg(long)]
    freq_mhz: Option<f64>,

    /// Base-station antenna height in metres
    #[arg(long)]
    hb: Option<f64>,

    /// Receiver antenna height in metres
    #[arg(long)]
    hr: Option<f64>,

    /// Environment: urban-large | urban-medium | suburban | open
    #[arg(long)]
    env: Option<String>,

    /// SUI terrain category: A | B | C
    #[arg(long)]
    terrain: Option<String>,

    /// SUI shadowing term in dB
    #[arg(long)]
    shadowing: Option<f64>,

    /// Reference distance in metres
    #[arg(long)]
    d0: Option<f64>,

    /// Sweep start in metres
    #[arg(long, default_value_t = 50.0)]
    dmin: f64,

    /// Sweep end in metres
    #[arg(long, default_value_t = 500.0)]
    dmax: f64,

    /// Sweep step in metres
    #[arg(long, default_value_t = 50.0)]
    step: f64,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Drive-test measurement CSV
    measurements: PathBuf,

    /// Comma-separated model list, or `all`
    #[arg(long, default_value = "all")]
    models: String,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Drive-test measurement CSV
    measurements: PathBuf,

    /// Base model to calibrate
    #[arg(long)]
    model: String,

    /// Offset rule: rmse | bias
    #[arg(long, default_value = "rmse")]
    method: String,

    /// Also write the calibrated model JSON here (for `predict --cal-file`)
    #[arg(long)]
    cal_out: Option<PathBuf>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ExponentArgs {
    /// Drive-test measurement CSV
    measurements: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

/// Exit codes: 0 success, 2 usage, 3 model domain, 4 parse, 5 degenerate
/// data. I/O failures while writing output exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(DomainError),
    Ingest(IngestError),
    Calibration(CalibrationError),
    ReadMeasurements { path: PathBuf, message: String },
    ReadCalFile { path: PathBuf, message: String },
    WriteOutput { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Domain(_) => 3,
            Self::Ingest(e) => ingest_code(e),
            Self::Calibration(e) => calibration_code(e),
            Self::ReadMeasurements { .. } | Self::ReadCalFile { .. } => 4,
            Self::WriteOutput { .. } => 1,
        }
    }
}

fn ingest_code(e: &IngestError) -> u8 {
    match e {
        IngestError::DegenerateSet { .. } => 5,
        IngestError::Set(inner) => calibration_code(inner),
        _ => 4,
    }
}

fn calibration_code(e: &CalibrationError) -> u8 {
    match e {
        CalibrationError::DegenerateFit | CalibrationError::TooFewSamples { .. } => 5,
        CalibrationError::Model(_) => 3,
        _ => 4,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(msg) => f.write_str(msg),
            Self::Domain(e) => e.fmt(f),
            Self::Ingest(e) => e.fmt(f),
            Self::Calibration(e) => e.fmt(f),
            Self::ReadMeasurements { path, message } => {
                write!(f, "cannot read measurements {}: {message}", path.display())
            }
            Self::ReadCalFile { path, message } => {
                write!(f, "cannot load calibrated model {}: {message}", path.display())
            }
            Self::WriteOutput { path, message } => {
                write!(f, "cannot write {}: {message}", path.display())
            }
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        Self::Domain(e)
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        Self::Ingest(e)
    }
}

impl From<CalibrationError> for CliError {
    fn from(e: CalibrationError) -> Self {
        Self::Calibration(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Predict(args) => cmd_predict(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::Exponent(args) => cmd_exponent(args),
    }
}

fn settings_from(common: &CommonArgs) -> Result<SiteSettings, CliError> {
    match &common.config {
        Some(path) => SiteSettings::load(path),
        None => Ok(SiteSettings::default()),
    }
}

fn cmd_predict(args: PredictArgs) -> Result<(), CliError> {
    let mut settings = settings_from(&args.common)?;
    if let Some(v) = args.freq_mhz {
        settings.frequency_mhz = Some(v);
    }
    if let Some(v) = args.hb {
        settings.base_height_m = Some(v);
    }
    if let Some(v) = args.hr {
        settings.mobile_height_m = Some(v);
    }
    if let Some(v) = &args.env {
        settings.environment = Some(v.parse().map_err(CliError::Usage)?);
    }
    if let Some(v) = &args.terrain {
        settings.terrain = Some(v.parse().map_err(CliError::Usage)?);
    }
    if let Some(v) = args.shadowing {
        settings.shadowing_db = Some(v);
    }
    if let Some(v) = args.d0 {
        settings.reference_distance_m = Some(v);
    }

    let model: PathLossModel = match args.model.as_str() {
        "calibrated" => {
            let path = args.cal_file.as_deref().ok_or_else(|| {
                CliError::Usage("--model calibrated requires --cal-file".into())
            })?;
            load_cal_file(path)?.model()
        }
        name => PathLossModel::Base(name.parse::<ModelId>().map_err(CliError::Usage)?),
    };

    let ctx = settings.radio_context_for(model.base_id())?;
    let params = settings.ericsson_params(ctx.environment());
    let curve = sweep(
        model,
        &ctx,
        &params,
        Distance::from_meters(args.dmin)?,
        Distance::from_meters(args.dmax)?,
        Distance::from_meters(args.step)?,
    )?;

    let output = match args.common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => curve_csv(&curve),
        OutputFormat::Json => CurveDocument::from_curve(&curve).to_json(),
    };
    write_output(args.common.out.as_deref(), &output)
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let settings = settings_from(&args.common)?;
    let models = parse_models(&args.models)?;
    let (set, ctx, mut warnings) = ingest_measurements(&args.measurements, &settings)?;
    let params = settings.ericsson_params(ctx.environment());

    let mut reports = Vec::with_capacity(models.len());
    for model in &models {
        warnings.extend(
            applicability_warnings(*model, &ctx)
                .iter()
                .map(ToString::to_string),
        );
        reports.push(evaluate(&set, (*model).into(), &params)?);
    }
    let best = select_best(&reports)?;

    let mut doc = ReportDocument::new(
        "evaluate",
        set.site_id().to_owned(),
        ctx.frequency().mhz(),
        ctx.environment(),
    );
    doc.best_model = Some(best);
    doc.reports = reports;
    doc.warnings = warnings;

    let output = match args.common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Csv => evaluate_csv(&doc),
    };
    write_output(args.common.out.as_deref(), &output)
}

fn cmd_calibrate(args: CalibrateArgs) -> Result<(), CliError> {
    let settings = settings_from(&args.common)?;
    let base: ModelId = args.model.parse().map_err(CliError::Usage)?;
    let method = match args.method.as_str() {
        "rmse" => OffsetMethod::RmseOffset,
        "bias" => OffsetMethod::BiasOffset,
        other => {
            return Err(CliError::Usage(format!(
                "unknown method `{other}` (expected rmse or bias)"
            )))
        }
    };

    let (set, ctx, mut warnings) = ingest_measurements(&args.measurements, &settings)?;
    let params = settings.ericsson_params(ctx.environment());
    warnings.extend(
        applicability_warnings(base, &ctx)
            .iter()
            .map(ToString::to_string),
    );

    let before = evaluate(&set, base.into(), &params)?;
    let cal = match method {
        OffsetMethod::RmseOffset => calibrate_rmse_offset(&set, base, &params)?,
        OffsetMethod::BiasOffset => calibrate_bias_offset(&set, base, &params)?,
    };
    let outcome = validate(&set, &cal, &params)?;

    if let Some(path) = &args.cal_out {
        let mut text = serde_json::to_string_pretty(&cal).expect("calibrated model serialization");
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::WriteOutput {
            path: path.clone(),
            message: e.to_string(),
        })?;
    }

    let mut doc = ReportDocument::new(
        "calibrate",
        set.site_id().to_owned(),
        ctx.frequency().mhz(),
        ctx.environment(),
    );
    doc.calibration = Some(CalibrationSection {
        base: cal.base,
        offset_db: cal.offset_db,
        method: cal.method,
        source_site: cal.source_site.clone(),
        rmse_before_db: before.rmse_db,
        rmse_after_db: outcome.report.rmse_db,
    });
    doc.validation = Some(ValidationSection {
        model: outcome.report.model,
        rmse_db: outcome.report.rmse_db,
        bias_db: outcome.report.bias_db,
        base_rmse_db: outcome.base_rmse_db,
        improved: outcome.improved,
    });
    doc.reports = vec![before];
    doc.warnings = warnings;

    let output = match args.common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Csv => calibrate_csv(&doc),
    };
    write_output(args.common.out.as_deref(), &output)
}

fn cmd_exponent(args: ExponentArgs) -> Result<(), CliError> {
    let settings = settings_from(&args.common)?;
    let (set, ctx, warnings) = ingest_measurements(&args.measurements, &settings)?;
    let n = path_loss_exponent(&set)?;

    let mut doc = ReportDocument::new(
        "exponent",
        set.site_id().to_owned(),
        ctx.frequency().mhz(),
        ctx.environment(),
    );
    doc.path_loss_exponent = Some(n);
    doc.warnings = warnings;

    let output = match args.common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => doc.to_json(),
        // The flat rendering rounds to 3 decimals; JSON keeps full precision.
        OutputFormat::Csv => format!("site_id,n\n{},{:.3}\n", doc.site_id, n),
    };
    write_output(args.common.out.as_deref(), &output)
}

/// Shared ingestion path: read the CSV, build the context and budget from the
/// settings, convert to a measurement set, and collect warnings in a fixed
/// order (parse, band check, binning).
fn ingest_measurements(
    path: &Path,
    settings: &SiteSettings,
) -> Result<(MeasurementSet, RadioContext, Vec<String>), CliError> {
    let ctx = settings.radio_context()?;
    let budget = settings.link_budget()?;
    let file = fs::File::open(path).map_err(|e| CliError::ReadMeasurements {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    let (log, parse_warnings) = parse_csv(file)?;
    let mut warnings: Vec<String> = parse_warnings.iter().map(ToString::to_string).collect();
    if let Some(w) = settings.band_warning() {
        warnings.push(w.to_string());
    }
    let (set, ingest_warnings) = to_measurement_set(&log, &budget, &ctx)?;
    warnings.extend(ingest_warnings.iter().map(ToString::to_string));
    Ok((set, ctx, warnings))
}

fn parse_models(list: &str) -> Result<Vec<ModelId>, CliError> {
    if list == "all" {
        return Ok(ModelId::ALL.to_vec());
    }
    list.split(',')
        .map(|token| token.trim().parse::<ModelId>().map_err(CliError::Usage))
        .collect()
}

fn load_cal_file(path: &Path) -> Result<CalibratedModel, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::ReadCalFile {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::ReadCalFile {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn curve_csv(curve: &PathLossCurve) -> String {
    let mut out = String::from("distance_m,path_loss_db\n");
    for (d, loss) in curve.points() {
        out.push_str(&format!("{:.4},{:.4}\n", d.meters(), loss));
    }
    out
}

fn evaluate_csv(doc: &ReportDocument) -> String {
    let mut out = String::from("model,rmse_db,bias_db,best\n");
    for report in &doc.reports {
        out.push_str(&format!(
            "{},{:.4},{:.4},{}\n",
            report.model,
            report.rmse_db,
            report.bias_db,
            doc.best_model == Some(report.model)
        ));
    }
    out
}

fn calibrate_csv(doc: &ReportDocument) -> String {
    let cal = doc.calibration.as_ref().expect("calibrate always fills the section");
    format!(
        "base,method,offset_db,rmse_before_db,rmse_after_db\n{},{},{:.4},{:.4},{:.4}\n",
        cal.base,
        serde_json::to_value(cal.method)
            .expect("method serialization")
            .as_str()
            .expect("method is a string")
            .to_owned(),
        cal.offset_db,
        cal.rmse_before_db,
        cal.rmse_after_db,
    )
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::WriteOutput {
            path: p.to_owned(),
            message: e.to_string(),
        }),
        None => io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| CliError::WriteOutput {
                path: PathBuf::from("<stdout>"),
                message: e.to_string(),
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_list_parsing() {
        assert_eq!(parse_models("all").unwrap(), ModelId::ALL.to_vec());
        assert_eq!(
            parse_models("hata, sui").unwrap(),
            vec![ModelId::Hata, ModelId::Sui]
        );
        assert!(parse_models("hata,nosuch").is_err());
        assert!(parse_models("").is_err());
    }

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Domain(DomainError::NonPositive {
                quantity: "distance",
                value: -1.0
            })
            .exit_code(),
            3
        );
        assert_eq!(
            CliError::Ingest(IngestError::NoSamples).exit_code(),
            4
        );
        assert_eq!(
            CliError::Ingest(IngestError::DegenerateSet { bins: 1 }).exit_code(),
            5
        );
        assert_eq!(
            CliError::Calibration(CalibrationError::DegenerateFit).exit_code(),
            5
        );
    }
}
