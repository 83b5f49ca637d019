use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use tempfile::NamedTempFile;

use super::{HarnessError, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    /// `csv` for a `.csv` extension, JSON otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown report format `{s}`")),
        }
    }
}

const CSV_HEADER: [&str; 15] = [
    "case",
    "case_seed",
    "source_answer",
    "target_answer",
    "dp_answer",
    "agree",
    "certificates_ok",
    "witness_width",
    "claimed_bound",
    "bound_ok",
    "source_ms",
    "target_ms",
    "dp_ms",
    "problems",
    "replay",
];

/// Serializes `rep` into bytes: pretty JSON of the whole report, or one CSV
/// row per case under a fixed header.
pub fn render_report(rep: &VerificationReport, format: ReportFormat) -> Result<Vec<u8>, HarnessError> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(rep)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &rep.records {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))
        }
    }
}

/// Writes the report through a temporary file in the target directory,
/// then renames it into place.
pub fn emit_report(rep: &VerificationReport, path: &Path, format: ReportFormat) -> Result<(), HarnessError> {
    let bytes = render_report(rep, format)?;
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(&bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| HarnessError::Io(e.error))?;
    Ok(())
}
