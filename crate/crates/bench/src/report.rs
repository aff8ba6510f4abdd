use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::{BenchError, BenchRecord, BenchReport, RatioRow, Result};

pub const RECORDS_FILE: &str = "records.csv";
pub const RATIOS_FILE: &str = "ratios.csv";
pub const JSON_FILE: &str = "report.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(BenchError::Config(format!("unknown format `{s}`"))),
        }
    }
}

const RECORD_HEADER: [&str; 12] = [
    "algo",
    "n",
    "dim",
    "dist",
    "seed",
    "aspect",
    "reps",
    "wall_ns",
    "diameter",
    "distance_evals",
    "hull_size",
    "survivors",
];

pub fn write_records_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| BenchError::Io { path: "<records>".into(), source: e })?;
    Ok(())
}

pub fn write_ratios_csv<W: Write>(ratios: &[RatioRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["n", "dist", "bf_over_hull", "bf_over_fast", "hull_over_fast"])?;
    for r in ratios {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| BenchError::Io { path: "<ratios>".into(), source: e })?;
    Ok(())
}

pub fn to_json(report: &BenchReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| BenchError::Io { path: path.display().to_string(), source: e })
}

/// Writes the report into directory `dest`: `records.csv` and `ratios.csv`
/// for CSV, `report.json` for JSON. Returns the files written.
pub fn emit(report: &BenchReport, format: Format, dest: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dest).map_err(|e| BenchError::Io { path: dest.display().to_string(), source: e })?;
    match format {
        Format::Csv => {
            let records = dest.join(RECORDS_FILE);
            let ratios = dest.join(RATIOS_FILE);
            write_records_csv(&report.records, create(&records)?)?;
            write_ratios_csv(&report.ratios, create(&ratios)?)?;
            Ok(vec![records, ratios])
        }
        Format::Json => {
            let path = dest.join(JSON_FILE);
            let mut f = create(&path)?;
            f.write_all(to_json(report)?.as_bytes())
                .map_err(|e| BenchError::Io { path: path.display().to_string(), source: e })?;
            Ok(vec![path])
        }
    }
}
