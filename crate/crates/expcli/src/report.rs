//! JSON Lines result files.
//!
//! The first line is a header object (`"comment"` set) describing the run;
//! every following line is one plot-ready [`Record`] with `series`, `x`, `y`
//! and free-form extra fields.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use sealab::{Error, Result};

use crate::config::Config;

pub const TOOL: &str = "sealab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub comment: String,
    pub tool: String,
    pub version: String,
    pub experiment: String,
    pub config_hash: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
}

impl Header {
    pub fn new(experiment: &str, config: &Config, seed: u64) -> Self {
        Self {
            comment: format!("{TOOL} {experiment} results"),
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            experiment: experiment.to_string(),
            config_hash: config_hash(experiment, config, seed),
            seed,
            config: config.entries().clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub series: String,
    pub x: f64,
    pub y: f64,
    pub config_hash: String,
    pub seed: u64,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

/// Collects records for one run, stamping each with the run's hash and seed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: Header,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(experiment: &str, config: &Config, seed: u64) -> Self {
        Self {
            header: Header::new(experiment, config, seed),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, series: impl Into<String>, x: f64, y: f64, extra: Map<String, Value>) {
        self.records.push(Record {
            series: series.into(),
            x,
            y,
            config_hash: self.header.config_hash.clone(),
            seed: self.header.seed,
            extra,
        });
    }

    pub fn series<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.series == name)
    }
}

/// `extra` fields from `(key, value)` pairs.
pub fn fields<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Hex SHA-256 over the experiment name, the seed and the sorted config
/// entries.
pub fn config_hash(experiment: &str, config: &Config, seed: u64) -> String {
    let mut h = Sha256::new();
    h.update(format!("experiment={experiment}\nseed={seed}\n"));
    for (k, v) in config.entries() {
        h.update(format!("{k}={v}\n"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Validation(format!("JSON encoding failed: {e}"))
}

/// Writes the header and records to `path`, replacing any existing file.
pub fn emit_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut w, &report.header).map_err(json_err)?;
    w.write_all(b"\n")?;
    for r in &report.records {
        serde_json::to_writer(&mut w, r).map_err(json_err)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<Report> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let header_line = match lines.next() {
        Some((_, line)) => line?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header line".into(),
            })
        }
    };
    let header: Header = serde_json::from_str(&header_line).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?);
    }
    Ok(Report { header, records })
}
