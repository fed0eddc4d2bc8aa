//! Configuration loading and result persistence.

pub mod config;
pub mod csv;
pub mod svg;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formation::RingOrder;
use crate::metrics::ErrorSummary;
use crate::sim::{EventCounts, PeReport, RunRecord, SimConfig, Violation};
use crate::target::SatelliteEstimate;

pub use config::{load_config, load_config_str, preset, ConfigError};

#[derive(Debug, Error)]
#[error("{path}: {source}")]
pub struct IoError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError { path: path.to_path_buf(), source }
}

/// Contents of `summary.json`. Holds nothing time- or host-dependent so the
/// file is byte-identical for identical configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: SimConfig,
    pub satellite: SatelliteEstimate,
    pub ring_order: RingOrder,
    pub errors: ErrorSummary,
    pub events: EventCounts,
    pub pe: PeReport,
    pub violations: Vec<Violation>,
}

impl RunSummary {
    pub fn new(record: &RunRecord, errors: ErrorSummary) -> Self {
        Self {
            config: record.config.clone(),
            satellite: record.satellite,
            ring_order: record.order.clone(),
            errors,
            events: record.events,
            pe: record.pe.clone(),
            violations: record.violations.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputBundle {
    pub trajectory: PathBuf,
    pub summary: PathBuf,
    pub plots: Vec<PathBuf>,
}

pub fn write_outputs(record: &RunRecord, summary: &ErrorSummary, dir: &Path, plots: bool) -> Result<OutputBundle, IoError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;

    let trajectory = dir.join("trajectory.csv");
    let file = File::create(&trajectory).map_err(io_err(&trajectory))?;
    let mut w = BufWriter::new(file);
    csv::write_trajectory(&mut w, &record.rows).map_err(io_err(&trajectory))?;
    std::io::Write::flush(&mut w).map_err(io_err(&trajectory))?;

    let summary_path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(&RunSummary::new(record, summary.clone()))
        .expect("summary types serialize infallibly");
    text.push('\n');
    fs::write(&summary_path, text).map_err(io_err(&summary_path))?;

    let mut written = Vec::new();
    if plots {
        for (name, doc) in svg::panels(record) {
            let p = dir.join(name);
            fs::write(&p, doc).map_err(io_err(&p))?;
            written.push(p);
        }
    }
    Ok(OutputBundle { trajectory, summary: summary_path, plots: written })
}
