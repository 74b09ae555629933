//! CSV tables and their JSON manifests.

use crate::config::RunConfig;
use crate::Failure;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Shortest decimal string that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Result of a command: a table, free-form details for the manifest, and
/// text for the terminal.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub details: Map<String, Value>,
    pub summary: String,
    /// `Some(false)` when a verification suite found failures.
    pub verdict: Option<bool>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }
}

/// SHA-256 of the canonical JSON of the resolved configuration.
pub fn config_hash(config: &RunConfig) -> String {
    let text = serde_json::to_string(config).expect("config serialises");
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn render_csv(table: &Table, command: &str, hash: &str) -> String {
    let mut out = format!("# fracstable {} command={command} config_sha256={hash}\n", env!("CARGO_PKG_VERSION"));
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub struct RunInfo<'a> {
    pub config: &'a RunConfig,
    pub hash: &'a str,
    pub workers: usize,
    pub wall_time: f64,
    pub csv: &'a Path,
}

pub fn manifest(table: &Table, info: &RunInfo) -> Value {
    json!({
        "tool": "fracstable",
        "version": env!("CARGO_PKG_VERSION"),
        "command": info.config.command.map(|c| c.name()),
        "config": info.config,
        "config_sha256": info.hash,
        "seed": info.config.seed,
        "workers": info.workers,
        "wall_time_seconds": info.wall_time,
        "csv": info.csv.file_name().map(|f| f.to_string_lossy().into_owned()),
        "columns": table.header,
        "rows": table.rows.len(),
        "verdict": table.verdict,
        "details": table.details,
    })
}

pub fn write_outputs(table: &Table, info: &RunInfo) -> Result<PathBuf, Failure> {
    let command = info.config.command.map_or("run", |c| c.name());
    std::fs::write(info.csv, render_csv(table, command, info.hash))?;
    let path = manifest_path(info.csv);
    let text = serde_json::to_string_pretty(&manifest(table, info)).map_err(|e| Failure::Io(e.to_string()))?;
    std::fs::write(&path, text + "\n")?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 2.0] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert_eq!(num(0.5), "0.5");
    }

    #[test]
    fn hash_tracks_the_config() {
        let a = RunConfig::default();
        let mut b = a.clone();
        assert_eq!(config_hash(&a), config_hash(&b));
        b.seed = 1;
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }
}
