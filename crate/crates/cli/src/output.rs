//! CSV and manifest writing.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use qic_core::geometry::RateRegion2D;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal string with at most 12 significant digits and no exponent.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("scientific format parses");
    format!("{rounded}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Frontier vertices in increasing `R1`.
    pub fn frontier(region: &RateRegion2D) -> Self {
        let mut t = Table::new(&["R1", "R2"]);
        for p in region.frontier() {
            t.push(vec![fmt_num(p[0]), fmt_num(p[1])]);
        }
        t
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_time_s: f64,
    pub output: String,
}

/// Command context shared by every file a run writes.
pub struct Run {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    start: Instant,
}

pub fn manifest_path(path: &Path) -> PathBuf {
    path.with_extension("manifest.json")
}

impl Run {
    pub fn new(command: &str, params: &impl Serialize, seed: Option<u64>) -> CliResult<Self> {
        Ok(Run { command: command.to_string(), params: serde_json::to_value(params)?, seed, start: Instant::now() })
    }

    fn manifest(&self, path: &Path) -> RunManifest {
        RunManifest {
            command: self.command.clone(),
            params: self.params.clone(),
            seed: self.seed,
            version: VERSION.to_string(),
            wall_time_s: self.start.elapsed().as_secs_f64(),
            output: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        }
    }

    fn write_manifest(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(&self.manifest(path))?;
        fs::write(manifest_path(path), text + "\n")?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path, table: &Table) -> CliResult<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, table.to_csv()?)?;
        self.write_manifest(path)
    }

    pub fn write_json(&self, path: &Path, value: &impl Serialize) -> CliResult<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
        self.write_manifest(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_twelve_significant_digits() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_num(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_num(1.5e-7), "0.00000015");
        assert_eq!(fmt_num(123456789012345.0), "123456789012000");
    }

    #[test]
    fn csv_has_header_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let run = Run::new("region", &serde_json::json!({"method": "mac2"}), Some(3)).unwrap();
        let region = RateRegion2D::from_points(&[[1.0, 0.5], [0.25, 1.0]]);
        run.write_csv(&path, &Table::frontier(&region)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("R1,R2\n0,1\n"));
        let m: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.manifest.json")).unwrap()).unwrap();
        assert_eq!(m["command"], "region");
        assert_eq!(m["seed"], 3);
        assert_eq!(m["output"], "r.csv");
    }
}
