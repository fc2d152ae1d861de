//! Result files, checksums and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};

pub const MANIFEST: &str = "manifest.json";

/// Floats in result tables carry 12 significant digits.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        // normalizes −0
        return format!("{:.11e}", 0.0);
    }
    format!("{x:.11e}")
}

/// In-memory CSV with a fixed header.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner()
            .map_err(|e| LabError::io("<csv buffer>", e.into_error()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceSummary {
    pub passed: bool,
    pub total: usize,
    pub failed: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsManifest {
    pub tool: String,
    pub version: String,
    pub experiment: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub files: Vec<FileEntry>,
    pub wall_clock_seconds: f64,
    pub failed_stage: Option<String>,
    pub acceptance: Option<AcceptanceSummary>,
}

impl ResultsManifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).map_err(|e| LabError::io(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn checksum(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.sha256.as_str())
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Writes files into the output directory and records them.
pub struct Sink {
    dir: PathBuf,
    files: Vec<FileEntry>,
    stage: String,
    started: Instant,
}

impl Sink {
    /// Prepares `dir`. Files listed by an earlier manifest are removed; any
    /// other file makes the directory unusable.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
        if let Ok(old) = ResultsManifest::load(dir) {
            for f in &old.files {
                let _ = fs::remove_file(dir.join(&f.name));
            }
            fs::remove_file(dir.join(MANIFEST)).map_err(|e| LabError::io(dir.join(MANIFEST), e))?;
        }
        let leftover = fs::read_dir(dir)
            .map_err(|e| LabError::io(dir, e))?
            .next()
            .is_some();
        if leftover {
            return Err(LabError::DirtyOutput(dir.to_path_buf()));
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
            stage: "setup".into(),
            started: Instant::now(),
        })
    }

    pub fn stage(&mut self, name: impl Into<String>) {
        self.stage = name.into();
    }

    pub fn emit(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| LabError::io(&path, e))?;
        self.files.push(FileEntry {
            name: name.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len() as u64,
        });
        Ok(())
    }

    pub fn emit_table(&mut self, name: &str, table: &Table) -> Result<()> {
        self.emit(name, &table.to_bytes()?)
    }

    pub fn emit_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(name, text.as_bytes())
    }

    /// Writes the manifest. `failed` marks the stage that was running when an error surfaced.
    pub fn finish(
        self,
        cfg: &ExperimentConfig,
        failed: bool,
        acceptance: Option<AcceptanceSummary>,
    ) -> Result<ResultsManifest> {
        let manifest = ResultsManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            experiment: cfg.experiment.name().into(),
            seed: cfg.seed,
            config: serde_json::to_value(cfg)?,
            files: self.files,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
            failed_stage: failed.then_some(self.stage),
            acceptance,
        };
        let path = self.dir.join(MANIFEST);
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
        Ok(manifest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.5), "5.00000000000e-1");
        assert_eq!(num(-0.0), "0.00000000000e0");
        assert_eq!(num(-1.0 / 3.0), "-3.33333333333e-1");
    }

    #[test]
    fn table_bytes() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["1".into(), num(2.0)]);
        assert_eq!(
            String::from_utf8(t.to_bytes().unwrap()).unwrap(),
            "a,b\n1,2.00000000000e0\n"
        );
    }

    #[test]
    fn foreign_files_block_the_directory() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("notes.txt"), "keep me").unwrap();
        assert!(matches!(
            Sink::open(dir.path()),
            Err(LabError::DirtyOutput(_))
        ));
        assert!(dir.path().join("notes.txt").exists());
    }
}
