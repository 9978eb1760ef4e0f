//! Run directories: one record per (algorithm, seed) plus `manifest.json`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use swarmbench::RunRecord;

use crate::error::{CliError, CliResult};

pub const MANIFEST: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::other(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub algorithm: String,
    pub seed: u64,
    /// Relative to the run directory, `/`-separated.
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config_sha256: String,
    pub problem: String,
    pub budget: u64,
    pub target_accuracy: Option<f64>,
    /// Algorithm label to its kind.
    pub algorithms: BTreeMap<String, String>,
    pub files: Vec<ManifestEntry>,
}

pub fn record_path(label: &str, seed: u64) -> String {
    format!("{label}/seed-{seed}.json")
}

pub fn record_bytes(record: &RunRecord) -> Vec<u8> {
    let mut text = record.to_json();
    text.push('\n');
    text.into_bytes()
}

/// Writes every record and then the manifest listing them.
pub fn write_run_directory(dir: &Path, mut manifest: Manifest, records: &[(String, RunRecord)]) -> CliResult<Manifest> {
    manifest.files.clear();
    for (label, record) in records {
        let path = record_path(label, record.seed);
        let bytes = record_bytes(record);
        write_atomic(&dir.join(&path), &bytes)?;
        manifest.files.push(ManifestEntry {
            algorithm: label.clone(),
            seed: record.seed,
            path,
            sha256: sha256_hex(&bytes),
        });
    }
    manifest.files.sort_by(|a, b| (&a.algorithm, a.seed).cmp(&(&b.algorithm, b.seed)));
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest is serializable");
    text.push('\n');
    write_atomic(&dir.join(MANIFEST), text.as_bytes())?;
    Ok(manifest)
}

/// A run directory whose files all match their manifest hashes.
pub struct RunDirectory {
    pub manifest: Manifest,
    records: BTreeMap<String, Vec<RunRecord>>,
}

impl RunDirectory {
    pub fn open(dir: &Path) -> CliResult<Self> {
        let manifest_path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&manifest_path)
            .map_err(|e| CliError::other(format!("cannot read {}: {e}", manifest_path.display())))?;
        let manifest: Manifest = serde_json::from_str(&text)
            .map_err(|e| CliError::integrity(format!("{} is not a valid manifest: {e}", manifest_path.display())))?;
        let mut records: BTreeMap<String, Vec<RunRecord>> = BTreeMap::new();
        for entry in &manifest.files {
            let path = dir.join(&entry.path);
            let bytes = std::fs::read(&path)
                .map_err(|e| CliError::integrity(format!("{} listed in the manifest but unreadable: {e}", path.display())))?;
            let actual = sha256_hex(&bytes);
            if actual != entry.sha256 {
                return Err(CliError::integrity(format!(
                    "{} does not match the manifest (sha256 {actual}, expected {}); refusing to use this directory",
                    path.display(),
                    entry.sha256
                )));
            }
            let text = String::from_utf8(bytes).map_err(|e| CliError::integrity(format!("{}: {e}", path.display())))?;
            let record = RunRecord::from_json(&text).map_err(|e| CliError::integrity(format!("{}: {e}", path.display())))?;
            records.entry(entry.algorithm.clone()).or_default().push(record);
        }
        Ok(Self { manifest, records })
    }

    pub fn labels(&self) -> Vec<&str> {
        self.records.keys().map(String::as_str).collect()
    }

    pub fn records(&self, label: &str) -> CliResult<&[RunRecord]> {
        self.records.get(label).map(Vec::as_slice).ok_or_else(|| {
            CliError::other(format!(
                "no records for algorithm `{label}` (available: {})",
                self.labels().join(", ")
            ))
        })
    }
}
