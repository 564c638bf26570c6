//! Run manifests: every command's output directory holds exactly one
//! `manifest.json` recording the config hash, input digests, artifact
//! versions, and wall time, so desk-scale reproduction is auditable.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::PipelineConfig;
use crate::CliError;

pub const MODEL_ARTIFACT_VERSION: u32 = 1;
pub const TABLE_ARTIFACT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub workers: usize,
    pub input_digests: BTreeMap<String, String>,
    pub artifact_versions: BTreeMap<String, u32>,
    pub wall_time_ms: u128,
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_digest(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot digest {}: {e}", path.display())))?;
    Ok(sha256_hex(&bytes))
}

/// Hash of the effective (post-override) configuration. Output placement
/// and worker count are normalized out: neither changes what a command
/// computes, and reruns into fresh directories must hash identically.
pub fn config_hash(config: &PipelineConfig) -> String {
    let mut semantic = config.clone();
    semantic.output_dir = std::path::PathBuf::new();
    semantic.workers = 0;
    let canonical = serde_json::to_vec(&semantic).expect("config serializes");
    sha256_hex(&canonical)
}

/// Collects inputs and notes during a command run, then writes the manifest.
pub struct ManifestBuilder {
    command: String,
    started: Instant,
    inputs: BTreeMap<String, String>,
    versions: BTreeMap<String, u32>,
    notes: BTreeMap<String, String>,
}

impl ManifestBuilder {
    pub fn new(command: &str) -> Self {
        ManifestBuilder {
            command: command.to_string(),
            started: Instant::now(),
            inputs: BTreeMap::new(),
            versions: BTreeMap::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, name: &str, path: &Path) -> Result<(), CliError> {
        self.inputs.insert(name.to_string(), file_digest(path)?);
        Ok(())
    }

    pub fn artifact_version(&mut self, name: &str, version: u32) {
        self.versions.insert(name.to_string(), version);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.insert(key.to_string(), value.into());
    }

    pub fn write(self, out_dir: &Path, config: &PipelineConfig) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: self.command,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config_hash(config),
            seed: config.seed(),
            workers: config.workers,
            input_digests: self.inputs,
            artifact_versions: self.versions,
            wall_time_ms: self.started.elapsed().as_millis(),
            notes: self.notes,
        };
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(out_dir.join("manifest.json"), json + "\n")
            .map_err(|e| CliError::Data(format!("cannot write manifest: {e}")))?;
        Ok(())
    }
}
