//! Run manifests: parameters, grid, output files and their hashes.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    /// Path relative to the manifest's directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: serde_json::Value,
    pub c1: f64,
    pub tau: Option<f64>,
    pub grid_half_width: Option<usize>,
    pub threads: usize,
    /// Excluded from `content_hash`.
    pub wall_clock_seconds: f64,
    pub files: Vec<FileEntry>,
    /// SHA-256 over the sorted `path sha256` lines of `files`.
    pub content_hash: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn combined_hash(files: &[FileEntry]) -> String {
    let mut lines: Vec<String> = files.iter().map(|f| format!("{} {}\n", f.path, f.sha256)).collect();
    lines.sort();
    sha256_hex(lines.concat().as_bytes())
}

fn entry(dir: &Path, rel: &str) -> Result<FileEntry> {
    let bytes = std::fs::read(dir.join(rel)).with_context(|| format!("cannot read output {rel}"))?;
    Ok(FileEntry { path: rel.to_string(), bytes: bytes.len() as u64, sha256: sha256_hex(&bytes) })
}

impl RunManifest {
    /// Hashes `files` (relative to `dir`) and assembles a manifest.
    pub fn new(
        dir: &Path,
        command: &str,
        parameters: serde_json::Value,
        tau: Option<f64>,
        grid_half_width: Option<usize>,
        files: &[String],
        wall_clock_seconds: f64,
    ) -> Result<Self> {
        let mut entries = files.iter().map(|f| entry(dir, f)).collect::<Result<Vec<_>>>()?;
        entries.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            parameters,
            c1: qfront_core::LONG_WAVE_SPEED,
            tau,
            grid_half_width,
            threads: rayon::current_num_threads(),
            wall_clock_seconds,
            content_hash: combined_hash(&entries),
            files: entries,
        })
    }

    /// Writes `dir/manifest.json`.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(MANIFEST_NAME);
        self.write_to(&path)?;
        Ok(path)
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
    }

    /// Loads `dir/manifest.json` and checks every listed file against its hash.
    pub fn load_verified(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_NAME);
        if !path.is_file() {
            bail!("{} has no {MANIFEST_NAME}; only outputs written by this tool can be compared", dir.display());
        }
        let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
        let manifest: RunManifest =
            serde_json::from_str(&text).with_context(|| format!("{} is not a valid manifest", path.display()))?;
        for f in &manifest.files {
            let now = entry(dir, &f.path)?;
            if now.sha256 != f.sha256 {
                bail!("{} changed since its manifest was written", f.path);
            }
        }
        if combined_hash(&manifest.files) != manifest.content_hash {
            bail!("{}: content hash does not match its file list", path.display());
        }
        Ok(manifest)
    }
}
