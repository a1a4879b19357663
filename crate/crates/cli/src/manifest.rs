//! Run manifests and deterministic serialization helpers.
//!
//! Every command writes exactly one `manifest.json` into its output
//! directory, recording the command, its full parsed configuration, the
//! seed, the tool version, sha256 digests of every input file, the list
//! of output artifacts, and the wall-clock duration. The manifest plus
//! the inputs suffice to replay the run; all primary outputs are then
//! byte-identical. The duration field is informational and is the one
//! field allowed to differ between replays.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{write_output, CliError};

/// Rounds to 12 significant digits, the serialization precision for all
/// floating-point artifact fields. Rounding before emitting JSON keeps
/// the printed form short and the replay comparison exact.
pub fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float reparses")
}

/// 12-significant-digit text form used in CSV artifacts.
pub fn f12(x: f64) -> String {
    format!("{x:.11e}")
}

/// JSON number carrying [`sig12`] precision.
pub fn json_f64(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(sig12(x))
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    version: String,
    seed: Option<u64>,
    config: serde_json::Value,
    inputs: Vec<InputRecord>,
    outputs: Vec<String>,
    duration_seconds: f64,
}

/// Collects manifest fields while a command runs.
pub struct ManifestBuilder {
    command: String,
    seed: Option<u64>,
    config: serde_json::Value,
    inputs: Vec<InputRecord>,
    outputs: Vec<String>,
    started: Instant,
}

impl ManifestBuilder {
    /// Starts the wall clock; call before any real work.
    pub fn new(command: &str, seed: Option<u64>, config: serde_json::Value) -> Self {
        ManifestBuilder {
            command: command.into(),
            seed,
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Registers an input file by content digest.
    pub fn record_input(&mut self, path: &Path, contents: &str) {
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(contents.as_bytes()),
        });
    }

    /// Writes an artifact and registers it as an output. Outputs are
    /// recorded by file name: the manifest lives in the same directory,
    /// so names are unambiguous and replays into different directories
    /// produce identical manifests apart from the duration field.
    pub fn write_artifact(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        write_output(path, contents)?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        self.outputs.push(name);
        Ok(())
    }

    /// Writes `manifest.json` into `dir` and returns its path.
    pub fn finish(self, dir: &Path) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            command: self.command,
            version: env!("CARGO_PKG_VERSION").into(),
            seed: self.seed,
            config: self.config,
            inputs: self.inputs,
            outputs: self.outputs,
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        write_output(&path, &format!("{text}\n"))?;
        Ok(path)
    }
}

/// Pretty-printed JSON artifact text with a trailing newline.
pub fn render_json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifact serializes");
    text.push('\n');
    text
}
