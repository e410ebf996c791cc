//! Run provenance: every numeric output carries the inputs that produced it.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::time::Instant;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance record attached to command outputs.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    /// SHA-256 digests of the input files, keyed by path.
    pub input_digests: Vec<(String, String)>,
    /// Flattened parameter echo (grids, budgets, windows, shear constants).
    pub parameters: serde_json::Value,
    pub wall_time_seconds: f64,
}

/// Builder that times the run.
pub struct ManifestBuilder {
    command: String,
    input_digests: Vec<(String, String)>,
    parameters: serde_json::Value,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: impl Into<String>) -> Self {
        ManifestBuilder {
            command: command.into(),
            input_digests: Vec::new(),
            parameters: serde_json::Value::Null,
            started: Instant::now(),
        }
    }

    pub fn input_bytes(mut self, path: &str, bytes: &[u8]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.input_digests.push((path.to_string(), hex::encode(hasher.finalize())));
        self
    }

    pub fn parameters(mut self, parameters: serde_json::Value) -> Self {
        self.parameters = parameters;
        self
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            command: self.command,
            tool_version: TOOL_VERSION.to_string(),
            input_digests: self.input_digests,
            parameters: self.parameters,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}
