//! The JSON record every invocation emits.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub planecode: &'static str,
    pub planecode_cli: &'static str,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            planecode: planecode::VERSION,
            planecode_cli: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordError {
    pub kind: String,
    pub message: String,
}

/// One record per invocation. `wall_time_ms` is the only field that varies
/// between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub argv: Vec<String>,
    pub config: Value,
    pub versions: Versions,
    /// sha256 of every input file, keyed by path.
    pub inputs: BTreeMap<String, String>,
    pub wall_time_ms: u128,
    pub ok: bool,
    pub outcome: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<RecordError>,
}

impl RunRecord {
    pub fn new(command: impl Into<String>, argv: Vec<String>, config: Value) -> RunRecord {
        RunRecord {
            command: command.into(),
            argv,
            config,
            versions: Versions::default(),
            inputs: BTreeMap::new(),
            wall_time_ms: 0,
            ok: true,
            outcome: Value::Null,
            error: None,
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.insert(path.to_string(), sha256_hex(bytes));
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.wall_time_ms = elapsed.as_millis();
    }

    pub fn fail(&mut self, kind: &str, message: impl Into<String>) {
        self.ok = false;
        self.error = Some(RecordError {
            kind: kind.to_string(),
            message: message.into(),
        });
    }

    /// The record without its timing, for determinism comparisons.
    pub fn comparable(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_time_ms");
        }
        v
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
