use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Command;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything that determines a run's output, plus the output checksum.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub inputs: Vec<InputDigest>,
    pub tool_version: String,
    pub output_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &Command) -> Self {
        let value = serde_json::to_value(command).expect("command serializes");
        let (name, parameters) = match value {
            Value::Object(map) if map.len() == 1 => map.into_iter().next().expect("one entry"),
            other => (String::new(), other),
        };
        RunManifest {
            command: name,
            parameters,
            inputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            output_sha256: String::new(),
        }
    }

    pub fn record_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest { path: path.to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn finish(&mut self, output: &[u8]) {
        self.output_sha256 = sha256_hex(output);
    }
}
