//! Run manifests: what was run, on which inputs, and digests of everything
//! written. Apart from `wall_time_s`, a manifest is a function of the inputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("tern48 ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub designs_emitted: Option<usize>,
    pub d12_codes: Option<usize>,
    pub distinct_beta: Option<usize>,
    pub inequivalent_classes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub inputs: Vec<FileDigest>,
    pub tool_version: String,
    pub wall_time_s: f64,
    pub counts: Counts,
    pub outputs: Vec<FileDigest>,
    /// Resumption token when a budget stopped the run early.
    pub resume: Option<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest_file(path: &Path, shown: &str) -> std::io::Result<FileDigest> {
    Ok(FileDigest {
        path: shown.to_string(),
        sha256: sha256_hex(&std::fs::read(path)?),
    })
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_s: 0.0,
            counts: Counts::default(),
            outputs: Vec::new(),
            resume: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    /// Writes `manifest.json` into `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::write(dir.join("manifest.json"), self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn json_round_trip() {
        let mut m = RunManifest::new("expand");
        m.param("limit", 25);
        m.counts.designs_emitted = Some(25);
        m.resume = Some("9:25".into());
        let back: RunManifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
