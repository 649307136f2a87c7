use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Output of every command. All fields except `timing` depend only on the
/// input and the options.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultDocument {
    pub command: CommandEcho,
    /// SHA-256 of the input file, hex encoded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<Degeneracy>,
    pub tolerances: BTreeMap<String, f64>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CommandEcho {
    pub name: String,
    pub options: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Degeneracy {
    pub degenerate_lambda1: Vec<usize>,
    pub relative_tolerance: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Timing {
    pub wall_seconds: f64,
}

impl ResultDocument {
    /// The document with `timing` zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: Timing { wall_seconds: 0.0 },
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn round_trip() {
        let doc = ResultDocument {
            command: CommandEcho {
                name: "gse".into(),
                options: BTreeMap::from([("method".to_string(), Value::from("blocks"))]),
            },
            input_sha256: Some(sha256_hex(b"{}")),
            n: Some(4),
            results: serde_json::json!({"energy": -6.000000000000001}),
            degeneracy: Some(Degeneracy {
                degenerate_lambda1: vec![2],
                relative_tolerance: 1e-10,
            }),
            tolerances: BTreeMap::from([("hermiticity".to_string(), 1e-8)]),
            timing: Timing { wall_seconds: 0.25 },
        };
        let back: ResultDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.results["energy"].as_f64(), Some(-6.000000000000001));
    }
}
