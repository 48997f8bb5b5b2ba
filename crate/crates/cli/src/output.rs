use std::fs;
use std::path::{Path, PathBuf};

use cayleynet::io::{graph_from_json, graph_to_json};
use cayleynet::{Error, Graph, Guards};
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;
pub const EXIT_VERIFICATION: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_guard() { EXIT_GUARD } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<u8, Failure>;

pub fn guards() -> Result<Guards, Failure> {
    Ok(Guards::from_env()?)
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Graph, Failure> {
    graph_from_json(&read_text(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

/// Family metadata when the graph carries it, otherwise a SHA-256 of its
/// canonical JSON.
pub fn graph_identity(graph: &Graph) -> serde_json::Value {
    match graph.family_meta() {
        Some(meta) => serde_json::json!({ "family_meta": meta }),
        None => {
            let digest = Sha256::digest(graph_to_json(graph).as_bytes());
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            serde_json::json!({ "sha256": hex })
        }
    }
}
