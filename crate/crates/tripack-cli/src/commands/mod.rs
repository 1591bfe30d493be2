pub mod experiment;
pub mod generate;
pub mod round;
pub mod solve;
pub mod verify;

use std::path::Path;

use crate::CliError;
use sha2::{Digest, Sha256};
use tripack::Digraph;

/// Reads and parses an instance file, returning its content hash.
pub fn load_instance(path: &Path) -> Result<(Digraph, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))?;
    let g = tripack::parse_digraph(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok((g, hex))
}

/// Millisecond phase timer used when `--timings` is requested.
pub struct Phases {
    start: std::time::Instant,
    entries: std::collections::BTreeMap<String, u128>,
}

impl Phases {
    pub fn new() -> Phases {
        Phases {
            start: std::time::Instant::now(),
            entries: std::collections::BTreeMap::new(),
        }
    }

    pub fn mark(&mut self, name: &str) {
        self.entries
            .insert(name.to_string(), self.start.elapsed().as_millis());
        self.start = std::time::Instant::now();
    }

    pub fn into_map(self) -> std::collections::BTreeMap<String, u128> {
        self.entries
    }
}
