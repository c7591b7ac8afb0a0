//! `manifest.txt`: the configuration, per-run parameters, failures and a
//! SHA-256 for every artifact, as sorted `key = value` lines.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::table::parse_record;
use crate::CliError;

pub const FILE: &str = "manifest.txt";

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write(
    out: &Path,
    config: &[(String, String)],
    params: &[(String, String)],
    failures: &[String],
    artifacts: &[PathBuf],
) -> Result<PathBuf, CliError> {
    let mut m = BTreeMap::new();
    for (k, v) in config {
        m.insert(format!("config.{k}"), v.clone());
    }
    for (k, v) in params {
        m.insert(k.clone(), v.clone());
    }
    m.insert("status".into(), if failures.is_empty() { "ok".into() } else { "partial".into() });
    for (i, f) in failures.iter().enumerate() {
        m.insert(format!("failure.{i:03}"), f.replace('\n', " "));
    }
    for a in artifacts {
        let bytes = std::fs::read(out.join(a))?;
        m.insert(format!("artifact.{}", slash(a)), sha256_hex(&bytes));
    }
    let text: String = m.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    let path = out.join(FILE);
    std::fs::write(&path, text)?;
    Ok(path)
}

fn slash(p: &Path) -> String {
    p.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/")
}

/// Artifacts whose checksum no longer matches.
pub fn verify(out: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(out.join(FILE))?;
    let mut bad = Vec::new();
    for (k, v) in parse_record(&text) {
        if let Some(rel) = k.strip_prefix("artifact.") {
            match std::fs::read(out.join(rel)) {
                Ok(b) if sha256_hex(&b) == v => {}
                _ => bad.push(rel.to_string()),
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
