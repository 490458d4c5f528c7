//! Domain spec files: JSON with per-obstacle diagnostics.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use hardyscope_core::geometry::Obstacle;
use hardyscope_core::DomainSpec;
use sha2::{Digest, Sha256};

/// Parses a spec, naming the offending obstacle entry on failure.
pub fn parse_spec(text: &str) -> Result<DomainSpec> {
    let value: serde_json::Value = serde_json::from_str(text).context("malformed spec file")?;
    let obstacles = value
        .get("obstacles")
        .and_then(|o| o.as_array())
        .ok_or_else(|| anyhow!("spec file has no `obstacles` array"))?;
    for (i, entry) in obstacles.iter().enumerate() {
        serde_json::from_value::<Obstacle>(entry.clone())
            .map_err(|e| anyhow!("obstacle #{i}: {e}"))?;
    }
    serde_json::from_value(value).map_err(|e| anyhow!("invalid spec: {e}"))
}

pub fn load_spec(path: &Path) -> Result<DomainSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("in {}", path.display()))
}

pub fn spec_to_string(spec: &DomainSpec) -> Result<String> {
    Ok(serde_json::to_string_pretty(spec)?)
}

/// SHA-256 of the canonical (compact) serialization.
pub fn spec_hash(spec: &DomainSpec) -> Result<String> {
    let canonical = serde_json::to_string(spec)?;
    Ok(format!("{:x}", Sha256::digest(canonical.as_bytes())))
}
