//! Instance files: one JSON document with a schema tag and version.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use partcover_core::instances::Instance;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "partcover-instance";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema: String,
    version: u32,
    instance: Instance,
}

/// Serializes `instance` as pretty-printed JSON ending in a newline.
pub fn to_json(instance: &Instance) -> Result<String> {
    let envelope = Envelope {
        schema: SCHEMA.into(),
        version: VERSION,
        instance: instance.clone(),
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    Ok(text)
}

/// Parses and validates an instance document.
pub fn from_json(text: &str) -> Result<Instance> {
    let envelope: Envelope = serde_json::from_str(text).context("malformed instance file")?;
    if envelope.schema != SCHEMA {
        bail!("unknown schema `{}`, expected `{SCHEMA}`", envelope.schema);
    }
    if envelope.version != VERSION {
        bail!("unsupported instance file version {}", envelope.version);
    }
    envelope.instance.validate()?;
    Ok(envelope.instance)
}

pub fn save(path: &Path, instance: &Instance) -> Result<()> {
    fs::write(path, to_json(instance)?).with_context(|| format!("writing {}", path.display()))
}

pub fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("loading {}", path.display()))
}
