//! SNAP-style edge-list files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use partcover_core::instances::{edge_list_instance, parse_edge_list, EdgeList, GraphKind, Instance};

pub fn load_edge_list(path: &Path) -> Result<EdgeList> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Loads `path` as a graph instance with `groups` uniform random labels.
pub fn load_graph_instance(path: &Path, groups: usize, seed: u64, kind: GraphKind) -> Result<Instance> {
    let list = load_edge_list(path)?;
    let name = path
        .file_stem()
        .map_or("edgelist".into(), |s| s.to_string_lossy().into_owned());
    Ok(edge_list_instance(&name, &list, groups, seed, kind)?)
}
