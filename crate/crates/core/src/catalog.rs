//! graph6 catalog files: one record per line, `#` comments and blank lines
//! ignored.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, Graph};

/// Directory searched for `connected_le6.g6` before falling back to the
/// bundled copy.
pub const CATALOG_DIR_ENV: &str = "RCPOLY_CATALOG_DIR";
pub const CONNECTED_LE6_FILE: &str = "connected_le6.g6";

/// Connected graphs of order `n` up to isomorphism, `n = 0..=8`.
pub const CONNECTED_COUNTS: [usize; 9] = [1, 1, 1, 2, 6, 21, 112, 853, 11117];

const BUNDLED_CONNECTED_LE6: &str = include_str!("../data/connected_le6.g6");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// The record as written in the file.
    pub id: String,
    pub graph: Graph,
}

impl CatalogEntry {
    pub fn new(graph: Graph) -> Result<Self> {
        Ok(CatalogEntry { id: crate::to_graph6(&graph)?, graph })
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(i, line)| {
            let record = line.strip_prefix(">>graph6<<").unwrap_or(line);
            parse_graph6(record)
                .map(|graph| CatalogEntry { id: record.to_string(), graph })
                .map_err(|e| Error::Catalog(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

/// Checks that `entries` looks like the complete catalog of connected graphs
/// on `1..=max_n` vertices: all connected, no repeated records, and the
/// per-order counts match [`CONNECTED_COUNTS`].
pub fn validate_connected_catalog(entries: &[CatalogEntry], max_n: usize) -> Result<()> {
    if max_n >= CONNECTED_COUNTS.len() {
        return Err(Error::Catalog(format!("no reference counts for order {max_n}")));
    }
    let mut per_order = vec![0usize; max_n + 1];
    let mut ids: Vec<&str> = Vec::with_capacity(entries.len());
    for e in entries {
        let n = e.graph.n();
        if n == 0 || n > max_n {
            return Err(Error::Catalog(format!("{}: order {n} outside 1..={max_n}", e.id)));
        }
        if !e.graph.is_connected() {
            return Err(Error::Catalog(format!("{}: not connected", e.id)));
        }
        per_order[n] += 1;
        ids.push(&e.id);
    }
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Catalog(format!("duplicate record {}", w[0])));
    }
    for n in 1..=max_n {
        if per_order[n] != CONNECTED_COUNTS[n] {
            return Err(Error::Catalog(format!(
                "order {n}: expected {} connected graphs, found {}",
                CONNECTED_COUNTS[n], per_order[n]
            )));
        }
    }
    Ok(())
}

/// Location of the connected order-≤6 catalog named by the environment, if any.
pub fn catalog_dir_path() -> Option<PathBuf> {
    std::env::var_os(CATALOG_DIR_ENV).map(|d| Path::new(&d).join(CONNECTED_LE6_FILE))
}

/// The connected order-≤6 catalog (143 graphs), validated. Read from
/// `$RCPOLY_CATALOG_DIR/connected_le6.g6` when set, else the bundled copy.
pub fn connected_le6() -> Result<Vec<CatalogEntry>> {
    let entries = match catalog_dir_path() {
        Some(path) => load_catalog(&path)?,
        None => parse_catalog(BUNDLED_CONNECTED_LE6)?,
    };
    validate_connected_catalog(&entries, 6)?;
    Ok(entries)
}

/// Bundled catalog, restricted to orders in `lo..=hi`.
pub fn connected_orders(lo: usize, hi: usize) -> Result<Vec<CatalogEntry>> {
    Ok(connected_le6()?
        .into_iter()
        .filter(|e| (lo..=hi).contains(&e.graph.n()))
        .collect())
}
