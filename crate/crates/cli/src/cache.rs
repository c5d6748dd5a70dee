//! Result cache keyed by a content hash of (degree, sorted generator
//! images). Entries carry the tool version and the budgets they were
//! computed under; a mismatch in either invalidates the entry, so a cache
//! hit always reproduces the identical report.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use gendim_core::{Budgets, PermGroup};

use crate::analysis::{GroupReport, TOOL_VERSION};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    tool_version: String,
    budgets: BudgetKey,
    report: GroupReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BudgetKey {
    max_order_enumerate: usize,
    max_lattice_nodes: usize,
    search_nodes: u64,
}

impl From<&Budgets> for BudgetKey {
    fn from(b: &Budgets) -> Self {
        BudgetKey {
            max_order_enumerate: b.max_order_enumerate,
            max_lattice_nodes: b.max_lattice_nodes,
            search_nodes: b.search_nodes,
        }
    }
}

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    pub fn new(dir: Option<&Path>) -> ResultCache {
        if let Some(d) = dir {
            let _ = std::fs::create_dir_all(d);
        }
        ResultCache {
            dir: dir.map(Path::to_path_buf),
        }
    }

    pub fn disabled() -> ResultCache {
        ResultCache { dir: None }
    }

    /// Content hash of the group itself; independent of its name.
    pub fn key(g: &PermGroup) -> String {
        let mut gens: Vec<Vec<usize>> =
            g.generators().iter().map(|p| p.images().to_vec()).collect();
        gens.sort();
        let mut hasher = Sha256::new();
        hasher.update(g.degree().to_le_bytes());
        for gen in &gens {
            for &x in gen {
                hasher.update(x.to_le_bytes());
            }
            hasher.update([0xff]);
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, g: &PermGroup, budgets: &Budgets) -> Option<GroupReport> {
        let path = self.path_for(&Self::key(g))?;
        let text = std::fs::read_to_string(path).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.tool_version != TOOL_VERSION || entry.budgets != BudgetKey::from(budgets) {
            return None;
        }
        Some(entry.report)
    }

    pub fn put(&self, g: &PermGroup, budgets: &Budgets, report: &GroupReport) {
        let Some(path) = self.path_for(&Self::key(g)) else {
            return;
        };
        let entry = CacheEntry {
            tool_version: TOOL_VERSION.to_string(),
            budgets: BudgetKey::from(budgets),
            report: report.clone(),
        };
        if let Ok(text) = serde_json::to_string_pretty(&entry) {
            let _ = std::fs::write(path, text);
        }
    }
}
