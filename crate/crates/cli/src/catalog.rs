//! The built-in catalog: constructed groups only, plus the one ingested
//! data file. Entries are built on demand; names are stable and unique.

use anyhow::Result;

use gendim_core::{Budgets, PermGroup};

use crate::expr;
use crate::record::GroupRecord;

pub const SMALLGROUP_720_774: &str = include_str!("../data/smallgroup_720_774.json");

#[derive(Debug, Clone)]
pub enum Source {
    Expr(String),
    Data(&'static str),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
}

impl CatalogEntry {
    fn expr(name: &str, e: &str) -> CatalogEntry {
        CatalogEntry {
            name: name.to_string(),
            source: Source::Expr(e.to_string()),
        }
    }

    pub fn build(&self, budgets: &Budgets) -> Result<PermGroup> {
        match &self.source {
            Source::Expr(e) => expr::build(e, budgets),
            Source::Data(text) => {
                let record = GroupRecord::parse(text)?;
                Ok(record.group()?)
            }
        }
    }

    pub fn record(&self, budgets: &Budgets) -> Result<GroupRecord> {
        match &self.source {
            Source::Expr(_) => Ok(GroupRecord::from_group(&self.name, &self.build(budgets)?)),
            Source::Data(text) => GroupRecord::parse(text),
        }
    }
}

/// Every built-in catalog member.
pub fn builtin() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    // cyclic groups to order 64
    for n in 1..=64u64 {
        out.push(CatalogEntry::expr(&format!("C{n}"), &format!("C{n}")));
    }
    // elementary abelian to order 64
    for (p, max_n) in [(2u64, 6u32), (3, 3), (5, 2), (7, 2)] {
        for n in 1..=max_n {
            if (p as f64).powi(n as i32) > 64.0 {
                break;
            }
            out.push(CatalogEntry::expr(
                &format!("E({p},{n})"),
                &format!("ea({p},{n})"),
            ));
        }
    }
    // dihedral groups to order 64
    for order in (6..=64u64).step_by(2) {
        out.push(CatalogEntry::expr(
            &format!("D{order}"),
            &format!("D{order}"),
        ));
    }
    // generalized quaternion groups to order 64
    for order in [8u64, 16, 32, 64] {
        out.push(CatalogEntry::expr(
            &format!("Q{order}"),
            &format!("Q{order}"),
        ));
    }
    // symmetric and alternating groups
    for n in 3..=6u64 {
        out.push(CatalogEntry::expr(&format!("S{n}"), &format!("S{n}")));
    }
    for n in 4..=6u64 {
        out.push(CatalogEntry::expr(&format!("A{n}"), &format!("A{n}")));
    }
    // wreath products Z/p wr Z/p
    out.push(CatalogEntry::expr("C2wrC2", "wr(C2,2)"));
    out.push(CatalogEntry::expr("C3wrC3", "wr(C3,3)"));
    // direct products
    out.push(CatalogEntry::expr("S3xS3", "S3 x S3"));
    out.push(CatalogEntry::expr("S3xC3", "S3 x C3"));
    out.push(CatalogEntry::expr("A4xC2", "A4 x C2"));
    out.push(CatalogEntry::expr("Q8xC3", "Q8 x C3"));
    out.push(CatalogEntry::expr("D8xC2", "D8 x C2"));
    out.push(CatalogEntry::expr("S4xC2", "S4 x C2"));
    // abelian groups with mixed invariants
    for orders in [
        "abelian(2,4)",
        "abelian(4,4)",
        "abelian(2,2,3)",
        "abelian(8,3)",
        "abelian(9,2)",
        "abelian(3,3,5)",
        "abelian(25)",
        "abelian(4,6)",
        "abelian(2,2,2,3)",
        "abelian(16,2)",
    ] {
        out.push(CatalogEntry::expr(orders, orders));
    }
    // character-based semidirect constructions
    out.push(CatalogEntry::expr("ktog(C2)", "ktog(C2)"));
    out.push(CatalogEntry::expr("ktog(C6)", "ktog(C6)"));
    out.push(CatalogEntry::expr("ktog(S3)", "ktog(S3)"));
    out.push(CatalogEntry::expr("ktog(E(2,2))", "ktog(ea(2,2))"));
    // the ingested separation witness
    out.push(CatalogEntry {
        name: "SmallGroup(720,774)".to_string(),
        source: Source::Data(SMALLGROUP_720_774),
    });
    out
}

/// Catalog members whose order is at most the bound (used by the
/// order-restricted suites).
pub fn order_at_most(budgets: &Budgets, bound: u64) -> Vec<(CatalogEntry, PermGroup)> {
    builtin()
        .into_iter()
        .filter_map(|e| {
            let g = e.build(budgets).ok()?;
            let order = g.order_usize()? as u64;
            (order <= bound).then_some((e, g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_buildable() {
        let b = Budgets::default();
        let entries = builtin();
        let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        for e in &entries {
            let g = e
                .build(&b)
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(g.degree() >= 1);
        }
    }

    #[test]
    fn smallgroup_record_is_valid() {
        let record = GroupRecord::parse(SMALLGROUP_720_774).unwrap();
        assert_eq!(record.group().unwrap().order_usize(), Some(720));
    }
}
