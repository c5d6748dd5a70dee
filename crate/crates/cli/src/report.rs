//! Tabular output: CSV (summary columns) or JSON (everything, witnesses
//! included). Rows are sorted by name so identical inputs give identical
//! bytes, up to the timing fields which JSON consumers can strip.

use std::io::Write;

use anyhow::Result;

use crate::analysis::{GroupReport, ReportValue};

pub const CSV_HEADER: &str =
    "name,order,degree,r,m,i,maxdim,abelian,solvable,nilpotent,supersolvable,frattini_free,phi_meets_derived_trivial,flat,skipped,total_ms";

fn value_cell(v: &Option<ReportValue>) -> String {
    match v {
        None => String::new(),
        Some(rv) if rv.exact => rv.value.to_string(),
        Some(rv) => format!(">={}", rv.value),
    }
}

fn flag_cell(v: Option<bool>) -> String {
    match v {
        None => "unknown".to_string(),
        Some(true) => "true".to_string(),
        Some(false) => "false".to_string(),
    }
}

pub fn csv_row(r: &GroupReport) -> String {
    let total_ms: u64 = r.timings_ms.values().sum();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.name,
        r.order,
        r.degree,
        value_cell(&r.r),
        value_cell(&r.m),
        value_cell(&r.i),
        value_cell(&r.maxdim),
        flag_cell(r.flags.abelian),
        flag_cell(r.flags.solvable),
        flag_cell(r.flags.nilpotent),
        flag_cell(r.flags.supersolvable),
        flag_cell(r.flags.frattini_free),
        flag_cell(r.flags.phi_meets_derived_trivial),
        flag_cell(r.flags.flat),
        r.skipped.join("; "),
        total_ms,
    )
}

pub fn write_csv(out: &mut dyn Write, reports: &[GroupReport]) -> Result<()> {
    let mut rows: Vec<&GroupReport> = reports.iter().collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", csv_row(r))?;
    }
    Ok(())
}

pub fn write_json(out: &mut dyn Write, reports: &[GroupReport]) -> Result<()> {
    let mut rows: Vec<&GroupReport> = reports.iter().collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    let text = serde_json::to_string_pretty(&rows)?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn write(out: &mut dyn Write, format: Format, reports: &[GroupReport]) -> Result<()> {
    match format {
        Format::Csv => write_csv(out, reports),
        Format::Json => write_json(out, reports),
    }
}
