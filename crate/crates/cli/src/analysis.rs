//! One-stop computation of a group's report: classification flags plus the
//! four dimension invariants with witnesses, within explicit budgets.
//! Anything a budget rules out is reported as skipped with the reason,
//! never silently wrong.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use gendim_core::classify::{self, ClassificationReport};
use gendim_core::dimensions::{self, DimValue};
use gendim_core::elements::ElementTable;
use gendim_core::lattice::SubgroupLattice;
use gendim_core::{Budgets, PermGroup};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportValue {
    pub value: u32,
    /// False when a search budget ran out and the value is a lower bound.
    pub exact: bool,
}

impl From<DimValue> for ReportValue {
    fn from(v: DimValue) -> Self {
        ReportValue {
            value: v.value(),
            exact: v.is_exact(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Flags {
    pub abelian: Option<bool>,
    pub solvable: Option<bool>,
    pub nilpotent: Option<bool>,
    pub supersolvable: Option<bool>,
    pub frattini_free: Option<bool>,
    pub phi_meets_derived_trivial: Option<bool>,
    pub flat: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Witnesses {
    /// Longest irredundant generating sequence found, as image arrays.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m_sequence: Vec<Vec<usize>>,
    /// Longest irredundant sequence found.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub i_sequence: Vec<Vec<usize>>,
    /// Largest general-position family of maximal subgroups found: orders
    /// and generators per member.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maxdim_family: Vec<SubgroupWitness>,
    /// Certificate of the family: element j lies in member i iff j != i.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maxdim_certificate: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SubgroupWitness {
    pub order: u64,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupReport {
    pub name: String,
    pub degree: usize,
    pub order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<ReportValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ReportValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<ReportValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxdim: Option<ReportValue>,
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    pub tool_version: String,
    /// Milliseconds per stage. Not part of determinism comparisons.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, u64>,
}

impl GroupReport {
    /// The report with timing fields removed, for byte-stable comparisons.
    pub fn without_timings(&self) -> GroupReport {
        GroupReport {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }
}

/// Builds the enumerated-regime context if the budgets allow it.
pub fn lattice_for(g: &PermGroup, budgets: &Budgets) -> Option<SubgroupLattice> {
    let table = ElementTable::build(g, budgets.max_order_enumerate).ok()?;
    SubgroupLattice::enumerate(table, budgets).ok()
}

/// Full report for one group.
pub fn analyze(name: &str, g: &PermGroup, budgets: &Budgets) -> GroupReport {
    let mut timings = BTreeMap::new();
    let mut skipped = Vec::new();

    let t0 = Instant::now();
    let lattice = match ElementTable::build(g, budgets.max_order_enumerate) {
        Ok(table) => match SubgroupLattice::enumerate(table, budgets) {
            Ok(lat) => Some(lat),
            Err(e) => {
                skipped.push(format!("lattice: {e}"));
                None
            }
        },
        Err(e) => {
            skipped.push(format!("enumeration: {e}"));
            None
        }
    };
    timings.insert("lattice".to_string(), t0.elapsed().as_millis() as u64);

    let classification = classify::classify(g, lattice.as_ref()).unwrap_or_else(|e| {
        skipped.push(format!("classify: {e}"));
        ClassificationReport::default()
    });

    let mut report = GroupReport {
        name: name.to_string(),
        degree: g.degree(),
        order: g.order().to_string(),
        r: None,
        m: None,
        i: None,
        maxdim: None,
        flags: Flags {
            abelian: Some(classification.abelian),
            solvable: Some(classification.solvable),
            nilpotent: classification.nilpotent,
            supersolvable: classification.supersolvable,
            frattini_free: classification.frattini_free,
            phi_meets_derived_trivial: classification.phi_meets_derived_trivial,
            flat: None,
        },
        witnesses: None,
        skipped,
        tool_version: TOOL_VERSION.to_string(),
        timings_ms: BTreeMap::new(),
    };

    let Some(lat) = lattice else {
        report.timings_ms = timings;
        return report;
    };

    let t0 = Instant::now();
    match dimensions::rank_r(&lat, budgets) {
        Ok(out) => report.r = Some(out.value.into()),
        Err(e) => report.skipped.push(format!("r: {e}")),
    }
    timings.insert("r".to_string(), t0.elapsed().as_millis() as u64);

    let t0 = Instant::now();
    let m_out = dimensions::dim_m(&lat, budgets);
    report.m = Some(m_out.value.into());
    timings.insert("m".to_string(), t0.elapsed().as_millis() as u64);

    let t0 = Instant::now();
    let i_out = dimensions::dim_i(&lat, budgets);
    report.i = Some(i_out.value.into());
    timings.insert("i".to_string(), t0.elapsed().as_millis() as u64);

    let t0 = Instant::now();
    let md_out = dimensions::maxdim(&lat, budgets);
    report.maxdim = Some(md_out.value.into());
    timings.insert("maxdim".to_string(), t0.elapsed().as_millis() as u64);

    if let (Some(m), Some(i)) = (&report.m, &report.i) {
        if m.exact && i.exact {
            report.flags.flat = Some(m.value == i.value);
        }
    }

    let table = lat.table();
    let seq_images = |elems: &[u32]| -> Vec<Vec<usize>> {
        elems
            .iter()
            .map(|&e| table.elem(e).images().to_vec())
            .collect()
    };
    let maxdim_certificate = dimensions::certify_family(&lat, &md_out.witness)
        .map(|(cert, _)| seq_images(&cert))
        .unwrap_or_default();
    report.witnesses = Some(Witnesses {
        m_sequence: seq_images(&m_out.witness),
        i_sequence: seq_images(&i_out.witness),
        maxdim_family: md_out
            .witness
            .iter()
            .map(|&node| SubgroupWitness {
                order: lat.node(node).order,
                generators: lat
                    .node(node)
                    .gens
                    .iter()
                    .map(|&e| table.elem(e).images().to_vec())
                    .collect(),
            })
            .collect(),
        maxdim_certificate,
    });
    report.timings_ms = timings;
    report
}
