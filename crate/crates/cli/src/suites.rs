//! Verification suites T1..T10: each runs a family of assertions over the
//! built-in catalog (or purpose-built groups) and reports pass/fail/skip
//! per assertion.

use std::fmt;

use anyhow::{anyhow, Result};

use gendim_core::classify;
use gendim_core::constructions::{self, MijKind};
use gendim_core::dimensions::{self, DimValue};
use gendim_core::elements::ElementTable;
use gendim_core::lattice::{NodeId, SubgroupLattice};
use gendim_core::{Budgets, PermGroup};

use crate::catalog;
use crate::record::GroupRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct Check {
    pub group: String,
    pub assertion: String,
    pub status: Status,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS  {} :: {}", self.group, self.assertion),
            Status::Fail(why) => write!(f, "FAIL  {} :: {} ({why})", self.group, self.assertion),
            Status::Skipped(why) => {
                write!(f, "SKIP  {} :: {} ({why})", self.group, self.assertion)
            }
        }
    }
}

pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, Status::Fail(_)))
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, Status::Skipped(_)))
            .count()
    }
}

pub const SUITE_NAMES: [&str; 10] = ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9", "t10"];

pub fn run_suite(name: &str, budgets: &Budgets) -> Result<SuiteReport> {
    let checks = match name.to_ascii_lowercase().as_str() {
        "t1" => t1_sandwich(budgets),
        "t2" => t2_frattini_invariance(budgets),
        "t3" => t3_nilpotent(budgets),
        "t4" => t4_supersolvable(budgets),
        "t5" => t5_counterexamples(budgets),
        "t6" => t6_abelian_flatness(budgets),
        "t7" => t7_collins_recursion(budgets),
        "t8" => t8_sylow_split(budgets),
        "t9" => t9_ktog(budgets),
        "t10" => t10_kprime_centralizes(budgets),
        other => return Err(anyhow!("unknown suite {other:?}")),
    };
    Ok(SuiteReport {
        name: name.to_string(),
        checks,
    })
}

struct Ctx {
    name: String,
    group: PermGroup,
    lattice: Option<SubgroupLattice>,
}

/// Catalog members of order at most `bound`, with lattices where possible.
fn catalog_ctx(budgets: &Budgets, bound: u64) -> Vec<Ctx> {
    catalog::order_at_most(budgets, bound)
        .into_iter()
        .map(|(e, group)| {
            let lattice = ElementTable::build(&group, budgets.max_order_enumerate)
                .ok()
                .and_then(|t| SubgroupLattice::enumerate(t, budgets).ok());
            Ctx {
                name: e.name,
                group,
                lattice,
            }
        })
        .collect()
}

fn exact(v: DimValue) -> Option<u32> {
    v.exact()
}

/// T1: m(G) <= MaxDim(G) <= i(G) across the catalog.
fn t1_sandwich(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 1_000) {
        let assertion = "m <= maxdim <= i".to_string();
        let Some(lat) = &ctx.lattice else {
            out.push(Check {
                group: ctx.name,
                assertion,
                status: Status::Skipped("no lattice within budget".into()),
            });
            continue;
        };
        let m = dimensions::dim_m(lat, budgets).value;
        let md = dimensions::maxdim(lat, budgets).value;
        let i = dimensions::dim_i(lat, budgets).value;
        let status = match (exact(m), exact(md), exact(i)) {
            (Some(m), Some(md), Some(i)) if m <= md && md <= i => Status::Pass,
            (Some(m), Some(md), Some(i)) => Status::Fail(format!("m={m} maxdim={md} i={i}")),
            _ => Status::Skipped("search budget exhausted".into()),
        };
        out.push(Check {
            group: ctx.name,
            assertion,
            status,
        });
    }
    out
}

/// T2: m and MaxDim are invariant under quotients by normal subgroups
/// inside the Frattini subgroup.
fn t2_frattini_invariance(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let phi = lat.frattini_subgroup();
        if phi == lat.trivial() {
            continue;
        }
        let phi_members = lat.node(phi).members.clone();
        let normal_in_phi: Vec<NodeId> = lat
            .normal_subgroups()
            .into_iter()
            .filter(|&nid| nid != lat.trivial() && lat.node(nid).members.is_subset(&phi_members))
            .collect();
        let m_g = exact(dimensions::dim_m(lat, budgets).value);
        let md_g = exact(dimensions::maxdim(lat, budgets).value);
        for nid in normal_in_phi {
            let assertion = format!(
                "m and maxdim unchanged by quotient mod normal N of order {} inside Phi",
                lat.node(nid).order
            );
            let n_group = lat.group_of_node(nid);
            let status = (|| -> Result<Status> {
                let qa = ctx.group.quotient_action(&n_group, budgets.coset_cap)?;
                let table = ElementTable::build(qa.group(), budgets.max_order_enumerate)?;
                let qlat = SubgroupLattice::enumerate(table, budgets)?;
                let m_q = exact(dimensions::dim_m(&qlat, budgets).value);
                let md_q = exact(dimensions::maxdim(&qlat, budgets).value);
                match (m_g, md_g, m_q, md_q) {
                    (Some(a), Some(b), Some(c), Some(d)) if a == c && b == d => Ok(Status::Pass),
                    (Some(a), Some(b), Some(c), Some(d)) => {
                        Ok(Status::Fail(format!("m {a} vs {c}, maxdim {b} vs {d}")))
                    }
                    _ => Ok(Status::Skipped("search budget exhausted".into())),
                }
            })()
            .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
            out.push(Check {
                group: ctx.name.clone(),
                assertion,
                status,
            });
        }
    }
    out
}

/// T3: MaxDim = m for nilpotent catalog members.
fn t3_nilpotent(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let report = match classify::classify(&ctx.group, Some(lat)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if report.nilpotent != Some(true) {
            continue;
        }
        let m = exact(dimensions::dim_m(lat, budgets).value);
        let md = exact(dimensions::maxdim(lat, budgets).value);
        let status = match (m, md) {
            (Some(m), Some(md)) if m == md => Status::Pass,
            (Some(m), Some(md)) => Status::Fail(format!("m={m} maxdim={md}")),
            _ => Status::Skipped("search budget exhausted".into()),
        };
        out.push(Check {
            group: ctx.name,
            assertion: "nilpotent: maxdim = m".into(),
            status,
        });
    }
    out
}

/// T4: MaxDim = m for supersolvable members; m = i when additionally
/// Phi(G) meets G' trivially.
fn t4_supersolvable(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let report = match classify::classify(&ctx.group, Some(lat)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if report.supersolvable != Some(true) {
            continue;
        }
        let m = exact(dimensions::dim_m(lat, budgets).value);
        let md = exact(dimensions::maxdim(lat, budgets).value);
        let status = match (m, md) {
            (Some(m), Some(md)) if m == md => Status::Pass,
            (Some(m), Some(md)) => Status::Fail(format!("m={m} maxdim={md}")),
            _ => Status::Skipped("search budget exhausted".into()),
        };
        out.push(Check {
            group: ctx.name.clone(),
            assertion: "supersolvable: maxdim = m".into(),
            status,
        });
        if report.phi_meets_derived_trivial == Some(true) {
            let i = exact(dimensions::dim_i(lat, budgets).value);
            let status = match (m, i) {
                (Some(m), Some(i)) if m == i => Status::Pass,
                (Some(m), Some(i)) => Status::Fail(format!("m={m} i={i}")),
                _ => Status::Skipped("search budget exhausted".into()),
            };
            out.push(Check {
                group: ctx.name,
                assertion: "supersolvable with Phi(G) meet G' = 1: m = i".into(),
                status,
            });
        }
    }
    out
}

/// T5: the certified counterexample bounds plus the ingested separation
/// witness.
fn t5_counterexamples(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for (label, kind, n, p, expected) in [
        ("S4wrC3", MijKind::Symmetric, 4u64, 3u64, 6u32),
        ("A5wrC3", MijKind::Alternating, 5, 3, 6),
        ("A5wrC2", MijKind::Alternating, 5, 2, 4),
    ] {
        let assertion = format!("maxdim_lower_bound = {expected} with coset-maximal members");
        let status = (|| -> Result<Status> {
            let fam = constructions::mij_family(kind, n, p, budgets)?;
            let members: Vec<_> = fam.members.iter().map(|m| m.declared()).collect();
            let bound =
                dimensions::maxdim_lower_bound(&fam.group, &members, &fam.certificate, budgets)?;
            if bound == expected {
                Ok(Status::Pass)
            } else {
                Ok(Status::Fail(format!("bound {bound}")))
            }
        })()
        .unwrap_or_else(|e| Status::Fail(format!("{e}")));
        out.push(Check {
            group: label.to_string(),
            assertion,
            status,
        });
    }
    // the ingested witness: m = 4, MaxDim = 5, i = 6
    let status = (|| -> Result<Status> {
        let record = GroupRecord::parse(catalog::SMALLGROUP_720_774)?;
        let g = record.group()?;
        let table = ElementTable::build(&g, budgets.max_order_enumerate)?;
        let lat = SubgroupLattice::enumerate(table, budgets)?;
        let m = exact(dimensions::dim_m(&lat, budgets).value);
        let md = exact(dimensions::maxdim(&lat, budgets).value);
        let i = exact(dimensions::dim_i(&lat, budgets).value);
        match (m, md, i) {
            (Some(4), Some(5), Some(6)) => Ok(Status::Pass),
            (m, md, i) => Ok(Status::Fail(format!("m={m:?} maxdim={md:?} i={i:?}"))),
        }
    })()
    .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
    out.push(Check {
        group: "SmallGroup(720,774)".into(),
        assertion: "m = 4, maxdim = 5, i = 6".into(),
        status,
    });
    out
}

/// T6: for abelian groups, m = i = number of prime-power cyclic factors.
fn t6_abelian_flatness(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        if !ctx.group.is_abelian() {
            continue;
        }
        let Some(lat) = &ctx.lattice else { continue };
        let assertion = "abelian: m = i = number of prime-power cyclic factors".to_string();
        let status = (|| -> Result<Status> {
            let invariants = classify::abelian_invariants(&ctx.group, budgets)?;
            let k: u32 = invariants
                .iter()
                .map(|&n| classify::prime_factors(n).len() as u32)
                .sum();
            let m = exact(dimensions::dim_m(lat, budgets).value);
            let i = exact(dimensions::dim_i(lat, budgets).value);
            match (m, i) {
                (Some(m), Some(i)) if m == k && i == k => Ok(Status::Pass),
                (Some(m), Some(i)) => Ok(Status::Fail(format!("k={k} m={m} i={i}"))),
                _ => Ok(Status::Skipped("search budget exhausted".into())),
            }
        })()
        .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
        out.push(Check {
            group: ctx.name,
            assertion,
            status,
        });
    }
    out
}

/// T7: m(G) = m(G/N) + [N not inside Phi(G)] for minimal normal abelian N.
fn t7_collins_recursion(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let m_g = exact(dimensions::dim_m(lat, budgets).value);
        let phi_members = lat.node(lat.frattini_subgroup()).members.clone();
        for nid in lat.minimal_normal_subgroups() {
            if !lat.node(nid).is_abelian {
                continue;
            }
            let inside_phi = lat.node(nid).members.is_subset(&phi_members);
            let assertion = format!(
                "Collins: m(G) = m(G/N) + {} for minimal normal abelian N of order {}",
                u32::from(!inside_phi),
                lat.node(nid).order
            );
            let status = (|| -> Result<Status> {
                let n_group = lat.group_of_node(nid);
                let qa = ctx.group.quotient_action(&n_group, budgets.coset_cap)?;
                let table = ElementTable::build(qa.group(), budgets.max_order_enumerate)?;
                let qlat = SubgroupLattice::enumerate(table, budgets)?;
                let m_q = exact(dimensions::dim_m(&qlat, budgets).value);
                match (m_g, m_q) {
                    (Some(mg), Some(mq)) => {
                        let expected = mq + u32::from(!inside_phi);
                        if mg == expected {
                            Ok(Status::Pass)
                        } else {
                            Ok(Status::Fail(format!("m(G)={mg} m(G/N)={mq}")))
                        }
                    }
                    _ => Ok(Status::Skipped("search budget exhausted".into())),
                }
            })()
            .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
            out.push(Check {
                group: ctx.name.clone(),
                assertion,
                status,
            });
        }
    }
    out
}

/// T8: m(G) = m(P) + m(K) for supersolvable G = P x| K.
fn t8_sylow_split(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let report = match classify::classify(&ctx.group, Some(lat)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if report.supersolvable != Some(true) || ctx.group.is_trivial() {
            continue;
        }
        let assertion = "supersolvable G = P x| K: m(G) = m(P) + m(K)".to_string();
        let status = (|| -> Result<Status> {
            let split = constructions::gtok_decompose(lat)?;
            let m_g = exact(dimensions::dim_m(lat, budgets).value);
            let m_p = exact(dimensions::dim_m_of_node(lat, split.sylow, budgets).value);
            let m_k = exact(dimensions::dim_m_of_node(lat, split.complement, budgets).value);
            match (m_g, m_p, m_k) {
                (Some(g), Some(p), Some(k)) if g == p + k => Ok(Status::Pass),
                (Some(g), Some(p), Some(k)) => {
                    Ok(Status::Fail(format!("m(G)={g} m(P)={p} m(K)={k}")))
                }
                _ => Ok(Status::Skipped("search budget exhausted".into())),
            }
        })()
        .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
        out.push(Check {
            group: ctx.name,
            assertion,
            status,
        });
    }
    out
}

/// T9: the character construction yields Frattini-free supersolvable groups
/// with m(G) = m(K) + k and i(G) = i(K) + k.
fn t9_ktog(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    let ks: [(&str, fn() -> gendim_core::Result<PermGroup>); 4] = [
        ("C2", || constructions::cyclic(2)),
        ("C6", || constructions::cyclic(6)),
        ("S3", || constructions::symmetric(3)),
        ("E(2,2)", || constructions::elementary_abelian(2, 2)),
    ];
    for (label, make) in ks {
        let assertion =
            "ktog: Frattini-free, supersolvable series exists, m(G)=m(K)+k, i(G)=i(K)+k"
                .to_string();
        let status = (|| -> Result<Status> {
            let k_group = make()?;
            let built = constructions::ktog_construct(&k_group, None, budgets)?;
            let rank = built.data.invariants.len() as u32;

            let k_table = ElementTable::build(&k_group, budgets.max_order_enumerate)?;
            let k_lat = SubgroupLattice::enumerate(k_table, budgets)?;
            let g_table = ElementTable::build(&built.group, budgets.max_order_enumerate)?;
            let g_lat = SubgroupLattice::enumerate(g_table, budgets)?;

            if g_lat.frattini_subgroup() != g_lat.trivial() {
                return Ok(Status::Fail("not Frattini-free".into()));
            }
            if classify::supersolvable_series(&g_lat).is_none() {
                return Ok(Status::Fail("no supersolvable series".into()));
            }
            let m_k = exact(dimensions::dim_m(&k_lat, budgets).value);
            let i_k = exact(dimensions::dim_i(&k_lat, budgets).value);
            let m_g = exact(dimensions::dim_m(&g_lat, budgets).value);
            let i_g = exact(dimensions::dim_i(&g_lat, budgets).value);
            match (m_k, i_k, m_g, i_g) {
                (Some(mk), Some(ik), Some(mg), Some(ig)) if mg == mk + rank && ig == ik + rank => {
                    Ok(Status::Pass)
                }
                (Some(mk), Some(ik), Some(mg), Some(ig)) => Ok(Status::Fail(format!(
                    "k={rank} m(K)={mk} i(K)={ik} m(G)={mg} i(G)={ig}"
                ))),
                _ => Ok(Status::Skipped("search budget exhausted".into())),
            }
        })()
        .unwrap_or_else(|e| Status::Fail(format!("{e}")));
        out.push(Check {
            group: format!("ktog({label})"),
            assertion,
            status,
        });
    }
    out
}

/// T10: for supersolvable G = P x| K with Phi(G) meet G' = 1, the derived
/// subgroup of K centralizes P; and commuting mod Phi(P) implies commuting.
fn t10_kprime_centralizes(budgets: &Budgets) -> Vec<Check> {
    let mut out = Vec::new();
    for ctx in catalog_ctx(budgets, 200) {
        let Some(lat) = &ctx.lattice else { continue };
        let report = match classify::classify(&ctx.group, Some(lat)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if report.supersolvable != Some(true)
            || report.phi_meets_derived_trivial != Some(true)
            || ctx.group.is_trivial()
        {
            continue;
        }
        let Ok(split) = constructions::gtok_decompose(lat) else {
            continue;
        };
        let table = lat.table();
        // K' centralizes P
        let k_group = lat.group_of_node(split.complement);
        let k_derived = match k_group.derived_subgroup() {
            Ok(d) => d,
            Err(_) => continue,
        };
        let mut centralizes = true;
        'outer: for kd in k_derived.generators() {
            let Some(kd_idx) = table.index_of(kd) else {
                centralizes = false;
                break;
            };
            for v in lat.node(split.sylow).members.ones() {
                if table.mul(kd_idx, v as u32) != table.mul(v as u32, kd_idx) {
                    centralizes = false;
                    break 'outer;
                }
            }
        }
        out.push(Check {
            group: ctx.name.clone(),
            assertion: "K' centralizes P".into(),
            status: if centralizes {
                Status::Pass
            } else {
                Status::Fail("a commutator acts nontrivially".into())
            },
        });

        // commuting mod Phi(P) implies commuting in G
        let p_group = lat.group_of_node(split.sylow);
        let status = (|| -> Result<Status> {
            let p_table = ElementTable::build(&p_group, budgets.max_order_enumerate)?;
            let p_lat = SubgroupLattice::enumerate(p_table, budgets)?;
            let phi_p_node = p_lat.frattini_subgroup();
            // members of Phi(P) as indices in the parent table
            let mut phi_p_parent = Vec::new();
            for e in p_lat.node(phi_p_node).members.ones() {
                let perm = p_lat.table().elem(e as u32);
                phi_p_parent.push(
                    table
                        .index_of(perm)
                        .ok_or_else(|| anyhow!("Phi(P) element missing in parent"))?,
                );
            }
            for g in lat.node(split.complement).members.ones() {
                for v in lat.node(split.sylow).members.ones() {
                    let (g, v) = (g as u32, v as u32);
                    // commutator g^-1 v^-1 g v
                    let comm = table.mul(table.mul(table.mul(table.inv(g), table.inv(v)), g), v);
                    if phi_p_parent.contains(&comm) && comm != 0 {
                        return Ok(Status::Fail(format!(
                            "nontrivial commutator lands in Phi(P)"
                        )));
                    }
                }
            }
            Ok(Status::Pass)
        })()
        .unwrap_or_else(|e| Status::Skipped(format!("{e}")));
        out.push(Check {
            group: ctx.name,
            assertion: "commuting mod Phi(P) implies commuting".into(),
            status,
        });
    }
    out
}
