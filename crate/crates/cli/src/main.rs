//! gendim: generation-dimension invariants of finite permutation groups.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gendim_core::dimensions;
use gendim_core::elements::ElementTable;
use gendim_core::lattice::SubgroupLattice;
use gendim_core::{Budgets, Error as CoreError, PermGroup};

use gendim::analysis::{self, GroupReport};
use gendim::cache::ResultCache;
use gendim::record::GroupRecord;
use gendim::report::Format;
use gendim::{catalog, expr, report, suites};

/// Exit codes: 0 pass, 1 assertion failure, 2 budget exhaustion, 3 input
/// error.
const EXIT_FAIL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "gendim", version, about)]
struct Cli {
    /// Largest group order that gets fully enumerated.
    #[arg(long, default_value_t = 50_000, global = true)]
    max_order_enumerate: usize,
    /// Node cap for subgroup-lattice enumeration.
    #[arg(long, default_value_t = 20_000, global = true)]
    max_lattice_nodes: usize,
    /// Node cap for the dimension searches.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    search_nodes: u64,
    /// Output format for tables.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,
    /// Directory for the result cache (omit to disable caching).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute r, m, i and MaxDim with witnesses for one group.
    Dims { input: String },
    /// Structural flags: abelian, solvable, nilpotent, supersolvable, ...
    Classify { input: String },
    /// List the maximal subgroups (orders and generators).
    Maximal { input: String },
    /// The Frattini subgroup (order and generators).
    Frattini { input: String },
    /// MaxDim only, with the witness family.
    Maxdim { input: String },
    /// Build a group from a construction expression and write its record.
    Construct {
        expr: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite (t1..t10 or "all").
    Verify { suite: String },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Emit the catalog result table (CSV or JSON).
    Report {
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Compute (and cache) reports for every catalog member.
    Run,
}

fn budgets_of(cli: &Cli) -> Budgets {
    Budgets {
        max_order_enumerate: cli.max_order_enumerate,
        max_lattice_nodes: cli.max_lattice_nodes,
        search_nodes: cli.search_nodes,
        ..Budgets::default()
    }
}

/// Input resolution: an existing path is loaded as a group file, anything
/// else is parsed as a construction expression.
fn load_input(input: &str, budgets: &Budgets) -> Result<(String, PermGroup)> {
    let path = Path::new(input);
    if path.exists() {
        let record = GroupRecord::load(path)?;
        let group = record.group()?;
        Ok((record.name, group))
    } else if input == "sg720_774" {
        let record = GroupRecord::parse(catalog::SMALLGROUP_720_774)?;
        let group = record.group()?;
        Ok((record.name, group))
    } else {
        let group = expr::build(input, budgets)
            .with_context(|| format!("{input:?} is neither a file nor a construction"))?;
        Ok((input.to_string(), group))
    }
}

fn lattice_of(g: &PermGroup, budgets: &Budgets) -> Result<SubgroupLattice> {
    let table = ElementTable::build(g, budgets.max_order_enumerate)?;
    Ok(SubgroupLattice::enumerate(table, budgets)?)
}

fn exit_for_error(e: &anyhow::Error) -> ExitCode {
    if let Some(core) = e.downcast_ref::<CoreError>() {
        match core {
            CoreError::EnumerationCap { .. }
            | CoreError::LatticeNodeBudget { .. }
            | CoreError::SearchBudget { .. }
            | CoreError::CosetCap { .. } => return ExitCode::from(EXIT_BUDGET),
            _ => {}
        }
    }
    ExitCode::from(EXIT_INPUT)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_for_error(&e)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let budgets = budgets_of(cli);
    match &cli.command {
        Command::Dims { input } => {
            let (name, group) = load_input(input, &budgets)?;
            let cache = ResultCache::new(cli.cache_dir.as_deref());
            let report = match cache.get(&group, &budgets) {
                Some(mut hit) => {
                    hit.name = name;
                    hit
                }
                None => {
                    let r = analysis::analyze(&name, &group, &budgets);
                    cache.put(&group, &budgets, &r);
                    r
                }
            };
            emit_reports(cli, std::slice::from_ref(&report), None)?;
            let bounded = [&report.r, &report.m, &report.i, &report.maxdim]
                .iter()
                .filter_map(|v| v.as_ref())
                .any(|v| !v.exact);
            Ok(if bounded || !report.skipped.is_empty() {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Classify { input } => {
            let (name, group) = load_input(input, &budgets)?;
            let lat = lattice_of(&group, &budgets).ok();
            let report = gendim_core::classify::classify(&group, lat.as_ref())?;
            println!("name: {name}");
            println!("order: {}", group.order());
            println!("abelian: {}", report.abelian);
            println!("solvable: {}", report.solvable);
            println!("nilpotent: {}", flag(report.nilpotent));
            println!("supersolvable: {}", flag(report.supersolvable));
            println!("frattini_free: {}", flag(report.frattini_free));
            println!(
                "phi_meets_derived_trivial: {}",
                flag(report.phi_meets_derived_trivial)
            );
            if let Some(lat) = &lat {
                match gendim_core::classify::supersolvable_series(lat) {
                    Some(chain) => {
                        let orders: Vec<String> = chain
                            .iter()
                            .map(|&n| lat.node(n).order.to_string())
                            .collect();
                        println!("supersolvable_series_orders: {}", orders.join(" < "));
                    }
                    None => println!("supersolvable_series_orders: none"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Maximal { input } => {
            let (name, group) = load_input(input, &budgets)?;
            let lat = lattice_of(&group, &budgets)?;
            println!(
                "{name}: {} maximal subgroups",
                lat.maximal_subgroups().len()
            );
            for &m in lat.maximal_subgroups() {
                let node = lat.node(m);
                let gens: Vec<String> = node
                    .gens
                    .iter()
                    .map(|&e| format!("{}", lat.table().elem(e)))
                    .collect();
                println!(
                    "order {} index {} normal {} <{}>",
                    node.order,
                    lat.table().len() as u64 / node.order,
                    node.is_normal,
                    gens.join(", ")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Frattini { input } => {
            let (name, group) = load_input(input, &budgets)?;
            let lat = lattice_of(&group, &budgets)?;
            let phi = lat.node(lat.frattini_subgroup());
            let gens: Vec<String> = phi
                .gens
                .iter()
                .map(|&e| format!("{}", lat.table().elem(e)))
                .collect();
            println!("{name}: Frattini subgroup of order {}", phi.order);
            if !gens.is_empty() {
                println!("generators: {}", gens.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Maxdim { input } => {
            let (name, group) = load_input(input, &budgets)?;
            let lat = lattice_of(&group, &budgets)?;
            let out = dimensions::maxdim(&lat, &budgets);
            println!("{name}: maxdim = {}", out.value);
            for &node in &out.witness {
                println!("member of order {}", lat.node(node).order);
            }
            Ok(if out.value.is_exact() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_BUDGET)
            })
        }
        Command::Construct { expr: e, out } => {
            let group = expr::build(e, &budgets)?;
            let record = GroupRecord::from_group(e, &group);
            let text = serde_json::to_string_pretty(&record)?;
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let names: Vec<String> = if suite.eq_ignore_ascii_case("all") {
                suites::SUITE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![suite.clone()]
            };
            let mut failed = 0;
            let mut skipped = 0;
            for name in names {
                let r = suites::run_suite(&name, &budgets)?;
                println!("== suite {} ==", r.name);
                for check in &r.checks {
                    println!("{check}");
                }
                failed += r.failed();
                skipped += r.skipped();
            }
            println!("failures: {failed}, skipped: {skipped}");
            Ok(if failed > 0 {
                ExitCode::from(EXIT_FAIL)
            } else if skipped > 0 {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Catalog { action } => match action {
            CatalogAction::Run => {
                let reports = catalog_reports(cli, &budgets)?;
                let bounded = reports
                    .iter()
                    .flat_map(|r| [&r.r, &r.m, &r.i, &r.maxdim])
                    .filter_map(|v| v.as_ref())
                    .any(|v| !v.exact);
                println!("computed {} catalog reports", reports.len());
                Ok(if bounded {
                    ExitCode::from(EXIT_BUDGET)
                } else {
                    ExitCode::SUCCESS
                })
            }
        },
        Command::Report { out } => {
            let reports = catalog_reports(cli, &budgets)?;
            emit_reports(cli, &reports, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn flag(v: Option<bool>) -> String {
    match v {
        None => "unknown".into(),
        Some(b) => b.to_string(),
    }
}

fn catalog_reports(cli: &Cli, budgets: &Budgets) -> Result<Vec<GroupReport>> {
    let cache = ResultCache::new(cli.cache_dir.as_deref());
    let mut reports = Vec::new();
    for entry in catalog::builtin() {
        let group = entry
            .build(budgets)
            .map_err(|e| anyhow!("{}: {e}", entry.name))?;
        let report = match cache.get(&group, budgets) {
            Some(mut hit) => {
                hit.name = entry.name.clone();
                hit
            }
            None => {
                let r = analysis::analyze(&entry.name, &group, budgets);
                cache.put(&group, budgets, &r);
                r
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

fn emit_reports(cli: &Cli, reports: &[GroupReport], out: Option<&Path>) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    report::write(&mut buf, cli.format.into(), reports)?;
    match out {
        Some(path) => std::fs::write(path, buf)?,
        None => print!("{}", String::from_utf8_lossy(&buf)),
    }
    Ok(())
}
