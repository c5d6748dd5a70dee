//! Harness-level invariants: deterministic reports, cache soundness, and
//! table output shape.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gendim::analysis::{self, GroupReport};
use gendim::cache::ResultCache;
use gendim::catalog;
use gendim::record::GroupRecord;
use gendim::report::{self, Format};
use gendim_core::{constructions, Budgets};

fn small_entries() -> Vec<(String, gendim_core::PermGroup)> {
    let b = Budgets::default();
    catalog::builtin()
        .into_iter()
        .filter(|e| !e.name.starts_with("SmallGroup") && e.name != "S6" && e.name != "A6")
        .take(40)
        .map(|e| {
            let g = e.build(&b).unwrap();
            (e.name, g)
        })
        .collect()
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let b = Budgets::default();
    for (name, g) in small_entries().into_iter().take(12) {
        let r1 = analysis::analyze(&name, &g, &b).without_timings();
        let r2 = analysis::analyze(&name, &g, &b).without_timings();
        let j1 = serde_json::to_string(&r1).unwrap();
        let j2 = serde_json::to_string(&r2).unwrap();
        assert_eq!(j1, j2, "{name}: reports differ between runs");
    }
}

#[test]
fn cache_round_trips_and_reproduces_reports() {
    let b = Budgets::default();
    let dir = std::env::temp_dir().join(format!("gendim-cache-test-{}", std::process::id()));
    let cache = ResultCache::new(Some(&dir));
    let entries = small_entries();
    // a randomized 10-group sample: cached equals freshly computed
    let mut rng = StdRng::seed_from_u64(0xcac4e);
    for _ in 0..10 {
        let (name, g) = &entries[rng.random_range(0..entries.len())];
        let fresh = analysis::analyze(name, g, &b);
        cache.put(g, &b, &fresh);
        let hit = cache.get(g, &b).expect("cache hit after put");
        assert_eq!(
            hit.without_timings(),
            fresh.without_timings(),
            "{name}: cache does not reproduce the report"
        );
    }
    // a different budget must miss
    let other = Budgets {
        search_nodes: 12345,
        ..b
    };
    let (_, g) = &entries[0];
    assert!(
        cache.get(g, &other).is_none(),
        "budget change must invalidate"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_and_json_tables() {
    let b = Budgets::default();
    let reports: Vec<GroupReport> = small_entries()
        .into_iter()
        .take(3)
        .map(|(name, g)| analysis::analyze(&name, &g, &b))
        .collect();
    let mut csv = Vec::new();
    report::write(&mut csv, Format::Csv, &reports).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), report::CSV_HEADER);
    assert_eq!(lines.count(), 3);

    // empty input still yields the header
    let mut empty = Vec::new();
    report::write(&mut empty, Format::Csv, &[]).unwrap();
    assert_eq!(String::from_utf8(empty).unwrap().trim(), report::CSV_HEADER);

    // the JSON table carries witnesses
    let mut json = Vec::new();
    report::write(&mut json, Format::Json, &reports).unwrap();
    let parsed: Vec<GroupReport> = serde_json::from_slice(&json).unwrap();
    assert_eq!(parsed.len(), 3);
    assert!(parsed.iter().any(|r| r
        .witnesses
        .as_ref()
        .is_some_and(|w| !w.m_sequence.is_empty())));
    // every nonempty witness family comes with its certificate
    for r in &parsed {
        if let Some(w) = &r.witnesses {
            assert_eq!(w.maxdim_family.len(), w.maxdim_certificate.len());
        }
    }
}

#[test]
fn klein_four_row_reads_2_2_2_2() {
    let b = Budgets::default();
    let g = constructions::elementary_abelian(2, 2).unwrap();
    let r = analysis::analyze("E(2,2)", &g, &b);
    let row = report::csv_row(&r);
    assert!(
        row.contains(",2,2,2,2,"),
        "expected r,m,i,maxdim = 2,2,2,2 in {row}"
    );
}

#[test]
fn smallgroup_file_round_trip() {
    let record = GroupRecord::parse(catalog::SMALLGROUP_720_774).unwrap();
    let text = serde_json::to_string(&record).unwrap();
    let again = GroupRecord::parse(&text).unwrap();
    assert_eq!(record.degree, again.degree);
    assert_eq!(record.generators, again.generators);
}

#[test]
fn binary_exit_codes() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_gendim");
    // input error: malformed group file
    let dir = std::env::temp_dir().join(format!("gendim-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name":"bad","degree":3,"generators":[[0,0,1]]}"#).unwrap();
    let status = Command::new(bin)
        .args(["dims", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    // input error: unknown construction
    let status = Command::new(bin)
        .args(["dims", "frob(7)"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    // success path
    let status = Command::new(bin).args(["dims", "S3"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    // budget exhaustion: order over the enumeration cap
    let status = Command::new(bin)
        .args(["--max-order-enumerate", "10", "maxdim", "S4"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
