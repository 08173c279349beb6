//! End-to-end behaviour: field counts, seed independence, report formats,
//! cache and command line.

use ifl::classgroup::quad_class_group;
use ifl::criteria::report::FieldVerdicts;
use ifl::criteria::{analyze, AnalyzeOptions, CriterionReport};
use ifl::cubic::{enumerate_cubic_fields, hasse_count_check};
use ifl::kernel::int::is_fundamental_discriminant;
use rayon::prelude::*;
use std::process::Command;

#[test]
fn cubic_field_counts_match_three_rank() {
    let ds: Vec<i64> = (3i64..=1500).map(|x| -x).filter(|&d| is_fundamental_discriminant(d)).collect();
    let bad: Vec<(i64, usize, usize)> = ds
        .par_iter()
        .filter_map(|&d| {
            let r = quad_class_group(d).unwrap().p_rank(3);
            let n = enumerate_cubic_fields(d).unwrap().len();
            (!hasse_count_check(n, r as u32)).then_some((d, n, r))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

fn fired(v: &[FieldVerdicts]) -> Vec<(String, [bool; 5])> {
    v.iter()
        .map(|f| {
            (
                f.poly.clone(),
                [f.thm11.fires(), f.thm12.fires(), f.thm26.fires(), f.prop31.fires(), f.cor14.fires()],
            )
        })
        .collect()
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    for (d, levels) in [(-9934i64, 0u32), (-211, 1)] {
        let a = analyze(d, &AnalyzeOptions { levels, seed: 1, ..Default::default() }).unwrap();
        let b = analyze(d, &AnalyzeOptions { levels, seed: 20_240_611, ..Default::default() }).unwrap();
        assert_eq!(fired(&a.verdicts.per_field), fired(&b.verdicts.per_field), "D = {d}");
        for (x, y) in a.invariants.fields.iter().zip(&b.invariants.fields) {
            assert_eq!(x.a_f(), y.a_f());
            assert_eq!(x.d_orders(), y.d_orders());
        }
    }
}

#[test]
fn report_json_round_trips() {
    for d in [-211i64, -23, -9934] {
        let r = analyze(d, &AnalyzeOptions { levels: 0, ..Default::default() }).unwrap();
        let s = r.to_canonical_json().unwrap();
        let back: CriterionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_canonical_json().unwrap(), s);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["certification", "invariants", "request", "timings", "verdicts", "version"]);
    }
}

#[test]
fn csv_has_one_row_per_field() {
    let r = analyze(-9934, &AnalyzeOptions { levels: 0, ..Default::default() }).unwrap();
    let rows = r.csv_rows();
    assert_eq!(rows.len(), 4);
    let cols = CriterionReport::csv_header().split(',').count();
    assert!(rows.iter().all(|row| row.split(',').count() == cols));
    assert!(rows.iter().all(|row| row.starts_with("-9934,")));
}

#[test]
fn cli_analyze_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ifl"))
            .args(["analyze", "--disc", "-211", "--levels", "0", "--json"])
            .env("IFL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["invariants"]["a_k"], serde_json::json!([3]));
}

#[test]
fn cli_reports_errors_with_status_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_ifl"))
        .args(["cubic-fields", "--disc", "-12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = Command::new(env!("CARGO_BIN_EXE_ifl"))
        .args(["real-quad", "--d", "2", "--primes", "5,11"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["xs_invariants"], serde_json::json!([3]));
}
