//! End-to-end analysis of Q(sqrt D): invariants, per-field verdicts and the
//! any-field aggregate, printed as a table and as canonical JSON.
//!
//! cargo run --release --example analyze_report -- -9934 0

use ifl::criteria::{analyze, AnalyzeOptions};

fn main() -> ifl::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(-9934);
    let levels: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let report = analyze(d, &AnalyzeOptions { levels, ..Default::default() })?;
    print!("{}", report.table());
    println!("any F: thm12 {}", report.verdicts.any_field.thm12.label());
    let json = report.to_canonical_json()?;
    println!("{} bytes of JSON, keys sorted", json.len());
    Ok(())
}
