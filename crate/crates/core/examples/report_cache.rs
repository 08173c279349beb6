//! The content-addressed report cache: a second request is served from disk.
//!
//! cargo run --release --example report_cache

use ifl::criteria::cache::Cache;
use ifl::criteria::{analyze, AnalyzeOptions};
use std::time::Instant;

fn main() -> ifl::Result<()> {
    let dir = std::env::temp_dir().join(format!("ifl-cache-example-{}", std::process::id()));
    let cache = Cache::new(&dir);
    let opts = AnalyzeOptions { levels: 0, ..Default::default() };
    let req = opts.request(-211);
    println!("key {}", Cache::key(&req)?);

    let t = Instant::now();
    let report = match cache.get(&req)? {
        Some(r) => r,
        None => {
            let r = analyze(-211, &opts)?;
            cache.put(&r)?;
            r
        }
    };
    println!("first:  {:.3}s", t.elapsed().as_secs_f64());
    let t = Instant::now();
    let again = cache.get(&req)?.expect("cached");
    println!("second: {:.3}s  identical {}", t.elapsed().as_secs_f64(), again == report);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
