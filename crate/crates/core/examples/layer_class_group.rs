//! Class group of the first layer `F_1 = F B_1` of a complex cubic field and
//! the subgroup `D(F_1)` generated by the primes above 3.
//!
//! cargo run --release --example layer_class_group -- -211

use ifl::classgroup::{d_subgroup_order, direct_d_check, general_class_group, ClassGroupOptions};
use ifl::cubic::{enumerate_cubic_fields, layer_field};

fn main() -> ifl::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-211);
    for cf in enumerate_cubic_fields(d)? {
        let layer = layer_field(&cf.field, 1, 3)?;
        println!("F: {}   F_1: {}", cf.field.poly(), layer.field.poly());
        let g = general_class_group(&layer.field, &ClassGroupOptions::default())?;
        println!(
            "Cl(F_1) = {}  [{}]  |FB| = {}  relations = {}  trials = {}  {:.1}s",
            g.group.describe(),
            g.certification,
            g.factor_base.len(),
            g.relations.len(),
            g.trials,
            g.seconds
        );
        println!("Sylow-3: {}", g.group.sylow_p(3).describe());
        println!("|D(F_1)| = {}", d_subgroup_order(&layer, &g, 3)?);
        let t = std::time::Instant::now();
        let direct = direct_d_check(&layer, Some(&cf.field), 1)?;
        println!("direct check: {direct:?}  {:.1}s", t.elapsed().as_secs_f64());
    }
    Ok(())
}
