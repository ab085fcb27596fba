//! Lower and upper approximations, definability and the deterministic
//! region, checked against the per-object oracle.
//!
//! ```bash
//! cargo run -p rough-confusion --example approximations
//! ```

use rough_confusion::fixtures::electronics;
use rough_confusion::oracle::{oracle_lower, oracle_upper};
use rough_confusion::prelude::*;

fn main() -> rough_confusion::Result<()> {
    let ds = electronics();
    let granules = ds.partition_by(&["Price", "Sound"])?;
    let decisions = ds.decision_partition();
    let labels = ds.decision_labels();

    for (y, label) in decisions.blocks().iter().zip(&labels) {
        let low = lower_approximation(&granules, y)?;
        let upp = upper_approximation(&granules, y)?;
        assert_eq!(low, oracle_lower(&granules, y)?);
        assert_eq!(upp, oracle_upper(&granules, y)?);
        println!(
            "d = {label:<5} Y = {y}  Low = {low}  Upp = {upp}  definable: {}",
            is_definable(&granules, y)?
        );
    }

    let region = deterministic_region(&granules, &decisions)?;
    println!("deterministic region: {region}");

    let summary = approximation_summary(&granules, &decisions)?;
    for (c, label) in summary.classes.iter().zip(&labels) {
        println!(
            "d = {label:<5} |Y| = {}  |Low| = {}  |Upp| = {}  p_low = {}  p_upp = {}  alpha = {}",
            c.size,
            c.lower,
            c.upper,
            c.lower_precision(),
            c.upper_precision(),
            c.accuracy()
        );
    }
    println!("gamma = {}", summary.gamma);

    let two = ObjectSet::from([2, 3]);
    println!("{two} definable: {}", is_definable(&granules, &two)?);
    Ok(())
}
