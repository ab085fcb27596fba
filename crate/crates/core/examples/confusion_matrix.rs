//! Building a rough confusion matrix from a hand-written classifier mapping,
//! including the overlap check and the predictor sets.
//!
//! ```bash
//! cargo run -p rough-confusion --example confusion_matrix
//! ```

use std::path::Path;

use rough_confusion::fixtures::electronics;
use rough_confusion::prelude::*;

fn main() -> rough_confusion::Result<()> {
    let ds = electronics();
    let granules = ds.partition_by(&["Price", "Sound"])?;
    let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &ds.decision_partition())?;

    for mapping in ["1 1\n2 2\n3 2\n4 1\n", "1 1\n2 2\n3 2\n4 2 # X4 overlaps only Y1\n"] {
        let f = RoughClassifier::parse_mapping(mapping, gfm.granule_count(), gfm.class_count(), Path::new("inline"))?;
        let check = validate_overlap(&f, &gfm)?;
        let cm = confusion_matrix(&gfm, &f)?;
        println!("mapping {:?}", f.to_mapping().lines().skip(1).collect::<Vec<_>>());
        for class in 0..gfm.class_count() {
            println!(
                "  ^Y{} = {}  row {:?}",
                class + 1,
                predictor_set(&f, class, &granules)?,
                cm.cells()[class]
            );
        }
        println!("  success ratio {}", success_ratio(&cm));
        if check.satisfies_rule {
            println!("  every granule overlaps its class");
        } else {
            let bad: Vec<String> = check.violations.iter().map(|g| format!("X{}", g + 1)).collect();
            println!("  overlap rule broken by {}", bad.join(", "));
        }
    }
    Ok(())
}
