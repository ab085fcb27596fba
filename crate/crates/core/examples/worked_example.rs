//! End-to-end walk through the six-product electronics table: granules,
//! granule frequency matrix, maximal row classifier, confusion matrix and
//! the headline indices.
//!
//! ```bash
//! cargo run -p rough-confusion --example worked_example
//! ```

use rough_confusion::fixtures::electronics;
use rough_confusion::prelude::*;

fn main() -> rough_confusion::Result<()> {
    let ds = electronics();
    let decisions = ds.decision_partition();

    // Price and Screen alone already separate object 1 from object 6.
    let by_screen = ds.partition_by(&["Price", "Screen"])?;
    println!("Price+Screen granules: {}", fmt_blocks(&by_screen));

    let granules = ds.partition_by(&["Price", "Sound"])?;
    println!("Price+Sound granules:  {}", fmt_blocks(&granules));
    println!("decision classes:      {}", fmt_blocks(&decisions));

    let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &decisions)?;
    println!("\ngranule frequency matrix");
    for (g, row) in gfm.cells().iter().enumerate() {
        println!("  X{} {:?}  size {}", g + 1, row, gfm.granule_sizes()[g]);
    }
    println!("  class sizes {:?}, n = {}", gfm.class_sizes(), gfm.total());

    let mrc = maximal_row_classifier(&gfm, TieBreak::Lowest);
    let cm = confusion_matrix(&gfm, &mrc)?;
    println!("\nconfusion matrix (rows predicted)");
    for (i, row) in cm.cells().iter().enumerate() {
        println!("  ^Y{} {:?}  sum {}", i + 1, row, cm.row_sums()[i]);
    }

    let summary = approximation_summary(&granules, &decisions)?;
    println!("\ngamma          = {}", summary.gamma);
    println!("success ratio  = {}", success_ratio(&cm));
    println!("alpha_hat      = {}", alpha_hat(&cm));
    println!("gamma_hat/(2-gamma_hat) = {}", alpha_from_gamma(gamma_hat(&cm))?);
    Ok(())
}

fn fmt_blocks(p: &Partition) -> String {
    p.blocks().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
