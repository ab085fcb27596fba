//! The maximal row classifier under each tie-break policy, compared against
//! exhaustive search over every classifier.
//!
//! ```bash
//! cargo run -p rough-confusion --example maximal_row_classifier
//! ```

use rough_confusion::oracle::exhaustive_best_classifier;
use rough_confusion::prelude::*;

fn main() -> rough_confusion::Result<()> {
    let gfm = GranuleFrequencyMatrix::from_counts(vec![
        vec![1, 1, 0],
        vec![0, 5, 5],
        vec![3, 0, 1],
        vec![0, 2, 2],
        vec![0, 0, 4],
    ])?;

    for policy in [
        TieBreak::Lowest,
        TieBreak::Highest,
        TieBreak::SeededRandom { seed: 1 },
        TieBreak::SeededRandom { seed: 2 },
    ] {
        let f = maximal_row_classifier(&gfm, policy);
        let cm = confusion_matrix(&gfm, &f)?;
        let classes: Vec<usize> = f.assignment().iter().map(|c| c + 1).collect();
        println!(
            "{:<16} -> {classes:?}  success {}",
            policy.to_string(),
            success_ratio(&cm)
        );
    }

    let (best, ratio) = exhaustive_best_classifier(&gfm)?;
    let classes: Vec<usize> = best.assignment().iter().map(|c| c + 1).collect();
    println!("exhaustive best  -> {classes:?}  success {ratio}");
    Ok(())
}
