//! Everything that can be said about lower and upper approximation sizes
//! from the confusion matrix alone, next to the true values.
//!
//! ```bash
//! cargo run -p rough-confusion --example bounds
//! ```

use rough_confusion::fixtures::electronics;
use rough_confusion::prelude::*;

fn main() -> rough_confusion::Result<()> {
    let ds = electronics();
    let granules = ds.partition_by(&["Price", "Sound"])?;
    let decisions = ds.decision_partition();
    let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &decisions)?;
    let f = maximal_row_classifier(&gfm, TieBreak::Lowest);
    let cm = confusion_matrix(&gfm, &f)?;
    let bounds = confusion_bounds(&cm, &validate_overlap(&f, &gfm)?, true);
    let truth = approximation_summary(&granules, &decisions)?;

    println!("class  nl  nl_m  nl**  nl*  |Y|  nu*  nu**  nu_m  nu");
    for (j, (b, t)) in bounds.classes.iter().zip(&truth.classes).enumerate() {
        println!(
            "Y{:<4} {:>3} {:>5} {:>5} {:>4} {:>4} {:>4} {:>5} {:>5} {:>3}",
            j + 1,
            t.lower,
            b.nl_m.unwrap_or_default(),
            b.nl_star2,
            b.nl_star,
            b.class_size,
            b.nu_star,
            b.nu_star2,
            b.nu_m.unwrap_or_default(),
            t.upper
        );
    }

    for (j, a) in alpha_hat_per_class(&cm).iter().enumerate() {
        match a {
            Some(a) => println!("alpha_hat[Y{}] = {a}", j + 1),
            None => println!("alpha_hat[Y{}] undefined", j + 1),
        }
    }
    println!(
        "alpha_hat = {} = gamma_hat/(2-gamma_hat) = {}",
        alpha_hat(&cm),
        alpha_from_gamma(gamma_hat(&cm))?
    );
    Ok(())
}
