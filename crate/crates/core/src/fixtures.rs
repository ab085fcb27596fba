//! Small reference data sets used by the examples and tests.

use crate::system::{Attribute, DecisionSystem};

/// Attribute names of [`electronics`].
pub const ELECTRONICS_CONDITIONS: [&str; 4] = ["Price", "Guarantee", "Sound", "Screen"];

/// Six consumer electronics products described by price, guarantee, sound
/// and screen size, with a `high`/`low` decision. Objects are numbered 1..=6.
pub fn electronics() -> DecisionSystem {
    DecisionSystem::from_rows(
        vec![
            Attribute::new("Price", ["high", "low", "low", "medium", "medium", "high"]),
            Attribute::new(
                "Guarantee",
                [
                    "24 months",
                    "6 months",
                    "12 months",
                    "12 months",
                    "18 months",
                    "12 months",
                ],
            ),
            Attribute::new("Sound", ["Stereo", "Mono", "Stereo", "Stereo", "Stereo", "Stereo"]),
            Attribute::new("Screen", ["76", "66", "36", "51", "51", "51"]),
        ],
        Attribute::new("d", ["high", "low", "low", "high", "high", "low"]),
    )
    .expect("fixture is a valid decision system")
}

/// The same table as CSV, header first, decision in the last column.
pub const ELECTRONICS_CSV: &str = "\
Price,Guarantee,Sound,Screen,d
high,24 months,Stereo,76,high
low,6 months,Mono,66,low
low,12 months,Stereo,36,low
medium,12 months,Stereo,51,high
medium,18 months,Stereo,51,high
high,12 months,Stereo,51,low
";
