//! Exact rational values and their report representation.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Non-negative exact rational, always kept in lowest terms.
pub type Rational = Ratio<u64>;

/// Builds `num / den`. Panics when `den` is zero.
pub fn ratio(num: u64, den: u64) -> Rational {
    Ratio::new(num, den)
}

/// Renders `value` with six decimal places, rounding half up.
pub fn to_decimal_string(value: &Rational) -> String {
    let scaled = rounded_millionths(value);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

fn rounded_millionths(value: &Rational) -> u128 {
    let num = u128::from(*value.numer()) * 1_000_000;
    let den = u128::from(*value.denom());
    (2 * num + den) / (2 * den)
}

/// `{num, den, decimal}` triple used in serialized reports. The decimal is
/// a six-place rendering of the exact value and is never read back.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: u64,
    pub den: u64,
    pub decimal: f64,
}

impl From<&Rational> for RationalRepr {
    fn from(value: &Rational) -> Self {
        let decimal = rounded_millionths(value).to_f64().unwrap_or(f64::NAN) / 1e6;
        RationalRepr {
            num: *value.numer(),
            den: *value.denom(),
            decimal,
        }
    }
}

impl From<Rational> for RationalRepr {
    fn from(value: Rational) -> Self {
        RationalRepr::from(&value)
    }
}

impl RationalRepr {
    /// Exact value; `None` when the denominator is zero.
    pub fn value(&self) -> Option<Rational> {
        if self.den.is_zero() {
            None
        } else {
            Some(Ratio::new(self.num, self.den))
        }
    }
}
