//! Rational exponents applied in log space.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

impl Exponent {
    pub const fn new(num: i64, den: i64) -> Self {
        Exponent { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `base^(num/den)` for `base >= 0`.
    pub fn pow(self, base: f64) -> f64 {
        if base == 0.0 {
            return if self.num > 0 {
                0.0
            } else if self.num == 0 {
                1.0
            } else {
                f64::INFINITY
            };
        }
        (base.ln() * self.num as f64 / self.den as f64).exp()
    }
}

/// Index of the first maximum.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}
