use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The connection parameter α ∈ [−1, 1].
///
/// α = −1 is the mixture connection and α = +1 the exponential one. Geodesic
/// code needs α < 1 (the exponent 2/(1−α) blows up at +1) and the closed-form
/// divergences need |α| < 1; each operation checks what it requires rather
/// than clamping.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(-1.0..=1.0).contains(&value) {
            return Err(Error::invalid(format!(
                "alpha must lie in [-1, 1], got {value}"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The dual parameter −α.
    pub fn dual(self) -> Self {
        Self(-self.0)
    }

    /// (1 − α)/2, the exponent of the α-embedding.
    pub fn embedding_exponent(self) -> f64 {
        0.5 * (1.0 - self.0)
    }

    /// (1 + α)/2, the exponent of the (−α)-embedding.
    pub fn dual_exponent(self) -> f64 {
        0.5 * (1.0 + self.0)
    }

    /// Rejects α = +1, where the α-geodesics and the α-embedding are undefined.
    pub fn require_below_one(self) -> Result<Self> {
        if self.0 < 1.0 {
            Ok(self)
        } else {
            Err(Error::invalid(
                "alpha = 1 is singular here; use the exponential-limit operation",
            ))
        }
    }

    /// Rejects both limits α = ±1; the closed-form divergences diverge there.
    pub fn require_interior(self) -> Result<Self> {
        if self.0.abs() < 1.0 {
            Ok(self)
        } else {
            Err(Error::invalid(format!(
                "alpha = {} is a limit point; use the Kullback-Leibler / relative-entropy operations",
                self.0
            )))
        }
    }
}

impl TryFrom<f64> for AlphaParam {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<AlphaParam> for f64 {
    fn from(a: AlphaParam) -> f64 {
        a.0
    }
}
