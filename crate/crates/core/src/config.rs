use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Width of the floating-point type used for numeric eigenstructure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FloatPrecision {
    /// IEEE binary64.
    Double,
    /// Double-double (about 106 significant bits).
    DoubleDouble,
}

/// Search bounds, precision and tolerances shared by the pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest absolute coefficient tried in unit enumeration.
    pub coeff_bound: u32,
    /// Largest `|nᵢ|` tried in the specialness search.
    pub search_bound: u32,
    /// Bits of precision for certified log enclosures and determinants.
    pub precision_bits: u32,
    /// Acceptance threshold for floating residuals.
    pub tolerance: f64,
    pub float_precision: FloatPrecision,
    /// Relative pivot threshold for numeric kernel computations.
    pub rank_tolerance: f64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            coeff_bound: 8,
            search_bound: 3,
            precision_bits: 256,
            tolerance: 1e-8,
            float_precision: FloatPrecision::Double,
            rank_tolerance: 1e-6,
        }
    }
}

impl Budgets {
    pub fn validate(&self) -> Result<()> {
        if self.coeff_bound == 0 || self.search_bound == 0 || self.precision_bits == 0 {
            return domain("bounds and precision must be positive");
        }
        if !(self.tolerance > 0.0 && self.rank_tolerance > 0.0) {
            return domain("tolerances must be positive");
        }
        Ok(())
    }
}
