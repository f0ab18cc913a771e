//! Pipeline configuration knobs.
//!
//! The defaults reproduce the documented default pipeline exactly; every
//! knob exists because the underlying method leaves the corresponding
//! choice open, and flipping knobs is how sensitivity analyses are run.

use serde::{Deserialize, Serialize};

/// How pairwise conflict coefficients are aggregated into the kernel
/// width used by the feature expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KMode {
    /// Total conflict mass over all unordered evidence pairs.
    #[default]
    PairwiseSum,
    /// Arithmetic mean over all unordered evidence pairs.
    PairwiseMean,
    /// Largest pairwise conflict.
    PairwiseMax,
}

/// Numeric encoding of an entry's 1-based position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderScale {
    /// Position `i` of `n` enters the kernel as `i / n`, keeping
    /// `e^{-k·order²}` from collapsing rows of long evidences.
    #[default]
    Normalized,
    /// Position `i` enters the kernel as the raw integer `i`.
    Raw,
}

/// Coefficient scaling of the truncated series expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientMode {
    /// Series term `j` uses `(2·order·mass)^j / j!`; the width only
    /// enters through the exponential envelope.
    #[default]
    Plain,
    /// Series term `j` uses `(2k·order·mass)^j / j!`, the factorization
    /// whose full series reproduces the kernel exactly.
    WidthScaled,
}

/// Axis along which uncertainty scores are normalized into weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightAxis {
    /// For each proposition, weights sum to 1 across evidences.
    #[default]
    Evidences,
    /// Within each evidence, weights sum to 1 across propositions.
    Propositions,
}

/// Output format of the command-line driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

/// Every knob of the fusion pipeline, with defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct Configuration {
    pub k_mode: KMode,
    pub order_scale: OrderScale,
    /// Number of series dimensions kept per proposition.
    pub dims: usize,
    pub coefficients: CoefficientMode,
    /// Drop uncertainty products whose two factors play the same
    /// structural role toward the scored proposition.
    pub role_filter: bool,
    pub weight_axis: WeightAxis,
    pub output: OutputFormat,
    /// Emit every intermediate stage, not just the fused result.
    pub trace: bool,
}

impl Default for Configuration {
    fn default() -> Self {
        Configuration {
            k_mode: KMode::default(),
            order_scale: OrderScale::default(),
            dims: 4,
            coefficients: CoefficientMode::default(),
            role_filter: false,
            weight_axis: WeightAxis::default(),
            output: OutputFormat::default(),
            trace: false,
        }
    }
}
