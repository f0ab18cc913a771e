//! Radial-basis kernel over (order, mass) pairs and its truncated
//! series expansion.
//!
//! Each entry of an ordinal evidence is a point `(order, mass)`. The
//! kernel `e^{-k·(order - mass)²}` measures how well an entry's position
//! agrees with its mass; factoring the kernel through its series gives a
//! feature vector per entry, of which the leading `dims` components are
//! kept (4 by default).

use crate::config::{CoefficientMode, OrderScale};
use crate::error::{Error, Result};
use crate::frame::Proposition;
use crate::mass::OrdinalEvidence;

/// Kernel value for one (order, mass) pair: `e^{-k·(order - mass)²}`,
/// always in `(0, 1]`.
pub fn mrbf_kernel(order: f64, mass: f64, k: f64) -> Result<f64> {
    if k < 0.0 || !k.is_finite() {
        return Err(Error::NegativeWidth(k));
    }
    let d = order - mass;
    Ok((-k * d * d).exp())
}

/// A truncated feature vector: component `j` (0-based) holds the `j`-th
/// series term of the kernel factorization for one (order, mass) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    components: Vec<f64>,
}

impl FeatureVector {
    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dims(&self) -> usize {
        self.components.len()
    }

    /// Sum of all kept components; bounded by the kernel value when the
    /// width-scaled coefficients are used.
    pub fn sum(&self) -> f64 {
        self.components.iter().sum()
    }

    pub(crate) fn from_components(components: Vec<f64>) -> Self {
        FeatureVector { components }
    }
}

/// Expand one (order, mass) pair into `dims` series terms with the
/// width-scaled coefficients: term `j` is
/// `((2k·order·mass)^j / j!) · e^{-k·(order² + mass²)}`.
///
/// Summed to infinity the terms reproduce [`mrbf_kernel`]; truncation
/// only discards non-negative tail terms, so the partial sum never
/// exceeds the kernel.
pub fn expand(order: f64, mass: f64, k: f64, dims: usize) -> Result<FeatureVector> {
    expand_with(order, mass, k, dims, CoefficientMode::WidthScaled)
}

/// Expand with an explicit coefficient mode. `CoefficientMode::Plain`
/// uses `(2·order·mass)^j / j!` coefficients, which keep the width out
/// of the polynomial part; its partial sums are not bounded by the
/// kernel.
pub fn expand_with(
    order: f64,
    mass: f64,
    k: f64,
    dims: usize,
    coefficients: CoefficientMode,
) -> Result<FeatureVector> {
    if k < 0.0 || !k.is_finite() {
        return Err(Error::NegativeWidth(k));
    }
    if dims == 0 {
        return Err(Error::ZeroDims);
    }
    let envelope = (-k * (order * order + mass * mass)).exp();
    let x = match coefficients {
        CoefficientMode::WidthScaled => 2.0 * k * order * mass,
        CoefficientMode::Plain => 2.0 * order * mass,
    };
    let mut components = Vec::with_capacity(dims);
    let mut term = envelope; // x^0 / 0! · envelope
    for j in 0..dims {
        components.push(term);
        term *= x / (j as f64 + 1.0);
    }
    Ok(FeatureVector::from_components(components))
}

/// One feature vector per evidence entry, rows in position order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: Vec<FeatureVector>,
    propositions: Vec<Proposition>,
}

impl FeatureMatrix {
    pub(crate) fn new(rows: Vec<FeatureVector>, propositions: Vec<Proposition>) -> Self {
        debug_assert_eq!(rows.len(), propositions.len());
        FeatureMatrix { rows, propositions }
    }

    pub fn rows(&self) -> &[FeatureVector] {
        &self.rows
    }

    /// Propositions in row (position) order.
    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn dims(&self) -> usize {
        self.rows.first().map_or(0, FeatureVector::dims)
    }

    /// Row values as plain nested vectors.
    pub fn to_vec(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.components().to_vec()).collect()
    }
}

/// Expand a whole ordinal evidence: row `i` encodes the entry at
/// position `i`, with the position mapped to an order value by `scale`.
pub fn expand_evidence(
    evidence: &OrdinalEvidence,
    k: f64,
    scale: OrderScale,
    dims: usize,
    coefficients: CoefficientMode,
) -> Result<FeatureMatrix> {
    let n = evidence.len();
    let mut rows = Vec::with_capacity(n);
    let mut propositions = Vec::with_capacity(n);
    for (index, &(proposition, mass)) in evidence.entries().iter().enumerate() {
        let position = index + 1;
        let order = match scale {
            OrderScale::Raw => position as f64,
            OrderScale::Normalized => position as f64 / n as f64,
        };
        rows.push(expand_with(order, mass, k, dims, coefficients)?);
        propositions.push(proposition);
    }
    Ok(FeatureMatrix::new(rows, propositions))
}
