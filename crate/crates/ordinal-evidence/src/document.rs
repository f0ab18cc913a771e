//! Evidence-file ingestion and serialization.
//!
//! The on-disk format is a single JSON document:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "frame": ["a", "b", "c"],
//!   "evidences": [
//!     [
//!       {"proposition": ["a"], "mass": 0.47},
//!       {"proposition": ["b"], "mass": 0.32},
//!       {"proposition": ["c"], "mass": 0.13},
//!       {"proposition": ["a", "b"], "mass": 0.08}
//!     ]
//!   ],
//!   "config": {"order-scale": "normalized"}
//! }
//! ```
//!
//! Propositions are arrays of element labels; the order of an entry is
//! its array position (1-based). The optional `config` block overrides
//! pipeline defaults field by field.

use serde::{Deserialize, Serialize};

use crate::config::{
    CoefficientMode, Configuration, KMode, OrderScale, OutputFormat, WeightAxis,
};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::{EvidenceSet, OrdinalEvidence};

/// Current schema version written by [`serialize_evidence_document`].
pub const SCHEMA_VERSION: u32 = 1;

/// Masses inside one evidence must sum to 1 within this tolerance at
/// ingestion (inputs usually carry two decimals); they are renormalized
/// exactly afterwards.
pub const INGESTION_SUM_TOLERANCE: f64 = 1e-6;

/// One ordered evidence entry as written in a document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EntryRecord {
    pub proposition: Vec<String>,
    pub mass: f64,
}

/// Partial configuration block: absent fields keep their defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_mode: Option<KMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_scale: Option<OrderScale>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role_filter: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_axis: Option<WeightAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<bool>,
}

impl ConfigOverride {
    /// Apply this override on top of `base`.
    pub fn apply(&self, base: &Configuration) -> Configuration {
        Configuration {
            k_mode: self.k_mode.unwrap_or(base.k_mode),
            order_scale: self.order_scale.unwrap_or(base.order_scale),
            dims: self.dims.unwrap_or(base.dims),
            coefficients: self.coefficients.unwrap_or(base.coefficients),
            role_filter: self.role_filter.unwrap_or(base.role_filter),
            weight_axis: self.weight_axis.unwrap_or(base.weight_axis),
            output: self.output.unwrap_or(base.output),
            trace: self.trace.unwrap_or(base.trace),
        }
    }

    pub fn is_empty(&self) -> bool {
        self == &ConfigOverride::default()
    }
}

/// The raw document shape.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvidenceDocument {
    pub schema_version: u32,
    pub frame: Vec<String>,
    pub evidences: Vec<Vec<EntryRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigOverride>,
}

/// Parse a JSON evidence document into a validated [`EvidenceSet`] plus
/// the effective [`Configuration`].
pub fn parse_evidence_document(text: &str) -> Result<(EvidenceSet, Configuration)> {
    let doc: EvidenceDocument = serde_json::from_str(text)
        .map_err(|e| Error::Document(format!("malformed JSON: {e}")))?;
    evidence_set_from_document(&doc)
}

/// Convert an already-deserialized document.
pub fn evidence_set_from_document(
    doc: &EvidenceDocument,
) -> Result<(EvidenceSet, Configuration)> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Document(format!(
            "unsupported schema_version {}, expected {SCHEMA_VERSION}",
            doc.schema_version
        )));
    }
    let frame = Frame::new(doc.frame.iter().cloned())?;
    if doc.evidences.is_empty() {
        return Err(Error::Document("evidences list is empty".into()));
    }
    let mut evidences = Vec::with_capacity(doc.evidences.len());
    for (index, records) in doc.evidences.iter().enumerate() {
        let evidence = parse_evidence(&frame, records)
            .map_err(|e| Error::Document(format!("evidence {}: {e}", index + 1)))?;
        evidences.push(evidence);
    }
    let set = EvidenceSet::new(frame, evidences)?;
    let config = doc
        .config
        .as_ref()
        .map(|o| o.apply(&Configuration::default()))
        .unwrap_or_default();
    Ok((set, config))
}

fn parse_evidence(frame: &Frame, records: &[EntryRecord]) -> Result<OrdinalEvidence> {
    if records.is_empty() {
        return Err(Error::Document("no entries".into()));
    }
    let mut entries = Vec::with_capacity(records.len());
    for (index, record) in records.iter().enumerate() {
        let proposition = frame.proposition(&record.proposition).map_err(|e| {
            Error::Document(format!("entry {}: {e}", index + 1))
        })?;
        if !record.mass.is_finite() || record.mass < 0.0 {
            return Err(Error::Document(format!(
                "entry {}: mass {} is not a probability",
                index + 1,
                record.mass
            )));
        }
        entries.push((proposition, record.mass));
    }
    let sum: f64 = entries.iter().map(|&(_, m)| m).sum();
    if (sum - 1.0).abs() > INGESTION_SUM_TOLERANCE {
        return Err(Error::Document(format!(
            "masses sum to {sum}, expected 1 within {INGESTION_SUM_TOLERANCE}"
        )));
    }
    // Renormalize so the strict library invariant holds exactly.
    let entries = entries.into_iter().map(|(p, m)| (p, m / sum));
    OrdinalEvidence::new(entries)
}

/// Render an evidence set (and a non-default configuration, if any) back
/// into document form. Masses are written as stored.
pub fn serialize_evidence_document(
    set: &EvidenceSet,
    config: Option<&ConfigOverride>,
) -> EvidenceDocument {
    let frame = set.frame();
    let evidences = set
        .evidences()
        .iter()
        .map(|evidence| {
            evidence
                .entries()
                .iter()
                .map(|&(p, mass)| EntryRecord {
                    proposition: frame.member_labels(p),
                    mass,
                })
                .collect()
        })
        .collect();
    EvidenceDocument {
        schema_version: SCHEMA_VERSION,
        frame: frame.labels().to_vec(),
        evidences,
        config: config.filter(|o| !o.is_empty()).cloned(),
    }
}
