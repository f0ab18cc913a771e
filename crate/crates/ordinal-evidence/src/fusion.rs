//! Uncertainty-derived weighting and the end-to-end fusion pipeline.

use serde::Serialize;

use crate::config::{Configuration, WeightAxis};
use crate::dempster;
use crate::error::{Error, Result};
use crate::frame::{Frame, Proposition};
use crate::ifs::{assign_roles, majorize, NormalizedMatrix};
use crate::mass::{EvidenceSet, MassFunction};
use crate::mrbf::{expand_evidence, FeatureMatrix, FeatureVector};
use crate::uncertainty::{negate_matrix, uncertainty, uncertainty_filtered, NegatedMatrix};

/// Per-(evidence, proposition) weights. For the default axis each
/// proposition's column sums to 1 across evidences.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    propositions: Vec<Proposition>,
    /// `weights[evidence][proposition]`
    weights: Vec<Vec<f64>>,
}

impl WeightTable {
    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    /// Rows are evidences, columns follow `propositions()`.
    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn get(&self, evidence: usize, proposition: usize) -> f64 {
        self.weights[evidence][proposition]
    }
}

/// Normalize uncertainty scores into weights.
///
/// `scores[evidence][proposition]` must be non-negative and column-
/// aligned with `propositions`. Along the default `Evidences` axis each
/// proposition's scores are divided by their sum over evidences; a
/// proposition with zero score everywhere has no defined weights.
pub fn weights(
    scores: &[Vec<f64>],
    propositions: &[Proposition],
    axis: WeightAxis,
) -> Result<WeightTable> {
    let n_ev = scores.len();
    if n_ev == 0 {
        return Err(Error::NoEvidences);
    }
    for row in scores {
        if row.len() != propositions.len() {
            return Err(Error::ShapeMismatch(format!(
                "score row has {} entries for {} propositions",
                row.len(),
                propositions.len()
            )));
        }
    }
    let mut table = vec![vec![0.0; propositions.len()]; n_ev];
    match axis {
        WeightAxis::Evidences => {
            for j in 0..propositions.len() {
                let total: f64 = scores.iter().map(|row| row[j]).sum();
                if total <= 0.0 {
                    return Err(Error::ZeroUncertaintyColumn(propositions[j].to_string()));
                }
                for (e, row) in scores.iter().enumerate() {
                    table[e][j] = row[j] / total;
                }
            }
        }
        WeightAxis::Propositions => {
            for (e, row) in scores.iter().enumerate() {
                let total: f64 = row.iter().sum();
                if total <= 0.0 {
                    return Err(Error::ZeroUncertaintyColumn(format!("evidence {e}")));
                }
                for (j, &s) in row.iter().enumerate() {
                    table[e][j] = s / total;
                }
            }
        }
    }
    Ok(WeightTable {
        propositions: propositions.to_vec(),
        weights: table,
    })
}

/// Weighted fusion of the per-evidence normalized matrices.
///
/// For proposition `j` and dimension `y`, the weighted rows are summed
/// over evidences and then normalized across propositions, so every
/// dimension's fused values sum to 1. Rows are looked up by proposition,
/// not position, since evidences order their entries differently.
pub fn fuse_modified(
    matrices: &[NormalizedMatrix],
    table: &WeightTable,
) -> Result<Vec<FeatureVector>> {
    if matrices.len() != table.weights().len() {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices for {} weight rows",
            matrices.len(),
            table.weights().len()
        )));
    }
    let props = table.propositions();
    let dims = matrices.first().map_or(0, NormalizedMatrix::dims);
    let mut numerators = vec![vec![0.0; dims]; props.len()];
    for (e, matrix) in matrices.iter().enumerate() {
        if matrix.dims() != dims {
            return Err(Error::ShapeMismatch(format!(
                "matrix {e} has {} dims, expected {dims}",
                matrix.dims()
            )));
        }
        for (j, &p) in props.iter().enumerate() {
            let row = matrix.row_of(p).ok_or_else(|| {
                Error::ShapeMismatch(format!("matrix {e} lacks a row for {p}"))
            })?;
            let w = table.get(e, j);
            for (y, &v) in row.iter().enumerate() {
                numerators[j][y] += w * v;
            }
        }
    }
    let mut fused = vec![vec![0.0; dims]; props.len()];
    for y in 0..dims {
        let denominator: f64 = numerators.iter().map(|row| row[y]).sum();
        if denominator <= 0.0 {
            return Err(Error::ZeroFusedDimension(y));
        }
        for (j, row) in numerators.iter().enumerate() {
            fused[j][y] = row[y] / denominator;
        }
    }
    Ok(fused.into_iter().map(FeatureVector::from_components).collect())
}

/// Collapse fused per-proposition vectors to a mass function: sum the
/// dimensions of each vector and normalize the sums to 1.
pub fn collapse(fused: &[FeatureVector], propositions: &[Proposition]) -> Result<MassFunction> {
    if fused.len() != propositions.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} fused vectors for {} propositions",
            fused.len(),
            propositions.len()
        )));
    }
    let sums: Vec<f64> = fused.iter().map(FeatureVector::sum).collect();
    let total: f64 = sums.iter().sum();
    if total <= 0.0 {
        return Err(Error::AllZeroMatrix);
    }
    MassFunction::new(
        propositions
            .iter()
            .zip(&sums)
            .map(|(&p, &s)| (p, s / total)),
    )
}

/// All per-evidence intermediates of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceStage {
    pub feature: FeatureMatrix,
    pub normalized: NormalizedMatrix,
    pub negated: NegatedMatrix,
    /// Uncertainty per canonical proposition.
    pub uncertainty: Vec<f64>,
}

/// Everything a fusion run produced, stage by stage.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionReport {
    pub kernel_width: f64,
    /// Canonical proposition order used by all per-proposition vectors.
    pub propositions: Vec<Proposition>,
    pub stages: Vec<EvidenceStage>,
    pub weights: WeightTable,
    pub fused: Vec<FeatureVector>,
    pub modified_bpa: MassFunction,
    pub final_bpa: MassFunction,
}

/// Run the whole pipeline: kernel width from conflict, per-evidence
/// feature expansion, role majorization, negation and uncertainty
/// scoring, then uncertainty-weighted fusion, collapse to a modified
/// mass function, and `n - 1` self-combinations for `n` evidences.
pub fn pipeline(set: &EvidenceSet, config: &Configuration) -> Result<FusionReport> {
    let kernel_width =
        dempster::width_k(set, config.k_mode).map_err(|e| e.in_stage("width"))?;
    let propositions = set.canonical_propositions();
    let n_evidences = set.evidences().len();

    let mut stages = Vec::with_capacity(n_evidences);
    let mut score_rows = Vec::with_capacity(n_evidences);
    for evidence in set.evidences() {
        let feature = expand_evidence(
            evidence,
            kernel_width,
            config.order_scale,
            config.dims,
            config.coefficients,
        )
        .map_err(|e| e.in_stage("expand"))?;
        let roles = assign_roles(set.frame(), evidence).map_err(|e| e.in_stage("roles"))?;
        let normalized = majorize(&feature, &roles).map_err(|e| e.in_stage("majorize"))?;
        let negated = negate_matrix(&normalized).map_err(|e| e.in_stage("negate"))?;

        let mut by_prop = Vec::with_capacity(propositions.len());
        for &p in &propositions {
            let row = evidence
                .position_of(p)
                .expect("evidence covers every canonical proposition")
                - 1;
            let u = if config.role_filter {
                uncertainty_filtered(&normalized, &negated, row, &roles)
            } else {
                uncertainty(&normalized, &negated, row)
            }
            .map_err(|e| e.in_stage("uncertainty"))?;
            by_prop.push(u);
        }
        score_rows.push(by_prop.clone());
        stages.push(EvidenceStage {
            feature,
            normalized,
            negated,
            uncertainty: by_prop,
        });
    }

    let weight_table = weights(&score_rows, &propositions, config.weight_axis)
        .map_err(|e| e.in_stage("weights"))?;
    let normalized_matrices: Vec<NormalizedMatrix> =
        stages.iter().map(|s| s.normalized.clone()).collect();
    let fused =
        fuse_modified(&normalized_matrices, &weight_table).map_err(|e| e.in_stage("fuse"))?;
    let modified_bpa = collapse(&fused, &propositions).map_err(|e| e.in_stage("collapse"))?;
    let final_bpa = dempster::self_combine(set.frame(), &modified_bpa, n_evidences - 1)
        .map_err(|e| e.in_stage("combine"))?;

    Ok(FusionReport {
        kernel_width,
        propositions,
        stages,
        weights: weight_table,
        fused,
        modified_bpa,
        final_bpa,
    })
}

// ---------------------------------------------------------------------
// Serializable view
// ---------------------------------------------------------------------

/// JSON-ready view of a mass function: label-rendered propositions in
/// canonical order.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BpaDocument {
    pub entries: Vec<BpaEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BpaEntry {
    pub proposition: Vec<String>,
    pub mass: f64,
}

impl BpaDocument {
    pub fn render(frame: &Frame, bpa: &MassFunction, order: &[Proposition]) -> Self {
        let entries = order
            .iter()
            .map(|&p| BpaEntry {
                proposition: frame.member_labels(p),
                mass: bpa.get(p),
            })
            .collect();
        BpaDocument { entries }
    }
}

/// Stage-keyed, JSON-serializable view of a [`FusionReport`]. Field and
/// array order are fixed, so serialization is byte-stable for a given
/// input and configuration.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportDocument {
    pub kernel_width: f64,
    pub propositions: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidences: Vec<StageDocument>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fused: Vec<Vec<f64>>,
    pub modified_bpa: BpaDocument,
    pub final_bpa: BpaDocument,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StageDocument {
    /// Propositions in this evidence's position order.
    pub order: Vec<Vec<String>>,
    pub feature_matrix: Vec<Vec<f64>>,
    pub normalized_matrix: Vec<Vec<f64>>,
    pub negated_matrix: Vec<Vec<f64>>,
    /// Scores in canonical proposition order.
    pub uncertainty: Vec<f64>,
}

impl FusionReport {
    /// Build the serializable view. With `trace` off the per-evidence
    /// matrices, weights and fused vectors are omitted.
    pub fn to_document(&self, frame: &Frame, trace: bool) -> ReportDocument {
        let propositions = self
            .propositions
            .iter()
            .map(|&p| frame.member_labels(p))
            .collect();
        let evidences = if trace {
            self.stages
                .iter()
                .map(|s| StageDocument {
                    order: s
                        .feature
                        .propositions()
                        .iter()
                        .map(|&p| frame.member_labels(p))
                        .collect(),
                    feature_matrix: s.feature.to_vec(),
                    normalized_matrix: s.normalized.rows().to_vec(),
                    negated_matrix: s.negated.rows().to_vec(),
                    uncertainty: s.uncertainty.clone(),
                })
                .collect()
        } else {
            Vec::new()
        };
        ReportDocument {
            kernel_width: self.kernel_width,
            propositions,
            evidences,
            weights: if trace {
                self.weights.weights().to_vec()
            } else {
                Vec::new()
            },
            fused: if trace {
                self.fused.iter().map(|v| v.components().to_vec()).collect()
            } else {
                Vec::new()
            },
            modified_bpa: BpaDocument::render(frame, &self.modified_bpa, &self.propositions),
            final_bpa: BpaDocument::render(frame, &self.final_bpa, &self.propositions),
        }
    }
}
