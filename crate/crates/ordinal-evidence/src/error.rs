use crate::mass::ValidationReport;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("frame must contain at least one element")]
    EmptyFrame,

    #[error("duplicate frame element `{0}`")]
    DuplicateElement(String),

    #[error("frame supports at most 64 elements, got {0}")]
    FrameTooLarge(usize),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("a proposition must contain at least one element")]
    EmptyProposition,

    #[error("proposition {0} is not a subset of the frame")]
    PropositionOutsideFrame(String),

    #[error("invalid mass assignment: {0}")]
    InvalidBpa(ValidationReport),

    #[error("duplicate proposition {0} in ordinal evidence")]
    DuplicateProposition(String),

    #[error("evidence set needs at least one evidence")]
    NoEvidences,

    #[error("all evidences must cover the same propositions; evidence {index} differs")]
    PropositionSetMismatch { index: usize },

    #[error("total conflict between evidences (K = 1)")]
    TotalConflict,

    #[error("negation needs at least two focal elements, got {0}")]
    TooFewFocalElements(usize),

    #[error("kernel width must be non-negative, got {0}")]
    NegativeWidth(f64),

    #[error("feature expansion needs at least one dimension")]
    ZeroDims,

    #[error("matrix is all zeros; scaling ratios are undefined")]
    AllZeroMatrix,

    #[error("row {row} has zero aggregate mass in all three roles")]
    ZeroRoleMass { row: usize },

    #[error("matrix negation is degenerate: complement is all zeros")]
    DegenerateNegation,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },

    #[error("uncertainty is zero for proposition {0} in every evidence; weights are undefined")]
    ZeroUncertaintyColumn(String),

    #[error("fused denominator is zero at dimension {0}")]
    ZeroFusedDimension(usize),

    #[error("membership {membership} + non-membership {non_membership} exceeds 1")]
    IfsConstraint { membership: f64, non_membership: f64 },

    #[error("value {value} outside [0,1] for {what}")]
    OutOfUnitRange { what: &'static str, value: f64 },

    #[error("document error: {0}")]
    Document(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Strip stage wrappers down to the root cause.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
