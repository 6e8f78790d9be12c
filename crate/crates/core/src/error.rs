use thiserror::Error;

/// Errors raised by measure evaluation, input validation and the audit engine.
///
/// Singular cases of a measure (division by zero, infinite divergence) are
/// reported as dedicated variants instead of `inf`/`NaN` sentinels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },
    #[error("entry {index} lies outside [0, 1]")]
    OutOfUnitInterval { index: usize },
    #[error("probabilities sum to {sum}, expected 1 within 1e-9")]
    NotNormalized { sum: f64 },
    #[error("histogram has zero total mass")]
    ZeroMassHistogram,
    #[error("exponent {0} must be >= 1")]
    InvalidExponent(f64),
    #[error("vector has zero norm")]
    ZeroVector,
    #[error("denominator is zero")]
    DegenerateDenominator,
    #[error("feature {index} has zero range but the values differ")]
    ZeroRange { index: usize },
    #[error("range {index} has low > high")]
    InvalidRange { index: usize },
    #[error("every dimension is zero in both vectors (Adkins divisor n - Z = 0)")]
    AllZeroAdkins,
    #[error("negative radicand {0} in the Lorentzian body formula")]
    NegativeRadicand(f64),
    #[error("inputs are identical; the similarity is unbounded")]
    IdenticalInputs,
    #[error("distributions have disjoint support")]
    DisjointSupport,
    #[error("bin {index}: first distribution has mass where the second has none")]
    AbsoluteContinuityViolation { index: usize },
    #[error("bin {index}: expected frequency is zero where observed is not")]
    ZeroExpectedBin { index: usize },
    #[error("input has zero variance")]
    ZeroVariance,
    #[error("sample needs at least 2 rows, got {0}")]
    InsufficientSamples(usize),
    #[error("row {row} has dimension {found}, expected {expected}")]
    RaggedSample {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("covariance matrix is singular")]
    SingularCovariance,
    #[error("quadratic form is negative ({0}); inverse covariance is not positive semi-definite")]
    NegativeQuadraticForm(f64),
    #[error("input of length {len} exceeds the exact-search limit {limit}")]
    SizeLimit { len: usize, limit: usize },
    #[error("invalid operator sequence: {0}")]
    InvalidSequence(String),
    #[error("no weight for symbol {0:?}")]
    MissingWeight(String),
    #[error("weight for symbol {0:?} must be positive")]
    InvalidWeight(String),
    #[error("k must be >= 1, got {0}")]
    InvalidK(usize),
    #[error("n must be >= 1, got {0}")]
    InvalidN(usize),
    #[error("prefix scale {0} outside [0, 0.25]")]
    InvalidScale(f64),
    #[error("both n-gram sets are empty")]
    EmptyUnion,
    #[error("an n-gram profile is empty")]
    EmptyProfile,
    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),
    #[error("operand kind {found} is not accepted by {measure} (expects {expected})")]
    IncompatibleOperand {
        measure: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("domain {domain} is incompatible with {measure}")]
    IncompatibleDomain { measure: String, domain: String },
    #[error("{measure} requires parameter {parameter}")]
    MissingParameter {
        measure: String,
        parameter: &'static str,
    },
    #[error("invalid value {value:?} for parameter {parameter}")]
    InvalidParameter {
        parameter: &'static str,
        value: String,
    },
    #[error("{0} is a similarity without a distance form")]
    SimilarityOnly(String),
}

impl MeasureError {
    /// Stable variant name, used in CLI diagnostics and JSON reports.
    pub fn kind(&self) -> &'static str {
        use MeasureError::*;
        match self {
            DimensionMismatch { .. } => "DimensionMismatch",
            LengthMismatch { .. } => "LengthMismatch",
            EmptyVector => "EmptyVector",
            NonFinite { .. } => "NonFinite",
            NegativeEntry { .. } => "NegativeEntry",
            OutOfUnitInterval { .. } => "OutOfUnitInterval",
            NotNormalized { .. } => "NotNormalized",
            ZeroMassHistogram => "ZeroMassHistogram",
            InvalidExponent(_) => "InvalidExponent",
            ZeroVector => "ZeroVector",
            DegenerateDenominator => "DegenerateDenominator",
            ZeroRange { .. } => "ZeroRange",
            InvalidRange { .. } => "InvalidRange",
            AllZeroAdkins => "AllZeroAdkins",
            NegativeRadicand(_) => "NegativeRadicand",
            IdenticalInputs => "IdenticalInputs",
            DisjointSupport => "DisjointSupport",
            AbsoluteContinuityViolation { .. } => "AbsoluteContinuityViolation",
            ZeroExpectedBin { .. } => "ZeroExpectedBin",
            ZeroVariance => "ZeroVariance",
            InsufficientSamples(_) => "InsufficientSamples",
            RaggedSample { .. } => "RaggedSample",
            SingularCovariance => "SingularCovariance",
            NegativeQuadraticForm(_) => "NegativeQuadraticForm",
            SizeLimit { .. } => "SizeLimit",
            InvalidSequence(_) => "InvalidSequence",
            MissingWeight(_) => "MissingWeight",
            InvalidWeight(_) => "InvalidWeight",
            InvalidK(_) => "InvalidK",
            InvalidN(_) => "InvalidN",
            InvalidScale(_) => "InvalidScale",
            EmptyUnion => "EmptyUnion",
            EmptyProfile => "EmptyProfile",
            UnknownMeasure(_) => "UnknownMeasure",
            IncompatibleOperand { .. } => "IncompatibleOperand",
            IncompatibleDomain { .. } => "IncompatibleDomain",
            MissingParameter { .. } => "MissingParameter",
            InvalidParameter { .. } => "InvalidParameter",
            SimilarityOnly(_) => "SimilarityOnly",
        }
    }
}

pub type Result<T> = std::result::Result<T, MeasureError>;

pub(crate) fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(MeasureError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}
