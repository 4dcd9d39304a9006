use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {0} is not supported (expected 1..=7)")]
    InvalidDegree(i64),

    #[error("invalid configuration: {rule}")]
    InvalidConfiguration { rule: String },

    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {0} is not a declared blowup point")]
    UnknownPoint(i64),

    #[error("cone contains a line")]
    NotPointed,

    #[error("ray is not contained in the cone")]
    RayNotInCone,

    #[error("level functional does not bound the section")]
    UnboundedSection,

    #[error("inclusion-exclusion needs more than {cap} terms")]
    CapExceeded { cap: usize },

    #[error("integer value does not fit into 64 bits")]
    Overflow,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("tangent construction imposes {count} conditions (at most 5 allowed)")]
    TooManyConditions { count: usize },

    #[error("point sets overlap at point {0}")]
    OverlappingSets(usize),

    #[error("construction requires degree {expected}, surface has degree {got}")]
    WrongDegree { expected: &'static str, got: i64 },

    #[error("bad point subset: {0}")]
    BadSubset(String),

    #[error("surface is not flagged as admitting an anticanonical cuspidal curve")]
    NoCuspidalCurve,

    #[error("complement class {0} is missing from the support")]
    SupportMismatch(String),

    #[error("cylinders are defined over different surfaces")]
    MixedSurfaces,

    #[error("unknown cone label `{0}`")]
    UnknownLabel(String),

    #[error("enumeration of {what} exceeds the limit of {limit}")]
    EnumerationLimit { what: &'static str, limit: usize },

    #[error("invalid contraction: {0}")]
    InvalidContraction(String),

    #[error("cannot parse divisor class `{0}`")]
    ParseClass(String),
}

impl Error {
    pub(crate) fn config(rule: impl Into<String>) -> Self {
        Error::InvalidConfiguration { rule: rule.into() }
    }

    /// Stable variant name, used by front ends to surface the failing rule.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::InvalidConfiguration { .. } => "InvalidConfiguration",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::NotPointed => "NotPointed",
            Error::RayNotInCone => "RayNotInCone",
            Error::UnboundedSection => "UnboundedSection",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::Overflow => "Overflow",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::TooManyConditions { .. } => "TooManyConditions",
            Error::OverlappingSets(_) => "OverlappingSets",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::BadSubset(_) => "BadSubset",
            Error::NoCuspidalCurve => "NoCuspidalCurve",
            Error::SupportMismatch(_) => "SupportMismatch",
            Error::MixedSurfaces => "MixedSurfaces",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EnumerationLimit { .. } => "EnumerationLimit",
            Error::InvalidContraction(_) => "InvalidContraction",
            Error::ParseClass(_) => "ParseClass",
        }
    }

    /// Errors caused by internal resource caps rather than invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::EnumerationLimit { .. } | Error::Overflow
        )
    }
}
