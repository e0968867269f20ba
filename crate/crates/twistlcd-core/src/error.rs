//! Error type shared by every module in the crate.
//!
//! Each variant's display form starts with its stable name (for example
//! `DuplicatePoint: ...`) so callers such as the CLI can surface the bare
//! name on stderr and tests can match on it without parsing prose.

/// Unified error for field construction, linear algebra, code construction,
/// analysis, and the theorem validators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The requested characteristic is not a prime number.
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    /// Fields of characteristic 2 are outside the supported family.
    #[error("EvenCharacteristic: the characteristic must be an odd prime")]
    EvenCharacteristic,
    /// Field order out of supported range (p ≥ 2^32, or p^m > 2^16 with m > 1).
    #[error("FieldTooLarge: {0}")]
    FieldTooLarge(String),
    /// Inversion (or division) of the zero element.
    #[error("DivisionByZero: cannot invert the zero element")]
    DivisionByZero,
    /// Arithmetic attempted between elements of different fields.
    #[error("MixedFields: operands belong to different fields")]
    MixedFields,
    /// Matrix shapes are incompatible for the requested operation.
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    /// A square matrix was required.
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    /// An evaluation-point set must be nonempty.
    #[error("EmptyPointSet: at least one evaluation point is required")]
    EmptyPointSet,
    /// Evaluation points must be pairwise distinct.
    #[error("DuplicatePoint: evaluation points must be pairwise distinct")]
    DuplicatePoint,
    /// Evaluation points must be nonzero.
    #[error("ZeroPoint: evaluation points must be nonzero")]
    ZeroPoint,
    /// Fewer evaluation points than the construction supports.
    #[error("TooFewPoints: need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    /// n must divide q − 1 for xⁿ − λ to split into distinct roots.
    #[error("DoesNotDivide: {n} does not divide q - 1 = {q_minus_1}")]
    DoesNotDivide { n: u64, q_minus_1: u64 },
    /// ord(λ) must divide (q − 1)/n.
    #[error("OrderCondition: ord(lambda) = {order} does not divide (q-1)/n = {bound}")]
    OrderCondition { order: u64, bound: u64 },
    /// λ must be nonzero.
    #[error("ZeroLambda: lambda must be nonzero")]
    ZeroLambda,
    /// An index parameter fell outside its documented range.
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    /// Message length does not match the code dimension.
    #[error("WrongMessageLength: expected {expected}, got {got}")]
    WrongMessageLength { expected: usize, got: usize },
    /// An exhaustive enumeration would exceed the configured guard.
    #[error("TooLargeToEnumerate: {0}")]
    TooLargeToEnumerate(String),
    /// Internal cross-check failed; this always indicates a bug, never bad input.
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
    /// A dimension bound from a theorem hypothesis was violated.
    #[error("DimensionRange: {0}")]
    DimensionRange(String),
    /// The length identity n = 2k + ℓ + r required by the even-split theorems fails.
    #[error("LengthParity: {0}")]
    LengthParity(String),
    /// A column multiplier violates the theorem's membership pattern.
    #[error("VPattern: v[{index}] = {value} violates the required pattern ({requirement})")]
    VPattern {
        /// 1-based offending index.
        index: usize,
        value: String,
        requirement: String,
    },
    /// The scalar LCD condition evaluated to zero.
    #[error("ConditionZero: the LCD condition value is zero")]
    ConditionZero,
    /// A certified spec produced a non-LCD code; reportable counterexample.
    #[error("TheoremViolation: {0}")]
    TheoremViolation(String),
    /// The search budget does not admit the requested enumeration.
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
    /// A generator matrix was rank-deficient.
    #[error("RankDeficient: generator has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },
    /// The twist coefficient vector η must not be the zero vector.
    #[error("ZeroEta: eta must have at least one nonzero coefficient")]
    ZeroEta,
    /// Every column multiplier vᵢ must be nonzero.
    #[error("ZeroMultiplier: v[{index}] must be nonzero")]
    ZeroMultiplier { index: usize },
    /// Catch-all for malformed inputs not covered by a dedicated variant.
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// The stable variant name, as shown at the start of the display form.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedFields => "MixedFields",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::EmptyPointSet => "EmptyPointSet",
            Error::DuplicatePoint => "DuplicatePoint",
            Error::ZeroPoint => "ZeroPoint",
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::DoesNotDivide { .. } => "DoesNotDivide",
            Error::OrderCondition { .. } => "OrderCondition",
            Error::ZeroLambda => "ZeroLambda",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::WrongMessageLength { .. } => "WrongMessageLength",
            Error::TooLargeToEnumerate(_) => "TooLargeToEnumerate",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::DimensionRange(_) => "DimensionRange",
            Error::LengthParity(_) => "LengthParity",
            Error::VPattern { .. } => "VPattern",
            Error::ConditionZero => "ConditionZero",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::ZeroEta => "ZeroEta",
            Error::ZeroMultiplier { .. } => "ZeroMultiplier",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
