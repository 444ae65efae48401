use thiserror::Error;

/// Errors raised by the library. Every variant has a stable code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("coefficient `{literal}` cannot be represented in the coefficient field")]
    CoefficientOverflow { literal: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("monomials have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Groebner work budget of {0} reduction steps exceeded")]
    BudgetExceeded(u64),
    #[error("colon by the zero element")]
    ZeroDivisorQuery,
    #[error("the ideal is the unit ideal (empty variety)")]
    EmptyVariety,
    #[error("quotient does not have finite length")]
    NotFiniteLength,
    #[error("limit closure did not stabilize within {stages} stages")]
    Unstabilized { stages: u32 },
    #[error("sequence of length {0} is too long (maximum 8)")]
    TooLong(usize),
    #[error("exterior power level {level} out of range 0..={max}")]
    BadLevel { level: usize, max: usize },
    #[error("matrix is not a lift: entry {index} of y differs from row {index} of A times x")]
    NotALift { index: usize },
    #[error("element {index} of y is not contained in (x)")]
    NotContained { index: usize },
    #[error("sequence is not a system of parameters")]
    NotSop,
    #[error("ring has dimension {found}, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("element is not a parameter")]
    NotParameter,
    #[error("no system of parameters found after {attempts} sampling attempts")]
    NoSopFound { attempts: usize },
    #[error("operation requires positive characteristic, ring has characteristic {0}")]
    WrongCharacteristic(u32),
    #[error("{q} is not a power of the characteristic {p}")]
    NotPrimePower { q: u64, p: u32 },
    #[error("0 : u is the zero ideal; the probe is vacuous")]
    ZeroAnnihilator,
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("undefined name `{0}`")]
    UndefinedName(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable code, part of the CLI contract.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "E_SYNTAX",
            Error::UnknownVariable { .. } => "E_UNKNOWN_VARIABLE",
            Error::CoefficientOverflow { .. } => "E_COEFFICIENT_OVERFLOW",
            Error::ExponentOverflow => "E_EXPONENT_OVERFLOW",
            Error::InvalidField(_) => "E_INVALID_FIELD",
            Error::RingMismatch => "E_RING_MISMATCH",
            Error::LengthMismatch(..) => "E_LENGTH_MISMATCH",
            Error::BudgetExceeded(_) => "E_BUDGET_EXCEEDED",
            Error::ZeroDivisorQuery => "E_ZERO_DIVISOR_QUERY",
            Error::EmptyVariety => "E_EMPTY_VARIETY",
            Error::NotFiniteLength => "E_NOT_FINITE_LENGTH",
            Error::Unstabilized { .. } => "E_UNSTABILIZED",
            Error::TooLong(_) => "E_TOO_LONG",
            Error::BadLevel { .. } => "E_BAD_LEVEL",
            Error::NotALift { .. } => "E_NOT_A_LIFT",
            Error::NotContained { .. } => "E_NOT_CONTAINED",
            Error::NotSop => "E_NOT_SOP",
            Error::WrongDimension { .. } => "E_WRONG_DIMENSION",
            Error::NotParameter => "E_NOT_PARAMETER",
            Error::NoSopFound { .. } => "E_NO_SOP_FOUND",
            Error::WrongCharacteristic(_) => "E_WRONG_CHARACTERISTIC",
            Error::NotPrimePower { .. } => "E_NOT_PRIME_POWER",
            Error::ZeroAnnihilator => "E_ZERO_ANNIHILATOR",
            Error::UnknownScenario(_) => "E_UNKNOWN_SCENARIO",
            Error::UndefinedName(_) => "E_UNDEFINED_NAME",
            Error::Shape(_) => "E_SHAPE",
            Error::Invariant(_) => "E_INVARIANT",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
