use thiserror::Error;

/// Errors raised by the construction and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "rule number {number} out of range for diameter {diameter}: must be below 2^{table_len}"
    )]
    RuleOutOfRange {
        number: u128,
        diameter: usize,
        table_len: usize,
    },
    #[error("rule numbers are only supported for diameters 0..=7, got {0}")]
    RuleNumberTooWide(usize),
    #[error("{0} variables exceed the supported maximum of 24")]
    TooManyVariables(usize),
    #[error("truth table has length {found}, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("input has length {found}, expected {expected}")]
    InputLength { expected: usize, found: usize },
    #[error(
        "invalid cellular automaton: input length {input_len} is shorter than diameter {diameter}"
    )]
    InputTooShort { input_len: usize, diameter: usize },
    #[error("rule {0} is not bipermutive")]
    NotBipermutive(String),
    #[error("rule {0} is not linear")]
    NotLinear(String),
    #[error("diameter mismatch: {left} vs {right}")]
    DiameterMismatch { left: usize, right: usize },
    #[error("latin square order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("not a latin square: {0}")]
    NotLatin(String),
    #[error("invalid S-box: {0}")]
    InvalidSBox(String),
    #[error("component mask must be nonzero")]
    ZeroMask,
    #[error("mask {mask:#x} does not fit in {bits} bits")]
    MaskOutOfRange { mask: u64, bits: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("generator degree {degree} out of range for length {length}")]
    GeneratorDegree { degree: usize, length: usize },
    #[error("unsupported code length {0} (must be 1..=64)")]
    CodeLength(usize),
    #[error("unsupported diameter {0} (search supports 3..=6)")]
    UnsupportedDiameter(usize),
    #[error("workers must be positive")]
    NoWorkers,
    #[error("pair precondition violated: {0}")]
    PairPrecondition(String),
    #[error("report serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
