use thiserror::Error;

/// Error vocabulary shared by every module and surfaced verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields or variables: {0}")]
    DescriptorMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("minimal polynomial {0} is reducible")]
    ReducibleMinimalPolynomial(String),
    #[error("cannot certify irreducibility of {0} over this field")]
    IrreducibilityUnverifiable(String),
    #[error("factorization unsupported for {0}")]
    FactorizationUnsupported(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("homogenization degree {m} is below the total degree {degree}")]
    DegreeTooSmall { m: u32, degree: u32 },
    #[error("operation undefined on a constant polynomial")]
    ConstantPolynomial,
    #[error("weights ({0}, {1}) are not coprime")]
    NotCoprime(u64, u64),
    #[error("point ({a0}, {b0}) is not on the line of weight {gamma}")]
    NotOnLineD { a0: u32, b0: u32, gamma: u64 },
    #[error("value mismatch: {0}")]
    ValueMismatch(String),
    #[error("element is not in the valuation ring (value {0})")]
    NotInValuationRing(i64),
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("blow-up depth exceeded {0}")]
    DepthExceeded(usize),
    #[error("corollary violated: {0}")]
    CorollaryViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DescriptorMismatch(_) => "DescriptorMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::ReducibleMinimalPolynomial(_) => "ReducibleMinimalPolynomial",
            Error::IrreducibilityUnverifiable(_) => "IrreducibilityUnverifiable",
            Error::FactorizationUnsupported(_) => "FactorizationUnsupported",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotCoprime(..) => "NotCoprime",
            Error::NotOnLineD { .. } => "NotOnLineD",
            Error::ValueMismatch(_) => "ValueMismatch",
            Error::NotInValuationRing(_) => "NotInValuationRing",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::CorollaryViolation(_) => "CorollaryViolation",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Internal assertion failures, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::CorollaryViolation(_) | Error::DepthExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
