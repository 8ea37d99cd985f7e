use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("element is not primitive")]
    NotPrimitive,
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },
    #[error("multiplicative character is trivial")]
    TrivialCharacter,
    #[error("replacement {0} does not have unit magnitude")]
    NonUnitReplacement(String),
    #[error("sequence lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("sequence has zero energy")]
    ZeroEnergy,
    #[error("sequence of length {len} exceeds the oracle limit {max}")]
    TooLong { len: usize, max: usize },
    #[error("Pursley-Sarwate bound violated: {lower} <= {cdf} <= {upper} fails")]
    BoundViolated { lower: f64, cdf: f64, upper: f64 },
    #[error("x must be nonzero")]
    ZeroX,
    #[error("argument must be positive, got {0}")]
    NonPositive(f64),
    #[error("invalid asymptotic case: {0}")]
    BadCase(String),
    #[error("invalid arguments: {0}")]
    BadArgs(String),
    #[error("cubic has no sign change on [{0}, {1}]")]
    NoSignChange(f64, f64),
    #[error("bin width must be positive and finite, got {0}")]
    BadBinWidth(f64),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("parse error: {0}")]
    Parse(String),
}
