use thiserror::Error;

/// Errors raised by the library. Every operation that can reject its input
/// returns one of these rather than panicking.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be positive")]
    NotPositive { what: &'static str },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("gcd({c}, {d}) = {gcd}, expected coprime arguments")]
    NotCoprime { c: u64, d: u64, gcd: u64 },

    #[error("moduli {0} and {1} are not coprime")]
    ModuliNotCoprime(u64, u64),

    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: u64, modulus: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("the zero monomial has no {0}")]
    ZeroMonomial(&'static str),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("residue data is only available up to level {available}, level {needed} was requested")]
    LevelExceeded { needed: u64, available: u64 },

    #[error("residue family is not coherent: {0}")]
    Incoherent(String),

    #[error("supernatural number {0} is not a positive integer")]
    InfiniteSupernatural(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("{n} shares a prime factor with the modulus {modulus}")]
    SupportOverlap { n: u64, modulus: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
