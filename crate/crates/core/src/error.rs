use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands carry different (n, q, m) contexts.
    ContextMismatch,
    InvalidContext(&'static str),
    NotPrime(u32),
    ExponentOutOfRange { exponent: usize, n: usize },
    DivisionByZeroPoly,
    PartitionMismatch,
    InvalidPartition(&'static str),
    NotMonic,
    NotDivisor,
    LengthMismatch { expected: usize, got: usize },
    NotLinear,
    DimensionMismatch,
    BadGeneratorShape,
    TooLarge { limit: u64 },
    BudgetExceeded { needed: u64, budget: u64 },
    SyndromeCollision { key: String },
    DecodeFailure,
    InvalidWitness,
    SingularMixing,
    InvalidMask,
    NonBinaryField,
    MalformedSignature(String),
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "operands have different (n, q, m) contexts"),
            Error::InvalidContext(why) => write!(f, "invalid ring context: {why}"),
            Error::NotPrime(q) => write!(f, "field modulus {q} is not a prime below 256"),
            Error::ExponentOutOfRange { exponent, n } => {
                write!(f, "exponent {exponent} out of range for n = {n}")
            }
            Error::DivisionByZeroPoly => write!(f, "division by the zero polynomial"),
            Error::PartitionMismatch => write!(f, "words use different partitions"),
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::NotMonic => write!(f, "generator polynomial is not monic"),
            Error::NotDivisor => write!(f, "generator does not divide X^n - 1 in the star ring"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::NotLinear => write!(f, "word set is not a linear code"),
            Error::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            Error::BadGeneratorShape => write!(f, "generator polynomial has the wrong shape"),
            Error::TooLarge { limit } => write!(f, "enumeration exceeds the cap of {limit} words"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "needs {needed} steps, budget is {budget}")
            }
            Error::SyndromeCollision { key } => {
                write!(f, "two admissible errors share the syndrome {key}")
            }
            Error::DecodeFailure => write!(f, "no table entry matched any shift of the word"),
            Error::InvalidWitness => write!(f, "extracted segment is not a solution"),
            Error::SingularMixing => write!(f, "mixing blocks give a singular block-circulant"),
            Error::InvalidMask => write!(f, "mask segments must be zero or weight-one coset leaders"),
            Error::NonBinaryField => write!(f, "signatures require q = 2"),
            Error::MalformedSignature(why) => write!(f, "malformed signature: {why}"),
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl core::error::Error for Error {}
