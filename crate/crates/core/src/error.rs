use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degrees must be positive (e = {e}, n = {n})")]
    ZeroDegree { e: u32, n: u32 },

    #[error("field order {p}^{degree} exceeds the configured bound {cap}")]
    FieldTooLarge { p: u64, degree: u32, cap: u64 },

    #[error("element index {index} out of range for a field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },

    #[error("digit {digit} out of range for characteristic {p}")]
    DigitOutOfRange { digit: u64, p: u64 },

    #[error("expected {expected} base-p digits, got {got}")]
    WrongDigitCount { expected: usize, got: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("negative exponent {0}; invert the base first")]
    NegativeExponent(String),

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u32, n: u32 },

    #[error("interpolation table has {got} points, field has {order}")]
    IncompleteTable { got: u64, order: u64 },

    #[error("abscissa {0} appears more than once in the interpolation table")]
    DuplicateAbscissa(u64),

    #[error("m = {m} outside the admissible range [1, {max}]")]
    MOutOfRange { m: u32, max: u32 },

    #[error("s and t must be positive")]
    ZeroExponent,

    #[error("s*t = {s}*{t} differs from q^m - 1 = {expected}")]
    RelationViolated { s: u64, t: u64, expected: String },

    #[error("the coefficient a must be nonzero")]
    ZeroCoefficient,

    #[error("x(x^{s} - a)^{t} is not a permutation for a = {a}")]
    NotPermutation { s: u64, t: u64, a: u64 },

    #[error("x^(q^{m}) - a x is not a permutation for a = {a} (norm is 1)")]
    LinearizedNotPermutation { m: u32, a: u64 },

    #[error("the base {0} must be odd and at least 3")]
    BadOddBase(u64),

    #[error("index tuple {0:?} is not nondecreasing")]
    DecreasingIndices(Vec<u32>),

    #[error("special form {form} needs {requirement}")]
    SpecialFormInapplicable {
        form: &'static str,
        requirement: String,
    },

    #[error("special form {form}: criterion fails for a = {a}")]
    SpecialCriterionFailed { form: &'static str, a: u64 },

    #[error("field order {order} exceeds the oracle cap {cap}")]
    OracleCapExceeded { order: u64, cap: u64 },

    #[error("table is not a bijection")]
    NotBijective,

    #[error("table length {got} does not match field order {order}")]
    TableLength { got: usize, order: u64 },

    #[error("malformed input: {0}")]
    Parse(String),
}
