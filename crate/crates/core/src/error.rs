use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidGroup(String),

    #[error("element has {found} coordinates, group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("coordinate {index} = {value} out of range for modulus {modulus}")]
    CoordinateOutOfRange { index: usize, value: u64, modulus: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {p} divides the exponent {n}; group is not fully representable")]
    NotRepresentable { p: u64, n: u64 },

    #[error("field of order {p}^{d} is too large for this backend")]
    FieldTooLarge { p: u64, d: usize },

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("field root order {field} does not match group exponent {group}")]
    ExponentMismatch { field: u64, group: u64 },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("function on the group has {found} values, group has order {expected}")]
    FunctionSize { expected: usize, found: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("duplicate element {0} in a set")]
    DuplicateElement(String),

    #[error("ground sets of the two matroids differ")]
    GroundMismatch,

    #[error("element {0} is not in the ground set")]
    ForeignElement(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("{0} is not zero or a prime")]
    InvalidCharacteristic(u64),

    #[error("operation requires characteristic {expected}, field has characteristic {found}")]
    WrongCharacteristic { expected: u64, found: u64 },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("no nonvanishing specialization found")]
    NoSpecialization,

    #[error("parse error: {0}")]
    Parse(String),
}
