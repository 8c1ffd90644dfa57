use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Variants name the violated
/// constraint so the CLI can print them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("field size q = {0} outside supported range 2..=65536")]
    FieldSizeOutOfRange(u32),
    #[error("value {value} is not an element of GF({q})")]
    NotAFieldElement { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,

    #[error("box shape must have at least one coordinate")]
    EmptyShape,
    #[error("box side lengths must be positive")]
    ZeroSide,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("point {point:?} lies outside the box {dims:?}")]
    PointOutOfBox { point: Vec<usize>, dims: Vec<usize> },
    #[error("invalid degree band: need -1 <= u2 < u1 <= k, got u2 = {u2}, u1 = {u1}, k = {k}")]
    InvalidBand { u2: i64, u1: i64, k: usize },
    #[error("rank r = {rank} out of range 1..={len}")]
    RankOutOfRange { rank: u64, len: u64 },
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeTooHigh { degree: usize, bound: i64 },
    #[error("count {count} exceeds slice size {len}")]
    CountOutOfRange { count: usize, len: usize },

    #[error("exponent {exponent:?} lies outside the box {dims:?}")]
    ExponentOutOfBox { exponent: Vec<usize>, dims: Vec<usize> },
    #[error("polynomial family is empty")]
    EmptyFamily,

    #[error("d_m = {d} > q = {q}")]
    SubsetTooLarge { d: usize, q: u32 },
    #[error("subset A_{index} has duplicate elements")]
    DuplicateElements { index: usize },
    #[error("subset A_{index} has {got} elements, expected {expected}")]
    SubsetSizeMismatch { index: usize, got: usize, expected: usize },
    #[error("degree d = {degree} out of range -1..={k}")]
    DegreeOutOfRange { degree: i64, k: usize },
    #[error("vector length {got} does not match code length {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("codes are not nested on a common grid: {0}")]
    InvalidNesting(String),
    #[error("grid has {n} points; the oracles handle at most {max}")]
    GridTooLarge { n: u64, max: u64 },
    #[error("oracle budget must be positive")]
    InvalidBudget,
    #[error("oracle budget exceeded after {states_explored} states ({reason})")]
    BudgetExceeded { states_explored: u64, reason: String },
}
