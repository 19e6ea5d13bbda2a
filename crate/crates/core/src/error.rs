use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field of order {p}^{m} is too large for table-driven arithmetic")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("parameter `{name}` must be positive")]
    NonPositive { name: &'static str },
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(&'static str),
    #[error("operator does not satisfy N^{p} = 0")]
    NotNilpotent { p: u64 },
    #[error("operator does not strictly decrease degree (entry {row},{col})")]
    NotDegreeDecreasing { row: usize, col: usize },
    #[error("empty cell range: top {top} < bottom {bot}")]
    EmptyRange { bot: i64, top: i64 },
    #[error("bottom cell {c} is not divisible by {p}")]
    NotDivisible { c: i64, p: u64 },
    #[error("argument must be nonzero")]
    Zero,
    #[error("elements belong to different endomorphism rings")]
    MismatchedRings,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("T-precision {precision} is below the minimum {required}")]
    PrecisionTooSmall { precision: usize, required: usize },
    #[error("no digit satisfies stage {stage} of the order-p search")]
    NoOrderPUnit { stage: usize },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}
