use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table must be square and non-empty")]
    NotSquare,
    #[error("element {0} does not belong to the semigroup")]
    NoSuchElement(usize),
    #[error("relation {0} is only available on inverse or completely regular semigroups")]
    RelationUnsupported(String),
    #[error("witness does not verify: {0}")]
    InvalidWitness(String),
    #[error("sandwich matrix has an all-zero row or column")]
    AllZeroRowOrColumn,
    #[error("sandwich matrix has a zero entry but no zero was requested")]
    ZeroEntryWithoutZero,
    #[error("group table is not a group")]
    NotAGroup,
    #[error("zero element has no triple")]
    ZeroElement,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("bound exceeded: {what} = {value}, limit {limit}")]
    BoundExceeded {
        what: String,
        value: usize,
        limit: usize,
    },
    #[error("map is not injective")]
    NotInjective,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("map is not full")]
    NotFull,
    #[error("map is not order-preserving")]
    NotOrderPreserving,
    #[error("map is not an order-preserving partial injection")]
    NotOrderPreservingInjective,
    #[error("image is not contained in Y")]
    ImageNotInY,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
