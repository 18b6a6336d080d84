use crate::bigpoly::Var;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no value assigned to variable {0}")]
    MissingVariable(Var),
    #[error("elementary symmetric index {index} exceeds {len} values")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("truncation caps differ: (x^{0}, q^{1}) vs (x^{2}, q^{3})")]
    CapMismatch(usize, u32, usize, u32),
    #[error("series constant term is not a unit")]
    NotAUnit,
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field with {0} elements is larger than supported")]
    FieldTooLarge(u64),
    #[error("classification needs a subspace of positive dimension")]
    ZeroDimensional,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArguments(msg.into())
}
