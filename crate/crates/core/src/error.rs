use crate::tel::UnknownNode;

/// Failures of the checking entry points. Parse failures are reported
/// separately as [`crate::ParseError`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    UnknownNode(#[from] UnknownNode),
    #[error("formula uses symbolic constant `{0}` which is not declared")]
    UndeclaredConstant(String),
    #[error("{found} symbolic constants exceed the enumeration cap of {cap}")]
    TooManyConstants { found: usize, cap: usize },
    #[error("enumeration needs {needed} value slots, over the cap of {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("sequence graph does not match the shape ({0})")]
    ShapeMismatch(String),
}
