use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the engine funnels
/// through this enum so callers (and the CLI) can map failures uniformly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    /// Names that would shadow built-in syntax (`HOLE*`, `hole`, `barrier`, `I`).
    #[error("reserved name `{0}`")]
    ReservedName(String),

    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    /// Two diagrams built over different signatures were combined.
    #[error("signature mismatch")]
    SignatureMismatch,

    #[error("slices {i} and {j} are not swappable: {reason}")]
    NotSwappable { i: usize, j: usize, reason: String },

    #[error("equivalence-class budget exceeded ({0} states explored)")]
    BudgetExceeded(usize),

    #[error("unknown slot {0}")]
    UnknownSlot(u32),

    #[error("index {0} out of range")]
    IndexOutOfRange(usize),

    /// An exhaustive law check failed; `witness` names the offending data.
    #[error("law violation [{check}]: {witness}")]
    LawViolation { check: String, witness: String },

    /// An enumeration would exceed the configured budget.
    #[error("size exceeded: {0}")]
    SizeExceeded(String),

    #[error("syntax error at {line}:{col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn law(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::LawViolation { check: check.into(), witness: witness.into() }
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::TypeMismatch(msg.into())
    }

    /// Stable machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateName(_) => "DuplicateName",
            Error::ReservedName(_) => "ReservedName",
            Error::UndeclaredAtom(_) => "UndeclaredAtom",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::SignatureMismatch => "SignatureMismatch",
            Error::NotSwappable { .. } => "NotSwappable",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::UnknownSlot(_) => "UnknownSlot",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::LawViolation { .. } => "LawViolation",
            Error::SizeExceeded(_) => "SizeExceeded",
            Error::SyntaxError { .. } => "SyntaxError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
