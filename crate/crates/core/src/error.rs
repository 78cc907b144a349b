use thiserror::Error;

use crate::syntax::{Path, Type};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{name}`")]
    UnboundVariable { name: String },

    #[error("type error at {path}: {message} in `{subterm}`")]
    Type {
        path: Path,
        message: String,
        subterm: String,
    },

    #[error("denotation of {ty} over a set of size {q} has {entries} table entries, over the cap of {cap}")]
    CapExceeded {
        ty: Type,
        q: u32,
        entries: String,
        cap: u64,
    },

    #[error("{what} has {entries} entries, over the cap of {cap}")]
    TooLarge { what: String, entries: String, cap: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing definability evidence for the component at q={q}: {reason}")]
    NotDefinable { q: u32, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
