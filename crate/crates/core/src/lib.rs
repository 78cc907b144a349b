//! The finite standard model of the simply typed λ-calculus and the
//! structures built on it: regular languages of λ-terms, logical
//! relations, truncated profinite λ-terms and the Church-encoding bridge
//! to automata.

pub mod automata;
pub mod definability;
pub mod error;
pub mod model;
pub mod profinite;
pub mod reglang;
pub mod relations;
pub mod syntax;

pub use error::{Error, Result};
