//! Simply typed λ-calculus over one base type: syntax, typing,
//! normalization and the Church encoding of words.

mod church;
mod enumerate;
mod normalize;
mod parse;
mod print;
mod term;
mod typecheck;
mod types;

pub use church::{church_term, word_of_church, Alphabet, Word};
pub use enumerate::NormalForms;
pub use normalize::{beta_eta_equal, normalize, normalize_in};
pub use parse::{parse_closed, parse_term, parse_type, parse_untyped};
pub use print::{print, print_in};
pub use term::Term;
pub use typecheck::{typecheck, Path, Step};
pub use types::Type;
