use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A simple type over the single base type `o`.
///
/// Products and the unit type are only used by the category layer; the
/// word and automata code stays inside the arrow fragment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", content = "children", rename_all = "lowercase")]
pub enum Type {
    Base,
    Arrow(Arc<Type>, Arc<Type>),
    Product(Arc<Type>, Arc<Type>),
    Unit,
}

impl Type {
    pub fn base() -> Type {
        Type::Base
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    pub fn product(left: Type, right: Type) -> Type {
        Type::Product(Arc::new(left), Arc::new(right))
    }

    /// `args[0] -> args[1] -> ... -> result`
    pub fn arrows<I>(args: I, result: Type) -> Type
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter().rev().fold(result, |acc, arg| Type::arrow(arg, acc))
    }

    /// `o -> o`
    pub fn endo() -> Type {
        Type::arrow(Type::Base, Type::Base)
    }

    /// The Church type of an alphabet with `letters` letters:
    /// `(o->o) -> ... -> (o->o) -> o -> o`.
    pub fn church(letters: usize) -> Type {
        Type::arrows(
            std::iter::repeat_n(Type::endo(), letters)
                .chain(std::iter::once(Type::Base))
                .collect::<Vec<_>>(),
            Type::Base,
        )
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, Type::Arrow(..))
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits `A1 -> ... -> An -> R` where `R` is not an arrow.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Type::Arrow(a, b) = cur {
            args.push(a.as_ref());
            cur = b;
        }
        (args, cur)
    }

    /// Number of letters if this is a Church type.
    pub fn church_letters(&self) -> Option<usize> {
        let (args, result) = self.uncurry();
        if *result != Type::Base || args.is_empty() {
            return None;
        }
        let (last, letters) = args.split_last().unwrap();
        if **last != Type::Base || letters.iter().any(|t| **t != Type::endo()) {
            return None;
        }
        Some(letters.len())
    }

    /// Order of the type: `o` and `1` have order 0, an arrow adds one to
    /// the order of its domain. This is the "depth" used when the test
    /// corpora bound type complexity.
    pub fn order(&self) -> usize {
        match self {
            Type::Base | Type::Unit => 0,
            Type::Arrow(a, b) => (a.order() + 1).max(b.order()),
            Type::Product(a, b) => a.order().max(b.order()),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Type::Base | Type::Unit => 1,
            Type::Arrow(a, b) | Type::Product(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn is_first_order_arrow(&self) -> bool {
        let (args, result) = self.uncurry();
        *result == Type::Base && args.iter().all(|a| **a == Type::Base)
    }

    pub fn contains_products(&self) -> bool {
        match self {
            Type::Base => false,
            Type::Unit | Type::Product(..) => true,
            Type::Arrow(a, b) => a.contains_products() || b.contains_products(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Type::Base => write!(f, "o"),
            Type::Unit => write!(f, "1"),
            Type::Arrow(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Type::Product(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 2)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
