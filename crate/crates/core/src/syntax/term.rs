use serde::{Deserialize, Serialize};

use super::types::Type;

/// Nameless λ-terms. `Var(0)` refers to the innermost binder; free indices
/// point into the typing context, whose last entry is index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", content = "children", rename_all = "lowercase")]
pub enum Term {
    Var(usize),
    Lam(Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Unit,
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn lam(ty: Type, body: Term) -> Term {
        Term::Lam(ty, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `head a1 ... an`
    pub fn apps<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::Pair(Box::new(left), Box::new(right))
    }

    pub fn fst(t: Term) -> Term {
        Term::Fst(Box::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Snd(Box::new(t))
    }

    /// `\x:A. x`
    pub fn identity(ty: Type) -> Term {
        Term::lam(ty, Term::var(0))
    }

    /// Node count: every constructor counts one.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Unit => 1,
            Term::Lam(_, b) | Term::Fst(b) | Term::Snd(b) => 1 + b.size(),
            Term::App(a, b) | Term::Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Whether every free index is below `depth`.
    pub fn is_closed_under(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            Term::Unit => true,
            Term::Lam(_, b) => b.is_closed_under(depth + 1),
            Term::Fst(b) | Term::Snd(b) => b.is_closed_under(depth),
            Term::App(a, b) | Term::Pair(a, b) => a.is_closed_under(depth) && b.is_closed_under(depth),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.is_closed_under(0)
    }

    /// Adds `by` to every free index at or above `cutoff`.
    pub fn shift(&self, by: usize, cutoff: usize) -> Term {
        match self {
            Term::Var(i) if *i >= cutoff => Term::Var(i + by),
            Term::Var(i) => Term::Var(*i),
            Term::Unit => Term::Unit,
            Term::Lam(ty, b) => Term::lam(ty.clone(), b.shift(by, cutoff + 1)),
            Term::App(a, b) => Term::app(a.shift(by, cutoff), b.shift(by, cutoff)),
            Term::Pair(a, b) => Term::pair(a.shift(by, cutoff), b.shift(by, cutoff)),
            Term::Fst(b) => Term::fst(b.shift(by, cutoff)),
            Term::Snd(b) => Term::snd(b.shift(by, cutoff)),
        }
    }

    /// The diagrammatic composite `\x:A. g (f x)` of two closed terms
    /// `f : A -> B` and `g : B -> C`.
    pub fn compose(f: &Term, g: &Term, dom: Type) -> Term {
        let body = Term::app(g.shift(1, 0), Term::app(f.shift(1, 0), Term::var(0)));
        Term::lam(dom, body)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("terms always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_counts_nodes() {
        let two = Term::lam(
            Type::endo(),
            Term::lam(
                Type::Base,
                Term::app(Term::var(1), Term::app(Term::var(1), Term::var(0))),
            ),
        );
        assert_eq!(two.size(), 7);
        assert!(two.is_closed());
        assert!(!Term::var(0).is_closed());
    }

    #[test]
    fn json_tree_is_stable() {
        let t = Term::identity(Type::Base);
        assert_eq!(
            t.to_json().to_string(),
            r#"{"children":[{"tag":"base"},{"children":0,"tag":"var"}],"tag":"lam"}"#
        );
    }
}
