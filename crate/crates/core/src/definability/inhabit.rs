use std::collections::BTreeSet;

use crate::syntax::{Term, Type};

enum Elim {
    Arg(Type),
    Fst,
    Snd,
}

/// Elimination spines taking a hypothesis of type `ty` down to `o`.
fn spines(ty: &Type) -> Vec<Vec<Elim>> {
    match ty {
        Type::Base => vec![Vec::new()],
        Type::Unit => Vec::new(),
        Type::Arrow(a, b) => spines(b)
            .into_iter()
            .map(|mut s| {
                s.insert(0, Elim::Arg((**a).clone()));
                s
            })
            .collect(),
        Type::Product(a, b) => {
            let mut out: Vec<Vec<Elim>> = spines(a)
                .into_iter()
                .map(|mut s| {
                    s.insert(0, Elim::Fst);
                    s
                })
                .collect();
            out.extend(spines(b).into_iter().map(|mut s| {
                s.insert(0, Elim::Snd);
                s
            }));
            out
        }
    }
}

struct Search {
    ctx: Vec<Type>,
    stack: Vec<(BTreeSet<Type>, Type)>,
}

impl Search {
    fn prove(&mut self, goal: &Type) -> Option<Term> {
        match goal {
            Type::Unit => Some(Term::Unit),
            Type::Product(a, b) => Some(Term::pair(self.prove(a)?, self.prove(b)?)),
            Type::Arrow(a, b) => {
                self.ctx.push((**a).clone());
                let body = self.prove(b);
                self.ctx.pop();
                Some(Term::lam((**a).clone(), body?))
            }
            Type::Base => {
                let key = (self.ctx.iter().cloned().collect::<BTreeSet<_>>(), Type::Base);
                if self.stack.contains(&key) {
                    return None;
                }
                self.stack.push(key);
                let found = self.prove_base();
                self.stack.pop();
                found
            }
        }
    }

    fn prove_base(&mut self) -> Option<Term> {
        let n = self.ctx.len();
        for i in 0..n {
            let hyp = self.ctx[n - 1 - i].clone();
            'spines: for spine in spines(&hyp) {
                let mut t = Term::var(i);
                for e in spine {
                    t = match e {
                        Elim::Fst => Term::fst(t),
                        Elim::Snd => Term::snd(t),
                        Elim::Arg(a) => match self.prove(&a) {
                            Some(arg) => Term::app(t, arg),
                            None => continue 'spines,
                        },
                    };
                }
                return Some(t);
            }
        }
        None
    }
}

/// A closed long normal inhabitant of `ty`, if there is one.
///
/// Goal-directed proof search with loop checking on (hypothesis set, goal);
/// contexts only grow along a branch, so the search terminates.
pub fn inhabitant(ty: &Type) -> Option<Term> {
    Search {
        ctx: Vec::new(),
        stack: Vec::new(),
    }
    .prove(ty)
}

pub fn is_inhabited(ty: &Type) -> bool {
    inhabitant(ty).is_some()
}
