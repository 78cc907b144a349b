//! Typed normalization by evaluation. Reification is type-directed, so the
//! result is β-normal and η-long at every type.

use std::rc::Rc;

use super::typecheck::typecheck;
use super::{Term, Type};
use crate::error::Result;

#[derive(Clone)]
enum Sem {
    Lam(Rc<Closure>),
    Pair(Rc<Sem>, Rc<Sem>),
    Unit,
    Neutral(Rc<Neutral>),
}

struct Closure {
    env: Vec<Rc<Sem>>,
    body: Term,
}

enum Neutral {
    /// De Bruijn level.
    Var(usize),
    App(Rc<Neutral>, Rc<Sem>),
    Fst(Rc<Neutral>),
    Snd(Rc<Neutral>),
}

fn eval(env: &[Rc<Sem>], term: &Term) -> Rc<Sem> {
    match term {
        Term::Var(i) => env[env.len() - 1 - i].clone(),
        Term::Unit => Rc::new(Sem::Unit),
        Term::Lam(_, body) => Rc::new(Sem::Lam(Rc::new(Closure {
            env: env.to_vec(),
            body: (**body).clone(),
        }))),
        Term::App(f, a) => apply(eval(env, f), eval(env, a)),
        Term::Pair(a, b) => Rc::new(Sem::Pair(eval(env, a), eval(env, b))),
        Term::Fst(t) => fst(eval(env, t)),
        Term::Snd(t) => snd(eval(env, t)),
    }
}

fn apply(f: Rc<Sem>, a: Rc<Sem>) -> Rc<Sem> {
    match &*f {
        Sem::Lam(clo) => {
            let mut env = clo.env.clone();
            env.push(a);
            eval(&env, &clo.body)
        }
        Sem::Neutral(n) => Rc::new(Sem::Neutral(Rc::new(Neutral::App(n.clone(), a)))),
        _ => unreachable!("application of a non-function in a well-typed term"),
    }
}

fn fst(p: Rc<Sem>) -> Rc<Sem> {
    match &*p {
        Sem::Pair(a, _) => a.clone(),
        Sem::Neutral(n) => Rc::new(Sem::Neutral(Rc::new(Neutral::Fst(n.clone())))),
        _ => unreachable!("projection of a non-pair in a well-typed term"),
    }
}

fn snd(p: Rc<Sem>) -> Rc<Sem> {
    match &*p {
        Sem::Pair(_, b) => b.clone(),
        Sem::Neutral(n) => Rc::new(Sem::Neutral(Rc::new(Neutral::Snd(n.clone())))),
        _ => unreachable!("projection of a non-pair in a well-typed term"),
    }
}

/// `levels` holds the type of every bound level.
fn reify(levels: &mut Vec<Type>, ty: &Type, v: Rc<Sem>) -> Term {
    match ty {
        Type::Arrow(dom, cod) => {
            let lvl = levels.len();
            let x = Rc::new(Sem::Neutral(Rc::new(Neutral::Var(lvl))));
            levels.push((**dom).clone());
            let body = reify(levels, cod, apply(v, x));
            levels.pop();
            Term::lam((**dom).clone(), body)
        }
        Type::Product(a, b) => {
            let l = reify(levels, a, fst(v.clone()));
            let r = reify(levels, b, snd(v));
            Term::pair(l, r)
        }
        Type::Unit => Term::Unit,
        Type::Base => match &*v {
            Sem::Neutral(n) => reify_neutral(levels, n).0,
            _ => unreachable!("a value of base type is always neutral"),
        },
    }
}

fn reify_neutral(levels: &mut Vec<Type>, n: &Neutral) -> (Term, Type) {
    match n {
        Neutral::Var(l) => (Term::var(levels.len() - 1 - l), levels[*l].clone()),
        Neutral::App(f, a) => {
            let (ft, fty) = reify_neutral(levels, f);
            let (dom, cod) = fty.as_arrow().expect("neutral head of arrow type");
            let (dom, cod) = (dom.clone(), cod.clone());
            let at = reify(levels, &dom, a.clone());
            (Term::app(ft, at), cod)
        }
        Neutral::Fst(p) | Neutral::Snd(p) => {
            let (pt, pty) = reify_neutral(levels, p);
            match (pty, n) {
                (Type::Product(a, _), Neutral::Fst(_)) => (Term::fst(pt), (*a).clone()),
                (Type::Product(_, b), _) => (Term::snd(pt), (*b).clone()),
                _ => unreachable!("neutral projection of product type"),
            }
        }
    }
}

/// β-normal η-long form of `term` in context `ctx` (last entry is index 0).
pub fn normalize_in(ctx: &[Type], term: &Term) -> Result<Term> {
    let ty = typecheck(ctx, term)?;
    let env: Vec<Rc<Sem>> = (0..ctx.len())
        .map(|l| Rc::new(Sem::Neutral(Rc::new(Neutral::Var(l)))))
        .collect();
    let v = eval(&env, term);
    let mut levels = ctx.to_vec();
    Ok(reify(&mut levels, &ty, v))
}

/// β-normal η-long form of a closed term.
pub fn normalize(term: &Term) -> Result<Term> {
    normalize_in(&[], term)
}

/// Whether two terms in the same context are βη-equal.
pub fn beta_eta_equal(ctx: &[Type], a: &Term, b: &Term) -> Result<bool> {
    Ok(normalize_in(ctx, a)? == normalize_in(ctx, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::{parse_closed, parse_term};

    #[test]
    fn beta_redex_in_context() {
        let (t, _) = parse_term("(\\x:o. x) y", &[("y", Type::Base)]).unwrap();
        assert_eq!(normalize_in(&[Type::Base], &t).unwrap(), Term::var(0));
    }

    #[test]
    fn eta_expansion() {
        let (t, _) = parse_closed("\\f:o->o. f").unwrap();
        let (expected, _) = parse_closed("\\f:o->o. \\x:o. f x").unwrap();
        assert_eq!(normalize(&t).unwrap(), expected);
    }

    #[test]
    fn church_one_through_identity() {
        let (t, _) = parse_closed("\\f:o->o. \\x:o. (\\g:o->o. g) f x").unwrap();
        let (one, _) = parse_closed("\\f:o->o. \\x:o. f x").unwrap();
        assert_eq!(normalize(&t).unwrap(), one);
    }

    #[test]
    fn eta_at_products() {
        let (t, _) = parse_closed("\\p:o * (o -> o). p").unwrap();
        let (expected, _) = parse_closed("\\p:o * (o -> o). (fst p, \\x:o. snd p x)").unwrap();
        assert_eq!(normalize(&t).unwrap(), expected);
        let (u, _) = parse_closed("\\u:1. u").unwrap();
        assert_eq!(normalize(&u).unwrap(), parse_closed("\\u:1. ()").unwrap().0);
    }

    #[test]
    fn ill_typed_input_is_an_error() {
        let bad = Term::app(Term::identity(Type::Base), Term::identity(Type::Base));
        assert!(normalize(&bad).is_err());
    }
}
