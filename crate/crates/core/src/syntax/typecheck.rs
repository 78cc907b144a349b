use std::fmt;

use super::print::print_in;
use super::{Term, Type};
use crate::error::{Error, Result};

/// One step from a term node to one of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Body,
    Fun,
    Arg,
    Left,
    Right,
    Inner,
}

/// Location of a subterm, as the sequence of steps from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Path(pub Vec<Step>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Step::Body => "body",
                Step::Fun => "fun",
                Step::Arg => "arg",
                Step::Left => "left",
                Step::Right => "right",
                Step::Inner => "inner",
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Infers the type of `term` in `ctx` (the last entry binds index 0).
pub fn typecheck(ctx: &[Type], term: &Term) -> Result<Type> {
    let mut env = ctx.to_vec();
    let mut path = Vec::new();
    infer(&mut env, term, &mut path)
}

fn error(env: &[Type], path: &[Step], term: &Term, message: String) -> Error {
    Error::Type {
        path: Path(path.to_vec()),
        message,
        subterm: print_in(term, &vec![None; env.len()]),
    }
}

fn infer(env: &mut Vec<Type>, term: &Term, path: &mut Vec<Step>) -> Result<Type> {
    match term {
        Term::Var(i) => {
            if *i < env.len() {
                Ok(env[env.len() - 1 - i].clone())
            } else {
                Err(error(env, path, term, format!("index {i} is not bound")))
            }
        }
        Term::Unit => Ok(Type::Unit),
        Term::Lam(ty, body) => {
            env.push(ty.clone());
            path.push(Step::Body);
            let cod = infer(env, body, path);
            path.pop();
            env.pop();
            Ok(Type::arrow(ty.clone(), cod?))
        }
        Term::App(fun, arg) => {
            path.push(Step::Fun);
            let fty = infer(env, fun, path)?;
            path.pop();
            path.push(Step::Arg);
            let aty = infer(env, arg, path)?;
            path.pop();
            match fty {
                Type::Arrow(dom, cod) if *dom == aty => Ok((*cod).clone()),
                Type::Arrow(dom, _) => Err(error(
                    env,
                    path,
                    term,
                    format!("argument has type {aty} but the function expects {dom}"),
                )),
                other => Err(error(
                    env,
                    path,
                    term,
                    format!("applying a term of non-function type {other}"),
                )),
            }
        }
        Term::Pair(a, b) => {
            path.push(Step::Left);
            let ta = infer(env, a, path)?;
            path.pop();
            path.push(Step::Right);
            let tb = infer(env, b, path)?;
            path.pop();
            Ok(Type::product(ta, tb))
        }
        Term::Fst(inner) | Term::Snd(inner) => {
            path.push(Step::Inner);
            let t = infer(env, inner, path)?;
            path.pop();
            match (t, term) {
                (Type::Product(a, _), Term::Fst(_)) => Ok((*a).clone()),
                (Type::Product(_, b), _) => Ok((*b).clone()),
                (other, _) => Err(error(
                    env,
                    path,
                    term,
                    format!("projection from non-product type {other}"),
                )),
            }
        }
    }
}
