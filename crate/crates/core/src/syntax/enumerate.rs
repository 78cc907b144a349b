//! Type-directed enumeration of β-normal η-long terms by node count.

use std::collections::HashMap;
use std::rc::Rc;

use super::{Term, Type};

/// Memoizing generator of long normal forms. Output order is
/// deterministic: by variable index, then by argument size split.
#[derive(Default)]
pub struct NormalForms {
    memo: HashMap<(Vec<Type>, Type, usize), Rc<Vec<Term>>>,
}

impl NormalForms {
    pub fn new() -> Self {
        Self::default()
    }

    /// Closed long normal forms of type `ty` with exactly `size` nodes.
    pub fn closed(&mut self, ty: &Type, size: usize) -> Rc<Vec<Term>> {
        self.of_size(&[], ty, size)
    }

    /// Closed long normal forms of type `ty` with at most `max_size` nodes,
    /// smallest first.
    pub fn closed_up_to(&mut self, ty: &Type, max_size: usize) -> Vec<Term> {
        (1..=max_size)
            .flat_map(|n| self.closed(ty, n).iter().cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Long normal forms of type `ty` in context `ctx` with exactly `size`
    /// nodes.
    pub fn of_size(&mut self, ctx: &[Type], ty: &Type, size: usize) -> Rc<Vec<Term>> {
        let key = (ctx.to_vec(), ty.clone(), size);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let out = Rc::new(self.intro(ctx, ty, size));
        self.memo.insert(key, out.clone());
        out
    }

    fn intro(&mut self, ctx: &[Type], ty: &Type, size: usize) -> Vec<Term> {
        if size == 0 {
            return Vec::new();
        }
        match ty {
            Type::Arrow(dom, cod) => {
                let mut inner = ctx.to_vec();
                inner.push((**dom).clone());
                self.of_size(&inner, cod, size - 1)
                    .iter()
                    .map(|b| Term::lam((**dom).clone(), b.clone()))
                    .collect()
            }
            Type::Product(a, b) => {
                let mut out = Vec::new();
                for left in 1..size.saturating_sub(1) {
                    let right = size - 1 - left;
                    let ls = self.of_size(ctx, a, left);
                    if ls.is_empty() {
                        continue;
                    }
                    let rs = self.of_size(ctx, b, right);
                    for l in ls.iter() {
                        for r in rs.iter() {
                            out.push(Term::pair(l.clone(), r.clone()));
                        }
                    }
                }
                out
            }
            Type::Unit => {
                if size == 1 {
                    vec![Term::Unit]
                } else {
                    Vec::new()
                }
            }
            Type::Base => {
                let mut out = Vec::new();
                for i in 0..ctx.len() {
                    let head_ty = ctx[ctx.len() - 1 - i].clone();
                    self.spine(ctx, Term::var(i), &head_ty, size - 1, &mut out);
                }
                out
            }
        }
    }

    /// Eliminations of `head : head_ty` down to `o` using exactly `budget`
    /// further nodes.
    fn spine(&mut self, ctx: &[Type], head: Term, head_ty: &Type, budget: usize, out: &mut Vec<Term>) {
        match head_ty {
            Type::Base => {
                if budget == 0 {
                    out.push(head);
                }
            }
            Type::Unit => {}
            Type::Arrow(dom, cod) => {
                if budget < 2 {
                    return;
                }
                for arg_size in 1..budget {
                    let args = self.of_size(ctx, dom, arg_size);
                    for a in args.iter() {
                        self.spine(ctx, Term::app(head.clone(), a.clone()), cod, budget - 1 - arg_size, out);
                    }
                }
            }
            Type::Product(a, b) => {
                if budget == 0 {
                    return;
                }
                self.spine(ctx, Term::fst(head.clone()), a, budget - 1, out);
                self.spine(ctx, Term::snd(head), b, budget - 1, out);
            }
        }
    }
}
