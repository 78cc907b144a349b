//! Exact definable sets at types `B1 -> ... -> Bm -> o` whose arguments
//! are first order (`Bi = o^ki -> o`).
//!
//! A closed long normal form of such a type is `\x1..xm. t` where `t` is
//! built from `xi t1 .. tki`. Its denotation is a function of the
//! environment `(x1..xm)`, so `Def` is the least set of such functions closed
//! under the `m` constructors. Semi-naive rounds compute it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Model, Value};
use crate::syntax::{Term, Type};

/// Bound on table entries touched while saturating before giving up.
const WORK_LIMIT: u64 = 1 << 28;
/// Bound on stored table entries.
const MEMORY_LIMIT: u64 = 1 << 24;

/// Argument arities if `ty` has the saturable shape.
pub fn arities(ty: &Type) -> Option<Vec<usize>> {
    let (args, result) = ty.uncurry();
    if *result != Type::Base {
        return None;
    }
    args.iter()
        .map(|a| a.is_first_order_arrow().then(|| a.uncurry().0.len()))
        .collect()
}

pub struct Saturated {
    pub values: Vec<Value>,
    pub witnesses: Vec<Term>,
}

/// `Ok(None)` when the closure is too large to compute within the limits.
pub fn saturate(model: &Model, ty: &Type) -> Result<Option<Saturated>> {
    let ar = arities(ty).ok_or_else(|| Error::Precondition(format!("{ty} is not saturable")))?;
    let q = model.q() as u64;
    let m = ar.len();
    let (args, _) = ty.uncurry();

    // points of each argument type as explicit tables
    let mut point_tables: Vec<Vec<Vec<u32>>> = Vec::with_capacity(m);
    let mut env_sizes = Vec::with_capacity(m);
    let mut total: u64 = 1;
    for (i, &k) in ar.iter().enumerate() {
        let n = model.checked_size(args[i])?;
        let positions = q.pow(k as u32) as usize;
        let tables = (0..n as u64)
            .map(|j| {
                let mut rest = j;
                (0..positions)
                    .map(|_| {
                        let d = rest % q;
                        rest /= q;
                        d as u32
                    })
                    .collect()
            })
            .collect();
        point_tables.push(tables);
        env_sizes.push(n);
        total = total.saturating_mul(n as u64);
    }
    if total > model.cap() {
        return Err(Error::CapExceeded {
            ty: ty.clone(),
            q: model.q(),
            entries: total.to_string(),
            cap: model.cap(),
        });
    }
    let total = total as usize;
    // digits[e * m + i] = index of the i-th argument in environment e
    let mut digits = vec![0usize; total * m];
    for e in 0..total {
        let mut rest = e;
        for i in (0..m).rev() {
            digits[e * m + i] = rest % env_sizes[i];
            rest /= env_sizes[i];
        }
    }

    let mut elems: Vec<Vec<u32>> = Vec::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut work: u64 = 0;
    let mut prev = 0usize;
    let mut first = true;
    loop {
        let cur = elems.len();
        for (i, &k) in ar.iter().enumerate() {
            if k > 0 && cur == 0 {
                continue;
            }
            let mut tuple = vec![0usize; k];
            'tuples: loop {
                if first || tuple.iter().any(|&t| t >= prev) {
                    work += total as u64;
                    if work > WORK_LIMIT {
                        return Ok(None);
                    }
                    let tables = &point_tables[i];
                    let new: Vec<u32> = (0..total)
                        .map(|e| {
                            let pos = tuple
                                .iter()
                                .fold(0usize, |acc, &t| acc * q as usize + elems[t][e] as usize);
                            tables[digits[e * m + i]][pos]
                        })
                        .collect();
                    if !seen.contains_key(&new) {
                        if ((elems.len() + 1) * total) as u64 > MEMORY_LIMIT {
                            return Ok(None);
                        }
                        seen.insert(new.clone(), elems.len());
                        elems.push(new);
                        terms.push(Term::apps(
                            Term::var(m - 1 - i),
                            tuple.iter().map(|&t| terms[t].clone()),
                        ));
                    }
                }
                // next tuple over [0, cur)
                for slot in tuple.iter_mut().rev() {
                    *slot += 1;
                    if *slot < cur {
                        continue 'tuples;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        if elems.len() == cur {
            break;
        }
        prev = cur;
        first = false;
    }

    let wrap = |body: Term| args.iter().rev().fold(body, |acc, a| Term::lam((*a).clone(), acc));
    Ok(Some(Saturated {
        values: elems.iter().map(|flat| unflatten(flat, &env_sizes)).collect(),
        witnesses: terms.into_iter().map(wrap).collect(),
    }))
}

fn unflatten(flat: &[u32], sizes: &[usize]) -> Value {
    match sizes.split_first() {
        None => Value::Base(flat[0]),
        Some((&n, rest)) => {
            let chunk = flat.len() / n;
            Value::fun(flat.chunks(chunk).map(|c| unflatten(c, rest)).collect())
        }
    }
}
