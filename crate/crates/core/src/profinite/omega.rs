use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::model::{Model, Value};
use crate::syntax::Type;

/// The idempotent power of `x` in a finite monoid, by cycle detection on
/// `x, x^2, x^3, ...`. Returns `(x^m, index, period)` where `m` is the least
/// multiple of the period that is at least the index.
pub fn idempotent_power<T, F>(x: &T, mut mul: F) -> (T, usize, usize)
where
    T: Clone + Eq + Hash,
    F: FnMut(&T, &T) -> T,
{
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut powers = vec![x.clone()];
    seen.insert(x.clone(), 1);
    loop {
        let next = mul(powers.last().unwrap(), x);
        let n = powers.len() + 1;
        if let Some(&i) = seen.get(&next) {
            let period = n - i;
            let m = i.div_ceil(period) * period;
            return (powers[m - 1].clone(), i, period);
        }
        seen.insert(next.clone(), n);
        powers.push(next);
    }
}

/// `ω(f)` for an endomorphism `f` of `⟦ty⟧(q)`.
pub fn omega_element(model: &Model, ty: &Type, f: &Value) -> Result<Value> {
    let n = model.checked_size(ty)?;
    if f.table().map(<[Value]>::len) != Some(n) {
        return Err(Error::Mismatch(format!(
            "expected an endomorphism of {ty} over q={}",
            model.q()
        )));
    }
    Ok(idempotent_power(f, |a, b| model.compose(a, b)).0)
}

/// Applies `ω` at base type to every `F f1 .. fn` of a Church functional.
pub fn word_omega_value(model: &Model, letters: usize, v: &Value) -> Result<Value> {
    if letters == 0 {
        return omega_element(model, &Type::Base, v);
    }
    let table = v
        .table()
        .ok_or_else(|| Error::Mismatch("expected a Church functional".into()))?;
    Ok(Value::fun(
        table
            .iter()
            .map(|w| word_omega_value(model, letters - 1, w))
            .collect::<Result<Vec<_>>>()?,
    ))
}
