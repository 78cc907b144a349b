use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A point of a finite denotation, stored as its table view.
///
/// The shape of a value determines its type up to the base set: a function
/// is the table of its results indexed by the mixed-radix index of the
/// argument, so every table is non-empty and all of its entries share one
/// shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Base(u32),
    Fun(Arc<[Value]>),
    Pair(Arc<(Value, Value)>),
    Unit,
}

impl Value {
    pub fn fun(table: Vec<Value>) -> Value {
        Value::Fun(table.into())
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new((a, b)))
    }

    pub fn as_base(&self) -> Option<u32> {
        match self {
            Value::Base(v) => Some(*v),
            _ => None,
        }
    }

    pub fn table(&self) -> Option<&[Value]> {
        match self {
            Value::Fun(t) => Some(t),
            _ => None,
        }
    }

    /// Function application by table lookup.
    pub fn at(&self, arg_index: usize) -> &Value {
        match self {
            Value::Fun(t) => &t[arg_index],
            _ => panic!("applying a non-function value"),
        }
    }

    /// The first-order table of a base-to-base function.
    pub fn base_table(&self) -> Option<Vec<u32>> {
        self.table()?.iter().map(Value::as_base).collect()
    }

    pub fn from_base_table(table: &[u32]) -> Value {
        Value::fun(table.iter().map(|&v| Value::Base(v)).collect())
    }

    /// `(index, size of the denotation)` in machine words, if both fit.
    pub fn small_index_and_size(&self, q: u32) -> Option<(u64, u64)> {
        match self {
            Value::Base(v) => Some((*v as u64, q as u64)),
            Value::Unit => Some((0, 1)),
            Value::Pair(p) => {
                let (ia, sa) = p.0.small_index_and_size(q)?;
                let (ib, sb) = p.1.small_index_and_size(q)?;
                Some((ia.checked_add(sa.checked_mul(ib)?)?, sa.checked_mul(sb)?))
            }
            Value::Fun(t) => {
                let mut acc: u64 = 0;
                let mut cod_size = 0;
                for v in t.iter().rev() {
                    let (i, s) = v.small_index_and_size(q)?;
                    cod_size = s;
                    acc = acc.checked_mul(s)?.checked_add(i)?;
                }
                let size = cod_size.checked_pow(u32::try_from(t.len()).ok()?)?;
                Some((acc, size))
            }
        }
    }

    /// Index as a machine word. Panics if it does not fit, which cannot
    /// happen for points of a denotation that has been enumerated.
    pub fn small_index(&self, q: u32) -> usize {
        self.small_index_and_size(q)
            .and_then(|(i, _)| usize::try_from(i).ok())
            .expect("index of a materialized denotation fits in a word")
    }

    /// Exact index and size.
    pub fn index_and_size(&self, q: u32) -> (BigUint, BigUint) {
        match self {
            Value::Base(v) => (BigUint::from(*v), BigUint::from(q)),
            Value::Unit => (BigUint::zero(), BigUint::one()),
            Value::Pair(p) => {
                let (ia, sa) = p.0.index_and_size(q);
                let (ib, sb) = p.1.index_and_size(q);
                (ia + &sa * ib, sa * sb)
            }
            Value::Fun(t) => {
                let parts: Vec<(BigUint, BigUint)> = t.iter().map(|v| v.index_and_size(q)).collect();
                let cod_size = parts[0].1.clone();
                let mut acc = BigUint::zero();
                for (d, _) in parts.iter().rev() {
                    acc = acc * &cod_size + d;
                }
                let size = num_traits::pow(cod_size, t.len());
                (acc, size)
            }
        }
    }

    pub fn index(&self, q: u32) -> BigUint {
        self.index_and_size(q).0
    }

    /// Number of base leaves, a proxy for memory footprint.
    pub fn leaves(&self) -> usize {
        match self {
            Value::Base(_) | Value::Unit => 1,
            Value::Pair(p) => p.0.leaves() + p.1.leaves(),
            Value::Fun(t) => t.iter().map(Value::leaves).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn little_endian_mixed_radix() {
        // swap on {0,1}: table [1, 0] -> 1 + 0*2 = 1
        let swap = Value::from_base_table(&[1, 0]);
        assert_eq!(swap.small_index_and_size(2), Some((1, 4)));
        // const 1: [1, 1] -> 1 + 2 = 3
        assert_eq!(Value::from_base_table(&[1, 1]).small_index(2), 3);
        let id3 = Value::from_base_table(&[0, 1, 2]);
        // digits 0, 1, 2 in base 3
        assert_eq!(id3.small_index(3), 3 + 2 * 9);
        assert_eq!(id3.index(3), BigUint::from(21u32));
    }

    #[test]
    fn pairs_put_the_left_component_in_the_low_digit() {
        let p = Value::pair(Value::Base(1), Value::Base(2));
        assert_eq!(p.small_index_and_size(3), Some((1 + 3 * 2, 9)));
    }

    #[test]
    fn big_and_small_indices_agree() {
        let v = Value::fun(vec![
            Value::from_base_table(&[1, 0]),
            Value::from_base_table(&[1, 1]),
            Value::from_base_table(&[0, 0]),
            Value::from_base_table(&[0, 1]),
        ]);
        let (i, s) = v.small_index_and_size(2).unwrap();
        assert_eq!(v.index_and_size(2), (BigUint::from(i), BigUint::from(s)));
        assert_eq!(s, 256);
    }
}
