use std::collections::HashMap;
use std::sync::Arc;

use super::{PartialSurjection, Relation};
use crate::error::{Error, Result};
use crate::model::{Model, Value};
use crate::syntax::Type;

/// The logical relation `⟦A⟧(R)` induced by `R ⊆ [q] × [q']`.
///
/// Membership at an arrow type quantifies over the related argument pairs;
/// the argument relations are materialized (as index pairs) and cached, the
/// relation at the queried type itself never is.
pub struct LogicalRelation<'m> {
    base: Relation,
    left: &'m Model,
    right: &'m Model,
    related: HashMap<Type, Arc<Vec<(usize, usize)>>>,
}

impl<'m> LogicalRelation<'m> {
    pub fn new(base: Relation, left: &'m Model, right: &'m Model) -> Result<Self> {
        if base.left() != left.q() as usize || base.right() != right.q() as usize {
            return Err(Error::Mismatch(format!(
                "relation on [{}]x[{}] used with models over {} and {}",
                base.left(),
                base.right(),
                left.q(),
                right.q()
            )));
        }
        Ok(LogicalRelation {
            base,
            left,
            right,
            related: HashMap::new(),
        })
    }

    pub fn base(&self) -> &Relation {
        &self.base
    }

    /// Whether `(x, y) ∈ ⟦ty⟧(R)`.
    pub fn member(&mut self, ty: &Type, x: &Value, y: &Value) -> Result<bool> {
        match ty {
            Type::Base => Ok(self.base.contains(
                x.as_base().expect("base value") as usize,
                y.as_base().expect("base value") as usize,
            )),
            Type::Unit => Ok(true),
            Type::Product(a, b) => match (x, y) {
                (Value::Pair(p), Value::Pair(p2)) => Ok(self.member(a, &p.0, &p2.0)? && self.member(b, &p.1, &p2.1)?),
                _ => unreachable!("product values are pairs"),
            },
            Type::Arrow(a, b) => {
                let pairs = self.related(a)?;
                for &(i, j) in pairs.iter() {
                    if !self.member(b, x.at(i), y.at(j))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `⟦ty⟧(R)` as index pairs; both denotations must be within the cap.
    pub fn related(&mut self, ty: &Type) -> Result<Arc<Vec<(usize, usize)>>> {
        if let Some(p) = self.related.get(ty) {
            return Ok(p.clone());
        }
        let pairs = match ty {
            Type::Base => self.base.pairs().collect(),
            _ => {
                let xs = self.left.points(ty)?;
                let ys = self.right.points(ty)?;
                let mut out = Vec::new();
                for (i, x) in xs.iter().enumerate() {
                    for (j, y) in ys.iter().enumerate() {
                        if self.member(ty, x, y)? {
                            out.push((i, j));
                        }
                    }
                }
                out
            }
        };
        let pairs = Arc::new(pairs);
        self.related.insert(ty.clone(), pairs.clone());
        Ok(pairs)
    }

    /// `⟦ty⟧(R)` as a [`Relation`] between the two index spaces.
    pub fn materialize(&mut self, ty: &Type) -> Result<Relation> {
        let l = self.left.checked_size(ty)?;
        let r = self.right.checked_size(ty)?;
        let pairs = self.related(ty)?;
        Relation::from_pairs(l, r, pairs.iter().copied())
    }
}

/// The partial surjection `⟦A⟧(f) : ⟦A⟧(q) ⇀ ⟦A⟧(q')` induced by
/// `f : [q] ⇀ [q']`, applied pointwise. Argument types are materialized
/// and cached; the queried value is only traversed.
pub struct LiftedSurjection<'m> {
    base: PartialSurjection,
    left: &'m Model,
    right: &'m Model,
    maps: HashMap<Type, Arc<Vec<Option<usize>>>>,
}

impl<'m> LiftedSurjection<'m> {
    pub fn new(base: PartialSurjection, left: &'m Model, right: &'m Model) -> Result<Self> {
        if base.left() != left.q() as usize || base.right() != right.q() as usize {
            return Err(Error::Mismatch(format!(
                "partial surjection [{}]->[{}] used with models over {} and {}",
                base.left(),
                base.right(),
                left.q(),
                right.q()
            )));
        }
        Ok(LiftedSurjection {
            base,
            left,
            right,
            maps: HashMap::new(),
        })
    }

    pub fn base(&self) -> &PartialSurjection {
        &self.base
    }

    /// `⟦ty⟧(f)(x)`, or `None` when `x` is outside the domain.
    pub fn apply(&mut self, ty: &Type, x: &Value) -> Result<Option<Value>> {
        match ty {
            Type::Base => Ok(self
                .base
                .get(x.as_base().expect("base value") as usize)
                .map(|y| Value::Base(y as u32))),
            Type::Unit => Ok(Some(Value::Unit)),
            Type::Product(a, b) => match x {
                Value::Pair(p) => {
                    let (Some(l), Some(r)) = (self.apply(a, &p.0)?, self.apply(b, &p.1)?) else {
                        return Ok(None);
                    };
                    Ok(Some(Value::pair(l, r)))
                }
                _ => unreachable!("product values are pairs"),
            },
            Type::Arrow(a, b) => {
                let arg_map = self.map(a)?;
                let n_right = self.right.checked_size(a)?;
                let mut table: Vec<Option<Value>> = vec![None; n_right];
                for (i, target) in arg_map.iter().enumerate() {
                    let Some(j) = *target else { continue };
                    let Some(y) = self.apply(b, x.at(i))? else {
                        return Ok(None);
                    };
                    match &table[j] {
                        Some(prev) if *prev != y => return Ok(None),
                        Some(_) => {}
                        None => table[j] = Some(y),
                    }
                }
                let table = table
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Invariant(format!("lifted partial surjection at {a} is not surjective")))?;
                Ok(Some(Value::fun(table)))
            }
        }
    }

    /// `⟦ty⟧(f)` on indices; `⟦ty⟧` must be within the cap on both sides.
    pub fn map(&mut self, ty: &Type) -> Result<Arc<Vec<Option<usize>>>> {
        if let Some(m) = self.maps.get(ty) {
            return Ok(m.clone());
        }
        let q2 = self.right.q();
        self.right.checked_size(ty)?;
        let xs = self.left.points(ty)?;
        let mut out = Vec::with_capacity(xs.len());
        for x in xs.iter() {
            out.push(self.apply(ty, x)?.map(|y| y.small_index(q2)));
        }
        let out = Arc::new(out);
        self.maps.insert(ty.clone(), out.clone());
        Ok(out)
    }

    /// `⟦ty⟧(f)` as a checked [`PartialSurjection`].
    pub fn to_partial_surjection(&mut self, ty: &Type) -> Result<PartialSurjection> {
        let right = self.right.checked_size(ty)?;
        let map = self.map(ty)?;
        PartialSurjection::new(right, map.to_vec())
            .map_err(|e| Error::Invariant(format!("lifted relation at {ty} is not a partial surjection: {e}")))
    }
}

/// `⟦A⟧(R)` membership for a single pair.
pub fn logical_relation_member(
    ty: &Type,
    base: &Relation,
    left: &Model,
    right: &Model,
    x: &Value,
    y: &Value,
) -> Result<bool> {
    LogicalRelation::new(base.clone(), left, right)?.member(ty, x, y)
}

/// `⟦A⟧(f)` as a partial surjection between element indices.
pub fn logical_relation_of_psurj(
    ty: &Type,
    f: &PartialSurjection,
    left: &Model,
    right: &Model,
) -> Result<PartialSurjection> {
    LiftedSurjection::new(f.clone(), left, right)?.to_partial_surjection(ty)
}
