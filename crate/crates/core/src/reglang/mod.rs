//! Regular languages of closed terms: `L = {M | ⟦M⟧_q ∈ F}`.
//!
//! Accepting sets are kept symbolic because denotations at Church types
//! are far too large to enumerate; membership of a single point is always
//! cheap to decide.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::definability::{def_set, DefSet};
use crate::error::{Error, Result};
use crate::model::{Model, Value, DEFAULT_CAP};
use crate::relations::{LiftedSurjection, PartialSurjection};
use crate::syntax::{typecheck, Term, Type};

#[derive(Clone)]
pub enum AcceptSet {
    Full,
    Explicit(Arc<HashSet<Value>>),
    Complement(Box<AcceptSet>),
    Union(Box<AcceptSet>, Box<AcceptSet>),
    Intersection(Box<AcceptSet>, Box<AcceptSet>),
    /// Points `x` with `⟦A⟧(f)(x)` defined and accepted at the inner level.
    Preimage {
        f: PartialSurjection,
        inner_model: Arc<Model>,
        inner: Box<AcceptSet>,
    },
    /// Points `F` with `F a1 ... an` in `accept`.
    Evaluation {
        args: Vec<Value>,
        accept: Arc<HashSet<Value>>,
    },
}

impl fmt::Debug for AcceptSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptSet::Full => write!(f, "Full"),
            AcceptSet::Explicit(s) => write!(f, "Explicit({} points)", s.len()),
            AcceptSet::Complement(a) => write!(f, "Complement({a:?})"),
            AcceptSet::Union(a, b) => write!(f, "Union({a:?}, {b:?})"),
            AcceptSet::Intersection(a, b) => write!(f, "Intersection({a:?}, {b:?})"),
            AcceptSet::Preimage { f: p, inner, .. } => write!(f, "Preimage({p}, {inner:?})"),
            AcceptSet::Evaluation { args, accept } => {
                write!(f, "Evaluation({} args, {} accepted)", args.len(), accept.len())
            }
        }
    }
}

/// A language recognized by `[q]` at type `ty`.
#[derive(Clone, Debug)]
pub struct RegLanguage {
    ty: Type,
    model: Arc<Model>,
    accepting: AcceptSet,
}

impl RegLanguage {
    pub fn new(ty: &Type, model: Arc<Model>, accepting: AcceptSet) -> RegLanguage {
        RegLanguage {
            ty: ty.clone(),
            model,
            accepting,
        }
    }

    pub fn full(ty: &Type, model: Arc<Model>) -> RegLanguage {
        RegLanguage::new(ty, model, AcceptSet::Full)
    }

    pub fn empty(ty: &Type, model: Arc<Model>) -> RegLanguage {
        RegLanguage::from_values(ty, model, std::iter::empty())
    }

    pub fn from_values<I: IntoIterator<Item = Value>>(ty: &Type, model: Arc<Model>, values: I) -> RegLanguage {
        let set: HashSet<Value> = values.into_iter().collect();
        RegLanguage::new(ty, model, AcceptSet::Explicit(Arc::new(set)))
    }

    /// Accepting set given by exact indices.
    pub fn from_indices(ty: &Type, model: Arc<Model>, indices: &[BigUint]) -> Result<RegLanguage> {
        let values = indices
            .iter()
            .map(|i| model.decode(ty, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(RegLanguage::from_values(ty, model, values))
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn q(&self) -> u32 {
        self.model.q()
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn accepting(&self) -> &AcceptSet {
        &self.accepting
    }

    /// Whether the point `x` of `⟦ty⟧(q)` is accepted.
    pub fn accepts(&self, x: &Value) -> Result<bool> {
        accepts(&self.accepting, &self.ty, &self.model, x)
    }

    /// `M ∈ L`, i.e. `⟦M⟧_q` is accepted.
    pub fn member(&self, term: &Term) -> Result<bool> {
        let ty = typecheck(&[], term)?;
        if ty != self.ty {
            return Err(Error::Mismatch(format!(
                "term of type {ty} tested against a language at {}",
                self.ty
            )));
        }
        let v = self.model.eval(term, &mut Vec::new())?;
        self.accepts(&v)
    }

    /// Positions in `def` of the accepted definable elements: the atoms
    /// below this language.
    pub fn atoms(&self, def: &DefSet) -> Result<Vec<usize>> {
        self.check_def(def)?;
        let mut out = Vec::new();
        for (i, v) in def.values().iter().enumerate() {
            if self.accepts(v)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn check_def(&self, def: &DefSet) -> Result<()> {
        if *def.ty() != self.ty || def.q() != self.q() {
            return Err(Error::Mismatch(format!(
                "definable set at {} over q={} used with a language at {} over q={}",
                def.ty(),
                def.q(),
                self.ty,
                self.q()
            )));
        }
        Ok(())
    }

    fn same_level(&self, other: &RegLanguage) -> Result<()> {
        if self.ty != other.ty || self.q() != other.q() {
            return Err(Error::Mismatch(format!(
                "languages at {} over q={} and {} over q={}",
                self.ty,
                self.q(),
                other.ty,
                other.q()
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &RegLanguage) -> Result<RegLanguage> {
        self.same_level(other)?;
        Ok(self.with(AcceptSet::Union(
            Box::new(self.accepting.clone()),
            Box::new(other.accepting.clone()),
        )))
    }

    pub fn intersection(&self, other: &RegLanguage) -> Result<RegLanguage> {
        self.same_level(other)?;
        Ok(self.with(AcceptSet::Intersection(
            Box::new(self.accepting.clone()),
            Box::new(other.accepting.clone()),
        )))
    }

    pub fn complement(&self) -> RegLanguage {
        self.with(AcceptSet::Complement(Box::new(self.accepting.clone())))
    }

    fn with(&self, accepting: AcceptSet) -> RegLanguage {
        RegLanguage {
            ty: self.ty.clone(),
            model: self.model.clone(),
            accepting,
        }
    }

    /// The same language recognized at the larger level `model`, via the
    /// preimage under `⟦ty⟧(f)` for the canonical `f : [q] -> [q']`.
    pub fn embed(&self, model: Arc<Model>) -> Result<RegLanguage> {
        let f = PartialSurjection::canonical(model.q() as usize, self.q() as usize)?;
        self.pull_back(f, model)
    }

    /// Preimage along `⟦ty⟧(f)` for an arbitrary `f : [q] -> [q']`.
    pub fn pull_back(&self, f: PartialSurjection, model: Arc<Model>) -> Result<RegLanguage> {
        if f.left() != model.q() as usize || f.right() != self.q() as usize {
            return Err(Error::Mismatch(format!(
                "{f} does not go from [{}] to [{}]",
                model.q(),
                self.q()
            )));
        }
        Ok(RegLanguage {
            ty: self.ty.clone(),
            model,
            accepting: AcceptSet::Preimage {
                f,
                inner_model: self.model.clone(),
                inner: Box::new(self.accepting.clone()),
            },
        })
    }

    /// All accepted points, provided `⟦ty⟧(q)` is within the cap.
    pub fn materialize(&self) -> Result<Vec<Value>> {
        let pts = self.model.points(&self.ty)?;
        let mut out = Vec::new();
        for p in pts.iter() {
            if self.accepts(p)? {
                out.push(p.clone());
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<RegLanguageJson> {
        let q = self.q();
        let mut accepting: Vec<BigUint> = match &self.accepting {
            AcceptSet::Explicit(s) => s.iter().map(|v| v.index(q)).collect(),
            _ => self.materialize()?.iter().map(|v| v.index(q)).collect(),
        };
        accepting.sort();
        Ok(RegLanguageJson {
            r#type: self.ty.to_string(),
            q,
            accepting: accepting.iter().map(|i| i.to_string()).collect(),
        })
    }
}

fn accepts(set: &AcceptSet, ty: &Type, model: &Model, x: &Value) -> Result<bool> {
    Ok(match set {
        AcceptSet::Full => true,
        AcceptSet::Explicit(s) => s.contains(x),
        AcceptSet::Complement(a) => !accepts(a, ty, model, x)?,
        AcceptSet::Union(a, b) => accepts(a, ty, model, x)? || accepts(b, ty, model, x)?,
        AcceptSet::Intersection(a, b) => accepts(a, ty, model, x)? && accepts(b, ty, model, x)?,
        AcceptSet::Preimage { f, inner_model, inner } => {
            let mut lift = LiftedSurjection::new(f.clone(), model, inner_model)?;
            match lift.apply(ty, x)? {
                Some(y) => accepts(inner, ty, inner_model, &y)?,
                None => false,
            }
        }
        AcceptSet::Evaluation { args, accept } => {
            let mut v = x;
            for a in args {
                v = v.at(a.small_index(model.q()));
            }
            accept.contains(v)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegLanguageJson {
    pub r#type: String,
    pub q: u32,
    pub accepting: Vec<String>,
}

impl RegLanguageJson {
    pub fn decode(&self, cap: u64) -> Result<RegLanguage> {
        let ty = crate::syntax::parse_type(&self.r#type)?;
        if self.q == 0 {
            return Err(Error::Precondition("languages need q >= 1".into()));
        }
        let indices = self
            .accepting
            .iter()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| Error::Invalid(format!("bad index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RegLanguage::from_indices(&ty, Arc::new(Model::with_cap(self.q, cap)), &indices)
    }
}

/// The atom `U_{q,x}`: terms denoting `x` at `q`.
pub fn atom_language(ty: &Type, model: Arc<Model>, x: Value) -> RegLanguage {
    RegLanguage::from_values(ty, model, [x])
}

/// `L1 ∩ L2` recognized by `[q1 + q2]`, pulling each back along its
/// coproduct projection.
pub fn intersect_across(l1: &RegLanguage, l2: &RegLanguage) -> Result<RegLanguage> {
    if l1.ty != l2.ty {
        return Err(Error::Mismatch(format!("languages at {} and {}", l1.ty, l2.ty)));
    }
    let (q1, q2) = (l1.q() as usize, l2.q() as usize);
    let model = Arc::new(Model::with_cap((q1 + q2) as u32, l1.model.cap().max(l2.model.cap())));
    let a = l1.pull_back(PartialSurjection::coproduct_projection(q1, q2, false), model.clone())?;
    let b = l2.pull_back(PartialSurjection::coproduct_projection(q1, q2, true), model)?;
    a.intersection(&b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Same accepted definables; `certified` when the definable set used
    /// is exact, otherwise equality only holds on the definables found.
    Equal { certified: bool },
    /// A term in exactly one of the two languages.
    Different { witness: Term },
}

/// Compares two languages at the same type by embedding both at the
/// larger level and comparing their atoms there.
pub fn compare(l1: &RegLanguage, l2: &RegLanguage, budget: usize) -> Result<Comparison> {
    if l1.ty != l2.ty {
        return Err(Error::Mismatch(format!("languages at {} and {}", l1.ty, l2.ty)));
    }
    let top = if l1.q() >= l2.q() {
        l1.model.clone()
    } else {
        l2.model.clone()
    };
    let a = if l1.q() == top.q() {
        l1.clone()
    } else {
        l1.embed(top.clone())?
    };
    let b = if l2.q() == top.q() {
        l2.clone()
    } else {
        l2.embed(top.clone())?
    };
    let def = def_set(&top, &l1.ty, budget)?;
    for (v, w) in def.values().iter().zip(def.witnesses()) {
        if a.accepts(v)? != b.accepts(v)? {
            return Ok(Comparison::Different { witness: w.clone() });
        }
    }
    Ok(Comparison::Equal {
        certified: def.is_exact(),
    })
}

/// Convenience: a fresh model with the default cap.
pub fn level(q: u32) -> Arc<Model> {
    Arc::new(Model::with_cap(q, DEFAULT_CAP))
}
