//! Definable elements `Def_A(q)` with one witnessing closed term each, and
//! the restriction maps between levels.
//!
//! Exactness is certified by one of the strategies in [`Strategy`];
//! everything else is an enumeration lower bound.

mod inhabit;
mod saturate;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Element, Model, Value};
use crate::syntax::{print, typecheck, Alphabet, NormalForms, Term, Type};

pub use inhabit::{inhabitant, is_inhabited};

/// Default enumeration budget (maximum node count).
pub const DEFAULT_BUDGET: usize = 14;

/// Consecutive non-empty sizes without a new element before the
/// enumeration stops early.
const PATIENCE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// The type has no closed inhabitant.
    Uninhabited,
    /// `q = 1`: every denotation is a singleton.
    Singleton,
    /// `o -> ... -> o`: the projections.
    FirstOrder,
    /// Church types: closure of the word images under one-letter extension.
    ChurchClosure,
    /// Second-order types with first-order arguments: closure under the
    /// argument constructors.
    Saturation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Exactness {
    Exact { strategy: Strategy },
    LowerBound { budget: usize, searched_up_to: usize },
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact { strategy } => write!(f, "exact ({strategy:?})"),
            Exactness::LowerBound { budget, searched_up_to } => {
                write!(f, "lower bound (terms up to size {searched_up_to}, budget {budget})")
            }
        }
    }
}

/// A set of definable elements of `⟦ty⟧(q)`, each with a witness term.
/// Elements are kept in discovery order.
#[derive(Clone, Debug)]
pub struct DefSet {
    ty: Type,
    q: u32,
    values: Vec<Value>,
    witnesses: Vec<Term>,
    position: HashMap<Value, usize>,
    exactness: Exactness,
}

impl DefSet {
    fn new(ty: &Type, q: u32, exactness: Exactness) -> DefSet {
        DefSet {
            ty: ty.clone(),
            q,
            values: Vec::new(),
            witnesses: Vec::new(),
            position: HashMap::new(),
            exactness,
        }
    }

    fn add(&mut self, value: Value, witness: Term) -> bool {
        if self.position.contains_key(&value) {
            return false;
        }
        self.position.insert(value.clone(), self.values.len());
        self.values.push(value);
        self.witnesses.push(witness);
        true
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn witnesses(&self) -> &[Term] {
        &self.witnesses
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.exactness, Exactness::Exact { .. })
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.position.contains_key(v)
    }

    pub fn position(&self, v: &Value) -> Option<usize> {
        self.position.get(v).copied()
    }

    pub fn witness_of(&self, v: &Value) -> Option<&Term> {
        self.position(v).map(|i| &self.witnesses[i])
    }

    pub fn element(&self, i: usize) -> Element {
        Element::from_parts(self.ty.clone(), self.q, self.values[i].clone())
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn to_json(&self) -> DefSetJson {
        DefSetJson {
            r#type: self.ty.to_string(),
            q: self.q,
            exactness: self.exactness,
            size: self.len(),
            elements: self
                .values
                .iter()
                .zip(&self.witnesses)
                .map(|(v, w)| DefEntryJson {
                    index: v.index(self.q).to_string(),
                    witness: print(w),
                    witness_tree: w.to_json(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefSetJson {
    pub r#type: String,
    pub q: u32,
    pub exactness: Exactness,
    pub size: usize,
    pub elements: Vec<DefEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefEntryJson {
    pub index: String,
    pub witness: String,
    pub witness_tree: serde_json::Value,
}

/// `Def_ty(q)`, exact whenever a certified strategy applies and otherwise
/// the lower bound found by enumerating terms up to `budget` nodes.
pub fn def_set(model: &Model, ty: &Type, budget: usize) -> Result<DefSet> {
    if let Some(ar) = saturate::arities(ty) {
        if let Some(sat) = saturate::saturate(model, ty)? {
            let strategy = if sat.values.is_empty() {
                Strategy::Uninhabited
            } else if ty.church_letters().is_some_and(|n| n > 0) {
                Strategy::ChurchClosure
            } else if ar.iter().all(|&k| k == 0) {
                Strategy::FirstOrder
            } else if model.q() == 1 {
                Strategy::Singleton
            } else {
                Strategy::Saturation
            };
            let mut d = DefSet::new(ty, model.q(), Exactness::Exact { strategy });
            for (v, w) in sat.values.into_iter().zip(sat.witnesses) {
                d.add(v, w);
            }
            return Ok(d);
        }
    }
    match inhabitant(ty) {
        None => Ok(DefSet::new(
            ty,
            model.q(),
            Exactness::Exact {
                strategy: Strategy::Uninhabited,
            },
        )),
        Some(t) if model.q() == 1 => {
            let mut d = DefSet::new(
                ty,
                1,
                Exactness::Exact {
                    strategy: Strategy::Singleton,
                },
            );
            let v = model.eval(&t, &mut Vec::new())?;
            d.add(v, t);
            Ok(d)
        }
        Some(_) => enumerate_def(model, ty, budget),
    }
}

/// Enumeration lower bound: interprets closed long normal forms by
/// increasing size. Never flagged exact.
pub fn enumerate_def(model: &Model, ty: &Type, budget: usize) -> Result<DefSet> {
    let mut forms = NormalForms::new();
    let mut d = DefSet::new(
        ty,
        model.q(),
        Exactness::LowerBound {
            budget,
            searched_up_to: 0,
        },
    );
    let mut idle = 0;
    let mut searched = 0;
    for size in 1..=budget {
        let terms = forms.closed(ty, size);
        searched = size;
        if terms.is_empty() {
            continue;
        }
        let mut grew = false;
        for t in terms.iter() {
            let v = model.eval(t, &mut Vec::new())?;
            grew |= d.add(v, t.clone());
        }
        idle = if grew { 0 } else { idle + 1 };
        if idle >= PATIENCE {
            break;
        }
    }
    d.exactness = Exactness::LowerBound {
        budget,
        searched_up_to: searched,
    };
    Ok(d)
}

/// Exact `Def` of the Church type of `alphabet`; witnesses are Church words.
pub fn church_def_set(model: &Model, alphabet: &Alphabet) -> Result<DefSet> {
    let ty = alphabet.church_type();
    let sat = saturate::saturate(model, &ty)?.ok_or_else(|| Error::TooLarge {
        what: format!("word closure for {ty} over q={}", model.q()),
        entries: "over the saturation limits".into(),
        cap: model.cap(),
    })?;
    let mut d = DefSet::new(
        &ty,
        model.q(),
        Exactness::Exact {
            strategy: Strategy::ChurchClosure,
        },
    );
    for (v, w) in sat.values.into_iter().zip(sat.witnesses) {
        d.add(v, w);
    }
    Ok(d)
}

/// The restriction `p_{q,q'}`: sends each element `⟦M⟧_q` of `def` to
/// `⟦M⟧_{q'}`, using its witness. Images are aligned with `def.values()`.
pub fn restrict(def: &DefSet, target: &Model) -> Result<Vec<Value>> {
    let q2 = target.q();
    if q2 > def.q() {
        return Err(Error::Precondition(format!(
            "restriction needs q >= q', got q={} and q'={q2}",
            def.q()
        )));
    }
    def.witnesses.iter().map(|w| target.eval(w, &mut Vec::new())).collect()
}

/// Whether `witness` is a closed term of type `ty` denoting `value`.
pub fn check_witness(model: &Model, ty: &Type, witness: &Term, value: &Value) -> Result<bool> {
    if typecheck(&[], witness)? != *ty {
        return Ok(false);
    }
    Ok(model.eval(witness, &mut Vec::new())? == *value)
}
