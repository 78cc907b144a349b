//! The finite standard model: `⟦o⟧ = {0..q-1}`, arrows are all
//! set-theoretic functions, products are cartesian products.
//!
//! Points are [`Value`]s (table views). Their exact index is the
//! little-endian mixed-radix number of the table: at `A -> B` the index is
//! `Σ table[x] · |B|^x`, at `A * B` it is `i_A + |A| · i_B`.

mod value;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{typecheck, Term, Type};

pub use value::Value;

/// Default materialization cap: 2^20 table entries.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Largest cardinal (in bits) that sizes are computed for exactly.
const MAX_SIZE_BITS: u64 = 1 << 26;

/// Decimal form of a count, or its order of magnitude when it is long.
pub fn describe_count(n: &BigUint) -> String {
    let s = n.to_string();
    if s.len() <= 24 {
        s
    } else {
        format!("about 10^{}", s.len() - 1)
    }
}

/// Exact cardinality of `⟦ty⟧` over a set of size `q`. Fails only for
/// cardinals too large to write down (over 2^26 bits).
pub fn size_of(ty: &Type, q: u32) -> Result<BigUint> {
    let too_big = || Error::CapExceeded {
        ty: ty.clone(),
        q,
        entries: format!("more than 2^{MAX_SIZE_BITS}"),
        cap: DEFAULT_CAP,
    };
    Ok(match ty {
        Type::Base => BigUint::from(q),
        Type::Unit => BigUint::one(),
        Type::Product(a, b) => size_of(a, q)? * size_of(b, q)?,
        Type::Arrow(a, b) => {
            let base = size_of(b, q)?;
            let exp = size_of(a, q)?;
            if base.is_zero() || base.is_one() {
                base
            } else {
                let e = exp.to_u64().ok_or_else(too_big)?;
                if e.saturating_mul(base.bits()) > MAX_SIZE_BITS {
                    return Err(too_big());
                }
                num_traits::pow(base, e as usize)
            }
        }
    })
}

/// Descriptor of a denotation `⟦ty⟧(q)`; the size is exact and nothing is
/// materialized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Den {
    pub ty: Type,
    pub q: u32,
    pub size: BigUint,
}

pub fn den(ty: &Type, q: u32) -> Result<Den> {
    if q == 0 {
        return Err(Error::Precondition("denotations are over non-empty base sets".into()));
    }
    Ok(Den {
        ty: ty.clone(),
        q,
        size: size_of(ty, q)?,
    })
}

/// Interpreter over one base set `{0..q-1}`.
pub struct Model {
    q: u32,
    cap: u64,
    points: Mutex<HashMap<Type, Arc<Vec<Value>>>>,
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Model")
            .field("q", &self.q)
            .field("cap", &self.cap)
            .finish()
    }
}

impl Model {
    pub fn new(q: u32) -> Model {
        Model::with_cap(q, DEFAULT_CAP)
    }

    pub fn with_cap(q: u32, cap: u64) -> Model {
        assert!(q >= 1, "the base set must be non-empty");
        Model {
            q,
            cap,
            points: Mutex::new(HashMap::new()),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn size(&self, ty: &Type) -> Result<BigUint> {
        size_of(ty, self.q)
    }

    /// `|⟦ty⟧|` as a machine word, provided it is within the cap.
    pub fn checked_size(&self, ty: &Type) -> Result<usize> {
        let size = self.size(ty)?;
        match size.to_u64() {
            Some(s) if s <= self.cap => Ok(s as usize),
            _ => Err(Error::CapExceeded {
                ty: ty.clone(),
                q: self.q,
                entries: describe_count(&size),
                cap: self.cap,
            }),
        }
    }

    /// All points of `⟦ty⟧`, in index order. Cached per type.
    pub fn points(&self, ty: &Type) -> Result<Arc<Vec<Value>>> {
        if let Some(p) = self.points.lock().unwrap().get(ty) {
            return Ok(p.clone());
        }
        let n = self.checked_size(ty)?;
        let pts: Vec<Value> = match ty {
            Type::Base => (0..self.q).map(Value::Base).collect(),
            Type::Unit => vec![Value::Unit],
            Type::Product(a, b) => {
                let pa = self.points(a)?;
                let pb = self.points(b)?;
                let mut out = Vec::with_capacity(n);
                for y in pb.iter() {
                    for x in pa.iter() {
                        out.push(Value::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
            Type::Arrow(a, b) => {
                let len = self.checked_size(a)?;
                let pb = self.points(b)?;
                let mut digits = vec![0usize; len];
                let mut out = Vec::with_capacity(n);
                for _ in 0..n {
                    out.push(Value::fun(digits.iter().map(|&d| pb[d].clone()).collect()));
                    for d in digits.iter_mut() {
                        *d += 1;
                        if *d < pb.len() {
                            break;
                        }
                        *d = 0;
                    }
                }
                out
            }
        };
        let pts = Arc::new(pts);
        self.points.lock().unwrap().insert(ty.clone(), pts.clone());
        Ok(pts)
    }

    /// Table of `x ↦ h(x)` over `⟦dom⟧`.
    pub fn tabulate<F>(&self, dom: &Type, mut h: F) -> Result<Value>
    where
        F: FnMut(&Value) -> Result<Value>,
    {
        let pts = self.points(dom)?;
        let table = pts.iter().map(&mut h).collect::<Result<Vec<_>>>()?;
        Ok(Value::fun(table))
    }

    pub fn apply(&self, f: &Value, x: &Value) -> Value {
        f.at(x.small_index(self.q)).clone()
    }

    /// Diagrammatic composite `x ↦ g(f(x))`; `f` is a table over `⟦dom⟧`.
    pub fn compose(&self, f: &Value, g: &Value) -> Value {
        let table: Vec<Value> = f
            .table()
            .expect("compose expects function values")
            .iter()
            .map(|y| self.apply(g, y))
            .collect();
        Value::fun(table)
    }

    /// Semantic bracket of `term` with the environment `env` (last entry is
    /// index 0). The term is assumed well-typed for the environment.
    pub fn eval(&self, term: &Term, env: &mut Vec<Value>) -> Result<Value> {
        match term {
            Term::Var(i) => Ok(env[env.len() - 1 - i].clone()),
            Term::Unit => Ok(Value::Unit),
            Term::Lam(ty, body) => {
                let pts = self.points(ty)?;
                let mut table = Vec::with_capacity(pts.len());
                for x in pts.iter() {
                    env.push(x.clone());
                    let r = self.eval(body, env);
                    env.pop();
                    table.push(r?);
                }
                Ok(Value::fun(table))
            }
            Term::App(f, a) => {
                let av = self.eval(a, env)?;
                if let Term::Lam(_, body) = &**f {
                    // β-redex: no need to tabulate the abstraction
                    env.push(av);
                    let r = self.eval(body, env);
                    env.pop();
                    return r;
                }
                let fv = self.eval(f, env)?;
                Ok(self.apply(&fv, &av))
            }
            Term::Pair(a, b) => Ok(Value::pair(self.eval(a, env)?, self.eval(b, env)?)),
            Term::Fst(p) => match self.eval(p, env)? {
                Value::Pair(p) => Ok(p.0.clone()),
                _ => unreachable!("projection of a non-pair"),
            },
            Term::Snd(p) => match self.eval(p, env)? {
                Value::Pair(p) => Ok(p.1.clone()),
                _ => unreachable!("projection of a non-pair"),
            },
        }
    }

    /// Interprets a closed term.
    pub fn interpret_closed(&self, term: &Term) -> Result<Element> {
        self.interpret(term, &[])
    }

    /// Interprets a term in an environment of elements, checking that the
    /// environment matches and the term is well-typed in it.
    pub fn interpret(&self, term: &Term, env: &[Element]) -> Result<Element> {
        for e in env {
            if e.q != self.q {
                return Err(Error::Mismatch(format!(
                    "environment element over q={} in a model over q={}",
                    e.q, self.q
                )));
            }
        }
        let ctx: Vec<Type> = env.iter().map(|e| e.ty.clone()).collect();
        let ty = typecheck(&ctx, term)?;
        let mut values: Vec<Value> = env.iter().map(|e| e.value.clone()).collect();
        let value = self.eval(term, &mut values)?;
        Ok(Element { ty, q: self.q, value })
    }

    /// Decodes an exact index into a point of `⟦ty⟧`.
    pub fn decode(&self, ty: &Type, index: &BigUint) -> Result<Value> {
        if *index >= self.size(ty)? {
            return Err(Error::Invalid(format!(
                "index {index} out of range for {ty} over q={}",
                self.q
            )));
        }
        self.decode_unchecked(ty, index.clone())
    }

    fn decode_unchecked(&self, ty: &Type, index: BigUint) -> Result<Value> {
        Ok(match ty {
            Type::Base => Value::Base(index.to_u32().unwrap()),
            Type::Unit => Value::Unit,
            Type::Product(a, b) => {
                let sa = self.size(a)?;
                let ib = &index / &sa;
                let ia = index % &sa;
                Value::pair(self.decode_unchecked(a, ia)?, self.decode_unchecked(b, ib)?)
            }
            Type::Arrow(a, b) => {
                let len = self.checked_size(a)?;
                let sb = self.size(b)?;
                let mut rest = index;
                let mut table = Vec::with_capacity(len);
                for _ in 0..len {
                    let digit = &rest % &sb;
                    rest /= &sb;
                    table.push(self.decode_unchecked(b, digit)?);
                }
                Value::fun(table)
            }
        })
    }

    /// Whether `v` is a point of `⟦ty⟧` in this model.
    pub fn conforms(&self, ty: &Type, v: &Value) -> bool {
        match (ty, v) {
            (Type::Base, Value::Base(x)) => *x < self.q,
            (Type::Unit, Value::Unit) => true,
            (Type::Product(a, b), Value::Pair(p)) => self.conforms(a, &p.0) && self.conforms(b, &p.1),
            (Type::Arrow(a, b), Value::Fun(t)) => {
                matches!(self.size(a).ok().and_then(|s| s.to_usize()), Some(n) if n == t.len())
                    && t.iter().all(|x| self.conforms(b, x))
            }
            _ => false,
        }
    }

    pub fn element(&self, ty: &Type, value: Value) -> Result<Element> {
        if !self.conforms(ty, &value) {
            return Err(Error::Mismatch(format!(
                "value is not a point of {ty} over q={}",
                self.q
            )));
        }
        Ok(Element {
            ty: ty.clone(),
            q: self.q,
            value,
        })
    }

    pub fn element_from_index(&self, ty: &Type, index: &BigUint) -> Result<Element> {
        Ok(Element {
            ty: ty.clone(),
            q: self.q,
            value: self.decode(ty, index)?,
        })
    }

    /// `apply(g, x)` on typed elements.
    pub fn apply_element(&self, g: &Element, x: &Element) -> Result<Element> {
        let (dom, cod) =
            g.ty.as_arrow()
                .ok_or_else(|| Error::Mismatch(format!("{} is not a function type", g.ty)))?;
        if *dom != x.ty || g.q != self.q || x.q != self.q {
            return Err(Error::Mismatch(format!(
                "cannot apply an element of {} over q={} to an element of {} over q={}",
                g.ty, g.q, x.ty, x.q
            )));
        }
        Ok(Element {
            ty: cod.clone(),
            q: self.q,
            value: self.apply(&g.value, &x.value),
        })
    }

    /// Tabulates a function on typed elements into an element of `dom -> cod`.
    pub fn tabulate_element<F>(&self, dom: &Type, cod: &Type, mut h: F) -> Result<Element>
    where
        F: FnMut(&Element) -> Result<Element>,
    {
        let value = self.tabulate(dom, |x| {
            let out = h(&Element {
                ty: dom.clone(),
                q: self.q,
                value: x.clone(),
            })?;
            if out.ty != *cod || out.q != self.q {
                return Err(Error::Mismatch(format!(
                    "tabulated function returned an element of {} instead of {cod}",
                    out.ty
                )));
            }
            Ok(out.value)
        })?;
        Ok(Element {
            ty: Type::arrow(dom.clone(), cod.clone()),
            q: self.q,
            value,
        })
    }

    /// Diagrammatic composite of `f : A -> B` and `g : B -> C`.
    pub fn compose_elements(&self, f: &Element, g: &Element) -> Result<Element> {
        let (a, b) =
            f.ty.as_arrow()
                .ok_or_else(|| Error::Mismatch(format!("{} is not a function type", f.ty)))?;
        let (b2, c) =
            g.ty.as_arrow()
                .ok_or_else(|| Error::Mismatch(format!("{} is not a function type", g.ty)))?;
        if b != b2 || f.q != g.q || f.q != self.q {
            return Err(Error::Mismatch(format!(
                "cannot compose {} (q={}) with {} (q={})",
                f.ty, f.q, g.ty, g.q
            )));
        }
        self.checked_size(a)?;
        Ok(Element {
            ty: Type::arrow(a.clone(), c.clone()),
            q: self.q,
            value: self.compose(&f.value, &g.value),
        })
    }
}

/// A typed point of a denotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ty: Type,
    q: u32,
    value: Value,
}

impl Element {
    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn den(&self) -> Den {
        den(&self.ty, self.q).expect("an element witnesses a representable denotation")
    }

    pub fn index(&self) -> BigUint {
        self.value.index(self.q)
    }

    /// Entries of the function table, for arrow types.
    pub fn table(&self) -> Option<Vec<Element>> {
        let (_, cod) = self.ty.as_arrow()?;
        Some(
            self.value
                .table()?
                .iter()
                .map(|v| Element {
                    ty: cod.clone(),
                    q: self.q,
                    value: v.clone(),
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            ty: self.ty.to_string(),
            q: self.q,
            index: self.index().to_string(),
        }
    }

    /// Function table as a JSON array of decimal entry indices.
    pub fn table_json(&self) -> Option<serde_json::Value> {
        let entries = self.table()?;
        Some(serde_json::Value::Array(
            entries
                .iter()
                .map(|e| serde_json::Value::String(e.index().to_string()))
                .collect(),
        ))
    }

    pub(crate) fn from_parts(ty: Type, q: u32, value: Value) -> Element {
        Element { ty, q, value }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} : {} over q={}", self.index(), self.ty, self.q)
    }
}

/// Serialized form of an [`Element`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub q: u32,
    pub index: String,
}

impl ElementJson {
    pub fn decode(&self, cap: u64) -> Result<Element> {
        let ty = crate::syntax::parse_type(&self.ty)?;
        let index: BigUint = self
            .index
            .parse()
            .map_err(|_| Error::Invalid(format!("bad index `{}`", self.index)))?;
        Model::with_cap(self.q, cap).element_from_index(&ty, &index)
    }
}
