//! Truncated profinite λ-terms: families `θ_q ∈ Def_A([q])` for
//! `q = 1..k`, with naturality and parametricity checks, composition, and
//! the idempotent-power operator.

mod omega;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::definability::{def_set, DefSet};
use crate::error::{Error, Result};
use crate::model::{Model, Value, DEFAULT_CAP};
use crate::relations::{LiftedSurjection, LogicalRelation, PartialSurjection, Relation};
use crate::syntax::{normalize, parse_closed, print, typecheck, Term, Type};

pub use omega::{idempotent_power, omega_element, word_omega_value};

/// Default number of sampled relations per level pair.
pub const DEFAULT_SAMPLES: usize = 512;

/// The models `[1], ..., [k]`, shared between approximants.
#[derive(Clone, Debug)]
pub struct Levels {
    models: Arc<Vec<Arc<Model>>>,
}

impl Levels {
    pub fn new(k: u32, cap: u64) -> Levels {
        Levels {
            models: Arc::new((1..=k).map(|q| Arc::new(Model::with_cap(q, cap))).collect()),
        }
    }

    pub fn k(&self) -> u32 {
        self.models.len() as u32
    }

    pub fn cap(&self) -> u64 {
        self.models.first().map_or(DEFAULT_CAP, |m| m.cap())
    }

    /// The model over `[q]`, `1 <= q <= k`.
    pub fn at(&self, q: u32) -> &Arc<Model> {
        &self.models[q as usize - 1]
    }
}

/// Why a component is believed to be definable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A closed term denoting the component.
    Witness(Term),
    /// No witness is known; the component is checked for naturality only.
    Deferred,
}

#[derive(Clone, Debug)]
pub struct Approximant {
    ty: Type,
    levels: Levels,
    components: Vec<Value>,
    evidence: Vec<Evidence>,
    natural: bool,
}

impl PartialEq for Approximant {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.components == other.components
    }
}

/// A witness for `v` from `Def_ty(q)`, or `NotDefinable`.
fn find_witness(model: &Model, ty: &Type, v: &Value, budget: usize) -> Result<Term> {
    let def = def_set(model, ty, budget)?;
    match def.witness_of(v) {
        Some(w) => Ok(w.clone()),
        None => Err(Error::NotDefinable {
            q: model.q(),
            reason: if def.is_exact() {
                format!("the component is not among the {} definable elements", def.len())
            } else {
                format!("no witness among closed terms ({})", def.exactness())
            },
        }),
    }
}

impl Approximant {
    /// Builds a family from its components, finding a witness for each one
    /// in `Def`. Fails if some component has no witness.
    pub fn new(ty: &Type, levels: &Levels, components: Vec<Value>, budget: usize) -> Result<Approximant> {
        check_components(ty, levels, &components)?;
        let mut evidence = Vec::with_capacity(components.len());
        for (i, v) in components.iter().enumerate() {
            let q = i as u32 + 1;
            evidence.push(Evidence::Witness(find_witness(levels.at(q), ty, v, budget)?));
        }
        Ok(Approximant {
            ty: ty.clone(),
            levels: levels.clone(),
            components,
            evidence,
            natural: false,
        })
    }

    /// Builds a family with explicit evidence; witnesses are checked.
    pub fn with_evidence(
        ty: &Type,
        levels: &Levels,
        components: Vec<Value>,
        evidence: Vec<Evidence>,
    ) -> Result<Approximant> {
        check_components(ty, levels, &components)?;
        if evidence.len() != components.len() {
            return Err(Error::Mismatch("one piece of evidence per component".into()));
        }
        for (i, (v, e)) in components.iter().zip(&evidence).enumerate() {
            if let Evidence::Witness(w) = e {
                let q = i as u32 + 1;
                if typecheck(&[], w)? != *ty || levels.at(q).eval(w, &mut Vec::new())? != *v {
                    return Err(Error::NotDefinable {
                        q,
                        reason: format!("`{}` does not denote the component", print(w)),
                    });
                }
            }
        }
        Ok(Approximant {
            ty: ty.clone(),
            levels: levels.clone(),
            components,
            evidence,
            natural: false,
        })
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn k(&self) -> u32 {
        self.components.len() as u32
    }

    pub fn levels(&self) -> &Levels {
        &self.levels
    }

    /// `θ_q`.
    pub fn component(&self, q: u32) -> &Value {
        &self.components[q as usize - 1]
    }

    pub fn components(&self) -> &[Value] {
        &self.components
    }

    pub fn evidence(&self) -> &[Evidence] {
        &self.evidence
    }

    /// Set only by [`Approximant::certify_natural`].
    pub fn is_checked_natural(&self) -> bool {
        self.natural
    }

    /// Runs [`check_natural`] and records a positive outcome.
    pub fn certify_natural(&mut self) -> Result<NaturalityCheck> {
        let c = check_natural(self)?;
        self.natural = c.holds();
        Ok(c)
    }

    pub fn to_json(&self) -> ApproximantJson {
        let mut components = BTreeMap::new();
        let mut evidence = BTreeMap::new();
        for (i, (v, e)) in self.components.iter().zip(&self.evidence).enumerate() {
            let q = (i + 1).to_string();
            components.insert(q.clone(), v.index(i as u32 + 1).to_string());
            evidence.insert(
                q,
                match e {
                    Evidence::Witness(w) => EvidenceJson::Witness(print(w)),
                    Evidence::Deferred => EvidenceJson::Deferred,
                },
            );
        }
        ApproximantJson {
            r#type: self.ty.to_string(),
            k: self.k(),
            components,
            witnesses: evidence,
        }
    }
}

fn check_components(ty: &Type, levels: &Levels, components: &[Value]) -> Result<()> {
    if components.is_empty() || components.len() > levels.k() as usize {
        return Err(Error::Precondition(format!(
            "need between 1 and {} components, got {}",
            levels.k(),
            components.len()
        )));
    }
    for (i, v) in components.iter().enumerate() {
        let m = levels.at(i as u32 + 1);
        if !m.conforms(ty, v) {
            return Err(Error::Mismatch(format!(
                "component {} is not a point of {ty} over q={}",
                i + 1,
                m.q()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceJson {
    Witness(String),
    Deferred,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximantJson {
    pub r#type: String,
    pub k: u32,
    pub components: BTreeMap<String, String>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, EvidenceJson>,
}

impl ApproximantJson {
    /// Decodes components; a missing witness is searched for in `Def`.
    pub fn decode(&self, levels: &Levels, budget: usize) -> Result<Approximant> {
        let ty = crate::syntax::parse_type(&self.r#type)?;
        if self.k == 0 || self.k > levels.k() {
            return Err(Error::Precondition(format!(
                "cutoff {} outside 1..={}",
                self.k,
                levels.k()
            )));
        }
        let mut components = Vec::new();
        let mut evidence = Vec::new();
        for q in 1..=self.k {
            let key = q.to_string();
            let idx = self
                .components
                .get(&key)
                .ok_or_else(|| Error::Invalid(format!("missing component {q}")))?;
            let idx = idx.parse().map_err(|_| Error::Invalid(format!("bad index {idx:?}")))?;
            let v = levels.at(q).decode(&ty, &idx)?;
            let e = match self.witnesses.get(&key) {
                Some(EvidenceJson::Witness(src)) => Evidence::Witness(parse_closed(src)?.0),
                Some(EvidenceJson::Deferred) => Evidence::Deferred,
                None => Evidence::Witness(find_witness(levels.at(q), &ty, &v, budget)?),
            };
            components.push(v);
            evidence.push(e);
        }
        Approximant::with_evidence(&ty, levels, components, evidence)
    }
}

/// `ι(M)`: the interpretations of a closed term at every level.
pub fn iota(term: &Term, levels: &Levels) -> Result<Approximant> {
    let ty = typecheck(&[], term)?;
    let components = (1..=levels.k())
        .map(|q| levels.at(q).eval(term, &mut Vec::new()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Approximant {
        ty,
        levels: levels.clone(),
        evidence: vec![Evidence::Witness(term.clone()); components.len()],
        components,
        natural: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub q: u32,
    pub q_prime: u32,
    pub f: PartialSurjection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityCheck {
    /// Number of `(q, q', f)` triples checked.
    pub checked: usize,
    pub counterexample: Option<NaturalityFailure>,
}

impl NaturalityCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether `⟦A⟧(f)(θ_q) = θ_{q'}` for all `q >= q'` and every partial
/// surjection `f : [q] -> [q']`. Stops at the first failure.
pub fn check_natural(theta: &Approximant) -> Result<NaturalityCheck> {
    let mut checked = 0;
    for q in 1..=theta.k() {
        for q2 in 1..=q {
            let (m, m2) = (theta.levels.at(q), theta.levels.at(q2));
            for f in PartialSurjection::all(q as usize, q2 as usize) {
                checked += 1;
                let mut lift = LiftedSurjection::new(f.clone(), m, m2)?;
                if lift.apply(&theta.ty, theta.component(q))?.as_ref() != Some(theta.component(q2)) {
                    return Ok(NaturalityCheck {
                        checked,
                        counterexample: Some(NaturalityFailure { q, q_prime: q2, f }),
                    });
                }
            }
        }
    }
    Ok(NaturalityCheck {
        checked,
        counterexample: None,
    })
}

/// How many relations to test per pair of levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricityFailure {
    pub q: u32,
    pub q_prime: u32,
    pub relation: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricityCheck {
    pub checked: usize,
    /// Whether every relation was tested at every pair of levels.
    pub exhaustive: bool,
    pub counterexample: Option<ParametricityFailure>,
}

impl ParametricityCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether `(θ_q, θ_{q'}) ∈ ⟦A⟧(R)` for all levels and relations `R`.
/// A pair of levels is exhaustive when it has at most `samples` relations,
/// otherwise `samples` relations are drawn from a generator seeded once.
pub fn check_parametric(theta: &Approximant, sampling: Sampling) -> Result<ParametricityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut checked = 0;
    let mut exhaustive = true;
    for q in 1..=theta.k() {
        for q2 in 1..=theta.k() {
            let (m, m2) = (theta.levels.at(q), theta.levels.at(q2));
            let cells = q * q2;
            let all = cells < 63 && (1u64 << cells) <= sampling.samples as u64;
            let relations: Vec<Relation> = if all {
                Relation::all(q as usize, q2 as usize).collect()
            } else {
                exhaustive = false;
                (0..sampling.samples)
                    .map(|_| Relation::random(q as usize, q2 as usize, &mut rng))
                    .collect()
            };
            for r in relations {
                checked += 1;
                let mut lr = LogicalRelation::new(r.clone(), m, m2)?;
                if !lr.member(&theta.ty, theta.component(q), theta.component(q2))? {
                    return Ok(ParametricityCheck {
                        checked,
                        exhaustive,
                        counterexample: Some(ParametricityFailure {
                            q,
                            q_prime: q2,
                            relation: r,
                        }),
                    });
                }
            }
        }
    }
    Ok(ParametricityCheck {
        checked,
        exhaustive,
        counterexample: None,
    })
}

fn same_levels(a: &Approximant, b: &Approximant) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::Mismatch(format!("cutoffs {} and {}", a.k(), b.k())));
    }
    Ok(())
}

/// Diagrammatic composite of `θ : A -> B` and `σ : B -> C`.
pub fn compose(theta: &Approximant, sigma: &Approximant) -> Result<Approximant> {
    same_levels(theta, sigma)?;
    let (a, b) = theta
        .ty
        .as_arrow()
        .ok_or_else(|| Error::Mismatch(format!("{} is not a function type", theta.ty)))?;
    let (b2, c) = sigma
        .ty
        .as_arrow()
        .ok_or_else(|| Error::Mismatch(format!("{} is not a function type", sigma.ty)))?;
    if b != b2 {
        return Err(Error::Mismatch(format!(
            "cannot compose {} with {}",
            theta.ty, sigma.ty
        )));
    }
    let mut components = Vec::new();
    let mut evidence = Vec::new();
    for q in 1..=theta.k() {
        let m = theta.levels.at(q);
        m.checked_size(a)?;
        components.push(m.compose(theta.component(q), sigma.component(q)));
        let i = q as usize - 1;
        evidence.push(match (&theta.evidence[i], &sigma.evidence[i]) {
            (Evidence::Witness(f), Evidence::Witness(g)) => {
                Evidence::Witness(normalize(&Term::compose(f, g, a.clone()))?)
            }
            _ => Evidence::Deferred,
        });
    }
    Ok(Approximant {
        ty: Type::arrow(a.clone(), c.clone()),
        levels: theta.levels.clone(),
        components,
        evidence,
        natural: false,
    })
}

/// `(⟦M⟧_q θ1_q ... θn_q)_q` for a closed term `M : A1 -> ... -> An -> B`.
pub fn apply_term(term: &Term, args: &[&Approximant], levels: &Levels) -> Result<Approximant> {
    let mut ty = typecheck(&[], term)?;
    for a in args {
        if a.k() != levels.k() {
            return Err(Error::Mismatch(format!("cutoffs {} and {}", a.k(), levels.k())));
        }
        let (dom, cod) = match ty.as_arrow() {
            Some((d, c)) => (d.clone(), c.clone()),
            None => return Err(Error::Mismatch(format!("too many arguments for {ty}"))),
        };
        if dom != a.ty {
            return Err(Error::Mismatch(format!(
                "argument of type {} where {dom} is expected",
                a.ty
            )));
        }
        ty = cod;
    }
    // η-long normal form has a binder per argument; bind them directly so
    // the term itself is never tabulated
    let mut body = normalize(term)?;
    for _ in args {
        body = match body {
            Term::Lam(_, b) => *b,
            _ => unreachable!("normal form of an arrow type is an abstraction"),
        };
    }
    let mut components = Vec::new();
    let mut evidence = Vec::new();
    for q in 1..=levels.k() {
        let m = levels.at(q);
        let mut env: Vec<Value> = args.iter().map(|a| a.component(q).clone()).collect();
        components.push(m.eval(&body, &mut env)?);
        let mut wit = Some(term.clone());
        for a in args {
            wit = match (wit, &a.evidence[q as usize - 1]) {
                (Some(t), Evidence::Witness(w)) => Some(Term::app(t, w.clone())),
                _ => None,
            };
        }
        evidence.push(match wit {
            Some(t) => Evidence::Witness(normalize(&t)?),
            None => Evidence::Deferred,
        });
    }
    Ok(Approximant {
        ty,
        levels: levels.clone(),
        components,
        evidence,
        natural: false,
    })
}

/// `apply_term` with a single argument.
pub fn apply_term_to_approximant(term: &Term, theta: &Approximant) -> Result<Approximant> {
    apply_term(term, &[theta], &theta.levels)
}

/// `Ω_A` at every level: `f ↦ ω(f)` on `⟦A -> A⟧(q)`.
pub fn omega_approximant(ty: &Type, levels: &Levels) -> Result<Approximant> {
    let endo = Type::arrow(ty.clone(), ty.clone());
    let mut components = Vec::new();
    for q in 1..=levels.k() {
        let m = levels.at(q);
        components.push(m.tabulate(&endo, |f| omega_element(m, ty, f))?);
    }
    Ok(Approximant {
        ty: Type::arrow(endo.clone(), endo),
        levels: levels.clone(),
        evidence: vec![Evidence::Deferred; components.len()],
        components,
        natural: false,
    })
}

/// `Ω_A θ` for `θ` at `A -> A`, computed componentwise.
pub fn apply_omega(theta: &Approximant) -> Result<Approximant> {
    let (a, b) = theta
        .ty
        .as_arrow()
        .filter(|(a, b)| a == b)
        .ok_or_else(|| Error::Mismatch(format!("{} is not an endomorphism type", theta.ty)))?;
    debug_assert_eq!(a, b);
    let components = (1..=theta.k())
        .map(|q| omega_element(theta.levels.at(q), a, theta.component(q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Approximant {
        ty: theta.ty.clone(),
        levels: theta.levels.clone(),
        evidence: vec![Evidence::Deferred; components.len()],
        components,
        natural: false,
    })
}

/// The ω-power of a profinite word: `λu.λf1..fn. Ω_o (u f1 .. fn)`.
pub fn word_omega(theta: &Approximant) -> Result<Approximant> {
    let n = theta
        .ty
        .church_letters()
        .ok_or_else(|| Error::Mismatch(format!("{} is not a Church type", theta.ty)))?;
    let components = (1..=theta.k())
        .map(|q| word_omega_value(theta.levels.at(q), n, theta.component(q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Approximant {
        ty: theta.ty.clone(),
        levels: theta.levels.clone(),
        evidence: vec![Evidence::Deferred; components.len()],
        components,
        natural: false,
    })
}

/// `\u v f1 .. fn c. v f1 .. fn (u f1 .. fn c)`: concatenation of Church
/// words, `u` first.
pub fn church_concat_term(letters: usize) -> Term {
    let church = Type::church(letters);
    // binders u, v, f1..fn, c: c is 0, f(i+1) is n - i, v is n + 1, u is n + 2
    let f = |i: usize| Term::var(letters - i);
    let u = Term::var(letters + 2);
    let v = Term::var(letters + 1);
    let inner = Term::apps(u, (0..letters).map(f).chain([Term::var(0)]));
    let body = Term::apps(v, (0..letters).map(f).chain([inner]));
    let mut t = Term::lam(Type::Base, body);
    for _ in 0..letters {
        t = Term::lam(Type::endo(), t);
    }
    Term::lam(church.clone(), Term::lam(church, t))
}

/// `M ≅_q N`: equal interpretations over `[q]`.
pub fn congruent(model: &Model, m: &Term, n: &Term) -> Result<bool> {
    let (tm, tn) = (typecheck(&[], m)?, typecheck(&[], n)?);
    if tm != tn {
        return Err(Error::Mismatch(format!("terms of types {tm} and {tn}")));
    }
    Ok(model.eval(m, &mut Vec::new())? == model.eval(n, &mut Vec::new())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// The least `q` whose interpretations differ.
    Separated { q: u32 },
    /// Equal interpretations at every `q <= max_q`.
    NotSeparated { max_q: u32 },
}

/// Searches `q = 1..=max_q` for a level distinguishing `m` and `n`.
pub fn separate(m: &Term, n: &Term, max_q: u32, cap: u64) -> Result<Separation> {
    for q in 1..=max_q {
        if !congruent(&Model::with_cap(q, cap), m, n)? {
            return Ok(Separation::Separated { q });
        }
    }
    Ok(Separation::NotSeparated { max_q })
}

/// Every family `(θ_1, .., θ_k)` with `θ_q ∈ Def_A([q])`; the sets must
/// be exact. Families are listed in lexicographic order of positions.
pub fn definable_families(ty: &Type, levels: &Levels, budget: usize) -> Result<Vec<Approximant>> {
    let defs: Vec<DefSet> = (1..=levels.k())
        .map(|q| def_set(levels.at(q), ty, budget))
        .collect::<Result<_>>()?;
    if let Some(d) = defs.iter().find(|d| !d.is_exact()) {
        return Err(Error::Precondition(format!(
            "definable set at q={} is only a {}",
            d.q(),
            d.exactness()
        )));
    }
    let mut out = Vec::new();
    let mut pos = vec![0usize; defs.len()];
    if defs.iter().any(DefSet::is_empty) {
        return Ok(out);
    }
    loop {
        let components = pos.iter().zip(&defs).map(|(&i, d)| d.values()[i].clone()).collect();
        let evidence = pos
            .iter()
            .zip(&defs)
            .map(|(&i, d)| Evidence::Witness(d.witnesses()[i].clone()))
            .collect();
        out.push(Approximant {
            ty: ty.clone(),
            levels: levels.clone(),
            components,
            evidence,
            natural: false,
        });
        let mut j = defs.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < defs[j].len() {
                break;
            }
            pos[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests;
