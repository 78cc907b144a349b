//! Deterministic automata and the Church encoding: a DFA over `[q]` is an
//! argument tuple for Church functionals, and its language is the preimage
//! of the final states under evaluation.

mod monoid;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Model, Value};
use crate::reglang::{AcceptSet, RegLanguage};
use crate::syntax::{church_term, Alphabet, Word};

pub use monoid::{proword_level_of_approximant, transition_monoid, MonoidJson, MonoidPresentation};

/// `(Σ, [q], δ, q0, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    q: u32,
    delta: Vec<Vec<u32>>,
    q0: u32,
    accepting: BTreeSet<u32>,
}

impl Dfa {
    /// `delta[i]` is the transition table of letter `i`.
    pub fn new(alphabet: Alphabet, q: u32, delta: Vec<Vec<u32>>, q0: u32, accepting: BTreeSet<u32>) -> Result<Dfa> {
        if q == 0 {
            return Err(Error::Invalid("a DFA needs at least one state".into()));
        }
        if delta.len() != alphabet.len() {
            return Err(Error::Invalid(format!(
                "{} transition tables for {} letters",
                delta.len(),
                alphabet.len()
            )));
        }
        for (l, t) in alphabet.letters().iter().zip(&delta) {
            if t.len() != q as usize || t.iter().any(|&s| s >= q) {
                return Err(Error::Invalid(format!(
                    "transition table of `{l}` is not a map [{q}] -> [{q}]"
                )));
            }
        }
        if q0 >= q {
            return Err(Error::Invalid(format!("initial state {q0} is not below {q}")));
        }
        if let Some(s) = accepting.iter().find(|&&s| s >= q) {
            return Err(Error::Invalid(format!("final state {s} is not below {q}")));
        }
        Ok(Dfa {
            alphabet,
            q,
            delta,
            q0,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn delta(&self) -> &[Vec<u32>] {
        &self.delta
    }

    pub fn initial(&self) -> u32 {
        self.q0
    }

    pub fn accepting(&self) -> &BTreeSet<u32> {
        &self.accepting
    }

    pub fn is_final(&self, s: u32) -> bool {
        self.accepting.contains(&s)
    }

    /// Same automaton with another initial state and final states.
    pub fn with_endpoints(&self, q0: u32, accepting: BTreeSet<u32>) -> Result<Dfa> {
        Dfa::new(self.alphabet.clone(), self.q, self.delta.clone(), q0, accepting)
    }

    /// `δ_w(q0)`, reading `w` left to right.
    pub fn run(&self, w: &Word) -> Result<u32> {
        self.run_from(self.q0, w)
    }

    pub fn run_from(&self, start: u32, w: &Word) -> Result<u32> {
        w.0.iter().try_fold(start, |s, &l| {
            self.delta
                .get(l)
                .map(|t| t[s as usize])
                .ok_or_else(|| Error::UnknownLetter(format!("#{l}")))
        })
    }

    pub fn run_str(&self, w: &str) -> Result<u32> {
        self.run(&self.alphabet.parse_word(w)?)
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        Ok(self.is_final(self.run(w)?))
    }

    /// The letter actions as points of `⟦o -> o⟧(q)`.
    pub fn letter_values(&self) -> Vec<Value> {
        self.delta.iter().map(|t| Value::from_base_table(t)).collect()
    }

    /// `F(δ_a1, ..., δ_an)(q0)` for a point `F` of the Church type over `[q]`.
    pub fn eval_church(&self, model: &Model, f: &Value) -> Result<u32> {
        self.check_model(model)?;
        let mut v = f;
        for a in self.letter_values() {
            v = v
                .table()
                .ok_or_else(|| Error::Mismatch("expected a Church functional".into()))?
                .get(a.small_index(self.q))
                .ok_or_else(|| Error::Mismatch("Church functional over another set".into()))?;
        }
        v.table()
            .and_then(|t| t.get(self.q0 as usize))
            .and_then(Value::as_base)
            .ok_or_else(|| Error::Mismatch("expected a Church functional".into()))
    }

    /// The language `{M : ⟦M⟧(δ)(q0) ∈ F}` at the Church type over `[q]`.
    pub fn language(&self, cap: u64) -> RegLanguage {
        let mut args = self.letter_values();
        args.push(Value::Base(self.q0));
        let accept: HashSet<Value> = self.accepting.iter().map(|&s| Value::Base(s)).collect();
        RegLanguage::new(
            &self.alphabet.church_type(),
            Arc::new(Model::with_cap(self.q, cap)),
            AcceptSet::Evaluation {
                args,
                accept: Arc::new(accept),
            },
        )
    }

    pub fn to_json(&self) -> DfaJson {
        DfaJson {
            alphabet: self.alphabet.letters().to_vec(),
            q: self.q,
            delta: self
                .alphabet
                .letters()
                .iter()
                .cloned()
                .zip(self.delta.iter().cloned())
                .collect(),
            q0: self.q0,
            r#final: self.accepting.iter().copied().collect(),
        }
    }

    fn check_model(&self, model: &Model) -> Result<()> {
        if model.q() != self.q {
            return Err(Error::Mismatch(format!(
                "DFA over [{}] evaluated in the model over [{}]",
                self.q,
                model.q()
            )));
        }
        Ok(())
    }
}

/// Wire format: `{alphabet, q, delta: {letter: [targets]}, q0, final}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub q: u32,
    pub delta: BTreeMap<String, Vec<u32>>,
    pub q0: u32,
    pub r#final: Vec<u32>,
}

impl DfaJson {
    pub fn decode(&self) -> Result<Dfa> {
        let alphabet = Alphabet::new(self.alphabet.clone())?;
        if let Some(l) = self.delta.keys().find(|l| alphabet.index_of(l).is_none()) {
            return Err(Error::UnknownLetter(l.clone()));
        }
        let delta = alphabet
            .letters()
            .iter()
            .map(|l| {
                self.delta
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("no transitions for `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(alphabet, self.q, delta, self.q0, self.r#final.iter().copied().collect())
    }
}

/// `(δ_a1, ..., δ_an, q0)` for every automaton structure on `[q]` with `n`
/// letters, in lexicographic order of the tables.
pub fn all_structures(letters: usize, q: u32) -> impl Iterator<Item = (Vec<Vec<u32>>, u32)> {
    let cells = letters * q as usize;
    let total = (q as u64).pow(cells as u32) * q as u64;
    (0..total).map(move |mut code| {
        let q0 = (code % q as u64) as u32;
        code /= q as u64;
        let delta = (0..letters)
            .map(|_| {
                (0..q)
                    .map(|_| {
                        let s = (code % q as u64) as u32;
                        code /= q as u64;
                        s
                    })
                    .collect()
            })
            .collect();
        (delta, q0)
    })
}

/// The word language `{w : ⟦w⟧_q ∈ accepting}` for a set of points of the
/// Church type over `[q]`.
#[derive(Clone, Debug)]
pub struct WordLanguage {
    alphabet: Alphabet,
    model: Arc<Model>,
    accepting: Vec<Value>,
    lookup: HashSet<Value>,
}

impl WordLanguage {
    pub fn new(alphabet: &Alphabet, model: Arc<Model>, accepting: Vec<Value>) -> Result<WordLanguage> {
        let ty = alphabet.church_type();
        if let Some(bad) = accepting.iter().find(|v| !model.conforms(&ty, v)) {
            return Err(Error::Mismatch(format!(
                "{bad:?} is not a point of {ty} over [{}]",
                model.q()
            )));
        }
        Ok(WordLanguage {
            alphabet: alphabet.clone(),
            lookup: accepting.iter().cloned().collect(),
            accepting,
            model,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> u32 {
        self.model.q()
    }

    /// `⟦w⟧_q ∈ accepting`.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        let t = church_term(w, self.alphabet.len())?;
        Ok(self.lookup.contains(&self.model.eval(&t, &mut Vec::new())?))
    }

    /// The same decision through automata: `w` is accepted iff for some
    /// accepted `F`, `w` lies in every DFA language `(δ, q0, {F(δ)(q0)})`.
    pub fn contains_via_automata(&self, w: &Word) -> Result<bool> {
        let n = self.alphabet.len();
        let q = self.model.q();
        for f in &self.accepting {
            let mut all = true;
            for (delta, q0) in all_structures(n, q) {
                let d = Dfa::new(self.alphabet.clone(), q, delta, q0, BTreeSet::new())?;
                let target = d.eval_church(&self.model, f)?;
                if d.run(w)? != target {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
