use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};
use crate::model::Value;
use crate::profinite::{idempotent_power, Approximant};
use crate::syntax::{Type, Word};

/// A finite monoid of transformations of `[q]`, generated by one
/// transformation per letter. `mult[i][j]` is "`i` then `j`", so the word
/// map `w ↦ h(w)` is a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    q: u32,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    unit: usize,
    generators: Vec<usize>,
    mult: Vec<Vec<usize>>,
}

fn then(f: &[u32], g: &[u32]) -> Vec<u32> {
    f.iter().map(|&x| g[x as usize]).collect()
}

impl MonoidPresentation {
    /// Closure of `{id} ∪ generators` under composition, in breadth-first
    /// order from the unit.
    pub fn generated(q: u32, generators: &[Vec<u32>]) -> Result<MonoidPresentation> {
        if let Some(g) = generators
            .iter()
            .find(|g| g.len() != q as usize || g.iter().any(|&x| x >= q))
        {
            return Err(Error::Invalid(format!("{g:?} is not a map [{q}] -> [{q}]")));
        }
        let id: Vec<u32> = (0..q).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let t = then(&elements[i], g);
                if !index.contains_key(&t) {
                    index.insert(t.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(t);
                }
            }
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        Ok(MonoidPresentation::assemble(q, elements, index, 0, gens))
    }

    /// Right-regular representation of an abstract monoid: element `g` acts
    /// on `[m]` by `x ↦ x·g`. `mult[i][j]` is the product `i·j`.
    pub fn cayley(mult: &[Vec<usize>], generators: &[usize]) -> Result<MonoidPresentation> {
        let m = mult.len();
        if m == 0 || mult.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
            return Err(Error::Invalid("multiplication table is not a map M x M -> M".into()));
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= m) {
            return Err(Error::Invalid(format!("generator {g} is not an element")));
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let unit = (0..m)
            .find(|&e| (0..m).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or_else(|| Error::Invalid("no unit".into()))?;
        let q = m as u32;
        let elements: Vec<Vec<u32>> = (0..m).map(|g| (0..m).map(|x| mult[x][g] as u32).collect()).collect();
        let index: HashMap<Vec<u32>, usize> = elements.iter().cloned().zip(0..).collect();
        let closure =
            MonoidPresentation::generated(q, &generators.iter().map(|&g| elements[g].clone()).collect::<Vec<_>>())?;
        if closure.len() != m {
            return Err(Error::Invalid(format!(
                "generators span {} of {m} elements",
                closure.len()
            )));
        }
        Ok(MonoidPresentation::assemble(
            q,
            elements,
            index,
            unit,
            generators.to_vec(),
        ))
    }

    fn assemble(
        q: u32,
        elements: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, usize>,
        unit: usize,
        generators: Vec<usize>,
    ) -> MonoidPresentation {
        let mult = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&then(a, b)]).collect())
            .collect();
        MonoidPresentation {
            q,
            elements,
            index,
            unit,
            generators,
            mult,
        }
    }

    /// Size of the underlying set the elements act on.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn index_of(&self, table: &[u32]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// `h(w)`.
    pub fn image(&self, w: &Word) -> Result<usize> {
        w.0.iter().try_fold(self.unit, |acc, &l| {
            self.generators
                .get(l)
                .map(|&g| self.mult[acc][g])
                .ok_or_else(|| Error::UnknownLetter(format!("#{l}")))
        })
    }

    /// The idempotent power of element `i`.
    pub fn omega(&self, i: usize) -> usize {
        idempotent_power(&i, |&a, &b| self.mult[a][b]).0
    }

    /// The map of elements induced by a state map `π : [q] -> [q']` with
    /// `π(t(s)) = t'(π(s))`; fails when some element has no such `t'` here.
    pub fn quotient_map(&self, target: &MonoidPresentation, pi: &[u32]) -> Result<Vec<usize>> {
        if pi.len() != self.q as usize || pi.iter().any(|&s| s >= target.q) {
            return Err(Error::Invalid(format!(
                "{pi:?} is not a map [{}] -> [{}]",
                self.q, target.q
            )));
        }
        self.elements
            .iter()
            .map(|t| {
                let mut image = vec![None; target.q as usize];
                for (s, &ts) in t.iter().enumerate() {
                    let slot = &mut image[pi[s] as usize];
                    match *slot {
                        None => *slot = Some(pi[ts as usize]),
                        Some(v) if v == pi[ts as usize] => {}
                        Some(_) => return Err(Error::Invalid(format!("{t:?} does not respect the state map"))),
                    }
                }
                let table = image
                    .into_iter()
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| Error::Invalid("state map is not surjective".into()))?;
                target
                    .index_of(&table)
                    .ok_or_else(|| Error::Invalid(format!("{table:?} is not in the target monoid")))
            })
            .collect()
    }

    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            q: self.q,
            size: self.len(),
            unit: self.unit,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            mult: self.mult.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub q: u32,
    pub size: usize,
    pub unit: usize,
    pub generators: Vec<usize>,
    pub elements: Vec<Vec<u32>>,
    pub mult: Vec<Vec<usize>>,
}

/// Closure of the letter actions of `d`.
pub fn transition_monoid(d: &Dfa) -> MonoidPresentation {
    MonoidPresentation::generated(d.q(), d.delta()).expect("DFA tables are total")
}

/// The element of `m` determined by a Church-type approximant: `θ_q`
/// applied to the generators, read as a transformation of `[q]`.
pub fn proword_level_of_approximant(theta: &Approximant, m: &MonoidPresentation) -> Result<usize> {
    let n = m.generators.len();
    if theta.ty() != &Type::church(n) {
        return Err(Error::Mismatch(format!(
            "expected an approximant at {}, found {}",
            Type::church(n),
            theta.ty()
        )));
    }
    if theta.k() < m.q {
        return Err(Error::Precondition(format!(
            "cutoff {} is below the monoid's set size {}",
            theta.k(),
            m.q
        )));
    }
    let mut f = theta.component(m.q);
    for &g in &m.generators {
        f = f.at(Value::from_base_table(&m.elements[g]).small_index(m.q));
    }
    let table = f
        .base_table()
        .ok_or_else(|| Error::Invariant("Church component did not yield an endofunction".into()))?;
    m.index_of(&table)
        .ok_or_else(|| Error::Invalid(format!("{table:?} lies outside the monoid")))
}
