//! Binary relations between canonical finite sets, partial surjections,
//! and their exponentials.

mod logical;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use logical::{logical_relation_member, logical_relation_of_psurj, LiftedSurjection, LogicalRelation};

/// `R ⊆ [left] × [right]` as a dense bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    left: usize,
    right: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(left: usize, right: usize) -> Relation {
        Relation {
            left,
            right,
            bits: vec![0; (left * right).div_ceil(64)],
        }
    }

    pub fn full(left: usize, right: usize) -> Relation {
        let mut r = Relation::empty(left, right);
        for i in 0..left {
            for j in 0..right {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn diagonal(n: usize) -> Relation {
        let mut r = Relation::empty(n, n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(left: usize, right: usize, pairs: I) -> Result<Relation> {
        let mut r = Relation::empty(left, right);
        for (i, j) in pairs {
            if i >= left || j >= right {
                return Err(Error::Invalid(format!(
                    "pair ({i}, {j}) out of bounds for [{left}] x [{right}]"
                )));
            }
            r.insert(i, j);
        }
        Ok(r)
    }

    /// The relation whose pair `(i, j)` is bit `i * right + j` of `mask`.
    pub fn from_mask(left: usize, right: usize, mask: u64) -> Relation {
        assert!(left * right <= 64);
        let mut r = Relation::empty(left, right);
        for k in 0..left * right {
            if mask >> k & 1 == 1 {
                r.insert(k / right, k % right);
            }
        }
        r
    }

    /// All `2^(left·right)` relations, in mask order.
    pub fn all(left: usize, right: usize) -> impl Iterator<Item = Relation> {
        let n = left * right;
        assert!(n < 64, "too many relations to enumerate");
        (0..1u64 << n).map(move |m| Relation::from_mask(left, right, m))
    }

    /// A uniformly random relation.
    pub fn random<R: Rng>(left: usize, right: usize, rng: &mut R) -> Relation {
        let mut r = Relation::empty(left, right);
        for i in 0..left {
            for j in 0..right {
                if rng.gen::<bool>() {
                    r.insert(i, j);
                }
            }
        }
        r
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let k = i * self.right + j;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let k = i * self.right + j;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.left)
            .flat_map(move |i| (0..self.right).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            q: self.left,
            q_prime: self.right,
            pairs: self.pairs().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}x{}]{{", self.left, self.right)?;
        for (n, (i, j)) in self.pairs().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}~{j}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub q: usize,
    pub q_prime: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl RelationJson {
    pub fn decode(&self) -> Result<Relation> {
        Relation::from_pairs(self.q, self.q_prime, self.pairs.iter().map(|p| (p[0], p[1])))
    }
}

/// The graph of a surjective partial function `[left] ⇀ [right]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialSurjection {
    left: usize,
    right: usize,
    map: Vec<Option<usize>>,
}

impl PartialSurjection {
    /// Checks bounds and surjectivity.
    pub fn new(right: usize, map: Vec<Option<usize>>) -> Result<PartialSurjection> {
        let mut hit = vec![false; right];
        for &y in map.iter().flatten() {
            if y >= right {
                return Err(Error::Invalid(format!("target {y} out of range [{right}]")));
            }
            hit[y] = true;
        }
        if let Some(missed) = hit.iter().position(|h| !h) {
            return Err(Error::Invalid(format!("{missed} is not in the image")));
        }
        Ok(PartialSurjection {
            left: map.len(),
            right,
            map,
        })
    }

    pub fn identity(n: usize) -> PartialSurjection {
        PartialSurjection {
            left: n,
            right: n,
            map: (0..n).map(Some).collect(),
        }
    }

    /// Identity on `[right]`, undefined on the rest of `[left]`.
    pub fn canonical(left: usize, right: usize) -> Result<PartialSurjection> {
        if left < right {
            return Err(Error::Precondition(format!(
                "no partial surjection [{left}] -> [{right}]"
            )));
        }
        PartialSurjection::new(right, (0..left).map(|x| (x < right).then_some(x)).collect())
    }

    /// The `i`-th coproduct projection `[q1 + q2] -> [q_i]`: the first
    /// block maps identically onto `[q1]`, the second onto `[q2]`.
    pub fn coproduct_projection(q1: usize, q2: usize, second: bool) -> PartialSurjection {
        let map = (0..q1 + q2)
            .map(|x| match (second, x < q1) {
                (false, true) => Some(x),
                (true, false) => Some(x - q1),
                _ => None,
            })
            .collect();
        PartialSurjection::new(if second { q2 } else { q1 }, map).expect("coproduct projections are surjective")
    }

    /// Every partial surjection `[left] -> [right]`, ordered
    /// lexicographically by the map with undefined before defined.
    pub fn all(left: usize, right: usize) -> Vec<PartialSurjection> {
        let mut out = Vec::new();
        let mut map = vec![None; left];
        fn go(pos: usize, right: usize, map: &mut Vec<Option<usize>>, out: &mut Vec<PartialSurjection>) {
            if pos == map.len() {
                if let Ok(p) = PartialSurjection::new(right, map.clone()) {
                    out.push(p);
                }
                return;
            }
            for v in std::iter::once(None).chain((0..right).map(Some)) {
                map[pos] = v;
                go(pos + 1, right, map, out);
            }
            map[pos] = None;
        }
        go(0, right, &mut map, &mut out);
        out
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    pub fn map(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.left).filter(|&x| self.map[x].is_some())
    }

    pub fn to_relation(&self) -> Relation {
        let mut r = Relation::empty(self.left, self.right);
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                r.insert(x, *y);
            }
        }
        r
    }

    /// Reads a relation back as a partial surjection, if it is one.
    pub fn from_relation(r: &Relation) -> Result<PartialSurjection> {
        let mut map = vec![None; r.left()];
        for (i, j) in r.pairs() {
            if map[i].is_some() {
                return Err(Error::Invalid(format!("{i} is related to several elements")));
            }
            map[i] = Some(j);
        }
        PartialSurjection::new(r.right(), map)
    }

    /// The span `[left] <-π1- dom -π2-> [right]` with `π1` injective and
    /// `π2` surjective; returned as the two legs over the domain.
    pub fn span(&self) -> (Vec<usize>, Vec<usize>) {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .unzip()
    }

    pub fn to_json(&self) -> PartialSurjectionJson {
        PartialSurjectionJson {
            q: self.left,
            q_prime: self.right,
            map: self.map.clone(),
        }
    }
}

impl fmt::Display for PartialSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] (", self.left, self.right)?;
        for (x, y) in self.map.iter().enumerate() {
            if x > 0 {
                write!(f, " ")?;
            }
            match y {
                Some(y) => write!(f, "{y}")?,
                None => write!(f, "_")?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSurjectionJson {
    pub q: usize,
    pub q_prime: usize,
    pub map: Vec<Option<usize>>,
}

impl PartialSurjectionJson {
    pub fn decode(&self) -> Result<PartialSurjection> {
        if self.map.len() != self.q {
            return Err(Error::Invalid(format!(
                "map has {} entries, expected {}",
                self.map.len(),
                self.q
            )));
        }
        PartialSurjection::new(self.q_prime, self.map.clone())
    }
}

/// `base^exp` if it is at most `cap`.
fn checked_power(base: usize, exp: usize, cap: u64, what: &str) -> Result<usize> {
    let too_large = || Error::TooLarge {
        what: what.to_string(),
        entries: format!("{base}^{exp}"),
        cap,
    };
    let n = u32::try_from(exp)
        .ok()
        .and_then(|e| (base as u64).checked_pow(e))
        .ok_or_else(too_large)?;
    if n > cap {
        return Err(too_large());
    }
    Ok(n as usize)
}

/// Little-endian digits of `index` in base `base`.
fn digits(mut index: usize, base: usize, len: usize, out: &mut Vec<usize>) {
    out.clear();
    for _ in 0..len {
        out.push(index % base);
        index /= base;
    }
}

/// `S ⇒ R`: pairs `(g, h)` of functions `g : [P] -> [Q]`, `h : [P'] -> [Q']`
/// (by mixed-radix index) such that `x S y` implies `g(x) R h(y)`. Computed
/// by brute force over all pairs.
pub fn rel_exponential(s: &Relation, r: &Relation, cap: u64) -> Result<Relation> {
    let n_left = checked_power(r.left(), s.left(), cap, "left function space")?;
    let n_right = checked_power(r.right(), s.right(), cap, "right function space")?;
    if (n_left as u64).saturating_mul(n_right as u64) > cap.saturating_mul(64) {
        return Err(Error::TooLarge {
            what: "exponential relation".into(),
            entries: format!("{n_left}x{n_right}"),
            cap,
        });
    }
    let s_pairs: Vec<(usize, usize)> = s.pairs().collect();
    let mut out = Relation::empty(n_left, n_right);
    let (mut g, mut h) = (Vec::new(), Vec::new());
    for gi in 0..n_left {
        digits(gi, r.left(), s.left(), &mut g);
        for hi in 0..n_right {
            digits(hi, r.right(), s.right(), &mut h);
            if s_pairs.iter().all(|&(x, y)| r.contains(g[x], h[y])) {
                out.insert(gi, hi);
            }
        }
    }
    Ok(out)
}

/// `e ⇒ f` for partial surjections, computed fiberwise: `g` is in the
/// domain iff `f ∘ g` is defined on `dom e` and constant on the fibers of
/// `e`, and then `h` is the induced map on `[P']`.
pub fn psurj_exponential(e: &PartialSurjection, f: &PartialSurjection, cap: u64) -> Result<PartialSurjection> {
    if f.left() == 0 && e.left() > 0 && e.right() == 0 {
        return Err(Error::Precondition(format!(
            "[0]^[{}] is empty but [0]^[0] is not, so {e} => {f} is not surjective",
            e.left()
        )));
    }
    let n_left = checked_power(f.left(), e.left(), cap, "left function space")?;
    let n_right = checked_power(f.right(), e.right(), cap, "right function space")?;
    let mut map = Vec::with_capacity(n_left);
    let mut g = Vec::new();
    let mut h: Vec<Option<usize>> = vec![None; e.right()];
    'functions: for gi in 0..n_left {
        digits(gi, f.left(), e.left(), &mut g);
        h.iter_mut().for_each(|v| *v = None);
        for x in e.domain() {
            let x2 = e.get(x).unwrap();
            let Some(y2) = f.get(g[x]) else {
                map.push(None);
                continue 'functions;
            };
            match h[x2] {
                Some(prev) if prev != y2 => {
                    map.push(None);
                    continue 'functions;
                }
                _ => h[x2] = Some(y2),
            }
        }
        let mut hi = 0usize;
        for v in h.iter().rev() {
            let v =
                v.ok_or_else(|| Error::Invariant("exponential of a partial surjection left a point unmapped".into()))?;
            hi = hi * f.right() + v;
        }
        map.push(Some(hi));
    }
    PartialSurjection::new(n_right, map)
        .map_err(|e| Error::Invariant(format!("exponential of partial surjections is not surjective: {e}")))
}

#[cfg(test)]
mod tests;
