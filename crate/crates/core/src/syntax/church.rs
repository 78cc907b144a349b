use std::fmt;

use serde::{Deserialize, Serialize};

use super::normalize::normalize;
use super::typecheck::typecheck;
use super::{Term, Type};
use crate::error::{Error, Result};

/// An ordered alphabet. Letter `i` binds the `i`-th `o -> o` argument of
/// the Church type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad letter name {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate letter `{l}`")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// One letter per character of `s`.
    pub fn from_chars(s: &str) -> Result<Alphabet> {
        Alphabet::new(s.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    pub fn church_type(&self) -> Type {
        Type::church(self.len())
    }

    /// Reads a word. If every letter is a single character the word may be
    /// written without separators; otherwise letters are separated by
    /// whitespace. `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        let single_chars = self.letters.iter().all(|l| l.chars().count() == 1);
        let pieces: Vec<String> = if single_chars && !s.contains(char::is_whitespace) {
            s.chars().map(|c| c.to_string()).collect()
        } else {
            s.split_whitespace().map(str::to_string).collect()
        };
        pieces
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::UnknownLetter(p.clone())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.letters.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            " "
        };
        w.0.iter()
            .map(|&i| self.letters[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of length at most `max_len`, shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..self.len() {
                    next.push(w.push(a));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.letters
    }
}

/// A word as a sequence of letter positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `\a1 ... \an. \c. a_{wk} (... (a_{w1} c))` over an alphabet of
/// `letters` letters.
pub fn church_term(w: &Word, letters: usize) -> Result<Term> {
    if let Some(&bad) = w.0.iter().find(|&&l| l >= letters) {
        return Err(Error::UnknownLetter(format!("#{bad}")));
    }
    // Under the n+1 binders, letter i is index n - i and c is index 0.
    let body =
        w.0.iter()
            .fold(Term::var(0), |acc, &l| Term::app(Term::var(letters - l), acc));
    let mut t = Term::lam(Type::Base, body);
    for _ in 0..letters {
        t = Term::lam(Type::endo(), t);
    }
    Ok(t)
}

/// Reads back the word encoded by a closed term of Church type.
pub fn word_of_church(t: &Term, letters: usize) -> Result<Word> {
    let expected = Type::church(letters);
    let ty = typecheck(&[], t)?;
    if ty != expected {
        return Err(Error::Mismatch(format!(
            "expected a term of type {expected}, found {ty}"
        )));
    }
    let mut body = normalize(t)?;
    for _ in 0..=letters {
        body = match body {
            Term::Lam(_, b) => *b,
            _ => unreachable!("η-long forms of Church type start with n+1 binders"),
        };
    }
    let mut rev = Vec::new();
    loop {
        match body {
            Term::Var(0) => break,
            Term::App(f, a) => match *f {
                Term::Var(i) if (1..=letters).contains(&i) => {
                    rev.push(letters - i);
                    body = *a;
                }
                _ => unreachable!("normal inhabitants of Church types are letter spines"),
            },
            _ => unreachable!("normal inhabitants of Church types are letter spines"),
        }
    }
    rev.reverse();
    Ok(Word(rev))
}
