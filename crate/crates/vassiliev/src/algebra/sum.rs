use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidLetter, BraidWord, Orientation};
use crate::error::{Error, Result};

/// A term key: the letter sequence with its double-point count cached so the
/// map orders terms by singularity count first, then lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    sing: usize,
    letters: Vec<BraidLetter>,
}

impl Term {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        let sing = letters.iter().map(|l| l.kind.singularities()).sum();
        Term { sing, letters }
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn singularities(&self) -> usize {
        self.sing
    }
}

/// An integer linear combination of singular braid words over a common
/// strand count and orientation. No zero coefficients are stored; fused
/// singular letters are kept combined.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum {
    strands: usize,
    orientation: Orientation,
    terms: BTreeMap<Term, i64>,
}

impl FormalSum {
    pub fn zero(strands: usize, orientation: Orientation) -> Self {
        FormalSum { strands, orientation, terms: BTreeMap::new() }
    }

    /// The sum consisting of the identity word with coefficient one.
    pub fn one(strands: usize, orientation: Orientation) -> Self {
        let mut s = FormalSum::zero(strands, orientation);
        s.add_term(Vec::new(), 1);
        s
    }

    pub fn from_word(word: &BraidWord, coeff: i64) -> Self {
        let mut s = FormalSum::zero(word.strands(), word.orientation().clone());
        s.add_term(word.letters().to_vec(), coeff);
        s
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (singularity count, then word).
    pub fn iter(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn coeff(&self, letters: &[BraidLetter]) -> i64 {
        self.terms.get(&Term::new(letters.to_vec())).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, letters: Vec<BraidLetter>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let term = Term::new(letters);
        match self.terms.get_mut(&term) {
            Some(c) => {
                *c += coeff;
                if *c == 0 {
                    self.terms.remove(&term);
                }
            }
            None => {
                self.terms.insert(term, coeff);
            }
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (t, c) in other.iter() {
            self.add_term(t.letters.clone(), c);
        }
    }

    pub fn scale(&mut self, factor: i64) {
        if factor == 0 {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    /// The braid word of a single term.
    pub fn term_word(&self, term: &Term) -> BraidWord {
        BraidWord::new(self.strands, term.letters.clone(), self.orientation.clone())
            .expect("term letters were validated on entry")
    }

    /// Serializes as a list of `{coeff, word}` objects in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<SumEntry> = self
            .iter()
            .map(|(t, c)| SumEntry { coeff: c, word: self.term_word(t).render() })
            .collect();
        serde_json::to_value(items).expect("serializable")
    }

    pub fn from_json(
        value: &serde_json::Value,
        strands: usize,
        orientation: Orientation,
    ) -> Result<Self> {
        let items: Vec<SumEntry> = serde_json::from_value(value.clone())?;
        let mut s = FormalSum::zero(strands, orientation.clone());
        for item in items {
            let w = BraidWord::parse(&item.word, strands, orientation.clone())?;
            s.add_term(w.letters().to_vec(), item.coeff);
        }
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SumEntry {
    coeff: i64,
    word: String,
}

/// Bilinear product: words concatenate, coefficients multiply, like terms
/// collect.
pub fn multiply(a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    if a.strands != b.strands {
        return Err(Error::StrandMismatch(a.strands, b.strands));
    }
    if a.orientation != b.orientation {
        return Err(Error::OrientationMismatch);
    }
    let mut out = FormalSum::zero(a.strands, a.orientation.clone());
    for (ta, ca) in a.iter() {
        for (tb, cb) in b.iter() {
            let mut letters = ta.letters.clone();
            letters.extend_from_slice(&tb.letters);
            out.add_term(letters, ca * cb);
        }
    }
    Ok(out)
}

/// Drops every term with more than `max_sing` double points. `None` keeps
/// everything.
pub fn truncate(s: &FormalSum, max_sing: Option<usize>) -> FormalSum {
    match max_sing {
        None => s.clone(),
        Some(max) => {
            let mut out = FormalSum::zero(s.strands, s.orientation.clone());
            for (t, c) in s.iter() {
                if t.singularities() <= max {
                    out.add_term(t.letters.clone(), c);
                }
            }
            out
        }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.iter().enumerate() {
            let word = self.term_word(t).render();
            if i == 0 {
                match c {
                    1 => write!(f, "{}", word)?,
                    -1 => write!(f, "- {}", word)?,
                    _ => write!(f, "{} {}", c, word)?,
                }
            } else if c > 0 {
                if c == 1 {
                    write!(f, " + {}", word)?;
                } else {
                    write!(f, " + {} {}", c, word)?;
                }
            } else if c == -1 {
                write!(f, " - {}", word)?;
            } else {
                write!(f, " - {} {}", -c, word)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
