use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// A permutation of `{1..n}`, stored as the image list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Dimension(format!("{:?} is not a bijection", images)));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i0, &v) in self.images.iter().enumerate() {
            images[v - 1] = i0 + 1;
        }
        Permutation { images }
    }

    /// `self` followed by `next` (apply `self` first).
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&v| next.apply(v)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i0, &v)| v == i0 + 1)
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] - 1;
            }
        }
        cycles
    }

    /// True iff the permutation is a single `n`-cycle.
    pub fn is_full_cycle(&self) -> bool {
        self.cycle_count() == 1
    }

    /// The cycles, each starting at its smallest element, sorted by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i] - 1;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for cycle in self.cycles() {
            if cycle.len() > 1 {
                write!(f, "(")?;
                for (i, p) in cycle.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", p)?;
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The boundary bijection of a non-singular word, read as a permutation.
///
/// Incoming points (floor points with bit 0, ceiling points with bit 1) and
/// outgoing points are each enumerated left to right; since exactly one of
/// `p_i`, `p^i` is incoming for every `i`, both enumerations are indexed by
/// `1..n`. A strand running upward from floor `j` to ceiling `m` sends
/// incoming slot `j` to outgoing slot `m`; a downward strand sends `m` to
/// `j`.
pub fn permutation_of(word: &BraidWord) -> Result<Permutation> {
    if word.is_singular() {
        return Err(Error::SingularWord);
    }
    word.check_orientable()?;
    let positional = word.positional_images();
    let n = word.strands();
    let mut images = vec![0usize; n];
    for (strand0, &end) in positional.iter().enumerate() {
        let start = strand0 + 1;
        if word.orientation().bit(start) {
            images[end - 1] = start;
        } else {
            images[start - 1] = end;
        }
    }
    Permutation::from_images(images)
}

/// Whether the closure of the word is a knot, i.e. the boundary permutation
/// is a full cycle.
pub fn is_knot_closure(word: &BraidWord) -> Result<bool> {
    Ok(permutation_of(word)?.is_full_cycle())
}
