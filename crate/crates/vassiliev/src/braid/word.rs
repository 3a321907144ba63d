use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::Orientation;
use crate::error::{Error, Result};

/// The crossing type of a single letter.
///
/// `SingularPositive` is the fused letter `x_i s_i` and `SingularNegative` is
/// `x_i s_i^-1`; both orderings of the underlying two-letter word are equal,
/// so the fused form is the stored normal form and is never split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterKind {
    /// `s_i`
    Positive,
    /// `s_i^-1`
    Negative,
    /// `x_i`, a plain double point
    Singular,
    /// `p_i = x_i s_i`
    SingularPositive,
    /// `m_i = x_i s_i^-1`
    SingularNegative,
}

impl LetterKind {
    /// Number of double points the letter carries.
    pub fn singularities(self) -> usize {
        match self {
            LetterKind::Positive | LetterKind::Negative => 0,
            _ => 1,
        }
    }

    /// Whether the letter swaps the two strands it involves.
    ///
    /// A plain crossing or a bare double point exchanges the strands; the
    /// fused singular letters cross twice and leave them in place.
    pub fn swaps(self) -> bool {
        matches!(
            self,
            LetterKind::Positive | LetterKind::Negative | LetterKind::Singular
        )
    }
}

/// One generator letter `s_i`, `s_i^-1`, `x_i`, `p_i` or `m_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidLetter {
    pub index: usize,
    pub kind: LetterKind,
}

impl BraidLetter {
    pub fn positive(index: usize) -> Self {
        BraidLetter { index, kind: LetterKind::Positive }
    }

    pub fn negative(index: usize) -> Self {
        BraidLetter { index, kind: LetterKind::Negative }
    }

    pub fn singular(index: usize) -> Self {
        BraidLetter { index, kind: LetterKind::Singular }
    }

    pub fn singular_positive(index: usize) -> Self {
        BraidLetter { index, kind: LetterKind::SingularPositive }
    }

    pub fn singular_negative(index: usize) -> Self {
        BraidLetter { index, kind: LetterKind::SingularNegative }
    }

    /// The mirror letter (all crossings switched).
    pub fn mirror(self) -> Self {
        let kind = match self.kind {
            LetterKind::Positive => LetterKind::Negative,
            LetterKind::Negative => LetterKind::Positive,
            LetterKind::Singular => LetterKind::Singular,
            LetterKind::SingularPositive => LetterKind::SingularNegative,
            LetterKind::SingularNegative => LetterKind::SingularPositive,
        };
        BraidLetter { index: self.index, kind }
    }

    fn token(self) -> String {
        match self.kind {
            LetterKind::Positive => format!("s{}", self.index),
            LetterKind::Negative => format!("s{}^-1", self.index),
            LetterKind::Singular => format!("x{}", self.index),
            LetterKind::SingularPositive => format!("p{}", self.index),
            LetterKind::SingularNegative => format!("m{}", self.index),
        }
    }
}

/// A word in the singular braid monoid on `strands` strands, together with
/// the boundary orientation it is declared against.
///
/// Words carry free-word semantics: no cancellation or braid relation is
/// applied on construction.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
    orientation: Orientation,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>, orientation: Orientation) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        if orientation.len() != strands {
            return Err(Error::OrientationLength { got: orientation.len(), expected: strands });
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::IndexOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters, orientation })
    }

    /// The identity word `e`.
    pub fn identity(strands: usize, orientation: Orientation) -> Result<Self> {
        BraidWord::new(strands, Vec::new(), orientation)
    }

    /// Parses the whitespace-separated grammar: `s<i>` for a positive
    /// crossing, `s<i>^<e>` for `|e|` copies with the sign of `e`, `x<i>`,
    /// `p<i>`, `m<i>` for the singular letters, and `e` for the identity.
    pub fn parse(text: &str, strands: usize, orientation: Orientation) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "e" {
                continue;
            }
            if !tok.is_char_boundary(1) {
                return Err(Error::MalformedToken(tok.to_string()));
            }
            let (head, rest) = tok.split_at(1);
            match head {
                "s" => {
                    let (index, exp) = match rest.split_once('^') {
                        Some((i, e)) => {
                            let exp: i64 =
                                e.parse().map_err(|_| Error::MalformedToken(tok.to_string()))?;
                            if exp == 0 {
                                return Err(Error::MalformedToken(tok.to_string()));
                            }
                            (parse_index(i, tok)?, exp)
                        }
                        None => (parse_index(rest, tok)?, 1),
                    };
                    let letter = if exp > 0 {
                        BraidLetter::positive(index)
                    } else {
                        BraidLetter::negative(index)
                    };
                    for _ in 0..exp.unsigned_abs() {
                        letters.push(letter);
                    }
                }
                "x" => letters.push(BraidLetter::singular(parse_index(rest, tok)?)),
                "p" => letters.push(BraidLetter::singular_positive(parse_index(rest, tok)?)),
                "m" => letters.push(BraidLetter::singular_negative(parse_index(rest, tok)?)),
                _ => return Err(Error::MalformedToken(tok.to_string())),
            }
        }
        BraidWord::new(strands, letters, orientation)
    }

    /// Renders back to the grammar, compressing runs of equal plain letters
    /// into powers. Reparsing yields the identical letter sequence.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            match l.kind {
                LetterKind::Positive | LetterKind::Negative => {
                    let mut run = 1;
                    while i + run < self.letters.len() && self.letters[i + run] == l {
                        run += 1;
                    }
                    let sign = if l.kind == LetterKind::Positive { 1i64 } else { -1 };
                    let e = sign * run as i64;
                    if e == 1 {
                        out.push(format!("s{}", l.index));
                    } else {
                        out.push(format!("s{}^{}", l.index, e));
                    }
                    i += run;
                }
                _ => {
                    out.push(l.token());
                    i += 1;
                }
            }
        }
        out.join(" ")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of double points in the word.
    pub fn singularity_count(&self) -> usize {
        self.letters.iter().map(|l| l.kind.singularities()).sum()
    }

    pub fn is_singular(&self) -> bool {
        self.singularity_count() > 0
    }

    /// Stacks `top` on top of `self`. Letter sequences concatenate; nothing
    /// is reduced. The bottom word must respect the boundary orientation so
    /// that the composite is again a word over the same `o`.
    pub fn compose(&self, top: &BraidWord) -> Result<BraidWord> {
        if self.strands != top.strands {
            return Err(Error::StrandMismatch(self.strands, top.strands));
        }
        if self.orientation != top.orientation {
            return Err(Error::OrientationMismatch);
        }
        self.check_orientable()?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&top.letters);
        BraidWord::new(self.strands, letters, self.orientation.clone())
    }

    /// The mirror word: every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.mirror()).collect(),
            orientation: self.orientation.clone(),
        }
    }

    /// The inverse word (letters reversed and inverted). Only defined for
    /// non-singular words.
    pub fn inverse(&self) -> Result<BraidWord> {
        if self.is_singular() {
            return Err(Error::SingularWord);
        }
        let letters = self.letters.iter().rev().map(|l| l.mirror()).collect();
        BraidWord::new(self.strands, letters, self.orientation.clone())
    }

    /// Cancels adjacent `s_i s_i^-1` / `s_i^-1 s_i` pairs to a free normal
    /// form. Singular letters are never cancelled.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let cancels = match (stack.last(), l.kind) {
                (Some(t), LetterKind::Positive) => {
                    t.index == l.index && t.kind == LetterKind::Negative
                }
                (Some(t), LetterKind::Negative) => {
                    t.index == l.index && t.kind == LetterKind::Positive
                }
                _ => false,
            };
            if cancels {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: stack, orientation: self.orientation.clone() }
    }

    /// The arrangement walk: `arrangements()[j][pos-1]` is the strand sitting
    /// at position `pos` just before letter `j` (and the final entry is the
    /// arrangement at the ceiling). Every swapping letter exchanges the two
    /// positions it touches.
    pub fn arrangements(&self) -> Vec<Vec<usize>> {
        let mut arr: Vec<usize> = (1..=self.strands).collect();
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        out.push(arr.clone());
        for l in &self.letters {
            if l.kind.swaps() {
                arr.swap(l.index - 1, l.index);
            }
            out.push(arr.clone());
        }
        out
    }

    /// The permutation of strand start positions to end positions induced by
    /// the word, singular letters counting as exchanges.
    pub(crate) fn positional_images(&self) -> Vec<usize> {
        let arr = self.arrangements().pop().expect("nonempty");
        // arr[pos-1] = strand: invert to strand -> position.
        let mut images = vec![0usize; self.strands];
        for (pos0, &strand) in arr.iter().enumerate() {
            images[strand - 1] = pos0 + 1;
        }
        images
    }

    /// Checks that every strand connects boundary points with equal
    /// orientation bits, i.e. the word is a genuine `o`-braid.
    pub fn check_orientable(&self) -> Result<()> {
        for (strand0, &end) in self.positional_images().iter().enumerate() {
            let start = strand0 + 1;
            if self.orientation.bit(start) != self.orientation.bit(end) {
                return Err(Error::NotOrientable { strand: start, from: start, to: end });
            }
        }
        Ok(())
    }
}

fn parse_index(text: &str, tok: &str) -> Result<usize> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedToken(tok.to_string()));
    }
    let index: usize = text.parse().map_err(|_| Error::MalformedToken(tok.to_string()))?;
    if index == 0 {
        return Err(Error::MalformedToken(tok.to_string()));
    }
    Ok(index)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {} strands, o={}", self.render(), self.strands, self.orientation)
    }
}
