use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary orientation function `o : {1..n} -> Z_2`.
///
/// Bit 0 at index `i` means the floor point `p_i` is incoming and the ceiling
/// point `p^i` is outgoing (the strand starting at floor position `i` runs
/// upward); bit 1 reverses both.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Orientation {
    bits: Vec<bool>,
}

impl Orientation {
    /// All strands upward (`o = 00..0`).
    pub fn upward(n: usize) -> Self {
        Orientation { bits: vec![false; n] }
    }

    /// Constant orientation with the given bit on every strand.
    pub fn constant(n: usize, bit: bool) -> Self {
        Orientation { bits: vec![bit; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Orientation { bits }
    }

    /// Parses a string over `{0,1}`, index 1 leftmost.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for c in text.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::BadOrientation(text.to_string())),
            }
        }
        Ok(Orientation { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The bit at 1-based index `i`.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn is_constant(&self) -> bool {
        self.bits.windows(2).all(|w| w[0] == w[1])
    }

    /// Restriction to the 1-based index window `[start, start+len)`.
    pub fn restrict(&self, start: usize, len: usize) -> Self {
        Orientation { bits: self.bits[start - 1..start - 1 + len].to_vec() }
    }

    /// All `2^n` orientation functions on `n` strands, in binary order.
    pub fn all(n: usize) -> impl Iterator<Item = Orientation> {
        (0u32..1 << n).map(move |mask| Orientation {
            bits: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        })
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o({})", self)
    }
}

impl TryFrom<String> for Orientation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Orientation::parse(&s)
    }
}

impl From<Orientation> for String {
    fn from(o: Orientation) -> String {
        o.to_string()
    }
}
