//! Construction of the move words `BH_d^o(k)`, the companion `W` words, the
//! expansion signs, and knot pairs at move distance one.

use serde::{Deserialize, Serialize};

use crate::braid::{permutation_of, BraidLetter, BraidWord, Orientation, Permutation};
use crate::error::{Error, Result};

/// Which exponent rule converts orientation bits into a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `(-1)^(o(i) + o(i+1))`
    Additive,
    /// `(-1)^(o(i) * o(i+1))`
    Multiplicative,
}

impl SignConvention {
    /// The orientation factor for the pair of strands `(i, i+1)`.
    pub fn orientation_sign(self, a: bool, b: bool) -> i64 {
        let exponent = match self {
            SignConvention::Additive => (a as u8) + (b as u8),
            SignConvention::Multiplicative => (a as u8) * (b as u8),
        };
        if exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for SignConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SignConvention::Additive => write!(f, "additive"),
            SignConvention::Multiplicative => write!(f, "multiplicative"),
        }
    }
}

/// Identifies one `C_{k,d,o}` move: `|d| = k+1` entries in `{-2, 2}` and an
/// orientation on `k+2` strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSpec {
    pub k: usize,
    pub d: Vec<i8>,
    pub o: Orientation,
}

impl MoveSpec {
    pub fn new(k: usize, d: Vec<i8>, o: Orientation) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("k must be positive".into()));
        }
        if d.len() != k + 1 {
            return Err(Error::Dimension(format!("|d| = {} but k+1 = {}", d.len(), k + 1)));
        }
        if o.len() != k + 2 {
            return Err(Error::Dimension(format!("|o| = {} but k+2 = {}", o.len(), k + 2)));
        }
        if d.iter().any(|&di| di != 2 && di != -2) {
            return Err(Error::Dimension("d entries must be +2 or -2".into()));
        }
        Ok(MoveSpec { k, d, o })
    }

    pub fn strands(&self) -> usize {
        self.k + 2
    }

    /// `s(d_i)` for the 1-based block index `i`.
    pub fn s(&self, i: usize) -> i64 {
        if self.d[i - 1] > 0 {
            1
        } else {
            -1
        }
    }
}

/// A bit vector in `Z_2^k` selecting which `W`-word slots are filled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UVector(pub Vec<bool>);

impl UVector {
    pub fn zero(k: usize) -> Self {
        UVector(vec![false; k])
    }

    /// Coordinatewise flip, `u + (1,...,1)`.
    pub fn flip(&self) -> UVector {
        UVector(self.0.iter().map(|&b| !b).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All vectors in `Z_2^k`, in binary counting order.
    pub fn all(k: usize) -> impl Iterator<Item = UVector> {
        (0u32..1 << k).map(move |mask| UVector((0..k).map(|i| mask >> i & 1 == 1).collect()))
    }
}

/// Letter family used in the companion words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WVariant {
    /// `s_i^2` per selected slot.
    Squared,
    /// `p_i` per selected slot.
    Singular,
}

/// The word `BH_d^o(k)` on `k+2` strands: the six-factor product
/// `(prod_{i<=k} s_i^{d_i}) s_{k+1}^{d_{k+1}} (prod s_{k+1-i}^{-d_{k+1-i}})
///  (prod_{2<=i<=k} s_i^{d_i}) s_{k+1}^{-d_{k+1}} (prod s_{k+2-i}^{-d_{k+2-i}})`,
/// with empty products for out-of-range bounds.
pub fn bh_word(spec: &MoveSpec) -> BraidWord {
    let k = spec.k;
    let mut letters = Vec::new();
    let mut block = |i: usize, d: i8| {
        let letter = if d > 0 { BraidLetter::positive(i) } else { BraidLetter::negative(i) };
        letters.push(letter);
        letters.push(letter);
    };
    for i in 1..=k {
        block(i, spec.d[i - 1]);
    }
    block(k + 1, spec.d[k]);
    for i in 1..=k {
        block(k + 1 - i, -spec.d[k - i]);
    }
    for i in 2..=k {
        block(i, spec.d[i - 1]);
    }
    block(k + 1, -spec.d[k]);
    for i in 2..=k {
        block(k + 2 - i, -spec.d[k + 1 - i]);
    }
    BraidWord::new(spec.strands(), letters, spec.o.clone()).expect("spec validated")
}

/// The companion word over `u`: ascending `a_1 .. a_k` (or descending when
/// `reversed`) with `a_i` empty or the variant letter at index
/// `offset + i` according to `u_i`.
pub fn w_word(
    u: &UVector,
    variant: WVariant,
    reversed: bool,
    strands: usize,
    o: &Orientation,
    offset: usize,
) -> Result<BraidWord> {
    let mut letters = Vec::new();
    let mut slots: Vec<usize> = (1..=u.len()).collect();
    if reversed {
        slots.reverse();
    }
    for i in slots {
        if u.0[i - 1] {
            match variant {
                WVariant::Squared => {
                    letters.push(BraidLetter::positive(offset + i));
                    letters.push(BraidLetter::positive(offset + i));
                }
                WVariant::Singular => letters.push(BraidLetter::singular_positive(offset + i)),
            }
        }
    }
    BraidWord::new(strands, letters, o.clone())
}

/// The per-slot sign `so(i) = s(d_i) * conv(o(i), o(i+1))`.
pub fn so(spec: &MoveSpec, i: usize, conv: SignConvention) -> i64 {
    spec.s(i) * conv.orientation_sign(spec.o.bit(i), spec.o.bit(i + 1))
}

/// The aggregate sign of the `u`-term: the `s_{k+1}`-slot prefactor folded
/// together with `prod_{i<=k} (-1)^(u_i+1) so(i)`.
pub fn theorem_sign(u: &UVector, spec: &MoveSpec, conv: SignConvention) -> i64 {
    let mut sign = so(spec, spec.k + 1, conv);
    for i in 1..=spec.k {
        sign *= so(spec, i, conv);
        if !u.0[i - 1] {
            sign = -sign;
        }
    }
    sign
}

/// A pair of knot closures at move distance one: `K` closes `BH * T`, `J`
/// closes `T`.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub k_word: BraidWord,
    pub j_word: BraidWord,
    pub spec: MoveSpec,
    pub t: BraidWord,
}

pub fn make_pair(spec: &MoveSpec, t: &BraidWord) -> Result<MovePair> {
    if t.strands() != spec.strands() {
        return Err(Error::StrandMismatch(t.strands(), spec.strands()));
    }
    if *t.orientation() != spec.o {
        return Err(Error::OrientationMismatch);
    }
    let phi = permutation_of(t)?;
    if !phi.is_full_cycle() {
        return Err(Error::NotKnot { components: phi.cycle_count() });
    }
    let bh = bh_word(spec);
    let k_word = bh.compose(t)?;
    debug_assert_eq!(permutation_of(&k_word).unwrap(), phi);
    Ok(MovePair { k_word, j_word: t.clone(), spec: spec.clone(), t: t.clone() })
}

/// The `2^k` right-hand-side closures of the difference formula:
/// `W_u * s_{k+1}^2 * W_{u+1}^r * x` with sign `theorem_sign(u)`. The
/// singular variant replaces every `s_i^2` by `p_i`.
///
/// `phi_t` is the boundary permutation of the `T` used for the pair; `x`
/// must induce the same one.
pub fn rhs_terms(
    spec: &MoveSpec,
    phi_t: &Permutation,
    x: &BraidWord,
    conv: SignConvention,
    variant: WVariant,
) -> Result<Vec<(i64, BraidWord)>> {
    if x.strands() != spec.strands() {
        return Err(Error::StrandMismatch(x.strands(), spec.strands()));
    }
    if *x.orientation() != spec.o {
        return Err(Error::OrientationMismatch);
    }
    if permutation_of(x)? != *phi_t {
        return Err(Error::PhiMismatch);
    }
    let n = spec.strands();
    let mut out = Vec::with_capacity(1 << spec.k);
    for u in UVector::all(spec.k) {
        let mut word = w_word(&u, variant, false, n, &spec.o, 0)?;
        let middle = match variant {
            WVariant::Squared => BraidWord::parse(
                &format!("s{}^2", spec.k + 1),
                n,
                spec.o.clone(),
            )?,
            WVariant::Singular => BraidWord::parse(
                &format!("p{}", spec.k + 1),
                n,
                spec.o.clone(),
            )?,
        };
        word = concat(&word, &middle);
        word = concat(&word, &w_word(&u.flip(), variant, true, n, &spec.o, 0)?);
        word = concat(&word, x);
        out.push((theorem_sign(&u, spec, conv), word));
    }
    Ok(out)
}

/// Plain letter concatenation, bypassing the orientability check of
/// `compose` so that singular companion words can be assembled.
pub(crate) fn concat(a: &BraidWord, b: &BraidWord) -> BraidWord {
    let mut letters = a.letters().to_vec();
    letters.extend_from_slice(b.letters());
    BraidWord::new(a.strands(), letters, a.orientation().clone()).expect("compatible")
}

/// Side-by-side block word `BH(n,k)` on `n(k+2)` strands. Block `j`
/// (0-based) lives on the strand window `{j(k+2)+1, ..., (j+1)(k+2)}` and
/// each block spec's orientation must be the restriction of the global one.
pub fn block_word(specs: &[MoveSpec], o: &Orientation) -> Result<BraidWord> {
    let (n, k) = validate_blocks(specs, o)?;
    let strands = n * (k + 2);
    let mut letters = Vec::new();
    for (j, spec) in specs.iter().enumerate() {
        let offset = j * (k + 2);
        for l in bh_word(spec).letters() {
            letters.push(BraidLetter { index: l.index + offset, kind: l.kind });
        }
    }
    BraidWord::new(strands, letters, o.clone())
}

/// Right-hand-side terms of the block formula: one theorem-shaped family per
/// block, shifted into its window, all closed with the common `x`.
///
/// `literal_w` drops the `u+1` flip on the reversed word, matching the
/// block formula as printed rather than the single-move statement; the two
/// disagree and the flipped form is the one the checks validate.
pub fn block_rhs_terms(
    specs: &[MoveSpec],
    o: &Orientation,
    phi_t: &Permutation,
    x: &BraidWord,
    conv: SignConvention,
    variant: WVariant,
    literal_w: bool,
) -> Result<Vec<(i64, BraidWord)>> {
    let (n, k) = validate_blocks(specs, o)?;
    let strands = n * (k + 2);
    if x.strands() != strands {
        return Err(Error::StrandMismatch(x.strands(), strands));
    }
    if x.orientation() != o {
        return Err(Error::OrientationMismatch);
    }
    if permutation_of(x)? != *phi_t {
        return Err(Error::PhiMismatch);
    }
    let mut out = Vec::new();
    for (j, spec) in specs.iter().enumerate() {
        let offset = j * (k + 2);
        for u in UVector::all(k) {
            let mut word = w_word(&u, variant, false, strands, o, offset)?;
            let mid_index = offset + k + 1;
            let middle = match variant {
                WVariant::Squared => {
                    BraidWord::parse(&format!("s{}^2", mid_index), strands, o.clone())?
                }
                WVariant::Singular => {
                    BraidWord::parse(&format!("p{}", mid_index), strands, o.clone())?
                }
            };
            word = concat(&word, &middle);
            let rev = if literal_w { u.clone() } else { u.flip() };
            word = concat(&word, &w_word(&rev, variant, true, strands, o, offset)?);
            word = concat(&word, x);
            out.push((theorem_sign(&u, spec, conv), word));
        }
    }
    Ok(out)
}

fn validate_blocks(specs: &[MoveSpec], o: &Orientation) -> Result<(usize, usize)> {
    let n = specs.len();
    if n == 0 {
        return Err(Error::Dimension("no blocks".into()));
    }
    let k = specs[0].k;
    if specs.iter().any(|s| s.k != k) {
        return Err(Error::Dimension("all blocks must share k".into()));
    }
    if o.len() != n * (k + 2) {
        return Err(Error::Dimension(format!(
            "global orientation has {} strands, expected {}",
            o.len(),
            n * (k + 2)
        )));
    }
    for (j, spec) in specs.iter().enumerate() {
        if spec.o != o.restrict(j * (k + 2) + 1, k + 2) {
            return Err(Error::Dimension(format!(
                "block {} orientation is not the restriction of the global one",
                j
            )));
        }
    }
    Ok((n, k))
}
