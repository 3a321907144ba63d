use crate::algebra::{multiply, truncate, FormalSum};
use crate::braid::{BraidLetter, BraidWord, LetterKind, Orientation};
use crate::error::{Error, Result};
use crate::moves::{theorem_sign, MoveSpec, SignConvention, UVector};

/// The expansion sign `so(i) = s(d) * conv(o(i), o(i+1))` for a double
/// crossing `s_i^d` with `d` in `{+2, -2}`.
pub fn so_sign(i: usize, d: i8, o: &Orientation, conv: SignConvention) -> i64 {
    debug_assert!(d == 2 || d == -2);
    let s = if d > 0 { 1 } else { -1 };
    s * conv.orientation_sign(o.bit(i), o.bit(i + 1))
}

/// Expands one double crossing `s_i^d` into `e + so(i) s_i^{sign(d)}` with
/// the fused singular letter on the right.
pub fn expand_letter(
    i: usize,
    d: i8,
    strands: usize,
    o: &Orientation,
    conv: SignConvention,
) -> Result<FormalSum> {
    if d != 2 && d != -2 {
        return Err(Error::NotDoubleCrossings(0));
    }
    if i == 0 || i >= strands {
        return Err(Error::IndexOutOfRange { index: i, strands });
    }
    let mut sum = FormalSum::one(strands, o.clone());
    let letter = if d > 0 {
        BraidLetter::singular_positive(i)
    } else {
        BraidLetter::singular_negative(i)
    };
    sum.add_term(vec![letter], so_sign(i, d, o, conv));
    Ok(sum)
}

/// Rewrites every adjacent same-index pair `p_i m_i` (or `m_i p_i`, both
/// equal `x_i x_i`) to `t (p_i - m_i)` until no pair remains, where `t` is
/// the crossing sign of the strands sitting at positions `(i, i+1)` there.
/// Each rewrite shortens the word, so the process terminates; confluence is
/// checked by the property tests.
pub fn key_reduce(s: &FormalSum) -> FormalSum {
    let strands = s.strands();
    let o = s.orientation().clone();
    let mut out = FormalSum::zero(strands, o.clone());
    let mut stack: Vec<(Vec<BraidLetter>, i64)> =
        s.iter().map(|(t, c)| (t.letters().to_vec(), c)).collect();
    while let Some((letters, coeff)) = stack.pop() {
        match find_key_pair(&letters, strands, &o) {
            None => out.add_term(letters, coeff),
            Some((j, t)) => {
                let index = letters[j].index;
                let mut plus = Vec::with_capacity(letters.len() - 1);
                plus.extend_from_slice(&letters[..j]);
                plus.push(BraidLetter::singular_positive(index));
                plus.extend_from_slice(&letters[j + 2..]);
                let mut minus = plus.clone();
                minus[j] = BraidLetter::singular_negative(index);
                stack.push((plus, coeff * t));
                stack.push((minus, -coeff * t));
            }
        }
    }
    out
}

/// Finds the leftmost reducible pair and the geometric sign of its slot.
fn find_key_pair(letters: &[BraidLetter], strands: usize, o: &Orientation) -> Option<(usize, i64)> {
    let mut arr: Vec<usize> = (1..=strands).collect();
    for j in 0..letters.len().saturating_sub(1) {
        let (a, b) = (letters[j], letters[j + 1]);
        let reducible = a.index == b.index
            && matches!(
                (a.kind, b.kind),
                (LetterKind::SingularPositive, LetterKind::SingularNegative)
                    | (LetterKind::SingularNegative, LetterKind::SingularPositive)
            );
        if reducible {
            let i = a.index;
            let t = if o.bit(arr[i - 1]) ^ o.bit(arr[i]) { -1 } else { 1 };
            return Some((j, t));
        }
        if a.kind.swaps() {
            arr.swap(a.index - 1, a.index);
        }
    }
    None
}

/// Expands a product of double crossings block by block, truncating and
/// reducing after every multiplication to keep intermediate sums small.
///
/// Truncation runs before reduction: a term past the budget is already zero
/// for the invariants in range, and reducing it first would fold it back
/// into lower-singularity terms and change the normal form. Reduction never
/// raises the singularity count, so the order is also the cheaper one.
pub fn expand_word(
    word: &BraidWord,
    conv: SignConvention,
    max_sing: Option<usize>,
) -> Result<FormalSum> {
    let blocks = split_double_blocks(word)?;
    let mut acc = FormalSum::one(word.strands(), word.orientation().clone());
    for (i, d) in blocks {
        let factor = expand_letter(i, d, word.strands(), word.orientation(), conv)?;
        acc = multiply(&acc, &factor)?;
        acc = key_reduce(&truncate(&acc, max_sing));
    }
    Ok(acc)
}

/// Splits a word into `(index, ±2)` double-crossing blocks.
pub fn split_double_blocks(word: &BraidWord) -> Result<Vec<(usize, i8)>> {
    let letters = word.letters();
    if !letters.len().is_multiple_of(2) {
        return Err(Error::NotDoubleCrossings(letters.len()));
    }
    let mut blocks = Vec::with_capacity(letters.len() / 2);
    for (b, pair) in letters.chunks(2).enumerate() {
        let (a, x) = (pair[0], pair[1]);
        if a != x {
            return Err(Error::NotDoubleCrossings(2 * b));
        }
        let d = match a.kind {
            LetterKind::Positive => 2,
            LetterKind::Negative => -2,
            _ => return Err(Error::NotDoubleCrossings(2 * b)),
        };
        blocks.push((a.index, d));
    }
    Ok(blocks)
}

/// The closed form `e + sum_u sign(u) U_u s_{k+1}^{s_{k+1}} U_{u+1}^{-1}`
/// built directly from the companion-word structure: `U_u` ascends through
/// the fused letters `s_i^{s_i}` selected by `u`, and the inverse word
/// descends through `s_i^{-s_i}` selected by `u+1`.
pub fn rhs_symbolic(spec: &MoveSpec, conv: SignConvention) -> FormalSum {
    let n = spec.strands();
    let k = spec.k;
    let mut sum = FormalSum::one(n, spec.o.clone());
    for u in UVector::all(k) {
        let mut letters = Vec::new();
        for i in 1..=k {
            if u.0[i - 1] {
                letters.push(fused(i, spec.s(i)));
            }
        }
        letters.push(fused(k + 1, spec.s(k + 1)));
        let flipped = u.flip();
        for i in (1..=k).rev() {
            if flipped.0[i - 1] {
                letters.push(fused(i, -spec.s(i)));
            }
        }
        sum.add_term(letters, theorem_sign(&u, spec, conv));
    }
    sum
}

fn fused(index: usize, sign: i64) -> BraidLetter {
    if sign > 0 {
        BraidLetter::singular_positive(index)
    } else {
        BraidLetter::singular_negative(index)
    }
}
