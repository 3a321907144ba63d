use crate::algebra::FormalSum;
use crate::braid::{BraidLetter, BraidWord, LetterKind};

/// Resolves every double point by the crossing difference: a double point
/// between an upward and a downward strand is the negative crossing minus
/// the positive one, so each resolution carries the slot's geometric sign.
/// Resolved words are freely reduced; the result has no singular letters.
///
/// Both branches of a resolution exchange the two strands, so the
/// arrangement walk is branch-independent and can be computed once.
pub fn desingularize(s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero(s.strands(), s.orientation().clone());
    for (term, coeff) in s.iter() {
        let word = s.term_word(term);
        desingularize_word(&word, coeff, &mut out);
    }
    out
}

fn desingularize_word(word: &BraidWord, coeff: i64, out: &mut FormalSum) {
    let o = word.orientation();
    let mut branches: Vec<(Vec<BraidLetter>, i64)> = vec![(Vec::new(), coeff)];
    let mut arr: Vec<usize> = (1..=word.strands()).collect();
    for l in word.letters() {
        let i = l.index;
        match l.kind {
            LetterKind::Positive | LetterKind::Negative => {
                for (letters, _) in &mut branches {
                    letters.push(*l);
                }
            }
            kind => {
                let t: i64 = if o.bit(arr[i - 1]) ^ o.bit(arr[i]) { -1 } else { 1 };
                let tail: &[BraidLetter] = match kind {
                    LetterKind::Singular => &[],
                    LetterKind::SingularPositive => &[BraidLetter { index: i, kind: LetterKind::Positive }],
                    LetterKind::SingularNegative => &[BraidLetter { index: i, kind: LetterKind::Negative }],
                    _ => unreachable!(),
                };
                let mut next = Vec::with_capacity(branches.len() * 2);
                for (letters, c) in branches {
                    let mut plus = letters.clone();
                    plus.push(BraidLetter::positive(i));
                    plus.extend_from_slice(tail);
                    let mut minus = letters;
                    minus.push(BraidLetter::negative(i));
                    minus.extend_from_slice(tail);
                    next.push((plus, c * t));
                    next.push((minus, -c * t));
                }
                branches = next;
            }
        }
        if l.kind.swaps() {
            arr.swap(i - 1, i);
        }
    }
    for (letters, c) in branches {
        let w = BraidWord::new(word.strands(), letters, o.clone()).expect("same strands");
        out.add_term(w.free_reduce().letters().to_vec(), c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Orientation;

    fn word(text: &str, n: usize, o: &str) -> BraidWord {
        BraidWord::parse(text, n, Orientation::parse(o).unwrap()).unwrap()
    }

    #[test]
    fn bare_double_point_resolves_to_the_crossing_difference() {
        let s = FormalSum::from_word(&word("x1", 2, "00"), 1);
        assert_eq!(desingularize(&s).to_string(), "s1 - s1^-1");
    }

    #[test]
    fn fused_positive_resolves_with_free_reduction() {
        let s = FormalSum::from_word(&word("p1", 2, "00"), 1);
        assert_eq!(desingularize(&s).to_string(), "- e + s1^2");
    }

    #[test]
    fn identity_is_fixed() {
        let s = FormalSum::one(3, Orientation::upward(3));
        assert_eq!(desingularize(&s), s);
    }

    #[test]
    fn downward_slot_flips_the_resolution() {
        // Both strands of x1 downward: sign unchanged; one downward: flipped.
        let s = FormalSum::from_word(&word("x1", 2, "11"), 1);
        assert_eq!(desingularize(&s).to_string(), "s1 - s1^-1");
        let s = FormalSum::from_word(&word("x1", 2, "01"), 1);
        assert_eq!(desingularize(&s).to_string(), "- s1 + s1^-1");
    }

    #[test]
    fn result_is_never_singular() {
        let s = FormalSum::from_word(&word("p1 x2 m1 s1 x1", 3, "000"), 3);
        let d = desingularize(&s);
        for (t, _) in d.iter() {
            assert_eq!(t.singularities(), 0);
        }
    }
}
