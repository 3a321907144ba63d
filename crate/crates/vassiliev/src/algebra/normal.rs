use crate::algebra::FormalSum;
use crate::braid::{BraidLetter, LetterKind, Orientation};

/// Canonical form of a sum in the module of singular-word values truncated
/// at `max_sing` double points.
///
/// Two sums with the same normal form take the same value under every
/// invariant whose extension kills more than `max_sing` double points. The
/// moves used are exactly the sound ones:
///
/// - fused letters split into an explicit double point and a crossing;
/// - a negative crossing rewrites through the crossing difference,
///   `W s_i^-1 = W s_i - (sign) W x_i`, raising the double point count on
///   the second branch;
/// - terms past the budget are dropped;
/// - at the budget, crossings can be changed at will, so adjacent plain
///   crossings of equal index cancel;
/// - letters of far index commute, as does a double point with its own
///   crossing, and words sort to the least representative.
pub fn bl_normal_form(s: &FormalSum, max_sing: usize) -> FormalSum {
    let strands = s.strands();
    let o = s.orientation().clone();
    let mut out = FormalSum::zero(strands, o.clone());
    for (term, coeff) in s.iter() {
        let mut letters = Vec::with_capacity(term.letters().len() * 2);
        for l in term.letters() {
            match l.kind {
                LetterKind::SingularPositive => {
                    letters.push(BraidLetter::singular(l.index));
                    letters.push(BraidLetter::positive(l.index));
                }
                LetterKind::SingularNegative => {
                    letters.push(BraidLetter::singular(l.index));
                    letters.push(BraidLetter::negative(l.index));
                }
                _ => letters.push(*l),
            }
        }
        normalize_split_word(letters, coeff, strands, &o, max_sing, &mut out);
    }
    out
}

fn far(a: usize, b: usize) -> bool {
    a + 1 < b || b + 1 < a
}

fn swappable(a: BraidLetter, b: BraidLetter) -> bool {
    far(a.index, b.index)
        || (a.index == b.index
            && (a.kind == LetterKind::Singular || b.kind == LetterKind::Singular))
}

fn plain(kind: LetterKind) -> bool {
    matches!(kind, LetterKind::Positive | LetterKind::Negative)
}

fn normalize_split_word(
    letters: Vec<BraidLetter>,
    coeff: i64,
    strands: usize,
    o: &Orientation,
    max: usize,
    out: &mut FormalSum,
) {
    let mut stack = vec![(letters, coeff)];
    'terms: while let Some((mut w, c)) = stack.pop() {
        let sing = w.iter().filter(|l| l.kind == LetterKind::Singular).count();
        if sing > max {
            continue;
        }
        // Commutation sort and free cancellation to a fixpoint.
        loop {
            let mut changed = false;
            let mut j = 0;
            while j + 1 < w.len() {
                let (a, b) = (w[j], w[j + 1]);
                let inverse_pair = a.index == b.index
                    && plain(a.kind)
                    && plain(b.kind)
                    && a.kind != b.kind;
                if inverse_pair {
                    w.drain(j..j + 2);
                    changed = true;
                    j = j.saturating_sub(1);
                    continue;
                }
                if swappable(a, b) && b < a {
                    w.swap(j, j + 1);
                    changed = true;
                }
                j += 1;
            }
            if !changed {
                break;
            }
        }
        // At the budget every crossing change is free, so equal-index plain
        // neighbours annihilate.
        if sing == max {
            for j in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[j], w[j + 1]);
                if a.index == b.index && plain(a.kind) && plain(b.kind) {
                    w.drain(j..j + 2);
                    stack.push((w, c));
                    continue 'terms;
                }
            }
        }
        // Resolve the leftmost negative crossing.
        for (pos, l) in w.iter().enumerate() {
            if l.kind == LetterKind::Negative {
                let i = l.index;
                let mut arr: Vec<usize> = (1..=strands).collect();
                for prior in &w[..pos] {
                    arr.swap(prior.index - 1, prior.index);
                }
                let t: i64 = if o.bit(arr[i - 1]) ^ o.bit(arr[i]) { -1 } else { 1 };
                let mut positive = w.clone();
                positive[pos] = BraidLetter::positive(i);
                let mut singular = w;
                singular[pos] = BraidLetter::singular(i);
                stack.push((positive, c));
                stack.push((singular, -c * t));
                continue 'terms;
            }
        }
        out.add_term(w, c);
    }
}
