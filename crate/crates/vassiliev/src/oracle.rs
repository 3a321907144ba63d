//! Reference evaluators kept deliberately independent of the production
//! paths: a `2^c` state sum over closed diagrams for the bracket, and a
//! skein recursion on braid words for the Conway polynomial. The fast
//! transfer and Burau routes are validated against these on small cases.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::traits::One;

use crate::braid::{BraidWord, LetterKind, LinkDiagram, UnionFind};
use crate::invariants::{loop_value, LaurentPoly};

/// Kauffman bracket by full state enumeration over the diagram's crossings.
///
/// For a crossing whose bottom-left strand passes over, the `A` smoothing is
/// the vertical one (`bl-tl`, `br-tr`); otherwise it is the horizontal one.
/// Loops are counted by union-find over the diagram's arcs, free loops
/// included, and the result is normalized so one loop gives 1.
pub fn bracket_state_sum(diagram: &LinkDiagram) -> LaurentPoly {
    let c = diagram.crossings.len();
    assert!(c <= 24, "state sum is for small diagrams");
    let delta = loop_value();
    let arc_count = diagram.arcs.len();
    let mut out = LaurentPoly::zero();
    for state in 0u64..1 << c {
        let mut uf = UnionFind::new(arc_count);
        let mut a_exponent: i64 = 0;
        for (ci, crossing) in diagram.crossings.iter().enumerate() {
            let pick_a = state >> ci & 1 == 0;
            a_exponent += if pick_a { 1 } else { -1 };
            let [bl, br, tr, tl] = crossing.arcs;
            let vertical = pick_a == crossing.over_from_left;
            if vertical {
                uf.union(bl, tl);
                uf.union(br, tr);
            } else {
                uf.union(bl, br);
                uf.union(tl, tr);
            }
        }
        let loops = uf.class_count(arc_count);
        let term = delta.pow(loops as u32 - 1).mul_monomial(a_exponent, &BigInt::one());
        out = out.add(&term);
    }
    out
}

/// Conway polynomial by skein recursion on braid words.
///
/// Crossing switches stay inside the word (flip a letter), oriented
/// smoothings delete a letter, and the recursion bottoms out on descending
/// closures, which are unlinks. Words are freely reduced at every step.
pub struct ConwaySkein {
    memo: HashMap<(usize, Vec<(usize, bool)>), LaurentPoly>,
}

impl Default for ConwaySkein {
    fn default() -> Self {
        ConwaySkein::new()
    }
}

impl ConwaySkein {
    pub fn new() -> Self {
        ConwaySkein { memo: HashMap::new() }
    }

    pub fn conway(&mut self, word: &BraidWord) -> LaurentPoly {
        assert!(!word.is_singular(), "skein oracle takes plain words");
        assert!(word.orientation().is_constant(), "skein oracle takes constant orientation");
        let reduced = word.free_reduce();
        let key = (
            reduced.strands(),
            reduced.letters().iter().map(|l| (l.index, l.kind == LetterKind::Positive)).collect(),
        );
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = self.conway_uncached(&reduced);
        self.memo.insert(key, value.clone());
        value
    }

    fn conway_uncached(&mut self, word: &BraidWord) -> LaurentPoly {
        match first_bad_crossing(word) {
            None => {
                // Descending closure: an unlink.
                let components =
                    crate::braid::permutation_of(word).expect("plain word").cycle_count();
                if components == 1 {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                }
            }
            Some(pos) => {
                let positive = word.letters()[pos].kind == LetterKind::Positive;
                let mut switched_letters = word.letters().to_vec();
                switched_letters[pos] = switched_letters[pos].mirror();
                let switched = BraidWord::new(
                    word.strands(),
                    switched_letters,
                    word.orientation().clone(),
                )
                .expect("same shape");
                let mut smoothed_letters = word.letters().to_vec();
                smoothed_letters.remove(pos);
                let smoothed = BraidWord::new(
                    word.strands(),
                    smoothed_letters,
                    word.orientation().clone(),
                )
                .expect("same shape");

                let s = self.conway(&switched);
                let z0 = self.conway(&smoothed).mul_monomial(1, &BigInt::one());
                // C(L+) - C(L-) = z C(L0)
                if positive {
                    s.add(&z0)
                } else {
                    s.sub(&z0)
                }
            }
        }
    }
}

/// Walks the closure component by component (ordered by smallest strand,
/// each from its floor point) and reports the first crossing whose first
/// encounter runs under. `None` means the diagram is descending.
fn first_bad_crossing(word: &BraidWord) -> Option<usize> {
    let n = word.strands();
    let letters = word.letters();
    // Strand occupying each position before each letter.
    let arrangements = word.arrangements();
    let final_arr = &arrangements[letters.len()];
    let mut strand_end = vec![0usize; n + 1];
    for (pos0, &s) in final_arr.iter().enumerate() {
        strand_end[s] = pos0 + 1;
    }

    // Passes of each strand through the word, in letter order.
    let mut first_seen: Vec<Option<bool>> = vec![None; letters.len()];
    let mut visited = vec![false; n + 1];
    for start in 1..=n {
        if visited[start] {
            continue;
        }
        // Walk one closure component.
        let mut strand = start;
        loop {
            visited[strand] = true;
            let mut pos = strand; // floor position of this strand
            for (idx, letter) in letters.iter().enumerate() {
                let arr = &arrangements[idx];
                let i = letter.index;
                if arr[i - 1] == strand && pos == i {
                    // Left pass: over iff the letter is positive.
                    if first_seen[idx].is_none() {
                        first_seen[idx] = Some(letter.kind == LetterKind::Positive);
                    }
                    pos = i + 1;
                } else if arr[i] == strand && pos == i + 1 {
                    if first_seen[idx].is_none() {
                        first_seen[idx] = Some(letter.kind != LetterKind::Positive);
                    }
                    pos = i;
                }
            }
            debug_assert_eq!(pos, strand_end[strand]);
            strand = pos; // closure: ceiling j glues to floor j
            if strand == start {
                break;
            }
        }
    }
    first_seen.iter().position(|seen| *seen == Some(false))
}
