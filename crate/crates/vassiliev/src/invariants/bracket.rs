use std::collections::HashMap;

use num::bigint::BigInt;
use num::traits::One;

use crate::braid::{BraidWord, LetterKind, UnionFind};
use crate::error::{Error, Result};
use crate::invariants::laurent::LaurentPoly;

/// A planar pairing of the `2n` boundary points of a tangle: slots `0..n`
/// are the floor, `n..2n` the current ceiling, `pairing[s]` the partner.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Pairing(Vec<usize>);

impl Pairing {
    fn identity(n: usize) -> Self {
        Pairing((0..2 * n).map(|s| if s < n { s + n } else { s - n }).collect())
    }

    /// Caps ceiling positions `i, i+1` (1-based) and opens a fresh cup.
    /// Returns the new pairing and whether a closed loop split off.
    fn apply_cup_cap(&self, n: usize, i: usize) -> (Pairing, bool) {
        let a = n + i - 1;
        let b = n + i;
        let pa = self.0[a];
        if pa == b {
            return (self.clone(), true);
        }
        let pb = self.0[b];
        let mut v = self.0.clone();
        v[pa] = pb;
        v[pb] = pa;
        v[a] = b;
        v[b] = a;
        (Pairing(v), false)
    }

    /// Loop count after identifying floor `j` with ceiling `j`.
    fn closure_loops(&self, n: usize) -> usize {
        let mut uf = UnionFind::new(2 * n);
        for (s, &p) in self.0.iter().enumerate() {
            uf.union(s, p);
        }
        for j in 0..n {
            uf.union(j, n + j);
        }
        uf.class_count(2 * n)
    }
}

/// The loop value `delta = -A^2 - A^-2`.
pub fn loop_value() -> LaurentPoly {
    let mut d = LaurentPoly::zero();
    d.add_term(2, &BigInt::from(-1));
    d.add_term(-2, &BigInt::from(-1));
    d
}

/// The Kauffman bracket of the closure of a non-singular word, as a Laurent
/// polynomial in `A`, normalized so a single unknotted loop gives 1.
///
/// Evaluation transfers letter by letter through the planar pairings of the
/// strand count, so it is linear in word length and bounded by the Catalan
/// number of the strand count in width.
pub fn bracket(word: &BraidWord) -> Result<LaurentPoly> {
    if word.is_singular() {
        return Err(Error::SingularWord);
    }
    let n = word.strands();
    let delta = loop_value();
    let a_pos = LaurentPoly::monomial(1, BigInt::one());
    let a_neg = LaurentPoly::monomial(-1, BigInt::one());

    let mut states: HashMap<Pairing, LaurentPoly> = HashMap::new();
    states.insert(Pairing::identity(n), LaurentPoly::one());

    for letter in word.letters() {
        let (straight, capped) = match letter.kind {
            LetterKind::Positive => (&a_pos, &a_neg),
            LetterKind::Negative => (&a_neg, &a_pos),
            _ => unreachable!("checked non-singular"),
        };
        let mut next: HashMap<Pairing, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (pairing, coeff) in states {
            let straight_c = coeff.mul(straight);
            add_state(&mut next, pairing.clone(), straight_c);
            let (cupped, looped) = pairing.apply_cup_cap(n, letter.index);
            let mut capped_c = coeff.mul(capped);
            if looped {
                capped_c = capped_c.mul(&delta);
            }
            add_state(&mut next, cupped, capped_c);
        }
        states = next;
    }

    let mut out = LaurentPoly::zero();
    for (pairing, coeff) in states {
        let loops = pairing.closure_loops(n);
        out = out.add(&coeff.mul(&delta.pow(loops as u32 - 1)));
    }
    Ok(out)
}

fn add_state(map: &mut HashMap<Pairing, LaurentPoly>, key: Pairing, val: LaurentPoly) {
    match map.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&val);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            if !val.is_zero() {
                e.insert(val);
            }
        }
    }
}
