use rand::Rng;

use crate::braid::{is_knot_closure, permutation_of, BraidLetter, BraidWord, Orientation, Permutation};
use crate::error::{Error, Result};

/// A random word over plain crossings `s_i^{+-1}` of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, o: &Orientation, len: usize) -> BraidWord {
    let letters: Vec<BraidLetter> = (0..len)
        .map(|_| {
            let index = rng.gen_range(1..n);
            if rng.gen_bool(0.5) {
                BraidLetter::positive(index)
            } else {
                BraidLetter::negative(index)
            }
        })
        .collect();
    BraidWord::new(n, letters, o.clone()).expect("valid letters")
}

/// Rejection-samples a word whose closure is a knot. The letter count is
/// drawn from `[2, max_len]` with the parity forced to `n - 1` so a full
/// cycle is reachable.
pub fn random_knot_word<R: Rng>(
    rng: &mut R,
    n: usize,
    o: &Orientation,
    max_len: usize,
    tries: usize,
) -> Result<BraidWord> {
    for _ in 0..tries {
        let len = parity_len(rng, max_len, (n - 1) % 2);
        let w = random_word(rng, n, o, len);
        if matches!(is_knot_closure(&w), Ok(true)) {
            return Ok(w);
        }
    }
    Err(Error::Config(format!("no knot word found on {} strands in {} tries", n, tries)))
}

/// A random word with the given boundary permutation: a random prefix
/// followed by a correction word that sorts the walk onto the target, with
/// the crossing signs drawn at random (signs do not move strands).
///
/// The length stays within `max_len` when the target allows it; a
/// permutation with more inversions than `max_len` gets the shortest
/// realization instead.
pub fn random_word_with_phi<R: Rng>(
    rng: &mut R,
    n: usize,
    o: &Orientation,
    phi: &Permutation,
    max_len: usize,
    tries: usize,
) -> Result<BraidWord> {
    for attempt in 0..tries.max(1) {
        // Shrink the prefix budget as attempts fail; the last attempts use
        // the bare correction.
        let budget = max_len.saturating_sub(attempt * 2);
        let prefix_len = if budget == 0 { 0 } else { rng.gen_range(0..=budget) };
        let prefix = random_word(rng, n, o, prefix_len);
        let Ok(phi_prefix) = permutation_of(&prefix) else { continue };
        // Need: prefix followed by the correction lands on phi.
        let need = phi_prefix.inverse().then(phi);
        let mut letters = prefix.letters().to_vec();
        sort_onto(rng, &need, &mut letters);
        if letters.len() > max_len && attempt + 1 < tries.max(1) {
            continue;
        }
        let w = BraidWord::new(n, letters, o.clone()).expect("valid letters");
        if matches!(permutation_of(&w), Ok(p) if p == *phi) {
            return Ok(w);
        }
    }
    Err(Error::Config(format!("no word matching the target permutation in {} tries", tries)))
}

/// Appends adjacent exchanges realizing the permutation `need` (floor
/// position to ceiling position), signs chosen at random.
fn sort_onto<R: Rng>(rng: &mut R, need: &Permutation, letters: &mut Vec<BraidLetter>) {
    let n = need.len();
    // Target arrangement: position p must end up holding the strand that
    // maps to p.
    let target: Vec<usize> = (1..=n).map(|p| need.inverse().apply(p)).collect();
    let mut arr: Vec<usize> = (1..=n).collect();
    for (p, &want) in target.iter().enumerate() {
        let from = arr.iter().position(|&s| s == want).expect("bijection");
        for q in (p..from).rev() {
            // Swap positions q, q+1 (1-based letter index q+1).
            arr.swap(q, q + 1);
            letters.push(if rng.gen_bool(0.5) {
                BraidLetter::positive(q + 1)
            } else {
                BraidLetter::negative(q + 1)
            });
        }
    }
    debug_assert_eq!(arr, target);
}

fn parity_len<R: Rng>(rng: &mut R, max_len: usize, parity: usize) -> usize {
    let len = rng.gen_range(2..=max_len.max(3));
    if len % 2 == parity {
        len
    } else if len > 2 {
        len - 1
    } else {
        len + 1
    }
}

/// Greedily deletes letter pairs from a word while `still_failing` holds
/// and the boundary permutation is preserved. Used to minimize
/// counterexamples. Pairs, because removing a single crossing always flips
/// the permutation parity.
pub fn shrink_word<F>(word: &BraidWord, mut still_failing: F) -> BraidWord
where
    F: FnMut(&BraidWord) -> bool,
{
    let phi = match permutation_of(word) {
        Ok(p) => p,
        Err(_) => return word.clone(),
    };
    let mut current = word.clone();
    loop {
        let mut improved = false;
        'search: for a in 0..current.len() {
            for b in a + 1..current.len() {
                let letters: Vec<BraidLetter> = current
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != a && *i != b)
                    .map(|(_, &l)| l)
                    .collect();
                let candidate =
                    BraidWord::new(current.strands(), letters, current.orientation().clone())
                        .expect("subset of letters");
                if matches!(permutation_of(&candidate), Ok(p) if p == phi)
                    && still_failing(&candidate)
                {
                    current = candidate;
                    improved = true;
                    break 'search;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn knot_words_close_to_knots() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let o = Orientation::upward(4);
        for _ in 0..20 {
            let w = random_knot_word(&mut rng, 4, &o, 10, 500).unwrap();
            assert!(is_knot_closure(&w).unwrap());
        }
    }

    #[test]
    fn phi_matching_words_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let o = Orientation::upward(3);
        let t = BraidWord::parse("s1 s2", 3, o.clone()).unwrap();
        let phi = permutation_of(&t).unwrap();
        for _ in 0..10 {
            let x = random_word_with_phi(&mut rng, 3, &o, &phi, 12, 2000).unwrap();
            assert_eq!(permutation_of(&x).unwrap(), phi);
        }
    }

    #[test]
    fn shrinking_preserves_phi_and_failure() {
        let o = Orientation::upward(3);
        let w = BraidWord::parse("s1 s1^-1 s1 s2 s2 s2^-1", 3, o).unwrap();
        let phi = permutation_of(&w).unwrap();
        // "Failure": word still contains at least one s1.
        let shrunk = shrink_word(&w, |c| c.letters().iter().any(|l| l.index == 1));
        assert!(shrunk.len() < w.len());
        assert_eq!(permutation_of(&shrunk).unwrap(), phi);
    }
}
