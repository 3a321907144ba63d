//! Property suites for the spec-level invariants of each module: the
//! boundary permutation, the singular calculus, the move constructions and
//! the invariant backends.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vassiliev::algebra::{
    desingularize, expand_word, key_reduce, multiply, rhs_symbolic, truncate, FormalSum,
};
use vassiliev::braid::{
    close, is_knot_closure, permutation_of, BraidLetter, BraidWord, LetterKind, Orientation,
};
use vassiliev::invariants::{bracket, conway, jones, Evaluator, InvariantId};
use vassiliev::moves::{bh_word, make_pair, rhs_terms, MoveSpec, SignConvention, WVariant};
use vassiliev::oracle::{bracket_state_sum, ConwaySkein};
use vassiliev::verify::{random_knot_word, random_word};

fn up(n: usize) -> Orientation {
    Orientation::upward(n)
}

fn arb_letter(n: usize) -> impl Strategy<Value = BraidLetter> {
    (1..n, 0..5u8).prop_map(|(i, kind)| match kind {
        0 => BraidLetter::positive(i),
        1 => BraidLetter::negative(i),
        2 => BraidLetter::singular(i),
        3 => BraidLetter::singular_positive(i),
        _ => BraidLetter::singular_negative(i),
    })
}

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(arb_letter(n), 0..max_len)
        .prop_map(move |letters| BraidWord::new(n, letters, up(n)).unwrap())
}

fn arb_plain_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n, prop::bool::ANY), 0..max_len).prop_map(move |pairs| {
        let letters = pairs
            .into_iter()
            .map(|(i, pos)| if pos { BraidLetter::positive(i) } else { BraidLetter::negative(i) })
            .collect();
        BraidWord::new(n, letters, up(n)).unwrap()
    })
}

proptest! {
    #[test]
    fn parse_render_round_trip(w in arb_word(5, 14)) {
        let back = BraidWord::parse(&w.render(), w.strands(), w.orientation().clone()).unwrap();
        prop_assert_eq!(back.letters(), w.letters());
    }

    #[test]
    fn phi_is_a_homomorphism_on_upward_words(
        a in arb_plain_word(5, 10),
        b in arb_plain_word(5, 10),
    ) {
        let ab = a.compose(&b).unwrap();
        let phi_a = permutation_of(&a).unwrap();
        let phi_b = permutation_of(&b).unwrap();
        // compose(a, b) maps through a first: phi(b) after phi(a).
        prop_assert_eq!(permutation_of(&ab).unwrap(), phi_a.then(&phi_b));
    }

    #[test]
    fn pure_bottom_preserves_phi(t in arb_plain_word(4, 10), seed in 0u64..1000) {
        // A pure bottom word leaves the boundary permutation of the top.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut letters = Vec::new();
        for _ in 0..rng.gen_range(0..4) {
            let i = rng.gen_range(1..4);
            // squares are pure
            letters.push(BraidLetter::positive(i));
            letters.push(BraidLetter::positive(i));
        }
        let bottom = BraidWord::new(4, letters, up(4)).unwrap();
        prop_assert!(permutation_of(&bottom).unwrap().is_identity());
        let composite = bottom.compose(&t).unwrap();
        prop_assert_eq!(
            permutation_of(&composite).unwrap(),
            permutation_of(&t).unwrap()
        );
    }

    #[test]
    fn key_reduce_is_idempotent_and_multiplication_confluent(
        a in arb_word(4, 6),
        b in arb_word(4, 6),
    ) {
        let sa = FormalSum::from_word(&a, 1);
        let sb = FormalSum::from_word(&b, 1);
        let joint = key_reduce(&multiply(&sa, &sb).unwrap());
        prop_assert_eq!(key_reduce(&joint), joint.clone(), "idempotence");
        let staged = key_reduce(&multiply(&key_reduce(&sa), &key_reduce(&sb)).unwrap());
        prop_assert_eq!(joint, staged, "reduction order through products");
    }
}

#[test]
fn knot_closure_iff_one_component_on_a_thousand_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(9001);
    for trial in 0..1000 {
        let n = rng.gen_range(2..=6usize);
        let len = rng.gen_range(0..=12usize);
        let w = random_word(&mut rng, n, &up(n), len);
        let knot = is_knot_closure(&w).unwrap();
        let diagram = close(&w).unwrap();
        assert_eq!(knot, diagram.components == 1, "trial {} word {}", trial, w);
    }
}

#[test]
fn birman_lin_expansion_telescopes_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4usize);
        let blocks = rng.gen_range(0..=5usize);
        let mut letters = Vec::new();
        for _ in 0..blocks {
            let i = rng.gen_range(1..n);
            let l = if rng.gen_bool(0.5) {
                BraidLetter::positive(i)
            } else {
                BraidLetter::negative(i)
            };
            letters.push(l);
            letters.push(l);
        }
        // Mixed orientations are the interesting case for the slot signs.
        let o_mask = rng.gen_range(0..1u32 << n);
        let o = Orientation::from_bits((0..n).map(|b| o_mask >> b & 1 == 1).collect());
        let w = BraidWord::new(n, letters, o.clone()).unwrap();
        let expanded = expand_word(&w, SignConvention::Additive, None).unwrap();
        let resolved = desingularize(&expanded);
        let expected = FormalSum::from_word(&w.free_reduce(), 1);
        assert_eq!(resolved, expected, "word {} o {}", w, o);
    }
}

#[test]
fn the_inner_product_of_the_move_word_collapses() {
    // BH factors as B1 * M * B1inv * N with M N expanding to the identity.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 1..=3usize {
        for _ in 0..8 {
            let d: Vec<i8> = (0..=k).map(|_| if rng.gen_bool(0.5) { 2 } else { -2 }).collect();
            let o_mask = rng.gen_range(0..1u32 << (k + 2));
            let o = Orientation::from_bits((0..k + 2).map(|b| o_mask >> b & 1 == 1).collect());
            let spec = MoveSpec::new(k, d, o.clone()).unwrap();
            let letters = bh_word(&spec).letters().to_vec();
            let m_blocks = 2 * k - 1;
            let m = &letters[2..2 + 2 * m_blocks];
            let n_part = &letters[2 + 2 * m_blocks + 2..];
            let mn: Vec<BraidLetter> = m.iter().chain(n_part.iter()).copied().collect();
            let w = BraidWord::new(k + 2, mn, o.clone()).unwrap();
            let expanded = expand_word(&w, SignConvention::Additive, None).unwrap();
            assert_eq!(
                expanded,
                FormalSum::one(k + 2, o.clone()),
                "k={} o={}",
                k,
                o
            );
        }
    }
}

#[test]
fn dropped_terms_evaluate_to_zero() {
    // Truncation soundness: everything the budget discards dies under the
    // invariants in range.
    let ev = Evaluator::new();
    let x = BraidWord::parse("s1 s2", 3, up(3)).unwrap();
    let spec = MoveSpec::new(1, vec![2, 2], up(3)).unwrap();
    let full = expand_word(&bh_word(&spec), SignConvention::Additive, None).unwrap();
    let kept = truncate(&full, Some(2));
    let mut checked = 0;
    for (term, _) in full.iter() {
        if term.singularities() <= 2 {
            continue;
        }
        let mut letters = term.letters().to_vec();
        letters.extend_from_slice(x.letters());
        let word = BraidWord::new(3, letters, up(3)).unwrap();
        for id in [InvariantId::C2, InvariantId::J2] {
            let v = ev.evaluate(id, &word).unwrap();
            assert!(v.is_zero(), "{} on dropped term {}", id, word);
        }
        checked += 1;
    }
    assert!(checked >= 3, "the full expansion must have over-budget terms");
    assert!(kept.term_count() < full.term_count());
}

#[test]
fn rhs_term_words_close_to_knots() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 1..=3usize {
        let n = k + 2;
        for _ in 0..10 {
            let d: Vec<i8> = (0..=k).map(|_| if rng.gen_bool(0.5) { 2 } else { -2 }).collect();
            let spec = MoveSpec::new(k, d, up(n)).unwrap();
            let x = random_knot_word(&mut rng, n, &up(n), 8, 5000).unwrap();
            let phi = permutation_of(&x).unwrap();
            for (_, w) in
                rhs_terms(&spec, &phi, &x, SignConvention::Additive, WVariant::Squared).unwrap()
            {
                assert!(is_knot_closure(&w).unwrap());
            }
        }
    }
}

#[test]
fn singular_rhs_matches_the_symbolic_sum_under_evaluation() {
    // Closing every term of the closed-form sum with x and evaluating must
    // give the same number as the singular-variant right-hand side.
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in 1..=2usize {
        let n = k + 2;
        let id = if k == 1 { InvariantId::C2 } else { InvariantId::J3 };
        for _ in 0..5 {
            let d: Vec<i8> = (0..=k).map(|_| if rng.gen_bool(0.5) { 2 } else { -2 }).collect();
            let spec = MoveSpec::new(k, d, up(n)).unwrap();
            let x = random_knot_word(&mut rng, n, &up(n), 6, 5000).unwrap();
            let phi = permutation_of(&x).unwrap();

            let mut symbolic_value = BigRational::zero();
            for (term, coeff) in rhs_symbolic(&spec, SignConvention::Additive).iter() {
                if term.singularities() == 0 {
                    continue; // the identity term belongs to the left side
                }
                let mut letters = term.letters().to_vec();
                letters.extend_from_slice(x.letters());
                let w = BraidWord::new(n, letters, up(n)).unwrap();
                symbolic_value += BigRational::from(BigInt::from(coeff)) * ev.evaluate(id, &w).unwrap();
            }

            let mut variant_value = BigRational::zero();
            for (sign, w) in
                rhs_terms(&spec, &phi, &x, SignConvention::Additive, WVariant::Singular).unwrap()
            {
                variant_value += BigRational::from(BigInt::from(sign)) * ev.evaluate(id, &w).unwrap();
            }
            assert_eq!(symbolic_value, variant_value, "k={} x={}", k, x);
        }
    }
}

#[test]
fn transfer_bracket_equals_state_sum_up_to_fourteen_crossings() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let n = rng.gen_range(2..=5usize);
        let len = rng.gen_range(0..=14usize);
        let w = random_word(&mut rng, n, &up(n), len);
        let fast = bracket(&w).unwrap();
        let brute = bracket_state_sum(&close(&w).unwrap());
        assert_eq!(fast, brute, "word {}", w);
    }
}

#[test]
fn skein_oracle_agrees_with_burau_conway() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut oracle = ConwaySkein::new();
    for _ in 0..30 {
        let n = rng.gen_range(2..=5usize);
        let w = random_knot_word(&mut rng, n, &up(n), 9, 5000).unwrap();
        assert_eq!(oracle.conway(&w), conway(&w).unwrap(), "word {}", w);
    }
}

#[test]
fn mirror_symmetries() {
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..25 {
        let n = rng.gen_range(2..=4usize);
        let w = random_knot_word(&mut rng, n, &up(n), 9, 5000).unwrap();
        let m = w.mirror();
        assert_eq!(
            ev.evaluate(InvariantId::C2, &w).unwrap(),
            ev.evaluate(InvariantId::C2, &m).unwrap(),
            "c2 is mirror invariant: {}",
            w
        );
        assert_eq!(
            ev.evaluate(InvariantId::J3, &w).unwrap(),
            -ev.evaluate(InvariantId::J3, &m).unwrap(),
            "j3 negates under mirror: {}",
            w
        );
        assert_eq!(
            jones(&w).unwrap().as_t().unwrap().invert_variable(),
            jones(&m).unwrap().as_t().unwrap(),
            "V(mirror) = V(1/t): {}",
            w
        );
    }
}

#[test]
fn frozen_invariant_values_beyond_degree_two() {
    // From V(trefoil closure of s1^3) = -t^-4 + t^-3 + t^-1:
    //   j3 = (64 - 27 - 1)/6 = 6,  j4 = (-256 + 81 + 1)/24 = -29/4.
    let ev = Evaluator::new();
    let trefoil = BraidWord::parse("s1^3", 2, up(2)).unwrap();
    assert_eq!(
        ev.evaluate(InvariantId::J3, &trefoil).unwrap(),
        BigRational::from(BigInt::from(6))
    );
    assert_eq!(
        ev.evaluate(InvariantId::J4, &trefoil).unwrap(),
        BigRational::new(BigInt::from(-29), BigInt::from(4))
    );

    // The (2,5) torus knot: conway = 1 + 3z^2 + z^4, so c2 = 3 and c4 = 1.
    let cinq = BraidWord::parse("s1^5", 2, up(2)).unwrap();
    let mut expected = vassiliev::invariants::LaurentPoly::one();
    expected.add_term(2, &BigInt::from(3));
    expected.add_term(4, &BigInt::from(1));
    assert_eq!(conway(&cinq).unwrap(), expected);
    assert_eq!(ev.evaluate(InvariantId::C4, &cinq).unwrap(), BigRational::from(BigInt::from(1)));
    assert_eq!(ev.evaluate(InvariantId::C2, &cinq).unwrap(), BigRational::from(BigInt::from(3)));

    // The figure eight is amphichiral, so every odd invariant vanishes.
    let fig8 = BraidWord::parse("s1 s2^-1 s1 s2^-1", 3, up(3)).unwrap();
    assert!(ev.evaluate(InvariantId::J3, &fig8).unwrap().is_zero());
}

#[test]
fn j2_is_minus_three_c2_on_the_corpus() {
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let minus_three = BigRational::from(BigInt::from(-3));
    for _ in 0..30 {
        let n = rng.gen_range(2..=4usize);
        let w = random_knot_word(&mut rng, n, &up(n), 9, 5000).unwrap();
        let c2 = ev.evaluate(InvariantId::C2, &w).unwrap();
        let j2 = ev.evaluate(InvariantId::J2, &w).unwrap();
        assert_eq!(j2, &minus_three * &c2, "word {}", w);
    }
}

#[test]
fn move_pairs_share_all_low_degree_values() {
    // A made pair always closes to knots with equal boundary permutations.
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for k in 1..=3usize {
        let n = k + 2;
        let d: Vec<i8> = (0..=k).map(|_| if rng.gen_bool(0.5) { 2 } else { -2 }).collect();
        let spec = MoveSpec::new(k, d, up(n)).unwrap();
        let t = random_knot_word(&mut rng, n, &up(n), 6, 20000).unwrap();
        let pair = make_pair(&spec, &t).unwrap();
        assert!(is_knot_closure(&pair.k_word).unwrap());
        assert!(is_knot_closure(&pair.j_word).unwrap());
        assert_eq!(
            permutation_of(&pair.k_word).unwrap(),
            permutation_of(&pair.j_word).unwrap()
        );
    }
}

#[test]
fn heaviest_desk_scale_case_two_blocks_of_order_two() {
    // Two side-by-side k=2 moves on 8 strands, evaluated with j3: the
    // largest configuration the budget admits.
    let ev = Evaluator::new();
    let o8 = up(8);
    let t = BraidWord::parse(
        "s7^-1 s5^-1 s4^-1 s3 s6^-1 s2^-1 s1^-1 s6 s3 s2^-1 s6^-1",
        8,
        o8.clone(),
    )
    .unwrap();
    assert!(is_knot_closure(&t).unwrap());
    let specs = vec![
        MoveSpec::new(2, vec![2, 2, 2], up(4)).unwrap(),
        MoveSpec::new(2, vec![2, -2, 2], up(4)).unwrap(),
    ];
    let r = vassiliev::verify::check_general(
        &ev,
        &specs,
        &o8,
        &t,
        &t,
        InvariantId::J3,
        SignConvention::Additive,
        false,
    )
    .unwrap();
    assert!(r.equal, "lhs {} rhs {}", r.lhs, r.rhs);
    assert_eq!(r.term_values.len(), 8);
}

#[test]
fn full_difference_formula_at_order_three() {
    // The largest single move: k = 3 on 5 strands with the degree-4
    // invariants, eight companion closures per side.
    let ev = Evaluator::new();
    let t = BraidWord::parse("s1 s2 s3 s4", 5, up(5)).unwrap();
    for d in [vec![2, 2, 2, 2], vec![2, -2, 2, -2], vec![-2, -2, -2, -2]] {
        let spec = MoveSpec::new(3, d.clone(), up(5)).unwrap();
        for id in [InvariantId::C4, InvariantId::J4] {
            let r = vassiliev::verify::check_theorem(
                &ev,
                &spec,
                &t,
                &t,
                id,
                SignConvention::Additive,
                false,
            )
            .unwrap();
            assert!(r.equal, "d={:?} id={}: lhs {} rhs {}", d, id, r.lhs, r.rhs);
            assert_eq!(r.term_values.len(), 8);
        }
    }
    // Nonzero on the all-positive move: the pair genuinely differs at
    // degree four.
    let spec = MoveSpec::new(3, vec![2, 2, 2, 2], up(5)).unwrap();
    let r = vassiliev::verify::check_theorem(
        &ev,
        &spec,
        &t,
        &t,
        InvariantId::J4,
        SignConvention::Additive,
        false,
    )
    .unwrap();
    assert_eq!(r.lhs, BigRational::from(BigInt::from(-12)));
}

#[test]
fn theorem_holds_with_all_strands_downward() {
    let ev = Evaluator::new();
    let o = Orientation::constant(3, true);
    let spec = MoveSpec::new(1, vec![2, 2], o.clone()).unwrap();
    let t = BraidWord::parse("s1 s2", 3, o).unwrap();
    let r = vassiliev::verify::check_theorem(
        &ev,
        &spec,
        &t,
        &t,
        InvariantId::C2,
        SignConvention::Additive,
        false,
    )
    .unwrap();
    assert!(r.equal);
    assert_eq!(r.lhs, BigRational::from(BigInt::from(1)));
}

#[test]
fn literal_unflipped_reversed_word_breaks_the_identity() {
    // The block formula as printed omits the flip on the reversed word; the
    // flipped reading is the one that verifies, and this case shows the
    // literal one failing.
    let ev = Evaluator::new();
    let spec = MoveSpec::new(1, vec![2, 2], up(3)).unwrap();
    let t = BraidWord::parse("s1 s2", 3, up(3)).unwrap();
    let literal = vassiliev::verify::check_general(
        &ev,
        std::slice::from_ref(&spec),
        &up(3),
        &t,
        &t,
        InvariantId::C2,
        SignConvention::Additive,
        true,
    )
    .unwrap();
    assert!(!literal.equal);
    assert_eq!(literal.lhs, BigRational::from(BigInt::from(1)));
    assert_eq!(literal.rhs, BigRational::from(BigInt::from(4)));
}

#[test]
fn downward_constant_orientation_gives_the_same_invariants() {
    // Reversing every strand reverses the closure's orientation, which no
    // implemented invariant sees.
    let ev_up = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..10 {
        let n = rng.gen_range(2..=4usize);
        let w = random_knot_word(&mut rng, n, &up(n), 8, 5000).unwrap();
        let down = BraidWord::new(n, w.letters().to_vec(), Orientation::constant(n, true)).unwrap();
        for id in [InvariantId::C2, InvariantId::J3] {
            assert_eq!(
                ev_up.evaluate(id, &w).unwrap(),
                ev_up.evaluate(id, &down).unwrap(),
                "word {}",
                w
            );
        }
    }
}

#[test]
fn singular_letter_normal_forms_are_fused() {
    // p1 parses to one letter and desingularizes like x1 s1.
    let fused = BraidWord::parse("p1", 2, up(2)).unwrap();
    let split = BraidWord::parse("x1 s1", 2, up(2)).unwrap();
    assert_eq!(fused.len(), 1);
    assert_eq!(fused.letters()[0].kind, LetterKind::SingularPositive);
    assert_eq!(
        desingularize(&FormalSum::from_word(&fused, 1)),
        desingularize(&FormalSum::from_word(&split, 1))
    );
}
