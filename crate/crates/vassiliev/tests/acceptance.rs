//! Acceptance suite: one test per criterion, every comparison exact.
//!
//! Values marked as frozen were computed first with the independent oracles
//! (the 2^c state sum and the skein recursion) and are asserted against both
//! the oracle and the production path.

use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vassiliev::algebra::{desingularize, FormalSum};
use vassiliev::braid::{close, is_knot_closure, permutation_of, BraidLetter, BraidWord, Orientation};
use vassiliev::invariants::{bracket, conway, jones, Evaluator, InvariantId};
use vassiliev::moves::{MoveSpec, SignConvention};
use vassiliev::oracle::{bracket_state_sum, ConwaySkein};
use vassiliev::verify::{
    check_c_equivalence, check_general, check_symbolic, check_theorem, check_x_independence,
    random_knot_word, random_word_with_phi,
};

fn up(n: usize) -> Orientation {
    Orientation::upward(n)
}

fn word(text: &str, n: usize) -> BraidWord {
    BraidWord::parse(text, n, up(n)).unwrap()
}

fn all_d(k: usize) -> Vec<Vec<i8>> {
    (0u32..1 << (k + 1))
        .map(|mask| (0..=k).map(|i| if mask >> i & 1 == 1 { 2 } else { -2 }).collect())
        .collect()
}

fn rat(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

#[test]
fn criterion_1_symbolic_identity() {
    let start = Instant::now();
    for k in 1..=3usize {
        for d in all_d(k) {
            let spec = MoveSpec::new(k, d.clone(), up(k + 2)).unwrap();
            let report = check_symbolic(&spec, SignConvention::Additive).unwrap();
            assert!(report.equal, "k={} d={:?}: {} vs {}", k, d, report.expanded, report.closed_form);
        }
    }
    let allplus = MoveSpec::new(1, vec![2, 2], up(3)).unwrap();
    let report = check_symbolic(&allplus, SignConvention::Additive).unwrap();
    assert!(report.termwise);
    assert_eq!(report.expanded, "e + p1 p2 - p2 m1", "the worked sum, letter for letter");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {:?}", elapsed);
    println!("acceptance criterion 1 (symbolic identity, k<=3, all d): PASS in {:?}", elapsed);
}

#[test]
fn criterion_2_sign_convention_oracle() {
    let mut survivors = Vec::new();
    for conv in [SignConvention::Additive, SignConvention::Multiplicative] {
        let mut all_hold = true;
        for k in 1..=2usize {
            for d in all_d(k) {
                for o in Orientation::all(k + 2) {
                    let spec = MoveSpec::new(k, d.clone(), o).unwrap();
                    if !check_symbolic(&spec, conv).unwrap().equal {
                        all_hold = false;
                    }
                }
            }
        }
        if all_hold {
            survivors.push(conv);
        }
    }
    assert_eq!(survivors, vec![SignConvention::Additive], "exactly one convention survives");
    println!(
        "acceptance criterion 2 (sign-convention oracle over all orientations): PASS, shipped default = {}",
        survivors[0]
    );
}

#[test]
fn criterion_3_numeric_theorem() {
    let start = Instant::now();
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);

    // k = 1 on 3 strands with c2 and j2, 50 seeded cases.
    let d1 = all_d(1);
    for case in 0..50 {
        let spec = MoveSpec::new(1, d1[case % d1.len()].clone(), up(3)).unwrap();
        let t = random_knot_word(&mut rng, 3, &up(3), 8, 5000).unwrap();
        let phi = permutation_of(&t).unwrap();
        let x = random_word_with_phi(&mut rng, 3, &up(3), &phi, 12, 5000).unwrap();
        for id in [InvariantId::C2, InvariantId::J2] {
            let r = check_theorem(&ev, &spec, &t, &x, id, SignConvention::Additive, false).unwrap();
            assert!(r.equal, "k=1 case {} id {}: lhs {} rhs {}", case, id, r.lhs, r.rhs);
            let s = check_theorem(&ev, &spec, &t, &x, id, SignConvention::Additive, true).unwrap();
            assert!(s.equal && s.rhs == r.rhs, "singular-letter variant must agree");
        }
    }

    // k = 2 on 4 strands with j3, plus c2 as the degree-2 null check.
    let d2 = all_d(2);
    for case in 0..20 {
        let spec = MoveSpec::new(2, d2[case % d2.len()].clone(), up(4)).unwrap();
        let t = random_knot_word(&mut rng, 4, &up(4), 8, 5000).unwrap();
        let phi = permutation_of(&t).unwrap();
        let x = random_word_with_phi(&mut rng, 4, &up(4), &phi, 12, 5000).unwrap();
        let r = check_theorem(&ev, &spec, &t, &x, InvariantId::J3, SignConvention::Additive, false)
            .unwrap();
        assert!(r.equal, "k=2 case {} j3: lhs {} rhs {}", case, r.lhs, r.rhs);
        let null =
            check_theorem(&ev, &spec, &t, &x, InvariantId::C2, SignConvention::Additive, false)
                .unwrap();
        assert!(null.equal, "k=2 case {} c2 null: lhs {} rhs {}", case, null.lhs, null.rhs);
        assert!(null.lhs.is_zero(), "degree-2 invariants agree across a C_3 move");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {:?}", elapsed);
    println!(
        "acceptance criterion 3 (numeric difference formula, 50 k=1 + 20 k=2 cases): PASS in {:?}",
        elapsed
    );
}

#[test]
fn criterion_4_block_formula_two_blocks() {
    let start = Instant::now();
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let o6 = up(6);
    let d1 = all_d(1);
    for case in 0..10 {
        let specs = vec![
            MoveSpec::new(1, d1[case % d1.len()].clone(), up(3)).unwrap(),
            MoveSpec::new(1, d1[(case / d1.len()) % d1.len()].clone(), up(3)).unwrap(),
        ];
        let t = random_knot_word(&mut rng, 6, &o6, 12, 20000).unwrap();
        let phi = permutation_of(&t).unwrap();
        let x = random_word_with_phi(&mut rng, 6, &o6, &phi, 12, 20000).unwrap();
        let r = check_general(
            &ev,
            &specs,
            &o6,
            &t,
            &x,
            InvariantId::C2,
            SignConvention::Additive,
            false,
        )
        .unwrap();
        assert!(r.equal, "block case {}: lhs {} rhs {}", case, r.lhs, r.rhs);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {:?}", elapsed);
    println!("acceptance criterion 4 (two-block formula on 6 strands, c2): PASS in {:?}", elapsed);
}

#[test]
fn criterion_5_x_independence() {
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let d1 = all_d(1);
    for case in 0..10 {
        let spec = MoveSpec::new(1, d1[case % d1.len()].clone(), up(3)).unwrap();
        let t = random_knot_word(&mut rng, 3, &up(3), 8, 5000).unwrap();
        let phi = permutation_of(&t).unwrap();
        let mut xs = vec![t.clone()];
        let mut guard = 0;
        while xs.len() < 3 && guard < 500 {
            guard += 1;
            let x = random_word_with_phi(&mut rng, 3, &up(3), &phi, 12, 5000).unwrap();
            if xs.iter().all(|y| y != &x) {
                xs.push(x);
            }
        }
        assert!(xs.len() >= 3, "need three distinct x words");
        let id = if case % 2 == 0 { InvariantId::C2 } else { InvariantId::J2 };
        let r = check_x_independence(&ev, &spec, &t, &xs, id, SignConvention::Additive).unwrap();
        assert!(r.independent, "case {}: rhs values {:?}", case, r.rhs_values);
    }
    println!("acceptance criterion 5 (right side independent of x, 10 cases x 3 words): PASS");
}

#[test]
fn criterion_6_c_equivalence_consistency() {
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let d2 = all_d(2);
    for case in 0..10 {
        let spec = MoveSpec::new(2, d2[case % d2.len()].clone(), up(4)).unwrap();
        let t = random_knot_word(&mut rng, 4, &up(4), 6, 20000).unwrap();
        assert!(check_c_equivalence(&ev, &spec, &t, InvariantId::C2).unwrap(), "k=2 case {}", case);
    }
    let d3 = all_d(3);
    for case in 0..10 {
        let spec = MoveSpec::new(3, d3[case % d3.len()].clone(), up(5)).unwrap();
        let t = random_knot_word(&mut rng, 5, &up(5), 6, 20000).unwrap();
        for id in [InvariantId::C2, InvariantId::J3] {
            assert!(
                check_c_equivalence(&ev, &spec, &t, id).unwrap(),
                "k=3 case {} id {}",
                case,
                id
            );
        }
    }
    println!("acceptance criterion 6 (equivalence consistency, 10 k=2 + 10 k=3 pairs): PASS");
}

#[test]
fn criterion_7_invariant_backend_sanity() {
    let ev = Evaluator::new();
    let unknot = word("s1", 2);
    let trefoil = word("s1^3", 2);
    let fig8 = word("s1 s2^-1 s1 s2^-1", 3);

    // Oracle side first: the skein recursion fixes the Conway values and the
    // state sum fixes the bracket that feeds Jones.
    let mut skein = ConwaySkein::new();
    let tre_conway = skein.conway(&trefoil);
    assert_eq!(tre_conway.coeff(2), BigInt::from(1));
    assert_eq!(tre_conway.coeff(0), BigInt::from(1));
    let fig_conway = skein.conway(&fig8);
    assert_eq!(fig_conway.coeff(2), BigInt::from(-1));
    assert_eq!(bracket(&trefoil).unwrap(), bracket_state_sum(&close(&trefoil).unwrap()));

    // Frozen values on the production path.
    assert_eq!(ev.evaluate(InvariantId::C2, &unknot).unwrap(), rat(0));
    assert_eq!(ev.evaluate(InvariantId::C2, &trefoil).unwrap(), rat(1));
    assert_eq!(ev.evaluate(InvariantId::C2, &fig8).unwrap(), rat(-1));
    assert_eq!(conway(&trefoil).unwrap(), tre_conway);
    assert_eq!(conway(&trefoil).unwrap().display("z"), "1 + z^2");
    assert_eq!(jones(&trefoil).unwrap().to_string(), "-t^-4 + t^-3 + t^-1");

    // V(1) = 1 and C(0) = 1 across a corpus of knot closures.
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut corpus: Vec<BraidWord> = vec![unknot, trefoil, fig8];
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        corpus.push(random_knot_word(&mut rng, n, &up(n), 10, 5000).unwrap());
    }
    for w in &corpus {
        assert_eq!(jones(w).unwrap().eval_one(), BigInt::from(1), "V(1) for {}", w);
        assert_eq!(conway(w).unwrap().coeff(0), BigInt::from(1), "C(0) for {}", w);
    }
    println!("acceptance criterion 7 (backend sanity, oracle-frozen values): PASS");
}

#[test]
fn criterion_8_finite_type_vanishing() {
    let ev = Evaluator::new();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let singular_kinds = [
        |i: usize| BraidLetter::singular(i),
        |i: usize| BraidLetter::singular_positive(i),
        |i: usize| BraidLetter::singular_negative(i),
    ];
    for id in InvariantId::ALL {
        let needed = id.degree() + 1;
        let mut done = 0;
        while done < 100 {
            let n = rng.gen_range(3..=4usize);
            let mut letters: Vec<BraidLetter> = Vec::new();
            for _ in 0..needed {
                let make = singular_kinds[rng.gen_range(0..singular_kinds.len())];
                letters.push(make(rng.gen_range(1..n)));
            }
            for _ in 0..rng.gen_range(0..4usize) {
                let i = rng.gen_range(1..n);
                letters.push(if rng.gen_bool(0.5) {
                    BraidLetter::positive(i)
                } else {
                    BraidLetter::negative(i)
                });
            }
            letters.shuffle(&mut rng);
            let base = BraidWord::new(n, letters, up(n)).unwrap();
            // Complete to a knot closure. All resolutions of the singular
            // letters induce the same walk, so one probe resolution fixes
            // the permutation the completion must hit.
            let resolved = desingularize(&FormalSum::from_word(&base, 1));
            let probe = resolved.iter().next().map(|(t, _)| resolved.term_word(t));
            let Some(probe) = probe else { continue };
            let Ok(phi) = permutation_of(&probe) else { continue };
            let cycle =
                vassiliev::braid::Permutation::from_images((1..=n).map(|i| i % n + 1).collect())
                    .unwrap();
            let target = phi.inverse().then(&cycle);
            let Ok(tail) = random_word_with_phi(&mut rng, n, &up(n), &target, 8, 300) else {
                continue;
            };
            let mut full_letters = base.letters().to_vec();
            full_letters.extend_from_slice(tail.letters());
            let full = BraidWord::new(n, full_letters, up(n)).unwrap();
            assert_eq!(is_knot_closure_of_resolutions(&full), Some(true));
            let value = ev.evaluate(id, &full).unwrap();
            assert!(
                value.is_zero(),
                "{} on {} double points: {} ({})",
                id,
                needed,
                value,
                full
            );
            done += 1;
        }
    }
    println!("acceptance criterion 8 (vanishing past the degree, 100 words per invariant): PASS");
}

fn is_knot_closure_of_resolutions(w: &BraidWord) -> Option<bool> {
    let resolved = desingularize(&FormalSum::from_word(w, 1));
    let (term, _) = resolved.iter().next()?;
    is_knot_closure(&resolved.term_word(term)).ok()
}

#[test]
fn criterion_9_markov_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for trial in 0..500 {
        let n = rng.gen_range(2..=4usize);
        let w = random_knot_word(&mut rng, n, &up(n), 8, 5000).unwrap();
        let v = jones(&w).unwrap();
        let c = conway(&w).unwrap();
        if trial % 2 == 0 {
            // Conjugation by a random word.
            let glen = rng.gen_range(1..=3);
            let g = vassiliev::verify::random_word(&mut rng, n, &up(n), glen);
            let moved = g.compose(&w).unwrap().compose(&g.inverse().unwrap()).unwrap();
            assert_eq!(jones(&moved).unwrap(), v, "conjugation, trial {}", trial);
            assert_eq!(conway(&moved).unwrap(), c, "conjugation, trial {}", trial);
        } else {
            // Stabilization on a fresh strand.
            let mut letters = w.letters().to_vec();
            letters.push(if rng.gen_bool(0.5) {
                BraidLetter::positive(n)
            } else {
                BraidLetter::negative(n)
            });
            let stabilized = BraidWord::new(n + 1, letters, up(n + 1)).unwrap();
            assert_eq!(jones(&stabilized).unwrap(), v, "stabilization, trial {}", trial);
            assert_eq!(conway(&stabilized).unwrap(), c, "stabilization, trial {}", trial);
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance criterion 9 (500 Markov move trials): PASS in {:?}", elapsed);
}

#[test]
fn sweep_exposes_boundedness_and_the_selected_convention() {
    let config = vassiliev::verify::SweepConfig {
        k1_cases: 5,
        k2_cases: 2,
        general_cases: 2,
        xindep_cases: 2,
        cequiv_cases: 2,
        ..Default::default()
    };
    let report = vassiliev::verify::run_sweep(&config).unwrap();
    assert!(report.all_passed());
    assert_eq!(report.convention.as_deref(), Some("additive"));
    assert!(report.boundedness.iter().any(|b| b.radius == 1));
    assert!(report.boundedness.iter().any(|b| b.radius == 2));
    println!("sweep boundedness records: {:?}", report.boundedness);
}
