use std::collections::HashMap;

use num::bigint::BigInt;
use num::traits::One;

use crate::braid::{is_knot_closure, BraidWord, LetterKind};
use crate::error::{Error, Result};
use crate::invariants::laurent::LaurentPoly;

/// The Alexander polynomial of a knot closure, symmetrized so that
/// `D(t) = D(1/t)` and `D(1) = 1`.
///
/// Route: unreduced Burau product, quotient by the fixed vector
/// `(1,...,1)`, determinant of `Q - I`, exact division by
/// `1 + t + ... + t^(n-1)`, then the unit fix.
pub fn alexander(word: &BraidWord) -> Result<LaurentPoly> {
    if word.is_singular() {
        return Err(Error::SingularWord);
    }
    if !is_knot_closure(word)? {
        let comps = crate::braid::permutation_of(word)?.cycle_count();
        return Err(Error::NotKnot { components: comps });
    }
    let n = word.strands();
    let burau = burau_product(word);

    // Quotient action on Z[t]^n / (1,..,1): Q_ij = B_ij - B_nj.
    let mut q: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(); n - 1]; n - 1];
    for (i, row) in q.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = burau[i][j].sub(&burau[n - 1][j]);
        }
        let diag = row[i].sub(&LaurentPoly::one());
        row[i] = diag;
    }
    let det = determinant(&q);

    let mut cyclotomic_like = LaurentPoly::zero();
    for e in 0..n as i64 {
        cyclotomic_like.add_term(e, &BigInt::one());
    }
    let raw = det
        .divide_exact(&cyclotomic_like)
        .ok_or_else(|| Error::Dimension("Burau determinant not divisible".into()))?;

    symmetrize(raw)
}

fn symmetrize(p: LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Err(Error::Dimension("vanishing Alexander polynomial".into()));
    }
    let lo = p.min_exp().unwrap();
    let hi = p.max_exp().unwrap();
    if (lo + hi) % 2 != 0 {
        return Err(Error::Dimension("odd exponent span in Alexander polynomial".into()));
    }
    let mut centered = p.mul(&LaurentPoly::monomial(-(lo + hi) / 2, BigInt::one()));
    if !centered.is_palindromic() {
        return Err(Error::Dimension("Alexander polynomial failed to symmetrize".into()));
    }
    let at_one = centered.eval_one();
    if at_one == BigInt::from(-1) {
        centered = centered.neg();
    } else if !at_one.is_one() {
        return Err(Error::Dimension(format!("Alexander value at 1 is {}", at_one)));
    }
    Ok(centered)
}

/// The Conway polynomial in `z`, obtained from the symmetric Alexander
/// polynomial via `t + 1/t = z^2 + 2`. Knots give even polynomials with
/// constant term 1.
pub fn conway(word: &BraidWord) -> Result<LaurentPoly> {
    let delta = alexander(word)?;
    // delta = a_0 + sum_{i>0} a_i (t^i + t^-i); rewrite t^i + t^-i in
    // y = t + 1/t by u_0 = 2, u_1 = y, u_{i+1} = y u_i - u_{i-1}.
    let span = delta.max_exp().unwrap();
    let y = {
        let mut p = LaurentPoly::zero();
        p.add_term(2, &BigInt::one());
        p.add_term(0, &BigInt::from(2));
        p // z^2 + 2, already substituted
    };
    let mut pair_sums: Vec<LaurentPoly> = Vec::with_capacity(span as usize + 1);
    pair_sums.push(LaurentPoly::from_int(2));
    if span >= 1 {
        pair_sums.push(y.clone());
    }
    for i in 2..=span {
        let next = y.mul(&pair_sums[(i - 1) as usize]).sub(&pair_sums[(i - 2) as usize]);
        pair_sums.push(next);
    }
    let mut out = LaurentPoly::monomial(0, delta.coeff(0));
    for i in 1..=span {
        let a = delta.coeff(i);
        out = out.add(&pair_sums[i as usize].mul_monomial(0, &a));
    }
    Ok(out)
}

/// Unreduced Burau matrix of the word (product over letters in word order).
fn burau_product(word: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let n = word.strands();
    let mut m: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
        .collect();
    let t = LaurentPoly::variable();
    let t_inv = LaurentPoly::monomial(-1, BigInt::one());
    let one = LaurentPoly::one();
    for letter in word.letters() {
        let i = letter.index - 1;
        match letter.kind {
            LetterKind::Positive => {
                // col_i' = col_i (1-t) + col_{i+1}; col_{i+1}' = col_i t
                let one_minus_t = one.sub(&t);
                for row in m.iter_mut() {
                    let ci = row[i].clone();
                    let cj = row[i + 1].clone();
                    row[i] = ci.mul(&one_minus_t).add(&cj);
                    row[i + 1] = ci.mul(&t);
                }
            }
            LetterKind::Negative => {
                // col_i' = col_{i+1} t^-1; col_{i+1}' = col_i + col_{i+1}(1 - t^-1)
                let one_minus_tinv = one.sub(&t_inv);
                for row in m.iter_mut() {
                    let ci = row[i].clone();
                    let cj = row[i + 1].clone();
                    row[i] = cj.mul(&t_inv);
                    row[i + 1] = ci.add(&cj.mul(&one_minus_tinv));
                }
            }
            _ => unreachable!("checked non-singular"),
        }
    }
    m
}

/// Determinant by minor expansion with memoization on the column subset.
fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut memo: HashMap<u32, LaurentPoly> = HashMap::new();
    det_rec(m, n, (1u32 << n) - 1, &mut memo)
}

fn det_rec(m: &[Vec<LaurentPoly>], n: usize, cols: u32, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
    if cols == 0 {
        return LaurentPoly::one();
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let row = n - cols.count_ones() as usize;
    let mut acc = LaurentPoly::zero();
    let mut sign_flip = false;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        if !m[row][j].is_zero() {
            let sub = det_rec(m, n, cols & !(1 << j), memo);
            let term = m[row][j].mul(&sub);
            acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
        }
        sign_flip = !sign_flip;
    }
    memo.insert(cols, acc.clone());
    acc
}
