use std::fmt;

use num::bigint::BigInt;

use crate::braid::{close, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::bracket::bracket;
use crate::invariants::laurent::LaurentPoly;

/// A Jones polynomial, stored over the square root of the variable so that
/// links with an even component count fit. For knots every exponent is even
/// and `as_t` recovers an honest Laurent polynomial in `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct JonesPoly {
    sqrt_t: LaurentPoly,
}

impl JonesPoly {
    pub fn as_sqrt_t(&self) -> &LaurentPoly {
        &self.sqrt_t
    }

    pub fn as_t(&self) -> Option<LaurentPoly> {
        self.sqrt_t.halve_exponents()
    }

    /// The value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.sqrt_t.eval_one()
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_t() {
            Some(p) => write!(f, "{}", p.display("t")),
            None => write!(f, "{}  [in sqrt(t)]", self.sqrt_t.display("r")),
        }
    }
}

impl fmt::Debug for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The Jones polynomial of the closure: writhe-corrected bracket, with the
/// unknot normalized to 1. A positive kink contributes bracket `-A^3`, which
/// the `(-A)^{-3w}` factor absorbs.
pub fn jones(word: &BraidWord) -> Result<JonesPoly> {
    let b = bracket(word)?;
    let writhe = close(word)?.writhe;
    // (-A)^{-3w} = (-1)^w A^{-3w}
    let mut corrected = b.mul(&LaurentPoly::monomial(-3 * writhe, BigInt::from(1)));
    if writhe.rem_euclid(2) == 1 {
        corrected = corrected.neg();
    }
    // t = A^4, so sqrt(t) = A^2; every exponent here is even.
    let sqrt_t = corrected
        .halve_exponents()
        .ok_or_else(|| Error::Dimension("bracket parity broke".into()))?;
    Ok(JonesPoly { sqrt_t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Orientation;

    fn word(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n, Orientation::upward(n)).unwrap()
    }

    fn t_poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    #[test]
    fn unknot_is_one() {
        let v = jones(&word("s1", 2)).unwrap();
        assert_eq!(v.as_t().unwrap(), LaurentPoly::one());
        let v = jones(&word("s1^-1", 2)).unwrap();
        assert_eq!(v.as_t().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_value() {
        let v = jones(&word("s1^3", 2)).unwrap();
        assert_eq!(v.as_t().unwrap(), t_poly(&[(-4, -1), (-3, 1), (-1, 1)]));
        assert_eq!(v.to_string(), "-t^-4 + t^-3 + t^-1");
    }

    #[test]
    fn mirror_inverts_the_variable() {
        let v = jones(&word("s1^3", 2)).unwrap();
        let m = jones(&word("s1^-3", 2)).unwrap();
        assert_eq!(m.as_t().unwrap(), v.as_t().unwrap().invert_variable());
    }

    #[test]
    fn figure_eight_value() {
        let v = jones(&word("s1 s2^-1 s1 s2^-1", 3)).unwrap();
        assert_eq!(v.as_t().unwrap(), t_poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn hopf_link_needs_half_powers() {
        let v = jones(&word("s1^2", 2)).unwrap();
        assert!(v.as_t().is_none());
        assert_eq!(v.eval_one(), BigInt::from(-2));
    }

    #[test]
    fn normalization_at_one() {
        for text in ["s1 s2", "s1^3 s2", "s1 s2^-1 s1 s2^-1"] {
            let v = jones(&word(text, 3)).unwrap();
            assert_eq!(v.eval_one(), BigInt::from(1));
        }
    }
}
