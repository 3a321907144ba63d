use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, Zero};

/// A single-variable Laurent polynomial with exact integer coefficients.
/// The variable is anonymous; `display("t")` picks a name for printing.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn from_int(v: i64) -> Self {
        LaurentPoly::monomial(0, BigInt::from(v))
    }

    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn variable() -> Self {
        LaurentPoly::monomial(1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    /// Multiplies by the monomial `coeff * x^exp`.
    pub fn mul_monomial(&self, exp: i64, coeff: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if coeff.is_zero() {
            return out;
        }
        for (e, c) in self.terms() {
            out.add_term(e + exp, &(c * coeff));
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Exact division; `None` when the divisor does not divide.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let shift = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let mut rem = self.clone();
        let mut out = LaurentPoly::zero();
        let lead_exp = divisor.max_exp().unwrap();
        let lead = divisor.coeff(lead_exp);
        while !rem.is_zero() {
            let top = rem.max_exp().unwrap();
            let c = rem.coeff(top);
            let (q, r) = num::Integer::div_rem(&c, &lead);
            if !r.is_zero() {
                return None;
            }
            let qexp = top - lead_exp;
            if qexp < shift {
                // An exact quotient cannot reach below min(self) - min(divisor).
                return None;
            }
            out.add_term(qexp, &q);
            rem = rem.sub(&divisor.mul_monomial(qexp, &q));
        }
        Some(out)
    }

    /// Scales every exponent by `k`.
    pub fn stretch_exponents(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e * k, c);
        }
        out
    }

    /// Halves every exponent; `None` if any exponent is odd.
    pub fn halve_exponents(&self) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            out.add_term(e / 2, c);
        }
        Some(out)
    }

    /// Substitutes `x -> x^-1`.
    pub fn invert_variable(&self) -> LaurentPoly {
        self.stretch_exponents(-1)
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    /// The value at `x = 1`.
    pub fn eval_one(&self) -> BigInt {
        let mut s = BigInt::zero();
        for (_, c) in self.terms() {
            s += c;
        }
        s
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => out.push_str(&mag.to_string()),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{}{}", mag, var)),
                (_, true) => out.push_str(&format!("{}^{}", var, e)),
                (_, false) => out.push_str(&format!("{}{}^{}", mag, var, e)),
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[(-1, 1), (1, 1)]);
        let b = poly(&[(0, 1), (2, -1)]);
        // (t^-1 + t)(1 - t^2) = t^-1 - t^3: the middle terms cancel.
        assert_eq!(a.mul(&b), poly(&[(-1, 1), (3, -1)]));
        assert_eq!(a.add(&a), poly(&[(-1, 2), (1, 2)]));
        assert_eq!(a.sub(&a), LaurentPoly::zero());
        assert_eq!(a.pow(2), poly(&[(-2, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn exact_division() {
        let num = poly(&[(0, 1), (3, 1)]); // 1 + t^3
        let div = poly(&[(0, 1), (1, 1)]); // 1 + t
        let q = poly(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(div.mul(&q), num);
        assert_eq!(num.divide_exact(&div), Some(q));
        assert_eq!(poly(&[(0, 1), (1, 1)]).divide_exact(&poly(&[(0, 2)])), None);
        assert_eq!(poly(&[(0, 1)]).divide_exact(&poly(&[(0, 1), (1, 1)])), None);
    }

    #[test]
    fn laurent_division_handles_shifts() {
        let num = poly(&[(-3, 1), (-1, 1)]);
        let div = poly(&[(-2, 1), (0, 1)]);
        assert_eq!(num.divide_exact(&div), Some(poly(&[(-1, 1)])));
    }

    #[test]
    fn palindromes_and_eval() {
        let p = poly(&[(-1, 1), (0, -1), (1, 1)]);
        assert!(p.is_palindromic());
        assert_eq!(p.eval_one(), BigInt::one());
    }

    #[test]
    fn rendering() {
        let p = poly(&[(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(p.display("t"), "-t^-4 + t^-3 + t^-1");
        assert_eq!(poly(&[(0, 1), (2, 1)]).display("z"), "1 + z^2");
        assert_eq!(LaurentPoly::zero().display("t"), "0");
    }
}
