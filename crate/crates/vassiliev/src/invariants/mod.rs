//! Exact evaluation of Jones and Conway polynomials on braid closures and
//! extraction of the finite type invariants used by the checks.

mod bracket;
mod burau;
mod jones;
mod laurent;

use std::collections::HashMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use bracket::{bracket, loop_value};
pub use burau::{alexander, conway};
pub use jones::{jones, JonesPoly};
pub use laurent::LaurentPoly;

use crate::algebra::{desingularize, FormalSum};
use crate::braid::{is_knot_closure, BraidWord};
use crate::error::{Error, Result};

/// The finite type invariants the toolkit evaluates: Conway coefficients
/// `c2`, `c4` and the Taylor coefficients `jm` of `V(e^x)` at `x^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantId {
    C2,
    C4,
    J2,
    J3,
    J4,
}

impl InvariantId {
    pub const ALL: [InvariantId; 5] =
        [InvariantId::C2, InvariantId::C4, InvariantId::J2, InvariantId::J3, InvariantId::J4];

    /// The guaranteed vanishing order: the invariant is zero on any
    /// desingularized sum with more than this many double points.
    pub fn degree(self) -> usize {
        match self {
            InvariantId::C2 | InvariantId::J2 => 2,
            InvariantId::J3 => 3,
            InvariantId::C4 | InvariantId::J4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantId::C2 => "c2",
            InvariantId::C4 => "c4",
            InvariantId::J2 => "j2",
            InvariantId::J3 => "j3",
            InvariantId::J4 => "j4",
        }
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c2" => Ok(InvariantId::C2),
            "c4" => Ok(InvariantId::C4),
            "j2" => Ok(InvariantId::J2),
            "j3" => Ok(InvariantId::J3),
            "j4" => Ok(InvariantId::J4),
            _ => Err(Error::Config(format!("unknown invariant `{}`", s))),
        }
    }
}

pub fn vassiliev_degree(id: InvariantId) -> usize {
    id.degree()
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    word: String,
    o: String,
    invariant: InvariantId,
    value: String,
}

/// Evaluator with a process-wide memo cache keyed by the canonical word.
/// The cache is behind a mutex so concurrent evaluation stays safe; an
/// optional append-only JSON-lines file persists values across runs.
pub struct Evaluator {
    cache: Mutex<HashMap<(String, String, InvariantId), BigRational>>,
    sink: Option<Mutex<File>>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { cache: Mutex::new(HashMap::new()), sink: None }
    }

    /// Loads any existing cache lines from `path` and appends new values.
    pub fn with_cache_file(path: &Path) -> Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let file = File::open(path)?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: CacheLine = serde_json::from_str(&line)?;
                let value = parse_rational(&entry.value)
                    .ok_or_else(|| Error::Config(format!("bad cache value {}", entry.value)))?;
                map.insert((entry.word, entry.o, entry.invariant), value);
            }
        }
        let sink = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Evaluator { cache: Mutex::new(map), sink: Some(Mutex::new(sink)) })
    }

    /// Evaluates the invariant on a (possibly singular) word. Singular words
    /// resolve through the crossing-difference extension first and the
    /// signed sum of the resolutions is returned.
    pub fn evaluate(&self, id: InvariantId, word: &BraidWord) -> Result<BigRational> {
        if word.is_singular() {
            let resolved = desingularize(&FormalSum::from_word(word, 1));
            let mut acc = BigRational::zero();
            for (term, coeff) in resolved.iter() {
                let w = resolved.term_word(term);
                acc += self.evaluate_plain(id, &w)? * BigRational::from(BigInt::from(coeff));
            }
            return Ok(acc);
        }
        self.evaluate_plain(id, word)
    }

    fn evaluate_plain(&self, id: InvariantId, word: &BraidWord) -> Result<BigRational> {
        let key = (word.render(), word.orientation().to_string(), id);
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = compute(id, word)?;
        if let Some(sink) = &self.sink {
            let line = CacheLine {
                word: key.0.clone(),
                o: key.1.clone(),
                invariant: id,
                value: value.to_string(),
            };
            let mut f = sink.lock().expect("sink lock");
            writeln!(f, "{}", serde_json::to_string(&line)?)?;
        }
        self.cache.lock().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }
}

fn compute(id: InvariantId, word: &BraidWord) -> Result<BigRational> {
    if !is_knot_closure(word)? {
        let comps = crate::braid::permutation_of(word)?.cycle_count();
        return Err(Error::NotKnot { components: comps });
    }
    match id {
        InvariantId::C2 => Ok(BigRational::from(conway(word)?.coeff(2))),
        InvariantId::C4 => Ok(BigRational::from(conway(word)?.coeff(4))),
        InvariantId::J2 => jones_coefficient(word, 2),
        InvariantId::J3 => jones_coefficient(word, 3),
        InvariantId::J4 => jones_coefficient(word, 4),
    }
}

/// `jm = sum_n a_n n^m / m!` where `V(t) = sum_n a_n t^n`: the `x^m`
/// coefficient of `V(e^x)`.
fn jones_coefficient(word: &BraidWord, m: u32) -> Result<BigRational> {
    let v = jones(word)?;
    let vt = v
        .as_t()
        .ok_or_else(|| Error::Dimension("jm needs integer Jones exponents (knots only)".into()))?;
    let mut acc = BigInt::zero();
    for (n, a) in vt.terms() {
        acc += a * BigInt::from(n).pow(m);
    }
    let mut fact = BigInt::one();
    for i in 2..=m {
        fact *= BigInt::from(i);
    }
    Ok(BigRational::new(acc, fact))
}

/// Parses values in the `p/q` form used by the cache file.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((p, q)) => {
            Some(BigRational::new(BigInt::from_str(p.trim()).ok()?, BigInt::from_str(q.trim()).ok()?))
        }
        None => Some(BigRational::from(BigInt::from_str(text.trim()).ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Orientation;

    fn word(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n, Orientation::upward(n)).unwrap()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    #[test]
    fn c2_values() {
        let ev = Evaluator::new();
        assert_eq!(ev.evaluate(InvariantId::C2, &word("s1", 2)).unwrap(), rat(0));
        assert_eq!(ev.evaluate(InvariantId::C2, &word("s1^3", 2)).unwrap(), rat(1));
        assert_eq!(ev.evaluate(InvariantId::C2, &word("s1 s2^-1 s1 s2^-1", 3)).unwrap(), rat(-1));
    }

    #[test]
    fn j2_is_minus_three_c2_on_small_knots() {
        let ev = Evaluator::new();
        for (text, n) in [("s1^3", 2), ("s1 s2^-1 s1 s2^-1", 3), ("s1 s2", 3), ("s1^2 s2^2 s1 s2", 3)]
        {
            let w = word(text, n);
            let c2 = ev.evaluate(InvariantId::C2, &w).unwrap();
            let j2 = ev.evaluate(InvariantId::J2, &w).unwrap();
            assert_eq!(j2, -rat(3) * c2, "word {}", text);
        }
    }

    #[test]
    fn degree_two_kills_three_singularities() {
        let ev = Evaluator::new();
        let w = word("p1 p2 m1 s1 s2", 3);
        assert_eq!(w.singularity_count(), 3);
        assert_eq!(ev.evaluate(InvariantId::C2, &w).unwrap(), rat(0));
        assert_eq!(ev.evaluate(InvariantId::J2, &w).unwrap(), rat(0));
    }

    #[test]
    fn singular_evaluation_is_the_signed_resolution_sum() {
        let ev = Evaluator::new();
        // p1 closed with s1 s2: resolves to s1^3 s2 minus s1 s2.
        let singular = word("p1 s1 s2", 3);
        let a = ev.evaluate(InvariantId::C2, &word("s1^3 s2", 3)).unwrap();
        let b = ev.evaluate(InvariantId::C2, &word("s1 s2", 3)).unwrap();
        // The closure of s1^3 s2 destabilizes to the trefoil.
        assert_eq!(a, rat(1));
        assert_eq!(ev.evaluate(InvariantId::C2, &singular).unwrap(), a - b);
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = std::env::temp_dir().join("vassiliev-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");
        let _ = std::fs::remove_file(&path);
        {
            let ev = Evaluator::with_cache_file(&path).unwrap();
            assert_eq!(ev.evaluate(InvariantId::C2, &word("s1^3", 2)).unwrap(), rat(1));
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"word\":\"s1^3\""));
        let ev = Evaluator::with_cache_file(&path).unwrap();
        assert_eq!(ev.evaluate(InvariantId::C2, &word("s1^3", 2)).unwrap(), rat(1));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-9/2").unwrap(), BigRational::new((-9).into(), 2.into()));
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn evaluator_is_safe_to_share_across_threads() {
        let ev = std::sync::Arc::new(Evaluator::new());
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let ev = ev.clone();
                std::thread::spawn(move || {
                    let words = ["s1^3", "s1 s1 s1", "s1^-3"];
                    let w = word(words[t % words.len()], 2);
                    for _ in 0..20 {
                        assert_eq!(ev.evaluate(InvariantId::C2, &w).unwrap(), rat(1));
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
