//! Orchestration of the verification checks: both sides of the difference
//! formula, the symbolic identity, x-independence, the block formula, and
//! the randomized sweep.

mod sweep;
mod words;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use sweep::{run_sweep, write_report, SweepConfig, SweepReport};
pub use words::{random_knot_word, random_word, random_word_with_phi, shrink_word};

use crate::algebra::{bl_normal_form, expand_word, rhs_symbolic, FormalSum};
use crate::braid::{permutation_of, BraidWord, Orientation};
use crate::error::{Error, Result};
use crate::invariants::{Evaluator, InvariantId};
use crate::moves::{
    bh_word, block_rhs_terms, block_word, make_pair, rhs_terms, MoveSpec, SignConvention, WVariant,
};

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        crate::invariants::parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", text)))
    }
}

/// Serializable move description: `{k, d, o, conv}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecJson {
    pub k: usize,
    pub d: Vec<i8>,
    pub o: String,
    pub conv: SignConvention,
}

impl SpecJson {
    fn new(spec: &MoveSpec, conv: SignConvention) -> Self {
        SpecJson { k: spec.k, d: spec.d.clone(), o: spec.o.to_string(), conv }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermValue {
    pub sign: i64,
    pub word: String,
    #[serde(with = "rational_string")]
    pub value: BigRational,
}

/// Result of one two-sided evaluation of the difference formula.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub spec: SpecJson,
    pub t: String,
    pub x: String,
    pub invariant: InvariantId,
    #[serde(with = "rational_string")]
    pub lhs: BigRational,
    #[serde(with = "rational_string")]
    pub rhs: BigRational,
    pub equal: bool,
    pub singular_rhs: bool,
    pub term_values: Vec<TermValue>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Evaluates `v(K) - v(J)` against the signed sum over the companion
/// closures, exactly.
pub fn check_theorem(
    ev: &Evaluator,
    spec: &MoveSpec,
    t: &BraidWord,
    x: &BraidWord,
    id: InvariantId,
    conv: SignConvention,
    singular_rhs: bool,
) -> Result<CheckReport> {
    if id.degree() > spec.k + 1 {
        return Err(Error::DegreeTooHigh { degree: id.degree(), max: spec.k + 1 });
    }
    let pair = make_pair(spec, t)?;
    let phi_t = permutation_of(t)?;
    let variant = if singular_rhs { WVariant::Singular } else { WVariant::Squared };
    let terms = rhs_terms(spec, &phi_t, x, conv, variant)?;

    let lhs = ev.evaluate(id, &pair.k_word)? - ev.evaluate(id, &pair.j_word)?;
    let mut rhs = BigRational::zero();
    let mut term_values = Vec::with_capacity(terms.len());
    for (sign, word) in &terms {
        let value = ev.evaluate(id, word)?;
        rhs += BigRational::from(BigInt::from(*sign)) * &value;
        term_values.push(TermValue { sign: *sign, word: word.render(), value });
    }
    let equal = lhs == rhs;
    Ok(CheckReport {
        spec: SpecJson::new(spec, conv),
        t: t.render(),
        x: x.render(),
        invariant: id,
        lhs,
        rhs,
        equal,
        singular_rhs,
        term_values,
        notes: Vec::new(),
    })
}

/// Result of comparing the block-by-block expansion against the closed form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolicReport {
    pub spec: SpecJson,
    pub expanded: String,
    pub closed_form: String,
    /// Whether the raw sums agree letter for letter. Holds at `k = 1`; for
    /// larger moves the two sides are distinct representatives of the same
    /// value class.
    pub termwise: bool,
    /// Equality in the truncated value module, decided by the canonical
    /// normal form. This is the verdict.
    pub equal: bool,
}

/// Expands `BH` through the singular calculus, truncated at `k+1` double
/// points, and compares with the closed-form sum in the value module.
pub fn check_symbolic(spec: &MoveSpec, conv: SignConvention) -> Result<SymbolicReport> {
    let bh = bh_word(spec);
    let expanded = expand_word(&bh, conv, Some(spec.k + 1))?;
    let closed: FormalSum = rhs_symbolic(spec, conv);
    let termwise = expanded == closed;
    let equal = termwise
        || bl_normal_form(&expanded, spec.k + 1) == bl_normal_form(&closed, spec.k + 1);
    Ok(SymbolicReport {
        spec: SpecJson::new(spec, conv),
        expanded: expanded.to_string(),
        closed_form: closed.to_string(),
        termwise,
        equal,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XIndependenceReport {
    pub spec: SpecJson,
    pub t: String,
    pub invariant: InvariantId,
    pub rhs_values: Vec<TermValue>,
    pub independent: bool,
}

/// The right-hand side must not depend on the choice of `x` within the
/// permutation class of `T`.
pub fn check_x_independence(
    ev: &Evaluator,
    spec: &MoveSpec,
    t: &BraidWord,
    xs: &[BraidWord],
    id: InvariantId,
    conv: SignConvention,
) -> Result<XIndependenceReport> {
    if id.degree() > spec.k + 1 {
        return Err(Error::DegreeTooHigh { degree: id.degree(), max: spec.k + 1 });
    }
    let phi_t = permutation_of(t)?;
    let mut values = Vec::with_capacity(xs.len());
    for x in xs {
        let terms = rhs_terms(spec, &phi_t, x, conv, WVariant::Squared)?;
        let mut rhs = BigRational::zero();
        for (sign, word) in &terms {
            rhs += BigRational::from(BigInt::from(*sign)) * ev.evaluate(id, word)?;
        }
        values.push(TermValue { sign: 1, word: x.render(), value: rhs });
    }
    let independent = values.windows(2).all(|w| w[0].value == w[1].value);
    Ok(XIndependenceReport {
        spec: SpecJson::new(spec, conv),
        t: t.render(),
        invariant: id,
        rhs_values: values,
        independent,
    })
}

/// Block-word analogue of `check_theorem` on `n(k+2)` strands.
#[allow(clippy::too_many_arguments)]
pub fn check_general(
    ev: &Evaluator,
    specs: &[MoveSpec],
    o: &Orientation,
    t: &BraidWord,
    x: &BraidWord,
    id: InvariantId,
    conv: SignConvention,
    literal_w: bool,
) -> Result<CheckReport> {
    let k = specs.first().map(|s| s.k).unwrap_or(0);
    if id.degree() > k + 1 {
        return Err(Error::DegreeTooHigh { degree: id.degree(), max: k + 1 });
    }
    let big_bh = block_word(specs, o)?;
    if t.strands() != big_bh.strands() {
        return Err(Error::StrandMismatch(t.strands(), big_bh.strands()));
    }
    if t.orientation() != o {
        return Err(Error::OrientationMismatch);
    }
    let phi_t = permutation_of(t)?;
    if !phi_t.is_full_cycle() {
        return Err(Error::NotKnot { components: phi_t.cycle_count() });
    }
    let k_word = big_bh.compose(t)?;
    let terms = block_rhs_terms(specs, o, &phi_t, x, conv, WVariant::Squared, literal_w)?;

    let lhs = ev.evaluate(id, &k_word)? - ev.evaluate(id, t)?;
    let mut rhs = BigRational::zero();
    let mut term_values = Vec::with_capacity(terms.len());
    for (sign, word) in &terms {
        let value = ev.evaluate(id, word)?;
        rhs += BigRational::from(BigInt::from(*sign)) * &value;
        term_values.push(TermValue { sign: *sign, word: word.render(), value });
    }
    let equal = lhs == rhs;
    let spec_json = SpecJson {
        k,
        d: specs.iter().flat_map(|s| s.d.iter().copied()).collect(),
        o: o.to_string(),
        conv,
    };
    let mut notes = vec![format!(
        "one term family per block present ({} blocks, 2^{} terms each)",
        specs.len(),
        k
    )];
    if literal_w {
        notes.push(
            "literal unflipped reversed word requested; the flipped form is the one that verifies"
                .to_string(),
        );
    }
    Ok(CheckReport {
        spec: spec_json,
        t: t.render(),
        x: x.render(),
        invariant: id,
        lhs,
        rhs,
        equal,
        singular_rhs: false,
        term_values,
        notes,
    })
}

/// Consistency direction of the equivalence statement: a pair at distance
/// one under a `C_{k,d,o}` move must agree on every invariant of degree at
/// most `k`.
pub fn check_c_equivalence(
    ev: &Evaluator,
    spec: &MoveSpec,
    t: &BraidWord,
    id: InvariantId,
) -> Result<bool> {
    if id.degree() > spec.k {
        return Err(Error::DegreeTooHigh { degree: id.degree(), max: spec.k });
    }
    let pair = make_pair(spec, t)?;
    Ok(ev.evaluate(id, &pair.k_word)? == ev.evaluate(id, &pair.j_word)?)
}

/// The largest `|difference|` observed over a corpus of evaluated cases: a
/// monitoring statistic for the bounded-difference remark, not a proof.
pub fn boundedness_probe(differences: &[BigRational]) -> Result<BigRational> {
    if differences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(differences.iter().map(|v| v.abs()).max().expect("nonempty"))
}
