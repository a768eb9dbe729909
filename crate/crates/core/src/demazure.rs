//! Demazure operators and level-one affine Demazure characters.
//!
//! The operators use the division-free string formula for
//! `(f - e^(-alpha_i) s_i f) / (1 - e^(-alpha_i))`: with `k = <Y, alpha_i^vee>`,
//! `e^Y` maps to `e^Y + e^(Y - alpha_i) + ... + e^(Y - k alpha_i)` when `k >= 0`,
//! to `0` when `k = -1`, and to `-(e^(Y + alpha_i) + ... + e^(Y + (-k-1) alpha_i))`
//! when `k <= -2`.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::affine::AffineType;
use crate::character::CharElem;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::macdonald::MacdonaldBasis;
use crate::qseries::QSeries;
use crate::weyl::{AffineWeight, FiniteWeight};

fn string_image<W: Copy>(y: W, k: i64, alpha: W, sub: impl Fn(W, W) -> W, add: impl Fn(W, W) -> W) -> (Vec<W>, bool) {
    let mut out = Vec::new();
    if k >= 0 {
        let mut x = y;
        out.push(x);
        for _ in 0..k {
            x = sub(x, alpha);
            out.push(x);
        }
        (out, false)
    } else {
        let mut x = y;
        for _ in 0..(-k - 1) {
            x = add(x, alpha);
            out.push(x);
        }
        (out, true)
    }
}

/// Finite Demazure operator for node `1 <= i <= n`.
pub fn finite_demazure_op(
    t: &AffineType,
    i: usize,
    f: &HashMap<FiniteWeight, Int>,
) -> Result<HashMap<FiniteWeight, Int>> {
    if i == 0 || i > t.rank() {
        return Err(Error::NodeOutOfRange { node: i, rank: t.rank() });
    }
    let alpha = t.simple_root(i);
    let mut out: HashMap<FiniteWeight, Int> = HashMap::new();
    for (y, c) in f {
        let (ws, negate) = string_image(*y, y.get(i - 1), alpha, |a, b| a - b, |a, b| a + b);
        for w in ws {
            let e = out.entry(w).or_insert(Int::ZERO);
            if negate {
                e.sub_assign(c);
            } else {
                e.add_assign(c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// An element of the group ring of affine weights with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffCharElem {
    terms: BTreeMap<AffineWeight, Int>,
}

impl AffCharElem {
    pub fn new() -> AffCharElem {
        AffCharElem::default()
    }

    pub fn term(w: AffineWeight, c: Int) -> AffCharElem {
        let mut f = AffCharElem::new();
        f.add_term(w, &c);
        f
    }

    pub fn add_term(&mut self, w: AffineWeight, c: &Int) {
        let e = self.terms.entry(w).or_insert(Int::ZERO);
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeight, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops `Lambda_0` and reads `e^(c delta)` as `u^(a0 c)`.
    pub fn to_char(&self, rank: usize) -> CharElem {
        let mut f = CharElem::zero(rank);
        for (w, c) in &self.terms {
            f.add_term(w.finite, &QSeries::monomial(w.delta, c.clone(), crate::qseries::EXACT));
        }
        f
    }
}

/// Affine Demazure operator for node `0 <= i <= n`.
pub fn demazure_op(t: &AffineType, i: usize, f: &AffCharElem) -> Result<AffCharElem> {
    if i > t.rank() {
        return Err(Error::NodeOutOfRange { node: i, rank: t.rank() });
    }
    let alpha = t.affine_simple_root(i);
    let mut out = AffCharElem::new();
    for (y, c) in &f.terms {
        let (ws, negate) = string_image(*y, t.pairing(y, i), alpha, |a, b| a - b, |a, b| a + b);
        let c = if negate { c.neg() } else { c.clone() };
        for w in ws {
            out.add_term(w, &c);
        }
    }
    Ok(out)
}

/// Character of the level-one Demazure module `D(lambda + Lambda_0)`, as an
/// element of the finite character ring, shifted so that the coefficient of
/// `e^lambda` starts at `u^0`, and truncated at `u^trunc`.
pub fn demazure_character(t: &AffineType, lambda: &FiniteWeight, trunc: i64) -> Result<CharElem> {
    let f = demazure_character_exact(t, lambda)?;
    Ok(f.truncated(trunc))
}

pub(crate) fn demazure_character_exact(t: &AffineType, lambda: &FiniteWeight) -> Result<CharElem> {
    let (dom, word) = t.to_dominant(&AffineWeight::new(*lambda, 1, 0))?;
    demazure_character_word(t, lambda, &dom, &word)
}

/// Applies the operators of `word` (last letter first) to `e^dom`.
pub fn demazure_character_word(
    t: &AffineType,
    lambda: &FiniteWeight,
    dom: &AffineWeight,
    word: &[usize],
) -> Result<CharElem> {
    let mut f = AffCharElem::term(*dom, Int::ONE);
    for &i in word.iter().rev() {
        f = demazure_op(t, i, &f)?;
    }
    let ch = f.to_char(t.rank());
    let shift = ch.get(lambda).and_then(QSeries::min_exp).unwrap_or(0);
    Ok(ch.shifted(-shift))
}

/// Outcome of comparing `P(lambda+)` with the Demazure character of
/// `w0(lambda+) + Lambda_0`.
#[derive(Clone, Debug)]
pub struct DemazureComparison {
    pub weight: FiniteWeight,
    pub type_one: bool,
    pub equal: bool,
    /// `P - chi(D)` has no negative coefficient.
    pub dominated: bool,
    /// `P - chi(D)` has a positive coefficient.
    pub strict: bool,
    pub difference: CharElem,
}

impl DemazureComparison {
    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.weight.to_vec(),
            "type_one": self.type_one,
            "equal": self.equal,
            "dominated": self.dominated,
            "strict": self.strict,
            "difference": self.difference.to_json(),
        })
    }
}

/// Checks equality in type I and coefficientwise domination in type II.
pub fn compare_demazure_macdonald(basis: &mut MacdonaldBasis, lambda: &FiniteWeight) -> Result<DemazureComparison> {
    let t = basis.affine_type().clone();
    let n = basis.trunc();
    let p = basis.polynomial(lambda)?.to_char(&t);
    let d = demazure_character(&t, &t.w_circ(lambda), n)?;
    let diff = p.sub(&d).truncated(n);
    let mut dominated = true;
    let mut strict = false;
    for (_, s) in diff.terms() {
        for (_, c) in s.terms() {
            if c < num_rational::BigRational::from_integer(0.into()) {
                dominated = false;
            } else {
                strict = true;
            }
        }
    }
    let cmp = DemazureComparison {
        weight: *lambda,
        type_one: t.is_type_one(),
        equal: diff.is_empty(),
        dominated,
        strict,
        difference: diff,
    };
    if !cmp.type_one && !cmp.dominated {
        return Err(Error::Inconsistent {
            weight: lambda.to_string(),
            exp: 0,
            value: "Demazure character exceeds P".into(),
        });
    }
    Ok(cmp)
}
