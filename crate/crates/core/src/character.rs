//! The character ring: finite sums `sum_lambda c_lambda(u) e^lambda`.
//!
//! [`CharElem`] is the plain weight-indexed form. [`MonomialExpansion`] stores
//! a Weyl-invariant element by its coefficients on the orbit sums `m_lambda`,
//! which is what the kernels and scalar products work with; it is smaller by
//! roughly the order of the Weyl group.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::affine::AffineType;
use crate::demazure::finite_demazure_op;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::qseries::{QSeries, EXACT};
use crate::weyl::FiniteWeight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharElem {
    rank: usize,
    terms: BTreeMap<FiniteWeight, QSeries>,
}

impl CharElem {
    pub fn zero(rank: usize) -> CharElem {
        CharElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `c * e^lambda`.
    pub fn term(lambda: FiniteWeight, c: QSeries) -> CharElem {
        let mut f = CharElem::zero(lambda.rank());
        f.add_term(lambda, &c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (FiniteWeight, QSeries)>>(rank: usize, terms: I) -> CharElem {
        let mut f = CharElem::zero(rank);
        for (w, c) in terms {
            f.add_term(w, &c);
        }
        f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, lambda: FiniteWeight, c: &QSeries) {
        match self.terms.get_mut(&lambda) {
            Some(s) => {
                *s = &*s + c;
                if s.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(lambda, c.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FiniteWeight, &QSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, lambda: &FiniteWeight) -> Option<&QSeries> {
        self.terms.get(lambda)
    }

    /// Smallest truncation order among the coefficients.
    pub fn trunc(&self) -> i64 {
        self.terms.values().map(QSeries::trunc).min().unwrap_or(EXACT)
    }

    pub fn add(&self, other: &CharElem) -> CharElem {
        let mut f = self.clone();
        for (w, c) in &other.terms {
            f.add_term(*w, c);
        }
        f
    }

    pub fn sub(&self, other: &CharElem) -> CharElem {
        let mut f = self.clone();
        for (w, c) in &other.terms {
            f.add_term(*w, &-c);
        }
        f
    }

    pub fn scale(&self, c: &QSeries) -> CharElem {
        CharElem::from_terms(self.rank, self.terms.iter().map(|(w, s)| (*w, s * c)))
    }

    /// Multiplies every coefficient by `u^k`.
    pub fn shifted(&self, k: i64) -> CharElem {
        CharElem::from_terms(self.rank, self.terms.iter().map(|(w, s)| (*w, s.shifted(k))))
    }

    pub fn truncated(&self, n: i64) -> CharElem {
        CharElem::from_terms(self.rank, self.terms.iter().map(|(w, s)| (*w, s.truncated(n))))
    }

    /// Convolution product `e^lambda e^mu = e^(lambda+mu)`.
    pub fn mul(&self, other: &CharElem) -> CharElem {
        let mut out = CharElem::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(*a + *b, &(x * y));
            }
        }
        out
    }

    /// `e^lambda -> e^(-w0 lambda)`, coefficients untouched.
    pub fn iota(&self, t: &AffineType) -> CharElem {
        CharElem::from_terms(self.rank, self.terms.iter().map(|(w, s)| (t.minus_w0(w), s.clone())))
    }

    /// `e^lambda -> e^(-lambda)`.
    pub fn bar(&self) -> CharElem {
        CharElem::from_terms(self.rank, self.terms.iter().map(|(w, s)| (w.neg(), s.clone())))
    }

    /// Coefficient of `e^0`.
    pub fn constant_term(&self) -> QSeries {
        self.terms
            .get(&FiniteWeight::zero(self.rank))
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.trunc()))
    }

    /// Invariance under every finite simple reflection.
    pub fn is_invariant(&self, t: &AffineType) -> bool {
        (1..=t.rank()).all(|i| {
            self.terms
                .iter()
                .all(|(w, s)| self.terms.get(&t.reflect(i, w)).is_some_and(|r| r == s))
        })
    }

    /// Coefficientwise comparison up to `u^n`.
    pub fn agrees_upto(&self, other: &CharElem, n: i64) -> bool {
        let zero = QSeries::zero(EXACT);
        let keys: std::collections::BTreeSet<&FiniteWeight> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|w| {
            let a = self.terms.get(w).unwrap_or(&zero);
            let b = other.terms.get(w).unwrap_or(&zero);
            a.agrees_upto(b, n)
        })
    }

    /// Compresses a Weyl-invariant element onto orbit sums.
    pub fn to_monomial(&self, t: &AffineType) -> Result<MonomialExpansion> {
        if !self.is_invariant(t) {
            return Err(Error::NotInvariant(format!("{} terms", self.terms.len())));
        }
        Ok(MonomialExpansion {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.is_dominant())
                .map(|(w, s)| (*w, s.clone()))
                .collect(),
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, s)| json!({"weight": w.to_vec(), "series": s.to_json()}))
                .collect(),
        )
    }
}

/// `m_lambda`, the sum of `e^mu` over the orbit of `lambda`.
pub fn monomial(t: &AffineType, lambda: &FiniteWeight) -> CharElem {
    let one = QSeries::one(EXACT);
    CharElem::from_terms(t.rank(), t.weyl_orbit(lambda).into_iter().map(|w| (w, one.clone())))
}

/// Character of the finite irreducible module of dominant highest weight
/// `lambda`, by Demazure operators along a reduced word for `w0`.
pub fn irreducible_character(t: &AffineType, lambda: &FiniteWeight) -> Result<CharElem> {
    Ok(irreducible_character_word(t, lambda, t.w0_word())?)
}

/// As [`irreducible_character`] with an explicit reduced word for `w0`.
pub fn irreducible_character_word(t: &AffineType, lambda: &FiniteWeight, word: &[usize]) -> Result<CharElem> {
    if lambda.rank() != t.rank() {
        return Err(Error::WeightLength {
            got: lambda.rank(),
            expected: t.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut f: HashMap<FiniteWeight, Int> = HashMap::from([(*lambda, Int::ONE)]);
    for &i in word.iter().rev() {
        f = finite_demazure_op(t, i, &f)?;
    }
    Ok(CharElem::from_terms(
        t.rank(),
        f.into_iter().map(|(w, c)| (w, QSeries::monomial(0, c, EXACT))),
    ))
}

/// A Weyl-invariant element `sum_lambda c_lambda m_lambda`, keyed by
/// dominant weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialExpansion {
    rank: usize,
    terms: BTreeMap<FiniteWeight, QSeries>,
}

impl MonomialExpansion {
    pub fn zero(rank: usize) -> MonomialExpansion {
        MonomialExpansion {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `c * m_lambda`.
    pub fn term(lambda: FiniteWeight, c: QSeries) -> MonomialExpansion {
        let mut f = MonomialExpansion::zero(lambda.rank());
        f.add_term(lambda, &c);
        f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, lambda: FiniteWeight, c: &QSeries) {
        debug_assert!(lambda.is_dominant());
        match self.terms.get_mut(&lambda) {
            Some(s) => {
                *s = &*s + c;
                if s.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(lambda, c.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FiniteWeight, &QSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m_lambda` for dominant `lambda`.
    pub fn get(&self, lambda: &FiniteWeight) -> Option<&QSeries> {
        self.terms.get(lambda)
    }

    /// Coefficient of `e^x` for any weight `x`.
    pub fn coeff_at(&self, t: &AffineType, x: &FiniteWeight) -> Option<&QSeries> {
        self.terms.get(&t.dominant(x))
    }

    pub fn trunc(&self) -> i64 {
        self.terms.values().map(QSeries::trunc).min().unwrap_or(EXACT)
    }

    pub fn add(&self, other: &MonomialExpansion) -> MonomialExpansion {
        let mut f = self.clone();
        for (w, c) in &other.terms {
            f.add_term(*w, c);
        }
        f
    }

    pub fn sub(&self, other: &MonomialExpansion) -> MonomialExpansion {
        let mut f = self.clone();
        for (w, c) in &other.terms {
            f.add_term(*w, &-c);
        }
        f
    }

    pub fn scale(&self, c: &QSeries) -> MonomialExpansion {
        let mut f = MonomialExpansion::zero(self.rank);
        for (w, s) in &self.terms {
            f.add_term(*w, &(s * c));
        }
        f
    }

    pub fn shifted(&self, k: i64) -> MonomialExpansion {
        MonomialExpansion {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, s)| (*w, s.shifted(k))).collect(),
        }
    }

    pub fn truncated(&self, n: i64) -> MonomialExpansion {
        let mut f = MonomialExpansion::zero(self.rank);
        for (w, s) in &self.terms {
            f.add_term(*w, &s.truncated(n));
        }
        f
    }

    pub fn iota(&self, t: &AffineType) -> MonomialExpansion {
        MonomialExpansion {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, s)| (t.minus_w0(w), s.clone())).collect(),
        }
    }

    /// Expands orbit sums into individual weights.
    pub fn to_char(&self, t: &AffineType) -> CharElem {
        let mut f = CharElem::zero(self.rank);
        for (w, s) in &self.terms {
            for x in t.weyl_orbit(w) {
                f.add_term(x, s);
            }
        }
        f
    }

    pub fn constant_term(&self) -> QSeries {
        self.terms
            .get(&FiniteWeight::zero(self.rank))
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.trunc()))
    }

    pub fn agrees_upto(&self, other: &MonomialExpansion, n: i64) -> bool {
        let zero = QSeries::zero(EXACT);
        let keys: std::collections::BTreeSet<&FiniteWeight> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|w| {
            let a = self.terms.get(w).unwrap_or(&zero);
            let b = other.terms.get(w).unwrap_or(&zero);
            a.agrees_upto(b, n)
        })
    }

    /// Product of invariant elements, using
    /// `m_lambda m_mu = sum_{b in W mu} |W lambda| / |W (lambda+b)| m_dom(lambda+b)`.
    pub fn mul(&self, t: &AffineType, other: &MonomialExpansion) -> MonomialExpansion {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: HashMap<FiniteWeight, QSeries> = HashMap::new();
        let mut orbits: HashMap<FiniteWeight, Vec<FiniteWeight>> = HashMap::new();
        for (mu, b_mu) in &small.terms {
            let orbit = orbits.entry(*mu).or_insert_with(|| t.weyl_orbit(mu));
            for (lambda, a_l) in &large.terms {
                let prod = a_l * b_mu;
                if prod.is_zero() {
                    continue;
                }
                let stab = Int::from(t.orbit_size(lambda));
                let mut counts: HashMap<FiniteWeight, i64> = HashMap::new();
                for b in orbit.iter() {
                    *counts.entry(t.dominant(&(*lambda + *b))).or_insert(0) += 1;
                }
                for (nu, c) in counts {
                    let term = prod.scale_int(&stab.mul(&Int::from(c)));
                    match acc.get_mut(&nu) {
                        Some(s) => *s = &*s + &term,
                        None => {
                            acc.insert(nu, term);
                        }
                    }
                }
            }
        }
        let mut out = MonomialExpansion::zero(self.rank);
        for (nu, s) in acc {
            let size = BigInt::from(t.orbit_size(&nu));
            out.add_term(nu, &s.scale(&BigRational::new(BigInt::from(1), size)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, s)| json!({"weight": w.to_vec(), "series": s.to_json()}))
                .collect(),
        )
    }
}
