//! Symmetric Macdonald polynomials at `t = ∞` by Gram-Schmidt against `Δ(q,∞)`.
//!
//! Polynomials are indexed by the dominant weight `λ⁺`; `P(λ⁺)` is monic with
//! leading orbit sum `m_{λ⁺}`. Work happens in the orbit-sum basis: the Gram
//! matrix `<m_ν, m_κ>_q` is read straight off the kernel coefficients.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::affine::AffineType;
use crate::character::{irreducible_character, CharElem, MonomialExpansion};
use crate::error::{Error, Result};
use crate::kernel::{node_r, KernelSet};
use crate::qseries::QSeries;
use crate::weyl::FiniteWeight;

/// The closed-form norm `||P(λ⁺)||²` as a product of `(1 - u^k)` factors.
///
/// With `m_i = λ⁺_{σ(i)}` (`σ` the diagram involution of `-w_∘`), node `i < n`
/// contributes `prod_{j<m_i} (1 - u^(a0 (j+1) r_i))` and node `n` contributes
/// `prod_{j<m_n} (1 - u^((j+1) r_n))`.
pub fn norm_closed_form(t: &AffineType, lambda: &FiniteWeight, trunc: i64) -> Result<QSeries> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let n = t.rank();
    let sigma = t.sigma();
    let mut out = QSeries::one(trunc);
    for i in 1..=n {
        let m = lambda.get(sigma[i - 1]);
        let r = node_r(t, i);
        let step = if i < n { t.a0() * r } else { r };
        for j in 0..m {
            let e = step * (j + 1);
            if e > trunc {
                break;
            }
            out = &out * &QSeries::from_ints(0, one_minus_u_pow(e), trunc);
        }
    }
    Ok(out)
}

fn one_minus_u_pow(e: i64) -> Vec<crate::Int> {
    let mut v = vec![crate::Int::ZERO; e as usize + 1];
    v[0] = crate::Int::ONE;
    v[e as usize] = crate::Int::from(-1i64);
    v
}

/// Lazily grown family of Macdonald polynomials sharing one kernel.
#[derive(Clone, Debug)]
pub struct MacdonaldBasis {
    kernels: KernelSet,
    polys: BTreeMap<FiniteWeight, MonomialExpansion>,
    /// `<m_λ, P_λ> = <P_λ, P_λ>`, used as the pivot during elimination.
    pivots: BTreeMap<FiniteWeight, QSeries>,
    gram: HashMap<(FiniteWeight, FiniteWeight), QSeries>,
    chars: HashMap<FiniteWeight, MonomialExpansion>,
}

impl MacdonaldBasis {
    pub fn new(kernels: KernelSet) -> MacdonaldBasis {
        MacdonaldBasis { kernels, polys: BTreeMap::new(), pivots: BTreeMap::new(), gram: HashMap::new(), chars: HashMap::new() }
    }

    /// Builds kernels at `trunc` and computes every `P(μ)` with `μ <= λ⁺`.
    pub fn build(t: &AffineType, lambda: &FiniteWeight, trunc: i64) -> Result<MacdonaldBasis> {
        let mut b = MacdonaldBasis::new(KernelSet::build(t, trunc)?);
        b.polynomial(lambda)?;
        Ok(b)
    }

    pub fn kernels(&self) -> &KernelSet {
        &self.kernels
    }

    pub fn affine_type(&self) -> &AffineType {
        self.kernels.affine_type()
    }

    pub fn trunc(&self) -> i64 {
        self.kernels.trunc()
    }

    /// Weights computed so far, in increasing order.
    pub fn weights(&self) -> impl Iterator<Item = &FiniteWeight> {
        self.polys.keys()
    }

    /// Cached compressed irreducible character `χ_λ`.
    pub fn irreducible(&mut self, lambda: &FiniteWeight) -> Result<&MonomialExpansion> {
        if !self.chars.contains_key(lambda) {
            let t = self.affine_type();
            let chi = irreducible_character(t, lambda)?.to_monomial(t)?;
            self.chars.insert(*lambda, chi);
        }
        Ok(&self.chars[lambda])
    }

    /// Cached `<m_ν, m_κ>_q`.
    pub fn gram(&mut self, nu: &FiniteWeight, kappa: &FiniteWeight) -> QSeries {
        let key = if nu <= kappa { (*nu, *kappa) } else { (*kappa, *nu) };
        if let Some(s) = self.gram.get(&key) {
            return s.clone();
        }
        let s = self.kernels.gram_q(&key.0, &key.1);
        self.gram.insert(key, s.clone());
        s
    }

    /// `<f, g>_q` for compressed invariants, through the Gram cache.
    pub fn scalar(&mut self, f: &MonomialExpansion, g: &MonomialExpansion) -> QSeries {
        let mut acc = QSeries::zero(self.trunc());
        for (nu, a) in f.terms() {
            for (kappa, b) in g.terms() {
                let gr = self.gram(nu, kappa);
                if gr.is_zero() {
                    continue;
                }
                acc = &acc + &(&(a * b) * &gr);
            }
        }
        acc.truncated(self.trunc())
    }

    /// `P(λ⁺)` in the orbit-sum basis, computing lower polynomials on demand.
    pub fn polynomial(&mut self, lambda: &FiniteWeight) -> Result<&MonomialExpansion> {
        if !self.polys.contains_key(lambda) {
            let t = self.affine_type().clone();
            for mu in t.dominants_below(lambda)? {
                if !self.polys.contains_key(&mu) {
                    self.eliminate(&t, &mu)?;
                }
            }
        }
        Ok(&self.polys[lambda])
    }

    fn eliminate(&mut self, t: &AffineType, mu: &FiniteWeight) -> Result<()> {
        let trunc = self.trunc();
        let mut p = MonomialExpansion::term(*mu, QSeries::one(trunc));
        let lower = t.dominants_below(mu)?;
        for nu in &lower[..lower.len() - 1] {
            let pnu = self.polys[nu].clone();
            let mut overlap = QSeries::zero(trunc);
            for (kappa, c) in pnu.terms() {
                let gr = self.gram(mu, kappa);
                if !gr.is_zero() {
                    overlap = &overlap + &(c * &gr);
                }
            }
            if overlap.truncated(trunc).is_zero() {
                continue;
            }
            let inv = self.pivots[nu].invert()?;
            let coeff = (&overlap * &inv).truncated(trunc);
            p = p.sub(&pnu.scale(&coeff));
        }
        let p = p.truncated(trunc);
        let mut pivot = QSeries::zero(trunc);
        for (kappa, c) in p.terms() {
            let gr = self.gram(mu, kappa);
            if !gr.is_zero() {
                pivot = &pivot + &(c * &gr);
            }
        }
        let pivot = pivot.truncated(trunc);
        if pivot.int_coeff(0).is_none_or(|c| c.is_zero()) || pivot.min_exp() != Some(0) {
            return Err(Error::DegenerateNorm { weight: mu.to_string(), trunc });
        }
        self.pivots.insert(*mu, pivot);
        self.polys.insert(*mu, p);
        Ok(())
    }

    /// `P(λ⁺)` as a full character.
    pub fn polynomial_char(&mut self, lambda: &FiniteWeight) -> Result<CharElem> {
        let t = self.affine_type().clone();
        Ok(self.polynomial(lambda)?.to_char(&t))
    }

    /// `<P, P>_q` evaluated as the full double sum over both expansions.
    pub fn norm_gs(&mut self, lambda: &FiniteWeight) -> Result<QSeries> {
        let p = self.polynomial(lambda)?.clone();
        Ok(self.scalar(&p, &p))
    }

    pub fn norm_closed_form(&self, lambda: &FiniteWeight) -> Result<QSeries> {
        norm_closed_form(self.affine_type(), lambda, self.trunc())
    }

    /// JSON document with every computed polynomial and both norm columns.
    pub fn to_json(&mut self) -> Result<Value> {
        let weights: Vec<FiniteWeight> = self.polys.keys().copied().collect();
        let mut rows = Vec::new();
        for w in weights {
            let gs = self.norm_gs(&w)?;
            let cf = self.norm_closed_form(&w)?;
            rows.push(json!({
                "weight": w.to_vec(),
                "polynomial": self.polys[&w].to_json(),
                "norm_gs": gs.to_json(),
                "norm_cf": cf.to_json(),
                "norms_agree": gs.agrees_upto(&cf, self.trunc()),
            }));
        }
        Ok(json!({
            "type": self.affine_type().label(),
            "trunc": self.trunc(),
            "basis": rows,
        }))
    }
}

/// Compute at `trunc` and `trunc + 4` and check the lower result is the truncation
/// of the higher one, for every polynomial and norm below `λ⁺`.
pub fn verify_truncation(t: &AffineType, lambda: &FiniteWeight, trunc: i64) -> Result<bool> {
    let mut lo = MacdonaldBasis::build(t, lambda, trunc)?;
    let mut hi = MacdonaldBasis::build(t, lambda, trunc + 4)?;
    for mu in t.dominants_below(lambda)? {
        let a = lo.polynomial(&mu)?.clone();
        let b = hi.polynomial(&mu)?.clone();
        if !a.agrees_upto(&b, trunc) {
            return Ok(false);
        }
        if !lo.norm_gs(&mu)?.agrees_upto(&hi.norm_gs(&mu)?, trunc) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::monomial;
    use crate::qseries::EXACT;
    use proptest::prelude::*;

    fn ty(l: &str) -> AffineType {
        AffineType::load(l).unwrap()
    }

    fn fw(c: &[i64]) -> FiniteWeight {
        FiniteWeight::new(c)
    }

    #[test]
    fn a1_small_polynomials() {
        let t = ty("A1^(1)");
        let mut b = MacdonaldBasis::build(&t, &fw(&[2]), 8).unwrap();
        assert_eq!(b.polynomial_char(&fw(&[0])).unwrap(), monomial(&t, &fw(&[0])).truncated(8));
        assert_eq!(b.polynomial_char(&fw(&[1])).unwrap(), monomial(&t, &fw(&[1])).truncated(8));
        let expected = MonomialExpansion::term(fw(&[2]), QSeries::one(8))
            .add(&MonomialExpansion::term(fw(&[0]), QSeries::from_i64s(&[1, 1], 8)));
        assert_eq!(*b.polynomial(&fw(&[2])).unwrap(), expected);
        assert_eq!(b.norm_gs(&fw(&[2])).unwrap(), QSeries::from_i64s(&[1, -1, -1, 1], 8));
    }

    #[test]
    fn closed_form_examples() {
        let t = ty("A1^(1)");
        assert_eq!(norm_closed_form(&t, &fw(&[0]), 6).unwrap(), QSeries::one(6));
        assert_eq!(norm_closed_form(&t, &fw(&[1]), 6).unwrap(), QSeries::from_i64s(&[1, -1], 6));
        assert!(norm_closed_form(&t, &fw(&[-1]), 6).is_err());
    }

    #[test]
    fn a1_coefficient_sums_are_powers_of_two() {
        let t = ty("A1^(1)");
        let mut b = MacdonaldBasis::build(&t, &fw(&[5]), 12).unwrap();
        for m in 0..=5i64 {
            let p = b.polynomial_char(&fw(&[m])).unwrap();
            let total: num_rational::BigRational = p.terms().map(|(_, c)| c.sum_coefficients()).sum();
            assert_eq!(total, num_rational::BigRational::from_integer((1i64 << m).into()), "m = {m}");
        }
    }

    /// Orthogonality, positivity and the closed-form norm on small grids.
    #[test]
    fn rank_two_grid() {
        for label in ["A2^(1)", "C2^(1)", "A2^(2)", "A4^(2)", "G2^(1)"] {
            let t = ty(label);
            let n = 6;
            let top = if t.rank() == 1 { fw(&[3]) } else { fw(&[1, 1]) };
            let mut b = MacdonaldBasis::build(&t, &top, n).unwrap();
            let ws: Vec<FiniteWeight> = b.weights().copied().collect();
            for (i, x) in ws.iter().enumerate() {
                let px = b.polynomial(x).unwrap().clone();
                assert_eq!(px.get(x), Some(&QSeries::one(n)));
                assert!(px.terms().all(|(_, c)| c.is_nonneg_integral()), "{label} {x}");
                assert!(px.terms().all(|(w, _)| w == x || t.dominates(x, w)));
                assert_eq!(b.norm_gs(x).unwrap(), norm_closed_form(&t, x, n).unwrap(), "{label} {x}");
                for y in &ws[..i] {
                    let py = b.polynomial(y).unwrap().clone();
                    assert!(b.scalar(&px, &py).is_zero(), "{label} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn scalar_agrees_with_literal_constant_term() {
        let t = ty("C2^(1)");
        let mut b = MacdonaldBasis::build(&t, &fw(&[2, 0]), 5).unwrap();
        let p = b.polynomial(&fw(&[2, 0])).unwrap().clone();
        let q = MonomialExpansion::term(fw(&[0, 1]), QSeries::one(EXACT));
        let via_gram = b.scalar(&p, &q);
        let literal = b.kernels().scalar_q(&p.to_char(&t), &q.to_char(&t)).unwrap();
        assert_eq!(via_gram, literal);
    }

    #[test]
    fn truncation_verification() {
        assert!(verify_truncation(&ty("A2^(2)"), &fw(&[2]), 6).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn inverse_closed_norm_is_nonnegative(a in 0i64..4, b in 0i64..4, idx in 0usize..4) {
            let label = ["A2^(1)", "C2^(1)", "G2^(1)", "A4^(2)"][idx];
            let t = ty(label);
            let inv = norm_closed_form(&t, &fw(&[a, b]), 12).unwrap().invert().unwrap();
            prop_assert!(inv.is_nonneg_integral());
        }
    }
}
