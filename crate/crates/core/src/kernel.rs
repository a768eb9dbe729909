//! The kernels `∇(q,∞)`, `Δ(q,∞)`, `Δ(∞,∞)`, `S(q)` and the two scalar products.
//!
//! Write `D = prod_{alpha in R}(1 - e^alpha)` over the finite roots and
//! `G = prod (1 - e^beta u^(a0 c))` over the real roots `beta + c delta` of
//! positive level. Then `∇ = D G`, `Δ(∞,∞) = D / |W|`, `Δ(q,∞) = ∇ C / |W|`
//! with `C` the product of Pochhammer symbols in the closed form for the
//! constant term of `∇`, and `S(q) = C G`.
//!
//! `G` and `1/G` are built degree by degree from power sums: the level-`e`
//! roots form a Weyl-stable multiset, so `log G` is a sum of orbit sums
//! `m_{k beta}` and Newton's identities give each graded piece of `G` or
//! `1/G` from the previous ones using only products with a handful of orbits.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::affine::AffineType;
use crate::character::{CharElem, MonomialExpansion};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::qseries::{QSeries, EXACT};
use crate::weyl::FiniteWeight;

/// Invariant element with integer coefficients, keyed by dominant weights.
type IntInv = HashMap<FiniteWeight, Int>;

fn add_into(acc: &mut IntInv, w: FiniteWeight, c: &Int) {
    let e = acc.entry(w).or_insert(Int::ZERO);
    e.add_assign(c);
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// Product of invariant integer elements; `small` is expanded over orbits.
fn mul_inv(t: &AffineType, small: &IntInv, large: &IntInv) -> IntInv {
    let mut acc: IntInv = HashMap::new();
    for (mu, b) in small {
        let orbit = t.weyl_orbit(mu);
        for (lambda, a) in large {
            let prod = a.mul(b).mul(&Int::from(t.orbit_size(lambda)));
            for x in &orbit {
                let nu = t.dominant(&(*lambda + *x));
                acc.entry(nu).or_insert(Int::ZERO).add_assign(&prod);
            }
        }
    }
    acc.into_iter()
        .filter_map(|(nu, c)| {
            let size = Int::from(t.orbit_size(&nu));
            let (q, r) = c.div_rem(&size);
            assert!(r.is_zero(), "orbit product not integral");
            (!q.is_zero()).then_some((nu, q))
        })
        .collect()
}

/// `D = prod_{alpha in R} (1 - e^alpha)`, compressed.
fn finite_denominator(t: &AffineType) -> IntInv {
    let mut f: HashMap<FiniteWeight, Int> = HashMap::from([(FiniteWeight::zero(t.rank()), Int::ONE)]);
    for r in t.finite_roots() {
        let mut next = f.clone();
        for (w, c) in &f {
            let e = next.entry(*w + r.weight).or_insert(Int::ZERO);
            e.sub_assign(c);
        }
        next.retain(|_, c| !c.is_zero());
        f = next;
    }
    f.into_iter().filter(|(w, _)| w.is_dominant()).collect()
}

/// `pi_k = sum_{e m = k} e * p_m(R_e)` where `p_m(R_e) = sum_{beta in R_e} e^(m beta)`.
fn power_sums(t: &AffineType, n: i64) -> Vec<IntInv> {
    let mut out = vec![IntInv::new(); n as usize + 1];
    for e in 1..=n {
        let dominant: HashSet<FiniteWeight> = t.roots_at_u_exp(e).into_iter().filter(|w| w.is_dominant()).collect();
        let mut m = 1;
        while e * m <= n {
            for beta in &dominant {
                add_into(&mut out[(e * m) as usize], beta.scale(m), &Int::from(e));
            }
            m += 1;
        }
    }
    out
}

/// Graded pieces `G_0..G_n` of `G` (sign `-1`) or `1/G` (sign `+1`):
/// `k X_k = sign * sum_{i=1..k} pi_i X_{k-i}`.
fn newton(t: &AffineType, pi: &[IntInv], n: i64, sign: i64) -> Vec<IntInv> {
    let zero = FiniteWeight::zero(t.rank());
    let mut x: Vec<IntInv> = vec![IntInv::from([(zero, Int::ONE)])];
    for k in 1..=n as usize {
        let mut acc = IntInv::new();
        for i in 1..=k {
            if pi[i].is_empty() || x[k - i].is_empty() {
                continue;
            }
            for (w, c) in mul_inv(t, &pi[i], &x[k - i]) {
                add_into(&mut acc, w, &c);
            }
        }
        let kk = Int::from(k as i64 * sign);
        let piece: IntInv = acc
            .into_iter()
            .map(|(w, c)| {
                let (q, r) = c.div_rem(&kk);
                assert!(r.is_zero(), "Newton identity not integral");
                (w, q)
            })
            .collect();
        x.push(piece);
    }
    x
}

fn graded_to_expansion(rank: usize, pieces: &[IntInv], trunc: i64) -> MonomialExpansion {
    let mut coeffs: HashMap<FiniteWeight, Vec<Int>> = HashMap::new();
    for (k, piece) in pieces.iter().enumerate() {
        for (w, c) in piece {
            let v = coeffs.entry(*w).or_insert_with(|| vec![Int::ZERO; pieces.len()]);
            v[k] = c.clone();
        }
    }
    let mut out = MonomialExpansion::zero(rank);
    for (w, v) in coeffs {
        out.add_term(w, &QSeries::from_ints(0, v, trunc));
    }
    out
}

/// `C(q)`: the product of `(1 - u^(a0 j r_i))` over `i < n` and of
/// `(1 - u^(j r_n))`, over `j >= 1`.
pub fn pochhammer_constant(t: &AffineType, trunc: i64) -> QSeries {
    let n = t.rank();
    let mut c = QSeries::one(trunc);
    for i in 1..=n {
        let r = node_r(t, i);
        let step = if i < n { t.a0() * r } else { r };
        c = &c * &QSeries::pochhammer(step, trunc);
    }
    c
}

/// `r_(alpha_i) = max((alpha_i, alpha_i) / 2, 1)`.
pub fn node_r(t: &AffineType, i: usize) -> i64 {
    let v = t.node_norms()[i] / num_rational::Rational64::from(2);
    v.max(num_rational::Rational64::from(1)).ceil().to_integer()
}

#[derive(Clone, Debug)]
pub struct KernelSet {
    ty: AffineType,
    trunc: i64,
    nabla: MonomialExpansion,
    nabla_ct: QSeries,
    c_q: QSeries,
    delta_q_inf: MonomialExpansion,
    delta_inf_inf: MonomialExpansion,
    s_q: MonomialExpansion,
    s_q_inv: MonomialExpansion,
}

impl KernelSet {
    pub fn build(t: &AffineType, trunc: i64) -> Result<KernelSet> {
        if trunc < 1 {
            return Err(Error::BadTruncation(trunc));
        }
        let rank = t.rank();
        let order = BigInt::from(t.weyl_order());
        let inv_order = BigRational::new(BigInt::from(1), order.clone());
        let pi = power_sums(t, trunc);
        let g = newton(t, &pi, trunc, -1);
        let h = newton(t, &pi, trunc, 1);
        let d = finite_denominator(t);
        let nabla_pieces: Vec<IntInv> = g.iter().map(|gk| mul_inv(t, &d, gk)).collect();
        let nabla = graded_to_expansion(rank, &nabla_pieces, trunc);
        let c_q = pochhammer_constant(t, trunc);
        let nabla_ct = c_q.invert()?.scale_int(&Int::from(order));
        let delta_q_inf = nabla.scale(&c_q.scale(&inv_order));
        let delta_inf_inf = {
            let mut f = MonomialExpansion::zero(rank);
            for (w, c) in &d {
                f.add_term(*w, &QSeries::monomial(0, c.clone(), EXACT).scale(&inv_order));
            }
            f
        };
        let s_q = graded_to_expansion(rank, &g, trunc).scale(&c_q);
        let s_q_inv = graded_to_expansion(rank, &h, trunc).scale(&c_q.invert()?);
        Ok(KernelSet {
            ty: t.clone(),
            trunc,
            nabla,
            nabla_ct,
            c_q,
            delta_q_inf,
            delta_inf_inf,
            s_q,
            s_q_inv,
        })
    }

    pub fn affine_type(&self) -> &AffineType {
        &self.ty
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// `∇(q,∞)` expanded up to `u^trunc`.
    pub fn nabla(&self) -> &MonomialExpansion {
        &self.nabla
    }

    /// Closed form `|W| / C(q)` of the constant term of `∇(q,∞)`.
    pub fn nabla_ct(&self) -> &QSeries {
        &self.nabla_ct
    }

    pub fn pochhammer_constant(&self) -> &QSeries {
        &self.c_q
    }

    pub fn delta_q_inf(&self) -> &MonomialExpansion {
        &self.delta_q_inf
    }

    pub fn delta_inf_inf(&self) -> &MonomialExpansion {
        &self.delta_inf_inf
    }

    pub fn s_q(&self) -> &MonomialExpansion {
        &self.s_q
    }

    pub fn s_q_inv(&self) -> &MonomialExpansion {
        &self.s_q_inv
    }

    fn coeff(&self, kernel: &MonomialExpansion, x: &FiniteWeight) -> QSeries {
        match kernel.coeff_at(&self.ty, x) {
            Some(s) => s.clone(),
            None => QSeries::zero(kernel.trunc().min(self.trunc)),
        }
    }

    fn gram_with(&self, kernel: &MonomialExpansion, nu: &FiniteWeight, kappa: &FiniteWeight) -> QSeries {
        let mut acc = QSeries::zero(kernel.trunc());
        for b in self.ty.weyl_orbit(kappa) {
            if let Some(s) = kernel.coeff_at(&self.ty, &(b - *nu)) {
                acc = &acc + s;
            }
        }
        acc.scale_int(&Int::from(self.ty.orbit_size(nu)))
    }

    /// `<m_nu, m_kappa>_q = |W nu| sum_{b in W kappa} Δ_{b - nu}`.
    pub fn gram_q(&self, nu: &FiniteWeight, kappa: &FiniteWeight) -> QSeries {
        self.gram_with(&self.delta_q_inf, nu, kappa)
    }

    /// `<m_nu, m_kappa>` against `Δ(∞,∞)`.
    pub fn gram_finite(&self, nu: &FiniteWeight, kappa: &FiniteWeight) -> QSeries {
        self.gram_with(&self.delta_inf_inf, nu, kappa)
    }

    fn scalar_with(&self, kernel: &MonomialExpansion, f: &CharElem, g: &CharElem) -> Result<QSeries> {
        let f = f.to_monomial(&self.ty)?;
        let g = g.to_monomial(&self.ty)?;
        Ok(self.pair_expansions(kernel, &f, &g))
    }

    /// `[f iota(g) K]` for compressed invariant `f`, `g`.
    fn pair_expansions(&self, kernel: &MonomialExpansion, f: &MonomialExpansion, g: &MonomialExpansion) -> QSeries {
        let prod = f.mul(&self.ty, &g.iota(&self.ty));
        // [m_kappa K] = |W kappa| K_(-kappa)
        let mut acc = QSeries::zero(prod.trunc().min(kernel.trunc()));
        for (kappa, c) in prod.terms() {
            let k = self.coeff(kernel, &kappa.neg());
            if k.is_zero() {
                continue;
            }
            acc = &acc + &(&k * c).scale_int(&Int::from(self.ty.orbit_size(kappa)));
        }
        acc
    }

    /// `<f, g>_q = [f iota(g) Δ(q,∞)]`; both arguments must be Weyl-invariant.
    pub fn scalar_q(&self, f: &CharElem, g: &CharElem) -> Result<QSeries> {
        Ok(self.scalar_with(&self.delta_q_inf, f, g)?.truncated(self.trunc))
    }

    /// `<f, g> = [f iota(g) Δ(∞,∞)]`.
    pub fn scalar_finite(&self, f: &CharElem, g: &CharElem) -> Result<QSeries> {
        self.scalar_with(&self.delta_inf_inf, f, g)
    }

    /// [`KernelSet::scalar_q`] on compressed arguments.
    pub fn scalar_q_expansions(&self, f: &MonomialExpansion, g: &MonomialExpansion) -> QSeries {
        self.pair_expansions(&self.delta_q_inf, f, g).truncated(self.trunc)
    }

    pub fn scalar_finite_expansions(&self, f: &MonomialExpansion, g: &MonomialExpansion) -> QSeries {
        self.pair_expansions(&self.delta_inf_inf, f, g)
    }
}
