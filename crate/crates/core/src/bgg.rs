//! Graded characters of local and global Weyl modules and projective covers,
//! the two multiplicity tables, and the reciprocity check between them.
//!
//! Grading shifts are integer `u`-exponents throughout: a shift `k` in
//! `a0^{-1} Z` enters as `a0 k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::character::{CharElem, MonomialExpansion};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::macdonald::MacdonaldBasis;
use crate::qseries::QSeries;
use crate::weyl::FiniteWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSource {
    WeylFiltration,
    JordanHolder,
}

impl TableSource {
    pub fn name(self) -> &'static str {
        match self {
            TableSource::WeylFiltration => "weyl_filtration",
            TableSource::JordanHolder => "jordan_holder",
        }
    }
}

/// Multiplicities keyed by `(dominant weight, u-shift)`; zeros are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    pub source: TableSource,
    pub entries: BTreeMap<(FiniteWeight, i64), u64>,
}

impl MultTable {
    fn new(source: TableSource) -> MultTable {
        MultTable { source, entries: BTreeMap::new() }
    }

    pub fn get(&self, w: &FiniteWeight, shift: i64) -> u64 {
        self.entries.get(&(*w, shift)).copied().unwrap_or(0)
    }

    /// The same table with every shift moved by `s`.
    pub fn shifted(&self, s: i64) -> MultTable {
        MultTable { source: self.source, entries: self.entries.iter().map(|((w, k), m)| ((*w, k + s), *m)).collect() }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|((w, k), m)| json!({"weight": w.to_vec(), "shift": k, "multiplicity": m}))
            .collect();
        json!({"source": self.source.name(), "entries": rows})
    }

    /// CSV rows `weight,shift,multiplicity,source` with the weight quoted.
    pub fn to_csv_rows(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|((w, k), m)| format!("\"{}\",{},{},{}", w, k, m, self.source.name()))
            .collect()
    }
}

/// `u^shift P(λ⁺)`.
pub fn local_weyl_character(basis: &mut MacdonaldBasis, lambda: &FiniteWeight, shift: i64) -> Result<CharElem> {
    let n = basis.trunc();
    check_shift(shift, n)?;
    Ok(basis.polynomial_char(lambda)?.shifted(shift).truncated(n))
}

/// `u^shift P(λ⁺) / ||P(λ⁺)||²` with the closed-form norm.
pub fn global_weyl_character(basis: &mut MacdonaldBasis, lambda: &FiniteWeight, shift: i64) -> Result<CharElem> {
    let n = basis.trunc();
    check_shift(shift, n)?;
    let inv = basis.norm_closed_form(lambda)?.invert()?;
    Ok(basis.polynomial_char(lambda)?.scale(&inv).shifted(shift).truncated(n))
}

/// `u^shift χ_{λ⁺} / S(q)`, compressed.
pub fn projective_expansion(basis: &mut MacdonaldBasis, lambda: &FiniteWeight, shift: i64) -> Result<MonomialExpansion> {
    let n = basis.trunc();
    check_shift(shift, n)?;
    let chi = basis.irreducible(lambda)?.clone();
    let t = basis.affine_type();
    Ok(chi.mul(t, basis.kernels().s_q_inv()).shifted(shift).truncated(n))
}

pub fn projective_character(basis: &mut MacdonaldBasis, lambda: &FiniteWeight, shift: i64) -> Result<CharElem> {
    Ok(projective_expansion(basis, lambda, shift)?.to_char(basis.affine_type()))
}

fn check_shift(shift: i64, trunc: i64) -> Result<()> {
    if shift < 0 || shift > trunc {
        return Err(Error::BadShift(format!("u-shift {shift} outside 0..={trunc}")));
    }
    Ok(())
}

fn height_key(basis: &MacdonaldBasis, w: &FiniteWeight) -> num_rational::Rational64 {
    basis.affine_type().height(w)
}

/// Decomposes `u^s P(μ⁺)` into shifted irreducible characters by repeatedly
/// removing the highest surviving orbit.
pub fn jordan_holder_multiplicities(basis: &mut MacdonaldBasis, mu: &FiniteWeight, s: i64) -> Result<MultTable> {
    let n = basis.trunc();
    check_shift(s, n)?;
    let mut rest = basis.polynomial(mu)?.shifted(s).truncated(n);
    let mut table = MultTable::new(TableSource::JordanHolder);
    while !rest.is_empty() {
        let top = *rest
            .terms()
            .map(|(w, _)| w)
            .max_by(|a, b| height_key(basis, a).cmp(&height_key(basis, b)).then(a.cmp(b)))
            .expect("nonempty");
        let c = rest.get(&top).expect("present").clone();
        let terms = c.int_terms().ok_or_else(|| Error::Inconsistent {
            weight: top.to_string(),
            exp: 0,
            value: "non-integral coefficient".into(),
        })?;
        for (e, m) in &terms {
            if m.is_negative() {
                return Err(Error::Inconsistent { weight: top.to_string(), exp: *e, value: m.to_string() });
            }
            let m = m.to_i64().expect("multiplicity fits in i64") as u64;
            table.entries.insert((top, *e), m);
        }
        rest = rest.sub(&basis.irreducible(&top)?.scale(&c)).truncated(n);
    }
    Ok(table)
}

/// Dominant weights below some weight in the support of `f`.
fn downward_closure(basis: &MacdonaldBasis, f: &MonomialExpansion) -> Result<Vec<FiniteWeight>> {
    let t = basis.affine_type();
    let mut seen: BTreeSet<FiniteWeight> = BTreeSet::new();
    let mut tops: Vec<FiniteWeight> = f.terms().map(|(w, _)| *w).collect();
    tops.sort_by_key(|w| std::cmp::Reverse(t.height(w)));
    for w in tops {
        if seen.contains(&w) {
            continue;
        }
        seen.extend(t.dominants_below(&w)?);
    }
    Ok(seen.into_iter().collect())
}

/// Pairings `<u^k χ_{λ⁺}/S(q), P(μ⁺)>_q` for every `μ⁺` that can pair nontrivially,
/// or only for `candidates` when given.
pub fn filtration_pairings(
    basis: &mut MacdonaldBasis,
    lambda: &FiniteWeight,
    k: i64,
    candidates: Option<&[FiniteWeight]>,
) -> Result<BTreeMap<FiniteWeight, QSeries>> {
    let n = basis.trunc();
    let f = projective_expansion(basis, lambda, k)?;
    let cands = match candidates {
        Some(c) => c.to_vec(),
        None => downward_closure(basis, &f)?,
    };
    // <F, m_ν> computed once per ν, then combined along each P(μ).
    let mut against_m: HashMap<FiniteWeight, QSeries> = HashMap::new();
    let mut out = BTreeMap::new();
    for mu in &cands {
        let p = basis.polynomial(mu)?.clone();
        let mut acc = QSeries::zero(n);
        for (nu, c) in p.terms() {
            if !against_m.contains_key(nu) {
                let mut s = QSeries::zero(n);
                for (kappa, a) in f.terms() {
                    let g = basis.gram(kappa, nu);
                    if !g.is_zero() {
                        s = &s + &(a * &g);
                    }
                }
                against_m.insert(*nu, s.truncated(n));
            }
            acc = &acc + &(c * &against_m[nu]);
        }
        out.insert(*mu, acc.truncated(n));
    }
    Ok(out)
}

fn table_from_pairings(pairings: &BTreeMap<FiniteWeight, QSeries>) -> Result<MultTable> {
    let mut table = MultTable::new(TableSource::WeylFiltration);
    for (mu, s) in pairings {
        let terms = s.int_terms().ok_or_else(|| Error::Inconsistent {
            weight: mu.to_string(),
            exp: 0,
            value: "non-integral pairing".into(),
        })?;
        for (e, m) in terms {
            if m.is_negative() {
                return Err(Error::Inconsistent { weight: mu.to_string(), exp: e, value: m.to_string() });
            }
            table.entries.insert((*mu, e), m.to_i64().expect("multiplicity fits in i64") as u64);
        }
    }
    Ok(table)
}

/// `[P(λ⁺, k) : W(μ⁺, s)]` read off the pairings with each `P(μ⁺)`.
pub fn weyl_filtration_multiplicities(basis: &mut MacdonaldBasis, lambda: &FiniteWeight, k: i64) -> Result<MultTable> {
    table_from_pairings(&filtration_pairings(basis, lambda, k, None)?)
}

/// Restricted to a fixed set of `μ⁺`.
pub fn weyl_filtration_multiplicities_on(
    basis: &mut MacdonaldBasis,
    lambda: &FiniteWeight,
    k: i64,
    candidates: &[FiniteWeight],
) -> Result<MultTable> {
    table_from_pairings(&filtration_pairings(basis, lambda, k, Some(candidates))?)
}

#[derive(Clone, Debug)]
pub struct ReciprocityRow {
    pub mu: FiniteWeight,
    pub s: i64,
    pub filtration: u64,
    pub jordan_holder: u64,
}

#[derive(Clone, Debug)]
pub struct ReciprocityReport {
    pub lambda: FiniteWeight,
    pub k: i64,
    pub trunc: i64,
    pub weyl_filtration: MultTable,
    pub rows: Vec<ReciprocityRow>,
}

impl ReciprocityReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.filtration == r.jordan_holder)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReciprocityRow> {
        self.rows.iter().filter(|r| r.filtration != r.jordan_holder)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .filter(|r| r.filtration != 0 || r.jordan_holder != 0)
            .map(|r| {
                json!({
                    "weight": r.mu.to_vec(),
                    "shift": r.s,
                    "weyl_filtration": r.filtration,
                    "jordan_holder": r.jordan_holder,
                    "equal": r.filtration == r.jordan_holder,
                })
            })
            .collect();
        json!({
            "weight": self.lambda.to_vec(),
            "shift": self.k,
            "trunc": self.trunc,
            "compared": self.rows.len(),
            "all_equal": self.all_equal(),
            "rows": rows,
        })
    }
}

/// Compares `[P(λ⁺,k) : W(μ⁺,s)]` with the multiplicity of `χ_{λ⁺}` at relative
/// shift `s - k` in `P(μ⁺)`, for every `μ⁺` in the candidate set and every `s <= N`.
pub fn verify_reciprocity(
    basis: &mut MacdonaldBasis,
    lambda: &FiniteWeight,
    k: i64,
    candidates: Option<&[FiniteWeight]>,
) -> Result<ReciprocityReport> {
    let n = basis.trunc();
    let pairings = filtration_pairings(basis, lambda, k, candidates)?;
    let wf = table_from_pairings(&pairings)?;
    let mut rows = Vec::new();
    for mu in pairings.keys() {
        let jh = jordan_holder_multiplicities(basis, mu, 0)?;
        for s in k..=n {
            rows.push(ReciprocityRow {
                mu: *mu,
                s,
                filtration: wf.get(mu, s),
                jordan_holder: jh.get(lambda, s - k),
            });
        }
    }
    Ok(ReciprocityReport { lambda: *lambda, k, trunc: n, weyl_filtration: wf, rows })
}

/// `sum m(μ,s) χ(W(μ,s))` over a filtration table.
pub fn resum_filtration(basis: &mut MacdonaldBasis, table: &MultTable) -> Result<CharElem> {
    let t = basis.affine_type().clone();
    let n = basis.trunc();
    let mut acc = MonomialExpansion::zero(t.rank());
    for ((mu, s), m) in &table.entries {
        let inv = basis.norm_closed_form(mu)?.invert()?;
        let c = inv.shifted(*s).scale_int(&Int::from(*m));
        acc = acc.add(&basis.polynomial(mu)?.scale(&c)).truncated(n);
    }
    Ok(acc.to_char(&t))
}
