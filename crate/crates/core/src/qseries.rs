//! Truncated Laurent series in `u = q^(-1/a0)` with exact rational coefficients.
//!
//! A series stores integer numerators over one shared positive denominator.
//! Every grading exponent that shows up in the characters (`q^(-j r)`,
//! `q^(-j r / a0)`, `e^delta = q^(-1)`) is an integral power of `u`, so no
//! fractional exponents are ever needed.
//!
//! Truncation follows the usual big-O bookkeeping: a series with truncation
//! order `N` knows its coefficients for exponents `<= N` and nothing above.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::int::Int;

/// Truncation order used for series that are exact polynomials.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    low: i64,
    nums: Vec<Int>,
    den: Int,
    trunc: i64,
}

impl QSeries {
    pub fn zero(trunc: i64) -> QSeries {
        QSeries {
            low: 0,
            nums: Vec::new(),
            den: Int::ONE,
            trunc,
        }
    }

    pub fn one(trunc: i64) -> QSeries {
        QSeries::monomial(0, Int::ONE, trunc)
    }

    /// `c * u^exp`.
    pub fn monomial(exp: i64, c: Int, trunc: i64) -> QSeries {
        QSeries::from_ints(exp, vec![c], trunc)
    }

    /// Integer coefficients `coeffs[k]` at exponent `low + k`.
    pub fn from_ints(low: i64, coeffs: Vec<Int>, trunc: i64) -> QSeries {
        let mut s = QSeries {
            low,
            nums: coeffs,
            den: Int::ONE,
            trunc,
        };
        s.normalize();
        s
    }

    /// Convenience constructor: `coeffs[k]` is the coefficient of `u^k`.
    pub fn from_i64s(coeffs: &[i64], trunc: i64) -> QSeries {
        QSeries::from_ints(0, coeffs.iter().map(|&c| Int::from(c)).collect(), trunc)
    }

    pub fn from_terms<I>(terms: I, trunc: i64) -> QSeries
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> = terms
            .into_iter()
            .filter(|(e, c)| *e <= trunc && !c.is_zero())
            .collect();
        if terms.is_empty() {
            return QSeries::zero(trunc);
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut den = BigInt::one();
        for (_, c) in &terms {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let mut nums = vec![Int::ZERO; (high - low + 1) as usize];
        for (e, c) in &terms {
            let scaled = c.numer() * (&den / c.denom());
            nums[(e - low) as usize].add_assign(&Int::from(scaled));
        }
        let mut s = QSeries {
            low,
            nums,
            den: Int::from(den),
            trunc,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = self.trunc.saturating_sub(self.low).saturating_add(1);
        if keep <= 0 {
            self.nums.clear();
        } else if (keep as u64) < self.nums.len() as u64 {
            self.nums.truncate(keep as usize);
        }
        while self.nums.last().is_some_and(Int::is_zero) {
            self.nums.pop();
        }
        let lead = self.nums.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.nums.drain(..lead);
            self.low += lead as i64;
        }
        if self.nums.is_empty() {
            self.low = 0;
            self.den = Int::ONE;
            return;
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.nums {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in &mut self.nums {
                    *c = c.div_exact(&g);
                }
                self.den = self.den.div_exact(&g);
            }
        }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.nums.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.nums.len() as i64 - 1)
        }
    }

    /// Valuation used for truncation bookkeeping; a zero series counts as
    /// `trunc + 1` since it is only known to vanish up to its order.
    fn valuation(&self) -> i64 {
        self.min_exp().unwrap_or(self.trunc.saturating_add(1))
    }

    pub fn denominator(&self) -> BigInt {
        self.den.to_bigint()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        match self.num_at(exp) {
            Some(c) => BigRational::new(c.to_bigint(), self.den.to_bigint()),
            None => BigRational::zero(),
        }
    }

    fn num_at(&self, exp: i64) -> Option<&Int> {
        if exp < self.low {
            return None;
        }
        self.nums.get((exp - self.low) as usize)
    }

    /// Integer coefficient at `exp`, or `None` when it is not an integer.
    pub fn int_coeff(&self, exp: i64) -> Option<Int> {
        if !self.is_integral() {
            let c = self.coeff(exp);
            return if c.is_integer() {
                Some(Int::from(c.to_integer()))
            } else {
                None
            };
        }
        Some(self.num_at(exp).cloned().unwrap_or(Int::ZERO))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        let den = self.den.to_bigint();
        self.nums
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, BigRational::new(c.to_bigint(), den.clone())))
    }

    /// Nonzero integer terms; `None` if some coefficient is not integral.
    pub fn int_terms(&self) -> Option<Vec<(i64, Int)>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            self.nums
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.low + k as i64, c.clone()))
                .collect(),
        )
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.is_integral() && self.nums.iter().all(|c| !c.is_negative())
    }

    pub fn sum_coefficients(&self) -> BigRational {
        let mut s = Int::ZERO;
        for c in &self.nums {
            s.add_assign(c);
        }
        BigRational::new(s.to_bigint(), self.den.to_bigint())
    }

    /// Forgets every coefficient above `n`.
    pub fn truncated(&self, n: i64) -> QSeries {
        let mut s = self.clone();
        s.trunc = s.trunc.min(n);
        s.normalize();
        s
    }

    /// Multiplies by `u^k`.
    pub fn shifted(&self, k: i64) -> QSeries {
        let mut s = self.clone();
        if !s.is_zero() {
            s.low += k;
        }
        s.trunc = s.trunc.saturating_add(k);
        s
    }

    pub fn scale_int(&self, c: &Int) -> QSeries {
        let mut s = self.clone();
        for x in &mut s.nums {
            *x = x.mul(c);
        }
        s.normalize();
        s
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        let mut s = self.scale_int(&Int::from(c.numer().clone()));
        s.den = s.den.mul(&Int::from(c.denom().clone()));
        s.normalize();
        s
    }

    /// Equality of all coefficients with exponent `<= n`.
    pub fn agrees_upto(&self, other: &QSeries, n: i64) -> bool {
        let lo = self.low.min(other.low);
        let mut e = lo;
        while e <= n {
            if self.coeff(e) != other.coeff(e) {
                return false;
            }
            let next_self = self.max_exp().map_or(i64::MAX, |m| if e < m { e + 1 } else { i64::MAX });
            let next_other = other.max_exp().map_or(i64::MAX, |m| if e < m { e + 1 } else { i64::MAX });
            let next = next_self.min(next_other);
            if next == i64::MAX {
                break;
            }
            e = next.max(e + 1);
        }
        true
    }

    fn combine(&self, other: &QSeries, negate: bool) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        if other.is_zero() {
            return self.truncated(trunc);
        }
        if self.is_zero() {
            let s = other.truncated(trunc);
            return if negate { -&s } else { s };
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap()).min(trunc);
        if high < low {
            return QSeries::zero(trunc);
        }
        let len = (high - low + 1) as usize;
        let (fa, fb, den) = if self.den == other.den {
            (Int::ONE, Int::ONE, self.den.clone())
        } else {
            (other.den.clone(), self.den.clone(), self.den.mul(&other.den))
        };
        let mut nums = vec![Int::ZERO; len];
        for (k, c) in self.nums.iter().enumerate() {
            let e = self.low + k as i64;
            if e > high {
                break;
            }
            let slot = &mut nums[(e - low) as usize];
            if fa.is_one() {
                slot.add_assign(c);
            } else {
                slot.add_mul_assign(c, &fa);
            }
        }
        for (k, c) in other.nums.iter().enumerate() {
            let e = other.low + k as i64;
            if e > high {
                break;
            }
            let slot = &mut nums[(e - low) as usize];
            let term = if fb.is_one() { c.clone() } else { c.mul(&fb) };
            if negate {
                slot.sub_assign(&term);
            } else {
                slot.add_assign(&term);
            }
        }
        let mut s = QSeries { low, nums, den, trunc };
        s.normalize();
        s
    }

    fn product(&self, other: &QSeries) -> QSeries {
        let trunc = self
            .trunc
            .saturating_add(other.valuation())
            .min(other.trunc.saturating_add(self.valuation()));
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(trunc);
        }
        let low = self.low + other.low;
        if low > trunc {
            return QSeries::zero(trunc);
        }
        let max = self.max_exp().unwrap() + other.max_exp().unwrap();
        let high = max.min(trunc);
        let len = (high - low + 1) as usize;
        let mut nums = vec![Int::ZERO; len];
        for (i, a) in self.nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if i >= len {
                break;
            }
            let room = (len - i).min(other.nums.len());
            for (j, b) in other.nums[..room].iter().enumerate() {
                nums[i + j].add_mul_assign(a, b);
            }
        }
        let den = if self.den.is_one() && other.den.is_one() {
            Int::ONE
        } else {
            self.den.mul(&other.den)
        };
        let mut s = QSeries { low, nums, den, trunc };
        s.normalize();
        s
    }

    /// Multiplicative inverse modulo the truncation.
    pub fn invert(&self) -> Result<QSeries> {
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("zero series (mod u^{})", self.trunc.saturating_add(1))));
        }
        if self.trunc >= EXACT / 2 {
            return Err(Error::NotInvertible(
                "an exact polynomial has no finite inverse; truncate it first".into(),
            ));
        }
        let v = self.low;
        let order = self.trunc - v;
        let k_max = order as usize;
        let a = &self.nums;
        let c = &a[0];
        // B_k = c^(k+1) b_k stays integral: B_k = -sum_{j=1..k} a_j c^(j-1) B_(k-j).
        let mut c_pow = vec![Int::ONE];
        for j in 1..=k_max + 1 {
            let next = c_pow[j - 1].mul(c);
            c_pow.push(next);
        }
        let mut big_b: Vec<Int> = Vec::with_capacity(k_max + 1);
        big_b.push(Int::ONE);
        for k in 1..=k_max {
            let mut acc = Int::ZERO;
            for j in 1..=k.min(a.len() - 1) {
                if a[j].is_zero() {
                    continue;
                }
                acc.add_mul_assign(&a[j].mul(&c_pow[j - 1]), &big_b[k - j]);
            }
            big_b.push(acc.neg());
        }
        // b_k = B_k / c^(k+1) = B_k c^(K-k) / c^(K+1); the series itself is den * b.
        let nums: Vec<Int> = big_b
            .iter()
            .enumerate()
            .map(|(k, bk)| bk.mul(&c_pow[k_max - k]).mul(&self.den))
            .collect();
        let mut den = c_pow[k_max + 1].clone();
        let mut nums = nums;
        if den.is_negative() {
            den = den.neg();
            for x in &mut nums {
                *x = x.neg();
            }
        }
        let mut s = QSeries {
            low: -v,
            nums,
            den,
            trunc: self.trunc - 2 * v,
        };
        s.normalize();
        Ok(s)
    }

    /// `{"<exp>": "<p/q>", ..., "trunc": N}`; `trunc` is null for exact polynomials.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in self.terms() {
            m.insert(e.to_string(), Value::String(c.to_string()));
        }
        let t = if self.trunc >= EXACT / 2 {
            Value::Null
        } else {
            Value::from(self.trunc)
        };
        m.insert("trunc".into(), t);
        Value::Object(m)
    }

    /// Inverse of [`QSeries::to_json`].
    pub fn from_json(v: &Value) -> Result<QSeries> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("series must be a JSON object".into()))?;
        let trunc = match obj.get("trunc") {
            Some(Value::Null) | None => EXACT,
            Some(t) => t.as_i64().ok_or_else(|| Error::Parse("bad trunc".into()))?,
        };
        let mut terms = Vec::new();
        for (k, c) in obj {
            if k == "trunc" {
                continue;
            }
            let e: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let c: BigRational = c
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad coefficient at u^{e}")))?;
            terms.push((e, c));
        }
        Ok(QSeries::from_terms(terms, trunc))
    }

    /// `prod_{j>=1} (1 - u^(j*step))` modulo `u^(trunc+1)`.
    pub fn pochhammer(step: i64, trunc: i64) -> QSeries {
        assert!(step >= 1, "pochhammer step must be positive");
        let mut coeffs = vec![Int::ZERO; (trunc.max(0) + 1) as usize];
        coeffs[0] = Int::ONE;
        let mut j = 1;
        while j * step <= trunc {
            let shift = (j * step) as usize;
            for e in (shift..coeffs.len()).rev() {
                let prev = coeffs[e - shift].clone();
                coeffs[e].sub_assign(&prev);
            }
            j += 1;
        }
        QSeries::from_ints(0, coeffs, trunc)
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, false)
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, true)
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.product(rhs)
    }
}

impl std::ops::Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let mut s = self.clone();
        for c in &mut s.nums {
            *c = c.neg();
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c < BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}*u")?,
                (_, true) => write!(f, "u^{e}")?,
                (_, false) => write!(f, "{mag}*u^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.trunc < EXACT / 2 {
            write!(f, " + O(u^{})", self.trunc + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64], n: i64) -> QSeries {
        QSeries::from_i64s(c, n)
    }

    #[test]
    fn unit_times_unit() {
        let one = QSeries::one(12);
        assert_eq!(&one * &one, one);
    }

    #[test]
    fn geometric_series() {
        let n = 12;
        let a = s(&[1, -1], n);
        let g = s(&[1; 13], n);
        assert_eq!(&a * &g, QSeries::one(n));
    }

    #[test]
    fn monomials_multiply() {
        let a = QSeries::monomial(-2, Int::ONE, 10);
        let b = QSeries::monomial(3, Int::ONE, 10);
        let p = &a * &b;
        assert_eq!(p.min_exp(), Some(1));
        assert_eq!(p.coeff(1), BigRational::one());
        // min(10 + 3, 10 - 2)
        assert_eq!(p.trunc(), 8);
    }

    #[test]
    fn invert_one_minus_u() {
        let inv = s(&[1, -1], 12).invert().unwrap();
        assert_eq!(inv, s(&[1; 13], 12));
    }

    #[test]
    fn invert_monomial() {
        let inv = QSeries::monomial(3, Int::ONE, 12).invert().unwrap();
        assert_eq!(inv.min_exp(), Some(-3));
        assert_eq!(inv.coeff(-3), BigRational::one());
        assert_eq!(inv.terms().count(), 1);
    }

    #[test]
    fn invert_zero_fails() {
        assert!(QSeries::zero(5).invert().is_err());
    }

    #[test]
    fn invert_rational_leading_term() {
        // (3 - u)^-1 = 1/3 + u/9 + u^2/27 + ...
        let inv = s(&[3, -1], 4).invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(k), BigRational::new(1.into(), BigInt::from(3).pow(k as u32 + 1)));
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(QSeries::pochhammer(5, 4), QSeries::one(4));
        assert_eq!(QSeries::pochhammer(1, 3), s(&[1, -1, -1, 0], 3));
        assert_eq!(QSeries::pochhammer(2, 4), s(&[1, 0, -1, 0, -1], 4));
    }

    #[test]
    fn pochhammer_matches_brute_force_product() {
        let n = 20;
        let mut brute = QSeries::one(n);
        for j in 1..=n {
            let mut f = vec![0i64; (j + 1) as usize];
            f[0] = 1;
            f[j as usize] = -1;
            brute = &brute * &s(&f, n);
        }
        // Euler's pentagonal theorem, independent of both constructions.
        let mut pent = vec![0i64; (n + 1) as usize];
        for k in -4i64..=4 {
            let e = k * (3 * k - 1) / 2;
            if (0..=n).contains(&e) {
                pent[e as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(brute, s(&pent, n));
        assert_eq!(QSeries::pochhammer(1, n), brute);
    }

    #[test]
    fn json_round_trip() {
        let a = QSeries::from_terms([(-1, BigRational::new(3.into(), 4.into())), (2, BigRational::from_integer((-5).into()))], 7);
        let v = a.to_json();
        assert_eq!(v.to_string(), r#"{"-1":"3/4","2":"-5","trunc":7}"#);
        assert_eq!(QSeries::from_json(&v).unwrap(), a);
        assert_eq!(QSeries::from_json(&QSeries::one(EXACT).to_json()).unwrap(), QSeries::one(EXACT));
    }

    #[test]
    fn display_format() {
        let a = s(&[1, -1, 0, 2], 5);
        assert_eq!(a.to_string(), "1 - u + 2*u^3 + O(u^6)");
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (prop::collection::vec(-5i64..=5, 0..8), -2i64..=2, 6i64..=10)
            .prop_map(|(c, low, n)| QSeries::from_ints(low, c.into_iter().map(Int::from).collect(), n))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            let n = 4;
            prop_assert!((&(&a * &b) * &c).agrees_upto(&(&a * &(&b * &c)), n - 6));
            prop_assert!((&a * &b).agrees_upto(&(&b * &a), n));
            prop_assert!((&a * &(&b + &c)).agrees_upto(&(&(&a * &b) + &(&a * &c)), n - 4));
            prop_assert!((&(&a + &b) - &b).agrees_upto(&a, n));
        }

        #[test]
        fn invert_is_involutive(c in prop::collection::vec(-4i64..=4, 1..6), lead in 1i64..=3, low in -2i64..=2) {
            let mut coeffs = vec![Int::from(lead)];
            coeffs.extend(c.into_iter().map(Int::from));
            let a = QSeries::from_ints(low, coeffs, 8);
            let inv = a.invert().unwrap();
            let prod = &a * &inv;
            prop_assert!(prod.agrees_upto(&QSeries::one(prod.trunc()), prod.trunc()));
            let back = inv.invert().unwrap();
            prop_assert!(back.agrees_upto(&a, back.trunc()));
        }

        #[test]
        fn truncation_monotone(a in arb_series(), b in arb_series()) {
            let lo = (&a.truncated(5) * &b.truncated(5)).truncated(3);
            let hi = (&a * &b).truncated(3);
            prop_assert!(lo.agrees_upto(&hi, lo.trunc().min(hi.trunc())));
        }
    }
}
