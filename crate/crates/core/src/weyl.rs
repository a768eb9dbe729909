//! Weights, the finite Weyl group action and dominance.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Signed;

use crate::affine::AffineType;
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

/// A point of the finite weight lattice in fundamental-weight coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeight {
    len: u8,
    c: [i32; MAX_RANK],
}

impl FiniteWeight {
    pub fn new(coords: &[i64]) -> FiniteWeight {
        assert!(coords.len() <= MAX_RANK, "rank above {MAX_RANK}");
        let mut c = [0i32; MAX_RANK];
        for (slot, &x) in c.iter_mut().zip(coords) {
            *slot = i32::try_from(x).expect("weight coordinate overflow");
        }
        FiniteWeight {
            len: coords.len() as u8,
            c,
        }
    }

    pub fn zero(n: usize) -> FiniteWeight {
        FiniteWeight::new(&vec![0; n])
    }

    /// The fundamental weight with a 1 at coordinate `i` (0-based).
    pub fn fundamental(n: usize, i: usize) -> FiniteWeight {
        let mut w = FiniteWeight::zero(n);
        w.c[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.len as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.c[..self.len as usize]
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.coords().iter().map(|&x| x as i64).collect()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.c[i] as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.coords().iter().all(|&x| x <= 0)
    }

    pub fn neg(&self) -> FiniteWeight {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> FiniteWeight {
        let mut w = *self;
        for x in w.c.iter_mut() {
            *x = (*x as i64 * k) as i32;
        }
        w
    }

    /// Exact half; panics on odd coordinates.
    pub fn halve(&self) -> FiniteWeight {
        let mut w = *self;
        for x in w.c.iter_mut() {
            assert!(*x % 2 == 0, "weight not divisible by two");
            *x /= 2;
        }
        w
    }

    /// Sum of coordinates.
    pub fn level_sum(&self) -> i64 {
        self.coords().iter().map(|&x| x as i64).sum()
    }

    /// Coordinates permuted: result `i` is `self[perm^-1(i)]`, so that
    /// `Lambda_i` maps to `Lambda_perm(i)`.
    pub fn permute(&self, perm: &[usize]) -> FiniteWeight {
        let mut w = *self;
        for (i, &p) in perm.iter().enumerate() {
            w.c[p] = self.c[i];
        }
        w
    }
}

impl std::ops::Add for FiniteWeight {
    type Output = FiniteWeight;
    fn add(self, rhs: FiniteWeight) -> FiniteWeight {
        debug_assert_eq!(self.len, rhs.len);
        let mut w = self;
        for (x, y) in w.c.iter_mut().zip(rhs.c) {
            *x += y;
        }
        w
    }
}

impl std::ops::Sub for FiniteWeight {
    type Output = FiniteWeight;
    fn sub(self, rhs: FiniteWeight) -> FiniteWeight {
        self + rhs.neg()
    }
}

impl fmt::Debug for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FiniteWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<FiniteWeight> {
        let coords: std::result::Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let coords = coords.map_err(|_| Error::Parse(format!("bad weight {s:?}: expected comma-separated integers")))?;
        if coords.len() > MAX_RANK || coords.iter().any(|x| x.abs() > i32::MAX as i64 / 4) {
            return Err(Error::Parse(format!("weight {s:?} out of range")));
        }
        Ok(FiniteWeight::new(&coords))
    }
}

/// `finite + level * Lambda_0 + (delta / a0) * δ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineWeight {
    pub finite: FiniteWeight,
    pub level: i64,
    /// Coefficient of δ in units of `1 / a0`; equal to the `u`-exponent of `e^delta`.
    pub delta: i64,
}

impl AffineWeight {
    pub fn new(finite: FiniteWeight, level: i64, delta: i64) -> AffineWeight {
        AffineWeight { finite, level, delta }
    }

    pub fn finite(finite: FiniteWeight) -> AffineWeight {
        AffineWeight::new(finite, 0, 0)
    }

    pub fn lambda0(n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::zero(n), 1, 0)
    }

    /// `delta` itself, for a type with the given `a0`.
    pub fn delta(n: usize, a0: i64) -> AffineWeight {
        AffineWeight::new(FiniteWeight::zero(n), 0, a0)
    }

    pub fn delta_coeff(&self, a0: i64) -> Rational64 {
        Rational64::new(self.delta, a0)
    }

    /// Parses `finite;level;num/a0`.
    pub fn parse(s: &str, a0: i64) -> Result<AffineWeight> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("affine weight {s:?}: expected finite;level;num/a0")));
        }
        let finite: FiniteWeight = parts[0].parse()?;
        let level = parts[1].trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad level in {s:?}")))?;
        let (num, den) = match parts[2].split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (parts[2].trim(), "1"),
        };
        let num: i64 = num.parse().map_err(|_| Error::Parse(format!("bad delta in {s:?}")))?;
        let den: i64 = den.parse().map_err(|_| Error::Parse(format!("bad delta in {s:?}")))?;
        if den <= 0 || (num * a0) % den != 0 {
            return Err(Error::BadShift(parts[2].to_string()));
        }
        Ok(AffineWeight::new(finite, level, num * a0 / den))
    }

    pub fn display(&self, a0: i64) -> String {
        format!("{};{};{}/{}", self.finite, self.level, self.delta, a0)
    }
}

impl std::ops::Add for AffineWeight {
    type Output = AffineWeight;
    fn add(self, rhs: AffineWeight) -> AffineWeight {
        AffineWeight::new(self.finite + rhs.finite, self.level + rhs.level, self.delta + rhs.delta)
    }
}

impl std::ops::Sub for AffineWeight {
    type Output = AffineWeight;
    fn sub(self, rhs: AffineWeight) -> AffineWeight {
        AffineWeight::new(self.finite - rhs.finite, self.level - rhs.level, self.delta - rhs.delta)
    }
}

impl AffineWeight {
    pub fn scale(&self, k: i64) -> AffineWeight {
        AffineWeight::new(self.finite.scale(k), self.level * k, self.delta * k)
    }
}

impl AffineType {
    fn check_rank(&self, w: &FiniteWeight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::WeightLength {
                got: w.rank(),
                expected: self.rank(),
            });
        }
        Ok(())
    }

    /// Validates a user-supplied finite weight.
    pub fn weight(&self, coords: &[i64]) -> Result<FiniteWeight> {
        if coords.len() != self.rank() {
            return Err(Error::WeightLength {
                got: coords.len(),
                expected: self.rank(),
            });
        }
        Ok(FiniteWeight::new(coords))
    }

    /// `alpha_i` as an affine weight, `0 <= i <= n`.
    pub fn affine_simple_root(&self, i: usize) -> AffineWeight {
        if i == 0 {
            // (delta - theta) / a0; the finite part lies in the weight lattice.
            let t = self.theta();
            let fin = if self.a0() == 2 { t.halve().neg() } else { t.neg() };
            AffineWeight::new(fin, 0, 1)
        } else {
            AffineWeight::finite(self.simple_root(i))
        }
    }

    /// `<Lambda, alpha_i^vee>`.
    pub fn pairing(&self, w: &AffineWeight, i: usize) -> i64 {
        if i == 0 {
            let s: i64 = (0..self.rank()).map(|j| self.comarks()[j + 1] * w.finite.get(j)).sum();
            w.level - s
        } else {
            w.finite.get(i - 1)
        }
    }

    /// Simple reflection `s_i` on an affine weight.
    pub fn simple_reflection(&self, i: usize, w: &AffineWeight) -> Result<AffineWeight> {
        if i > self.rank() {
            return Err(Error::NodeOutOfRange { node: i, rank: self.rank() });
        }
        self.check_rank(&w.finite)?;
        Ok(self.affine_reflect(i, w))
    }

    pub(crate) fn affine_reflect(&self, i: usize, w: &AffineWeight) -> AffineWeight {
        let k = self.pairing(w, i);
        if k == 0 {
            return *w;
        }
        *w - self.affine_simple_root(i).scale(k)
    }

    /// Finite simple reflection, node `1 <= i <= n`.
    pub fn reflect(&self, i: usize, w: &FiniteWeight) -> FiniteWeight {
        let k = w.get(i - 1);
        if k == 0 {
            return *w;
        }
        *w - self.simple_root(i).scale(k)
    }

    /// The orbit of `w` under the finite Weyl group, by breadth-first closure.
    pub fn weyl_orbit(&self, w: &FiniteWeight) -> Vec<FiniteWeight> {
        let mut seen = HashSet::from([*w]);
        let mut out = vec![*w];
        let mut queue = VecDeque::from([*w]);
        while let Some(x) = queue.pop_front() {
            for i in 1..=self.rank() {
                if x.get(i - 1) != 0 {
                    let y = self.reflect(i, &x);
                    if seen.insert(y) {
                        out.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The dominant element of the orbit of `w`.
    pub fn dominant(&self, w: &FiniteWeight) -> FiniteWeight {
        let mut x = *w;
        while let Some(i) = x.coords().iter().position(|&c| c < 0) {
            x = self.reflect(i + 1, &x);
        }
        x
    }

    /// The anti-dominant element of the orbit of `w`; `w0(w)` for dominant `w`.
    pub fn w_circ(&self, w: &FiniteWeight) -> FiniteWeight {
        self.dominant(&w.neg()).neg()
    }

    /// `-w0(w)`, computed as a linear map.
    pub fn minus_w0(&self, w: &FiniteWeight) -> FiniteWeight {
        w.permute(self.sigma())
    }

    /// Size of the orbit of a dominant weight.
    pub fn orbit_size(&self, dominant: &FiniteWeight) -> u64 {
        let mut mask = 0u32;
        for i in 0..self.rank() {
            if dominant.get(i) == 0 {
                mask |= 1 << i;
            }
        }
        self.weyl_order() / self.parabolic_order(mask)
    }

    /// Positive roots of the reduced system spanning the dominance lattice:
    /// the finite positive roots, plus half the long ones when `a0 = 2`.
    pub(crate) fn dominance_roots(&self) -> Vec<FiniteWeight> {
        let mut out: Vec<FiniteWeight> = self.positive_finite_roots().iter().map(|r| r.weight).collect();
        if self.a0() == 2 {
            let max = self.positive_finite_roots().iter().map(|r| r.norm).max().unwrap();
            out.extend(
                self.positive_finite_roots()
                    .iter()
                    .filter(|r| r.norm == max)
                    .map(|r| r.weight.halve()),
            );
        }
        out
    }

    /// True when `lambda - mu` is a nonnegative combination of simple roots
    /// lying in the lattice spanned by the finite parts of real roots.
    pub fn dominates(&self, lambda: &FiniteWeight, mu: &FiniteWeight) -> bool {
        let c = self.to_simple_coords(&(*lambda - *mu));
        c.iter().all(|x| !x.is_negative()) && self.in_qbar(&c)
    }

    /// All dominant `mu <= lambda`, deepest first and `lambda` last.
    pub fn dominants_below(&self, lambda: &FiniteWeight) -> Result<Vec<FiniteWeight>> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let roots = self.dominance_roots();
        let mut seen = BTreeSet::from([*lambda]);
        let mut queue = VecDeque::from([*lambda]);
        while let Some(x) = queue.pop_front() {
            for b in &roots {
                let y = x - *b;
                if y.is_dominant() && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<(Rational64, FiniteWeight)> =
            seen.into_iter().map(|m| (self.height(&(*lambda - m)), m)).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Ok(out.into_iter().map(|p| p.1).collect())
    }

    /// Moves a positive-level weight into the dominant chamber by greedily
    /// reflecting at the smallest node with negative pairing. Returns the
    /// dominant weight and the word `i_1..i_k` with `s_{i_1}..s_{i_k}` of the
    /// dominant weight equal to the input.
    pub fn to_dominant(&self, w: &AffineWeight) -> Result<(AffineWeight, Vec<usize>)> {
        if w.level < 1 {
            return Err(Error::NonPositiveLevel(w.level));
        }
        self.check_rank(&w.finite)?;
        let mut x = *w;
        let mut word = Vec::new();
        while let Some(i) = (0..=self.rank()).find(|&i| self.pairing(&x, i) < 0) {
            x = self.affine_reflect(i, &x);
            word.push(i);
        }
        Ok((x, word))
    }
}
