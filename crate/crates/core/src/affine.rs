//! Affine Cartan data.
//!
//! Every type is assembled from its finite part (nodes `1..=n`) and the
//! root `theta`: the highest root for untwisted types and `A_{2n}^(2)`, the
//! highest short root for the remaining twisted types. The invariant form is
//! scaled so that `(theta, theta) = 2 a0`, after which
//! `alpha_0 = (delta - theta) / a0` fixes the affine row and column of the
//! Cartan matrix, the marks and the comarks.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weyl::{AffineWeight, FiniteWeight, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthClass {
    Short,
    Medium,
    Long,
}

/// A root of the finite root system, in two coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRoot {
    /// Coefficients on the simple roots `alpha_1..alpha_n`.
    pub simple: Vec<i64>,
    /// Coordinates in the fundamental-weight basis.
    pub weight: FiniteWeight,
    /// `(alpha, alpha)` under the normalized form.
    pub norm: Rational64,
}

/// A root of the affine algebra: `finite + delta * δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Finite part on the simple roots; half-integral only for `A_{2n}^(2)`.
    pub finite: Vec<Rational64>,
    pub weight: FiniteWeight,
    pub delta: Rational64,
    pub imaginary: bool,
}

impl Root {
    /// `delta` expressed as a power of `u = q^(-1/a0)`.
    pub fn u_exp(&self, a0: i64) -> i64 {
        let e = self.delta * Rational64::from(a0);
        debug_assert!(e.is_integer());
        e.to_integer()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.finite.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + {}δ", parts.join(","), self.delta)
    }
}

#[derive(Clone, Debug)]
pub struct AffineType {
    label: String,
    letter: char,
    label_rank: usize,
    twist: u32,
    n: usize,
    a0: i64,
    cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    norms: Vec<Rational64>,
    classes: Vec<LengthClass>,
    fin_inv: Vec<Vec<Rational64>>,
    simple_weights: Vec<FiniteWeight>,
    roots: Vec<FiniteRoot>,
    theta: FiniteWeight,
    theta_simple: Vec<i64>,
    max_norm: Rational64,
    weyl_order: u64,
    sigma: Vec<usize>,
    w0_word: Vec<usize>,
    stabilizers: Vec<OnceLock<u64>>,
}

struct FiniteShape {
    lengths: Vec<Rational64>,
    edges: Vec<(usize, usize)>,
}

impl FiniteShape {
    fn chain(lengths: Vec<i64>) -> FiniteShape {
        let n = lengths.len();
        FiniteShape {
            lengths: lengths.into_iter().map(Rational64::from).collect(),
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    fn a(n: usize) -> FiniteShape {
        FiniteShape::chain(vec![2; n])
    }

    fn b(n: usize) -> FiniteShape {
        let mut l = vec![2; n];
        l[n - 1] = 1;
        FiniteShape::chain(l)
    }

    fn c(n: usize) -> FiniteShape {
        let mut l = vec![1; n];
        l[n - 1] = 2;
        FiniteShape::chain(l)
    }

    fn d(n: usize) -> FiniteShape {
        let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((n - 3, n - 1));
        FiniteShape {
            lengths: vec![Rational64::from(2); n],
            edges,
        }
    }

    fn e(n: usize) -> FiniteShape {
        let mut edges = vec![(0, 2), (1, 3), (2, 3)];
        edges.extend((3..n - 1).map(|i| (i, i + 1)));
        FiniteShape {
            lengths: vec![Rational64::from(2); n],
            edges,
        }
    }
}

impl AffineType {
    /// Parses a label such as `A3^(1)`, `A4^(2)` or `D4^(3)`.
    pub fn load(label: &str) -> Result<AffineType> {
        let (letter, rank, twist) = parse_label(label)?;
        let range_err = |msg: &str| Error::RankOutOfRange {
            family: format!("{letter}_n^({twist})"),
            rank,
            msg: msg.to_string(),
        };
        // (finite part, theta is the highest short root, a0, r)
        let (shape, short_theta, a0): (FiniteShape, bool, i64) = match (letter, twist) {
            ('A', 1) if rank >= 1 => (FiniteShape::a(rank), false, 1),
            ('B', 1) if rank >= 2 => (FiniteShape::b(rank), false, 1),
            ('C', 1) if rank >= 2 => (FiniteShape::c(rank), false, 1),
            ('D', 1) if rank >= 4 => (FiniteShape::d(rank), false, 1),
            ('E', 1) if (6..=8).contains(&rank) => (FiniteShape::e(rank), false, 1),
            ('F', 1) if rank == 4 => (FiniteShape::chain(vec![2, 2, 1, 1]), false, 1),
            ('G', 1) if rank == 2 => (FiniteShape::chain(vec![3, 1]), false, 1),
            ('A', 2) if rank >= 2 && rank % 2 == 0 => (FiniteShape::c(rank / 2), false, 2),
            ('A', 2) if rank >= 3 => (FiniteShape::c(rank.div_ceil(2)), true, 1),
            ('D', 2) if rank >= 3 => (FiniteShape::b(rank - 1), true, 1),
            ('E', 2) if rank == 6 => (FiniteShape::chain(vec![1, 1, 2, 2]), true, 1),
            ('D', 3) if rank == 4 => (FiniteShape::chain(vec![1, 3]), true, 1),
            ('A', 1) => return Err(range_err("needs n >= 1")),
            ('B', 1) | ('C', 1) => return Err(range_err("needs n >= 2")),
            ('D', 1) => return Err(range_err("needs n >= 4")),
            ('E', 1) => return Err(range_err("needs n in 6..=8")),
            ('F', 1) => return Err(range_err("needs n = 4")),
            ('G', 1) => return Err(range_err("needs n = 2")),
            ('A', 2) => return Err(range_err("needs n >= 2")),
            ('D', 2) => return Err(range_err("needs n >= 3")),
            ('E', 2) => return Err(range_err("needs n = 6")),
            ('D', 3) => return Err(range_err("needs n = 4")),
            _ => return Err(Error::UnknownType(label.to_string())),
        };
        let mut t = AffineType::build(shape, short_theta, a0)?;
        t.label = format!("{letter}{rank}^({twist})");
        t.letter = letter;
        t.label_rank = rank;
        t.twist = twist;
        Ok(t)
    }

    fn build(shape: FiniteShape, short_theta: bool, a0: i64) -> Result<AffineType> {
        let n = shape.lengths.len();
        assert!(n <= MAX_RANK);
        let half = Rational64::new(1, 2);
        let mut form = vec![vec![Rational64::zero(); n]; n];
        for i in 0..n {
            form[i][i] = shape.lengths[i];
        }
        for &(i, j) in &shape.edges {
            let v = -shape.lengths[i].max(shape.lengths[j]) * half;
            form[i][j] = v;
            form[j][i] = v;
        }
        let fin_cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = Rational64::from(2) * form[i][j] / form[i][i];
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();

        let simple_weights: Vec<FiniteWeight> = (0..n)
            .map(|j| FiniteWeight::new(&(0..n).map(|i| fin_cartan[i][j]).collect::<Vec<_>>()))
            .collect();
        let pos_simple = positive_roots(&fin_cartan);
        let norm_of = |c: &[i64]| -> Rational64 {
            let mut s = Rational64::zero();
            for i in 0..n {
                for j in 0..n {
                    s += form[i][j] * Rational64::from(c[i] * c[j]);
                }
            }
            s
        };
        let height = |c: &[i64]| c.iter().sum::<i64>();
        let min_norm = pos_simple.iter().map(|c| norm_of(c)).min().unwrap();
        let theta_simple = pos_simple
            .iter()
            .filter(|c| !short_theta || norm_of(c) == min_norm)
            .max_by_key(|c| height(c))
            .unwrap()
            .clone();
        let scale = Rational64::from(2 * a0) / norm_of(&theta_simple);
        for row in form.iter_mut() {
            for x in row.iter_mut() {
                *x *= scale;
            }
        }
        let norm_of = |c: &[i64]| -> Rational64 {
            let mut s = Rational64::zero();
            for i in 0..n {
                for j in 0..n {
                    s += form[i][j] * Rational64::from(c[i] * c[j]);
                }
            }
            s
        };

        let to_weight = |c: &[i64]| -> FiniteWeight {
            let mut w = FiniteWeight::zero(n);
            for (j, &cj) in c.iter().enumerate() {
                w = w + simple_weights[j].scale(cj);
            }
            w
        };
        let mut roots = Vec::with_capacity(2 * pos_simple.len());
        for c in &pos_simple {
            roots.push(FiniteRoot {
                simple: c.clone(),
                weight: to_weight(c),
                norm: norm_of(c),
            });
        }
        for c in &pos_simple {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            roots.push(FiniteRoot {
                weight: to_weight(&neg),
                simple: neg,
                norm: norm_of(c),
            });
        }
        let max_norm = roots.iter().map(|r| r.norm).max().unwrap();

        // theta pairings: (theta, alpha_j)
        let theta_dot: Vec<Rational64> = (0..n)
            .map(|j| (0..n).map(|i| form[i][j] * Rational64::from(theta_simple[i])).sum())
            .collect();
        let a0r = Rational64::from(a0);
        let mut norms = vec![Rational64::from(2) / a0r];
        norms.extend((0..n).map(|i| form[i][i]));
        let mut cartan = vec![vec![0i64; n + 1]; n + 1];
        cartan[0][0] = 2;
        for j in 0..n {
            let dot0j = -theta_dot[j] / a0r;
            let a0j = Rational64::from(2) * dot0j / norms[0];
            let aj0 = Rational64::from(2) * dot0j / norms[j + 1];
            if !a0j.is_integer() || !aj0.is_integer() {
                return Err(Error::UnknownType("non-integral affine row".into()));
            }
            cartan[0][j + 1] = a0j.to_integer();
            cartan[j + 1][0] = aj0.to_integer();
            for i in 0..n {
                cartan[i + 1][j + 1] = fin_cartan[i][j];
            }
        }
        let mut marks = vec![a0];
        marks.extend(theta_simple.iter().copied());
        let comarks: Vec<i64> = marks
            .iter()
            .zip(&norms)
            .map(|(&a, &l)| {
                let v = Rational64::from(a) * l * half;
                assert!(v.is_integer(), "comark not integral");
                v.to_integer()
            })
            .collect();

        let mut lens: Vec<Rational64> = norms.clone();
        lens.sort();
        lens.dedup();
        let classes = norms
            .iter()
            .map(|l| {
                if *l == lens[lens.len() - 1] {
                    LengthClass::Long
                } else if *l == lens[0] {
                    LengthClass::Short
                } else {
                    LengthClass::Medium
                }
            })
            .collect();

        let fin_inv = invert_matrix(&fin_cartan);
        let theta = to_weight(&theta_simple);
        let mut t = AffineType {
            label: String::new(),
            letter: '?',
            label_rank: 0,
            twist: 0,
            n,
            a0,
            cartan,
            marks,
            comarks,
            norms,
            classes,
            fin_inv,
            simple_weights,
            roots,
            theta,
            theta_simple,
            max_norm,
            weyl_order: 0,
            sigma: Vec::new(),
            w0_word: Vec::new(),
            stabilizers: (0..1usize << n).map(|_| OnceLock::new()).collect(),
        };
        t.weyl_order = t.parabolic_order((1u32 << n) - 1);
        t.sigma = (0..n)
            .map(|i| {
                let d = t.dominant(&FiniteWeight::fundamental(n, i).neg());
                d.coords().iter().position(|&c| c == 1).unwrap()
            })
            .collect();
        let rho = FiniteWeight::new(&vec![1; n]);
        let mut x = rho.neg();
        while let Some(i) = x.coords().iter().position(|&c| c < 0) {
            x = t.reflect(i + 1, &x);
            t.w0_word.push(i + 1);
        }
        Ok(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Rank of the finite part.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    /// The twist order `r` (1 for untwisted types).
    pub fn r(&self) -> i64 {
        self.twist as i64
    }

    /// Affine Cartan matrix with the affine node first.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// `d_i = a_i / a_i^vee`.
    pub fn d(&self) -> Vec<Rational64> {
        self.marks
            .iter()
            .zip(&self.comarks)
            .map(|(&a, &c)| Rational64::new(a, c))
            .collect()
    }

    /// `(alpha_i, alpha_i)` for `i = 0..=n`.
    pub fn node_norms(&self) -> &[Rational64] {
        &self.norms
    }

    pub fn length_classes(&self) -> &[LengthClass] {
        &self.classes
    }

    pub fn is_twisted(&self) -> bool {
        self.twist > 1
    }

    pub fn is_simply_laced(&self) -> bool {
        self.norms.iter().all(|l| *l == self.norms[0])
    }

    /// Simply-laced untwisted or twisted.
    pub fn is_type_one(&self) -> bool {
        self.is_twisted() || self.is_simply_laced()
    }

    /// `(alpha_i, alpha_j)` for affine nodes.
    pub fn node_form(&self, i: usize, j: usize) -> Rational64 {
        self.norms[i] * Rational64::new(self.cartan[i][j], 2)
    }

    /// Finite simple root `alpha_j` (`1 <= j <= n`) in weight coordinates.
    pub fn simple_root(&self, j: usize) -> FiniteWeight {
        self.simple_weights[j - 1]
    }

    pub fn theta(&self) -> FiniteWeight {
        self.theta
    }

    pub fn theta_simple(&self) -> &[i64] {
        &self.theta_simple
    }

    /// All roots of the finite root system, positive ones first.
    pub fn finite_roots(&self) -> &[FiniteRoot] {
        &self.roots
    }

    pub fn positive_finite_roots(&self) -> &[FiniteRoot] {
        &self.roots[..self.roots.len() / 2]
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// Permutation `sigma` of finite nodes with `-w0(Lambda_i) = Lambda_sigma(i)`
    /// (0-based on coordinates).
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// A reduced word for the longest element, nodes `1..=n`.
    pub fn w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    /// Simple-root coordinates of a finite weight.
    pub fn to_simple_coords(&self, w: &FiniteWeight) -> Vec<Rational64> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.fin_inv[i][j] * Rational64::from(w.get(j)))
                    .sum()
            })
            .collect()
    }

    /// Sum of simple-root coordinates.
    pub fn height(&self, w: &FiniteWeight) -> Rational64 {
        self.to_simple_coords(w).into_iter().sum()
    }

    /// Invariant form on finite weights.
    pub fn finite_form(&self, x: &FiniteWeight, y: &FiniteWeight) -> Rational64 {
        let c = self.to_simple_coords(y);
        let mut s = Rational64::zero();
        for j in 0..self.n {
            // (x, alpha_j) = x_j (alpha_j, alpha_j) / 2
            s += c[j] * Rational64::from(x.get(j)) * self.norms[j + 1] / Rational64::from(2);
        }
        s
    }

    /// The invariant form extended by `(Lambda_0, delta) = 1`,
    /// `(Lambda_0, Lambda_0) = (delta, delta) = 0`.
    pub fn bilinear(&self, x: &AffineWeight, y: &AffineWeight) -> Result<Rational64> {
        for w in [x, y] {
            if w.finite.rank() != self.n {
                return Err(Error::WeightLength {
                    got: w.finite.rank(),
                    expected: self.n,
                });
            }
        }
        let a0 = Rational64::from(self.a0);
        Ok(self.finite_form(&x.finite, &y.finite)
            + Rational64::from(x.level) * Rational64::from(y.delta) / a0
            + Rational64::from(y.level) * Rational64::from(x.delta) / a0)
    }

    /// Membership of a finite part (simple-root coordinates) in the lattice
    /// spanned by the finite parts of all real roots.
    pub fn in_qbar(&self, c: &[Rational64]) -> bool {
        (0..self.a0).any(|k| {
            c.iter().zip(&self.theta_simple).all(|(x, &t)| {
                (*x - Rational64::new(k * t, self.a0)).is_integer()
            })
        })
    }

    /// `max((alpha, alpha) / 2, 1)` for a real root.
    pub fn r_alpha(&self, root: &Root) -> Result<i64> {
        if root.imaginary {
            return Err(Error::Parse("r_alpha is undefined on imaginary roots".into()));
        }
        let v = (self.finite_form(&root.weight, &root.weight) / Rational64::from(2)).max(Rational64::one());
        Ok(v.ceil().to_integer())
    }

    /// Finite parts `beta` such that `beta + (e / a0) delta` is a real root, `e >= 1`.
    pub fn roots_at_u_exp(&self, e: i64) -> Vec<FiniteWeight> {
        assert!(e >= 1);
        let r = self.r();
        let long = |fr: &FiniteRoot| fr.norm == self.max_norm;
        if self.a0 == 2 {
            if e % 2 == 1 {
                return self
                    .roots
                    .iter()
                    .filter(|fr| long(fr))
                    .map(|fr| fr.weight.halve())
                    .collect();
            }
            let level = e / 2;
            return self
                .roots
                .iter()
                .filter(|fr| !long(fr) || level % 2 == 0)
                .map(|fr| fr.weight)
                .collect();
        }
        self.roots
            .iter()
            .filter(|fr| !long(fr) || e % r == 0)
            .map(|fr| fr.weight)
            .collect()
    }

    /// Positive real roots with `delta` coefficient at most `bound`, ordered by
    /// level and then lexicographically on the finite part.
    pub fn positive_real_roots(&self, bound: Rational64) -> Vec<Root> {
        let mut out = Vec::new();
        if bound.is_negative() {
            return out;
        }
        let mut level0: Vec<Root> = self
            .positive_finite_roots()
            .iter()
            .map(|fr| self.make_root(fr.weight, Rational64::zero()))
            .collect();
        level0.sort_by(|a, b| a.finite.cmp(&b.finite));
        out.extend(level0);
        let max_e = (bound * Rational64::from(self.a0)).floor().to_integer();
        for e in 1..=max_e {
            let mut lvl: Vec<Root> = self
                .roots_at_u_exp(e)
                .into_iter()
                .map(|w| self.make_root(w, Rational64::new(e, self.a0)))
                .collect();
            lvl.sort_by(|a, b| a.finite.cmp(&b.finite));
            out.extend(lvl);
        }
        out
    }

    fn make_root(&self, weight: FiniteWeight, delta: Rational64) -> Root {
        let finite = self.to_simple_coords(&weight);
        assert!(self.in_qbar(&finite), "root outside the lattice");
        if self.a0 == 1 {
            assert!(finite.iter().all(|c| c.is_integer()));
        }
        Root {
            finite,
            weight,
            delta,
            imaginary: false,
        }
    }

    /// The imaginary root `k delta`.
    pub fn imaginary_root(&self, k: i64) -> Root {
        Root {
            finite: vec![Rational64::zero(); self.n],
            weight: FiniteWeight::zero(self.n),
            delta: Rational64::from(k),
            imaginary: true,
        }
    }

    /// Order of the parabolic subgroup generated by the nodes in `mask`
    /// (bit `i` is finite node `i + 1`).
    pub fn parabolic_order(&self, mask: u32) -> u64 {
        if let Some(v) = self.stabilizers[mask as usize].get() {
            return *v;
        }
        let v = if mask == 0 {
            1
        } else {
            // |W_J| = |W_J . Lambda_j| * |W_{J - j}|
            let j = 31 - mask.leading_zeros() as usize;
            let start = FiniteWeight::fundamental(self.n, j);
            let mut seen = HashSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for i in 0..self.n {
                    if mask & (1 << i) != 0 && x.get(i) != 0 {
                        let y = self.reflect(i + 1, &x);
                        if seen.insert(y) {
                            queue.push_back(y);
                        }
                    }
                }
            }
            seen.len() as u64 * self.parabolic_order(mask & !(1 << j))
        };
        let _ = self.stabilizers[mask as usize].set(v);
        v
    }
}

impl PartialEq for AffineType {
    fn eq(&self, other: &AffineType) -> bool {
        self.label == other.label
    }
}

impl Eq for AffineType {}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn parse_label(label: &str) -> Result<(char, usize, u32)> {
    let err = |pos: usize, msg: &str| Error::LabelParse {
        label: label.to_string(),
        pos,
        msg: msg.to_string(),
    };
    let bytes = label.as_bytes();
    let letter = match bytes.first() {
        Some(c) if b"ABCDEFG".contains(c) => *c as char,
        Some(_) => return Err(err(0, "expected a family letter A-G")),
        None => return Err(err(0, "empty label")),
    };
    let mut i = 1;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == 1 {
        return Err(err(1, "expected a rank"));
    }
    let rank: usize = label[1..i].parse().map_err(|_| err(1, "rank too large"))?;
    for (k, want) in [(0, b'^'), (1, b'(')] {
        if bytes.get(i + k) != Some(&want) {
            return Err(err(i + k, &format!("expected '{}'", want as char)));
        }
    }
    let start = i + 2;
    let mut j = start;
    while j < bytes.len() && bytes[j].is_ascii_digit() {
        j += 1;
    }
    if j == start {
        return Err(err(start, "expected a twist order"));
    }
    let twist: u32 = label[start..j].parse().map_err(|_| err(start, "twist too large"))?;
    if bytes.get(j) != Some(&b')') {
        return Err(err(j, "expected ')'"));
    }
    if j + 1 != bytes.len() {
        return Err(err(j + 1, "trailing characters"));
    }
    if !(1..=3).contains(&twist) {
        return Err(err(start, "twist must be 1, 2 or 3"));
    }
    Ok((letter, rank, twist))
}

/// Positive roots in simple-root coordinates, by the string rule.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all
}

fn invert_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Cartan matrix");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: &[&str] = &[
        "A1^(1)", "A2^(1)", "A3^(1)", "A5^(1)", "B2^(1)", "B3^(1)", "B4^(1)", "C2^(1)", "C3^(1)", "C4^(1)",
        "D4^(1)", "D5^(1)", "E6^(1)", "E7^(1)", "E8^(1)", "F4^(1)", "G2^(1)", "A2^(2)", "A4^(2)",
        "A6^(2)", "A3^(2)", "A5^(2)", "D3^(2)", "D4^(2)", "D5^(2)", "E6^(2)", "D4^(3)",
    ];

    /// Primitive nonnegative integer vector in the kernel of a corank-one
    /// matrix, by fraction-free elimination (independent of the construction).
    fn kernel_vector(m: &[Vec<i64>]) -> Vec<i64> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let rows = m.len();
        let cols = m[0].len();
        let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i][c] != BigInt::from(0)) else { continue };
            a.swap(r, p);
            for i in 0..rows {
                if i != r && a[i][c] != BigInt::from(0) {
                    let (f, g) = (a[i][c].clone(), a[r][c].clone());
                    for k in 0..cols {
                        a[i][k] = &a[i][k] * &g - &a[r][k] * &f;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
        let mut num = vec![BigInt::from(0); cols];
        let mut den = BigInt::from(1);
        for (row, &pc) in pivots.iter().enumerate() {
            den = den.lcm(&a[row][pc]);
        }
        num[free] = den.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            num[pc] = -(&a[row][free] * &den) / &a[row][pc];
        }
        let g = num.iter().fold(BigInt::from(0), |g, x| g.gcd(x));
        let mut v: Vec<i64> = num.iter().map(|x| i64::try_from(x / &g).unwrap()).collect();
        if v.iter().any(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }

    #[test]
    fn null_vectors_match_integer_kernel() {
        for label in ALL {
            let t = AffineType::load(label).unwrap();
            let a = t.cartan();
            assert_eq!(kernel_vector(a), t.marks(), "{label} marks");
            let at: Vec<Vec<i64>> = (0..a.len()).map(|i| (0..a.len()).map(|j| a[j][i]).collect()).collect();
            assert_eq!(kernel_vector(&at), t.comarks(), "{label} comarks");
            assert_eq!(t.comarks()[0], 1);
            assert_eq!(t.a0(), if label.starts_with('A') && label.ends_with("^(2)") && t.rank() * 2 == label[1..label.find('^').unwrap()].parse::<usize>().unwrap() { 2 } else { 1 });
            for i in 0..a.len() {
                for j in 0..a.len() {
                    assert_eq!(t.node_form(i, j), t.node_form(j, i), "{label} symmetry");
                }
            }
        }
    }

    #[test]
    fn known_label_data() {
        let t = AffineType::load("A1^(1)").unwrap();
        assert_eq!(t.cartan(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(t.marks(), &[1, 1]);
        let t = AffineType::load("A2^(2)").unwrap();
        assert_eq!(t.cartan(), &[vec![2, -4], vec![-1, 2]]);
        assert_eq!((t.marks(), t.comarks(), t.r()), (&[2, 1][..], &[1, 2][..], 2));
        assert_eq!(AffineType::load("G2^(1)").unwrap().marks(), &[1, 2, 3]);
        assert_eq!(AffineType::load("D4^(3)").unwrap().marks(), &[1, 2, 1]);
        assert_eq!(AffineType::load("E6^(2)").unwrap().marks(), &[1, 2, 3, 2, 1]);
        assert_eq!(AffineType::load("F4^(1)").unwrap().marks(), &[1, 2, 3, 4, 2]);
        assert_eq!(AffineType::load("A6^(2)").unwrap().marks(), &[2, 2, 2, 1]);
        assert_eq!(AffineType::load("E8^(1)").unwrap().weyl_order(), 696_729_600);
        assert_eq!(AffineType::load("F4^(1)").unwrap().weyl_order(), 1152);
    }

    #[test]
    fn labels_reject_bad_input() {
        for (bad, pos) in [("", 0), ("X1^(1)", 0), ("A^(1)", 1), ("A1(1)", 2), ("A1^1", 3), ("A1^()", 4), ("A1^(1", 5), ("A1^(1)x", 6), ("A1^(4)", 4)] {
            match AffineType::load(bad) {
                Err(Error::LabelParse { pos: p, .. }) => assert_eq!(p, pos, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        for bad in ["A0^(1)", "D3^(1)", "C1^(1)", "E9^(1)", "A1^(2)", "D5^(3)", "E7^(2)"] {
            assert!(matches!(AffineType::load(bad), Err(Error::RankOutOfRange { .. })), "{bad}");
        }
    }

    #[test]
    fn bilinear_basics() {
        let t = AffineType::load("A1^(1)").unwrap();
        let delta = AffineWeight::delta(1, 1);
        let l0 = AffineWeight::lambda0(1);
        assert_eq!(t.bilinear(&delta, &delta).unwrap(), Rational64::zero());
        assert_eq!(t.bilinear(&delta, &l0).unwrap(), Rational64::one());
        assert_eq!(t.bilinear(&l0, &l0).unwrap(), Rational64::zero());
        let a1 = AffineWeight::finite(t.simple_root(1));
        assert_eq!(t.bilinear(&a1, &a1).unwrap(), Rational64::from(2));
        let t2 = AffineType::load("A2^(2)").unwrap();
        // (Lambda_0, alpha_0) = 1/a0
        let alpha0 = t2.affine_simple_root(0);
        assert_eq!(t2.bilinear(&AffineWeight::lambda0(1), &alpha0).unwrap(), Rational64::new(1, 2));
    }

    #[test]
    fn root_enumeration() {
        let t = AffineType::load("A1^(1)").unwrap();
        let r0 = t.positive_real_roots(Rational64::zero());
        assert_eq!(r0.len(), 1);
        let r1 = t.positive_real_roots(Rational64::one());
        let got: Vec<(Rational64, Rational64)> = r1.iter().map(|r| (r.finite[0], r.delta)).collect();
        let one = Rational64::one();
        assert_eq!(got, vec![(one, 0.into()), (-one, one), (one, one)]);
        for r in &r1 {
            assert_eq!(t.r_alpha(r).unwrap(), 1);
        }

        let t = AffineType::load("A2^(2)").unwrap();
        let r = t.positive_real_roots(Rational64::new(1, 2));
        let half = Rational64::new(1, 2);
        let got: Vec<(Rational64, Rational64)> = r.iter().map(|r| (r.finite[0], r.delta)).collect();
        assert_eq!(got, vec![(one, 0.into()), (-half, half), (half, half)]);
        assert_eq!(t.r_alpha(&r[0]).unwrap(), 2);
        assert!(t.r_alpha(&t.imaginary_root(1)).is_err());
    }

    #[test]
    fn root_counts_and_lengths() {
        for label in ALL {
            let t = AffineType::load(label).unwrap();
            // All roots are the Weyl orbits of the simple roots.
            let mut orbit = HashSet::new();
            for j in 1..=t.rank() {
                orbit.extend(t.weyl_orbit(&t.simple_root(j)));
            }
            assert_eq!(orbit.len(), t.finite_roots().len(), "{label}");
            let bound = Rational64::from(2 * t.r());
            let roots = t.positive_real_roots(bound);
            let mut hit_max = false;
            for r in &roots {
                let l = t.finite_form(&r.weight, &r.weight);
                assert!(l <= bound);
                hit_max |= l == bound;
                assert!(t.in_qbar(&r.finite));
            }
            assert!(hit_max, "{label}");
            let short = t.positive_real_roots(Rational64::from(1));
            assert_eq!(&roots[..short.len()], &short[..], "{label} prefix");
        }
    }

    #[test]
    fn weyl_orders() {
        for (label, order) in [("A3^(1)", 24), ("C3^(1)", 48), ("G2^(1)", 12), ("E6^(1)", 51840), ("E7^(1)", 2903040), ("D5^(1)", 1920)] {
            assert_eq!(AffineType::load(label).unwrap().weyl_order(), order, "{label}");
        }
    }
}
