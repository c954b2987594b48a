//! Finite root systems in fundamental-weight coordinates.
//!
//! A weight is stored by its Dynkin labels, i.e. its coefficients over the
//! fundamental weights `Λ_1..Λ_n`. Integral weights use `i64` labels and
//! rational ones (such as the vectors `h` defining inner automorphisms) use
//! [`WeightVec`]. The invariant form is normalized so that long roots have
//! norm 2. Simple roots are numbered as in Bourbaki; in particular `C_n` has
//! `α_n` long, `D_n` attaches `α_n` to `α_{n-2}` and `G_2` has `α_1` short.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, invert, q, qi, to_i64, Q};

pub const MAX_RANK: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    letter: Letter,
    rank: usize,
}

impl SimpleType {
    pub fn new(letter: Letter, rank: usize) -> Result<SimpleType> {
        let ok = rank >= 1
            && rank <= MAX_RANK
            && match letter {
                Letter::A => true,
                Letter::B | Letter::C => rank >= 2,
                Letter::D => rank >= 3,
                Letter::E => (6..=8).contains(&rank),
                Letter::F => rank == 4,
                Letter::G => rank == 2,
            };
        if ok {
            Ok(SimpleType { letter, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", letter.as_char(), rank)))
        }
    }

    pub fn letter(&self) -> Letter {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the adjoint representation.
    pub fn dim(&self) -> usize {
        let n = self.rank;
        match self.letter {
            Letter::A => n * (n + 2),
            Letter::B | Letter::C => n * (2 * n + 1),
            Letter::D => n * (2 * n - 1),
            Letter::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Letter::F => 52,
            Letter::G => 14,
        }
    }

    pub fn root_count(&self) -> usize {
        self.dim() - self.rank
    }

    pub fn dual_coxeter(&self) -> u32 {
        let n = self.rank as u32;
        match self.letter {
            Letter::A => n + 1,
            Letter::B => 2 * n - 1,
            Letter::C => n + 1,
            Letter::D => 2 * n - 2,
            Letter::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Letter::F => 9,
            Letter::G => 4,
        }
    }

    /// Squared-length ratio of long to short roots.
    pub fn length_ratio(&self) -> u32 {
        match self.letter {
            Letter::B | Letter::C | Letter::F => 2,
            Letter::G => 3,
            _ => 1,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        self.length_ratio() == 1
    }

    /// One representative per isomorphism class up to `max_rank`, using
    /// `C_2` for `B_2 = C_2` and `A_3` for `D_3 = A_3`.
    pub fn catalog(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for n in 1..=max_rank.min(MAX_RANK) {
            let mut push = |l, min: usize| {
                if n >= min {
                    out.push(SimpleType { letter: l, rank: n });
                }
            };
            push(Letter::A, 1);
            push(Letter::B, 3);
            push(Letter::C, 2);
            push(Letter::D, 4);
            if (6..=8).contains(&n) {
                push(Letter::E, 0);
            }
            if n == 4 {
                push(Letter::F, 0);
            }
            if n == 2 {
                push(Letter::G, 0);
            }
        }
        out
    }

    /// Gram matrix `(α_i|α_j)` of the simple roots.
    pub fn simple_gram(&self) -> Vec<Vec<Q>> {
        let n = self.rank;
        let mut g = vec![vec![Q::zero(); n]; n];
        let mut link = |i: usize, j: usize, v: Q| {
            g[i][j] = v.clone();
            g[j][i] = v;
        };
        match self.letter {
            Letter::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, qi(-1))),
            Letter::B => (0..n - 1).for_each(|i| link(i, i + 1, qi(-1))),
            Letter::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, q(-1, 2)));
                link(n - 2, n - 1, qi(-1));
            }
            Letter::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, qi(-1)));
                link(n - 3, n - 1, qi(-1));
            }
            Letter::E => {
                link(0, 2, qi(-1));
                link(1, 3, qi(-1));
                (2..n - 1).for_each(|i| link(i, i + 1, qi(-1)));
            }
            Letter::F => {
                link(0, 1, qi(-1));
                link(1, 2, qi(-1));
                link(2, 3, q(-1, 2));
            }
            Letter::G => link(0, 1, qi(-1)),
        }
        for i in 0..n {
            g[i][i] = self.simple_norm(i);
        }
        g
    }

    fn simple_norm(&self, i: usize) -> Q {
        let n = self.rank;
        match self.letter {
            Letter::B if i == n - 1 => qi(1),
            Letter::C if i < n - 1 => qi(1),
            Letter::F if i >= 2 => qi(1),
            Letter::G if i == 0 => q(2, 3),
            _ => qi(2),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    /// Accepts `E6`, `E_6` and `E_{6}`.
    fn from_str(s: &str) -> Result<SimpleType> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .and_then(Letter::from_char)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let digits: String = chars.filter(|c| c.is_ascii_digit()).collect();
        let rank = digits
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(letter, rank)
    }
}

/// A rational weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec(pub Vec<Q>);

impl WeightVec {
    pub fn zero(n: usize) -> WeightVec {
        WeightVec(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> WeightVec {
        WeightVec(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn scaled(v: &[i64], s: &Q) -> WeightVec {
        WeightVec(v.iter().map(|&x| qi(x) * s).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Integer labels when every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Q) -> WeightVec {
        WeightVec(self.0.iter().map(|x| x * s).collect())
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    ty: SimpleType,
    gram: Vec<Vec<Q>>,
    cartan: Vec<Vec<i64>>,
    fund: Vec<Vec<Q>>,
    fund_int: Vec<Vec<i64>>,
    fund_den: i64,
    to_root: Vec<Vec<Q>>,
    roots: Vec<Vec<i64>>,
    n_positive: usize,
    theta: Vec<i64>,
    comarks: Vec<i64>,
    dual_coxeter: u32,
}

pub fn build_root_datum(t: SimpleType) -> RootDatum {
    RootDatum::new(t)
}

/// Shared, lazily built datum for `t`.
pub fn datum(t: SimpleType) -> Arc<RootDatum> {
    static CACHE: OnceLock<Mutex<HashMap<SimpleType, Arc<RootDatum>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&t) {
        return d.clone();
    }
    let d = Arc::new(RootDatum::new(t));
    cache.lock().unwrap().entry(t).or_insert(d).clone()
}

impl RootDatum {
    pub fn new(ty: SimpleType) -> RootDatum {
        let n = ty.rank();
        let gram = ty.simple_gram();
        // cartan[i][j] = <α_j, α_i^∨>, so column j holds the labels of α_j.
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| to_i64(&(qi(2) * &gram[i][j] / &gram[i][i])).expect("Cartan entry"))
                    .collect()
            })
            .collect();
        let cq: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let cinv = invert(&cq).expect("Cartan matrix is invertible");
        // (Λ_a|Λ_b) = (α_a|α_a)/2 · (C^{-1})_{ab}
        let fund: Vec<Vec<Q>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| &gram[a][a] / qi(2) * &cinv[a][b])
                    .collect()
            })
            .collect();
        let den = common_denominator(fund.iter().flatten());
        let fund_den = i64::try_from(den.clone()).expect("small denominator");
        let fund_int = fund
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| to_i64(&(x * Q::from_integer(den.clone()))).unwrap())
                    .collect()
            })
            .collect();

        let mut d = RootDatum {
            ty,
            gram,
            cartan,
            fund,
            fund_int,
            fund_den,
            to_root: cinv,
            roots: Vec::new(),
            n_positive: 0,
            theta: Vec::new(),
            comarks: Vec::new(),
            dual_coxeter: 0,
        };

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for j in 0..n {
            let a = d.simple_root(j);
            if seen.insert(a.clone()) {
                queue.push_back(a);
            }
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = d.reflect(i, &r);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<(i64, Vec<i64>, Vec<i64>)> = seen
            .into_iter()
            .filter_map(|r| {
                let c = d.root_coords(&r);
                if c.iter().all(|x| *x >= 0) {
                    Some((c.iter().sum(), c, r))
                } else {
                    None
                }
            })
            .collect();
        pos.sort();
        let n_positive = pos.len();
        let mut roots: Vec<Vec<i64>> = pos.iter().map(|p| p.2.clone()).collect();
        roots.extend(pos.iter().map(|p| p.2.iter().map(|x| -x).collect::<Vec<_>>()));
        let (_, theta_c, theta) = pos.last().cloned().expect("nonempty root system");
        d.comarks = (0..n)
            .map(|i| to_i64(&(qi(theta_c[i]) * &d.gram[i][i] / qi(2))).unwrap())
            .collect();
        d.roots = roots;
        d.n_positive = n_positive;
        d.theta = theta;
        // h∨ = 1 + (θ|ρ)
        d.dual_coxeter = (1 + d.comarks.iter().sum::<i64>()) as u32;
        d
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn simple_gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    /// `cartan()[i][j] = 2(α_i|α_j)/(α_i|α_i)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix `(Λ_i|Λ_j)` of the fundamental weights.
    pub fn fundamental_gram(&self) -> &[Vec<Q>] {
        &self.fund
    }

    pub fn simple_root(&self, j: usize) -> Vec<i64> {
        (0..self.rank()).map(|i| self.cartan[i][j]).collect()
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|j| self.simple_root(j)).collect()
    }

    pub fn fundamental_weight(&self, j: usize) -> Vec<i64> {
        (0..self.rank()).map(|i| i64::from(i == j)).collect()
    }

    /// Positive roots first, ordered by height; then their negatives.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_positive]
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    /// Labels `a_i^∨` with `(θ|λ) = Σ a_i^∨ λ_i`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    /// Coordinates of an integral weight over the simple roots.
    pub fn root_coords_q(&self, mu: &[i64]) -> Vec<Q> {
        self.to_root
            .iter()
            .map(|row| row.iter().zip(mu).map(|(a, &m)| a * qi(m)).sum())
            .collect()
    }

    fn root_coords(&self, mu: &[i64]) -> Vec<i64> {
        self.root_coords_q(mu)
            .iter()
            .map(|x| to_i64(x).expect("root lattice element"))
            .collect()
    }

    /// True when `mu` lies in the root lattice.
    pub fn in_root_lattice(&self, mu: &[i64]) -> bool {
        self.root_coords_q(mu).iter().all(|x| x.is_integer())
    }

    /// True when `mu` lies in the rational span of the roots with integral
    /// coefficients over the simple roots.
    pub fn in_root_lattice_q(&self, mu: &WeightVec) -> bool {
        self.to_root.iter().all(|row| {
            let c: Q = row.iter().zip(&mu.0).map(|(a, m)| a * m).sum();
            c.is_integer()
        })
    }

    pub fn form(&self, a: &WeightVec, b: &WeightVec) -> Q {
        let mut s = Q::zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    s += x * y * &self.fund[i][j];
                }
            }
        }
        s
    }

    /// `den · (a|b)` for integral weights, with `den` from [`Self::form_denominator`].
    pub fn form_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                s += x * y * self.fund_int[i][j];
            }
        }
        s
    }

    pub fn form_denominator(&self) -> i64 {
        self.fund_den
    }

    pub fn form_ints(&self, a: &[i64], b: &[i64]) -> Q {
        q(self.form_int(a, b), self.fund_den)
    }

    pub fn norm(&self, a: &[i64]) -> Q {
        self.form_ints(a, a)
    }

    /// Simple reflection `s_i` on an integral weight.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let m = mu[i];
        mu.iter()
            .enumerate()
            .map(|(k, &x)| x - m * self.cartan[k][i])
            .collect()
    }

    /// Simple reflection `s_i` on a rational weight.
    pub fn reflect_q(&self, i: usize, mu: &WeightVec) -> WeightVec {
        let m = mu.0[i].clone();
        WeightVec(
            mu.0.iter()
                .enumerate()
                .map(|(k, x)| x - &m * qi(self.cartan[k][i]))
                .collect(),
        )
    }

    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        mu.len() == self.rank() && mu.iter().all(|&x| x >= 0)
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::Length {
                expected: self.rank(),
                got: lambda.len(),
            });
        }
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        Ok(())
    }

    /// The Weyl conjugate of `h` with all labels `≤ 0`.
    pub fn antidominant(&self, h: &WeightVec) -> WeightVec {
        let mut h = h.clone();
        while let Some(i) = (0..self.rank()).find(|&i| h.0[i].is_positive()) {
            h = self.reflect_q(i, &h);
        }
        h
    }

    pub fn dominant_conjugate(&self, mu: &[i64]) -> Vec<i64> {
        let mut mu = mu.to_vec();
        while let Some(i) = (0..self.rank()).find(|&i| mu[i] < 0) {
            mu = self.reflect(i, &mu);
        }
        mu
    }

    /// Dominant weights `μ` with `λ − μ` a nonnegative integer combination of
    /// simple roots, found by descending through positive roots.
    pub fn dominant_weights(&self, lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.check_dominant(lambda)?;
        let mut seen: HashSet<Vec<i64>> = HashSet::from([lambda.to_vec()]);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        let mut out = Vec::new();
        while let Some(mu) = queue.pop_front() {
            for a in self.positive_roots() {
                let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
                if self.is_dominant(&nu) && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
            out.push(mu);
        }
        out.sort();
        Ok(out)
    }

    /// Weyl orbit of an integral weight.
    pub fn orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let start = self.dominant_conjugate(mu);
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(nu) = stack.pop() {
            for i in 0..self.rank() {
                if nu[i] > 0 {
                    let s = self.reflect(i, &nu);
                    if seen.insert(s.clone()) {
                        stack.push(s);
                    }
                }
            }
            out.push(nu);
        }
        out
    }

    /// All weights of the irreducible module with highest weight `λ`.
    pub fn weight_support(&self, lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
        let mut out: Vec<Vec<i64>> = self
            .dominant_weights(lambda)?
            .iter()
            .flat_map(|mu| self.orbit(mu))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<num_bigint::BigInt> {
        self.check_dominant(lambda)?;
        let rho = self.rho();
        let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut p = Q::one();
        for a in self.positive_roots() {
            p *= Q::new(self.form_int(&lr, a).into(), self.form_int(&rho, a).into());
        }
        debug_assert!(p.is_integer());
        Ok(p.to_integer())
    }

    /// `min (h|μ)` over the weight support of `λ`. For dominant `μ` the
    /// minimum of `(w h|μ)` over the Weyl group is attained at the
    /// antidominant conjugate of `h`, so only dominant weights are visited.
    pub fn min_pairing(&self, h: &WeightVec, lambda: &[i64]) -> Result<Q> {
        let anti = self.antidominant(h);
        let doms = self.dominant_weights(lambda)?;
        Ok(doms
            .iter()
            .map(|mu| self.form(&anti, &WeightVec::from_ints(mu)))
            .min()
            .expect("support is nonempty"))
    }

    /// Same value as [`Self::min_pairing`] by scanning the whole support.
    pub fn min_pairing_by_support(&self, h: &WeightVec, lambda: &[i64]) -> Result<Q> {
        let c: Vec<Q> = (0..self.rank())
            .map(|j| (0..self.rank()).map(|i| &h.0[i] * &self.fund[i][j]).sum())
            .collect();
        let supp = self.weight_support(lambda)?;
        Ok(supp
            .iter()
            .map(|mu| c.iter().zip(mu).map(|(a, &m)| a * qi(m)).sum::<Q>())
            .min()
            .expect("support is nonempty"))
    }

    pub fn max_pairing(&self, h: &WeightVec, lambda: &[i64]) -> Result<Q> {
        Ok(-self.min_pairing(&h.neg(), lambda)?)
    }

    /// `(h|α)` for every root `α`, in root order.
    pub fn root_pairings(&self, h: &WeightVec) -> Vec<Q> {
        self.roots
            .iter()
            .map(|a| self.form(h, &WeightVec::from_ints(a)))
            .collect()
    }
}

/// Formats integral labels as `Λ1+2Λ6`, or `0`.
pub fn label_string(mu: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in mu.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("Λ{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parses `0`, `Λ1+2Λ6`, `L3-L5`, and the monomial form `Λ1^2Λ2` (meaning
/// `2Λ1+Λ2`) into labels of length `rank`.
pub fn parse_label(s: &str, rank: usize) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("bad weight label {s:?} for rank {rank}"));
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '{' && *c != '}')
        .map(|c| if c == 'Λ' { 'L' } else { c })
        .collect();
    let mut out = vec![0i64; rank];
    if t == "0" {
        return Ok(out);
    }
    let chars: Vec<char> = t.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        }
        let mut coef = String::new();
        while i < chars.len() && chars[i].is_ascii_digit() {
            coef.push(chars[i]);
            i += 1;
        }
        if i >= chars.len() || chars[i] != 'L' {
            return Err(bad());
        }
        i += 1;
        let mut idx = String::new();
        while i < chars.len() && chars[i].is_ascii_digit() {
            idx.push(chars[i]);
            i += 1;
        }
        let mut power = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let mut p = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                p.push(chars[i]);
                i += 1;
            }
            power = p.parse().map_err(|_| bad())?;
        }
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
        let k: usize = idx.parse().map_err(|_| bad())?;
        if k == 0 || k > rank {
            return Err(bad());
        }
        out[k - 1] += sign * c * power;
    }
    Ok(out)
}
