//! Irreducible modules of simple affine VOAs at positive integral level.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_half_integral, q, qi, Q};
use crate::rootsys::{datum, label_string, RootDatum, SimpleType, WeightVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineLabel {
    ty: SimpleType,
    level: u32,
    lambda: Vec<i64>,
}

impl AffineLabel {
    pub fn new(ty: SimpleType, level: u32, lambda: Vec<i64>) -> Result<AffineLabel> {
        let d = datum(ty);
        check_admissible(&d, level, &lambda)?;
        Ok(AffineLabel { ty, level, lambda })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{}; {})", self.ty, self.level, label_string(&self.lambda))
    }
}

fn check_admissible(d: &RootDatum, level: u32, lambda: &[i64]) -> Result<()> {
    if lambda.len() != d.rank() {
        return Err(Error::Length {
            expected: d.rank(),
            got: lambda.len(),
        });
    }
    if !d.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let t: i64 = d.comarks().iter().zip(lambda).map(|(a, l)| a * l).sum();
    if level == 0 || t > level as i64 {
        return Err(Error::NotAdmissible {
            weight: lambda.to_vec(),
            level,
        });
    }
    Ok(())
}

/// All dominant `λ` with `(θ|λ) ≤ k`, in lexicographic order of labels.
pub fn enumerate_modules(ty: SimpleType, level: u32) -> Result<Vec<AffineLabel>> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let d = datum(ty);
    let marks = d.comarks();
    let n = d.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, marks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left / marks[i] {
            cur[i] = c;
            rec(i + 1, left - c * marks[i], marks, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, level as i64, marks, &mut cur, &mut out);
    out.sort();
    Ok(out
        .into_iter()
        .map(|lambda| AffineLabel { ty, level, lambda })
        .collect())
}

/// `(λ+2ρ|λ) / 2(k+h∨)`.
pub fn conformal_weight(m: &AffineLabel) -> Q {
    let d = datum(m.ty);
    conformal_weight_in(&d, m.level, &m.lambda)
}

fn conformal_weight_in(d: &RootDatum, level: u32, lambda: &[i64]) -> Q {
    let v: Vec<i64> = lambda.iter().map(|x| x + 2).collect();
    d.form_ints(&v, lambda) / qi(2 * (level as i64 + d.dual_coxeter() as i64))
}

/// Tab-separated golden table: labels then reduced conformal weight.
pub fn module_table_text(ty: SimpleType, level: u32) -> Result<String> {
    let mut s = String::new();
    for m in enumerate_modules(ty, level)? {
        let l: Vec<String> = m.lambda.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("[{}]\t{}\n", l.join(","), conformal_weight(&m)));
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct ProductAlgebra {
    factors: Vec<(SimpleType, u32)>,
    data: Vec<Arc<RootDatum>>,
}

impl PartialEq for ProductAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.factors == o.factors
    }
}

impl ProductAlgebra {
    pub fn new(factors: Vec<(SimpleType, u32)>) -> Result<ProductAlgebra> {
        if factors.is_empty() {
            return Err(Error::Precondition("product algebra needs a factor".into()));
        }
        if factors.iter().any(|f| f.1 == 0) {
            return Err(Error::Precondition("levels must be positive".into()));
        }
        let data = factors.iter().map(|f| datum(f.0)).collect();
        Ok(ProductAlgebra { factors, data })
    }

    pub fn factors(&self) -> &[(SimpleType, u32)] {
        &self.factors
    }

    pub fn datum(&self, i: usize) -> &RootDatum {
        &self.data[i]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.0.rank()).sum()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.0.dim()).sum()
    }

    pub fn zero_h(&self) -> HVector {
        HVector(self.factors.iter().map(|f| WeightVec::zero(f.0.rank())).collect())
    }

    fn check_h(&self, h: &HVector) -> Result<()> {
        if h.0.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                got: h.0.len(),
            });
        }
        for (f, hi) in self.factors.iter().zip(&h.0) {
            if hi.len() != f.0.rank() {
                return Err(Error::Length {
                    expected: f.0.rank(),
                    got: hi.len(),
                });
            }
        }
        Ok(())
    }

    fn check_label(&self, m: &ProductLabel) -> Result<()> {
        if m.0.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                got: m.0.len(),
            });
        }
        for (i, l) in m.0.iter().enumerate() {
            check_admissible(&self.data[i], self.factors[i].1, l)?;
        }
        Ok(())
    }

    /// `⟨h|h⟩ = Σ k_i (h_i|h_i)`.
    pub fn hh(&self, h: &HVector) -> Result<Q> {
        self.check_h(h)?;
        Ok(self
            .factors
            .iter()
            .zip(&self.data)
            .zip(&h.0)
            .map(|((f, d), hi)| qi(f.1 as i64) * d.form(hi, hi))
            .sum())
    }

    pub fn conformal_weight(&self, m: &ProductLabel) -> Result<Q> {
        self.check_label(m)?;
        Ok(m.0
            .iter()
            .enumerate()
            .map(|(i, l)| conformal_weight_in(&self.data[i], self.factors[i].1, l))
            .sum())
    }

    /// `Σ k_i h_i`, the weight shift of the twisted sector.
    pub fn level_shift(&self, h: &HVector) -> HVector {
        HVector(
            self.factors
                .iter()
                .zip(&h.0)
                .map(|(f, hi)| hi.scale(&qi(f.1 as i64)))
                .collect(),
        )
    }
}

impl fmt::Display for ProductAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(t, k)| format!("{t}:{k}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ProductAlgebra {
    type Err = Error;

    /// Parses `E6:3 G2:1 G2:1` (commas also accepted).
    fn from_str(s: &str) -> Result<ProductAlgebra> {
        let mut factors = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (t, k) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected TYPE:LEVEL, got {tok:?}")))?;
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad level in {tok:?}")))?;
            factors.push((t.parse()?, k));
        }
        ProductAlgebra::new(factors)
    }
}

/// One highest weight per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductLabel(pub Vec<Vec<i64>>);

impl ProductLabel {
    pub fn vacuum(a: &ProductAlgebra) -> ProductLabel {
        ProductLabel(a.factors.iter().map(|f| vec![0; f.0.rank()]).collect())
    }

    /// Parses `(Λ1+Λ6, Λ1, 0, 0)` against the factor ranks of `a`.
    pub fn parse(a: &ProductAlgebra, s: &str) -> Result<ProductLabel> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != a.len() {
            return Err(Error::Length {
                expected: a.len(),
                got: parts.len(),
            });
        }
        let labels = parts
            .iter()
            .zip(a.factors())
            .map(|(p, f)| crate::rootsys::parse_label(p, f.0.rank()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductLabel(labels))
    }
}

impl fmt::Display for ProductLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| label_string(l)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An element `h` of the Cartan subalgebra, one component per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector(pub Vec<WeightVec>);

impl HVector {
    /// `scale · components`, e.g. `1/2 · (Λ1-Λ6, Λ2, Λ2, 0)`.
    pub fn from_scaled(scale: &Q, components: &[Vec<i64>]) -> HVector {
        HVector(components.iter().map(|c| WeightVec::scaled(c, scale)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(WeightVec::is_zero)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|w| {
                let v: Vec<String> = w.0.iter().map(|x| x.to_string()).collect();
                format!("[{}]", v.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which total conformal weights to keep in [`integral_spectrum_table`].
#[derive(Clone, Debug)]
pub enum WeightFilter {
    AtMost(Q),
    OneOf(Vec<Q>),
}

impl WeightFilter {
    fn bound(&self) -> Q {
        match self {
            WeightFilter::AtMost(b) => b.clone(),
            WeightFilter::OneOf(v) => v.iter().max().cloned().unwrap_or_else(Q::zero),
        }
    }

    fn keeps(&self, w: &Q) -> bool {
        match self {
            WeightFilter::AtMost(b) => w <= b,
            WeightFilter::OneOf(v) => v.contains(w),
        }
    }
}

/// Product labels whose total conformal weight is an integer accepted by
/// `filter`, sorted by weight and then by labels.
pub fn integral_spectrum_table(
    a: &ProductAlgebra,
    filter: &WeightFilter,
) -> Result<Vec<(ProductLabel, Q)>> {
    let bound = filter.bound();
    if bound.is_negative() {
        return Err(Error::Precondition("weight bound must be nonnegative".into()));
    }
    let lists: Vec<Vec<(Vec<i64>, Q)>> = a
        .factors
        .iter()
        .map(|&(t, k)| {
            let mut v: Vec<(Vec<i64>, Q)> = enumerate_modules(t, k)?
                .into_iter()
                .map(|m| {
                    let w = conformal_weight(&m);
                    (m.lambda, w)
                })
                .collect();
            v.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut cur: Vec<Vec<i64>> = Vec::new();
    fn rec(
        i: usize,
        acc: Q,
        bound: &Q,
        lists: &[Vec<(Vec<i64>, Q)>],
        cur: &mut Vec<Vec<i64>>,
        out: &mut Vec<(ProductLabel, Q)>,
    ) {
        if i == lists.len() {
            if acc.is_integer() {
                out.push((ProductLabel(cur.clone()), acc));
            }
            return;
        }
        for (l, w) in &lists[i] {
            let t = &acc + w;
            if &t > bound {
                break;
            }
            cur.push(l.clone());
            rec(i + 1, t, bound, lists, cur, out);
            cur.pop();
        }
    }
    rec(0, Q::zero(), &bound, &lists, &mut cur, &mut out);
    out.retain(|(_, w)| filter.keeps(w));
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
    Ok(out)
}

/// Lowest `L(0)`-weight of the `σ_h`-twisted module built on `L(λ)`:
/// `Σ_i [ cw_i + min (h_i|μ) + k_i (h_i|h_i)/2 ]`.
pub fn product_twisted_lowest(a: &ProductAlgebra, m: &ProductLabel, h: &HVector) -> Result<Q> {
    a.check_label(m)?;
    a.check_h(h)?;
    let mut s = Q::zero();
    for (i, l) in m.0.iter().enumerate() {
        let d = &a.data[i];
        let k = a.factors[i].1;
        s += conformal_weight_in(d, k, l)
            + d.min_pairing(&h.0[i], l)?
            + qi(k as i64) * d.form(&h.0[i], &h.0[i]) / qi(2);
    }
    Ok(s)
}

/// True iff `(h|λ)` and `(h|α)` are half-integers for all listed highest
/// weights and all roots.
pub fn spectrum_half_integral(
    a: &ProductAlgebra,
    h: &HVector,
    labels: &[ProductLabel],
) -> Result<bool> {
    a.check_h(h)?;
    for (i, d) in a.data.iter().enumerate() {
        if !d.root_pairings(&h.0[i]).iter().all(is_half_integral) {
            return Ok(false);
        }
    }
    for m in labels {
        a.check_label(m)?;
        let p: Q = m
            .0
            .iter()
            .enumerate()
            .map(|(i, l)| a.data[i].form(&h.0[i], &WeightVec::from_ints(l)))
            .sum();
        if !is_half_integral(&p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff some root has `(h|α) ∈ ℤ + 1/2`, so that `σ_h` is not trivial
/// on the weight-one space.
pub fn acts_nontrivially(a: &ProductAlgebra, h: &HVector) -> Result<bool> {
    a.check_h(h)?;
    Ok(a
        .data
        .iter()
        .zip(&h.0)
        .any(|(d, hi)| d.root_pairings(hi).iter().any(|p| !p.is_integer())))
}

/// Smallest `(h|α)` over all roots of all factors.
pub fn min_root_pairing(a: &ProductAlgebra, h: &HVector) -> Result<Q> {
    a.check_h(h)?;
    Ok(a.data
        .iter()
        .zip(&h.0)
        .flat_map(|(d, hi)| d.root_pairings(hi))
        .min()
        .unwrap_or_else(Q::zero))
}

/// True iff `w` is a weight of the module with highest weight `λ`.
pub fn is_weight_of(d: &RootDatum, w: &WeightVec, lambda: &[i64]) -> Result<bool> {
    let Some(wi) = w.to_ints() else {
        return Ok(false);
    };
    let diff: Vec<i64> = lambda.iter().zip(&wi).map(|(a, b)| a - b).collect();
    if !d.in_root_lattice(&diff) {
        return Ok(false);
    }
    let dom = d.dominant_conjugate(&wi);
    Ok(d.dominant_weights(lambda)?.contains(&dom))
}

/// True iff `-Σ k_i h_i` is not a weight of any listed module.
pub fn shift_not_a_weight(a: &ProductAlgebra, h: &HVector, labels: &[ProductLabel]) -> Result<bool> {
    let w: Vec<WeightVec> = a.level_shift(h).0.iter().map(WeightVec::neg).collect();
    for m in labels {
        a.check_label(m)?;
        let mut all = true;
        for (i, l) in m.0.iter().enumerate() {
            if !is_weight_of(&a.data[i], &w[i], l)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroWitness {
    Vacuum,
    /// `λ = kΛ_j` and `h = -Λ_j`, with `j` counted from 1.
    Fundamental(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive(Q),
    Zero(ZeroWitness),
    Negative(Q),
    /// A root with `(h|α) < -1`.
    PreconditionFailed { root: Vec<i64>, pairing: Q },
}

/// Classifies the twisted lowest weight of a single factor module.
pub fn twisted_positivity_certificate(m: &AffineLabel, h: &WeightVec) -> Result<Positivity> {
    let d = datum(m.ty);
    if h.len() != d.rank() {
        return Err(Error::Length {
            expected: d.rank(),
            got: h.len(),
        });
    }
    for (a, p) in d.roots().iter().zip(d.root_pairings(h)) {
        if p < qi(-1) {
            return Ok(Positivity::PreconditionFailed {
                root: a.clone(),
                pairing: p,
            });
        }
    }
    let v = twisted_lowest(&d, m.level, &m.lambda, h)?;
    if v.is_positive() {
        return Ok(Positivity::Positive(v));
    }
    if v.is_negative() {
        return Ok(Positivity::Negative(v));
    }
    if h.is_zero() && m.lambda.iter().all(|&x| x == 0) {
        return Ok(Positivity::Zero(ZeroWitness::Vacuum));
    }
    for j in 0..d.rank() {
        let lam_ok = m
            .lambda
            .iter()
            .enumerate()
            .all(|(i, &x)| x == if i == j { m.level as i64 } else { 0 });
        let h_ok = h
            .0
            .iter()
            .enumerate()
            .all(|(i, x)| *x == if i == j { qi(-1) } else { Q::zero() });
        if lam_ok && h_ok {
            return Ok(Positivity::Zero(ZeroWitness::Fundamental(j + 1)));
        }
    }
    Err(Error::Inconsistent(format!(
        "zero twisted weight without witness for {m}"
    )))
}

/// Twisted lowest weight of a single factor module.
pub fn twisted_lowest(d: &RootDatum, level: u32, lambda: &[i64], h: &WeightVec) -> Result<Q> {
    Ok(conformal_weight_in(d, level, lambda)
        + d.min_pairing(h, lambda)?
        + qi(level as i64) * d.form(h, h) * q(1, 2))
}
