//! Truncated Laurent series in `q^{1/2}` with exact coefficients, and the
//! Γ0(2) character analysis built on them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};

/// Global exponent denominator: exponent index `n` means `q^{n/2}`.
pub const DENOM: i64 = 2;

/// Default truncation, in half-units: exponents below `q^{12}` are kept.
pub const DEFAULT_TRUNC: i64 = 24;

/// `a_n q^{n/2}` for `start ≤ n < trunc`; coefficients from `trunc` on are
/// unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    start: i64,
    coeffs: Vec<Q>,
    trunc: i64,
}

impl QSeries {
    pub fn zero(trunc: i64) -> QSeries {
        QSeries {
            start: trunc,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn monomial(n: i64, c: Q, trunc: i64) -> QSeries {
        if n >= trunc {
            return QSeries::zero(trunc);
        }
        QSeries {
            start: n,
            coeffs: vec![c],
            trunc,
        }
        .normalized()
    }

    pub fn constant(c: Q, trunc: i64) -> QSeries {
        QSeries::monomial(0, c, trunc)
    }

    /// From `(exponent, coefficient)` pairs; exponents at or past `trunc`
    /// are dropped.
    pub fn from_terms(terms: &[(i64, Q)], trunc: i64) -> QSeries {
        let mut s = QSeries::zero(trunc);
        for (n, c) in terms {
            s = s.add(&QSeries::monomial(*n, c.clone(), trunc));
        }
        s
    }

    fn normalized(mut self) -> QSeries {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.start = self.trunc;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.start += i as i64;
                while self.coeffs.last().is_some_and(Zero::is_zero) {
                    self.coeffs.pop();
                }
            }
        }
        self
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn denom(&self) -> i64 {
        DENOM
    }

    /// Exponent index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Coefficient of `q^{n/2}`.
    pub fn coeff(&self, n: i64) -> Result<Q> {
        if n >= self.trunc {
            return Err(Error::Truncated(n));
        }
        if n < self.start {
            return Ok(Q::zero());
        }
        Ok(self
            .coeffs
            .get((n - self.start) as usize)
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    /// Known `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> Vec<(i64, Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.start + i as i64, c.clone()))
            .collect()
    }

    pub fn truncate(&self, trunc: i64) -> QSeries {
        let t = trunc.min(self.trunc);
        let mut s = self.clone();
        s.trunc = t;
        let keep = (t - s.start).max(0) as usize;
        s.coeffs.truncate(keep);
        s.normalized()
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        let trunc = self.trunc.min(o.trunc);
        let start = self.start.min(o.start).min(trunc);
        let len = (trunc - start).max(0) as usize;
        let mut c = vec![Q::zero(); len];
        for s in [self, o] {
            for (i, x) in s.coeffs.iter().enumerate() {
                let n = s.start + i as i64;
                if n < trunc {
                    c[(n - start) as usize] += x;
                }
            }
        }
        QSeries {
            start,
            coeffs: c,
            trunc,
        }
        .normalized()
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> QSeries {
        QSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc: self.trunc,
        }
        .normalized()
    }

    /// Product; the result is known up to `min(v_a + T_b, v_b + T_a)`.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let (Some(va), Some(vb)) = (self.valuation(), o.valuation()) else {
            let t = match (self.valuation(), o.valuation()) {
                (None, Some(vb)) => self.trunc + vb,
                (Some(va), None) => o.trunc + va,
                _ => self.trunc.min(o.trunc) + self.trunc.max(o.trunc),
            };
            return QSeries::zero(t);
        };
        let trunc = (va + o.trunc).min(vb + self.trunc);
        let start = va + vb;
        let len = (trunc - start).max(0) as usize;
        let mut c = vec![Q::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                c[k] += x * y;
            }
        }
        QSeries {
            start,
            coeffs: c,
            trunc,
        }
        .normalized()
    }

    /// Multiplicative inverse; needs a nonzero leading coefficient. Known up
    /// to `T - 2v`.
    pub fn inverse(&self) -> Result<QSeries> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Precondition("cannot invert a series with no known nonzero term".into()))?;
        let trunc = self.trunc - 2 * v;
        let len = (self.trunc - v) as usize;
        let a0 = self.coeffs[0].clone();
        let mut b = vec![Q::zero(); len];
        b[0] = Q::one() / &a0;
        for k in 1..len {
            let mut s = Q::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s += &self.coeffs[i] * &b[k - i];
            }
            b[k] = -s / &a0;
        }
        Ok(QSeries {
            start: -v,
            coeffs: b,
            trunc,
        }
        .normalized())
    }

    pub fn pow(&self, n: i64) -> Result<QSeries> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QSeries::constant(Q::one(), i64::MAX / 4);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitutes `q^{1/2} → q^{m/2}`, i.e. multiplies every exponent by `m`.
    pub fn rescale(&self, m: i64) -> Result<QSeries> {
        if m <= 0 {
            return Err(Error::Unsupported(format!("exponent rescale by {m}")));
        }
        let terms: Vec<(i64, Q)> = self.terms().into_iter().map(|(n, c)| (n * m, c)).collect();
        Ok(QSeries::from_terms(&terms, self.trunc * m))
    }

    /// `q^{n/2} → (-1)^n q^{n/2}`, the effect of `τ → τ + 1`.
    pub fn t_transform(&self) -> QSeries {
        QSeries {
            start: self.start,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (self.start + i as i64) % 2 == 0 { c.clone() } else { -c })
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Lines `n/2<TAB>num/den` sorted by exponent, nonzero terms only.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (n, c) in self.terms() {
            s.push_str(&format!("{n}/{DENOM}\t{}/{}\n", c.numer(), c.denom()));
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = if n % 2 == 0 {
                format!("{}", n / 2)
            } else {
                format!("{n}/2")
            };
            write!(f, "({c})q^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}/2)", self.trunc)
    }
}

/// `Π_{n≥1} (1 - x^n)^24` up to (excluding) `x^len`.
fn prod24(len: usize) -> Vec<Q> {
    // Euler's pentagonal series for Π(1 - x^n), then the 24th power.
    let mut e = vec![0i64; len];
    if len > 0 {
        e[0] = 1;
    }
    let mut k: i64 = 1;
    loop {
        let p1 = (k * (3 * k - 1) / 2) as usize;
        if p1 >= len {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        e[p1] += sign;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p2 < len {
            e[p2] += sign;
        }
        k += 1;
    }
    let base = QSeries {
        start: 0,
        coeffs: e.into_iter().map(qi).collect(),
        trunc: len as i64,
    };
    let mut acc = QSeries::constant(Q::one(), len as i64);
    for _ in 0..24 {
        acc = acc.mul(&base);
    }
    (0..len as i64).map(|n| acc.coeff(n).unwrap()).collect()
}

/// Which argument `η(sτ)` is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaScale {
    Half,
    One,
    Two,
}

impl EtaScale {
    pub fn from_q(s: &Q) -> Result<EtaScale> {
        if *s == Q::new(1.into(), 2.into()) {
            Ok(EtaScale::Half)
        } else if *s == qi(1) {
            Ok(EtaScale::One)
        } else if *s == qi(2) {
            Ok(EtaScale::Two)
        } else {
            Err(Error::Unsupported(format!("eta scale {s}")))
        }
    }

    /// The scale in half-units of the exponent.
    fn step(self) -> i64 {
        match self {
            EtaScale::Half => 1,
            EtaScale::One => 2,
            EtaScale::Two => 4,
        }
    }
}

/// `η(sτ)^24 = q^s Π (1 - q^{sn})^24`, known below `q^{trunc/2}`.
pub fn eta24(scale: EtaScale, trunc: i64) -> Result<QSeries> {
    if trunc < 1 {
        return Err(Error::Precondition("trunc must be at least 1".into()));
    }
    let m = scale.step();
    let len = ((trunc - m).max(0) / m + 1) as usize;
    let p = prod24(len);
    let terms: Vec<(i64, Q)> = p
        .into_iter()
        .enumerate()
        .map(|(i, c)| (m + m * i as i64, c))
        .collect();
    Ok(QSeries::from_terms(&terms, trunc))
}

fn ensure(s: QSeries, trunc: i64) -> Result<QSeries> {
    if s.trunc() < trunc {
        return Err(Error::Inconsistent(format!(
            "series known only below {} but {} was requested",
            s.trunc(),
            trunc
        )));
    }
    Ok(s.truncate(trunc))
}

/// The Γ0(2) Hauptmodul `f = η(τ)^24 / η(2τ)^24 = q^{-1} - 24 + 276q + …`.
pub fn hauptmodul(trunc: i64) -> Result<QSeries> {
    if trunc < 1 {
        return Err(Error::Precondition("trunc must be at least 1".into()));
    }
    let pad = trunc + 8;
    let a = eta24(EtaScale::One, pad)?;
    let b = eta24(EtaScale::Two, pad + 4)?;
    ensure(a.mul(&b.inverse()?), trunc)
}

/// `f^n(Sτ) = 2^{12n} (η(τ)^24 / η(τ/2)^24)^n` for `n ∈ {1, -1, -2}`.
pub fn hauptmodul_s_power(n: i64, trunc: i64) -> Result<QSeries> {
    if ![1, -1, -2].contains(&n) {
        return Err(Error::Unsupported(format!("S-power {n}")));
    }
    if trunc < 1 {
        return Err(Error::Precondition("trunc must be at least 1".into()));
    }
    let pad = trunc + 8;
    let a = eta24(EtaScale::One, pad)?;
    let b = eta24(EtaScale::Half, pad)?;
    let base = a.mul(&b.inverse()?);
    let prefactor = pow2(12 * n);
    ensure(base.pow(n)?.scale(&prefactor), trunc)
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Q {
    let p = Q::from_integer(num_bigint::BigInt::from(2).pow(e.unsigned_abs() as u32));
    if e < 0 {
        Q::one() / p
    } else {
        p
    }
}

pub fn t_transform(s: &QSeries) -> Result<QSeries> {
    if s.denom() != 2 {
        return Err(Error::Precondition("T-transform needs exponent denominator 2".into()));
    }
    Ok(s.t_transform())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFit {
    pub c0: Q,
    pub c_minus1: Q,
    /// `Z_{V^g}(τ) = f + c0 + c_{-1} f^{-1} + 2^23 f^{-2}`.
    pub series: QSeries,
    /// The same combination evaluated at `Sτ`.
    pub series_s: QSeries,
}

/// `c0 = dim (V^g)_1 + 24` and `c_{-1} = 2^12 (dim V(g)_{1/2}/2 + 24)`.
pub fn character_fit(dim_g1: u64, dim_half: u64, trunc: i64) -> Result<CharacterFit> {
    let c0 = qi(dim_g1 as i64 + 24);
    let c_minus1 = pow2(12) * (Q::new((dim_half as i64).into(), 2.into()) + qi(24));
    let f = hauptmodul(trunc)?;
    let fi = f.inverse()?;
    let fi2 = fi.mul(&fi);
    let series = f
        .add(&QSeries::constant(c0.clone(), trunc))
        .add(&fi.scale(&c_minus1))
        .add(&fi2.scale(&pow2(23)))
        .truncate(trunc);
    let s1 = hauptmodul_s_power(1, trunc)?;
    let sm1 = hauptmodul_s_power(-1, trunc + 2)?;
    let sm2 = hauptmodul_s_power(-2, trunc + 4)?;
    let series_s = s1
        .add(&QSeries::constant(c0.clone(), trunc))
        .add(&sm1.scale(&c_minus1))
        .add(&sm2.scale(&pow2(23)))
        .truncate(trunc);
    Ok(CharacterFit {
        c0,
        c_minus1,
        series,
        series_s,
    })
}

/// The constant `98580 = C(24,2) + 24·2^12` of the weight-two identity.
pub fn weight_two_constant() -> i64 {
    276 + 24 * 4096
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionIdentities {
    /// `dim Ṽ_1 = 3 dim (V^g)_1 + 24 (1 - dim V(g)_{1/2}) - dim V_1`.
    pub dim_tilde1: i64,
    /// `dim (V^g)_2 = 98580 + 2^11 dim V(g)_{1/2}`.
    pub dim_g2: i64,
    /// `dim Ṽ_1` read off the constant term of `Z + Z∘S + Z∘ST`.
    pub dim_tilde1_series: i64,
    /// `dim (V^g)_2` read off the `q` coefficient of the fitted character.
    pub dim_g2_series: i64,
}

/// Both dimension identities, by closed form and by expanding the series;
/// any disagreement is an error.
pub fn dimension_identities(dim_v1: u64, dim_g1: u64, dim_half: u64) -> Result<DimensionIdentities> {
    let (v1, g1, dh) = (dim_v1 as i64, dim_g1 as i64, dim_half as i64);
    let dim_tilde1 = 3 * g1 + 24 * (1 - dh) - v1;
    let dim_g2 = weight_two_constant() + 2048 * dh;

    let fit = character_fit(dim_g1, dim_half, 6)?;
    let zst = fit.series_s.t_transform();
    let total = fit.series.add(&fit.series_s).add(&zst);
    let as_int = |x: Q, what: &str| {
        crate::rational::to_i64(&x)
            .ok_or_else(|| Error::Inconsistent(format!("{what} is not an integer: {x}")))
    };
    if total.coeff(-2)? != qi(2) || !total.coeff(-1)?.is_zero() {
        return Err(Error::Inconsistent(format!(
            "polar part of the three-term sum is wrong: {total}"
        )));
    }
    let dim_tilde1_series = as_int(total.coeff(0)?, "constant term")? - v1;
    let dim_g2_series = as_int(fit.series.coeff(2)?, "q coefficient")?;
    let half_check = fit.series_s.coeff(-1)? * qi(2);
    if half_check != qi(dh) {
        return Err(Error::Inconsistent(format!(
            "q^(-1/2) coefficient of Z(Sτ) gives {half_check}, expected {dh}"
        )));
    }
    if dim_tilde1 != dim_tilde1_series || dim_g2 != dim_g2_series {
        return Err(Error::Inconsistent(format!(
            "closed form ({dim_tilde1}, {dim_g2}) differs from series route ({dim_tilde1_series}, {dim_g2_series})"
        )));
    }
    Ok(DimensionIdentities {
        dim_tilde1,
        dim_g2,
        dim_tilde1_series,
        dim_g2_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_monomial() {
        let s = QSeries::monomial(-2, qi(4), 10);
        let i = s.inverse().unwrap();
        assert_eq!(i.coeff(2).unwrap(), Q::new(1.into(), 4.into()));
        assert_eq!(i.trunc(), 14);
    }

    #[test]
    fn truncation_propagates() {
        let a = QSeries::from_terms(&[(-2, qi(1)), (0, qi(3))], 6);
        let b = QSeries::from_terms(&[(1, qi(1))], 5);
        assert_eq!(a.mul(&b).trunc(), 3);
        assert!(a.mul(&b).coeff(3).is_err());
    }
}
