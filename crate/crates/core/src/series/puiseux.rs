//! Truncated Puiseux series with coefficients in Q(√2)[b].
//!
//! A series stores terms `c_k · x^(k/m)` for integer keys `k` and a ramification
//! `m`; every exponent at or above `order/m` is unknown. `order == None` marks an
//! exact (finite) expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::param::ParamCoeff;
use crate::error::{Error, Result};
use crate::exactnum::rational::exact_root;
use crate::exactnum::{QSqrt2, Rational};

/// Name of the expansion variable; only used for display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesVar {
    /// `ρ = 1/r`.
    Rho,
    X,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    pub var: SeriesVar,
    ram: u32,
    terms: BTreeMap<i64, ParamCoeff>,
    order: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact n-th root in Q(√2), when one exists.
pub fn qsqrt2_root(c: &QSqrt2, n: u32) -> Option<QSqrt2> {
    if c.is_rational() {
        if let Some(x) = exact_root(&c.a, n) {
            return Some(QSqrt2::from_rational(x));
        }
    }
    if n == 2 {
        // (x + y√2)² = a + b√2  ⇔  x² + 2y² = a, 2xy = b
        let t = exact_root(&c.norm(), 2)?;
        for cand in [(&c.a + &t) / r(2, 1), (&c.a - &t) / r(2, 1)] {
            if let Some(x) = exact_root(&cand, 2) {
                let z = if x.is_zero() {
                    QSqrt2::new(Rational::zero(), exact_root(&(&c.a / r(2, 1)), 2)?)
                } else {
                    QSqrt2::new(x.clone(), &c.b / (r(2, 1) * &x))
                };
                if &z * &z == *c {
                    return Some(if z.sign() < 0 { -z } else { z });
                }
            }
        }
        return None;
    }
    if n.is_multiple_of(2) {
        return qsqrt2_root(c, 2).and_then(|s| qsqrt2_root(&s, n / 2));
    }
    None
}

impl PuiseuxSeries {
    pub fn new(
        var: SeriesVar,
        ram: u32,
        terms: BTreeMap<i64, ParamCoeff>,
        order: Option<i64>,
    ) -> Self {
        assert!(ram >= 1);
        let terms = terms
            .into_iter()
            .filter(|(k, c)| !c.is_zero() && order.is_none_or(|o| *k < o))
            .collect();
        PuiseuxSeries {
            var,
            ram,
            terms,
            order,
        }
    }

    /// Build from `(numerator k, coefficient)` pairs with exponent `k/ram`.
    pub fn from_terms(
        var: SeriesVar,
        ram: u32,
        terms: Vec<(i64, ParamCoeff)>,
        order: Option<i64>,
    ) -> Self {
        let mut map: BTreeMap<i64, ParamCoeff> = BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_insert_with(ParamCoeff::zero);
            *e = &*e + &c;
        }
        Self::new(var, ram, map, order)
    }

    pub fn monomial(var: SeriesVar, c: ParamCoeff, k: i64) -> Self {
        Self::from_terms(var, 1, vec![(k, c)], None)
    }

    pub fn constant(var: SeriesVar, c: ParamCoeff) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    /// Truncation order as an exponent, `None` if exact.
    pub fn order(&self) -> Option<Rational> {
        self.order.map(|o| r(o, self.ram as i64))
    }

    /// Stored terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(Rational, ParamCoeff)> {
        self.terms
            .iter()
            .map(|(k, c)| (r(*k, self.ram as i64), c.clone()))
            .collect()
    }

    pub fn coeff(&self, exponent: &Rational) -> ParamCoeff {
        let k = exponent * Rational::from_integer(BigInt::from(self.ram));
        if !k.is_integer() {
            return ParamCoeff::zero();
        }
        let k: i64 = k.to_integer().try_into().unwrap_or(i64::MAX);
        self.terms.get(&k).cloned().unwrap_or_else(ParamCoeff::zero)
    }

    /// Lowest known exponent.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|k| r(*k, self.ram as i64))
    }

    pub fn truncate(&self, order: &Rational) -> Self {
        let k = (order * Rational::from_integer(BigInt::from(self.ram)))
            .floor()
            .to_integer();
        let k: i64 = k.try_into().expect("order out of range");
        Self::new(
            self.var,
            self.ram,
            self.terms.clone(),
            min_order(self.order, Some(k)),
        )
    }

    fn with_ram(&self, ram: u32) -> Self {
        if ram == self.ram {
            return self.clone();
        }
        assert_eq!(ram % self.ram, 0);
        let f = (ram / self.ram) as i64;
        PuiseuxSeries {
            var: self.var,
            ram,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            order: self.order.map(|o| o * f),
        }
    }

    fn unify(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.var != b.var {
            return Err(Error::Incompatible(format!(
                "series in {:?} and {:?}",
                a.var, b.var
            )));
        }
        let m = (a.ram as u64).lcm(&(b.ram as u64)) as u32;
        Ok((a.with_ram(m), b.with_ram(m)))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, o)?;
        let mut t = a.terms.clone();
        for (k, c) in &b.terms {
            let e = t.entry(*k).or_insert_with(ParamCoeff::zero);
            *e = &*e + c;
        }
        Ok(Self::new(a.var, a.ram, t, min_order(a.order, b.order)))
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.var,
            self.ram,
            self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            self.order,
        )
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ParamCoeff) -> Self {
        Self::new(
            self.var,
            self.ram,
            self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
            self.order,
        )
    }

    pub fn scale_q(&self, c: &QSqrt2) -> Self {
        self.scale(&ParamCoeff::constant(c.clone()))
    }

    /// Multiply by `x^(k/ram)`.
    pub fn shift(&self, exponent: &Rational) -> Self {
        let m = (self.ram as u64).lcm(&(exponent.denom().try_into().unwrap_or(1u64))) as u32;
        let s = self.with_ram(m);
        let k: i64 = (exponent * Rational::from_integer(BigInt::from(m)))
            .to_integer()
            .try_into()
            .unwrap();
        Self::new(
            s.var,
            m,
            s.terms.iter().map(|(j, c)| (j + k, c.clone())).collect(),
            s.order.map(|o| o + k),
        )
    }

    fn lowest_key(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, o)?;
        let exact_zero = |s: &Self| s.terms.is_empty() && s.order.is_none();
        if exact_zero(&a) || exact_zero(&b) {
            return Ok(Self::new(a.var, a.ram, BTreeMap::new(), None));
        }
        let va = a.lowest_key().or(a.order).unwrap();
        let vb = b.lowest_key().or(b.order).unwrap();
        let order = min_order(a.order.map(|x| x + vb), b.order.map(|x| x + va));
        let mut t: BTreeMap<i64, ParamCoeff> = BTreeMap::new();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                if order.is_some_and(|o| i + j >= o) {
                    continue;
                }
                let e = t.entry(i + j).or_insert_with(ParamCoeff::zero);
                *e = &*e + &(x * y);
            }
        }
        Ok(Self::new(a.var, a.ram, t, order))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(self.var, ParamCoeff::from_int(1));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Split `self = c·x^v·(1 + u)`; `c` must be free of `b`.
    fn unit_split(&self) -> Result<(QSqrt2, i64, Self)> {
        let (v, c) = self
            .terms
            .iter()
            .next()
            .map(|(k, c)| (*k, c.clone()))
            .ok_or_else(|| Error::Incompatible("series has no known leading term".into()))?;
        let c0 = c
            .as_constant()
            .ok_or_else(|| Error::Incompatible(format!("leading coefficient {c} depends on b")))?;
        let inv = c0.inv().unwrap();
        let u = Self::new(
            self.var,
            self.ram,
            self.terms
                .iter()
                .filter(|(k, _)| **k != v)
                .map(|(k, x)| (k - v, x.scale(&inv)))
                .collect(),
            self.order.map(|o| o - v),
        );
        Ok((c0, v, u))
    }

    /// `Σ_{k≥0} coeffs[k]·u^k` for `u` of positive valuation, to `u`'s order.
    fn power_sum(u: &Self, coeffs: impl Fn(usize) -> Rational) -> Result<Self> {
        let ou = u.order.ok_or_else(|| {
            Error::Incompatible("an exact argument needs an explicit truncation order".into())
        })?;
        let mut out = Self::new(u.var, u.ram, BTreeMap::new(), Some(ou));
        out.terms
            .insert(0, ParamCoeff::constant(QSqrt2::from_rational(coeffs(0))));
        let Some(vu) = u.lowest_key() else {
            out.terms.retain(|_, c| !c.is_zero());
            return Ok(Self::new(out.var, out.ram, out.terms, out.order));
        };
        if vu <= 0 {
            return Err(Error::Incompatible(
                "argument must have positive valuation".into(),
            ));
        }
        let mut upow = Self::constant(u.var, ParamCoeff::from_int(1)).with_ram(u.ram);
        let mut k = 1usize;
        while (k as i64) * vu < ou {
            upow = upow.mul(u)?;
            let c = coeffs(k);
            if !c.is_zero() {
                out = out.add(&upow.scale_q(&QSqrt2::from_rational(c)))?;
            }
            k += 1;
        }
        Ok(Self::new(out.var, out.ram, out.terms, Some(ou)))
    }

    pub fn inv(&self) -> Result<Self> {
        let (c, v, u) = self.unit_split()?;
        let s = Self::power_sum(&u, |k| {
            if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
        })?;
        let ci = c.inv().unwrap();
        let inner = s.scale_q(&ci);
        Ok(Self::new(
            inner.var,
            inner.ram,
            inner
                .terms
                .iter()
                .map(|(k, x)| (k - v, x.clone()))
                .collect(),
            inner.order.map(|o| o - v),
        ))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// `log(1 + self)` for positive valuation.
    pub fn log1p(&self) -> Result<Self> {
        Self::power_sum(self, |k| {
            if k == 0 {
                Rational::zero()
            } else if k % 2 == 1 {
                r(1, k as i64)
            } else {
                r(-1, k as i64)
            }
        })
    }

    /// Principal `n`-th root; the leading coefficient must be a `b`-free exact `n`-th power.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        let base = if self.lowest_key().is_some_and(|v| v % n as i64 != 0) {
            self.with_ram(self.ram * n)
        } else {
            self.clone()
        };
        let (c, v, u) = base.unit_split()?;
        let rc = qsqrt2_root(&c, n)
            .ok_or_else(|| Error::NotExtractable(format!("{n}-th root of {c}")))?;
        let alpha = r(1, n as i64);
        let s = Self::power_sum(&u, |k| {
            // binomial(1/n, k)
            let mut acc = Rational::one();
            for j in 0..k {
                acc = acc * (&alpha - Rational::from_integer(BigInt::from(j)))
                    / Rational::from_integer(BigInt::from(j + 1));
            }
            acc
        })?;
        let s = s.scale_q(&rc);
        let shift = v / n as i64;
        Ok(Self::new(
            s.var,
            s.ram,
            s.terms
                .iter()
                .map(|(k, x)| (k + shift, x.clone()))
                .collect(),
            s.order.map(|o| o + shift),
        ))
    }

    /// `outer(inner)`: `outer` must have non-negative integer exponents and `inner` positive valuation.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.ram != 1 || outer.lowest_key().is_some_and(|k| k < 0) {
            return Err(Error::Incompatible(
                "outer series must be a power series".into(),
            ));
        }
        let vi = inner
            .lowest_key()
            .ok_or_else(|| Error::Incompatible("inner series has no known leading term".into()))?;
        if vi <= 0 {
            return Err(Error::Incompatible(
                "inner series must have positive valuation".into(),
            ));
        }
        let from_outer = outer.order.map(|n| n * vi);
        let first_nonconst = outer.terms.keys().find(|k| **k > 0).copied();
        let from_inner = match (inner.order, first_nonconst) {
            (Some(oi), Some(j)) => Some(oi + vi * (j - 1)),
            _ => None,
        };
        let order = min_order(from_outer, from_inner);
        let mut acc = Self::new(inner.var, inner.ram, BTreeMap::new(), order);
        let mut ipow = Self::constant(inner.var, ParamCoeff::from_int(1)).with_ram(inner.ram);
        let mut deg = 0i64;
        for (k, c) in &outer.terms {
            while deg < *k {
                ipow = ipow.mul(inner)?;
                deg += 1;
            }
            acc = acc.add(&ipow.scale(c))?;
        }
        Ok(Self::new(acc.var, acc.ram, acc.terms, order))
    }

    pub fn derivative(&self) -> Self {
        let m = self.ram as i64;
        Self::new(
            self.var,
            self.ram,
            self.terms
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - m, c.scale_rational(&r(*k, m))))
                .collect(),
            self.order.map(|o| o - m),
        )
    }

    /// Floating value of the known terms at parameter `b` and variable `x > 0`.
    pub fn eval_f64(&self, b: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.eval_f64(b) * x.powf(*k as f64 / self.ram as f64))
            .sum()
    }

    /// Exponent → coefficient table for reports.
    pub fn table(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(k, c)| (format!("{}", r(*k, self.ram as i64)), format!("{c}")))
            .collect()
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.var {
            SeriesVar::Rho => "ρ",
            SeriesVar::X => "x",
        };
        let mut parts: Vec<String> = self
            .table()
            .into_iter()
            .map(|(e, c)| format!("[{c}]{v}^({e})"))
            .collect();
        if let Some(o) = self.order() {
            parts.push(format!("O({v}^({o}))"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two series.
pub fn series_mul(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    a.mul(b)
}

/// Quotient of two series; the divisor needs a `b`-free leading coefficient.
pub fn series_div(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    a.div(b)
}

pub fn series_compose(outer: &PuiseuxSeries, inner: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    PuiseuxSeries::compose(outer, inner)
}

pub fn series_log1p(u: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    u.log1p()
}

pub fn series_nth_root(u: &PuiseuxSeries, n: u32) -> Result<PuiseuxSeries> {
    u.nth_root(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> ParamCoeff {
        ParamCoeff::from_int(n)
    }

    fn x_series(terms: Vec<(i64, i64)>, order: Option<i64>) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(
            SeriesVar::X,
            1,
            terms.into_iter().map(|(k, v)| (k, c(v))).collect(),
            order,
        )
    }

    #[test]
    fn log1p_standard() {
        let x = x_series(vec![(1, 1)], Some(4));
        let l = series_log1p(&x).unwrap();
        assert_eq!(l.coeff(&r(1, 1)), c(1));
        assert_eq!(
            l.coeff(&r(2, 1)),
            ParamCoeff::constant(QSqrt2::from_ratios(-1, 2, 0, 1))
        );
        assert_eq!(
            l.coeff(&r(3, 1)),
            ParamCoeff::constant(QSqrt2::from_ratios(1, 3, 0, 1))
        );
        assert_eq!(l.order(), Some(r(4, 1)));
        assert_eq!(l.terms().len(), 3);
    }

    #[test]
    fn perfect_cube_root() {
        let p = x_series(vec![(0, 1), (1, 3), (2, 3), (3, 1)], Some(10));
        let root = series_nth_root(&p, 3).unwrap();
        assert_eq!(root.terms().len(), 2);
        assert_eq!(root.coeff(&r(1, 1)), c(1));
    }

    #[test]
    fn binomial_times_quadratic() {
        // (1 − x²)^(1/2)·(1 − 2x²) = 1 − (5/2)x² + O(x⁴)
        let a = x_series(vec![(0, 1), (2, -1)], Some(4))
            .nth_root(2)
            .unwrap();
        let p = a.mul(&x_series(vec![(0, 1), (2, -2)], None)).unwrap();
        assert_eq!(p.coeff(&r(0, 1)), c(1));
        assert_eq!(
            p.coeff(&r(2, 1)),
            ParamCoeff::constant(QSqrt2::from_ratios(-5, 2, 0, 1))
        );
        assert_eq!(p.order(), Some(r(4, 1)));
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn inverse_and_division() {
        let a = x_series(vec![(-3, 2), (-2, 1)], Some(3));
        let one = a.div(&a).unwrap();
        assert_eq!(one.terms(), vec![(r(0, 1), c(1))]);
        assert_eq!(one.order(), Some(r(6, 1)));
    }

    #[test]
    fn fractional_roots() {
        let a = x_series(vec![(1, 8)], Some(5)).nth_root(3).unwrap();
        assert_eq!(a.ramification(), 3);
        assert_eq!(a.valuation(), Some(r(1, 3)));
        assert_eq!(a.coeff(&r(1, 3)), c(2));
        let h = PuiseuxSeries::constant(
            SeriesVar::X,
            ParamCoeff::constant(QSqrt2::from_ratios(1, 2, 0, 1)),
        );
        let root = h
            .add(&x_series(vec![], Some(3)))
            .unwrap()
            .nth_root(2)
            .unwrap();
        assert_eq!(
            root.coeff(&r(0, 1)),
            ParamCoeff::constant(QSqrt2::from_ratios(0, 1, 1, 2))
        );
    }

    #[test]
    fn non_extractable_root() {
        let a = x_series(vec![(0, 2)], Some(3));
        assert!(matches!(a.nth_root(3), Err(Error::NotExtractable(_))));
        let b = PuiseuxSeries::from_terms(SeriesVar::X, 1, vec![(0, ParamCoeff::b())], Some(3));
        assert!(b.nth_root(2).is_err());
    }

    #[test]
    fn composition() {
        // exp-free check: (1 + y)² with y = x + x² → 1 + 2x + 3x² + ...
        let outer = x_series(vec![(0, 1), (1, 2), (2, 1)], None);
        let inner = x_series(vec![(1, 1), (2, 1)], Some(4));
        let p = series_compose(&outer, &inner).unwrap();
        assert_eq!(p.coeff(&r(2, 1)), c(3));
        assert_eq!(p.coeff(&r(3, 1)), c(2));
        assert_eq!(p.order(), Some(r(4, 1)));
    }

    #[test]
    fn derivative_drops_constant() {
        let a = x_series(vec![(-3, 1), (0, 5), (2, 1)], Some(4));
        let d = a.derivative();
        assert_eq!(d.coeff(&r(-4, 1)), c(-3));
        assert_eq!(d.coeff(&r(1, 1)), c(2));
        assert_eq!(d.order(), Some(r(3, 1)));
    }

    #[test]
    fn qsqrt2_square_roots() {
        let x = QSqrt2::from_ratios(3, 1, 2, 1); // (1 + √2)²
        assert_eq!(qsqrt2_root(&x, 2), Some(QSqrt2::from_ratios(1, 1, 1, 1)));
        assert_eq!(qsqrt2_root(&QSqrt2::from_int(2), 2), Some(QSqrt2::sqrt2()));
        assert_eq!(qsqrt2_root(&QSqrt2::from_int(3), 2), None);
    }
}
