//! Sturm chains over Z[√2], root counting with rational, algebraic and infinite
//! endpoints, and root isolation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numexpr::{sign_number_expr, NumberExpr, DEFAULT_PRECISION_CAP};
use super::poly::QPoly;
use super::qsqrt2::QSqrt2;
use super::rational::{exact_root, root_bracket, serde_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Interval endpoint: a rational, a radical `base^(1/index)`, or ±∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    NegInf,
    Rational(#[serde(with = "serde_rational")] Rational),
    Root {
        #[serde(with = "serde_rational")]
        base: Rational,
        index: u32,
    },
    PosInf,
}

impl Endpoint {
    pub fn rational(r: Rational) -> Self {
        Endpoint::Rational(r)
    }

    /// `base^(1/index)`, collapsed to a rational when the root is exact.
    pub fn root(base: Rational, index: u32) -> Self {
        assert!(!base.is_negative() && index >= 1);
        match exact_root(&base, index) {
            Some(r) => Endpoint::Rational(r),
            None => Endpoint::Root { base, index },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::PosInf => f64::INFINITY,
            Endpoint::Rational(r) => to_f64(r),
            Endpoint::Root { base, index } => to_f64(base).powf(1.0 / *index as f64),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Endpoint::NegInf | Endpoint::PosInf)
    }

    /// Rational bracket `lo ≤ self ≤ hi` of width about `2^-bits`.
    pub fn bracket(&self, bits: u32) -> Option<(Rational, Rational)> {
        match self {
            Endpoint::Rational(r) => Some((r.clone(), r.clone())),
            Endpoint::Root { base, index } => Some(root_bracket(base, *index, bits)),
            _ => None,
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Endpoint::NegInf => Ordering::Less,
            Endpoint::PosInf => Ordering::Greater,
            Endpoint::Rational(r) => r.cmp(q),
            Endpoint::Root { base, index } => {
                if q.is_negative() {
                    return Ordering::Greater;
                }
                base.cmp(&num_traits::pow(q.clone(), *index as usize))
            }
        }
    }

    /// Exact comparison of two endpoints.
    pub fn cmp_endpoint(&self, other: &Endpoint) -> Result<Ordering> {
        use Endpoint::*;
        Ok(match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (_, Rational(q)) => self.cmp_rational(q),
            (Rational(q), _) => other.cmp_rational(q).reverse(),
            (
                Root {
                    base: b1,
                    index: m1,
                },
                Root {
                    base: b2,
                    index: m2,
                },
            ) => {
                // b1^(1/m1) vs b2^(1/m2)  ⇔  b1^m2 vs b2^m1
                num_traits::pow(b1.clone(), *m2 as usize)
                    .cmp(&num_traits::pow(b2.clone(), *m1 as usize))
            }
        })
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "+inf"),
            Endpoint::Rational(r) => write!(f, "{r}"),
            Endpoint::Root { base, index } => write!(f, "{base}^(1/{index})"),
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(r: Rational) -> Self {
        Endpoint::Rational(r)
    }
}

/// An interval `[lo, hi]`, or `(lo, hi]` when `lo_open`; an infinite end is always open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    #[serde(default)]
    pub lo_open: bool,
}

impl Interval {
    pub fn closed(lo: Endpoint, hi: Endpoint) -> Self {
        Interval {
            lo,
            hi,
            lo_open: false,
        }
    }

    pub fn open_lo(lo: Endpoint, hi: Endpoint) -> Self {
        Interval {
            lo,
            hi,
            lo_open: true,
        }
    }

    pub fn whole_line() -> Self {
        Interval {
            lo: Endpoint::NegInf,
            hi: Endpoint::PosInf,
            lo_open: true,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open || !self.lo.is_finite() {
            '('
        } else {
            '['
        };
        let r = if self.hi.is_finite() { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Element `a + b√2` of Z[√2].
#[derive(Clone, Debug, PartialEq, Eq)]
struct Z2 {
    a: BigInt,
    b: BigInt,
}

impl Z2 {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn mul(&self, o: &Z2) -> Z2 {
        Z2 {
            a: &self.a * &o.a + ((&self.b * &o.b) << 1),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn scale(&self, k: &BigInt) -> Z2 {
        Z2 {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        match (&self.a * &self.a).cmp(&((&self.b * &self.b) << 1)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Integer polynomial over Z[√2], primitive with respect to rational content.
#[derive(Clone, Debug)]
struct ZPoly(Vec<Z2>);

impl ZPoly {
    /// Clear denominators of `p` by a positive integer.
    fn from_qpoly(p: &QPoly) -> ZPoly {
        let mut l = BigInt::one();
        for c in p.coeffs() {
            l = l.lcm(c.a.denom());
            l = l.lcm(c.b.denom());
        }
        let v = p
            .coeffs()
            .iter()
            .map(|c| Z2 {
                a: (c.a.numer() * &l) / c.a.denom(),
                b: (c.b.numer() * &l) / c.b.denom(),
            })
            .collect();
        let mut z = ZPoly(v);
        z.make_primitive();
        z
    }

    fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .map(|c| {
                    QSqrt2::new(
                        Rational::from_integer(c.a.clone()),
                        Rational::from_integer(c.b.clone()),
                    )
                })
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn lc(&self) -> &Z2 {
        self.0.last().unwrap()
    }

    /// Multiply by the positive number `±conj(lc)` so the leading coefficient is an
    /// integer, then strip the integer content.
    fn normalize(&mut self) {
        self.trim();
        if self.is_zero() || self.lc().b.is_zero() {
            self.make_primitive();
            return;
        }
        let lc = self.lc();
        let mut c = Z2 {
            a: lc.a.clone(),
            b: -&lc.b,
        };
        if c.sign() < 0 {
            c = Z2 { a: -c.a, b: -c.b };
        }
        for x in self.0.iter_mut() {
            *x = x.mul(&c);
        }
        self.make_primitive();
    }

    /// A positive multiple of `−(self mod d)` for `d` with an integer leading coefficient.
    fn neg_rem(&self, d: &ZPoly) -> ZPoly {
        debug_assert!(d.lc().b.is_zero());
        let lc = d.lc().a.abs();
        let flip = d.lc().a.is_negative();
        let dd = d.degree();
        let mut r = self.0.clone();
        if r.len() > dd {
            for i in (0..r.len() - dd).rev() {
                let c = r[i + dd].clone();
                if c.is_zero() {
                    continue;
                }
                for x in r.iter_mut() {
                    *x = x.scale(&lc);
                }
                let c = if flip { Z2 { a: -c.a, b: -c.b } } else { c };
                for (j, dc) in d.0.iter().enumerate() {
                    let t = c.mul(dc);
                    r[i + j].a -= t.a;
                    r[i + j].b -= t.b;
                }
            }
            r.truncate(dd);
        }
        let mut out = ZPoly(r.into_iter().map(|x| Z2 { a: -x.a, b: -x.b }).collect());
        out.normalize();
        out
    }

    fn derivative(&self) -> ZPoly {
        ZPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigInt::from(i)))
                .collect(),
        )
    }

    /// Sturm chain of this polynomial (not necessarily squarefree).
    fn chain(&self) -> Vec<ZPoly> {
        let mut p0 = self.clone();
        p0.normalize();
        let mut chain = vec![p0];
        if chain[0].degree() == 0 {
            return chain;
        }
        let mut p1 = chain[0].derivative();
        p1.normalize();
        chain.push(p1);
        loop {
            let n = chain.len();
            let r = chain[n - 2].neg_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    fn make_primitive(&mut self) {
        self.trim();
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(&c.a);
            g = g.gcd(&c.b);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for c in self.0.iter_mut() {
            c.a /= &g;
            c.b /= &g;
        }
    }

    /// Sign at a rational point `p/q`, by homogeneous Horner evaluation.
    fn sign_at(&self, x: &Rational) -> i8 {
        let p = x.numer();
        let q = x.denom();
        let mut acc = self.lc().clone();
        let mut qpow = BigInt::one();
        for c in self.0.iter().rev().skip(1) {
            qpow *= q;
            acc = Z2 {
                a: &acc.a * p + &c.a * &qpow,
                b: &acc.b * p + &c.b * &qpow,
            };
        }
        acc.sign()
    }

    fn sign_at_pos_inf(&self) -> i8 {
        self.lc().sign()
    }

    fn sign_at_neg_inf(&self) -> i8 {
        let s = self.lc().sign();
        if self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
    /// Squarefree polynomial whose distinct roots are counted.
    squarefree: QPoly,
    precision_cap: u32,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Result<Self> {
        Self::with_cap(p, DEFAULT_PRECISION_CAP)
    }

    pub fn with_cap(p: &QPoly, precision_cap: u32) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Invalid("Sturm chain of the zero polynomial".into()));
        }
        let mut chain = ZPoly::from_qpoly(p).chain();
        let mut sf = p.clone();
        if chain.last().unwrap().degree() > 0 {
            // The last member is gcd(p, p′): recount on p / gcd.
            sf = p.div_rem(&chain.last().unwrap().to_qpoly()).0;
            chain = ZPoly::from_qpoly(&sf).chain();
        }
        Ok(SturmChain {
            chain,
            squarefree: sf,
            precision_cap,
        })
    }

    /// Chain members as exact polynomials, for evidence records.
    pub fn polys(&self) -> Vec<QPoly> {
        self.chain.iter().map(|z| z.to_qpoly()).collect()
    }

    pub fn squarefree(&self) -> &QPoly {
        &self.squarefree
    }

    fn v_rational(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|z| z.sign_at(x)))
    }

    fn v_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(|z| z.sign_at_pos_inf()))
    }

    fn v_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|z| z.sign_at_neg_inf()))
    }

    /// Number of distinct roots in `(a, b]` for rationals `a < b`.
    pub fn count_rational(&self, a: &Rational, b: &Rational) -> usize {
        self.v_rational(a) - self.v_rational(b)
    }

    /// Number of distinct roots `≤ x`.
    fn roots_upto(&self, x: &Endpoint) -> Result<usize> {
        let total = self.v_neg_inf();
        match x {
            Endpoint::NegInf => Ok(0),
            Endpoint::PosInf => Ok(total - self.v_pos_inf()),
            Endpoint::Rational(r) => Ok(total - self.v_rational(r)),
            Endpoint::Root { base, index } => {
                let mut bits = 8u32;
                loop {
                    let (c, d) = root_bracket(base, *index, bits);
                    let inside = self.count_rational(&c, &d);
                    let below = total - self.v_rational(&c);
                    if inside == 0 {
                        return Ok(below);
                    }
                    if bits >= self.precision_cap {
                        // Roots persist in (c, d]; only an exact root at the endpoint can explain it.
                        let at = NumberExpr::poly_at_root(&self.squarefree, base, *index);
                        if inside == 1 && sign_number_expr(&at, self.precision_cap)? == 0 {
                            return Ok(below + 1);
                        }
                        return Err(Error::PrecisionCap {
                            bits: self.precision_cap,
                            what: format!("root separation near {}", x),
                        });
                    }
                    bits = (bits * 2).min(self.precision_cap);
                }
            }
        }
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
        if lo.cmp_endpoint(hi)? != Ordering::Less {
            return Err(Error::Invalid(format!("empty interval ({lo}, {hi}]")));
        }
        Ok(self.roots_upto(hi)? - self.roots_upto(lo)?)
    }

    /// A power of two `B` with every real root inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let vp = self.v_pos_inf();
        let vn = self.v_neg_inf();
        let mut b = Rational::one();
        loop {
            if self.v_rational(&b) == vp && self.v_rational(&-&b) == vn {
                let sf = &self.chain[0];
                if sf.sign_at(&b) != 0 && sf.sign_at(&-&b) != 0 {
                    return b;
                }
            }
            b *= Rational::from_integer(BigInt::from(2));
        }
    }

    /// Disjoint rational intervals `(a, b]`, each holding exactly one root, covering
    /// every root in `(lo, hi]`, each of width at most `2^-bits`.
    pub fn isolate(
        &self,
        lo: &Endpoint,
        hi: &Endpoint,
        bits: u32,
    ) -> Result<Vec<(Rational, Rational)>> {
        let n = self.count(lo, hi)?;
        if n == 0 {
            return Ok(vec![]);
        }
        let bound = self.root_bound();
        let a = match lo {
            Endpoint::NegInf => -&bound,
            e => e.bracket(bits).unwrap().0,
        };
        let b = match hi {
            Endpoint::PosInf => bound.clone(),
            e => e.bracket(bits).unwrap().1,
        };
        let width = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
        let mut out = Vec::new();
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let c = self.count_rational(&a, &b);
            if c == 0 {
                continue;
            }
            if c == 1 && &b - &a <= width {
                out.push((a, b));
                continue;
            }
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort();
        // Keep only roots actually inside (lo, hi].
        let mut kept = Vec::new();
        for (a, b) in out {
            let inside_lo = lo.cmp_rational(&a) != Ordering::Greater || {
                // Root lies in (a, b]; it is > lo iff (lo, b] contains it.
                lo.cmp_rational(&b) == Ordering::Less
                    && self.count(lo, &Endpoint::Rational(b.clone()))? > 0
            };
            let inside_hi = hi.cmp_rational(&b) != Ordering::Less || {
                hi.cmp_rational(&a) == Ordering::Greater
                    && self.count(&Endpoint::Rational(a.clone()), hi)? > 0
            };
            if inside_lo && inside_hi {
                kept.push((a, b));
            }
        }
        if kept.len() != n {
            return Err(Error::PrecisionCap {
                bits,
                what: format!("isolation found {} of {} roots", kept.len(), n),
            });
        }
        Ok(kept)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &QPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    SturmChain::new(p)?.count(lo, hi)
}

/// Exact sign of `p` at an endpoint (the limiting sign at ±∞).
pub fn sign_at(p: &QPoly, x: &Endpoint, precision_cap: u32) -> Result<i8> {
    if p.is_zero() {
        return Ok(0);
    }
    let lc = p.lc().sign();
    Ok(match x {
        Endpoint::PosInf => lc,
        Endpoint::NegInf => {
            if p.degree().unwrap().is_multiple_of(2) {
                lc
            } else {
                -lc
            }
        }
        Endpoint::Rational(r) => p.eval_rational(r).sign(),
        Endpoint::Root { base, index } => {
            sign_number_expr(&NumberExpr::poly_at_root(p, base, *index), precision_cap)?
        }
    })
}

/// A rational strictly between two endpoints.
pub fn rational_between(lo: &Endpoint, hi: &Endpoint) -> Result<Rational> {
    if lo.cmp_endpoint(hi)? != Ordering::Less {
        return Err(Error::Invalid(format!("empty interval ({lo}, {hi})")));
    }
    let one = Rational::one();
    let mut bits = 4u32;
    loop {
        let a = match lo {
            Endpoint::NegInf => None,
            e => Some(e.bracket(bits).unwrap().1),
        };
        let b = match hi {
            Endpoint::PosInf => None,
            e => Some(e.bracket(bits).unwrap().0),
        };
        match (a, b) {
            (None, None) => return Ok(Rational::zero()),
            (Some(a), None) => return Ok(a + &one),
            (None, Some(b)) => return Ok(b - &one),
            (Some(a), Some(b)) => {
                let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
                if lo.cmp_rational(&mid) == Ordering::Less
                    && hi.cmp_rational(&mid) == Ordering::Greater
                {
                    return Ok(mid);
                }
            }
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::PrecisionCap {
                bits,
                what: "separating endpoints".into(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn r(n: i64) -> Endpoint {
        Endpoint::Rational(int(n))
    }

    #[test]
    fn sqrt2_in_0_2() {
        let p = QPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &r(0), &r(2)).unwrap(), 1);
        assert_eq!(
            sturm_count(&p, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            2
        );
    }

    #[test]
    fn cubic_positive_for_positive_s() {
        let p = QPoly::from_ints(&[16, -7, -6, 3]);
        assert_eq!(sturm_count(&p, &r(0), &Endpoint::PosInf).unwrap(), 0);
    }

    #[test]
    fn half_open_counting() {
        let p = QPoly::from_ints(&[-1, 1]);
        assert_eq!(sturm_count(&p, &r(0), &r(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &r(1), &r(2)).unwrap(), 0);
        // repeated roots count once
        let p = QPoly::from_ints(&[-1, 1]).pow(3);
        assert_eq!(sturm_count(&p, &r(0), &r(2)).unwrap(), 1);
    }

    #[test]
    fn sqrt2_coefficients() {
        // (s − √2)(s − 3)
        let p = QPoly::new(vec![
            QSqrt2::from_ratios(0, 1, 3, 1),
            QSqrt2::from_ratios(-3, 1, -1, 1),
            QSqrt2::from_int(1),
        ]);
        assert_eq!(sturm_count(&p, &r(0), &r(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &r(2), &r(3)).unwrap(), 1);
        assert_eq!(
            sturm_count(&p, &Endpoint::rational(rat(142, 100)), &r(3)).unwrap(),
            1
        );
    }

    #[test]
    fn algebraic_endpoints() {
        // τ³ − 37 has its root exactly at 37^(1/3).
        let p = QPoly::from_ints(&[-37, 0, 0, 1]);
        let a = Endpoint::root(int(37), 3);
        assert_eq!(sturm_count(&p, &r(0), &a).unwrap(), 1);
        assert_eq!(sturm_count(&p, &a, &Endpoint::PosInf).unwrap(), 0);
        // τ − 3.3322 sits just above 37^(1/3) ≈ 3.33222
        let p = QPoly::from_rationals(&[rat(-33322, 10000), int(1)]);
        assert_eq!(sturm_count(&p, &a, &r(4)).unwrap(), 0);
        assert_eq!(sturm_count(&p, &r(3), &a).unwrap(), 1);
    }

    #[test]
    fn endpoint_order() {
        let a = Endpoint::root(int(37), 3);
        assert_eq!(a.cmp_rational(&rat(33322, 10000)), Ordering::Greater);
        assert_eq!(a.cmp_rational(&rat(33323, 10000)), Ordering::Less);
        assert_eq!(Endpoint::root(int(8), 3), r(2));
        let b = Endpoint::root(int(3), 1);
        assert_eq!(a.cmp_endpoint(&b).unwrap(), Ordering::Greater);
        assert_eq!(
            Endpoint::root(int(9), 4)
                .cmp_endpoint(&Endpoint::root(int(3), 2))
                .unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn isolation() {
        let p =
            QPoly::from_ints(&[-1, 1]) * QPoly::from_ints(&[-2, 1]) * QPoly::from_ints(&[-3, 1]);
        let iv = SturmChain::new(&p)
            .unwrap()
            .isolate(&r(0), &Endpoint::PosInf, 10)
            .unwrap();
        assert_eq!(iv.len(), 3);
        for ((a, b), k) in iv.iter().zip([1, 2, 3]) {
            assert!(a < &int(k) && &int(k) <= b);
        }
        let iv = SturmChain::new(&p)
            .unwrap()
            .isolate(&r(1), &r(2), 10)
            .unwrap();
        assert_eq!(iv.len(), 1);
    }

    #[test]
    fn between() {
        let a = Endpoint::root(int(37), 3);
        let x = rational_between(&r(3), &a).unwrap();
        assert!(x > int(3) && a.cmp_rational(&x) == Ordering::Greater);
        assert!(rational_between(&a, &Endpoint::PosInf).unwrap() > int(3));
    }

    #[test]
    fn denominator_has_no_real_roots() {
        let d = QPoly::from_ints(&[3, 2, 3]);
        assert_eq!(
            sturm_count(&d, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            0
        );
    }
}
