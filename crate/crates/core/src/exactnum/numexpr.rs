//! Finite sums `Σ cᵢ·baseᵢ^(1/mᵢ)` with `cᵢ ∈ Q(√2)`, and their exact sign.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::QPoly;
use super::qsqrt2::QSqrt2;
use super::rational::{exact_root, root_bracket, serde_rational, to_f64, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_CAP: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: QSqrt2,
    #[serde(with = "serde_rational")]
    pub base: Rational,
    pub index: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberExpr {
    pub terms: Vec<Term>,
}

impl NumberExpr {
    pub fn zero() -> Self {
        NumberExpr { terms: vec![] }
    }

    pub fn constant(c: QSqrt2) -> Self {
        NumberExpr {
            terms: vec![Term {
                coef: c,
                base: Rational::one(),
                index: 1,
            }],
        }
    }

    pub fn term(coef: QSqrt2, base: Rational, index: u32) -> Self {
        assert!(!base.is_negative() && index >= 1);
        NumberExpr {
            terms: vec![Term { coef, base, index }],
        }
    }

    pub fn plus(mut self, other: &NumberExpr) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn minus(mut self, other: &NumberExpr) -> Self {
        self.terms.extend(other.terms.iter().map(|t| Term {
            coef: -&t.coef,
            ..t.clone()
        }));
        self
    }

    pub fn scaled(&self, c: &QSqrt2) -> Self {
        NumberExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: &t.coef * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Product, using `b₁^(1/m₁)·b₂^(1/m₂) = (b₁^m₂·b₂^m₁)^(1/(m₁m₂))`.
    pub fn mul(&self, other: &NumberExpr) -> Self {
        let mut terms = Vec::new();
        for s in &self.terms {
            for t in &other.terms {
                let (base, index) = if s.index == t.index && s.index > 1 {
                    (&s.base * &t.base, s.index)
                } else {
                    (
                        num_traits::pow(s.base.clone(), t.index as usize)
                            * num_traits::pow(t.base.clone(), s.index as usize),
                        s.index * t.index,
                    )
                };
                terms.push(Term {
                    coef: &s.coef * &t.coef,
                    base,
                    index,
                });
            }
        }
        NumberExpr { terms }
    }

    /// `p(base^(1/m))` written as `Σ cᵢ (baseⁱ)^(1/m)`.
    pub fn poly_at_root(p: &QPoly, base: &Rational, m: u32) -> Self {
        let mut terms = Vec::new();
        let mut pw = Rational::one();
        for c in p.coeffs() {
            if !c.is_zero() {
                terms.push(Term {
                    coef: c.clone(),
                    base: pw.clone(),
                    index: m,
                });
            }
            pw = &pw * base;
        }
        NumberExpr { terms }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef.to_f64() * to_f64(&t.base).powf(1.0 / t.index as f64))
            .sum()
    }

    /// Terms with an exactly extractable root folded into rational constants.
    fn simplified(&self) -> Vec<Term> {
        let mut rational = QSqrt2::zero();
        let mut out = Vec::new();
        for t in &self.terms {
            if t.coef.is_zero() || t.base.is_zero() {
                continue;
            }
            match exact_root(&t.base, t.index) {
                Some(r) => rational += &t.coef.scale(&r),
                None => out.push(t.clone()),
            }
        }
        if !rational.is_zero() {
            out.push(Term {
                coef: rational,
                base: Rational::one(),
                index: 1,
            });
        }
        out
    }

    /// Rational enclosure `[lo, hi]` of the value, with endpoints in Q(√2).
    pub fn enclose(&self, bits: u32) -> (QSqrt2, QSqrt2) {
        enclose_terms(&self.simplified(), bits)
    }
}

fn enclose_terms(terms: &[Term], bits: u32) -> (QSqrt2, QSqrt2) {
    let mut lo = QSqrt2::zero();
    let mut hi = QSqrt2::zero();
    for t in terms {
        let (rl, rh) = root_bracket(&t.base, t.index, bits);
        let part = |c: &Rational| -> (Rational, Rational) {
            if c.is_negative() {
                (c * &rh, c * &rl)
            } else {
                (c * &rl, c * &rh)
            }
        };
        let (al, ah) = part(&t.coef.a);
        let (bl, bh) = part(&t.coef.b);
        lo += &QSqrt2::new(al, bl);
        hi += &QSqrt2::new(ah, bh);
    }
    (lo, hi)
}

/// Exact sign, by doubling the enclosure precision up to `precision_cap` bits and
/// falling back on symbolic cancellation to recognise zero.
pub fn sign_number_expr(x: &NumberExpr, precision_cap: u32) -> Result<i8> {
    let terms = x.simplified();
    if terms.is_empty() {
        return Ok(0);
    }
    if terms.len() == 1 && terms[0].index == 1 {
        return Ok(terms[0].coef.sign());
    }
    let mut bits = 16u32.min(precision_cap.max(1));
    loop {
        let (lo, hi) = enclose_terms(&terms, bits);
        if lo.sign() > 0 {
            return Ok(1);
        }
        if hi.sign() < 0 {
            return Ok(-1);
        }
        if bits >= precision_cap {
            break;
        }
        bits = (bits * 2).min(precision_cap);
    }
    if symbolic_zero(&terms) {
        return Ok(0);
    }
    Err(Error::PrecisionCap {
        bits: precision_cap,
        what: format!("sign of number expression ≈ {:e}", x.to_f64()),
    })
}

/// Canonical radical: product of `pᵢ^(eᵢ/m)` with `0 < eᵢ < m` and the
/// exponents jointly coprime to `m`.
type RadicalKey = (Vec<(BigInt, u32)>, u32);

fn factor(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= n && p <= limit {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        // Leftover cofactor: treat as atomic, after pulling out a perfect power.
        let mut d = n.bits() as u32;
        while d > 1 {
            let r = n.nth_root(d);
            if num_traits::pow(r.clone(), d as usize) == n {
                out.push((r, d));
                return out;
            }
            d -= 1;
        }
        out.push((n, 1));
    }
    out
}

/// Rewrite `coef · base^(1/m)` as `coef' · radical`.
fn canonical(t: &Term) -> (QSqrt2, RadicalKey) {
    let m = t.index;
    let p = t.base.numer().clone();
    let q = t.base.denom().clone();
    // base^(1/m) = (p q^(m-1))^(1/m) / q
    let n = p * num_traits::pow(q.clone(), (m - 1) as usize);
    let mut coef = t.coef.scale(&Rational::new(BigInt::one(), q));
    let mut rad = Vec::new();
    for (pr, e) in factor(n) {
        let (whole, rem) = e.div_rem(&m);
        if whole > 0 {
            coef = coef.scale(&Rational::from_integer(num_traits::pow(
                pr.clone(),
                whole as usize,
            )));
        }
        if rem > 0 {
            rad.push((pr, rem));
        }
    }
    let g = rad.iter().fold(m, |g, (_, e)| g.gcd(e));
    let m2 = m / g;
    let rad: Vec<_> = rad.into_iter().map(|(p, e)| (p, e / g)).collect();
    if m2 == 2 && rad.len() == 1 && rad[0].0 == BigInt::from(2) && rad[0].1 == 1 {
        return (&coef * &QSqrt2::sqrt2(), (vec![], 1));
    }
    if rad.is_empty() {
        return (coef, (vec![], 1));
    }
    (coef, (rad, m2))
}

fn symbolic_zero(terms: &[Term]) -> bool {
    let mut groups: BTreeMap<String, QSqrt2> = BTreeMap::new();
    for t in terms {
        if t.index > 64 || t.base.numer().bits() > 4096 {
            return false;
        }
        let (c, (rad, m)) = canonical(t);
        let key = format!(
            "{m}:{}",
            rad.iter()
                .map(|(p, e)| format!("{p}^{e}"))
                .collect::<Vec<_>>()
                .join("*")
        );
        let slot = groups.entry(key).or_insert_with(QSqrt2::zero);
        *slot += &c;
    }
    groups.values().all(|c| c.is_zero())
}

impl fmt::Display for NumberExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.index == 1 && t.base.is_one() {
                    format!("({})", t.coef)
                } else {
                    format!("({})·({})^(1/{})", t.coef, t.base, t.index)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
