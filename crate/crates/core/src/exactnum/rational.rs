//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `"p/q"` (always with a denominator).
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"p/q"`, `"p"`, or a finite decimal such as `"-0.0045"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling for huge numerators and denominators.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        Rational::new(x.numer().clone(), x.denom() << shift as usize)
    } else {
        Rational::new(x.numer() << (-shift) as usize, x.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Exact rational approximation of a float (binary expansion).
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Round `x` to the nearest multiple of `1/den`.
pub fn round_to_grid(x: f64, den: i64) -> Rational {
    let n = (x * den as f64).round();
    Rational::new(BigInt::from(n as i64), BigInt::from(den))
}

/// Floor of the m-th root of a non-negative integer.
pub fn floor_root(n: &BigInt, m: u32) -> BigInt {
    debug_assert!(!n.is_negative());
    n.nth_root(m)
}

/// Rational bracket `[r, r + 2^-k]` around `x^(1/m)` for `x >= 0`, scaled by `q`.
pub fn root_bracket(x: &Rational, m: u32, k: u32) -> (Rational, Rational) {
    debug_assert!(!x.is_negative());
    if m == 1 {
        return (x.clone(), x.clone());
    }
    // x^(1/m) = (p q^(m-1))^(1/m) / q
    let p = x.numer();
    let q = x.denom();
    let n = p * num_traits::pow(q.clone(), (m - 1) as usize);
    let scaled = n << (k as usize * m as usize);
    let r = floor_root(&scaled, m);
    let exact = num_traits::pow(r.clone(), m as usize) == scaled;
    let denom = q << k as usize;
    let lo = Rational::new(r.clone(), denom.clone());
    let hi = if exact {
        lo.clone()
    } else {
        Rational::new(r + BigInt::one(), denom)
    };
    (lo, hi)
}

/// Exact m-th root of a rational if it exists.
pub fn exact_root(x: &Rational, m: u32) -> Option<Rational> {
    if m == 1 {
        return Some(x.clone());
    }
    if x.is_negative() {
        if m.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-x, m).map(|r| -r);
    }
    let rn = floor_root(x.numer(), m);
    let rd = floor_root(x.denom(), m);
    if num_traits::pow(rn.clone(), m as usize) == *x.numer()
        && num_traits::pow(rd.clone(), m as usize) == *x.denom()
    {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

pub mod serde_rational {
    //! Serde adapter writing a rational as `"p/q"`.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
