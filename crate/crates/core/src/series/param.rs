//! Polynomials in a formal parameter `b` with Q(√2) coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactnum::{QSqrt2, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamCoeff(Vec<QSqrt2>);

impl ParamCoeff {
    pub fn new(mut c: Vec<QSqrt2>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ParamCoeff(c)
    }

    pub fn zero() -> Self {
        ParamCoeff(vec![])
    }

    pub fn constant(c: QSqrt2) -> Self {
        ParamCoeff::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        ParamCoeff::constant(QSqrt2::from_int(n))
    }

    /// The parameter `b` itself.
    pub fn b() -> Self {
        ParamCoeff::new(vec![QSqrt2::zero(), QSqrt2::from_int(1)])
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> QSqrt2 {
        self.0.get(k).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in `b`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// The value when the coefficient does not depend on `b`.
    pub fn as_constant(&self) -> Option<QSqrt2> {
        match self.0.len() {
            0 => Some(QSqrt2::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        ParamCoeff::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        ParamCoeff::new(self.0.iter().map(|x| x.scale(r)).collect())
    }

    pub fn eval(&self, b: &QSqrt2) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * b) + c;
        }
        acc
    }

    pub fn eval_f64(&self, b: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * b + c.to_f64())
    }
}

impl fmt::Display for ParamCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("({c})"),
                1 => format!("({c})b"),
                _ => format!("({c})b^{k}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a ParamCoeff> for &'a ParamCoeff {
    type Output = ParamCoeff;
    fn add(self, o: &ParamCoeff) -> ParamCoeff {
        let n = self.0.len().max(o.0.len());
        ParamCoeff::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a ParamCoeff> for &'a ParamCoeff {
    type Output = ParamCoeff;
    fn sub(self, o: &ParamCoeff) -> ParamCoeff {
        let n = self.0.len().max(o.0.len());
        ParamCoeff::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a ParamCoeff> for &'a ParamCoeff {
    type Output = ParamCoeff;
    fn mul(self, o: &ParamCoeff) -> ParamCoeff {
        if self.is_zero() || o.is_zero() {
            return ParamCoeff::zero();
        }
        let mut v = vec![QSqrt2::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, c) in o.0.iter().enumerate() {
                v[i + j] += &(a * c);
            }
        }
        ParamCoeff::new(v)
    }
}

impl Neg for &ParamCoeff {
    type Output = ParamCoeff;
    fn neg(self) -> ParamCoeff {
        ParamCoeff::new(self.0.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let b = ParamCoeff::b();
        let one = ParamCoeff::from_int(1);
        let p = &(&b + &one) * &(&b - &one);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(0), QSqrt2::from_int(-1));
        assert_eq!(p.eval(&QSqrt2::from_int(3)), QSqrt2::from_int(8));
        assert!((p.eval_f64(0.5) + 0.75).abs() < 1e-15);
        assert_eq!(&p - &p, ParamCoeff::zero());
        assert!(p.as_constant().is_none());
    }
}
