//! Dense univariate polynomials over Q(√2).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::qsqrt2::QSqrt2;
use super::rational::Rational;

/// Name of the polynomial variable; only used for display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Var {
    #[default]
    S,
    Tau,
}

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are always stripped,
/// so the zero polynomial has no coefficients and `degree() == None`.
/// Serialises as the bare coefficient array; equality ignores `var`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<QSqrt2>", into = "Vec<QSqrt2>")]
pub struct QPoly {
    coeffs: Vec<QSqrt2>,
    pub var: Var,
}

impl PartialEq for QPoly {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl Eq for QPoly {}

impl std::hash::Hash for QPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl From<Vec<QSqrt2>> for QPoly {
    fn from(v: Vec<QSqrt2>) -> Self {
        QPoly::new(v)
    }
}

impl From<QPoly> for Vec<QSqrt2> {
    fn from(p: QPoly) -> Self {
        p.coeffs
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<QSqrt2>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly {
            coeffs,
            var: Var::S,
        }
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn zero() -> Self {
        QPoly::new(vec![])
    }

    pub fn one() -> Self {
        QPoly::constant(QSqrt2::one())
    }

    pub fn constant(c: QSqrt2) -> Self {
        QPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        QPoly::monomial(QSqrt2::one(), 1)
    }

    pub fn monomial(c: QSqrt2, k: usize) -> Self {
        let mut v = vec![QSqrt2::zero(); k + 1];
        v[k] = c;
        QPoly::new(v)
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        QPoly::new(cs.iter().cloned().map(QSqrt2::from_rational).collect())
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| QSqrt2::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QSqrt2 {
        self.coeffs.get(i).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> QSqrt2 {
        self.coeffs.last().cloned().unwrap_or_else(QSqrt2::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect()).with_var(self.var)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|x| x.scale(r)).collect()).with_var(self.var)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![QSqrt2::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly::new(v).with_var(self.var)
    }

    /// Divide by `x^k`; the low coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        QPoly::new(self.coeffs.iter().skip(k).cloned().collect()).with_var(self.var)
    }

    /// Split as `x^k · q` with `q(0) != 0`.
    pub fn split_monomial(&self) -> (usize, QPoly) {
        match self.valuation() {
            Some(k) => (k, self.unshift(k)),
            None => (0, self.clone()),
        }
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
                .collect(),
        )
        .with_var(self.var)
    }

    pub fn eval(&self, x: &QSqrt2) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for c in self.coeffs.iter().rev() {
            acc = QSqrt2::new(&acc.a * x + &c.a, &acc.b * x + &c.b);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QPoly::one().with_var(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &QPoly) -> Self {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &QPoly::constant(c.clone());
        }
        acc.with_var(inner.var)
    }

    /// `p(x^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut v = vec![QSqrt2::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * m] = c.clone();
        }
        QPoly::new(v).with_var(self.var)
    }

    /// Euclidean division over the field Q(√2).
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let inv = d.lc().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![QSqrt2::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (
            QPoly::new(q).with_var(self.var),
            QPoly::new(r).with_var(self.var),
        )
    }

    /// Pseudo-remainder `lc(d)^(deg self − deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let Some(sd) = self.degree() else {
            return QPoly::zero();
        };
        if sd < dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        for i in (0..=(sd - dd)).rev() {
            let c = r[i + dd].clone();
            for x in r.iter_mut() {
                *x = &*x * &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &(&c * dc);
            }
        }
        r.truncate(dd);
        QPoly::new(r).with_var(self.var)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`.
    pub fn squarefree(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = match self.var {
            Var::S => "s",
            Var::Tau => "τ",
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}){v}")?,
                _ => write!(f, "({c}){v}^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect()).with_var(self.var)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect()).with_var(self.var)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero().with_var(self.var);
        }
        let mut v = vec![QSqrt2::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        QPoly::new(v).with_var(self.var)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect()).with_var(self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, o: QPoly) -> QPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, o: &QPoly) -> QPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QPoly> for &'a QPoly {
            type Output = QPoly;
            fn $m(self, o: QPoly) -> QPoly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}
