//! Rational functions over Q(√2) and the quadratic extension by √R.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::QPoly;
use super::qsqrt2::QSqrt2;

#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: QPoly,
    pub den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: QSqrt2) -> Self {
        Self::poly(QPoly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn derivative(&self) -> Self {
        RatFunc::new(
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            &self.den * &self.den,
        )
    }

    pub fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::new(-&self.num, self.den.clone())
    }
}

/// `a + b·√R` with `a, b` rational functions; `R` is assumed not to be a square,
/// so the representation is unique and equality is componentwise.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    pub a: RatFunc,
    pub b: RatFunc,
}

impl QuadExt {
    pub fn new(a: RatFunc, b: RatFunc) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: RatFunc) -> Self {
        QuadExt {
            a,
            b: RatFunc::constant(QSqrt2::from_int(0)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExt::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadExt::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &Self, radicand: &QPoly) -> Self {
        let r = RatFunc::poly(radicand.clone());
        QuadExt::new(
            &(&self.a * &o.a) + &(&(&self.b * &o.b) * &r),
            &(&self.a * &o.b) + &(&self.b * &o.a),
        )
    }

    pub fn div(&self, o: &Self, radicand: &QPoly) -> Self {
        let r = RatFunc::poly(radicand.clone());
        let conj = QuadExt::new(o.a.clone(), -&o.b);
        let norm = &(&o.a * &o.a) - &(&(&o.b * &o.b) * &r);
        let top = self.mul(&conj, radicand);
        QuadExt::new(&top.a / &norm, &top.b / &norm)
    }
}
