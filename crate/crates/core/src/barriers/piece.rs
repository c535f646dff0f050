//! Barrier data model and the exact residual `F` of a candidate.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::serde_rational;
use crate::exactnum::{
    certify_strict, int, Endpoint, Interval, NumberExpr, QPoly, QSqrt2, Rational, Var,
};
use crate::leaf::Leaf;
use crate::odes::{denominator, radicand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierKind {
    Subsolution,
    Supersolution,
}

impl BarrierKind {
    /// Required sign of `F`: −1 for subsolutions, +1 for supersolutions.
    pub fn sign(self) -> i8 {
        match self {
            BarrierKind::Subsolution => -1,
            BarrierKind::Supersolution => 1,
        }
    }
}

/// A claim about the sign of `F̃`'s cofactor on the piece.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FTildeClaim {
    pub sign: i8,
    #[serde(with = "serde_rational")]
    pub margin: Rational,
}

/// `g(s) = N(τ)/P(τ)` with `τ = s^(1/m)` on `[lo, hi)` (in s).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierPiece {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub ramification: u32,
    pub numerator: QPoly,
    pub denominator: QPoly,
    /// Certified bound `|F| > f_margin` with the barrier's sign.
    #[serde(with = "serde_rational", default = "Rational::zero")]
    pub f_margin: Rational,
    #[serde(default)]
    pub ftilde_claim: Option<FTildeClaim>,
}

/// Map an s-endpoint to τ = s^(1/m).
pub fn to_tau(e: &Endpoint, m: u32) -> Endpoint {
    match e {
        Endpoint::Rational(r) => Endpoint::root(r.clone(), m),
        Endpoint::Root { base, index } => Endpoint::root(base.clone(), index * m),
        other => other.clone(),
    }
}

impl BarrierPiece {
    /// Validates the interval and that the denominator is positive on its closure.
    pub fn new(
        lo: Endpoint,
        hi: Endpoint,
        ramification: u32,
        numerator: QPoly,
        denominator: QPoly,
    ) -> Result<Self> {
        let p = BarrierPiece {
            lo,
            hi,
            ramification,
            numerator: numerator.with_var(Var::Tau),
            denominator: denominator.with_var(Var::Tau),
            f_margin: Rational::zero(),
            ftilde_claim: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Polynomial piece in s (ramification 1, denominator 1).
    pub fn polynomial(lo: Endpoint, hi: Endpoint, numerator: QPoly) -> Result<Self> {
        Self::new(lo, hi, 1, numerator, QPoly::one())
    }

    pub fn with_f_margin(mut self, m: Rational) -> Self {
        self.f_margin = m;
        self
    }

    pub fn with_ftilde_claim(mut self, sign: i8, margin: Rational) -> Self {
        self.ftilde_claim = Some(FTildeClaim { sign, margin });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.ramification == 0 {
            return Err(Error::Invalid("ramification must be positive".into()));
        }
        if matches!(self.lo, Endpoint::NegInf | Endpoint::PosInf)
            || self.lo.cmp_rational(&Rational::zero()) == Ordering::Less
        {
            return Err(Error::Invalid(format!(
                "piece must start at a finite s ≥ 0, got {}",
                self.lo
            )));
        }
        if self.lo.cmp_endpoint(&self.hi)? != Ordering::Less {
            return Err(Error::Invalid(format!(
                "empty piece [{}, {})",
                self.lo, self.hi
            )));
        }
        if self.denominator.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if self.denominator.degree() != Some(0) {
            certify_strict(&self.denominator, &self.tau_interval(false), 1).map_err(|e| {
                Error::Invalid(format!("denominator not positive on the piece: {e}"))
            })?;
        } else if self.denominator.lc().sign() <= 0 {
            return Err(Error::Invalid("denominator must be positive".into()));
        }
        Ok(())
    }

    /// The piece's closure in τ; `lo_open` opens the left end.
    pub fn tau_interval(&self, lo_open: bool) -> Interval {
        Interval {
            lo: to_tau(&self.lo, self.ramification),
            hi: to_tau(&self.hi, self.ramification),
            lo_open,
        }
    }

    /// Floating value at s.
    pub fn eval_f64(&self, s: f64) -> f64 {
        let t = s.powf(1.0 / self.ramification as f64);
        self.numerator.eval_f64(t) / self.denominator.eval_f64(t)
    }

    /// Exact value at an s-endpoint as `(numerator, denominator)` number expressions.
    pub fn value_at(&self, s: &Endpoint) -> Result<(NumberExpr, NumberExpr)> {
        let m = self.ramification;
        let (base, index) = match s {
            Endpoint::Rational(r) => (r.clone(), m),
            Endpoint::Root { base, index } => (base.clone(), index * m),
            _ => return Err(Error::Invalid("value at an infinite endpoint".into())),
        };
        Ok((
            NumberExpr::poly_at_root(&self.numerator, &base, index),
            NumberExpr::poly_at_root(&self.denominator, &base, index),
        ))
    }
}

/// `F = (Q₁ − Q₂√R)/den` in τ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FParts {
    pub q1: QPoly,
    pub q2: QPoly,
    pub radicand: QPoly,
    pub denominator: QPoly,
}

impl FParts {
    /// Common power of τ in `Q₁, Q₂` and the reduced pair.
    pub fn stripped(&self) -> (usize, QPoly, QPoly) {
        let j = match (self.q1.valuation(), self.q2.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0,
        };
        (j, self.q1.unshift(j), self.q2.unshift(j))
    }

    pub fn eval_f64(&self, tau: f64) -> f64 {
        (self.q1.eval_f64(tau) - self.q2.eval_f64(tau) * self.radicand.eval_f64(tau).sqrt())
            / self.denominator.eval_f64(tau)
    }
}

/// Residual of the leaf equation on a piece:
/// `F(g) = s g′ − σ(1 + g²)(7√2 s + (3√R − 3s − 9σ) g)/D`, with `s g′ = (τ/m) dg/dτ`.
pub fn compute_f(piece: &BarrierPiece, leaf: Leaf) -> FParts {
    let m = piece.ramification as usize;
    let sg = leaf.sigma();
    let n = &piece.numerator;
    let p = &piece.denominator;
    let s = QPoly::monomial(QSqrt2::one(), m).with_var(Var::Tau);
    let d = denominator(leaf).substitute_power(m).with_var(Var::Tau);
    let r = radicand(leaf).substitute_power(m).with_var(Var::Tau);
    // s·g′·D·P³ = (τ/m)·D·P·(N′P − NP′)
    let wronskian = &(&n.derivative() * p) - &(n * &p.derivative());
    let tau_over_m = QPoly::monomial(QSqrt2::from_ratios(1, m as i64, 0, 1), 1);
    let first = &tau_over_m * &(&d * &(p * &wronskian));
    let sum_sq = &(p * p) + &(n * n);
    let lin = &s.scale(&QSqrt2::from_ratios(0, 1, 7, 1)) * p;
    let shift = &s.scale(&QSqrt2::from_int(3)) + &QPoly::from_ints(&[9 * sg]);
    let inner = &lin - &(&shift * n);
    let q1 = &first - &(&sum_sq * &inner).scale(&QSqrt2::from_int(sg));
    let q2 = (&sum_sq * n).scale(&QSqrt2::from_int(3 * sg));
    let den = &d * &p.pow(3);
    FParts {
        q1: q1.with_var(Var::Tau),
        q2: q2.with_var(Var::Tau),
        radicand: r,
        denominator: den.with_var(Var::Tau),
    }
}

/// `F̃ = Q₁² − Q₂²R = τ^k·cofactor`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FTilde {
    pub full: QPoly,
    pub k: usize,
    pub cofactor: QPoly,
}

pub fn f_tilde_of(q1: &QPoly, q2: &QPoly, r: &QPoly) -> FTilde {
    let full = &(q1 * q1) - &(&(q2 * q2) * r);
    let (k, cofactor) = full.split_monomial();
    FTilde { full, k, cofactor }
}

pub fn compute_f_tilde(piece: &BarrierPiece, leaf: Leaf) -> FTilde {
    let f = compute_f(piece, leaf);
    f_tilde_of(&f.q1, &f.q2, &f.radicand)
}

/// A full barrier: contiguous pieces covering `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Barrier {
    pub leaf: Leaf,
    pub kind: BarrierKind,
    pub pieces: Vec<BarrierPiece>,
    /// Optional value strictly between the one-sided limits at each breakpoint.
    #[serde(default)]
    pub separators: Vec<Option<QSqrt2>>,
}

impl Barrier {
    pub fn new(leaf: Leaf, kind: BarrierKind, pieces: Vec<BarrierPiece>) -> Result<Self> {
        let b = Barrier {
            leaf,
            kind,
            pieces,
            separators: vec![],
        };
        b.validate()?;
        Ok(b)
    }

    pub fn with_separators(mut self, seps: Vec<Option<QSqrt2>>) -> Self {
        self.separators = seps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let first = self
            .pieces
            .first()
            .ok_or_else(|| Error::Invalid("barrier has no pieces".into()))?;
        if first.lo != Endpoint::Rational(int(0)) {
            return Err(Error::Invalid("first piece must start at 0".into()));
        }
        for w in self.pieces.windows(2) {
            if w[0].hi.cmp_endpoint(&w[1].lo)? != Ordering::Equal {
                return Err(Error::Invalid(format!(
                    "gap between pieces at {} and {}",
                    w[0].hi, w[1].lo
                )));
            }
        }
        if self.pieces.last().unwrap().hi != Endpoint::PosInf {
            return Err(Error::Invalid("last piece must extend to +inf".into()));
        }
        for p in &self.pieces {
            p.validate()?;
        }
        Ok(())
    }

    /// Floating value at s.
    pub fn eval_f64(&self, s: f64) -> f64 {
        for p in &self.pieces {
            if s < p.hi.to_f64() {
                return p.eval_f64(s);
            }
        }
        self.pieces.last().unwrap().eval_f64(s)
    }

    /// Breakpoints between consecutive pieces.
    pub fn breakpoints(&self) -> Vec<Endpoint> {
        self.pieces.iter().skip(1).map(|p| p.lo.clone()).collect()
    }
}
