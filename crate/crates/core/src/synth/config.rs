//! Synthesis parameters.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::barriers::BarrierKind;
use crate::error::{Error, Result};
use crate::exactnum::rational::serde_rational;
use crate::exactnum::{int, rat, QSqrt2, Rational};
use crate::leaf::Leaf;

/// Seeded tail coefficients `(c_{2/3}, c_{1/3})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailSeed {
    #[serde(with = "serde_rational")]
    pub c23: Rational,
    pub c13: QSqrt2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub leaf: Leaf,
    pub kind: BarrierKind,
    /// The near-zero piece has slope `c₁ ∓ slope_offset`.
    #[serde(with = "serde_rational")]
    pub slope_offset: Rational,
    /// Right end ε of the near-zero piece.
    #[serde(with = "serde_rational")]
    pub first_width: Rational,
    /// Upper bound on the width of every later piece.
    #[serde(with = "serde_rational")]
    pub max_width: Rational,
    /// Each piece is at most this factor wider than its left end.
    #[serde(with = "serde_rational")]
    pub growth: Rational,
    /// Fraction of the piece width by which the fitting window extends to the right.
    #[serde(with = "serde_rational")]
    pub overlap: Rational,
    pub degree: usize,
    /// Fitted coefficients are rounded to multiples of `1/den_cap`.
    pub den_cap: i64,
    /// Overshoot δ: the fitted curves solve `s·y' = Φ(s, y) ± δ·s/(1+s)`.
    #[serde(with = "serde_rational")]
    pub overshoot: Rational,
    /// Largest accepted deviation between a rounded piece and the curve it fits.
    pub fit_tol: f64,
    /// Tail coefficients are rounded to multiples of `1/tail_grid`.
    pub tail_grid: i64,
    /// Initial distance of the tail `c_{2/3}` from the numeric value, towards the safe side.
    #[serde(with = "serde_rational")]
    pub tail_margin: Rational,
    pub tail_seed: Option<TailSeed>,
    #[serde(with = "serde_rational")]
    pub s_star: Rational,
    /// Bisections allowed per partition interval.
    pub retries: usize,
    pub tol: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            leaf: Leaf::Plus,
            kind: BarrierKind::Subsolution,
            slope_offset: rat(1, 100),
            first_width: rat(1, 2),
            max_width: int(16),
            growth: int(2),
            overlap: rat(1, 10),
            degree: 5,
            den_cap: 10_000_000,
            overshoot: rat(1, 1000),
            fit_tol: 1e-2,
            tail_grid: 10_000,
            tail_margin: rat(1, 500),
            tail_seed: None,
            s_star: int(37),
            retries: 6,
            tol: 1e-11,
        }
    }
}

impl SynthConfig {
    pub fn new(leaf: Leaf, kind: BarrierKind) -> Self {
        SynthConfig {
            leaf,
            kind,
            ..Self::default()
        }
    }

    /// The seed used for the plus-leaf subsolution with the tail `−s^{2/3}/10 + (√2/5)s^{1/3}`.
    pub fn with_tail_seed(mut self, c23: Rational, c13: QSqrt2) -> Self {
        self.tail_seed = Some(TailSeed { c23, c13 });
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Invalid(format!("synth config: {m}")));
        let pos = |r: &Rational| r.is_positive();
        if !pos(&self.slope_offset) {
            return bad("slope_offset must be positive");
        }
        if !pos(&self.first_width) || !pos(&self.max_width) {
            return bad("piece widths must be positive");
        }
        if self.growth <= Rational::one() {
            return bad("growth must exceed 1");
        }
        if self.overlap.is_negative() {
            return bad("overlap must be non-negative");
        }
        if self.den_cap <= 0 || self.tail_grid <= 0 || self.retries == 0 {
            return bad("caps must be positive");
        }
        if !pos(&self.overshoot) {
            return bad("overshoot must be positive");
        }
        if self.tail_margin.is_negative() {
            return bad("tail_margin must be non-negative");
        }
        if [self.fit_tol, self.tol]
            .iter()
            .any(|t| t.is_nan() || *t <= 0.0)
        {
            return bad("tolerances must be positive");
        }
        if self.s_star <= self.first_width {
            return bad("s_star must exceed first_width");
        }
        Ok(())
    }
}
