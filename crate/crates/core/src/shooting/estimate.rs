//! Numeric `b±`, the bounds implied by certified barrier tails, and envelope checks.

use serde::{Deserialize, Serialize};

use super::fit::{fit_asymptotics, k23, AsymFit};
use super::trajectory::{integrate, Trajectory};
use crate::barriers::{Barrier, BarrierKind};
use crate::error::Result;
use crate::exactnum::QSqrt2;
use crate::leaf::Leaf;

pub const DEFAULT_S_MAX: f64 = 1e6;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_WINDOW: (f64, f64) = (1e4, 1e6);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// A bound on `b` read off a certified barrier: `(3√2/2)^(2/3)·b/9` compared with `scaled`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBound {
    pub side: Side,
    pub scaled: QSqrt2,
    pub value: f64,
    pub strict: bool,
    pub source: String,
}

impl BBound {
    pub fn admits(&self, b: f64) -> bool {
        match (self.side, self.strict) {
            (Side::Lower, true) => b > self.value,
            (Side::Lower, false) => b >= self.value,
            (Side::Upper, true) => b < self.value,
            (Side::Upper, false) => b <= self.value,
        }
    }
}

/// `s^(2/3)` coefficient of the last piece when it is `a·s + c₂₃s^(2/3) + c₁₃s^(1/3) + c₀`.
pub fn tail_c23(b: &Barrier) -> Option<QSqrt2> {
    let p = b.pieces.last()?;
    if p.ramification != 3 || p.denominator.degree() != Some(0) || p.numerator.degree() != Some(3) {
        return None;
    }
    let d = p.denominator.coeff(0).inv()?;
    Some(&p.numerator.coeff(2) * &d)
}

/// The bound on `b` implied by a certified barrier whose tail shares the solution's linear term.
///
/// With `c₂₃(w) = −σ(3√2/2)^(2/3)b/9`, a subsolution gives `c₂₃(w) ≥ c₂₃(g)` and a
/// supersolution `c₂₃(w) ≤ c₂₃(g)`.
pub fn implied_bound(b: &Barrier, source: &str) -> Option<BBound> {
    let c = tail_c23(b)?;
    let sigma = b.leaf.sigma();
    // (3√2/2)^(2/3)·b/9 = −σ·c₂₃(w)
    let scaled = if sigma > 0 { -&c } else { c };
    let side = match (sigma > 0, b.kind) {
        (true, BarrierKind::Subsolution) | (false, BarrierKind::Supersolution) => Side::Upper,
        _ => Side::Lower,
    };
    Some(BBound {
        side,
        value: 9.0 * scaled.to_f64() / k23(),
        scaled,
        strict: false,
        source: source.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BEstimate {
    pub leaf: Leaf,
    pub fit: AsymFit,
    pub b: f64,
    pub lower: Option<BBound>,
    pub upper: Option<BBound>,
    pub inside: bool,
    pub consistent: bool,
}

/// Three decimals with trailing zeros dropped.
fn compact(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

impl BEstimate {
    /// E.g. `(0, 0.545]`.
    pub fn interval_string(&self) -> String {
        let lo = match &self.lower {
            Some(l) => format!("{}{}", if l.strict { "(" } else { "[" }, compact(l.value)),
            None => "(-inf".into(),
        };
        let hi = match &self.upper {
            Some(u) => format!("{}{}", compact(u.value), if u.strict { ")" } else { "]" }),
            None => "inf)".into(),
        };
        format!("{lo}, {hi}")
    }
}

/// Fit `b` from a trajectory and compare it with the given certified bounds.
pub fn estimate_from(
    traj: &Trajectory,
    window: (f64, f64),
    lower: Option<BBound>,
    upper: Option<BBound>,
) -> Result<BEstimate> {
    let fit = fit_asymptotics(traj, window)?;
    let b = fit.b;
    let inside =
        lower.as_ref().is_none_or(|l| l.admits(b)) && upper.as_ref().is_none_or(|u| u.admits(b));
    Ok(BEstimate {
        leaf: traj.leaf,
        consistent: fit.consistent(),
        fit,
        b,
        lower,
        upper,
        inside,
    })
}

/// Certified bounds from the built-in barriers: the tail of `g` (plus) or `ĝ` (minus).
/// For the plus leaf the strict lower bound 0 comes from the contradiction argument built
/// on the supersolution `h` and the certified large-s inequalities.
pub fn builtin_bounds(leaf: Leaf) -> (Option<BBound>, Option<BBound>) {
    use crate::artifacts::{builtin_g, builtin_g_hat};
    match leaf {
        Leaf::Plus => (
            Some(BBound {
                side: Side::Lower,
                scaled: QSqrt2::from_int(0),
                value: 0.0,
                strict: true,
                source: "supersolution h with the large-s inequalities".into(),
            }),
            implied_bound(&builtin_g(), "tail of the subsolution g"),
        ),
        Leaf::Minus => (
            None,
            implied_bound(&builtin_g_hat(), "tail of the supersolution ĝ"),
        ),
    }
}

/// Integrate, fit on the default window and compare with the built-in certified bounds.
pub fn estimate_b(leaf: Leaf) -> Result<BEstimate> {
    let traj = integrate(leaf, DEFAULT_S_MAX, DEFAULT_TOL)?;
    let (lo, hi) = builtin_bounds(leaf);
    estimate_from(&traj, DEFAULT_WINDOW, lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumReport {
    pub b_plus: f64,
    pub b_minus: f64,
    pub sum: f64,
    /// Certified upper bound on `b₊ + b₋`.
    pub certified_upper: f64,
    pub certified_negative: bool,
    pub numeric_within: bool,
}

pub fn sum_report(plus: &BEstimate, minus: &BEstimate) -> SumReport {
    let certified_upper = match (&plus.upper, &minus.upper) {
        (Some(p), Some(m)) => p.value + m.value,
        _ => f64::INFINITY,
    };
    let sum = plus.b + minus.b;
    SumReport {
        b_plus: plus.b,
        b_minus: minus.b,
        sum,
        certified_upper,
        certified_negative: certified_upper < 0.0,
        numeric_within: sum <= certified_upper,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub pass: bool,
    /// Smallest of `w − lower` and `upper − w` over the samples.
    pub worst_margin: f64,
    pub worst_at: f64,
    pub violations: usize,
}

/// Check `lower < w < upper` at every trajectory sample.
pub fn envelope_check(
    traj: &Trajectory,
    lower: Option<&Barrier>,
    upper: Option<&Barrier>,
) -> EnvelopeReport {
    let mut worst = f64::INFINITY;
    let mut worst_at = f64::NAN;
    let mut violations = 0;
    for &(s, w) in &traj.samples {
        let mut m = f64::INFINITY;
        if let Some(l) = lower {
            m = m.min(w - l.eval_f64(s));
        }
        if let Some(u) = upper {
            m = m.min(u.eval_f64(s) - w);
        }
        if m <= 0.0 {
            violations += 1;
        }
        if m < worst {
            worst = m;
            worst_at = s;
        }
    }
    EnvelopeReport {
        pass: violations == 0,
        worst_margin: worst,
        worst_at,
        violations,
    }
}
