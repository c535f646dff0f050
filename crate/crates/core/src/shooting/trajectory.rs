//! Numeric solutions of the leaf equations started from the series at 0.

use std::f64::consts::SQRT_2;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::dopri::{integrate as dopri, StepStats};
use crate::error::{Error, Result};
use crate::leaf::Leaf;
use crate::odes::{davini_rhs, leaf_phi, linearized_slope, s_of_t, second_order_coefficient, t0};

/// Start point of the integration.
pub const S_START: f64 = 1e-6;
/// Above this point the integration runs in `x = ln s`.
pub const S_LOG: f64 = 1.0;
/// Default number of recorded samples per decade of s.
pub const SAMPLES_PER_DECADE: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub leaf: Leaf,
    /// `(s, w)` with s strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub tol: f64,
    pub s_max: f64,
    pub stats: StepStats,
}

/// `w(S_START)` from the two-term series `c₁s + c₂s²`.
pub fn series_start(leaf: Leaf) -> f64 {
    let (c1, c2) = (
        linearized_slope(leaf).to_f64(),
        second_order_coefficient(leaf).to_f64(),
    );
    c1 * S_START + c2 * S_START * S_START
}

fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let n = ((hi / lo).log10() * per_decade as f64).ceil() as usize;
    (1..=n)
        .map(|i| lo * 10f64.powf(i as f64 / per_decade as f64))
        .filter(|&s| s < hi)
        .collect()
}

/// Integrate the leaf equation to `s_max` with local tolerance `tol`, recording every
/// accepted step plus a logarithmic sample grid.
pub fn integrate(leaf: Leaf, s_max: f64, tol: f64) -> Result<Trajectory> {
    let mut stops = log_grid(S_START, s_max, SAMPLES_PER_DECADE);
    stops.push(s_max);
    integrate_with_stops(leaf, s_max, tol, &stops)
}

/// As [`integrate`], landing exactly on each point of `stops` (sorted).
pub fn integrate_with_stops(leaf: Leaf, s_max: f64, tol: f64, stops: &[f64]) -> Result<Trajectory> {
    if s_max.is_nan() || s_max <= S_START || tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid(format!(
            "need s_max > {S_START} and tol > 0"
        )));
    }
    let mut samples = vec![(S_START, series_start(leaf))];
    let mut stats = StepStats::default();
    let s1 = s_max.min(S_LOG);
    let early: Vec<f64> = stops
        .iter()
        .copied()
        .filter(|&s| s > S_START && s <= s1)
        .collect();
    let (w1, st) = dopri(
        |s, w| Ok(leaf_phi(leaf, s, w) / s),
        S_START,
        samples[0].1,
        s1,
        tol,
        &early,
        |s, w, _| samples.push((s, w)),
    )?;
    stats.accepted += st.accepted;
    stats.rejected += st.rejected;
    if s_max > S_LOG {
        // v = w − d(√2/2)s in x = ln s keeps the tolerance relative to the sub-linear part.
        let a = leaf.sigma() as f64 * SQRT_2 / 2.0;
        let late: Vec<f64> = stops
            .iter()
            .copied()
            .filter(|&s| s > S_LOG)
            .map(f64::ln)
            .collect();
        let (_, st) = dopri(
            |x, v| {
                let s = x.exp();
                Ok(leaf_phi(leaf, s, v + a * s) - a * s)
            },
            0.0,
            w1 - a * S_LOG,
            s_max.ln(),
            tol,
            &late,
            |x, v, _| {
                let s = x.exp();
                samples.push((s, v + a * s));
            },
        )?;
        stats.accepted += st.accepted;
        stats.rejected += st.rejected;
    }
    samples.dedup_by(|b, a| b.0 <= a.0);
    Ok(Trajectory {
        leaf,
        samples,
        tol,
        s_max,
        stats,
    })
}

impl Trajectory {
    /// `w` at a recorded sample point nearest to `s`.
    pub fn nearest(&self, s: f64) -> (f64, f64) {
        let i = self.samples.partition_point(|p| p.0 < s);
        let cands = [i.saturating_sub(1), i.min(self.samples.len() - 1)];
        let j = if (self.samples[cands[0]].0 - s).abs() <= (self.samples[cands[1]].0 - s).abs() {
            cands[0]
        } else {
            cands[1]
        };
        self.samples[j]
    }

    /// `s,w` CSV with shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,w\n");
        for (s, w) in &self.samples {
            let _ = writeln!(out, "{s:e},{w:e}");
        }
        out
    }

    pub fn last(&self) -> (f64, f64) {
        *self.samples.last().unwrap()
    }
}

/// `t` with `s(t) = s` on the plus leaf: `2t = atan2(2√2 s, s + 3)`.
pub fn t_of_s(s: f64) -> f64 {
    0.5 * (2.0 * SQRT_2 * s).atan2(s + 3.0)
}

/// Davini's equation for `φ′` from the series start up to `t_max < t₀`, sampled on a
/// uniform grid of `n` points plus every accepted step.
pub fn integrate_davini(t_max: f64, tol: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let t_start = t_of_s(S_START);
    if !(t_max > t_start && t_max < t0()) || tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid(format!(
            "need {t_start:e} < t_max < t₀ = {} and tol > 0",
            t0()
        )));
    }
    let grid: Vec<f64> = (1..=n)
        .map(|i| t_start + (t_max - t_start) * i as f64 / n as f64)
        .collect();
    let mut out = vec![(t_start, series_start(Leaf::Plus))];
    dopri(
        davini_rhs,
        t_start,
        out[0].1,
        t_max,
        tol,
        &grid,
        |t, y, _| out.push((t, y)),
    )?;
    Ok(out)
}

/// Integrate Davini's equation for `φ′` and the plus-leaf equation side by side and
/// return the largest relative disagreement at `n` points `t ∈ (0.05, t₀ − 0.05)`.
pub fn davini_cross_check(n: usize, tol: f64) -> Result<f64> {
    let ts: Vec<f64> = (0..n)
        .map(|i| 0.05 + (t0() - 0.1) * (i as f64 + 0.5) / n as f64)
        .collect();
    let ss: Vec<f64> = ts.iter().map(|&t| s_of_t(t)).collect();
    let s_max = ss.iter().cloned().fold(0.0, f64::max);
    let traj = integrate_with_stops(Leaf::Plus, s_max, tol, &ss)?;
    let mut davini = Vec::new();
    dopri(
        davini_rhs,
        t_of_s(S_START),
        series_start(Leaf::Plus),
        *ts.last().unwrap(),
        tol,
        &ts,
        |t, y, stop| {
            if stop {
                davini.push((t, y));
            }
        },
    )?;
    let mut worst: f64 = 0.0;
    for (&(_, y), &s) in davini.iter().zip(&ss) {
        let (_, w) = traj.nearest(s);
        worst = worst.max((y - w).abs() / w.abs().max(1e-300));
    }
    if davini.len() != n {
        return Err(Error::Integration {
            at: s_max,
            reason: "missed comparison points".into(),
        });
    }
    Ok(worst)
}
