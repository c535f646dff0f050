//! Least-squares extraction of `w ∓ (√2/2)s ≈ c₂₃s^(2/3) + c₁₃s^(1/3) + c₀` and of `b`.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::leaf::Leaf;

/// `(3√2/2)^(2/3)`.
pub fn k23() -> f64 {
    (1.5 * SQRT_2).powf(2.0 / 3.0)
}

/// `(3√2/2)^(1/3)`.
pub fn k13() -> f64 {
    (1.5 * SQRT_2).powf(1.0 / 3.0)
}

/// `b` from the `s^(2/3)` coefficient: `c₂₃ = −σ(3√2/2)^(2/3)b/9`.
pub fn b_from_c23(leaf: Leaf, c23: f64) -> f64 {
    -(leaf.sigma() as f64) * 9.0 * c23 / k23()
}

/// `c₂₃` for a given `b` (inverse of [`b_from_c23`]).
pub fn c23_from_b(leaf: Leaf, b: f64) -> f64 {
    -(leaf.sigma() as f64) * k23() * b / 9.0
}

/// Predicted `s^(1/3)` coefficient `σ·5(3√2/2)^(1/3)b²/27`.
pub fn predicted_c13(leaf: Leaf, b: f64) -> f64 {
    leaf.sigma() as f64 * 5.0 * k13() * b * b / 27.0
}

/// Relative tolerance of the `c₁₃` consistency diagnostic.
pub const C13_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymFit {
    pub leaf: Leaf,
    pub window: (f64, f64),
    pub samples: usize,
    pub c23: f64,
    pub c13: f64,
    pub c0: f64,
    pub b: f64,
    pub predicted_c13: f64,
    /// `|c₁₃ − predicted|/|predicted|`.
    pub c13_rel_error: f64,
    /// RMS residual of the fit.
    pub residual: f64,
}

impl AsymFit {
    pub fn consistent(&self) -> bool {
        self.c13_rel_error < C13_TOLERANCE
    }
}

/// Fit the trajectory samples with `s ∈ [s1, s2]`. The linear coefficient is pinned.
pub fn fit_asymptotics(traj: &Trajectory, window: (f64, f64)) -> Result<AsymFit> {
    let (s1, s2) = window;
    if !(s1 > 0.0 && s2 / s1 >= 10.0) {
        return Err(Error::IllConditioned(format!(
            "window [{s1}, {s2}] must satisfy S₂/S₁ ≥ 10"
        )));
    }
    let (lo, hi) = (traj.samples[0].0, traj.last().0);
    if s1 < lo || s2 > hi * (1.0 + 1e-12) {
        return Err(Error::IllConditioned(format!(
            "window [{s1}, {s2}] outside the trajectory [{lo}, {hi}]"
        )));
    }
    let a = traj.leaf.sigma() as f64 * SQRT_2 / 2.0;
    let pts: Vec<(f64, f64)> = traj
        .samples
        .iter()
        .filter(|(s, _)| *s >= s1 && *s <= s2 * (1.0 + 1e-12))
        .map(|&(s, w)| (s, w - a * s))
        .collect();
    if pts.len() < 10 {
        return Err(Error::IllConditioned(format!(
            "only {} samples in the window",
            pts.len()
        )));
    }
    // columns scaled to unit size at s₂
    let scale = [s2.powf(2.0 / 3.0), s2.powf(1.0 / 3.0), 1.0];
    let m = DMatrix::from_fn(pts.len(), 3, |i, j| {
        pts[i].0.powf((2 - j) as f64 / 3.0) / scale[j]
    });
    let y = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1));
    let svd = m.clone().svd(true, true);
    let sv = &svd.singular_values;
    let cond = sv.max() / sv.min();
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::IllConditioned(format!("condition number {cond:e}")));
    }
    let x = svd
        .solve(&y, 1e-14)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;
    let (c23, c13, c0) = (x[0] / scale[0], x[1] / scale[1], x[2] / scale[2]);
    let r = &m * &x - &y;
    let residual = (r.norm_squared() / pts.len() as f64).sqrt();
    let b = b_from_c23(traj.leaf, c23);
    let pred = predicted_c13(traj.leaf, b);
    Ok(AsymFit {
        leaf: traj.leaf,
        window,
        samples: pts.len(),
        c23,
        c13,
        c0,
        b,
        predicted_c13: pred,
        c13_rel_error: (c13 - pred).abs() / pred.abs(),
        residual,
    })
}
