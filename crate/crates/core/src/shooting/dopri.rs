//! Dormand–Prince 5(4) for a scalar ODE `y′ = f(x, y)`.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrate from `(x0, y0)` to `x1 > x0`, landing exactly on every point of `stops`
/// (sorted, inside `(x0, x1]`) and reporting each accepted step to `record`.
/// The local error per step is kept below `tol·(1 + |y|)`.
pub fn integrate<F, R>(
    f: F,
    x0: f64,
    y0: f64,
    x1: f64,
    tol: f64,
    stops: &[f64],
    mut record: R,
) -> Result<(f64, StepStats)>
where
    F: Fn(f64, f64) -> Result<f64>,
    R: FnMut(f64, f64, bool),
{
    let mut stats = StepStats::default();
    let (mut x, mut y) = (x0, y0);
    let mut k1 = f(x, y)?;
    let mut h = (x1 - x0).min(1e-3 * (1.0 + x0.abs())).max(1e-12);
    let mut next_stop = 0usize;
    let hmin = 1e-14 * (1.0 + x1.abs());
    while x < x1 {
        while next_stop < stops.len() && stops[next_stop] <= x {
            next_stop += 1;
        }
        let target = if next_stop < stops.len() {
            stops[next_stop].min(x1)
        } else {
            x1
        };
        let mut hit = false;
        if x + h >= target {
            h = target - x;
            hit = true;
        }
        let mut k = [0.0; 7];
        k[0] = k1;
        for i in 1..7 {
            let yi = y + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
            k[i] = f(x + C[i] * h, yi)?;
        }
        let y5 = y + h * (0..6).map(|j| A[6][j] * k[j]).sum::<f64>();
        let err = (h * (0..7).map(|j| E[j] * k[j]).sum::<f64>()).abs()
            / (tol * (1.0 + y.abs().max(y5.abs())));
        if !err.is_finite() {
            return Err(Error::Integration {
                at: x,
                reason: "non-finite right-hand side".into(),
            });
        }
        if err <= 1.0 {
            x = if hit { target } else { x + h };
            y = y5;
            k1 = k[6];
            stats.accepted += 1;
            record(
                x,
                y,
                hit && next_stop < stops.len() && target == stops[next_stop],
            );
        } else {
            stats.rejected += 1;
        }
        let fac = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= fac;
        if h < hmin && x < x1 {
            return Err(Error::Integration {
                at: x,
                reason: "step size underflow".into(),
            });
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential() {
        let (y, st) = integrate(|_, y| Ok(y), 0.0, 1.0, 1.0, 1e-12, &[], |_, _, _| {}).unwrap();
        assert!((y - std::f64::consts::E).abs() < 1e-10, "{y}");
        assert!(st.accepted > 0);
    }

    #[test]
    fn lands_on_stops() {
        let mut hits = vec![];
        integrate(
            |x, _| Ok(x.cos()),
            0.0,
            0.0,
            3.0,
            1e-10,
            &[0.5, 1.5, 2.0],
            |x, y, stop| {
                if stop {
                    hits.push((x, y));
                }
            },
        )
        .unwrap();
        assert_eq!(
            hits.iter().map(|h| h.0).collect::<Vec<_>>(),
            vec![0.5, 1.5, 2.0]
        );
        for (x, y) in hits {
            assert!((y - x.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let r = integrate(|_, y| Ok(y * y), 0.0, 1.0, 2.0, 1e-10, &[], |_, _, _| {});
        assert!(matches!(r, Err(Error::Integration { .. })));
    }
}
