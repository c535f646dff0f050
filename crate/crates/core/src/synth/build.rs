//! Piecewise barrier synthesis from overshooting numeric solutions.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::Zero;

use super::config::SynthConfig;
use crate::barriers::{
    certify_barrier, certify_piece, Barrier, BarrierCertificate, BarrierKind, BarrierPiece, Limit,
};
use crate::error::{Error, Result};
use crate::exactnum::rational::to_f64;
use crate::exactnum::{int, Endpoint, QPoly, QSqrt2, Rational, Var};
use crate::leaf::Leaf;
use crate::odes::{leaf_phi, linearized_slope};
use crate::shooting::dopri::integrate as dopri;
use crate::shooting::trajectory::S_START;
use crate::shooting::{
    fit_asymptotics, integrate, Trajectory, DEFAULT_S_MAX, DEFAULT_TOL, DEFAULT_WINDOW,
};

/// Offsets `t` tried for `c_{1/3} = 5√2σc²_{2/3} − e·t`, then with the opposite sign.
const C13_OFFSETS: [(i64, i64); 7] = [
    (0, 1),
    (1, 1000),
    (1, 100),
    (1, 20),
    (1, 10),
    (1, 5),
    (1, 2),
];
/// Multiples of the tail margin tried before giving up on the tail.
const MARGIN_STEPS: [i64; 4] = [1, 2, 4, 8];
/// Attempts made by [`improve_bound`].
const IMPROVE_STEPS: usize = 12;

fn grid_round(x: f64, den: i64, dir: i8) -> Rational {
    let v = x * den as f64;
    let n = match dir {
        d if d > 0 => v.ceil(),
        d if d < 0 => v.floor(),
        _ => v.round(),
    };
    Rational::new(BigInt::from(n as i64), BigInt::from(den))
}

fn q(r: Rational) -> QSqrt2 {
    QSqrt2::from_rational(r)
}

/// Solve `s·y' = Φ(s, y) + e·η·s/(1+s)` from `(s0, y0)` and return `y` at each of `at` (sorted, > s0).
fn overshoot_curve(
    leaf: Leaf,
    e: i8,
    eta: f64,
    s0: f64,
    y0: f64,
    at: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    let Some(&end) = at.last() else {
        return Ok(vec![]);
    };
    let force = e as f64 * eta;
    let mut out = Vec::with_capacity(at.len());
    dopri(
        |s, y| Ok(leaf_phi(leaf, s, y) / s + force / (1.0 + s)),
        s0,
        y0,
        end,
        tol,
        at,
        |_, y, stop| {
            if stop {
                out.push(y)
            }
        },
    )?;
    if out.len() != at.len() {
        return Err(Error::Integration {
            at: end,
            reason: "missed sample points".into(),
        });
    }
    Ok(out)
}

fn nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    // Chebyshev points, ascending
    (0..n)
        .map(|k| {
            let c = -((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * c
        })
        .collect()
}

fn least_squares(basis: &[Vec<f64>], target: &[f64]) -> Vec<f64> {
    let (rows, cols) = (target.len(), basis.len());
    let a = DMatrix::from_fn(rows, cols, |i, j| basis[j][i]);
    let b = DVector::from_column_slice(target);
    let svd = a.svd(true, true);
    svd.solve(&b, 1e-14)
        .map(|x| x.iter().copied().collect())
        .unwrap_or_else(|_| vec![0.0; cols])
}

/// A rounded candidate together with the curve it was fitted to.
struct Candidate {
    piece: BarrierPiece,
    samples: Vec<(f64, f64)>,
}

impl Candidate {
    fn deviation(&self) -> f64 {
        self.samples
            .iter()
            .map(|&(s, y)| (self.piece.eval_f64(s) - y).abs())
            .fold(0.0, f64::max)
    }
}

struct Ctx<'a> {
    cfg: &'a SynthConfig,
    e: i8,
}

impl Ctx<'_> {
    fn n_nodes(&self) -> usize {
        (4 * (self.cfg.degree + 1)).max(24)
    }

    fn fit_hi(&self, lo: &Rational, hi: &Rational) -> f64 {
        to_f64(hi) + to_f64(&self.cfg.overlap) * to_f64(&(hi - lo))
    }

    /// `g = d₁s + Σ_{i≥2} a_i s^i` on `[0, ε]` with `d₁ = c₁ + e·offset` exact.
    fn near_zero(&self, eps: &Rational) -> Result<Candidate> {
        let cfg = self.cfg;
        let leaf = cfg.leaf;
        if cfg.degree == 0 {
            return Err(Error::SynthesisFailed(format!(
                "[0, {eps}): degree cap 0 cannot carry the near-zero slope"
            )));
        }
        let d1 =
            &linearized_slope(leaf) + &q(&cfg.slope_offset * Rational::from_integer(self.e.into()));
        // forcing that makes the curve leave 0 with slope d₁
        let gain = (3 - leaf.sigma() * (3 - 9 * leaf.sigma())) as f64 / 3.0;
        let eta = to_f64(&cfg.slope_offset) * gain;
        let ef = to_f64(eps);
        let pts = nodes(0.0, self.fit_hi(&int(0), eps), self.n_nodes());
        let ys = overshoot_curve(
            leaf,
            self.e,
            eta,
            S_START,
            d1.to_f64() * S_START,
            &pts,
            cfg.tol,
        )?;
        let d1f = d1.to_f64();
        let basis: Vec<Vec<f64>> = (2..=cfg.degree)
            .map(|i| pts.iter().map(|s| (s / ef).powi(i as i32)).collect())
            .collect();
        let target: Vec<f64> = pts.iter().zip(&ys).map(|(s, y)| y - d1f * s).collect();
        let a = if basis.is_empty() {
            vec![]
        } else {
            least_squares(&basis, &target)
        };
        let mut coeffs = vec![QSqrt2::zero(), d1];
        for (i, ai) in a.iter().enumerate() {
            let r = grid_round(*ai, cfg.den_cap, 0) / eps.pow(i as i32 + 2);
            coeffs.push(q(r));
        }
        let piece = BarrierPiece::polynomial(
            Endpoint::Rational(int(0)),
            Endpoint::Rational(eps.clone()),
            QPoly::new(coeffs),
        )?;
        let samples = pts.into_iter().zip(ys).filter(|(s, _)| *s <= ef).collect();
        Ok(Candidate { piece, samples })
    }

    /// Fit on `[lo, hi]` pinned to `g(lo) = start`.
    fn interior(&self, lo: &Rational, hi: &Rational, start: &QSqrt2) -> Result<Candidate> {
        let cfg = self.cfg;
        let (lf, hf) = (to_f64(lo), to_f64(hi));
        let mid = (lo + hi) / int(2);
        let half = (hi - lo) / int(2);
        let (mf, wf) = (to_f64(&mid), to_f64(&half));
        let pts: Vec<f64> = nodes(lf, self.fit_hi(lo, hi), self.n_nodes());
        let y0 = start.to_f64();
        let ys = overshoot_curve(
            cfg.leaf,
            self.e,
            to_f64(&cfg.overshoot),
            lf,
            y0,
            &pts,
            cfg.tol,
        )?;
        let u = |s: f64| (s - mf) / wf;
        let basis: Vec<Vec<f64>> = (1..=cfg.degree)
            .map(|i| {
                pts.iter()
                    .map(|&s| u(s).powi(i as i32) - (-1f64).powi(i as i32))
                    .collect()
            })
            .collect();
        let target: Vec<f64> = ys.iter().map(|y| y - y0).collect();
        let a = if basis.is_empty() {
            vec![]
        } else {
            least_squares(&basis, &target)
        };
        let a: Vec<Rational> = a.iter().map(|x| grid_round(*x, cfg.den_cap, 0)).collect();
        let mut c0 = start.clone();
        for (i, ai) in a.iter().enumerate() {
            let sgn = if i % 2 == 0 { -ai.clone() } else { ai.clone() };
            c0 = &c0 - &q(sgn);
        }
        let mut in_u = vec![c0];
        in_u.extend(a.into_iter().map(q));
        let inner =
            QPoly::from_rationals(&[-&mid / &half, Rational::from_integer(1.into()) / &half]);
        let poly = QPoly::new(in_u).compose(&inner);
        let piece = BarrierPiece::polynomial(
            Endpoint::Rational(lo.clone()),
            Endpoint::Rational(hi.clone()),
            poly,
        )?;
        let samples = pts.into_iter().zip(ys).filter(|(s, _)| *s <= hf).collect();
        Ok(Candidate { piece, samples })
    }
}

/// Left limit at `s_*` of `piece` as an exact limit.
fn limit_at(piece: &BarrierPiece, at: &Endpoint) -> Result<Limit> {
    let (num, den) = piece.value_at(at)?;
    Ok(Limit { num, den })
}

/// `(±√2/2)s + c23 s^{2/3} + c13 s^{1/3} + c0` on `[s_*, ∞)`.
pub fn tail_piece(
    leaf: Leaf,
    s_star: &Rational,
    c23: &Rational,
    c13: &QSqrt2,
    c0: &Rational,
) -> Result<BarrierPiece> {
    let a = QSqrt2::from_ratios(0, 1, leaf.sigma(), 2);
    let num = QPoly::new(vec![q(c0.clone()), c13.clone(), q(c23.clone()), a]).with_var(Var::Tau);
    BarrierPiece::new(
        Endpoint::Rational(s_star.clone()),
        Endpoint::PosInf,
        3,
        num,
        QPoly::one(),
    )
}

/// The tail `c_{2/3}` of a barrier whose last piece has the tail form.
pub fn tail_coefficients(b: &Barrier) -> Option<(Rational, QSqrt2, Rational)> {
    let t = b.pieces.last()?;
    if t.ramification != 3
        || t.hi != Endpoint::PosInf
        || t.numerator.degree()? != 3
        || t.denominator != QPoly::one()
    {
        return None;
    }
    let (c0, c13, c23) = (
        t.numerator.coeff(0),
        t.numerator.coeff(1),
        t.numerator.coeff(2),
    );
    (c23.is_rational() && c0.is_rational()).then(|| (c23.a.clone(), c13, c0.a.clone()))
}

/// Search `c_{1/3}` and `c₀` for a tail with this `c_{2/3}` that passes after `prev`.
/// `c₀` is set from the left limit so the jump at `s_*` has the right direction.
fn find_tail(
    leaf: Leaf,
    kind: BarrierKind,
    prev: &BarrierPiece,
    s_star: &Rational,
    c23: &Rational,
    hint: Option<&QSqrt2>,
    grid: i64,
) -> Result<Option<BarrierPiece>> {
    let e = kind.sign();
    let at = Endpoint::Rational(s_star.clone());
    let left = limit_at(prev, &at)?;
    let lf = left.to_f64();
    let boundary = QSqrt2::from_ratios(0, 1, 5 * leaf.sigma(), 1).scale(&(c23 * c23));
    let mut c13s: Vec<QSqrt2> = hint.into_iter().cloned().collect();
    for dir in [-e, e] {
        for &(n, d) in &C13_OFFSETS {
            if n == 0 && dir == e {
                continue;
            }
            c13s.push(&boundary + &QSqrt2::from_ratios(dir as i64 * n, d, 0, 1));
        }
    }
    let sf = to_f64(s_star);
    for c13 in c13s {
        let rest = QSqrt2::from_ratios(0, 1, leaf.sigma(), 2).to_f64() * sf
            + to_f64(c23) * sf.powf(2.0 / 3.0)
            + c13.to_f64() * sf.cbrt();
        // sub: tail(s_*) ≤ left; super: tail(s_*) ≥ left
        let c0 = grid_round(lf - rest + e as f64 / grid as f64, grid, e);
        let tail = tail_piece(leaf, s_star, c23, &c13, &c0)?;
        let right = limit_at(&tail, &at)?;
        if left.cmp_sign(&right)? * e > 0 {
            continue;
        }
        match certify_piece(&tail, leaf, kind) {
            Ok(_) => return Ok(Some(tail)),
            Err(Error::CertificationFailed(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Ok(None)
}

/// Numeric `c_{2/3}` of the leaf solution.
pub fn numeric_c23(leaf: Leaf) -> Result<f64> {
    let tr = integrate(leaf, DEFAULT_S_MAX, DEFAULT_TOL)?;
    Ok(fit_asymptotics(&tr, DEFAULT_WINDOW)?.c23)
}

fn partition(cfg: &SynthConfig) -> Vec<(Rational, Rational)> {
    let mut out = vec![(int(0), cfg.first_width.clone())];
    let mut lo = cfg.first_width.clone();
    while lo < cfg.s_star {
        let step = (&lo * &cfg.growth - &lo).min(cfg.max_width.clone());
        let mut hi = &lo + &step;
        // absorb a sliver left before s_* when the width cap allows
        if &cfg.s_star - &hi < &step / int(4) && &cfg.s_star - &lo <= cfg.max_width {
            hi = cfg.s_star.clone();
        }
        let hi = hi.min(cfg.s_star.clone());
        out.push((lo.clone(), hi.clone()));
        lo = hi;
    }
    out
}

/// Build, round and certify a barrier for `cfg.leaf`; the returned barrier always passes.
pub fn synthesize(cfg: &SynthConfig) -> Result<(Barrier, BarrierCertificate)> {
    cfg.validate()?;
    let c23 = numeric_c23(cfg.leaf)?;
    synthesize_with_target(cfg, c23)
}

/// As [`synthesize`] with a given numeric `c_{2/3}` for the tail.
pub fn synthesize_with_target(
    cfg: &SynthConfig,
    c23_numeric: f64,
) -> Result<(Barrier, BarrierCertificate)> {
    cfg.validate()?;
    let ctx = Ctx {
        cfg,
        e: cfg.kind.sign(),
    };
    let (leaf, kind) = (cfg.leaf, cfg.kind);
    let mut pieces: Vec<BarrierPiece> = Vec::new();
    // (lo, hi, bisections so far)
    let mut queue: Vec<(Rational, Rational, usize)> = partition(cfg)
        .into_iter()
        .rev()
        .map(|(a, b)| (a, b, 0))
        .collect();
    let gap = q(Rational::new(
        BigInt::from(ctx.e),
        BigInt::from(cfg.den_cap),
    ));
    while let Some((lo, hi, depth)) = queue.pop() {
        let cand = match pieces.last() {
            None => ctx.near_zero(&hi)?,
            Some(prev) => {
                let left = limit_at(prev, &Endpoint::Rational(lo.clone()))?;
                let exact = left
                    .as_qsqrt2()
                    .ok_or_else(|| Error::Invalid("irrational left limit".into()))?;
                ctx.interior(&lo, &hi, &(&exact + &gap))?
            }
        };
        let ok = cand.deviation() <= cfg.fit_tol
            && match certify_piece(&cand.piece, leaf, kind) {
                Ok(_) => true,
                Err(Error::CertificationFailed(_)) => false,
                Err(other) => return Err(other),
            };
        if ok {
            pieces.push(cand.piece);
            continue;
        }
        if depth >= cfg.retries {
            return Err(Error::SynthesisFailed(format!(
                "no certified piece on [{lo}, {hi}) after {depth} bisections (fit deviation {:.3e})",
                cand.deviation()
            )));
        }
        let mid = (&lo + &hi) / int(2);
        queue.push((mid.clone(), hi, depth + 1));
        queue.push((lo, mid, depth + 1));
    }
    let prev = pieces.last().expect("partition is non-empty");
    let mut tail = None;
    let seed = cfg.tail_seed.as_ref();
    if let Some(s) = seed {
        tail = find_tail(
            leaf,
            kind,
            prev,
            &cfg.s_star,
            &s.c23,
            Some(&s.c13),
            cfg.tail_grid,
        )?;
    }
    for k in MARGIN_STEPS {
        if tail.is_some() {
            break;
        }
        let margin = to_f64(&cfg.tail_margin) * k as f64;
        let c23 = grid_round(c23_numeric + ctx.e as f64 * margin, cfg.tail_grid, ctx.e);
        tail = find_tail(leaf, kind, prev, &cfg.s_star, &c23, None, cfg.tail_grid)?;
    }
    let tail = tail.ok_or_else(|| {
        Error::SynthesisFailed(format!("no certified tail on [{}, ∞)", cfg.s_star))
    })?;
    pieces.push(tail);
    let barrier = Barrier::new(leaf, kind, pieces)?;
    let cert = certify_barrier(&barrier)?;
    if !cert.pass {
        return Err(Error::SynthesisFailed(cert.failures.join("; ")));
    }
    Ok((barrier, cert))
}

/// Move the tail `c_{2/3}` of a certified barrier towards `target`, re-verifying each step;
/// returns the last barrier that verified.
pub fn improve_bound(start: &Barrier, target: f64, grid: i64) -> Result<Barrier> {
    let cert = certify_barrier(start)?;
    if !cert.pass {
        return Err(Error::CertificationFailed(
            "start barrier does not verify".into(),
        ));
    }
    let Some((mut cur, _, _)) = tail_coefficients(start) else {
        return Ok(start.clone());
    };
    let mut best = start.clone();
    let mut step = target - to_f64(&cur);
    for _ in 0..IMPROVE_STEPS {
        let next = grid_round(to_f64(&cur) + step / 2.0, grid, 0);
        if next == cur {
            break;
        }
        match with_tail_c23(&best, &next, grid)? {
            Some(b) => {
                best = b;
                cur = next;
                step = target - to_f64(&cur);
            }
            None => step /= 2.0,
        }
    }
    Ok(best)
}

/// Replace the tail of `b` by one with coefficient `c23`, or `None` if nothing verifies.
pub fn with_tail_c23(b: &Barrier, c23: &Rational, grid: i64) -> Result<Option<Barrier>> {
    let n = b.pieces.len();
    if n < 2 {
        return Ok(None);
    }
    let s_star = match &b.pieces[n - 1].lo {
        Endpoint::Rational(r) => r.clone(),
        _ => return Ok(None),
    };
    let Some(tail) = find_tail(b.leaf, b.kind, &b.pieces[n - 2], &s_star, c23, None, grid)? else {
        return Ok(None);
    };
    let mut pieces = b.pieces[..n - 1].to_vec();
    pieces.push(tail);
    let mut seps = b.separators.clone();
    seps.resize(n - 1, None);
    seps[n - 2] = None;
    let out = Barrier::new(b.leaf, b.kind, pieces)?.with_separators(seps);
    let cert = certify_barrier(&out)?;
    Ok(cert.pass.then_some(out))
}

/// Largest gap `e·(barrier − w)` over trajectory samples; negative when the barrier sits on its side.
pub fn side_violation(barrier: &Barrier, traj: &Trajectory) -> f64 {
    let e = barrier.kind.sign() as f64;
    traj.samples
        .iter()
        .map(|&(s, w)| -e * (barrier.eval_f64(s) - w))
        .fold(f64::NEG_INFINITY, f64::max)
}
