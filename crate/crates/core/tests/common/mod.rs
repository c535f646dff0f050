//! Properties shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use hsleaf::artifacts::{builtin_g, builtin_g_hat, builtin_h};
use hsleaf::barriers::{certify_branch_rule, Barrier};
use hsleaf::certfile::CertificateFile;
use hsleaf::exactnum::{
    certify_sign_on_interval, int, rat, sturm_count, Endpoint, Interval, QPoly, QSqrt2, Rational,
};
use hsleaf::shooting::{envelope_check, integrate};
use hsleaf::Leaf;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn qr(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn sample_points(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| a + (b - a) * (j as f64 + 0.5) / n as f64)
}

/// Polynomial with known roots: `c·(x² + d)·Π(x − r_i)^{m_i}` with roots on the grid `k/4`.
#[derive(Clone, Debug)]
pub struct RootedPoly {
    pub roots: Vec<(i64, u32)>,
    pub d: i64,
    pub scale: (i64, i64),
    pub lo: i64,
    pub hi: i64,
}

impl RootedPoly {
    pub fn poly(&self) -> QPoly {
        let mut p = QPoly::from_ints(&[self.d, 0, 1]);
        for &(k, m) in &self.roots {
            let f = QPoly::from_rationals(&[qr(-k, 4), int(1)]);
            for _ in 0..m {
                p = &p * &f;
            }
        }
        p.scale(&QSqrt2::from_ratios(self.scale.0, 1, self.scale.1, 1))
    }

    /// Distinct roots in `(lo/4, hi/4]`.
    pub fn expected(&self) -> usize {
        let mut ks: Vec<i64> = self
            .roots
            .iter()
            .map(|r| r.0)
            .filter(|&k| k > self.lo && k <= self.hi)
            .collect();
        ks.sort();
        ks.dedup();
        ks.len()
    }

    /// Roots of odd multiplicity strictly inside, which dense sampling sees as sign changes.
    pub fn odd_inside(&self) -> usize {
        let mut ks: Vec<(i64, u32)> = Vec::new();
        for &(k, m) in &self.roots {
            match ks.iter_mut().find(|e| e.0 == k) {
                Some(e) => e.1 += m,
                None => ks.push((k, m)),
            }
        }
        ks.iter()
            .filter(|&&(k, m)| k > self.lo && k < self.hi && m % 2 == 1)
            .count()
    }
}

pub fn rooted_poly() -> impl Strategy<Value = RootedPoly> {
    (
        prop::collection::vec((-20i64..=20, 1u32..=2), 0..=5),
        1i64..=9,
        (1i64..=5, -3i64..=3).prop_filter("nonzero scale", |&(a, b)| a * a != 2 * b * b),
        -24i64..=20,
        1i64..=24,
    )
        .prop_map(|(roots, d, scale, lo, w)| RootedPoly {
            roots,
            d,
            scale,
            lo,
            hi: lo + w,
        })
}

fn sign_changes(p: &QPoly, a: f64, b: f64) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for x in sample_points(a, b, 997) {
        let v = p.eval_f64(x);
        // below roundoff the sign is noise
        let floor: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_f64().abs() * x.abs().powi(i as i32))
            .sum();
        if v.abs() <= 1e-10 * floor {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            n += 1;
        }
        last = v;
    }
    n
}

/// Sturm counts agree with the construction and with sign changes seen by dense sampling.
pub fn sturm_matches_sampling(c: &RootedPoly) -> Result<(), TestCaseError> {
    let p = c.poly();
    let (lo, hi) = (qr(c.lo, 4), qr(c.hi, 4));
    let n = sturm_count(
        &p,
        &Endpoint::Rational(lo.clone()),
        &Endpoint::Rational(hi.clone()),
    )
    .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(n, c.expected(), "{}", p);
    let seen = sign_changes(&p, c.lo as f64 / 4.0, c.hi as f64 / 4.0);
    prop_assert_eq!(seen, c.odd_inside(), "{}", p);
    Ok(())
}

pub fn small_poly(deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-6i64..=6, -3i64..=3), 1..=deg + 1).prop_map(|cs| {
        QPoly::new(
            cs.into_iter()
                .map(|(a, b)| QSqrt2::from_ratios(a, 1, b, 2))
                .collect(),
        )
    })
}

pub fn unit_interval() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..=12, 1i64..=12).prop_map(|(lo, w)| (lo, lo + w))
}

/// Whenever the certifier accepts a sign claim, sampling agrees.
pub fn sign_certificate_is_sound(p: &QPoly, lo: i64, hi: i64) -> Result<(), TestCaseError> {
    let iv = Interval::closed(Endpoint::Rational(qr(lo, 4)), Endpoint::Rational(qr(hi, 4)));
    for expected in [1i8, -1] {
        if certify_sign_on_interval(p, &iv, expected, &int(0)).is_ok() {
            for x in sample_points(lo as f64 / 4.0, hi as f64 / 4.0, 200) {
                let v = p.eval_f64(x);
                prop_assert!(f64::from(expected) * v > -1e-12, "{} at {}: {}", p, x, v);
            }
        }
    }
    Ok(())
}

/// An accepted branch-rule certificate for `Q₁ − Q₂√R` never disagrees with sampling.
pub fn branch_rule_is_sound(
    q1: &QPoly,
    q2: &QPoly,
    d: i64,
    lo: i64,
    hi: i64,
) -> Result<(), TestCaseError> {
    let r = QPoly::from_ints(&[d, 1, 1]);
    let iv = Interval::closed(Endpoint::Rational(qr(lo, 4)), Endpoint::Rational(qr(hi, 4)));
    for expected in [1i8, -1] {
        if certify_branch_rule(q1, q2, &r, &iv, expected).is_ok() {
            for x in sample_points(lo as f64 / 4.0, hi as f64 / 4.0, 200) {
                let v = q1.eval_f64(x) - q2.eval_f64(x) * r.eval_f64(x).sqrt();
                let scale =
                    1.0 + q1.eval_f64(x).abs() + (q2.eval_f64(x) * r.eval_f64(x).sqrt()).abs();
                prop_assert!(
                    f64::from(expected) * v > -1e-9 * scale,
                    "{} / {} at {}: {}",
                    q1,
                    q2,
                    x,
                    v
                );
            }
        }
    }
    Ok(())
}

/// The exact sign of `a + b√2` agrees with floating point away from zero.
pub fn qsqrt2_sign_matches_float(a: (i64, i64), b: (i64, i64)) -> Result<(), TestCaseError> {
    let x = QSqrt2::from_ratios(a.0, a.1, b.0, b.1);
    let f = a.0 as f64 / a.1 as f64 + (b.0 as f64 / b.1 as f64) * std::f64::consts::SQRT_2;
    if f.abs() > 1e-9 {
        prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
    }
    Ok(())
}

/// `g < w < h` on the plus leaf and `ŵ < ĝ` on the minus leaf at every sample.
pub fn envelopes_hold(s_max: f64, tol: f64) -> Result<(), TestCaseError> {
    let fail = |e: hsleaf::Error| TestCaseError::fail(e.to_string());
    let w = integrate(Leaf::Plus, s_max, tol).map_err(fail)?;
    let r = envelope_check(&w, Some(&builtin_g()), Some(&builtin_h()));
    prop_assert!(r.pass, "plus: {:?}", r);
    let wh = integrate(Leaf::Minus, s_max, tol).map_err(fail)?;
    let r = envelope_check(&wh, None, Some(&builtin_g_hat()));
    prop_assert!(r.pass, "minus: {:?}", r);
    Ok(())
}

/// A built-in barrier with one coefficient of one piece nudged.
pub fn nudged_barrier() -> impl Strategy<Value = Barrier> {
    (
        0usize..3,
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        -50i64..=50,
    )
        .prop_map(|(which, pi, ci, n)| {
            let mut b = [builtin_g(), builtin_g_hat(), builtin_h()][which].clone();
            let i = pi.index(b.pieces.len());
            let p = &mut b.pieces[i];
            let mut cs = p.numerator.coeffs().to_vec();
            let k = ci.index(cs.len());
            cs[k] = &cs[k] + &QSqrt2::from_ratios(n, 1000, 0, 1);
            p.numerator = QPoly::new(cs).with_var(p.numerator.var);
            b
        })
}

/// Serializing, parsing and re-verifying a certificate reproduces it, whatever the verdict.
pub fn certificate_roundtrip(b: &Barrier) -> Result<(), TestCaseError> {
    let fail = |e: hsleaf::Error| TestCaseError::fail(e.to_string());
    let f = CertificateFile::emit(b, "property").map_err(fail)?;
    let text = f.to_json();
    let back = CertificateFile::from_json(&text).map_err(fail)?;
    prop_assert_eq!(&back, &f);
    prop_assert_eq!(back.to_json(), text);
    let r = back.reverify().map_err(fail)?;
    prop_assert!(r.evidence_matches);
    prop_assert_eq!(r.pass, f.summary.pass);
    Ok(())
}
