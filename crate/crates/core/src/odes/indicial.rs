//! Indicial degrees of homogeneous Jacobi fields on the cone over S^p × S^q.
//!
//! With n = p + q + 2, a field r^γ·φ(ω) with φ a product of sphere harmonics of
//! degrees (j, k) has link eigenvalue
//! μ = j(j+p−1)(n−2)/p + k(k+q−1)(n−2)/q and
//! γ± = [−(n−3) ± √((n−3)² − 4(n−2) + 4μ)]/2.
//! The normalisation is pinned by the (0,0) mode giving {−2, −3} for (p,q) = (4,2).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exactnum::rational::{exact_root, to_f64};
use crate::exactnum::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndicialQuery {
    pub p: u32,
    pub q: u32,
    pub j: u32,
    pub k: u32,
}

/// `(base + sign·√disc)/2`, exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Degree {
    #[serde(serialize_with = "ser_rat")]
    pub base: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub disc: Rational,
    pub sign: i8,
    pub value: f64,
}

fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactnum::rational::format_rational(x))
}

impl Degree {
    fn new(base: Rational, disc: Rational, sign: i8) -> Self {
        let value = (to_f64(&base) + sign as f64 * to_f64(&disc).sqrt()) / 2.0;
        Degree {
            base,
            disc,
            sign,
            value,
        }
    }

    /// The exact value when the discriminant is a rational square.
    pub fn exact(&self) -> Option<Rational> {
        exact_root(&self.disc, 2).map(|r| (&self.base + r * int(self.sign as i64)) / int(2))
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, l: &Rational) -> Ordering {
        // sign·√disc vs 2l − base
        let t = int(2) * l - &self.base;
        let sq = |x: &Rational| x * x;
        if self.sign > 0 {
            if t.is_negative() {
                Ordering::Greater
            } else {
                self.disc.cmp(&sq(&t))
            }
        } else if t.is_positive() || (t.is_zero() && !self.disc.is_zero()) {
            Ordering::Less
        } else if t.is_zero() {
            Ordering::Equal
        } else {
            // −√disc vs t < 0  ⇔  disc vs t², reversed
            sq(&t).cmp(&self.disc)
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{r}"),
            None => {
                let s = if self.sign > 0 { "+" } else { "-" };
                write!(f, "({} {s} √{})/2", self.base, self.disc)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicialResult {
    pub query: IndicialQuery,
    #[serde(serialize_with = "ser_rat")]
    pub mu: Rational,
    pub gamma_plus: Degree,
    pub gamma_minus: Degree,
}

pub fn mu(p: u32, q: u32, j: u32, k: u32) -> Rational {
    let n = (p + q + 2) as i64;
    let (p, q, j, k) = (p as i64, q as i64, j as i64, k as i64);
    rat(j * (j + p - 1) * (n - 2), p) + rat(k * (k + q - 1) * (n - 2), q)
}

fn degrees_for_mu(n: i64, mu: &Rational) -> (Degree, Degree) {
    let disc = int((n - 3) * (n - 3) - 4 * (n - 2)) + int(4) * mu;
    let base = int(-(n - 3));
    (
        Degree::new(base.clone(), disc.clone(), 1),
        Degree::new(base, disc, -1),
    )
}

pub fn indicial_degrees(q: IndicialQuery) -> IndicialResult {
    assert!(q.p >= 1 && q.q >= 1);
    let m = mu(q.p, q.q, q.j, q.k);
    let (gp, gm) = degrees_for_mu((q.p + q.q + 2) as i64, &m);
    IndicialResult {
        query: q,
        mu: m,
        gamma_plus: gp,
        gamma_minus: gm,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FoundDegree {
    pub j: u32,
    pub k: u32,
    pub degree: Degree,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub pass: bool,
    /// Degrees of enumerated modes lying strictly inside (lo, hi).
    pub found: Vec<FoundDegree>,
    /// Whether monotonicity in μ excludes every mode beyond the bound.
    pub tail_excluded: bool,
}

impl GapReport {
    /// Distinct exact values among the found degrees.
    pub fn distinct_values(&self) -> Vec<String> {
        let mut v: Vec<String> = self.found.iter().map(|f| f.degree.to_string()).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn strictly_inside(d: &Degree, lo: &Rational, hi: &Rational) -> bool {
    d.cmp_rational(lo) == Ordering::Greater && d.cmp_rational(hi) == Ordering::Less
}

/// No degree of any mode lies in `(lo, hi)`: exact enumeration of modes with
/// `j, k ≤ mode_bound`, then γ⁺ increasing and γ⁻ decreasing in μ for the rest.
pub fn indicial_gap_check(
    p: u32,
    q: u32,
    lo: &Rational,
    hi: &Rational,
    mode_bound: u32,
) -> GapReport {
    assert!(lo < hi && mode_bound >= 2);
    let n = (p + q + 2) as i64;
    let mut found = Vec::new();
    for j in 0..=mode_bound {
        for k in 0..=mode_bound {
            let r = indicial_degrees(IndicialQuery { p, q, j, k });
            for d in [r.gamma_plus, r.gamma_minus] {
                if strictly_inside(&d, lo, hi) {
                    found.push(FoundDegree { j, k, degree: d });
                }
            }
        }
    }
    let mu_star = std::cmp::min(mu(p, q, mode_bound + 1, 0), mu(p, q, 0, mode_bound + 1));
    let (gp, gm) = degrees_for_mu(n, &mu_star);
    let tail_excluded =
        gp.cmp_rational(hi) != Ordering::Less && gm.cmp_rational(lo) != Ordering::Greater;
    GapReport {
        pass: found.is_empty() && tail_excluded,
        found,
        tail_excluded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(j: u32, k: u32) -> (Rational, Rational, Rational) {
        let r = indicial_degrees(IndicialQuery { p: 4, q: 2, j, k });
        (
            r.mu,
            r.gamma_plus.exact().unwrap(),
            r.gamma_minus.exact().unwrap(),
        )
    }

    #[test]
    fn listed_modes() {
        assert_eq!(deg(0, 0), (int(0), int(-2), int(-3)));
        assert_eq!(deg(1, 0), (int(6), int(0), int(-5)));
        assert_eq!(deg(0, 1), (int(6), int(0), int(-5)));
        assert_eq!(deg(1, 1), (int(12), int(1), int(-6)));
    }

    #[test]
    fn gap_between_minus_three_and_minus_two() {
        let r = indicial_gap_check(4, 2, &int(-3), &int(-2), 10);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn degrees_up_to_one() {
        let eps = rat(1, 1_000_000_000);
        let r = indicial_gap_check(4, 2, &(int(-2) - &eps), &(int(1) + &eps), 10);
        assert!(!r.pass);
        assert_eq!(r.distinct_values(), vec!["-2", "0", "1"]);
    }

    #[test]
    fn five_to_six_window_is_hit() {
        let r = indicial_gap_check(4, 2, &int(5), &int(6), 10);
        assert!(!r.pass);
        assert!(r.found.iter().any(|f| f.j == 0 && f.k == 4));
    }

    #[test]
    fn irrational_comparisons() {
        let r = indicial_degrees(IndicialQuery {
            p: 4,
            q: 2,
            j: 0,
            k: 4,
        });
        assert_eq!(r.mu, int(60));
        assert!(r.gamma_plus.exact().is_none());
        assert_eq!(r.gamma_plus.cmp_rational(&int(5)), Ordering::Greater);
        assert_eq!(r.gamma_plus.cmp_rational(&int(6)), Ordering::Less);
        assert_eq!(r.gamma_minus.cmp_rational(&int(-10)), Ordering::Less);
        assert_eq!(r.gamma_minus.cmp_rational(&int(-11)), Ordering::Greater);
    }

    #[test]
    fn monotone_in_mu() {
        let mut last = (f64::NEG_INFINITY, f64::INFINITY);
        for m in 0..200 {
            let (gp, gm) = degrees_for_mu(8, &int(m));
            assert!(gp.value > last.0 && gm.value < last.1);
            assert!(gp.value >= -2.0 && gm.value <= -3.0);
            last = (gp.value, gm.value);
        }
    }
}
