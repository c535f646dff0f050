//! The expansion chain from the graph function f(r) to w(s), in ρ = 1/r.

use num_traits::Zero;
use serde::Serialize;

use super::param::ParamCoeff;
use super::puiseux::{PuiseuxSeries, SeriesVar};
use crate::error::{Error, Result};
use crate::exactnum::{rat, QSqrt2, Rational};
use crate::leaf::Leaf;

/// Order of the known input `f = ±(ρ³ + bρ⁴) + O(ρ⁶)`.
pub const INPUT_ORDER: i64 = 6;

#[derive(Clone, Debug)]
pub struct ProfileReport {
    pub leaf: Leaf,
    /// The leaf's s-variable (s, or ŝ for the minus leaf) as a series in ρ.
    pub s_of_r: PuiseuxSeries,
    /// φ − log r.
    pub phi_of_r: PuiseuxSeries,
    /// w − (√2/2)s, or ŵ + (√2/2)ŝ.
    pub w_minus_linear: PuiseuxSeries,
    /// w itself.
    pub w: PuiseuxSeries,
    /// `w_minus_linear` minus the claimed s^(2/3) and s^(1/3) terms.
    pub residual: PuiseuxSeries,
}

fn q(c: QSqrt2) -> ParamCoeff {
    ParamCoeff::constant(c)
}

fn qi(n: i64, d: i64) -> ParamCoeff {
    q(QSqrt2::from_ratios(n, d, 0, 1))
}

fn rho(terms: Vec<(i64, ParamCoeff)>, order: Option<i64>) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(SeriesVar::Rho, 1, terms, order)
}

fn konst(c: ParamCoeff) -> PuiseuxSeries {
    PuiseuxSeries::constant(SeriesVar::Rho, c)
}

/// `d/dr = −ρ² d/dρ`.
fn d_dr(x: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    x.derivative().mul(&rho(vec![(2, qi(-1, 1))], None))
}

/// Expand with the default input order.
pub fn expand_profile_chain(leaf: Leaf) -> Result<ProfileReport> {
    expand_profile_chain_with(leaf, INPUT_ORDER, &Rational::zero())
}

/// Expand with `f = σ(ρ³ + bρ⁴) + O(ρ^input_order)`; `perturb` is added to the
/// coefficient of `((9/2)s²)^(1/3)` in the claimed expansion (as `perturb·b`).
pub fn expand_profile_chain_with(
    leaf: Leaf,
    input_order: i64,
    perturb: &Rational,
) -> Result<ProfileReport> {
    if input_order < 5 {
        return Err(Error::TruncationInsufficient(format!(
            "input order {input_order} < 5"
        )));
    }
    let sg = leaf.sigma();
    let sgq = QSqrt2::from_int(sg);
    let sqrt2 = QSqrt2::sqrt2();
    let one = konst(qi(1, 1));
    let f = rho(
        vec![(3, qi(sg, 1)), (4, ParamCoeff::b().scale(&sgq))],
        Some(input_order),
    );

    // tan²t = (1/2)(1 − √2 f)²/(1 + f/√2)²
    let num = one.sub(&f.scale_q(&sqrt2))?.pow(2)?;
    let den = one
        .add(&f.scale_q(&QSqrt2::from_ratios(0, 1, 1, 2)))?
        .pow(2)?;
    let t2 = num.div(&den)?.scale_q(&QSqrt2::from_ratios(1, 2, 0, 1));
    let t = t2.nth_root(2)?;

    // s = 6T / (2√2(1 − T²) − 2T)
    let denom = one
        .sub(&t2)?
        .scale_q(&QSqrt2::from_ratios(0, 1, 2, 1))
        .sub(&t.scale_q(&QSqrt2::from_int(2)))?;
    let s = t.scale_q(&QSqrt2::from_int(6)).div(&denom)?;
    let big_s = s.scale_q(&sgq);

    // φ = log r + (1/2) log(1 + f²)
    let phi = f.pow(2)?.log1p()?.scale_q(&QSqrt2::from_ratios(1, 2, 0, 1));
    let dphi_dr = rho(vec![(1, qi(1, 1))], None).add(&d_dr(&phi)?)?;
    let ds_dr = d_dr(&big_s)?;

    // w = (dφ/dr)/(dS/dr) · σ(3S² + 2σS + 3)/√2
    let quad = big_s
        .pow(2)?
        .scale_q(&QSqrt2::from_int(3))
        .add(&big_s.scale_q(&QSqrt2::from_int(2 * sg)))?
        .add(&konst(qi(3, 1)))?;
    let w = dphi_dr
        .div(&ds_dr)?
        .mul(&quad)?
        .scale_q(&(&sgq * &QSqrt2::from_ratios(0, 1, 1, 2)));

    let linear = big_s.scale_q(&(&sgq * &QSqrt2::from_ratios(0, 1, 1, 2)));
    let w_minus_linear = w.sub(&linear)?;

    // σ(−(b/9)((9/2)S²)^(1/3) + (5b²/27)((3√2/2)S)^(1/3))
    let cube_a = big_s
        .pow(2)?
        .scale_q(&QSqrt2::from_ratios(9, 2, 0, 1))
        .nth_root(3)?;
    let cube_b = big_s
        .scale_q(&QSqrt2::from_ratios(0, 1, 3, 2))
        .nth_root(3)?;
    let b = ParamCoeff::b();
    let ca = b
        .scale(&QSqrt2::from_rational(rat(-1, 9) + perturb))
        .scale(&sgq);
    let cb = (&b * &b).scale(&QSqrt2::from_ratios(5 * sg, 27, 0, 1));
    let predicted = cube_a.scale(&ca).add(&cube_b.scale(&cb))?;
    let residual = w_minus_linear.sub(&predicted)?;

    Ok(ProfileReport {
        leaf,
        s_of_r: big_s,
        phi_of_r: phi,
        w_minus_linear,
        w,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticVerdict {
    pub leaf: Leaf,
    pub pass: bool,
    /// Largest power of r among the known residual terms, if any.
    pub leading_r_exponent: Option<String>,
    /// Truncation order of the residual, in ρ.
    pub residual_order: String,
    pub residual: Vec<(String, String)>,
}

fn verdict(report: &ProfileReport) -> AsymptoticVerdict {
    let res = &report.residual;
    let order = res.order().unwrap_or_else(|| rat(1_000_000, 1));
    let lead = res.valuation();
    let pass = lead.as_ref().is_none_or(|v| *v >= Rational::zero()) && order >= Rational::zero();
    AsymptoticVerdict {
        leaf: report.leaf,
        pass,
        leading_r_exponent: lead.map(|v| format!("{}", -v)),
        residual_order: format!("{order}"),
        residual: res.table(),
    }
}

/// Passes iff the claimed s^(2/3), s^(1/3) terms account for everything above O(1).
pub fn verify_asymptotic_claim(leaf: Leaf) -> Result<AsymptoticVerdict> {
    Ok(verdict(&expand_profile_chain(leaf)?))
}

/// Same check with the `((9/2)s²)^(1/3)` coefficient shifted by `perturb·b`.
pub fn verify_asymptotic_claim_perturbed(
    leaf: Leaf,
    perturb: &Rational,
) -> Result<AsymptoticVerdict> {
    Ok(verdict(&expand_profile_chain_with(
        leaf,
        INPUT_ORDER,
        perturb,
    )?))
}

/// Checks `s = (√2/3)(r³ − b r² + b² r) + O(1)` on the plus leaf.
pub fn check_s_of_r(report: &ProfileReport) -> bool {
    let c = QSqrt2::from_ratios(0, 1, 1, 3);
    let b = ParamCoeff::b();
    let expect = [
        (rat(-3, 1), ParamCoeff::constant(c.clone())),
        (rat(-2, 1), b.scale(&-&c)),
        (rat(-1, 1), (&b * &b).scale(&c)),
    ];
    let s = &report.s_of_r;
    let order_ok = s.order().is_some_and(|o| o >= Rational::zero());
    let terms_ok = s.terms().iter().all(|(e, _)| *e >= rat(-3, 1));
    order_ok
        && terms_ok
        && expect.iter().all(|(e, v)| s.coeff(e) == *v)
        && s.terms()
            .iter()
            .filter(|(e, _)| *e < Rational::zero())
            .count()
            == 3
}

/// Floating recomputation of w at `r` for `f = σ(ρ³ + bρ⁴)` exactly.
pub fn float_w(leaf: Leaf, b: f64, r: f64) -> f64 {
    let sg = leaf.sigma() as f64;
    let rho = 1.0 / r;
    let f = sg * (rho.powi(3) + b * rho.powi(4));
    let df_dr = sg * (-3.0 * rho.powi(4) - 4.0 * b * rho.powi(5));
    let sqrt2 = std::f64::consts::SQRT_2;
    let s = sqrt2 / (3.0 * f) - 1.0 / 3.0 - sqrt2 * f / 3.0;
    let ds_df = -sqrt2 / (3.0 * f * f) - sqrt2 / 3.0;
    let big_s = sg * s;
    let ds_dr = sg * ds_df * df_dr;
    let dphi_dr = 1.0 / r + f * df_dr / (1.0 + f * f);
    dphi_dr / ds_dr * sg * (3.0 * big_s * big_s + 2.0 * sg * big_s + 3.0) / sqrt2
}

/// Rational parameter values used by [`series_cross_check`].
pub const CROSS_CHECK_B: [(i64, i64); 10] = [
    (-9, 10),
    (-3, 5),
    (-3, 10),
    (-1, 10),
    (0, 1),
    (1, 10),
    (1, 4),
    (1, 2),
    (4, 5),
    (1, 1),
];

/// Largest relative gap between the expanded `w` (input order 15) and a direct float
/// evaluation at r = 10³, over the values in [`CROSS_CHECK_B`].
pub fn series_cross_check(leaf: Leaf) -> Result<f64> {
    let rep = expand_profile_chain_with(leaf, 15, &Rational::zero())?;
    Ok(CROSS_CHECK_B
        .iter()
        .map(|&(n, d)| {
            let b = n as f64 / d as f64;
            let fl = float_w(leaf, b, 1e3);
            ((rep.w.eval_f64(b, 1e-3) - fl) / fl).abs()
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_leaf_claim_holds() {
        let v = verify_asymptotic_claim(Leaf::Plus).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn minus_leaf_claim_holds() {
        let v = verify_asymptotic_claim(Leaf::Minus).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn perturbed_claim_fails_at_r_squared() {
        let v = verify_asymptotic_claim_perturbed(Leaf::Plus, &rat(1, 100)).unwrap();
        assert!(!v.pass);
        assert_eq!(v.leading_r_exponent.as_deref(), Some("2"));
    }

    #[test]
    fn s_of_r_plus() {
        let rep = expand_profile_chain(Leaf::Plus).unwrap();
        assert!(check_s_of_r(&rep), "{}", rep.s_of_r);
    }

    #[test]
    fn phi_minus_log_r() {
        let rep = expand_profile_chain(Leaf::Plus).unwrap();
        assert_eq!(rep.phi_of_r.valuation(), Some(rat(6, 1)));
        assert_eq!(
            rep.phi_of_r.coeff(&rat(6, 1)),
            ParamCoeff::constant(QSqrt2::from_ratios(1, 2, 0, 1))
        );
    }

    #[test]
    fn numeric_cross_check() {
        for leaf in [Leaf::Plus, Leaf::Minus] {
            let err = series_cross_check(leaf).unwrap();
            assert!(err < 1e-9, "{leaf}: {err:e}");
        }
    }

    #[test]
    fn low_input_order_refused() {
        assert!(matches!(
            expand_profile_chain_with(Leaf::Plus, 4, &Rational::zero()),
            Err(Error::TruncationInsufficient(_))
        ));
    }
}
