//! Certified sign of a polynomial on an interval, with a margin.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numexpr::DEFAULT_PRECISION_CAP;
use super::poly::QPoly;
use super::qsqrt2::QSqrt2;
use super::rational::{serde_rational, Rational};
use super::sturm::{rational_between, sign_at, Endpoint, Interval, SturmChain};
use crate::error::{Error, Result};

/// Re-checkable record that `expected · p > margin` on `interval`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignEvidence {
    pub interval: Interval,
    pub expected: i8,
    #[serde(with = "serde_rational")]
    pub margin: Rational,
    /// `p − expected · margin`, which has no root on the interval.
    pub shifted: QPoly,
    pub sturm_chain: Vec<QPoly>,
    pub root_count: usize,
    pub sample: Endpoint,
    pub sample_sign: i8,
}

/// Certify `expected · p(x) > margin` for every `x` in `interval`.
///
/// The shifted polynomial `p − expected·margin` must have no root in `(lo, hi]`
/// and the right sign at `lo` (or at an interior point when `lo` is open).
pub fn certify_sign_on_interval(
    p: &QPoly,
    interval: &Interval,
    expected: i8,
    margin: &Rational,
) -> Result<SignEvidence> {
    if expected != 1 && expected != -1 {
        return Err(Error::Invalid("expected sign must be ±1".into()));
    }
    if margin.is_negative() {
        return Err(Error::Invalid("margin must be non-negative".into()));
    }
    let shift = QSqrt2::from_rational(margin * Rational::from_integer(expected.into()));
    let shifted = p - &QPoly::constant(shift);
    let fail = |why: String| Error::CertificationFailed(format!("{why} on {interval}"));
    if shifted.is_zero() {
        return Err(fail("polynomial equals the margin".into()));
    }
    let chain = SturmChain::new(&shifted)?;
    let root_count = chain.count(&interval.lo, &interval.hi)?;
    let sample = if interval.lo_open || !interval.lo.is_finite() {
        Endpoint::Rational(rational_between(&interval.lo, &interval.hi)?)
    } else {
        interval.lo.clone()
    };
    let sample_sign = sign_at(&shifted, &sample, DEFAULT_PRECISION_CAP)?;
    if root_count > 0 {
        return Err(fail(format!(
            "{root_count} crossing(s) of the margin level"
        )));
    }
    if sample_sign != expected {
        return Err(fail(format!(
            "sign {sample_sign} at {sample}, expected {expected}"
        )));
    }
    Ok(SignEvidence {
        interval: interval.clone(),
        expected,
        margin: margin.clone(),
        shifted,
        sturm_chain: chain.polys(),
        root_count,
        sample,
        sample_sign,
    })
}

impl SignEvidence {
    /// Re-derive the verdict from the stored polynomial alone.
    pub fn recheck(&self, p: &QPoly) -> Result<()> {
        let again = certify_sign_on_interval(p, &self.interval, self.expected, &self.margin)?;
        if again.shifted != self.shifted {
            return Err(Error::CertificationFailed(
                "stored shifted polynomial differs".into(),
            ));
        }
        Ok(())
    }
}

/// Convenience: `p > 0` (or `< 0`) strictly on the interval, margin zero.
pub fn certify_strict(p: &QPoly, interval: &Interval, expected: i8) -> Result<SignEvidence> {
    certify_sign_on_interval(p, interval, expected, &Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn positive_polynomial_fails_negative_claim() {
        let p = QPoly::from_ints(&[1, 0, 1]);
        let iv = Interval::closed(Endpoint::Rational(int(0)), Endpoint::Rational(int(1)));
        assert!(matches!(
            certify_sign_on_interval(&p, &iv, -1, &int(0)),
            Err(Error::CertificationFailed(_))
        ));
        assert!(certify_sign_on_interval(&p, &iv, 1, &rat(99, 100)).is_ok());
        assert!(certify_sign_on_interval(&p, &iv, 1, &int(1)).is_err());
    }

    #[test]
    fn open_left_end() {
        // s vanishes at 0 but is positive on (0, ∞)
        let p = QPoly::from_ints(&[0, 1]);
        let open = Interval::open_lo(Endpoint::Rational(int(0)), Endpoint::PosInf);
        assert!(certify_strict(&p, &open, 1).is_ok());
        let closed = Interval::closed(Endpoint::Rational(int(0)), Endpoint::PosInf);
        assert!(certify_strict(&p, &closed, 1).is_err());
    }

    #[test]
    fn algebraic_interval() {
        // τ³ − 37 < 0 on [0, 37^(1/3)) but vanishes at the end
        let p = QPoly::from_ints(&[-37, 0, 0, 1]);
        let iv = Interval::closed(Endpoint::Rational(int(0)), Endpoint::root(int(37), 3));
        assert!(certify_strict(&p, &iv, -1).is_err());
        let iv = Interval::closed(Endpoint::Rational(int(0)), Endpoint::root(int(36), 3));
        let ev = certify_strict(&p, &iv, -1).unwrap();
        assert!(ev.recheck(&p).is_ok());
    }
}
