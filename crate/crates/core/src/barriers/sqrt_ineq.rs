//! Inequalities `A(s) + B(s)·√R(s) > 0` (or `≥ 0`) with rational functions `A, B`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::branch::{certify_branch_rule, BranchEvidence};
use crate::error::{Error, Result};
use crate::exactnum::{
    certify_strict, int, rational_between, sign_at, sign_number_expr, Endpoint, Interval,
    NumberExpr, QPoly, QSqrt2, RatFunc, Rational, SignEvidence, DEFAULT_PRECISION_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `> 0`
    Gt,
    /// `≥ 0`
    Ge,
}

#[derive(Clone, Debug)]
pub struct SqrtForm {
    pub a: RatFunc,
    pub b: RatFunc,
    pub radicand: QPoly,
}

impl SqrtForm {
    pub fn new(a: RatFunc, b: RatFunc, radicand: QPoly) -> Self {
        SqrtForm { a, b, radicand }
    }

    /// A pure rational-function inequality.
    pub fn rational(a: RatFunc) -> Self {
        SqrtForm {
            a,
            b: RatFunc::constant(QSqrt2::zero()),
            radicand: QPoly::one(),
        }
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        let ev = |f: &RatFunc| f.num.eval_f64(s) / f.den.eval_f64(s);
        ev(&self.a) + ev(&self.b) * self.radicand.eval_f64(s).sqrt()
    }

    /// `(P₁, P₂)` with `P₁ + P₂√R = (A + B√R)·(dₐ d_b)²`.
    pub fn cleared(&self) -> (QPoly, QPoly) {
        let (da, db) = (&self.a.den, &self.b.den);
        let p1 = &(&self.a.num * da) * &(db * db);
        let p2 = &(&self.b.num * db) * &(da * da);
        (p1, p2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqrtEvidence {
    pub interval: Interval,
    pub relation: Relation,
    pub p1: QPoly,
    pub p2: QPoly,
    pub radicand: QPoly,
    pub radicand_positive: SignEvidence,
    pub denominators: Vec<SignEvidence>,
    pub branch: BranchEvidence,
    /// Exact sign at the closed left end for `≥` claims.
    pub sign_at_lo: Option<i8>,
}

fn nonvanishing(p: &QPoly, iv: &Interval) -> Result<SignEvidence> {
    let x = Endpoint::Rational(rational_between(&iv.lo, &iv.hi)?);
    let sg = sign_at(p, &x, DEFAULT_PRECISION_CAP)?;
    if sg == 0 {
        return Err(Error::CertificationFailed(format!(
            "denominator vanishes inside {iv}"
        )));
    }
    certify_strict(p, iv, sg)
}

/// Certify the inequality on `iv`. `≥` claims are certified strictly on the interior
/// plus an exact sign check at a closed finite left end.
pub fn certify_sqrt_inequality(
    form: &SqrtForm,
    rel: Relation,
    iv: &Interval,
) -> Result<SqrtEvidence> {
    let check_lo = rel == Relation::Ge && !iv.lo_open && iv.lo.is_finite();
    let work = Interval {
        lo_open: iv.lo_open || check_lo,
        ..iv.clone()
    };
    let radicand_positive = certify_strict(&form.radicand, iv, 1)?;
    let mut denominators = vec![nonvanishing(&form.a.den, &work)?];
    if !form.b.num.is_zero() {
        denominators.push(nonvanishing(&form.b.den, &work)?);
    }
    let (p1, p2) = form.cleared();
    let branch = certify_branch_rule(&p1, &-&p2, &form.radicand, &work, 1)?;
    let sign_at_lo = if check_lo {
        let x = match &iv.lo {
            Endpoint::Rational(r) => r.clone(),
            other => return Err(Error::Invalid(format!("left end {other} must be rational"))),
        };
        let r = form.radicand.eval_rational(&x);
        if !r.is_rational() {
            return Err(Error::Invalid(
                "radicand must be rational at the left end".into(),
            ));
        }
        let v = NumberExpr::constant(p1.eval_rational(&x)).plus(&NumberExpr::term(
            p2.eval_rational(&x),
            r.a,
            2,
        ));
        let sg = sign_number_expr(&v, DEFAULT_PRECISION_CAP)?;
        if sg < 0 {
            return Err(Error::CertificationFailed(format!("negative at {}", iv.lo)));
        }
        Some(sg)
    } else {
        None
    };
    Ok(SqrtEvidence {
        interval: iv.clone(),
        relation: rel,
        p1,
        p2,
        radicand: form.radicand.clone(),
        radicand_positive,
        denominators,
        branch,
        sign_at_lo,
    })
}

/// Find a threshold `S₀` with the inequality certified on `[S₀, ∞)`, trying
/// `1, 2, …, 64` and then powers of two up to `2⁴⁰`.
pub fn certify_for_large_s(form: &SqrtForm, rel: Relation) -> Result<(Rational, SqrtEvidence)> {
    let candidates = (1..=64i64).chain((7..=40).map(|k| 1i64 << k));
    let mut last = None;
    for c in candidates {
        let iv = Interval::closed(Endpoint::Rational(int(c)), Endpoint::PosInf);
        match certify_sqrt_inequality(form, rel, &iv) {
            Ok(ev) => return Ok((int(c), ev)),
            Err(Error::CertificationFailed(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    Err(Error::CertificationFailed(format!(
        "no threshold up to 2^40: {}",
        last.unwrap_or_default()
    )))
}

/// Lower bound `√(9s²+6s+9) − 3s − 9 − (−8 + (4/3)s⁻¹) > 0`.
pub fn sqrt_lower_form() -> SqrtForm {
    let a = RatFunc::new(
        QPoly::from_rationals(&[rat(-4, 3), int(-1), int(-3)]),
        QPoly::from_ints(&[0, 1]),
    );
    SqrtForm::new(a, RatFunc::poly(QPoly::one()), QPoly::from_ints(&[9, 6, 9]))
}

/// `−[√(9s²+6s+9) − 3s − 9 − (−8 + (4/3)s⁻¹)] > 0`, the negation of [`sqrt_lower_form`]:
/// the difference behaves like `−4/(9s²)`.
pub fn sqrt_diff_negative_form() -> SqrtForm {
    let f = sqrt_lower_form();
    SqrtForm::new(-&f.a, -&f.b, f.radicand)
}

/// `[√(9s²+6s+9) − 3s − 9 − (−8 + (4/3)s⁻¹)] + (1/2)s⁻² > 0`.
pub fn sqrt_two_sided_lower_form() -> SqrtForm {
    let a = RatFunc::new(
        QPoly::from_rationals(&[rat(1, 2), rat(-4, 3), int(-1), int(-3)]),
        QPoly::from_ints(&[0, 0, 1]),
    );
    SqrtForm::new(a, RatFunc::poly(QPoly::one()), QPoly::from_ints(&[9, 6, 9]))
}

/// Upper bound `(1/2)s⁻² − [√(9s²+6s+9) − 3s − 9 − (−8 + (4/3)s⁻¹)] > 0`.
pub fn sqrt_upper_form() -> SqrtForm {
    let a = RatFunc::new(
        QPoly::from_rationals(&[rat(1, 2), rat(4, 3), int(1), int(3)]),
        QPoly::from_ints(&[0, 0, 1]),
    );
    SqrtForm::new(
        a,
        RatFunc::poly(QPoly::from_ints(&[-1])),
        QPoly::from_ints(&[9, 6, 9]),
    )
}

/// Taylor bound `(1/(3s²))(1 − 2/(3s)) − 1/(3s²+2s+3) ≥ 0`.
pub fn taylor_bound_form() -> SqrtForm {
    let rhs = RatFunc::new(QPoly::from_ints(&[-2, 3]), QPoly::from_ints(&[0, 0, 0, 9]));
    let lhs = RatFunc::new(QPoly::one(), QPoly::from_ints(&[3, 2, 3]));
    SqrtForm::rational(&rhs - &lhs)
}

/// `2/5 − 2s/(2+5s) ≥ 0`.
pub fn sup_bound_form() -> SqrtForm {
    let f = RatFunc::new(QPoly::from_ints(&[0, 2]), QPoly::from_ints(&[2, 5]));
    SqrtForm::rational(&RatFunc::constant(QSqrt2::from_ratios(2, 5, 0, 1)) - &f)
}

/// `2s/(2+5s) → 2/5` as `s → ∞`: the difference is `4/(5(2+5s))`, with numerator degree
/// below the denominator's, so the supremum equals 2/5.
pub fn sup_is_limit() -> bool {
    let f = sup_bound_form();
    let (n, d) = (&f.a.num, &f.a.den);
    n.degree().unwrap_or(0) < d.degree().unwrap_or(0) && !n.is_zero()
}

fn rat(n: i64, d: i64) -> Rational {
    crate::exactnum::rat(n, d)
}
