//! Piecewise sub/supersolution certificates.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::branch::{certify_branch_rule, BranchEvidence};
use super::piece::{compute_f, f_tilde_of, Barrier, BarrierKind, BarrierPiece, FParts, FTilde};
use crate::error::{Error, Result};
use crate::exactnum::rational::serde_rational;
use crate::exactnum::{
    certify_sign_on_interval, int, sign_number_expr, Endpoint, Interval, NumberExpr, QSqrt2,
    Rational, SignEvidence, DEFAULT_PRECISION_CAP,
};
use crate::leaf::Leaf;
use crate::odes::linearized_slope;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceEvidence {
    /// Interval in τ on which the sign of `F` was certified.
    pub interval: Interval,
    pub f: FParts,
    pub f_tilde: FTilde,
    /// Power of τ removed from `Q₁, Q₂` before branch resolution.
    pub stripped: usize,
    #[serde(with = "serde_rational")]
    pub f_margin: Rational,
    pub branch: BranchEvidence,
    pub f_tilde_evidence: Option<SignEvidence>,
}

fn is_zero_endpoint(e: &Endpoint) -> bool {
    matches!(e, Endpoint::Rational(r) if r.is_zero())
}

/// Certify `kind.sign()·F > f_margin` on the piece (open at s = 0) and any `F̃` claim.
pub fn certify_piece(piece: &BarrierPiece, leaf: Leaf, kind: BarrierKind) -> Result<PieceEvidence> {
    let e = kind.sign();
    let f = compute_f(piece, leaf);
    let f_tilde = f_tilde_of(&f.q1, &f.q2, &f.radicand);
    let interval = piece.tau_interval(is_zero_endpoint(&piece.lo));
    let q1 = if piece.f_margin.is_zero() {
        f.q1.clone()
    } else {
        let shift = QSqrt2::from_rational(&piece.f_margin * Rational::from_integer(e.into()));
        &f.q1 - &f.denominator.scale(&shift)
    };
    let shifted = FParts { q1, ..f.clone() };
    let (stripped, q1, q2) = if interval.lo_open {
        shifted.stripped()
    } else {
        (0, shifted.q1, shifted.q2)
    };
    let branch = certify_branch_rule(&q1, &q2, &f.radicand, &interval, e)?;
    let f_tilde_evidence = match &piece.ftilde_claim {
        None => None,
        Some(c) => Some(
            certify_sign_on_interval(
                &f_tilde.cofactor,
                &piece.tau_interval(false),
                c.sign,
                &c.margin,
            )
            .map_err(|err| match err {
                Error::CertificationFailed(m) => {
                    Error::CertificationFailed(format!("F̃ claim: {m}"))
                }
                other => other,
            })?,
        ),
    };
    Ok(PieceEvidence {
        interval,
        f,
        f_tilde,
        stripped,
        f_margin: piece.f_margin.clone(),
        branch,
        f_tilde_evidence,
    })
}

/// One-sided limit `num/den` of a piece at a breakpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Limit {
    pub num: NumberExpr,
    pub den: NumberExpr,
}

impl Limit {
    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }

    /// `sign(self − other)`; both denominators are positive.
    pub fn cmp_sign(&self, other: &Limit) -> Result<i8> {
        let d = self.num.mul(&other.den).minus(&other.num.mul(&self.den));
        sign_number_expr(&d, DEFAULT_PRECISION_CAP)
    }

    /// `sign(self − c)`.
    pub fn cmp_const(&self, c: &QSqrt2) -> Result<i8> {
        let d = self.num.clone().minus(&self.den.scaled(c));
        sign_number_expr(&d, DEFAULT_PRECISION_CAP)
    }

    /// Exact value when the piece is rational at this point.
    pub fn as_qsqrt2(&self) -> Option<QSqrt2> {
        let v = |x: &NumberExpr| -> Option<QSqrt2> {
            let mut acc = QSqrt2::zero();
            for t in &x.terms {
                if t.index != 1 && !t.base.is_zero() && !t.base.is_one() {
                    return None;
                }
                if !t.base.is_zero() {
                    acc += &(&t.coef * &QSqrt2::from_rational(t.base.clone()));
                }
            }
            Some(acc)
        };
        let (n, d) = (v(&self.num)?, v(&self.den)?);
        Some(&n * &d.inv()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpRecord {
    pub at: Endpoint,
    pub left: Limit,
    pub right: Limit,
    /// "decreasing" for subsolutions, "increasing" for supersolutions.
    pub required: String,
    pub separator: Option<QSqrt2>,
    pub pass: bool,
}

impl JumpRecord {
    /// `left − right` as a float, for display only.
    pub fn jump_f64(&self) -> f64 {
        self.left.to_f64() - self.right.to_f64()
    }
}

fn check_jump(barrier: &Barrier, i: usize) -> Result<JumpRecord> {
    let (l, r) = (&barrier.pieces[i], &barrier.pieces[i + 1]);
    let at = r.lo.clone();
    let (ln, ld) = l.value_at(&at)?;
    let (rn, rd) = r.value_at(&at)?;
    let left = Limit { num: ln, den: ld };
    let right = Limit { num: rn, den: rd };
    let e = barrier.kind.sign();
    // sub: left ≥ right, super: left ≤ right
    let diff = left.cmp_sign(&right)?;
    let mut pass = diff * e <= 0;
    let separator = barrier.separators.get(i).cloned().flatten();
    if let Some(c) = &separator {
        pass &= left.cmp_const(c)? * e <= 0 && right.cmp_const(c)? * e > 0;
    }
    Ok(JumpRecord {
        at,
        left,
        right,
        required: if e < 0 { "decreasing" } else { "increasing" }.into(),
        separator,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NearZeroMode {
    Slope,
    LeadingSign,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NearZeroRecord {
    pub mode: NearZeroMode,
    /// Exponent of s of the leading term of the candidate at 0.
    #[serde(with = "serde_rational")]
    pub leading_exponent: Rational,
    /// The slope at 0 (slope mode) or the leading coefficient.
    pub value: QSqrt2,
    /// The solution's slope at 0 in slope mode.
    pub reference: Option<QSqrt2>,
    pub pass: bool,
}

fn near_zero(piece: &BarrierPiece, leaf: Leaf, kind: BarrierKind) -> Result<NearZeroRecord> {
    let c1 = linearized_slope(leaf);
    let e = kind.sign();
    let p0 = piece.denominator.coeff(0);
    let p0_inv = p0
        .inv()
        .ok_or_else(|| Error::Invalid("candidate denominator vanishes at 0".into()))?;
    let m = piece.ramification as i64;
    let Some(v) = piece.numerator.valuation() else {
        // g ≡ 0 near 0: slope 0
        let pass = QSqrt2::zero().cmp(&c1) as i8 * e > 0;
        return Ok(NearZeroRecord {
            mode: NearZeroMode::Slope,
            leading_exponent: int(1),
            value: QSqrt2::zero(),
            reference: Some(c1),
            pass,
        });
    };
    let expo = Rational::new((v as i64).into(), m.into());
    let lead = &piece.numerator.coeff(v) * &p0_inv;
    if expo >= Rational::one() {
        let slope = if expo == Rational::one() {
            lead
        } else {
            QSqrt2::zero()
        };
        // sub: slope < c₁, super: slope > c₁
        let pass = (slope.cmp(&c1) as i8) * e > 0;
        Ok(NearZeroRecord {
            mode: NearZeroMode::Slope,
            leading_exponent: expo,
            value: slope,
            reference: Some(c1),
            pass,
        })
    } else {
        let pass = v > 0 && lead.sign() * e > 0;
        Ok(NearZeroRecord {
            mode: NearZeroMode::LeadingSign,
            leading_exponent: expo,
            value: lead,
            reference: None,
            pass,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub index: usize,
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub pass: bool,
    pub evidence: Option<PieceEvidence>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierCertificate {
    pub leaf: Leaf,
    pub kind: BarrierKind,
    pub pieces: Vec<PieceRecord>,
    pub jumps: Vec<JumpRecord>,
    pub near_zero: NearZeroRecord,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Certify every piece, breakpoint and the behaviour at 0. Certification failures are
/// recorded in the certificate; a precision cap aborts with an error.
pub fn certify_barrier(barrier: &Barrier) -> Result<BarrierCertificate> {
    barrier.validate()?;
    let mut failures = Vec::new();
    let mut pieces = Vec::new();
    for (i, p) in barrier.pieces.iter().enumerate() {
        let rec = match certify_piece(p, barrier.leaf, barrier.kind) {
            Ok(ev) => PieceRecord {
                index: i,
                lo: p.lo.clone(),
                hi: p.hi.clone(),
                pass: true,
                evidence: Some(ev),
                failure: None,
            },
            Err(Error::CertificationFailed(m)) => {
                let msg = format!("piece {i} [{}, {}): {m}", p.lo, p.hi);
                failures.push(msg.clone());
                PieceRecord {
                    index: i,
                    lo: p.lo.clone(),
                    hi: p.hi.clone(),
                    pass: false,
                    evidence: None,
                    failure: Some(msg),
                }
            }
            Err(e) => return Err(e),
        };
        pieces.push(rec);
    }
    let mut jumps = Vec::new();
    for i in 0..barrier.pieces.len() - 1 {
        let j = check_jump(barrier, i)?;
        if !j.pass {
            failures.push(format!("jump check failed at s = {}", j.at));
        }
        jumps.push(j);
    }
    let nz = near_zero(&barrier.pieces[0], barrier.leaf, barrier.kind)?;
    if !nz.pass {
        failures.push("ordering check at s = 0 failed".into());
    }
    Ok(BarrierCertificate {
        leaf: barrier.leaf,
        kind: barrier.kind,
        pieces,
        jumps,
        near_zero: nz,
        pass: failures.is_empty(),
        failures,
    })
}

impl BarrierCertificate {
    /// Re-derive the certificate from the barrier and compare the stored records.
    pub fn reverify(&self, barrier: &Barrier) -> Result<bool> {
        let again = certify_barrier(barrier)?;
        Ok(again == *self)
    }

    pub fn jump(&self, at: &Endpoint) -> Option<&JumpRecord> {
        self.jumps.iter().find(|j| &j.at == at)
    }
}

/// Minimum of `kind.sign()·F` over `n` samples per piece (advisory).
pub fn sampled_margin(barrier: &Barrier, n: usize) -> f64 {
    let e = barrier.kind.sign() as f64;
    let mut best = f64::INFINITY;
    for p in &barrier.pieces {
        let f = compute_f(p, barrier.leaf);
        let lo = p.lo.to_f64().max(1e-6);
        let hi = if p.hi.is_finite() {
            p.hi.to_f64()
        } else {
            lo.max(1.0) * 1e6
        };
        for k in 0..n {
            let s = lo * (hi / lo).powf(k as f64 / n as f64);
            let tau = s.powf(1.0 / p.ramification as f64);
            best = best.min(e * f.eval_f64(tau));
        }
    }
    best
}
