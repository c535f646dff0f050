//! Sign of `Q₁ − Q₂√R` on an interval from the sign of `F̃ = Q₁² − Q₂²R`.
//!
//! Where `F̃ > 0` the square root term is dominated, so the sign is that of `Q₁`;
//! where `F̃ < 0` it is that of `−Q₂`. Around roots of `F̃` both must agree.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    certify_strict, rational_between, sign_at, Endpoint, Interval, QPoly, SignEvidence, SturmChain,
    DEFAULT_PRECISION_CAP,
};

/// Bits used when isolating the roots of `F̃`.
const ISOLATION_BITS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `F̃ > 0`: certified via `Q₁`.
    Q1,
    /// `F̃ < 0`: certified via `−Q₂`.
    NegQ2,
    /// Near a root of `F̃`, or `F̃ ≡ 0`: both terms carry the sign.
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchSegment {
    pub interval: Interval,
    pub branch: Branch,
    pub evidence: Vec<SignEvidence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchEvidence {
    pub expected: i8,
    pub segments: Vec<BranchSegment>,
}

fn fail(what: &str, iv: &Interval, e: Error) -> Error {
    match e {
        Error::CertificationFailed(m) => Error::CertificationFailed(format!("{what} on {iv}: {m}")),
        other => other,
    }
}

fn certify_branch(
    q1: &QPoly,
    q2: &QPoly,
    iv: &Interval,
    expected: i8,
    branch: Branch,
) -> Result<BranchSegment> {
    let mut evidence = Vec::new();
    if matches!(branch, Branch::Q1 | Branch::Both) {
        evidence.push(certify_strict(q1, iv, expected).map_err(|e| fail("Q1 branch", iv, e))?);
    }
    if matches!(branch, Branch::NegQ2 | Branch::Both) {
        evidence.push(certify_strict(q2, iv, -expected).map_err(|e| fail("Q2 branch", iv, e))?);
    }
    Ok(BranchSegment {
        interval: iv.clone(),
        branch,
        evidence,
    })
}

fn max_end(a: Endpoint, b: &Endpoint) -> Result<Endpoint> {
    Ok(if a.cmp_endpoint(b)? == Ordering::Less {
        b.clone()
    } else {
        a
    })
}

fn min_end(a: Endpoint, b: &Endpoint) -> Result<Endpoint> {
    Ok(if a.cmp_endpoint(b)? == Ordering::Greater {
        b.clone()
    } else {
        a
    })
}

/// Certify `expected·(Q₁ − Q₂√R) > 0` on `iv`, assuming `R > 0` there.
pub fn certify_branch_rule(
    q1: &QPoly,
    q2: &QPoly,
    r: &QPoly,
    iv: &Interval,
    expected: i8,
) -> Result<BranchEvidence> {
    if q1.is_zero() && q2.is_zero() {
        return Err(Error::CertificationFailed(format!(
            "expression vanishes identically on {iv}"
        )));
    }
    let single = |b| {
        Ok(BranchEvidence {
            expected,
            segments: vec![certify_branch(q1, q2, iv, expected, b)?],
        })
    };
    if q2.is_zero() {
        return single(Branch::Q1);
    }
    if q1.is_zero() {
        return single(Branch::NegQ2);
    }
    let ft = &(q1 * q1) - &(&(q2 * q2) * r);
    if ft.is_zero() {
        return single(Branch::Both);
    }
    let chain = SturmChain::new(&ft)?;
    let roots = chain.isolate(&iv.lo, &iv.hi, ISOLATION_BITS)?;

    let mut segments = Vec::new();
    let mut cursor = iv.lo.clone();
    let mut cursor_open = iv.lo_open;
    let resolve = |lo: &Endpoint,
                   hi: &Endpoint,
                   lo_open: bool,
                   segments: &mut Vec<BranchSegment>|
     -> Result<()> {
        let seg = Interval {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_open,
        };
        let x = Endpoint::Rational(rational_between(lo, hi)?);
        let branch = match sign_at(&ft, &x, DEFAULT_PRECISION_CAP)? {
            1 => Branch::Q1,
            -1 => Branch::NegQ2,
            _ => Branch::Both,
        };
        segments.push(certify_branch(q1, q2, &seg, expected, branch)?);
        Ok(())
    };
    for (a, b) in roots {
        let a = max_end(Endpoint::Rational(a), &iv.lo)?;
        let b = min_end(Endpoint::Rational(b), &iv.hi)?;
        if cursor.cmp_endpoint(&a)? == Ordering::Less {
            resolve(&cursor, &a, cursor_open, &mut segments)?;
            cursor_open = false;
        }
        let nb = Interval {
            lo: a.clone(),
            hi: b.clone(),
            lo_open: cursor_open && a == cursor,
        };
        segments.push(certify_branch(q1, q2, &nb, expected, Branch::Both)?);
        cursor = b;
        cursor_open = false;
    }
    if cursor.cmp_endpoint(&iv.hi)? == Ordering::Less {
        resolve(&cursor, &iv.hi, cursor_open, &mut segments)?;
    }
    Ok(BranchEvidence { expected, segments })
}

impl BranchEvidence {
    /// Recompute each segment's verdict from the polynomials alone.
    pub fn recheck(&self, q1: &QPoly, q2: &QPoly) -> Result<()> {
        for seg in &self.segments {
            let again = certify_branch(q1, q2, &seg.interval, self.expected, seg.branch)?;
            if again.evidence.len() != seg.evidence.len() {
                return Err(Error::CertificationFailed(
                    "branch evidence shape differs".into(),
                ));
            }
        }
        Ok(())
    }
}
