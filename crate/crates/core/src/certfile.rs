//! Self-contained certificate documents: the barrier, its evidence and a summary.

use serde::{Deserialize, Serialize};

use crate::barriers::{
    certify_barrier, Barrier, BarrierCertificate, BarrierKind, BarrierPiece, JumpRecord,
    NearZeroRecord, PieceRecord,
};
use crate::error::{Error, Result};
use crate::exactnum::QSqrt2;
use crate::odes::OdeSystem;
use crate::shooting::{implied_bound, BBound};

pub const FORMAT_VERSION: u32 = 1;

/// Verdict and the bound on b read off the tail. `bound.value` is the only float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: bool,
    pub bound: Option<BBound>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format_version: u32,
    pub system: OdeSystem,
    pub kind: BarrierKind,
    pub pieces: Vec<BarrierPiece>,
    #[serde(default)]
    pub separators: Vec<Option<QSqrt2>>,
    pub evidence: Vec<PieceRecord>,
    pub breakpoints: Vec<JumpRecord>,
    pub near_zero: NearZeroRecord,
    #[serde(default)]
    pub failures: Vec<String>,
    pub summary: Summary,
}

/// Outcome of re-running the verifier on a stored document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reverification {
    pub pass: bool,
    /// The stored verdict.
    pub stored_pass: bool,
    /// The recomputed evidence equals the stored evidence.
    pub evidence_matches: bool,
    pub failures: Vec<String>,
}

impl CertificateFile {
    pub fn new(barrier: &Barrier, cert: BarrierCertificate, source: &str) -> Self {
        CertificateFile {
            format_version: FORMAT_VERSION,
            system: barrier.leaf.into(),
            kind: barrier.kind,
            pieces: barrier.pieces.clone(),
            separators: barrier.separators.clone(),
            evidence: cert.pieces,
            breakpoints: cert.jumps,
            near_zero: cert.near_zero,
            failures: cert.failures,
            summary: Summary {
                pass: cert.pass,
                bound: implied_bound(barrier, source),
            },
        }
    }

    /// Certify `barrier` and package the result.
    pub fn emit(barrier: &Barrier, source: &str) -> Result<Self> {
        let cert = certify_barrier(barrier)?;
        Ok(Self::new(barrier, cert, source))
    }

    pub fn barrier(&self) -> Result<Barrier> {
        let leaf = self.system.leaf().ok_or_else(|| {
            Error::Invalid("certificates are only defined for the leaf systems".into())
        })?;
        Ok(Barrier::new(leaf, self.kind, self.pieces.clone())?
            .with_separators(self.separators.clone()))
    }

    pub fn certificate(&self) -> Result<BarrierCertificate> {
        Ok(BarrierCertificate {
            leaf: self.barrier()?.leaf,
            kind: self.kind,
            pieces: self.evidence.clone(),
            jumps: self.breakpoints.clone(),
            near_zero: self.near_zero.clone(),
            failures: self.failures.clone(),
            pass: self.summary.pass,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CertificateFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}",
                f.format_version
            )));
        }
        Ok(f)
    }

    /// Recompute everything from the stored barrier alone.
    pub fn reverify(&self) -> Result<Reverification> {
        let barrier = self.barrier()?;
        let fresh = certify_barrier(&barrier)?;
        let evidence_matches = fresh == self.certificate()?;
        Ok(Reverification {
            pass: fresh.pass,
            stored_pass: self.summary.pass,
            evidence_matches,
            failures: fresh.failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artifacts::{builtin_g, builtin_h};

    #[test]
    fn roundtrip_preserves_verdicts() {
        for b in [builtin_g(), builtin_h()] {
            let f = CertificateFile::emit(&b, "test").unwrap();
            let back = CertificateFile::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.barrier().unwrap(), b);
            let r = back.reverify().unwrap();
            assert!(r.pass && r.stored_pass && r.evidence_matches);
        }
    }

    #[test]
    fn payload_numbers_are_strings() {
        let f = CertificateFile::emit(&builtin_g(), "test").unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        // the advisory float of the summary is the only number besides counters
        v["summary"]["bound"]["value"] = serde_json::Value::Null;
        fn floats(v: &serde_json::Value, out: &mut Vec<String>, path: &str) {
            match v {
                serde_json::Value::Number(n) if n.is_f64() => out.push(path.to_string()),
                serde_json::Value::Array(a) => a
                    .iter()
                    .enumerate()
                    .for_each(|(i, x)| floats(x, out, &format!("{path}/{i}"))),
                serde_json::Value::Object(o) => o
                    .iter()
                    .for_each(|(k, x)| floats(x, out, &format!("{path}/{k}"))),
                _ => {}
            }
        }
        let mut found = vec![];
        floats(&v, &mut found, "");
        assert!(found.is_empty(), "{found:?}");
    }

    #[test]
    fn tampered_document_fails_reverification() {
        let f = CertificateFile::emit(&builtin_g(), "test").unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        v["pieces"][1]["numerator"][0]["a"] = "1/10".into();
        let t = CertificateFile::from_json(&v.to_string()).unwrap();
        let r = t.reverify().unwrap();
        assert!(!r.pass && r.stored_pass && !r.evidence_matches);
        assert!(
            r.failures
                .iter()
                .any(|m| m.contains("jump check failed at s = 1")),
            "{:?}",
            r.failures
        );
    }

    #[test]
    fn bad_documents_are_parse_errors() {
        assert!(matches!(
            CertificateFile::from_json("{"),
            Err(Error::Parse(_))
        ));
        let f = CertificateFile::emit(&builtin_h(), "test").unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        v["format_version"] = 99.into();
        assert!(matches!(
            CertificateFile::from_json(&v.to_string()),
            Err(Error::Parse(_))
        ));
    }
}
