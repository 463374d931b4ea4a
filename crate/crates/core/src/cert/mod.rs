//! Schema-versioned JSON certificates and their independent replay.
//!
//! A certificate is `{schema, schema_version, kind, payload,
//! verification_report}`. The report is produced by the same replay that
//! [`Certificate::verify`] runs, so a certificate verifies iff replaying its
//! payload passes every check and reproduces the recorded report.

pub mod tamper;
mod payload;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use payload::{
    brace_certificate, factorization_certificate, realization_certificate, ybe_certificate, AutRecord,
    BracePayload, DeltaRecord, FactorizationPayload, KernelRecord, OrderRecord, PairRecord, Prop27Record,
    RealizationPayload, SearchKind, SourceRef, YbePayload,
};
pub use verify::{load_brace, load_regular};

pub const SCHEMA: &str = "brace-forge/certificate";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Factorization,
    Realization,
    Brace,
    Ybe,
}

/// How an invariant was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// deterministic computation of the quantity itself
    Exact,
    /// every case enumerated
    Exhaustive,
    /// seeded random sample
    Sampled,
    /// checked on generators, which suffices
    Generators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub invariant: String,
    pub mode: Mode,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: String,
    pub schema_version: u32,
    pub kind: CertKind,
    pub payload: serde_json::Value,
    pub verification_report: Vec<CheckEntry>,
}

impl Certificate {
    /// Replays `payload` and records the resulting report. Fails when any
    /// check fails.
    pub fn seal(kind: CertKind, payload: serde_json::Value, base: &Path) -> Result<Self> {
        let verification_report = verify::evaluate(kind, &payload, base)?;
        Ok(Certificate {
            schema: SCHEMA.into(),
            schema_version: SCHEMA_VERSION,
            kind,
            payload,
            verification_report,
        })
    }

    pub fn from_json(text: &[u8]) -> Result<Self> {
        serde_json::from_slice(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Replays the payload from scratch; references to other certificates
    /// resolve relative to `base`. Schema problems give [`Error::Schema`],
    /// failed or unreproduced checks give [`Error::Verification`].
    pub fn verify(&self, base: &Path) -> Result<Vec<CheckEntry>> {
        verify::replay_verified(self, base).map(|r| r.0)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `path` as stored in a reference from a certificate written to `out_dir`.
pub(crate) fn relative_ref(path: &Path, out_dir: &Path) -> String {
    let abs = |p: &Path| fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    let (p, d) = (abs(path), abs(out_dir));
    match p.strip_prefix(&d) {
        Ok(rel) => rel.to_string_lossy().into_owned(),
        Err(_) => p.to_string_lossy().into_owned(),
    }
}

pub(crate) fn resolve_ref(reference: &str, base: &Path) -> PathBuf {
    let p = Path::new(reference);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Process exit code for an error: 1 verification, 2 usage or schema,
/// 3 resource limit.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SizeLimitExceeded { .. } => 3,
        Error::Schema(_) | Error::Json(_) | Error::NotPrimePower(_) | Error::ExcludedQ(_) => 2,
        Error::Io(_) => 2,
        _ => 1,
    }
}
