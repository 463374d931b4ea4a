use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{relative_ref, sha256_hex, CertKind, Certificate};
use crate::brace::{transport_brace_with, yb_solution, BraceCheck};
use crate::error::{Error, Result};
use crate::holomorph::{AutGroup, AutKind};
use crate::perm_core::{FinGroup, Perm};
use crate::realize::{Construction, PairTarget, RealizationCert};
use crate::record::{perm_images, GroupRecord};
use crate::search::FactorizationCert;

/// `M` with its action on `N`; `Inn(N)` is recomputed from `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutRecord {
    pub kind: AutKind,
    pub group: GroupRecord,
}

impl AutRecord {
    pub fn from_aut(aut: &AutGroup) -> Self {
        AutRecord {
            kind: aut.kind(),
            group: GroupRecord::from_group(aut.group()),
        }
    }

    pub fn to_aut(&self, n: &FinGroup) -> Result<AutGroup> {
        let m = self.group.to_group()?;
        match self.kind {
            AutKind::Normalizer => AutGroup::normalizer(n, &m, false),
            AutKind::ElementPerm => AutGroup::element_perm(n, m.generators().to_vec(), false),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    Code1,
    Code2,
    Code3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRecord {
    pub n: u64,
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub meet: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationPayload {
    pub search: SearchKind,
    pub n: GroupRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut: Option<AutRecord>,
    pub p: GroupRecord,
    pub a: GroupRecord,
    pub b: GroupRecord,
    pub orders: OrderRecord,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset_equality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub target: PairTarget,
    pub first: Vec<Vec<u32>>,
    pub second: Vec<Vec<u32>>,
}

/// `ρ(g)·f` with `g` as an element index of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaRecord {
    pub shift: u32,
    pub aut: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prop27Record {
    pub p: GroupRecord,
    pub a: GroupRecord,
    pub b: GroupRecord,
    pub a0: GroupRecord,
    pub b0: GroupRecord,
    pub c: GroupRecord,
    pub theta_images: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelRecord {
    pub a: GroupRecord,
    pub b: GroupRecord,
    pub kf: GroupRecord,
    pub kh: GroupRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationPayload {
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub role_swap: bool,
    pub n: GroupRecord,
    pub aut: AutRecord,
    pub g: GroupRecord,
    pub pair: PairRecord,
    pub delta: Vec<DeltaRecord>,
    /// `ξ(δ_σ)` for `σ` in the element order of `G`
    pub xi: Vec<u32>,
    /// solvability witness
    pub derived_series_orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prop27: Option<Prop27Record>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code4: Option<KernelRecord>,
    /// brace axiom check on the transported brace, when requested
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brace: Option<BraceCheck>,
    /// Yang–Baxter checks on the brace's solution
    pub ybe: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceRef {
    pub sha256: String,
    pub path: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracePayload {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add_table: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circ_table: Option<Vec<u32>>,
    pub source_cert_ref: SourceRef,
    pub check: BraceCheck,
}

/// `r(x, y) = (sigma[x*n + y], tau[x*n + y])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YbePayload {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<u32>>,
    pub source_cert_ref: SourceRef,
}

fn images(ps: &[Perm]) -> Vec<Vec<u32>> {
    ps.iter().map(perm_images).collect()
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("payloads serialize")
}

pub fn factorization_certificate(
    search: SearchKind,
    n: &FinGroup,
    aut: Option<&AutGroup>,
    cert: &FactorizationCert,
) -> Result<Certificate> {
    let payload = FactorizationPayload {
        search,
        n: GroupRecord::from_group(n),
        aut: aut.map(AutRecord::from_aut),
        p: GroupRecord::from_group(&cert.p),
        a: GroupRecord::from_group(&cert.a),
        b: GroupRecord::from_group(&cert.b),
        orders: OrderRecord {
            n: n.order(),
            p: cert.p.order(),
            a: cert.a.order(),
            b: cert.b.order(),
            meet: cert.meet_order,
        },
        exact: cert.exact(),
        coset_equality: cert.coset_equality,
        split: cert.split,
    };
    Certificate::seal(CertKind::Factorization, to_value(&payload), Path::new("."))
}

pub fn realization_certificate(cert: &RealizationCert, brace: Option<BraceCheck>, ybe: bool) -> Result<Certificate> {
    if ybe && brace.is_none() {
        return Err(Error::Precondition("Yang–Baxter checks need the brace section".into()));
    }
    let aut = cert.hol().aut();
    let reg = &cert.regular;
    let rec = |g: &FinGroup| GroupRecord::from_group(g);
    let payload = RealizationPayload {
        construction: cert.construction,
        q: cert.q,
        role_swap: cert.role_swap,
        n: rec(aut.n_group()),
        aut: AutRecord::from_aut(aut),
        g: rec(cert.g()),
        pair: PairRecord {
            target: cert.pair.target,
            first: images(&cert.pair.first),
            second: images(&cert.pair.second),
        },
        delta: reg
            .delta_generators
            .iter()
            .map(|d| DeltaRecord {
                shift: d.shift as u32,
                aut: perm_images(&d.aut),
            })
            .collect(),
        xi: reg.trace.xi.clone(),
        derived_series_orders: cert.derived_series_orders.clone(),
        prop27: cert.prop27.as_ref().map(|d| Prop27Record {
            p: rec(&d.p),
            a: rec(&d.a),
            b: rec(&d.b),
            a0: rec(&d.a0),
            b0: rec(&d.b0),
            c: rec(&d.c),
            theta_images: images(&d.theta_images),
        }),
        code4: cert.code4.as_ref().map(|k| KernelRecord {
            a: rec(&k.a),
            b: rec(&k.b),
            kf: rec(&k.kf),
            kh: rec(&k.kh),
        }),
        brace,
        ybe,
    };
    Certificate::seal(CertKind::Realization, to_value(&payload), Path::new("."))
}

fn source_ref(source_path: &Path, out_dir: &Path) -> Result<(Certificate, SourceRef)> {
    let bytes = fs::read(source_path)?;
    let source = Certificate::from_json(&bytes)?;
    let base = source_path.parent().unwrap_or(Path::new("."));
    source.verify(base)?;
    Ok((
        source,
        SourceRef {
            sha256: sha256_hex(&bytes),
            path: relative_ref(source_path, out_dir),
        },
    ))
}

/// Brace export of a realization certificate, to be written into `out_dir`.
pub fn brace_certificate(source_path: &Path, out_dir: &Path, check: BraceCheck) -> Result<Certificate> {
    let (source, source_cert_ref) = source_ref(source_path, out_dir)?;
    let base = source_path.parent().unwrap_or(Path::new("."));
    let regular = super::load_regular(&source, base)?;
    let brace = transport_brace_with(&regular, check)?;
    let payload = BracePayload {
        n: brace.n(),
        add_table: brace.add_table().map(<[u32]>::to_vec),
        circ_table: brace.circ_table().map(<[u32]>::to_vec),
        source_cert_ref,
        check,
    };
    Certificate::seal(CertKind::Brace, to_value(&payload), out_dir)
}

/// Yang–Baxter export of a brace certificate, to be written into `out_dir`.
pub fn ybe_certificate(source_path: &Path, out_dir: &Path) -> Result<Certificate> {
    let (source, source_cert_ref) = source_ref(source_path, out_dir)?;
    let base = source_path.parent().unwrap_or(Path::new("."));
    let brace = super::load_brace(&source, base)?;
    let map = yb_solution(&brace)?;
    let tables = map.tables();
    let payload = YbePayload {
        n: brace.n(),
        sigma: tables.as_ref().map(|t| t.sigma.clone()),
        tau: tables.map(|t| t.tau),
        source_cert_ref,
    };
    Certificate::seal(CertKind::Ybe, to_value(&payload), out_dir)
}
