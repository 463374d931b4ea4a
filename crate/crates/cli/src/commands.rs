use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use brace_forge::brace::BraceCheck;
use brace_forge::cert::{
    brace_certificate, factorization_certificate, realization_certificate, ybe_certificate, AutRecord,
    Certificate, CertKind, FactorizationPayload, SearchKind,
};
use brace_forge::holomorph::{AutGroup, HolGroup};
use brace_forge::matgrp::field;
use brace_forge::named::named_group;
use brace_forge::realize::{psl2_realize, realize_exact_factorization, realize_prop27, RealizationCert};
use brace_forge::record::GroupRecord;
use brace_forge::search::{
    code2_search, code3_search, code4_search, exact_factorization_search, AutScan, Code3Tuple, SearchConfig,
    SubgroupCache,
};
use brace_forge::{Error, FinGroup, Result};

use crate::args::{ConstructionArg, GroupArgs, SearchArgs, SearchCode};

/// Output of `search`: every witness as a sealed factorization certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResults {
    pub search: SearchKind,
    pub group: GroupRecord,
    pub max_order: u64,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples: Option<Vec<Code3Tuple>>,
    pub certificates: Vec<Certificate>,
}

pub fn search_config(args: &SearchArgs) -> SearchConfig {
    SearchConfig {
        max_order: args.max_order,
        cache: args.cache.as_ref().map(SubgroupCache::new),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_slice(&fs::read(path)?).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn base_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn psl2_q(name: &str) -> Option<u64> {
    let upper = name.trim().to_ascii_uppercase();
    upper.strip_prefix("PSL2(")?.strip_suffix(')')?.parse().ok()
}

fn input_group(args: &GroupArgs) -> Result<(FinGroup, GroupRecord, Option<String>)> {
    match (&args.group, &args.named) {
        (Some(path), _) => {
            let rec: GroupRecord = read_json(path)?;
            let g = rec.to_group().map_err(|e| Error::Schema(format!("group record: {e}")))?;
            Ok((g, rec, None))
        }
        (None, Some(name)) => {
            let g = named_group(name)?;
            let rec = GroupRecord::named(&g, name);
            Ok((g, rec, Some(name.clone())))
        }
        (None, None) => Err(Error::Schema("one of --group, --named is required".into())),
    }
}

fn input_aut(n: &FinGroup, name: Option<&str>, aut: Option<&Path>) -> Result<AutGroup> {
    if let Some(path) = aut {
        let rec: AutRecord = read_json(path)?;
        return rec.to_aut(n);
    }
    match name.and_then(psl2_q) {
        Some(q) => AutGroup::explicit_psl2(&field(q)?),
        None => AutGroup::brute_force(n),
    }
}

pub fn cmd_psl2(q: u64, out: &Path, check: BraceCheck) -> Result<Certificate> {
    if q < 4 {
        // field(q) accepts 2 and 3, where PSL2(q) is solvable
        field(q)?;
        return Err(Error::ExcludedQ(q));
    }
    let r = psl2_realize(q)?;
    let cert = realization_certificate(&r, Some(check), true)?;
    cert.write(out)?;
    out!(
        "psl2 q={q}: |G| = {}, construction {}, derived series {:?}",
        r.g().order(),
        r.construction.tag(),
        r.derived_series_orders
    );
    print_report(&cert);
    out!("wrote {}", out.display());
    Ok(cert)
}

pub fn cmd_search(
    code: SearchCode,
    group: &GroupArgs,
    aut: Option<&Path>,
    allow_nonexact: bool,
    args: &SearchArgs,
    out: &Path,
) -> Result<SearchResults> {
    let (n, rec, name) = input_group(group)?;
    let config = search_config(args);
    let (search, tuples, certificates) = match code {
        SearchCode::Code1 => {
            let found = exact_factorization_search(&n, &config)?;
            let certs = found
                .map(|fc| factorization_certificate(SearchKind::Code1, &n, None, &fc))
                .transpose()?;
            (SearchKind::Code1, None, certs.into_iter().collect())
        }
        SearchCode::Code2 => {
            let aut = input_aut(&n, name.as_deref(), aut)?;
            let found = code2_search(&aut, &config)?;
            let certs = found
                .map(|fc| factorization_certificate(SearchKind::Code2, &n, Some(&aut), &fc))
                .transpose()?;
            (SearchKind::Code2, None, certs.into_iter().collect())
        }
        SearchCode::Code3 => {
            let aut = input_aut(&n, name.as_deref(), aut)?;
            let rows = code3_search(&aut, allow_nonexact, &config)?;
            let certs = rows
                .iter()
                .map(|(_, fc)| factorization_certificate(SearchKind::Code3, &n, Some(&aut), fc))
                .collect::<Result<Vec<_>>>()?;
            (SearchKind::Code3, Some(rows.into_iter().map(|r| r.0).collect::<Vec<_>>()), certs)
        }
    };
    let results = SearchResults {
        search,
        group: rec,
        max_order: args.max_order,
        found: !certificates.is_empty(),
        tuples,
        certificates,
    };
    write_json(out, &results)?;
    out!("found: {}", results.found);
    if let Some(t) = &results.tuples {
        for row in t {
            out!(
                "<{}, {}, {}, {}, {}, {}, {}>",
                row.p_index, row.a_index, row.b_index, row.a_order, row.b_order, row.meet_order, row.p_over_inn
            );
        }
    } else if let Some(c) = results.certificates.first() {
        let p: FactorizationPayload = serde_json::from_value(c.payload.clone())?;
        out!("|P| = {}, |A| = {}, |B| = {}, |A ∩ B| = {}", p.orders.p, p.orders.a, p.orders.b, p.orders.meet);
    }
    out!("wrote {}", out.display());
    Ok(results)
}

/// A factorization certificate, read either directly or out of a search
/// result, and verified before use.
pub fn load_factorization(path: &Path, index: usize) -> Result<Certificate> {
    let value: serde_json::Value = read_json(path)?;
    let cert = if value.get("schema").is_some() {
        serde_json::from_value::<Certificate>(value).map_err(|e| Error::Schema(e.to_string()))?
    } else {
        let results: SearchResults = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        let count = results.certificates.len();
        results
            .certificates
            .into_iter()
            .nth(index)
            .ok_or_else(|| Error::Schema(format!("index {index} out of range ({count} certificates)")))?
    };
    if cert.kind != CertKind::Factorization {
        return Err(Error::Schema(format!("expected a factorization certificate, found {:?}", cert.kind)));
    }
    cert.verify(&base_dir(path))?;
    Ok(cert)
}

pub fn realize_from(
    cert: &Certificate,
    construction: ConstructionArg,
    scan: AutScan,
    config: &SearchConfig,
) -> Result<RealizationCert> {
    let p: FactorizationPayload = serde_json::from_value(cert.payload.clone())?;
    let n = p.n.to_group()?;
    let (a, b) = (p.a.to_group()?, p.b.to_group()?);
    let construction = match (construction, &p.aut) {
        (ConstructionArg::Auto, None) => ConstructionArg::Prop24,
        (ConstructionArg::Auto, Some(_)) => ConstructionArg::Prop27,
        (c, _) => c,
    };
    match (construction, &p.aut) {
        (ConstructionArg::Prop24, None) => {
            let hol = HolGroup::new(AutGroup::inner(&n)?)?;
            realize_exact_factorization(&hol, &a, &b)
        }
        (ConstructionArg::Prop24, Some(_)) => Err(Error::Schema(
            "prop24 needs a factorization of N itself (a code1 result)".into(),
        )),
        (ConstructionArg::Prop27, Some(rec)) => {
            let hol = HolGroup::new(rec.to_aut(&n)?)?;
            realize_prop27(&hol, &p.p.to_group()?, &a, &b)
        }
        (ConstructionArg::Code4, Some(rec)) => {
            let hol = HolGroup::new(rec.to_aut(&n)?)?;
            code4_search(&hol, &a, &b, config, scan)
        }
        (c, None) => Err(Error::Schema(format!(
            "{c:?} needs subgroups of Aut(N) (a code2 or code3 result)"
        ))),
        (ConstructionArg::Auto, Some(_)) => unreachable!(),
    }
}

pub fn print_report(cert: &Certificate) {
    for e in &cert.verification_report {
        let mut line = format!("  ok  {:<32} {:?}", e.invariant, e.mode);
        if let Some(c) = e.checked {
            line += &format!(" checked={c}");
        }
        if let Some(s) = e.seed {
            line += &format!(" seed={s:#x}");
        }
        out!("{}", line.to_lowercase());
    }
}

pub fn cmd_realize(
    input: &Path,
    index: usize,
    construction: ConstructionArg,
    scan: AutScan,
    brace: Option<BraceCheck>,
    config: &SearchConfig,
    out: &Path,
) -> Result<Certificate> {
    let fac = load_factorization(input, index)?;
    let r = realize_from(&fac, construction, scan, config)?;
    let cert = realization_certificate(&r, brace, brace.is_some())?;
    cert.write(out)?;
    out!(
        "realized: |G| = {}, construction {}, derived series {:?}",
        r.g().order(),
        r.construction.tag(),
        r.derived_series_orders
    );
    print_report(&cert);
    out!("wrote {}", out.display());
    Ok(cert)
}

pub fn cmd_brace(source: &Path, out: &Path, check: BraceCheck) -> Result<Certificate> {
    let cert = brace_certificate(source, &base_dir(out), check)?;
    cert.write(out)?;
    print_report(&cert);
    out!("wrote {}", out.display());
    Ok(cert)
}

pub fn cmd_ybe(source: &Path, out: &Path) -> Result<Certificate> {
    let cert = ybe_certificate(source, &base_dir(out))?;
    cert.write(out)?;
    print_report(&cert);
    out!("wrote {}", out.display());
    Ok(cert)
}

pub fn cmd_verify(path: &Path) -> Result<Certificate> {
    let cert = Certificate::read(path)?;
    cert.verify(&base_dir(path))?;
    out!("{:?} certificate", cert.kind);
    print_report(&cert);
    out!("verified: {} checks passed", cert.verification_report.len());
    Ok(cert)
}
