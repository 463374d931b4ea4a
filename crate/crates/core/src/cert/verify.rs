use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use super::payload::{
    BracePayload, FactorizationPayload, RealizationPayload, SearchKind, SourceRef, YbePayload,
};
use super::{resolve_ref, sha256_hex, CertKind, Certificate, CheckEntry, Mode, SCHEMA, SCHEMA_VERSION};
use crate::brace::{transport_brace_with, yb_solution, BraceReport, CheckMode, SkewBrace, YbReport, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::holomorph::{decompose, validate_prop22, AutGroup, HolElem, HolGroup, ProductCheck, RegularSubgroupCert};
use crate::matgrp::{prime_power, psl2_order};
use crate::perm_core::{hom_from_images, FinGroup, HomVerify, Perm};
use crate::realize::{Construction, FpfPair, PairTarget};
use crate::record::GroupRecord;

#[derive(Default)]
struct Checks {
    entries: Vec<CheckEntry>,
}

impl Checks {
    fn entry(
        &mut self,
        invariant: &str,
        mode: Mode,
        passed: bool,
        checked: Option<u64>,
        seed: Option<u64>,
        detail: &str,
    ) -> Result<()> {
        if !passed {
            return Err(Error::verification(invariant, detail));
        }
        self.entries.push(CheckEntry {
            invariant: invariant.into(),
            mode,
            passed,
            checked,
            seed,
        });
        Ok(())
    }

    fn exact(&mut self, invariant: &str, passed: bool, detail: &str) -> Result<()> {
        self.entry(invariant, Mode::Exact, passed, None, None, detail)
    }
}

/// Errors other than resource limits become failures of `invariant`.
fn stage<T>(invariant: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::SizeLimitExceeded { .. } | Error::Verification { .. } => e,
        other => Error::verification(invariant, other.to_string()),
    })
}

fn parse<T: DeserializeOwned>(payload: &serde_json::Value) -> Result<T> {
    serde_json::from_value(payload.clone()).map_err(|e| Error::Schema(format!("payload: {e}")))
}

fn group(rec: &GroupRecord, degree: Option<usize>, what: &str) -> Result<FinGroup> {
    if let Some(d) = degree {
        if rec.degree != d {
            return Err(Error::verification(
                "records",
                format!("{what} has degree {}, expected {d}", rec.degree),
            ));
        }
    }
    stage("records", rec.to_group())
}

fn perms(images: &[Vec<u32>], degree: usize, what: &str) -> Result<Vec<Perm>> {
    images
        .iter()
        .map(|imgs| {
            if imgs.len() != degree {
                return Err(Error::verification("records", format!("{what}: wrong degree")));
            }
            stage("records", Perm::from_images(imgs.clone()))
        })
        .collect()
}

fn check_mode(m: CheckMode) -> Mode {
    match m {
        CheckMode::Exhaustive => Mode::Exhaustive,
        CheckMode::Sampled => Mode::Sampled,
    }
}

/// What a replay rebuilt, for certificates that reference it.
pub(crate) enum Replayed {
    Factorization,
    Realization(Box<RegularSubgroupCert>, Option<SkewBrace>),
    Brace(SkewBrace),
    Ybe,
}

pub(crate) fn evaluate(kind: CertKind, payload: &serde_json::Value, base: &Path) -> Result<Vec<CheckEntry>> {
    replay(kind, payload, base).map(|r| r.0)
}

fn replay(kind: CertKind, payload: &serde_json::Value, base: &Path) -> Result<(Vec<CheckEntry>, Replayed)> {
    match kind {
        CertKind::Factorization => {
            let entries = factorization(&parse(payload)?)?;
            Ok((entries, Replayed::Factorization))
        }
        CertKind::Realization => {
            let (entries, reg, brace) = realization(&parse(payload)?)?;
            Ok((entries, Replayed::Realization(Box::new(reg), brace)))
        }
        CertKind::Brace => {
            let (entries, brace) = brace(&parse(payload)?, base)?;
            Ok((entries, Replayed::Brace(brace)))
        }
        CertKind::Ybe => Ok((ybe(&parse(payload)?, base)?, Replayed::Ybe)),
    }
}

/// Schema check, replay and comparison with the recorded report.
pub(crate) fn replay_verified(cert: &Certificate, base: &Path) -> Result<(Vec<CheckEntry>, Replayed)> {
    if cert.schema != SCHEMA {
        return Err(Error::Schema(format!("unknown schema {:?}", cert.schema)));
    }
    if cert.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema version {} is not supported (expected {SCHEMA_VERSION})",
            cert.schema_version
        )));
    }
    let (entries, replayed) = replay(cert.kind, &cert.payload, base)?;
    if entries.len() != cert.verification_report.len() {
        return Err(Error::verification(
            "report",
            format!(
                "replay produced {} entries, certificate records {}",
                entries.len(),
                cert.verification_report.len()
            ),
        ));
    }
    for (got, want) in entries.iter().zip(&cert.verification_report) {
        if got != want {
            return Err(Error::verification(
                "report",
                format!("entry {:?} differs from the replay", want.invariant),
            ));
        }
    }
    Ok((entries, replayed))
}

/// The regular subgroup of a verified realization certificate.
pub fn load_regular(cert: &Certificate, base: &Path) -> Result<RegularSubgroupCert> {
    match replay_verified(cert, base)?.1 {
        Replayed::Realization(reg, _) => Ok(*reg),
        _ => Err(Error::Schema(format!("expected a realization certificate, found {:?}", cert.kind))),
    }
}

/// The brace of a verified brace certificate, or of a realization
/// certificate carrying a brace section.
pub fn load_brace(cert: &Certificate, base: &Path) -> Result<SkewBrace> {
    match replay_verified(cert, base)?.1 {
        Replayed::Brace(b) | Replayed::Realization(_, Some(b)) => Ok(b),
        _ => Err(Error::Schema(format!(
            "expected a brace certificate or a realization with a brace section, found {:?}",
            cert.kind
        ))),
    }
}

fn factorization(p: &FactorizationPayload) -> Result<Vec<CheckEntry>> {
    let mut c = Checks::default();
    let n = group(&p.n, None, "N")?;
    let aut = match &p.aut {
        Some(r) => Some(stage("aut", r.to_aut(&n))?),
        None => None,
    };
    let ambient = aut.as_ref().map_or(n.degree(), |a| a.group().degree());
    let pg = group(&p.p, Some(ambient), "P")?;
    let a = group(&p.a, Some(ambient), "A")?;
    let b = group(&p.b, Some(ambient), "B")?;
    let o = &p.orders;
    c.exact(
        "orders",
        n.order() == o.n && pg.order() == o.p && a.order() == o.a && b.order() == o.b,
        "recorded orders differ from the groups",
    )?;
    match (p.search, &aut) {
        (SearchKind::Code1, None) => c.exact("context", pg == n, "P ≠ N")?,
        (SearchKind::Code1, Some(_)) => c.exact("context", false, "code1 factorizations live in N")?,
        (_, Some(aut)) => c.exact(
            "context",
            aut.inn().is_subgroup_of(&pg) && pg.is_subgroup_of(aut.group()),
            "need Inn(N) ≤ P ≤ M",
        )?,
        (_, None) => c.exact("context", false, "overgroup searches record M")?,
    }
    c.exact("subgroups", a.is_subgroup_of(&pg) && b.is_subgroup_of(&pg), "A or B is not in P")?;
    c.exact("solvable", a.is_solvable() && b.is_solvable(), "A or B is not solvable")?;
    let meet = a.intersection(&b).order();
    c.exact("meet_order", meet == o.meet, "|A ∩ B| differs")?;
    c.exact("factorization", a.order() * b.order() == pg.order() * meet, "|A||B| ≠ |P||A ∩ B|")?;
    let exact_required = p.search != SearchKind::Code3;
    c.exact(
        "exact",
        p.exact == (meet == 1) && (p.exact || !exact_required),
        "exactness flag is wrong or an exact factorization is required",
    )?;
    if let Some(aut) = &aut {
        let inn = aut.inn();
        let coset = inn.join(a.generators()) == inn.join(b.generators());
        c.exact(
            "coset_equality",
            p.coset_equality == Some(true) && coset,
            "A·Inn(N) = B·Inn(N) is not recorded or fails",
        )?;
        let split = || -> Result<bool> {
            let a0 = a.intersection(inn);
            Ok(stage("split", crate::matgrp::complement(&a, &a0))?.is_some())
        };
        match (p.search, p.split) {
            (SearchKind::Code3, None) => {}
            (SearchKind::Code3, Some(s)) => c.exact("split", split()? == s, "splitting flag differs")?,
            (_, s) => c.exact("split", s == Some(true) && split()?, "A does not split over A ∩ Inn(N)")?,
        }
    } else {
        c.exact(
            "context",
            p.coset_equality.is_none() && p.split.is_none(),
            "Inn(N) conditions without M",
        )?;
    }
    Ok(c.entries)
}

fn psl2_branch(q: u64) -> Construction {
    if q.is_multiple_of(2) {
        Construction::Psl2Even
    } else if q % 4 == 1 {
        Construction::Psl2Q1mod4
    } else {
        Construction::Psl2Q3mod4
    }
}

fn realization(p: &RealizationPayload) -> Result<(Vec<CheckEntry>, RegularSubgroupCert, Option<SkewBrace>)> {
    let mut c = Checks::default();
    let n = group(&p.n, None, "N")?;
    let aut = stage("aut", p.aut.to_aut(&n))?;
    let hol = stage("holomorph", HolGroup::new(aut))?;
    let aut = hol.aut();
    let m = aut.group();
    let g = group(&p.g, None, "G")?;
    let ngen = g.generators().len();
    c.exact("order", g.order() == n.order(), "|G| ≠ |N|")?;
    let series: Vec<u64> = g.derived_series().iter().map(|d| d.order()).collect();
    c.exact(
        "solvable",
        series.last() == Some(&1) && series == p.derived_series_orders,
        "derived series does not match the recorded solvability witness",
    )?;

    let con = p.construction;
    let target_ok = match con {
        Construction::Prop24 | Construction::Psl2Even => p.pair.target == PairTarget::N,
        _ => p.pair.target == PairTarget::Aut,
    };
    let is_prop27 = matches!(
        con,
        Construction::Prop27 | Construction::Psl2Q1mod4 | Construction::Psl2Q3mod4
    );
    let is_psl2 = matches!(
        con,
        Construction::Psl2Even | Construction::Psl2Q1mod4 | Construction::Psl2Q3mod4
    );
    let q_ok = match (is_psl2, p.q) {
        (true, Some(q)) => {
            q > 3 && prime_power(q).is_some() && psl2_order(q) == n.order() && psl2_branch(q) == con
        }
        (false, None) => true,
        _ => false,
    };
    c.exact(
        "construction",
        target_ok
            && q_ok
            && p.prop27.is_some() == is_prop27
            && p.code4.is_some() == (con == Construction::Code4)
            && p.role_swap == (con == Construction::Psl2Q3mod4),
        "construction tag, q, role swap and attached data disagree",
    )?;

    let pair_degree = match p.pair.target {
        PairTarget::N => n.degree(),
        PairTarget::Aut => m.degree(),
    };
    let first = perms(&p.pair.first, pair_degree, "pair")?;
    let second = perms(&p.pair.second, pair_degree, "pair")?;
    c.exact(
        "pair",
        first.len() == ngen && second.len() == ngen,
        "one image per generator of G is required",
    )?;
    let pair = FpfPair {
        target: p.pair.target,
        g: g.clone(),
        first,
        second,
    };
    let fpf = stage("fixed_point_free", pair.check(aut))?;
    c.entry(
        "fixed_point_free",
        Mode::Exhaustive,
        fpf.fixed_points == 0,
        Some(fpf.checked),
        None,
        "f(σ) = h(σ) for some σ ≠ 1",
    )?;
    if let Some(cong) = fpf.congruence {
        c.entry(
            "congruence_mod_inn",
            Mode::Generators,
            cong,
            Some(ngen as u64),
            None,
            "f(s) ≢ h(s) mod Inn(N)",
        )?;
    }

    let nt = aut.n_table();
    let expected: Vec<HolElem> = match p.pair.target {
        PairTarget::N => pair
            .first
            .iter()
            .zip(&pair.second)
            .map(|(x, y)| {
                let (xi, yi) = (nt.index_of(x).unwrap(), nt.index_of(y).unwrap());
                hol.mul(&hol.lambda(xi), &hol.rho(yi))
            })
            .collect(),
        PairTarget::Aut => {
            let mut v = Vec::with_capacity(ngen);
            for (f, h) in pair.first.iter().zip(&pair.second) {
                let shift = aut
                    .conj_inv(&h.compose(&f.inverse()))
                    .ok_or_else(|| Error::verification("delta_from_pair", "h f⁻¹ is not inner"))?;
                v.push(HolElem { shift, aut: f.clone() });
            }
            v
        }
    };
    let delta_ok = p.delta.len() == ngen
        && p.delta.iter().zip(&expected).all(|(d, e)| {
            d.shift as usize == e.shift && d.aut.as_slice() == e.aut.images()
        });
    c.entry(
        "delta_from_pair",
        Mode::Generators,
        delta_ok,
        Some(ngen as u64),
        None,
        "Δ generators do not come from the recorded pair",
    )?;

    let regular = match decompose(&hol, Some(&g), &expected) {
        Ok(r) => r,
        Err(Error::NotRegular(d)) => return Err(Error::verification("regularity", d)),
        Err(Error::NotAHomomorphism(d)) => return Err(Error::verification("delta_isomorphic_to_g", d)),
        Err(e) => return Err(stage("regularity", Err(e))?),
    };
    let nn = n.order();
    c.entry(
        "regularity",
        Mode::Exhaustive,
        regular.trace.xi == p.xi,
        Some(nn),
        None,
        "recorded ξ table differs from the replay",
    )?;
    c.entry(
        "delta_isomorphic_to_g",
        Mode::Exhaustive,
        true,
        Some(nn * ngen as u64),
        None,
        "",
    )?;

    let r = validate_prop22(&regular);
    c.entry(
        "prop22_h_homomorphism",
        Mode::Exhaustive,
        r.h_homomorphism,
        Some(nn * ngen as u64),
        None,
        "h is not a homomorphism",
    )?;
    c.exact("prop22_f_inn_equals_h_inn", r.f_inn_equals_h_inn, "f(G)Inn ≠ h(G)Inn")?;
    let product_mode = match r.product_check {
        ProductCheck::Exhaustive => Mode::Exhaustive,
        ProductCheck::OrderArithmetic => Mode::Exact,
    };
    c.entry(
        "prop22_fh_equals_hf",
        product_mode,
        r.fh_equals_hf,
        Some(r.f_image_order * r.h_image_order),
        None,
        "f(G)h(G) ≠ h(G)f(G)",
    )?;
    c.exact("prop22_fh_contains_inn", r.fh_contains_inn, "Inn(N) ⊄ f(G)h(G)")?;

    if let Some(d) = &p.prop27 {
        prop27_checks(&mut c, d, aut, &g, &pair)?;
    }
    if let Some(k) = &p.code4 {
        let deg = m.degree();
        let (a, b) = (group(&k.a, Some(deg), "A")?, group(&k.b, Some(deg), "B")?);
        let (kf, kh) = (
            group(&k.kf, Some(g.degree()), "K_f")?,
            group(&k.kh, Some(g.degree()), "K_h")?,
        );
        let f = stage("code4", hom_from_images(&g, m, pair.first.clone(), HomVerify::Auto))?;
        let h = stage("code4", hom_from_images(&g, m, pair.second.clone(), HomVerify::Auto))?;
        c.exact("code4_images", f.image() == a && h.image() == b, "f(G) ≠ A or h(G) ≠ B")?;
        c.exact(
            "code4_kernels",
            f.kernel() == kf && h.kernel() == kh && kf.intersection(&kh).is_trivial(),
            "kernels differ from K_f, K_h or meet nontrivially",
        )?;
    }

    let mut brace_out = None;
    match p.brace {
        Some(check) => {
            let brace = stage("brace_axiom", transport_brace_with(&regular, check))?;
            let rep = brace.report().cloned().expect("transport records its report");
            brace_entries(&mut c, &rep)?;
            if p.ybe {
                let map = stage("ybe_braid", yb_solution(&brace))?;
                ybe_entries(&mut c, map.report())?;
            }
            brace_out = Some(brace);
        }
        None => c.exact("ybe", !p.ybe, "Yang–Baxter checks need the brace section")?,
    }
    Ok((c.entries, regular, brace_out))
}

fn prop27_checks(
    c: &mut Checks,
    d: &super::payload::Prop27Record,
    aut: &AutGroup,
    g: &FinGroup,
    pair: &FpfPair,
) -> Result<()> {
    let m = aut.group();
    let inn = aut.inn();
    let deg = m.degree();
    let pg = group(&d.p, Some(deg), "P")?;
    let a = group(&d.a, Some(deg), "A")?;
    let b = group(&d.b, Some(deg), "B")?;
    let a0 = group(&d.a0, Some(deg), "A0")?;
    let b0 = group(&d.b0, Some(deg), "B0")?;
    let cc = group(&d.c, Some(deg), "C")?;
    c.exact(
        "prop27_overgroup",
        inn.is_subgroup_of(&pg) && pg.is_subgroup_of(m),
        "need Inn(N) ≤ P ≤ M",
    )?;
    c.exact(
        "prop27_exact_factorization",
        a.is_subgroup_of(&pg)
            && b.is_subgroup_of(&pg)
            && a.order() * b.order() == pg.order()
            && a.intersection(&b).is_trivial(),
        "P = AB is not exact",
    )?;
    c.exact(
        "prop27_coset_equality",
        inn.join(a.generators()) == inn.join(b.generators()),
        "A·Inn(N) ≠ B·Inn(N)",
    )?;
    c.exact(
        "prop27_intersections",
        a0 == a.intersection(inn) && b0 == b.intersection(inn),
        "A₀ or B₀ is not the intersection with Inn(N)",
    )?;
    c.exact(
        "prop27_complement",
        cc.is_subgroup_of(&a) && cc.intersection(&a0).is_trivial() && cc.order() * a0.order() == a.order(),
        "C is not a complement of A₀ in A",
    )?;
    let theta = perms(&d.theta_images, deg, "θ")?;
    let theta_ok = theta.len() == b.generators().len()
        && theta
            .iter()
            .zip(b.generators())
            .all(|(t, bg)| cc.contains(t) && inn.contains(&t.inverse().compose(bg)));
    c.entry(
        "prop27_theta",
        Mode::Generators,
        theta_ok,
        Some(theta.len() as u64),
        None,
        "θ(b) ∉ C or b ∉ θ(b)·Inn(N)",
    )?;
    let fg = stage("records", FinGroup::from_generators(pair.first.clone(), deg))?;
    let hg = stage("records", FinGroup::from_generators(pair.second.clone(), deg))?;
    c.exact(
        "prop27_images",
        fg.is_subgroup_of(&a) && hg == b && g.order() == a0.order() * b.order(),
        "f(G) ⊄ A, h(G) ≠ B or |G| ≠ |A₀||B|",
    )
}

fn brace_entries(c: &mut Checks, rep: &BraceReport) -> Result<()> {
    c.entry(
        "brace_axiom",
        check_mode(rep.mode),
        rep.violations == 0,
        Some(rep.triples_checked),
        rep.seed,
        "x∘(y+z) ≠ x∘y − x + x∘z",
    )?;
    c.entry(
        "brace_identity",
        Mode::Exhaustive,
        rep.identity_ok,
        Some(rep.n as u64),
        None,
        "0 is not the common identity",
    )
}

fn ybe_entries(c: &mut Checks, r: &YbReport) -> Result<()> {
    c.entry(
        "ybe_braid",
        check_mode(r.braid_mode),
        r.violations == 0,
        Some(r.triples_checked),
        r.seed,
        "braid relation fails",
    )?;
    c.entry(
        "ybe_nondegenerate",
        check_mode(r.nondegeneracy_mode),
        r.nondegenerate,
        None,
        None,
        "some σ_x or τ_y is not a permutation",
    )?;
    if let Some(bij) = r.bijective {
        c.entry("ybe_bijective", Mode::Exhaustive, bij, Some((r.n as u64).pow(2)), None, "r is not a bijection")?;
    }
    Ok(())
}

/// Reads, hashes and fully verifies a referenced certificate.
fn source(c: &mut Checks, r: &SourceRef, base: &Path) -> Result<(Certificate, std::path::PathBuf)> {
    let path = resolve_ref(&r.path, base);
    let bytes = fs::read(&path)
        .map_err(|e| Error::verification("source", format!("cannot read {}: {e}", path.display())))?;
    c.exact("source_sha256", sha256_hex(&bytes) == r.sha256, "referenced file has a different sha256")?;
    let cert = stage("source", Certificate::from_json(&bytes))?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    Ok((cert, dir))
}

fn brace(p: &BracePayload, base: &Path) -> Result<(Vec<CheckEntry>, SkewBrace)> {
    let mut c = Checks::default();
    let (src, dir) = source(&mut c, &p.source_cert_ref, base)?;
    c.exact("source_kind", src.kind == CertKind::Realization, "source is not a realization")?;
    let regular = stage("source", load_regular(&src, &dir))?;
    let n = regular.n();
    c.exact("n", p.n == n, "n differs from the source")?;
    let with_tables = n <= TABLE_LIMIT;
    c.exact(
        "tables_present",
        p.add_table.is_some() == with_tables && p.circ_table.is_some() == with_tables,
        "tables must be present exactly when n is at most the table limit",
    )?;
    let brace = stage("brace_axiom", transport_brace_with(&regular, p.check))?;
    if with_tables {
        let same = p.add_table.as_deref() == brace.add_table() && p.circ_table.as_deref() == brace.circ_table();
        c.entry(
            "tables_match_source",
            Mode::Exhaustive,
            same,
            Some(2 * (n as u64).pow(2)),
            None,
            "operation tables differ from the transported brace",
        )?;
    }
    let rep = brace.report().cloned().expect("transport records its report");
    brace_entries(&mut c, &rep)?;
    Ok((c.entries, brace))
}

fn ybe(p: &YbePayload, base: &Path) -> Result<Vec<CheckEntry>> {
    let mut c = Checks::default();
    let (src, dir) = source(&mut c, &p.source_cert_ref, base)?;
    c.exact("source_kind", src.kind == CertKind::Brace, "source is not a brace certificate")?;
    let brace = stage("source", load_brace(&src, &dir))?;
    let n = brace.n();
    c.exact("n", p.n == n, "n differs from the source")?;
    let with_tables = n <= TABLE_LIMIT;
    c.exact(
        "tables_present",
        p.sigma.is_some() == with_tables && p.tau.is_some() == with_tables,
        "tables must be present exactly when n is at most the table limit",
    )?;
    let map = stage("ybe_braid", yb_solution(&brace))?;
    if let Some(t) = map.tables() {
        let same = p.sigma.as_ref() == Some(&t.sigma) && p.tau.as_ref() == Some(&t.tau);
        c.entry(
            "tables_match_brace",
            Mode::Exhaustive,
            same,
            Some(2 * (n as u64).pow(2)),
            None,
            "σ/τ tables differ from the brace's solution",
        )?;
    }
    ybe_entries(&mut c, map.report())?;
    Ok(c.entries)
}
