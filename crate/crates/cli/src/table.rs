use std::time::Instant;

use serde::Serialize;

use brace_forge::brace::{transport_brace_with, yb_solution, BraceCheck, CheckMode};
use brace_forge::holomorph::{validate_prop22, AutGroup, HolGroup};
use brace_forge::matgrp::{field, pgl2_exact_factorization};
use brace_forge::named::{m11, psl3_3};
use brace_forge::realize::{psl2_realize, realize_exact_factorization, RealizationCert};
use brace_forge::search::{exact_factorization_search, SearchConfig};
use brace_forge::{Error, FinGroup, Result};

/// One realized instance with every downstream check.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRow {
    pub group: String,
    pub n: u64,
    pub a_order: u64,
    pub b_order: u64,
    pub construction: String,
    pub g_order: u64,
    pub derived_series: Vec<u64>,
    pub regular: bool,
    pub prop22: bool,
    pub brace_mode: String,
    pub brace_triples: u64,
    pub brace_ok: bool,
    pub ybe_mode: String,
    pub ybe_triples: u64,
    pub ybe_ok: bool,
    pub seconds: f64,
}

impl InstanceRow {
    pub fn passed(&self) -> bool {
        self.regular && self.prop22 && self.brace_ok && self.ybe_ok && self.g_order == self.n
    }
}

fn mode_name(m: CheckMode) -> String {
    match m {
        CheckMode::Exhaustive => "exhaustive".into(),
        CheckMode::Sampled => "sampled".into(),
    }
}

fn row(group: String, a: &FinGroup, b: &FinGroup, r: &RealizationCert, check: BraceCheck, start: Instant) -> Result<InstanceRow> {
    r.check()?;
    let p22 = validate_prop22(&r.regular);
    let brace = transport_brace_with(&r.regular, check)?;
    let br = brace.report().cloned().ok_or_else(|| Error::Precondition("brace was not checked".into()))?;
    let yb = yb_solution(&brace)?;
    let yr = yb.report().clone();
    Ok(InstanceRow {
        group,
        n: r.n() as u64,
        a_order: a.order(),
        b_order: b.order(),
        construction: r.construction.tag().into(),
        g_order: r.g().order(),
        derived_series: r.derived_series_orders.clone(),
        regular: true,
        prop22: p22.passed(),
        brace_mode: mode_name(br.mode),
        brace_triples: br.triples_checked,
        brace_ok: br.passed(),
        ybe_mode: mode_name(yr.braid_mode),
        ybe_triples: yr.triples_checked,
        ybe_ok: yr.passed(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn psl2_row(q: u64, check: BraceCheck) -> Result<InstanceRow> {
    let start = Instant::now();
    let fac = pgl2_exact_factorization(&field(q)?)?;
    let r = psl2_realize(q)?;
    row(format!("PSL2({q})"), &fac.a, &fac.b, &r, check, start)
}

pub fn code1_row(name: &str, n: &FinGroup, check: BraceCheck) -> Result<InstanceRow> {
    let start = Instant::now();
    let fc = exact_factorization_search(n, &SearchConfig::default())?
        .ok_or_else(|| Error::Exhausted(format!("no solvable exact factorization of {name}")))?;
    let hol = HolGroup::new(AutGroup::inner(n)?)?;
    let r = realize_exact_factorization(&hol, &fc.a, &fc.b)?;
    row(name.into(), &fc.a, &fc.b, &r, check, start)
}

pub fn instance_rows(qs: &[u64], code1: bool, check: BraceCheck) -> Result<Vec<InstanceRow>> {
    let mut rows = qs.iter().map(|&q| psl2_row(q, check)).collect::<Result<Vec<_>>>()?;
    if code1 {
        rows.push(code1_row("PSL(3,3)", &psl3_3(), check)?);
        rows.push(code1_row("M11", &m11(), check)?);
    }
    Ok(rows)
}

const HEADER: [&str; 13] = [
    "group", "n", "|A|", "|B|", "construction", "|G|", "derived series", "regular", "prop2.2", "brace", "brace triples",
    "ybe", "ybe triples",
];

fn cells(r: &InstanceRow) -> Vec<String> {
    let series = r.derived_series.iter().map(u64::to_string).collect::<Vec<_>>().join(">");
    let verdict = |ok: bool, mode: &str| format!("{} {mode}", if ok { "pass" } else { "FAIL" });
    vec![
        r.group.clone(),
        r.n.to_string(),
        r.a_order.to_string(),
        r.b_order.to_string(),
        r.construction.clone(),
        r.g_order.to_string(),
        series,
        r.regular.to_string(),
        r.prop22.to_string(),
        verdict(r.brace_ok, &r.brace_mode),
        r.brace_triples.to_string(),
        verdict(r.ybe_ok, &r.ybe_mode),
        r.ybe_triples.to_string(),
    ]
}

pub fn render_csv(rows: &[InstanceRow]) -> String {
    let mut out = HEADER.join(",") + "\n";
    for r in rows {
        let line: Vec<String> = cells(r)
            .into_iter()
            .map(|c| if c.contains(',') { format!("\"{c}\"") } else { c })
            .collect();
        out += &(line.join(",") + "\n");
    }
    out
}

pub fn render_text(rows: &[InstanceRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| body.iter().map(|c| c[i].chars().count()).chain([HEADER[i].len()]).max().unwrap_or(0))
        .collect();
    let fmt = |cs: Vec<String>| {
        cs.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = fmt(HEADER.iter().map(|s| s.to_string()).collect()) + "\n";
    for cs in body {
        out += &(fmt(cs) + "\n");
    }
    out
}
