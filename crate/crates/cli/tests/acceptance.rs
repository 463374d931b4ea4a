//! Acceptance criteria, one line each. Every oracle here is computed
//! independently of the library routine it checks.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use brace_forge::brace::{transport_brace, transport_brace_with, yb_solution, BraceCheck, CheckMode, SkewBrace};
use brace_forge::cert::{realization_certificate, Mode};
use brace_forge::holomorph::{decompose, validate_prop22, AutGroup, HolGroup, ProductCheck};
use brace_forge::matgrp::{field, pgl2_exact_factorization};
use brace_forge::named::{named_group, sl2_3};
use brace_forge::realize::{conj_invariance_check, conj_pair_check, psl2_realize, realize_exact_factorization, RealizationCert};
use brace_forge::search::psu38::psu38_checks;
use brace_forge::search::{exact_factorization_search, solvable_subgroups, OrderFilter, SearchConfig};
use brace_forge::{FinGroup, Perm};

const QS: [u64; 7] = [4, 5, 7, 8, 9, 11, 13];
const SEED: u64 = 0xB1A5E;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_brace-forge"))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// |GL2(q)| = (q² − 1)(q² − q) over the q − 1 scalars.
fn pgl2_order_oracle(q: u64) -> u64 {
    (q * q - 1) * (q * q - q) / (q - 1)
}

fn psl2_order_oracle(q: u64) -> u64 {
    pgl2_order_oracle(q) / gcd(2, q - 1)
}

struct Shared {
    dir: tempfile::TempDir,
    realizations: Vec<(String, RealizationCert)>,
}

fn criterion1() -> Outcome {
    let mut worst = Duration::ZERO;
    for q in QS {
        let start = Instant::now();
        let fac = pgl2_exact_factorization(&field(q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        let (a, b) = (fac.a.order(), fac.b.order());
        let meet = fac.a.intersection(&fac.b).order();
        ensure(a == q + 1, || format!("q={q}: |A| = {a}"))?;
        ensure(b == q * (q - 1), || format!("q={q}: |B| = {b}"))?;
        ensure(meet == 1, || format!("q={q}: |A∩B| = {meet}"))?;
        ensure(a * b == pgl2_order_oracle(q) && fac.pgl2.order() == a * b, || format!("q={q}: |A||B| ≠ |PGL2|"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("q={q}: {elapsed:?}"))?;
    }
    Ok(format!("q in {QS:?}, slowest {worst:.2?}"))
}

fn criterion2(sh: &mut Shared) -> Outcome {
    let start = Instant::now();
    for q in QS {
        let r = psl2_realize(q).map_err(|e| format!("q={q}: {e}"))?;
        let g = r.g();
        ensure(g.is_solvable(), || format!("q={q}: G not solvable"))?;
        ensure(g.order() == psl2_order_oracle(q), || format!("q={q}: |G| = {}", g.order()))?;
        ensure(r.n() as u64 == psl2_order_oracle(q), || format!("q={q}: |N| = {}", r.n()))?;
        let cert = realization_certificate(&r, Some(BraceCheck::Auto), true).map_err(|e| format!("q={q}: {e}"))?;
        let path = sh.dir.path().join(format!("psl2-{q}.json"));
        cert.write(&path).map_err(|e| e.to_string())?;
        let (code, _, err) = run_cli(&["verify-cert", path.to_str().unwrap()]);
        ensure(code == 0, || format!("q={q}: verify-cert exit {code}: {err}"))?;
        let entry = |name: &str| cert.verification_report.iter().find(|e| e.invariant == name).cloned();
        for inv in ["regularity", "delta_isomorphic_to_g", "solvable"] {
            ensure(entry(inv).is_some_and(|e| e.passed), || format!("q={q}: {inv} missing"))?;
        }
        let axiom = entry("brace_axiom").ok_or(format!("q={q}: no brace entry"))?;
        let n = r.n() as u64;
        if q <= 9 {
            ensure(axiom.mode == Mode::Exhaustive && axiom.checked == Some(n * n * n), || {
                format!("q={q}: brace check {:?} {:?}", axiom.mode, axiom.checked)
            })?;
        } else {
            ensure(
                axiom.mode == Mode::Sampled && axiom.checked == Some(1_000_000) && axiom.seed.is_some(),
                || format!("q={q}: brace check {:?} {:?}", axiom.mode, axiom.checked),
            )?;
        }
        sh.realizations.push((format!("PSL2({q})"), r));
    }
    let total = start.elapsed();
    ensure(total <= Duration::from_secs(600), || format!("took {total:?}"))?;
    Ok(format!("7 certificates verified by the CLI, brace exhaustive q≤9, sampled 10⁶ q∈{{11,13}}, {total:.1?}"))
}

fn criterion3(sh: &mut Shared) -> Outcome {
    let cache = sh.dir.path().join("cache");
    let mut notes = Vec::new();
    for name in ["PSL(3,3)", "M11"] {
        let start = Instant::now();
        let slug = name.replace(['(', ')', ','], "");
        let res = sh.dir.path().join(format!("{slug}-code1.json"));
        let real = sh.dir.path().join(format!("{slug}-real.json"));
        let (code, out, err) = run_cli(&[
            "search", "code1", "--named", name, "--cache", cache.to_str().unwrap(), "--out", res.to_str().unwrap(),
        ]);
        ensure(code == 0 && out.contains("found: true"), || format!("{name}: search exit {code}: {err}"))?;
        let (code, _, err) =
            run_cli(&["realize", "--factorization", res.to_str().unwrap(), "--out", real.to_str().unwrap()]);
        ensure(code == 0, || format!("{name}: realize exit {code}: {err}"))?;
        let (code, _, err) = run_cli(&["verify-cert", real.to_str().unwrap()]);
        ensure(code == 0, || format!("{name}: verify exit {code}: {err}"))?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(1800), || format!("{name}: {elapsed:?}"))?;

        let n = named_group(name).map_err(|e| e.to_string())?;
        let fc = exact_factorization_search(&n, &SearchConfig::default())
            .map_err(|e| e.to_string())?
            .ok_or(format!("{name}: not found in process"))?;
        ensure(fc.a.is_solvable() && fc.b.is_solvable(), || format!("{name}: factor not solvable"))?;
        ensure(fc.a.order() * fc.b.order() == n.order() && fc.a.intersection(&fc.b).is_trivial(), || {
            format!("{name}: not exact")
        })?;
        let hol = HolGroup::new(AutGroup::inner(&n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = realize_exact_factorization(&hol, &fc.a, &fc.b).map_err(|e| e.to_string())?;
        notes.push(format!("{name} = {}·{} in {elapsed:.1?}", fc.a.order(), fc.b.order()));
        sh.realizations.push((name.into(), r));
    }
    Ok(notes.join(", "))
}

fn criterion4() -> Outcome {
    let n: u64 = 5_515_776;
    ensure(513 * 96768 == 9 * n, || "513·96768 ≠ 9·|N|".into())?;
    ensure(n / 513 == 10752 && n.is_multiple_of(513), || "|N|/513".into())?;
    ensure(n / 96768 == 57 && n.is_multiple_of(96768), || "|N|/96768".into())?;
    let checks = psu38_checks();
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    Ok(format!("{} regression constants", checks.len() + 3))
}

fn small_realizations() -> Result<Vec<(String, RealizationCert)>, String> {
    let mut out = Vec::new();
    for name in ["S3", "C6", "D4", "A4", "S4", "SL2(3)", "D6"] {
        let n = named_group(name).map_err(|e| e.to_string())?;
        let Some(fc) = exact_factorization_search(&n, &SearchConfig::default()).map_err(|e| e.to_string())? else {
            continue;
        };
        let hol = HolGroup::new(AutGroup::brute_force(&n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = realize_exact_factorization(&hol, &fc.a, &fc.b).map_err(|e| format!("{name}: {e}"))?;
        out.push((name.to_string(), r));
    }
    Ok(out)
}

fn lambda_rho(n: &FinGroup) -> Result<(HolGroup, SkewBrace, SkewBrace), String> {
    let hol = HolGroup::new(AutGroup::brute_force(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let lam = decompose(&hol, None, &hol.lambda_generators()).map_err(|e| e.to_string())?;
    let rho = decompose(&hol, None, &hol.rho_generators()).map_err(|e| e.to_string())?;
    let bl = transport_brace(&lam).map_err(|e| e.to_string())?;
    let br = transport_brace(&rho).map_err(|e| e.to_string())?;
    Ok((hol, bl, br))
}

fn criterion5(sh: &mut Shared) -> Outcome {
    let mut braces: Vec<(String, SkewBrace)> = Vec::new();
    for (name, r) in sh.realizations.iter().chain(small_realizations()?.iter()) {
        let b = transport_brace_with(&r.regular, BraceCheck::Auto).map_err(|e| format!("{name}: {e}"))?;
        braces.push((name.clone(), b));
    }
    for name in ["C6", "S3", "D4", "A4"] {
        let (_, l, r) = lambda_rho(&named_group(name).map_err(|e| e.to_string())?)?;
        braces.push((format!("λ({name})"), l));
        braces.push((format!("ρ({name})"), r));
    }
    let (mut exhaustive, mut sampled) = (0, 0);
    for (name, b) in &braces {
        let map = yb_solution(b).map_err(|e| format!("{name}: {e}"))?;
        let rep = map.report();
        ensure(rep.passed() && rep.violations == 0, || format!("{name}: {rep:?}"))?;
        let n = b.n() as u64;
        if b.n() <= 60 {
            ensure(
                rep.braid_mode == CheckMode::Exhaustive
                    && rep.triples_checked == n * n * n
                    && rep.nondegeneracy_mode == CheckMode::Exhaustive
                    && rep.nondegenerate
                    && rep.bijective == Some(true),
                || format!("{name}: {rep:?}"),
            )?;
            // σ_x and τ_y bijective, recounted from the tables
            let t = map.tables().ok_or(format!("{name}: no tables"))?;
            for x in 0..b.n() {
                let row: BTreeSet<u32> = (0..b.n()).map(|y| t.sigma[x * b.n() + y]).collect();
                let col: BTreeSet<u32> = (0..b.n()).map(|y| t.tau[y * b.n() + x]).collect();
                ensure(row.len() == b.n() && col.len() == b.n(), || format!("{name}: degenerate at {x}"))?;
            }
            exhaustive += 1;
        } else {
            ensure(
                rep.braid_mode == CheckMode::Sampled && rep.triples_checked == 100_000 && rep.seed.is_some(),
                || format!("{name}: {rep:?}"),
            )?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} braces exhaustive (n ≤ 60), {sampled} sampled with 10⁵ triples"))
}

fn criterion6() -> Outcome {
    for name in ["C6", "S3", "D4", "A4"] {
        let n = named_group(name).map_err(|e| e.to_string())?;
        ensure(name != "D4" || n.order() == 8, || "D4 must have order 8".into())?;
        let (hol, l, r) = lambda_rho(&n)?;
        let t = hol.aut().n_table();
        let k = hol.n();
        let index: HashMap<Perm, usize> = (0..k).map(|i| (t.element(i).clone(), i)).collect();
        let plus: Vec<u32> = (0..k * k)
            .map(|i| index[&t.element(i / k).compose(t.element(i % k))] as u32)
            .collect();
        let opposite: Vec<u32> = (0..k * k).map(|i| plus[(i % k) * k + i / k]).collect();
        ensure(l.add_table() == Some(&plus[..]) && r.add_table() == Some(&plus[..]), || format!("{name}: + differs"))?;
        ensure(l.circ_table() == Some(&plus[..]), || format!("{name}: λ gives ∘ ≠ +"))?;
        ensure(r.circ_table() == Some(&opposite[..]), || format!("{name}: ρ gives ∘ ≠ op(+)"))?;
    }
    Ok("C6, S3, D4, A4 table equality".into())
}

fn criterion7(sh: &Shared) -> Outcome {
    let mut count = 0;
    for (name, r) in sh.realizations.iter().chain(small_realizations()?.iter()) {
        let rep = validate_prop22(&r.regular);
        ensure(rep.passed(), || format!("{name}: {rep:?}"))?;
        if r.n() <= 500 {
            ensure(rep.product_check == ProductCheck::Exhaustive, || format!("{name}: FH = HF not exhaustive"))?;
        }
        count += 1;
    }
    Ok(format!("{count} realizations"))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = 0;
    for q in [5u64, 7, 9] {
        let f = field(q).map_err(|e| e.to_string())?;
        let aut = AutGroup::explicit_psl2(&f).map_err(|e| e.to_string())?;
        let fac = pgl2_exact_factorization(&f).map_err(|e| e.to_string())?;
        for i in 0..50 {
            let pi = aut.group().random_element(&mut rng);
            let r = conj_invariance_check(&aut, &fac.pgl2, &fac.a, &fac.b, &pi).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("q={q} #{i}: {r:?}"))?;
            ensure(r.factorization.hypothesis && r.contains_inn.hypothesis, || format!("q={q}: vacuous"))?;
            let (p1, p2) = (fac.pgl2.random_element(&mut rng), fac.pgl2.random_element(&mut rng));
            let r = conj_pair_check(&aut, &fac.pgl2, &fac.a, &fac.b, &p1, &p2).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("q={q} #{i}: {r:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} conjugations (π ∈ Aut(N)) and {total} pairs (π₁, π₂ ∈ P), seed {SEED:#x}"))
}

/// Every subgroup of a small group, by closing cyclic subgroups under joins.
struct Oracle {
    elements: Vec<Perm>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl Oracle {
    fn new(g: &FinGroup) -> Self {
        let elements = g.elements();
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let k = elements.len();
        let mul = (0..k * k).map(|i| index[&elements[i / k].compose(&elements[i % k])]).collect();
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        Oracle { elements, mul, inv }
    }

    fn k(&self) -> usize {
        self.elements.len()
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.into_iter().collect();
        set.insert(self.index_identity());
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &items {
                for &b in &items {
                    set.insert(self.mul[a * self.k() + b]);
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    fn index_identity(&self) -> usize {
        self.elements.iter().position(|p| p.is_identity()).unwrap()
    }

    fn all_subgroups(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut subs: BTreeSet<BTreeSet<usize>> = (0..self.k()).map(|x| self.closure([x])).collect();
        loop {
            let list: Vec<_> = subs.iter().cloned().collect();
            let mut grown = subs.clone();
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    if !a.is_subset(b) && !b.is_subset(a) {
                        grown.insert(self.closure(a.union(b).copied()));
                    }
                }
            }
            if grown.len() == subs.len() {
                return subs;
            }
            subs = grown;
        }
    }

    fn commutator(&self, h: &BTreeSet<usize>) -> BTreeSet<usize> {
        let k = self.k();
        let comms = h.iter().flat_map(|&a| h.iter().map(move |&b| (a, b)));
        let gens: Vec<usize> = comms
            .map(|(a, b)| self.mul[self.mul[self.inv[a] * k + self.inv[b]] * k + self.mul[a * k + b]])
            .collect();
        self.closure(gens)
    }

    fn solvable(&self, h: &BTreeSet<usize>) -> bool {
        let mut cur = h.clone();
        loop {
            if cur.len() == 1 {
                return true;
            }
            let next = self.commutator(&cur);
            if next.len() == cur.len() {
                return false;
            }
            cur = next;
        }
    }

    fn conjugacy_class(&self, h: &BTreeSet<usize>) -> BTreeSet<BTreeSet<usize>> {
        let k = self.k();
        (0..k)
            .map(|g| h.iter().map(|&x| self.mul[self.mul[g * k + x] * k + self.inv[g]]).collect())
            .collect()
    }

    fn of_group(&self, sub: &FinGroup) -> BTreeSet<usize> {
        sub.elements()
            .iter()
            .map(|p| self.elements.iter().position(|e| e == p).expect("subgroup element"))
            .collect()
    }
}

fn criterion9() -> Outcome {
    let mut corpus: Vec<(String, FinGroup)> = Vec::new();
    for name in ["C1", "C12", "C30", "C64", "D3", "D4", "D6", "D10", "D12", "D50", "D100", "S4", "A4", "A5", "D5", "V4", "C5", "C3", "Q8"] {
        corpus.push((name.into(), named_group(name).map_err(|e| e.to_string())?));
    }
    corpus.push(("SL2(3)".into(), sl2_3()));
    let mut classes_total = 0;
    for (name, g) in &corpus {
        ensure(g.order() <= 200, || format!("{name} too large"))?;
        let o = Oracle::new(g);
        let solvable: Vec<BTreeSet<usize>> = o.all_subgroups().into_iter().filter(|h| o.solvable(h)).collect();
        let expected: BTreeSet<BTreeSet<BTreeSet<usize>>> = solvable.iter().map(|h| o.conjugacy_class(h)).collect();
        let list = solvable_subgroups(g, OrderFilter::All).map_err(|e| format!("{name}: {e}"))?;
        let found: Vec<BTreeSet<BTreeSet<usize>>> =
            list.classes.iter().map(|c| o.conjugacy_class(&o.of_group(&c.rep))).collect();
        let found_set: BTreeSet<_> = found.iter().cloned().collect();
        ensure(found.len() == found_set.len(), || format!("{name}: duplicate classes"))?;
        ensure(found_set == expected, || {
            format!("{name}: {} classes found, {} expected", found_set.len(), expected.len())
        })?;
        for c in &list.classes {
            ensure(c.conjugates.len() == o.conjugacy_class(&o.of_group(&c.rep)).len(), || {
                format!("{name}: class size of order-{} rep", c.order())
            })?;
        }
        classes_total += expected.len();
    }
    Ok(format!("{} groups, {classes_total} classes", corpus.len()))
}

fn main() {
    let mut sh = Shared {
        dir: tempfile::tempdir().expect("tempdir"),
        realizations: Vec::new(),
    };
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut record = |k: u32, label: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("[{tag}] criterion {k}: {label}: {detail} ({elapsed:.1?})");
        results.push((k, label, outcome, elapsed));
    };
    record(1, "PGL2 exact factorizations", &mut criterion1);
    record(2, "PSL2 solvable realizations", &mut || criterion2(&mut sh));
    record(3, "Code 1 on PSL(3,3) and M11", &mut || criterion3(&mut sh));
    record(4, "PSU3(8) regression constants", &mut criterion4);
    record(5, "Yang-Baxter solutions", &mut || criterion5(&mut sh));
    record(6, "lambda/rho transport", &mut criterion6);
    record(7, "holomorph pair validator", &mut || criterion7(&sh));
    record(8, "seeded conjugations", &mut criterion8);
    record(9, "solvable subgroups against brute force", &mut criterion9);
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
