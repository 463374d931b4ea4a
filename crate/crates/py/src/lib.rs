use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use brace_forge::brace::{BraceCheck, BRACE_SAMPLE_TRIPLES, BRACE_SEED};
use brace_forge::cert::{factorization_certificate, realization_certificate, Certificate, SearchKind};
use brace_forge::holomorph::{AutGroup, HolGroup};
use brace_forge::matgrp::{field, pgl2_exact_factorization};
use brace_forge::named::named_group;
use brace_forge::realize::{psl2_realize, realize_exact_factorization};
use brace_forge::search::{exact_factorization_search, SearchConfig, SUBGROUP_LIMIT};
use brace_forge::Error;

create_exception!(brace_forge_py, BraceForgeError, PyException);
create_exception!(brace_forge_py, VerificationError, BraceForgeError);
create_exception!(brace_forge_py, SizeLimitError, BraceForgeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Verification { invariant, detail } => VerificationError::new_err((invariant, detail)),
        Error::SizeLimitExceeded { .. } => SizeLimitError::new_err(e.to_string()),
        Error::Schema(_) | Error::Json(_) | Error::NotPrimePower(_) | Error::ExcludedQ(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => BraceForgeError::new_err(other.to_string()),
    }
}

fn brace_check(mode: &str) -> PyResult<BraceCheck> {
    match mode {
        "auto" => Ok(BraceCheck::Auto),
        "exhaustive" => Ok(BraceCheck::Exhaustive),
        "sampled" => Ok(BraceCheck::Sampled {
            triples: BRACE_SAMPLE_TRIPLES,
            seed: BRACE_SEED,
        }),
        other => Err(PyValueError::new_err(format!("unknown brace mode {other:?}"))),
    }
}

/// Order of a built-in group such as "M11", "PSL2(7)" or "D4".
#[pyfunction]
fn group_order(name: &str) -> PyResult<u64> {
    named_group(name).map(|g| g.order()).map_err(to_py)
}

/// (|A|, |B|, |A ∩ B|, |PGL2(q)|) for the Singer-Borel factorization.
#[pyfunction]
fn pgl2_factorization(q: u64) -> PyResult<(u64, u64, u64, u64)> {
    let fac = pgl2_exact_factorization(&field(q).map_err(to_py)?).map_err(to_py)?;
    Ok((
        fac.a.order(),
        fac.b.order(),
        fac.a.intersection(&fac.b).order(),
        fac.pgl2.order(),
    ))
}

/// Realization certificate of PSL2(q) with brace and Yang-Baxter checks, as JSON.
#[pyfunction]
#[pyo3(signature = (q, brace_mode = "auto"))]
fn psl2_certificate(py: Python<'_>, q: u64, brace_mode: &str) -> PyResult<String> {
    let check = brace_check(brace_mode)?;
    py.detach(|| {
        let r = psl2_realize(q)?;
        realization_certificate(&r, Some(check), true).map(|c| c.to_json())
    })
    .map_err(to_py)
}

/// Code 1 on a built-in group. Returns the factorization and realization
/// certificates, or None when no solvable exact factorization exists.
#[pyfunction]
#[pyo3(signature = (name, max_order = SUBGROUP_LIMIT))]
fn code1(py: Python<'_>, name: &str, max_order: u64) -> PyResult<Option<(String, String)>> {
    let n = named_group(name).map_err(to_py)?;
    py.detach(|| {
        let config = SearchConfig {
            max_order,
            cache: None,
        };
        let Some(fc) = exact_factorization_search(&n, &config)? else {
            return Ok(None);
        };
        let fac = factorization_certificate(SearchKind::Code1, &n, None, &fc)?;
        let hol = HolGroup::new(AutGroup::inner(&n)?)?;
        let r = realize_exact_factorization(&hol, &fc.a, &fc.b)?;
        let real = realization_certificate(&r, None, false)?;
        Ok(Some((fac.to_json(), real.to_json())))
    })
    .map_err(to_py)
}

/// Replays a certificate. Returns (invariant, mode, checked) per entry;
/// raises VerificationError(invariant, detail) on the first failure.
#[pyfunction]
#[pyo3(signature = (text, base_dir = None))]
fn verify_certificate(
    py: Python<'_>,
    text: &str,
    base_dir: Option<PathBuf>,
) -> PyResult<Vec<(String, String, Option<u64>)>> {
    let cert = Certificate::from_json(text.as_bytes()).map_err(to_py)?;
    let base = base_dir.unwrap_or_else(|| PathBuf::from("."));
    let report = py.detach(|| cert.verify(&base)).map_err(to_py)?;
    Ok(report
        .into_iter()
        .map(|e| {
            let mode = serde_json::to_value(e.mode)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            (e.invariant, mode, e.checked)
        })
        .collect())
}

#[pymodule]
fn brace_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BraceForgeError", m.py().get_type::<BraceForgeError>())?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add("SizeLimitError", m.py().get_type::<SizeLimitError>())?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(pgl2_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(psl2_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(code1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    Ok(())
}
