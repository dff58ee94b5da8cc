//! Python bindings. Structures and sequences are passed as JSON strings in
//! the same formats the command-line tool reads; every function returns a
//! report as a JSON string.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use transring::cli::{
    filter_sections, localize_sections, omega_sections, seq_sections, verify_sections, Extension, ModeArg,
};
use transring::descriptor::{parse_json, parse_structure};
use transring::report::{render_text as render, Report, Section};
use transring::semitransition::SeqClass;
use transring::seq::{NIdeal, PiecewiseSeq};
use transring::suite::{suite as run_suite, Fault, SuiteConfig};

fn value_error(e: transring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn report(command: &str, config: serde_json::Value, seed: u64, sections: transring::Result<Vec<Section>>) -> PyResult<String> {
    let mut r = Report::new(command, &config, seed);
    for s in sections.map_err(value_error)? {
        r.push(s);
    }
    Ok(r.to_json())
}

#[pyfunction]
#[pyo3(signature = (structure, mode = "exhaustive", bound = 3, pairs = 500, seed = 2024, transitional = false))]
fn verify(structure: &str, mode: &str, bound: u32, pairs: u64, seed: u64, transitional: bool) -> PyResult<String> {
    let desc = parse_structure(structure).map_err(value_error)?;
    let m = match mode {
        "exhaustive" => ModeArg::Exhaustive,
        "sample" => ModeArg::Sample,
        other => return Err(PyValueError::new_err(format!("mode must be exhaustive or sample, not {other:?}"))),
    };
    let config = serde_json::json!({"command": "verify", "structure": desc, "mode": m, "bound": bound, "pairs": pairs, "transitional": transitional, "seed": seed});
    report("verify", config, seed, verify_sections(&desc, m, bound, pairs, transitional, seed))
}

#[pyfunction]
#[pyo3(signature = (structure, check = "all"))]
fn filters(structure: &str, check: &str) -> PyResult<String> {
    let desc = parse_structure(structure).map_err(value_error)?;
    let config = serde_json::json!({"command": "filters", "structure": desc, "check": check});
    report("filters", config, 0, filter_sections(&desc, check))
}

#[pyfunction]
#[pyo3(signature = (structure, pairs = 500, seed = 2024))]
fn localize(structure: &str, pairs: u64, seed: u64) -> PyResult<String> {
    let desc = parse_structure(structure).map_err(value_error)?;
    let config = serde_json::json!({"command": "localize", "structure": desc, "pairs": pairs, "seed": seed});
    report("localize", config, seed, localize_sections(&desc, pairs, seed))
}

#[pyfunction]
#[pyo3(signature = (ideal = "density", sequence = None, pairs = 500, units = 200, seed = 2024, eventually_constant = false))]
fn seq(ideal: &str, sequence: Option<&str>, pairs: u64, units: u64, seed: u64, eventually_constant: bool) -> PyResult<String> {
    let i: NIdeal = ideal.parse().map_err(value_error)?;
    let x: Option<PiecewiseSeq> = sequence.map(parse_json).transpose().map_err(value_error)?;
    let class = if eventually_constant { SeqClass::EventuallyConstant } else { SeqClass::Piecewise };
    let config = serde_json::json!({"command": "seq", "ideal": i, "sequence": x, "pairs": pairs, "units": units, "seed": seed, "class": class});
    report("seq", config, seed, seq_sections(i, class, x.as_ref(), pairs, units, seed))
}

/// `extend` is `(sigma, phi, target)` with σ and φ as JSON index lists.
#[pyfunction]
#[pyo3(signature = (structure, extend = None))]
fn omega(structure: &str, extend: Option<(String, String, String)>) -> PyResult<String> {
    let desc = parse_structure(structure).map_err(value_error)?;
    let ext = match &extend {
        Some((sigma, phi, target)) => Some(Extension {
            sigma: parse_json(sigma).map_err(value_error)?,
            phi: parse_json(phi).map_err(value_error)?,
            target: parse_structure(target).map_err(value_error)?,
        }),
        None => None,
    };
    let config = serde_json::json!({"command": "omega", "structure": desc, "extend": extend});
    report("omega", config, 0, omega_sections(&desc, ext.as_ref()))
}

#[pyfunction]
#[pyo3(signature = (name = "paper-suite", seed = 2024, fault = None))]
fn suite(name: &str, seed: u64, fault: Option<&str>) -> PyResult<String> {
    let fault: Option<Fault> = fault.map(str::parse).transpose().map_err(value_error)?;
    let cfg = SuiteConfig { name: name.into(), seed, fault, timing: false };
    Ok(run_suite(&cfg).map_err(value_error)?.to_json())
}

#[pyfunction]
fn render_text(report: &str) -> PyResult<String> {
    let v: serde_json::Value = serde_json::from_str(report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(render(&v))
}

#[pymodule]
#[pyo3(name = "transring")]
fn transring_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(filters, m)?)?;
    m.add_function(wrap_pyfunction!(localize, m)?)?;
    m.add_function(wrap_pyfunction!(seq, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    m.add_function(wrap_pyfunction!(render_text, m)?)?;
    Ok(())
}
