//! Python bindings. Exact values cross the boundary as strings
//! (`"p/q"` rationals, polynomial terms as `(i, j, coefficient)`), and
//! structured reports as JSON strings, so nothing loses precision on the
//! way to Python.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mwtutte_core::certify;
use mwtutte_core::graphs::{BipartiteGraph, MultiGraph};
use mwtutte_core::matroids::Matroid;
use mwtutte_core::permtutte;
use mwtutte_core::poly::BivariatePolynomial;
use mwtutte_core::rational::{parse_rational, render_exact};
use mwtutte_core::sqrt5::Sqrt5;
use mwtutte_core::{asymptotics, tutte};

fn err(e: mwtutte_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("serialization failed: {e}"))
}

fn bipartite(a_size: usize, b_size: usize, edges: Vec<(usize, usize)>) -> PyResult<BipartiteGraph> {
    BipartiteGraph::new(a_size, b_size, &edges).map_err(err)
}

fn poly_terms(p: &BivariatePolynomial) -> Vec<(u32, u32, String)> {
    p.terms().map(|(i, j, c)| (i, j, render_exact(c))).collect()
}

/// Permutation Tutte polynomial as a list of `(x_power, y_power, "p/q")`.
#[pyfunction]
fn perm_tutte_exact(
    a_size: usize,
    b_size: usize,
    edges: Vec<(usize, usize)>,
) -> PyResult<Vec<(u32, u32, String)>> {
    let h = bipartite(a_size, b_size, edges)?;
    let p = permtutte::perm_tutte_exact(&h).map_err(err)?;
    Ok(poly_terms(&p))
}

/// Monte Carlo estimate of the permutation Tutte polynomial at `(x, y)`;
/// returns `(mean, stderr)`.
#[pyfunction]
fn perm_tutte_mc(
    a_size: usize,
    b_size: usize,
    edges: Vec<(usize, usize)>,
    x: &str,
    y: &str,
    samples: u64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let h = bipartite(a_size, b_size, edges)?;
    let xr = parse_rational(x).map_err(err)?;
    let yr = parse_rational(y).map_err(err)?;
    let est = permtutte::perm_tutte_mc(&h, &xr, &yr, samples, seed).map_err(err)?;
    Ok((est.mean, est.stderr))
}

/// Tutte polynomial of a multigraph, via deletion–contraction.
#[pyfunction]
fn tutte_graph(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Vec<(u32, u32, String)>> {
    let g = MultiGraph::new(vertices, &edges).map_err(err)?;
    let p = tutte::tutte_deletion_contraction(&g).map_err(err)?;
    Ok(poly_terms(&p))
}

/// Tutte polynomial of a matroid descriptor such as `uniform:4,2`,
/// `double(uniform:3,2)`, `dual(...)`, or `sum(..., ...)`.
#[pyfunction]
fn tutte_matroid(descriptor: &str) -> PyResult<Vec<(u32, u32, String)>> {
    let m = Matroid::parse_descriptor(descriptor).map_err(err)?;
    let p = tutte::tutte_matroid(&m).map_err(err)?;
    Ok(poly_terms(&p))
}

/// Checks the spanning-tree transfer identity; returns
/// `(matches, tree_count)`.
#[pyfunction]
fn verify_transfer(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<(bool, usize)> {
    let g = MultiGraph::new(vertices, &edges).map_err(err)?;
    let report = permtutte::verify_transfer_identity(&g).map_err(err)?;
    Ok((report.matches, report.tree_count))
}

/// Per-degree inequality certificate as a JSON report string. `x` and `s`
/// accept exact rationals or the tokens `golden1` / `golden_s`.
#[pyfunction]
#[pyo3(signature = (idea, x, s, d0 = None))]
fn certify_idea(idea: u8, x: &str, s: &str, d0: Option<u64>) -> PyResult<String> {
    let d0 = d0.unwrap_or(match idea {
        3 => 44,
        4 => 100,
        _ => 11,
    });
    let quad = |tok: &str| -> Option<Sqrt5> {
        match tok {
            "golden1" => Some(Sqrt5::golden_x()),
            "golden_s" => Some(Sqrt5::golden_s()),
            _ => None,
        }
    };
    let report = if quad(x).is_some() || quad(s).is_some() {
        let lift = |tok: &str| -> PyResult<Sqrt5> {
            Ok(match quad(tok) {
                Some(q) => q,
                None => Sqrt5::from_rational(parse_rational(tok).map_err(err)?),
            })
        };
        certify::certify_idea(idea, &lift(x)?, &lift(s)?, d0).map_err(err)?
    } else {
        let xr = parse_rational(x).map_err(err)?;
        let sr = parse_rational(s).map_err(err)?;
        certify::certify_idea(idea, &xr, &sr, d0).map_err(err)?
    };
    serde_json::to_string(&report).map_err(json_err)
}

/// Full-interval circuit-family certificate as a JSON report string.
#[pyfunction]
fn certify_circuit_interval(k: &str) -> PyResult<String> {
    let kr = parse_rational(k).map_err(err)?;
    let report = certify::certify_circuit_interval(&kr).map_err(err)?;
    serde_json::to_string(&report).map_err(json_err)
}

/// Scans degrees upward at weight `s`; returns
/// `(largest_passing_degree, immediate_failure)`.
#[pyfunction]
fn degree_interval_scan(s: &str, delta: u64) -> PyResult<(u64, bool)> {
    let sr = parse_rational(s).map_err(err)?;
    let scan = certify::degree_interval_scan(&sr, delta).map_err(err)?;
    Ok((scan.d_max, scan.immediate_failure))
}

/// Circuit-length hypothesis check on a matroid descriptor, as JSON.
#[pyfunction]
fn certify_matroid(descriptor: &str, ell: u64) -> PyResult<String> {
    let m = Matroid::parse_descriptor(descriptor).map_err(err)?;
    let report = certify::certify_matroid_circuit_theorem(&m, ell).map_err(err)?;
    serde_json::to_string(&report).map_err(json_err)
}

/// Closed-form growth constant with numeric cross-check; returns
/// `(value, maximizer, branch, residual)`. `family` is `"kab"` (needs
/// `alpha`) or `"hnnn"` (needs `side`, `"x0"` or `"0x"`).
#[pyfunction]
#[pyo3(signature = (family, x, alpha = None, side = None))]
fn growth(
    family: &str,
    x: f64,
    alpha: Option<f64>,
    side: Option<&str>,
) -> PyResult<(f64, f64, String, f64)> {
    let result = match family {
        "kab" => {
            let a = alpha
                .ok_or_else(|| PyValueError::new_err("the kab family needs alpha"))?;
            asymptotics::growth_k_ab(a, x).map_err(err)?
        }
        "hnnn" => {
            let side = match side {
                Some("x0") => asymptotics::GrowthSide::XZero,
                Some("0x") => asymptotics::GrowthSide::ZeroX,
                _ => {
                    return Err(PyValueError::new_err(
                        "the hnnn family needs side 'x0' or '0x'",
                    ))
                }
            };
            asymptotics::growth_hnnn(x, side).map_err(err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown family {other:?}; use 'kab' or 'hnnn'"
            )))
        }
    };
    Ok((result.value, result.maximizer, result.branch, result.residual))
}

/// Largest root of x³ − 9x + 9, the product-inequality threshold.
#[pyfunction]
fn x0_root() -> f64 {
    asymptotics::x0_root()
}

/// Probes the product of the two axis evaluations on the leaf-decorated
/// three-part family at size `n`; JSON report (exact for 3n ≤ 11).
#[pyfunction]
#[pyo3(signature = (n, x, samples = 1_000_000, seed = 0))]
fn counterexample_probe(n: usize, x: &str, samples: u64, seed: u64) -> PyResult<String> {
    let xr = parse_rational(x).map_err(err)?;
    let report = asymptotics::counterexample_probe(n, &xr, samples, seed).map_err(err)?;
    serde_json::to_string(&report).map_err(json_err)
}

/// Exact lower bound for the axis evaluation of the permutation Tutte
/// polynomial, returned as a `"p/q"` string.
#[pyfunction]
fn theorem41_bound(
    a_size: usize,
    b_size: usize,
    edges: Vec<(usize, usize)>,
    x: &str,
    s: &str,
) -> PyResult<String> {
    let h = bipartite(a_size, b_size, edges)?;
    let xr = parse_rational(x).map_err(err)?;
    let sr = parse_rational(s).map_err(err)?;
    let v = certify::theorem41_bound(&h, &xr, &sr).map_err(err)?;
    Ok(render_exact(&v))
}

#[pymodule]
fn mwtutte(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    mwtutte_core::init_worker_pool();
    m.add_function(wrap_pyfunction!(perm_tutte_exact, m)?)?;
    m.add_function(wrap_pyfunction!(perm_tutte_mc, m)?)?;
    m.add_function(wrap_pyfunction!(tutte_graph, m)?)?;
    m.add_function(wrap_pyfunction!(tutte_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(verify_transfer, m)?)?;
    m.add_function(wrap_pyfunction!(certify_idea, m)?)?;
    m.add_function(wrap_pyfunction!(certify_circuit_interval, m)?)?;
    m.add_function(wrap_pyfunction!(degree_interval_scan, m)?)?;
    m.add_function(wrap_pyfunction!(certify_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(growth, m)?)?;
    m.add_function(wrap_pyfunction!(x0_root, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_probe, m)?)?;
    m.add_function(wrap_pyfunction!(theorem41_bound, m)?)?;
    Ok(())
}
