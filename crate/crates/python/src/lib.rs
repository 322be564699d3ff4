//! Python bindings for the `hanoi-trees` crate.

use hanoi_trees::counting::{count_f_closed as f_closed, count_fgh as fgh, count_t as t_count};
use hanoi_trees::model::{
    Configuration as CoreConfiguration, GameParams, Move, Position, TreeLayout,
};
use hanoi_trees::oracle::{self, OracleError, SearchOptions, TaskSpec};
use hanoi_trees::solvers::{solve_f, solve_mary, solve_t, standard_roles};
use hanoi_trees::trace::Trace as CoreTrace;
use hanoi_trees::verifier::{self, Verdict};
use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(m: usize, n: u32, places: usize) -> PyResult<GameParams> {
    GameParams::new(m, n, places).map_err(value_error)
}

fn layout_from(pairs: Vec<(usize, u32)>) -> Vec<TreeLayout> {
    pairs
        .into_iter()
        .map(|(p, h)| TreeLayout::new(p, h))
        .collect()
}

fn layout_to(layout: &[TreeLayout]) -> Vec<(usize, u32)> {
    layout.iter().map(|l| (l.place, l.height)).collect()
}

/// A configuration of stack trees on numbered places.
#[pyclass(module = "hanoi_trees_py", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Configuration {
    inner: CoreConfiguration,
}

impl Configuration {
    fn parse_move(&self, from: &str, to: &str) -> PyResult<Move> {
        let p = self.inner.params();
        Ok(Move::new(
            Position::parse(from, p).map_err(value_error)?,
            Position::parse(to, p).map_err(value_error)?,
        ))
    }
}

#[pymethods]
impl Configuration {
    /// `layout` lists `(place, height)` pairs of full trees; empty means no nodes.
    #[new]
    #[pyo3(signature = (m, n, places, layout=Vec::new()))]
    fn new(m: usize, n: u32, places: usize, layout: Vec<(usize, u32)>) -> PyResult<Self> {
        let inner = CoreConfiguration::initial(params(m, n, places)?, &layout_from(layout))
            .map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.params().m
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.params().n
    }

    #[getter]
    fn places(&self) -> usize {
        self.inner.params().places
    }

    fn legal_moves(&self) -> Vec<(String, String)> {
        let m = self.inner.params().m;
        self.inner
            .legal_moves()
            .iter()
            .map(|mv| (mv.from.format(m), mv.to.format(m)))
            .collect()
    }

    /// Returns the configuration after moving; raises `ValueError` naming the
    /// violated rule.
    fn apply_move(&self, from: &str, to: &str) -> PyResult<Self> {
        let mv = self.parse_move(from, to)?;
        let inner = self
            .inner
            .apply_move(&mv)
            .map_err(|e| PyValueError::new_err(format!("{}: {e}", e.kind())))?;
        Ok(Self { inner })
    }

    fn nodes(&self) -> Vec<(String, u32)> {
        let m = self.inner.params().m;
        self.inner
            .nodes()
            .into_iter()
            .map(|(p, s)| (p.format(m), s))
            .collect()
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    /// `(place, height)` pairs if every place holds a full tree or nothing.
    fn layout(&self) -> Option<Vec<(usize, u32)>> {
        self.inner.layout().map(|l| layout_to(&l))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let p = self.inner.params();
        format!(
            "Configuration(m={}, n={}, places={}, nodes={})",
            p.m,
            p.n,
            p.places,
            self.inner.node_count()
        )
    }
}

/// A move sequence with its starting layout.
#[pyclass(module = "hanoi_trees_py", skip_from_py_object)]
#[derive(Clone)]
struct Trace {
    inner: CoreTrace,
}

#[pymethods]
impl Trace {
    #[staticmethod]
    fn from_jsonl(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: CoreTrace::from_jsonl(text).map_err(value_error)?,
        })
    }

    fn to_jsonl(&self) -> String {
        self.inner.to_jsonl()
    }

    fn moves(&self) -> Vec<(String, String)> {
        let m = self.inner.params.m;
        self.inner
            .moves
            .iter()
            .map(|mv| (mv.from.format(m), mv.to.format(m)))
            .collect()
    }

    fn initial_configuration(&self) -> PyResult<Configuration> {
        Ok(Configuration {
            inner: self.inner.initial_configuration().map_err(value_error)?,
        })
    }

    fn final_configuration(&self) -> PyResult<Option<Configuration>> {
        match self.inner.final_configuration() {
            None => Ok(None),
            Some(c) => Ok(Some(Configuration {
                inner: c.map_err(value_error)?,
            })),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Splits a position such as `"2LR"` or `"1.3.1"` into place and leg indices.
#[pyfunction]
#[pyo3(signature = (text, m=2))]
fn parse_position(text: &str, m: usize) -> PyResult<(usize, Vec<usize>)> {
    let p = Position::parse_unchecked(text, m).map_err(value_error)?;
    Ok((p.place_index(), p.path().to_vec()))
}

#[pyfunction]
#[pyo3(signature = (place, path, m=2))]
fn format_position(place: usize, path: Vec<usize>, m: usize) -> PyResult<String> {
    if place == 0 || path.iter().any(|&leg| leg >= m) {
        return Err(PyValueError::new_err(
            "place must be positive and legs below m",
        ));
    }
    Ok(Position::new(place, path).format(m))
}

/// Solution trace for `algo` in `{"t", "f", "mary"}`, ending with the final layout.
#[pyfunction]
#[pyo3(signature = (algo, n, m=2, source=1, target=2))]
fn solve(algo: &str, n: u32, m: usize, source: usize, target: usize) -> PyResult<Trace> {
    let roles = standard_roles(m, source, target).map_err(value_error)?;
    let trace = match algo {
        "t" | "f" if m != 2 => return Err(PyValueError::new_err("t and f are binary; use mary")),
        "t" => solve_t(
            n,
            &roles.source,
            &roles.target,
            &roles.via[0],
            &roles.via[1],
        ),
        "f" => solve_f(
            n,
            &roles.source,
            &roles.target,
            &roles.via[0],
            &roles.via[1],
        ),
        "mary" => solve_mary(n, m, &roles),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown algorithm {other:?}"
            )))
        }
    }
    .map_err(value_error)?;
    let final_layout = if n == 0 {
        Vec::new()
    } else {
        vec![TreeLayout::new(target, n)]
    };
    Ok(Trace {
        inner: trace.with_final(final_layout),
    })
}

#[pyfunction]
fn count_t(n: u32) -> BigUint {
    t_count(n)
}

/// `(f_n, g_n, h_n)` as exact integers.
#[pyfunction]
#[pyo3(signature = (n, m=2))]
fn count_fgh(n: u32, m: usize) -> PyResult<(BigUint, BigUint, BigUint)> {
    if m == 0 {
        return Err(PyValueError::new_err("m must be at least 1"));
    }
    let c = fgh(n, m);
    Ok((c.f, c.g, c.h))
}

#[pyfunction]
#[pyo3(signature = (n, m=2))]
fn count_f_closed(n: u32, m: usize) -> PyResult<BigUint> {
    f_closed(n, m).map_err(value_error)
}

/// Minimal move count and a witness for task `"f"`, `"g"` or `"h"`.
#[pyfunction]
#[pyo3(signature = (task, n, m=2, restricted=false, memory_mb=2048))]
fn shortest(
    py: Python<'_>,
    task: &str,
    n: u32,
    m: usize,
    restricted: bool,
    memory_mb: usize,
) -> PyResult<(usize, Trace)> {
    let spec = match task {
        "f" => TaskSpec::f_task(m, n),
        "g" => TaskSpec::g_task(m, n),
        "h" => TaskSpec::h_task(m, n),
        other => return Err(PyValueError::new_err(format!("unknown task {other:?}"))),
    }
    .map_err(value_error)?;
    let options = SearchOptions::with_budget_mb(memory_mb);
    let result = py
        .detach(|| {
            if restricted {
                oracle::shortest_restricted(&spec, &options)
            } else {
                oracle::shortest(&spec, &options)
            }
        })
        .map_err(|e| match e {
            OracleError::MemoryBudgetExceeded { .. } => PyMemoryError::new_err(e.to_string()),
            OracleError::GoalUnreachable { .. } => value_error(e),
        })?;
    Ok((
        result.count,
        Trace {
            inner: result.witness,
        },
    ))
}

fn verdict_pair(verdict: Verdict) -> (bool, Option<String>) {
    match verdict {
        Verdict::Accept => (true, None),
        Verdict::Reject(r) => (false, Some(r.to_string())),
    }
}

/// `(accepted, reason)`. Without `expected_final` the trace's own final
/// line is used, or only legality is checked if it has none.
#[pyfunction]
#[pyo3(signature = (trace, expected_final=None))]
fn check_trace(
    trace: &Trace,
    expected_final: Option<&Configuration>,
) -> PyResult<(bool, Option<String>)> {
    let initial = trace.inner.initial_configuration().map_err(value_error)?;
    let expected = match expected_final {
        Some(c) => Some(c.inner.clone()),
        None => trace
            .inner
            .final_configuration()
            .transpose()
            .map_err(value_error)?,
    };
    let verdict = match expected {
        Some(goal) => verifier::check_trace(&initial, &trace.inner, &goal).map_err(value_error)?,
        None => match verifier::replay(&initial, &trace.inner.moves) {
            Ok(_) => Verdict::Accept,
            Err(r) => Verdict::Reject(r),
        },
    };
    Ok(verdict_pair(verdict))
}

#[pyfunction]
fn check_ancestor(trace: &Trace) -> PyResult<(bool, Option<String>)> {
    let initial = trace.inner.initial_configuration().map_err(value_error)?;
    Ok(verdict_pair(
        verifier::check_ancestor(&initial, &trace.inner).map_err(value_error)?,
    ))
}

#[pymodule]
fn hanoi_trees_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Configuration>()?;
    m.add_class::<Trace>()?;
    m.add_function(wrap_pyfunction!(parse_position, m)?)?;
    m.add_function(wrap_pyfunction!(format_position, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(count_t, m)?)?;
    m.add_function(wrap_pyfunction!(count_fgh, m)?)?;
    m.add_function(wrap_pyfunction!(count_f_closed, m)?)?;
    m.add_function(wrap_pyfunction!(shortest, m)?)?;
    m.add_function(wrap_pyfunction!(check_trace, m)?)?;
    m.add_function(wrap_pyfunction!(check_ancestor, m)?)?;
    Ok(())
}
