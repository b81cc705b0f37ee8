use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use ::cubic_fjrw as core;
use core::atoms::AtomTable;
use core::expr::{self, EvalError, Value};
use core::m13::{self, M13Generator};
use core::rational::{self as q, Rational};
use core::tables::Tables;
use core::threespin::{self, WGenerator};

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q::format(r),))
}

fn compute_err(e: core::Error) -> PyErr {
    PyArithmeticError::new_err(e.to_string())
}

fn load(tables_json: Option<&str>) -> PyResult<Tables> {
    match tables_json {
        None => Ok(Tables::standard()),
        Some(s) => Tables::from_json_str(s).map_err(|e| PyValueError::new_err(e.to_string())),
    }
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    q::parse(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A class on the moduli of genus-one curves with three markings.
#[pyclass(name = "M13Class", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyM13 {
    inner: m13::M13Class,
}

#[pymethods]
impl PyM13 {
    /// One of `d_irr`, `d02`, `d03`, `kps`, `node_psi`.
    #[staticmethod]
    fn generator(name: &str) -> PyResult<Self> {
        let g = M13Generator::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown generator {name}")))?;
        Ok(Self { inner: m13::M13Class::generator(g) })
    }

    #[staticmethod]
    fn scalar(value: &str) -> PyResult<Self> {
        Ok(Self { inner: m13::M13Class::scalar(parse_rational(value)?) })
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: self.inner.mul(&other.inner) }
    }

    fn __neg__(&self) -> Self {
        Self { inner: self.inner.neg() }
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        Self { inner: self.inner.pow(n) }
    }

    fn scale(&self, value: &str) -> PyResult<Self> {
        Ok(Self { inner: self.inner.scale(&parse_rational(value)?) })
    }

    /// Pairs the degree-three part against the intersection table.
    #[pyo3(signature = (tables_json=None))]
    fn degree<'py>(&self, py: Python<'py>, tables_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let t = load(tables_json)?;
        fraction(py, &t.pairing.m13_degree(&self.inner).map_err(compute_err)?)
    }

    fn pullback(&self) -> PyResult<PyW> {
        Ok(PyW { inner: threespin::st_pullback_class(&self.inner).map_err(compute_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("M13Class({})", self.inner)
    }
}

/// A class on the three-spin moduli.
#[pyclass(name = "WClass", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyW {
    inner: threespin::WClass,
}

fn w_generator(name: &str) -> Option<WGenerator> {
    use WGenerator::*;
    Some(match name {
        "Dirr0" => Dirr0,
        "Dirr1" => Dirr1,
        "Dirr2" => Dirr2,
        "D02" => D02,
        "D03" => D03,
        "D03_0" => D03_0,
        "kps" => Kps,
        "pull_irr" => PullIrr,
        _ => return None,
    })
}

#[pymethods]
impl PyW {
    /// One of `Dirr0`, `Dirr1`, `Dirr2`, `D02`, `D03`, `D03_0`, `kps`, `pull_irr`.
    #[staticmethod]
    fn generator(name: &str) -> PyResult<Self> {
        let g = w_generator(name).ok_or_else(|| PyValueError::new_err(format!("unknown generator {name}")))?;
        Ok(Self { inner: threespin::WClass::generator(g) })
    }

    #[staticmethod]
    fn s() -> Self {
        Self { inner: threespin::WClass::s() }
    }

    #[staticmethod]
    fn virtual_class() -> Self {
        Self { inner: threespin::virtual_class() }
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: self.inner.mul(&other.inner) }
    }

    fn __neg__(&self) -> Self {
        Self { inner: self.inner.neg() }
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        Self { inner: self.inner.pow(n) }
    }

    fn scale(&self, value: &str) -> PyResult<Self> {
        Ok(Self { inner: self.inner.scale(&parse_rational(value)?) })
    }

    /// Reduces self-intersections and pushes forward to the moduli of curves.
    #[pyo3(signature = (tables_json=None))]
    fn push(&self, tables_json: Option<&str>) -> PyResult<PyM13> {
        let t = load(tables_json)?;
        let reduced = threespin::reduce_self_intersections(&self.inner, &t.strata).map_err(compute_err)?;
        Ok(PyM13 { inner: threespin::st_pushforward(&reduced, &t.strata).map_err(compute_err)? })
    }

    #[pyo3(signature = (tables_json=None))]
    fn degree<'py>(&self, py: Python<'py>, tables_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let t = load(tables_json)?;
        fraction(py, &threespin::push_degree(&self.inner, &t.strata, &t.pairing).map_err(compute_err)?)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WClass({})", self.inner)
    }
}

/// A localization graph with its contribution.
#[pyclass(name = "MspGraph", frozen)]
pub struct PyGraph {
    graph: core::msp::MspGraph,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn id(&self) -> usize {
        self.graph.id
    }

    #[getter]
    fn aut(&self) -> u32 {
        self.graph.aut_order
    }

    #[getter]
    fn edges<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.graph.edges.iter().map(|e| fraction(py, &e.d)).collect()
    }

    /// Contribution with every atom left symbolic.
    fn raw_contribution(&self) -> PyResult<String> {
        Ok(core::msp::graph_contribution_raw(&self.graph).map_err(compute_err)?.to_string())
    }

    /// Contribution with known atoms substituted.
    fn contribution(&self) -> PyResult<String> {
        Ok(core::msp::graph_contribution(&self.graph, &AtomTable::standard()).map_err(compute_err)?.to_string())
    }

    fn __repr__(&self) -> String {
        let edges: Vec<String> = self.graph.edges.iter().map(|e| q::format(&e.d)).collect();
        format!("MspGraph(id={}, aut={}, edges=[{}])", self.graph.id, self.graph.aut_order, edges.join(", "))
    }
}

#[pyfunction]
#[pyo3(signature = (tables_json=None))]
fn theta_three_spin<'py>(py: Python<'py>, tables_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core::props::theta_three_spin(&load(tables_json)?).map_err(compute_err)?)
}

#[pyfunction]
fn theta_msp(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &core::msp::solve_theta().map_err(compute_err)?)
}

#[pyfunction]
#[pyo3(signature = (tables_json=None))]
fn theta_max_group<'py>(py: Python<'py>, tables_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core::props::theta_max_group(&load(tables_json)?).map_err(compute_err)?)
}

/// Evaluates an expression; numbers come back as fractions, classes as strings.
#[pyfunction]
#[pyo3(signature = (src, tables_json=None))]
fn eval_expr<'py>(py: Python<'py>, src: &str, tables_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let t = load(tables_json)?;
    match expr::eval_str(src, &t) {
        Ok(Value::Scalar(r)) => fraction(py, &r),
        Ok(v) => Ok(v.to_string().into_pyobject(py)?.into_any()),
        Err(EvalError::Parse(e)) => Err(PyValueError::new_err(format!("parse error at {e}"))),
        Err(EvalError::Compute(e)) => Err(compute_err(e)),
    }
}

#[pyfunction]
#[pyo3(signature = (tables_json=None))]
fn report_json(tables_json: Option<&str>) -> PyResult<String> {
    Ok(core::report::build(&load(tables_json)?).map_err(compute_err)?.report.to_json_string())
}

#[pyfunction]
fn tables_json() -> String {
    Tables::standard().to_json_string()
}

fn rows<'py>(py: Python<'py>, rows: &[core::props::RowTotal]) -> PyResult<Vec<(String, Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
    rows.iter().map(|r| Ok((r.label.to_string(), fraction(py, &r.coeff)?, fraction(py, &r.total)?))).collect()
}

/// Rows `(monomial, coefficient, total)` of the first breakdown table.
#[pyfunction]
fn table2(py: Python<'_>) -> PyResult<Vec<(String, Bound<'_, PyAny>, Bound<'_, PyAny>)>> {
    let b = core::props::breakdown(&Tables::standard()).map_err(compute_err)?;
    rows(py, &b.table2)
}

/// Rows `(monomial, coefficient, total)` of the second breakdown table.
#[pyfunction]
fn table3(py: Python<'_>) -> PyResult<Vec<(String, Bound<'_, PyAny>, Bound<'_, PyAny>)>> {
    let b = core::props::breakdown(&Tables::standard()).map_err(compute_err)?;
    rows(py, &b.table3)
}

#[pyfunction]
fn graphs() -> Vec<PyGraph> {
    core::msp::catalog_graphs().into_iter().map(|graph| PyGraph { graph }).collect()
}

#[pyfunction]
fn st(c: &PyM13) -> PyResult<PyW> {
    c.pullback()
}

#[pymodule]
fn cubic_fjrw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyM13>()?;
    m.add_class::<PyW>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(theta_three_spin, m)?)?;
    m.add_function(wrap_pyfunction!(theta_msp, m)?)?;
    m.add_function(wrap_pyfunction!(theta_max_group, m)?)?;
    m.add_function(wrap_pyfunction!(eval_expr, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(tables_json, m)?)?;
    m.add_function(wrap_pyfunction!(table2, m)?)?;
    m.add_function(wrap_pyfunction!(table3, m)?)?;
    m.add_function(wrap_pyfunction!(graphs, m)?)?;
    m.add_function(wrap_pyfunction!(st, m)?)?;
    Ok(())
}
