//! Python bindings for `pseudogauss`.
//!
//! Reports and fits cross the boundary as JSON and come out as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use pseudogauss::catalog::{self, CatalogEntry};
use pseudogauss::chart::ChartFile;
use pseudogauss::curvature;
use pseudogauss::gaussmap;
use pseudogauss::indefinite::causal_character;
use pseudogauss::report::{self, RunConfig};
use pseudogauss::spectral::{self, ClassifyConfig};
use pseudogauss::{AmbientVector, GeomError, Immersion};

create_exception!(
    pseudogauss_py,
    GeometryError,
    PyException,
    "Numeric degeneracy in a geometric computation."
);

fn py_err(e: GeomError) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => GeometryError::new_err(format!("{}: {e}", e.kind())),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

/// Indefinite inner product of signature `(m, s)`; the last `s` axes are timelike.
#[pyclass(name = "Signature", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PySignature(pseudogauss::Signature);

#[pymethods]
impl PySignature {
    #[new]
    fn new(m: usize, s: usize) -> PyResult<Self> {
        pseudogauss::Signature::new(m, s).map(PySignature).map_err(py_err)
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn s(&self) -> usize {
        self.0.index()
    }

    fn signs(&self) -> Vec<f64> {
        self.0.signs()
    }

    fn dot(&self, v: Vec<f64>, w: Vec<f64>) -> PyResult<f64> {
        let v = AmbientVector::new(self.0, v).map_err(py_err)?;
        let w = AmbientVector::new(self.0, w).map_err(py_err)?;
        pseudogauss::indefinite::inner(&v, &w).map_err(py_err)
    }

    #[pyo3(signature = (v, tol = 1e-10))]
    fn causal_character(&self, v: Vec<f64>, tol: f64) -> PyResult<String> {
        let v = AmbientVector::new(self.0, v).map_err(py_err)?;
        Ok(serde_json::to_value(causal_character(&v, tol))
            .ok()
            .and_then(|x| x.as_str().map(str::to_string))
            .unwrap_or_default())
    }

    fn __repr__(&self) -> String {
        format!("Signature({}, {})", self.0.dim(), self.0.index())
    }
}

/// A catalog surface or a surface read from chart text.
#[pyclass(name = "Surface", frozen)]
struct PySurface {
    entry: CatalogEntry,
    source: &'static str,
}

impl PySurface {
    fn imm(&self) -> &Immersion {
        &self.entry.immersion
    }
}

#[pymethods]
impl PySurface {
    /// Catalog entry by name.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PySurface {
            entry: catalog::get(name).map_err(py_err)?,
            source: "catalog",
        })
    }

    /// Parses the chart text format printed by `pseudogauss catalog show NAME --chart`.
    #[staticmethod]
    fn from_chart(text: &str) -> PyResult<Self> {
        let cf = ChartFile::parse(text).map_err(py_err)?;
        let imm = Immersion::from_chart_file(&cf).map_err(py_err)?;
        Ok(PySurface {
            entry: CatalogEntry::from_immersion(imm),
            source: "file",
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.entry.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.imm().dim()
    }

    #[getter]
    fn index(&self) -> usize {
        self.imm().index()
    }

    #[getter]
    fn signature(&self) -> PySignature {
        PySignature(self.imm().signature())
    }

    #[getter]
    fn domain(&self) -> Vec<(f64, f64)> {
        self.imm().domain().to_vec()
    }

    fn point(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        self.check_dim(&u)?;
        Ok(self.imm().point(&u))
    }

    /// Coefficients of the Gauss map on the lexicographic basis of the exterior power.
    fn gauss_map(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        self.check_dim(&u)?;
        Ok(gaussmap::gauss_map(self.imm(), &u).map_err(py_err)?.coeffs().to_vec())
    }

    /// Laplacian of the Gauss map from the closed form.
    fn laplacian(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        self.check_dim(&u)?;
        let geo = curvature::geometry(self.imm(), &u, false).map_err(py_err)?;
        Ok(gaussmap::laplacian_formula(&geo).coeffs().to_vec())
    }

    /// Laplacian of the Gauss map by finite differences of step `step`.
    #[pyo3(signature = (u, step = 1e-3))]
    fn laplacian_numeric(&self, u: Vec<f64>, step: f64) -> PyResult<Vec<f64>> {
        self.check_dim(&u)?;
        let field = gaussmap::gauss_field(self.imm());
        let lap = gaussmap::laplace_beltrami_numeric(self.imm(), &field, &u, step).map_err(py_err)?;
        Ok(lap.coeffs().to_vec())
    }

    /// Scalar invariants at `u` as a dict.
    fn geometry(&self, py: Python<'_>, u: Vec<f64>) -> PyResult<Py<PyAny>> {
        self.check_dim(&u)?;
        let g = curvature::geometry(self.imm(), &u, false).map_err(py_err)?;
        let summary = serde_json::json!({
            "u": g.u,
            "point": g.frame.point,
            "hhat": g.hhat,
            "alpha_hat": g.alpha_hat,
            "hhat_sq": g.hhat_sq,
            "h_sq": g.h_sq,
            "scalar_curvature": g.scalar_curvature,
            "gauss_curvature": g.gauss_curvature,
            "normal_curvature_max": g.normal_curvature_max(),
            "hhat_character": g.hhat_character(1e-10),
            "shape_operators": (0..g.frame.normals.len()).map(|r| g.shape_operator(r)).collect::<Vec<_>>(),
        });
        to_py(py, &summary)
    }

    /// Spectral classification on a grid (the entry's default when omitted).
    #[pyo3(signature = (grid = None, margin = 0.1))]
    fn classify(&self, py: Python<'_>, grid: Option<Vec<usize>>, margin: f64) -> PyResult<Py<PyAny>> {
        let counts = grid.unwrap_or_else(|| self.entry.grid.clone());
        let points = self.imm().sample_grid(&counts, margin).map_err(py_err)?;
        let cfg = ClassifyConfig {
            margin,
            ..ClassifyConfig::default()
        };
        let fit = py
            .detach(|| spectral::classify(self.imm(), &points, &cfg))
            .map_err(py_err)?;
        to_py(py, &fit)
    }

    /// Full report, the same document `pseudogauss verify` prints.
    #[pyo3(signature = (grid = None, margin = None, tol_analytic = None, tol_fd = None, fd_step = None))]
    fn verify(
        &self,
        py: Python<'_>,
        grid: Option<Vec<usize>>,
        margin: Option<f64>,
        tol_analytic: Option<f64>,
        tol_fd: Option<f64>,
        fd_step: Option<f64>,
    ) -> PyResult<Py<PyAny>> {
        let mut cfg = RunConfig::for_surface(&self.entry.name);
        cfg.grid = grid;
        if let Some(v) = margin {
            cfg.margin = v;
        }
        if let Some(v) = tol_analytic {
            cfg.tol_analytic = v;
        }
        if let Some(v) = tol_fd {
            cfg.tol_fd = v;
        }
        if let Some(v) = fd_step {
            cfg.fd_step = v;
        }
        let r = py
            .detach(|| report::verify_entry(&self.entry, self.source, &cfg))
            .map_err(py_err)?;
        to_py(py, &r)
    }

    fn __repr__(&self) -> String {
        let sig = self.imm().signature();
        format!(
            "Surface('{}', n={}, index={}, ambient=E^{}_{})",
            self.entry.name,
            self.imm().dim(),
            self.imm().index(),
            sig.dim(),
            sig.index()
        )
    }
}

impl PySurface {
    fn check_dim(&self, u: &[f64]) -> PyResult<()> {
        if u.len() != self.imm().dim() {
            return Err(PyValueError::new_err(format!(
                "expected {} parameters, got {}",
                self.imm().dim(),
                u.len()
            )));
        }
        Ok(())
    }
}

/// Names of the built-in surfaces.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::names()
}

/// Report for a catalog name or chart path, as `pseudogauss verify` would produce.
#[pyfunction]
#[pyo3(signature = (surface, n = None))]
fn verify(py: Python<'_>, surface: &str, n: Option<usize>) -> PyResult<Py<PyAny>> {
    let mut cfg = RunConfig::for_surface(surface);
    cfg.n = n;
    let r = py.detach(|| report::run_verify(&cfg)).map_err(py_err)?;
    to_py(py, &r)
}

/// Least-squares fit of `Δν = λ(ν - c)` to coefficient pairs.
#[pyfunction]
fn fit_one_type(py: Python<'_>, m: usize, s: usize, samples: Vec<(Vec<f64>, Vec<f64>)>) -> PyResult<Py<PyAny>> {
    let sig = pseudogauss::Signature::new(m, s).map_err(py_err)?;
    let dim = samples.first().map_or(0, |p| p.0.len());
    let grade = (0..=m)
        .find(|&k| pseudogauss::multivector::binomial(m, k) == dim)
        .ok_or_else(|| PyValueError::new_err(format!("no exterior power of E^{m} has dimension {dim}")))?;
    let space = pseudogauss::MultivectorSpace::new(sig, grade).map_err(py_err)?;
    let pairs = samples
        .into_iter()
        .map(|(a, b)| {
            Ok((
                pseudogauss::Multivector::from_coeffs(&space, a).map_err(py_err)?,
                pseudogauss::Multivector::from_coeffs(&space, b).map_err(py_err)?,
            ))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let fit = spectral::fit_one_type(&pairs).map_err(py_err)?;
    to_py(
        py,
        &serde_json::json!({ "lambda": fit.lambda, "c": fit.c.coeffs(), "residual": fit.residual }),
    )
}

#[pymodule]
fn pseudogauss_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::VERSION)?;
    m.add("GeometryError", m.py().get_type::<GeometryError>())?;
    m.add_class::<PySignature>()?;
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(fit_one_type, m)?)?;
    Ok(())
}
