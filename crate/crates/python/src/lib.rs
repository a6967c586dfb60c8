//! Python bindings for the quasi-Lagrange toolkit.

use pyo3::create_exception;
use pyo3::exceptions::PyArithmeticError;

create_exception!(pyquasilag, NumericalError, PyArithmeticError, "A numerical tolerance was not met.");

#[pyo3::pymodule]
mod pyquasilag {
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;
    use serde::Serialize;

    use quasilag::analysis::{check_strang_fix, fit_decay, CertifyOptions, SF_LATTICE, SF_MAX_M};
    use quasilag::cli::SchemeDocument;
    use quasilag::quasilagrange::QuasiLagrange;
    use quasilag::schemes::{SchemeId, SchemeParams, DEFAULT_PROFILE_A};
    use quasilag::Error;

    #[pymodule_export]
    use super::NumericalError;

    fn py_err(e: Error) -> PyErr {
        if e.exit_code() == 2 {
            PyValueError::new_err(e.to_string())
        } else {
            NumericalError::new_err(e.to_string())
        }
    }

    fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
        let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
    }

    fn params(scheme: &str, c: Option<f64>, a: f64, j: usize) -> PyResult<SchemeParams> {
        let id: SchemeId = scheme.parse().map_err(py_err)?;
        let mut p = SchemeParams::new(id);
        if let Some(c) = c {
            if !(c > 0.0 && c.is_finite()) {
                return Err(PyValueError::new_err(format!("c = {c} must be positive")));
            }
            if !id.needs_c() {
                return Err(PyValueError::new_err(format!("scheme {id} takes no shape parameter")));
            }
            p = p.with_c(c);
        }
        p.a = a;
        p.j = j;
        Ok(p)
    }

    /// A quasi-Lagrange function `psi` built from a named scheme.
    #[pyclass(frozen, module = "pyquasilag")]
    struct Scheme {
        params: SchemeParams,
        q: QuasiLagrange,
    }

    #[pymethods]
    impl Scheme {
        #[new]
        #[pyo3(signature = (scheme, c=None, a=DEFAULT_PROFILE_A, j=64))]
        fn new(py: Python<'_>, scheme: &str, c: Option<f64>, a: f64, j: usize) -> PyResult<Self> {
            let params = params(scheme, c, a, j)?;
            let q = py.detach(|| params.build()).map_err(py_err)?;
            Ok(Self { params, q })
        }

        #[getter]
        fn id(&self) -> &'static str {
            self.params.id.as_str()
        }

        #[getter]
        fn c(&self) -> Option<f64> {
            self.params.c
        }

        #[getter]
        fn normalization(&self) -> f64 {
            self.q.normalization
        }

        #[getter]
        fn support_radius(&self) -> Option<f64> {
            self.q.support_radius()
        }

        /// The document written by `quasilag build`, as a dict.
        fn document(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
            to_py(py, &SchemeDocument::new(&self.params, &self.q))
        }

        fn psi(&self, x: f64) -> PyResult<f64> {
            self.q.eval_psi(x).map_err(py_err)
        }

        fn psi_many(&self, py: Python<'_>, xs: Vec<f64>) -> PyResult<Vec<f64>> {
            py.detach(|| self.q.eval_psi_many(&xs)).map_err(py_err)
        }

        /// `d`-th derivative of the Fourier transform; raises at a kink.
        #[pyo3(signature = (xi, d=0))]
        fn psi_hat(&self, xi: f64, d: usize) -> PyResult<f64> {
            self.q.eval_psi_hat(xi, d).map_err(py_err)
        }

        /// One-sided limits `(order, left, right, jump)` up to `max_d`.
        #[pyo3(signature = (xi, max_d=2))]
        fn kink_report(&self, xi: f64, max_d: usize) -> PyResult<Vec<(usize, f64, f64, bool)>> {
            let r = self.q.kink_report(xi, max_d).map_err(py_err)?;
            Ok(r.into_iter().map(|k| (k.order, k.left, k.right, k.jump)).collect())
        }

        #[pyo3(signature = (max_m=SF_MAX_M, lattice=SF_LATTICE))]
        fn strang_fix(&self, max_m: usize, lattice: usize) -> i32 {
            check_strang_fix(&self.q, max_m, lattice)
        }

        #[pyo3(signature = (lo=20.0, hi=200.0, samples=1801))]
        fn decay(&self, py: Python<'_>, lo: f64, hi: f64, samples: usize) -> PyResult<Py<PyAny>> {
            let d = py.detach(|| fit_decay(&self.q, lo, hi, samples)).map_err(py_err)?;
            to_py(py, &d)
        }

        /// Full certification report, as a dict.
        #[pyo3(signature = (convergence=true))]
        fn certify(&self, py: Python<'_>, convergence: bool) -> PyResult<Py<PyAny>> {
            let opts = CertifyOptions { convergence, ..Default::default() };
            let r = py.detach(|| quasilag::analysis::certify(&self.params, &opts)).map_err(py_err)?;
            to_py(py, &r)
        }

        fn __repr__(&self) -> String {
            match self.params.c {
                Some(c) => format!("Scheme('{}', c={c})", self.params.id),
                None => format!("Scheme('{}')", self.params.id),
            }
        }
    }

    /// Identifiers accepted by `Scheme`.
    #[pyfunction]
    fn schemes() -> Vec<&'static str> {
        SchemeId::PRIMARY.into_iter().chain([SchemeId::TpsInfiniteSin3]).map(|s| s.as_str()).collect()
    }

    /// Special-function oracle checks as `(name, max_error, tolerance, passed)`.
    #[pyfunction]
    fn selftest(py: Python<'_>) -> PyResult<Vec<(String, f64, f64, bool)>> {
        let cases = py.detach(quasilag::specfun::selftest).map_err(py_err)?;
        Ok(cases.into_iter().map(|c| (c.name, c.max_error, c.tolerance, c.passed)).collect())
    }
}
