//! Python face of the core crate, kept thin: labels, wavefunctions, the
//! overlap kernel, spectra, and the residual check, with errors surfacing as
//! `ValueError`.

use num_complex::Complex64;
use phasekit::basis::{self, StateSpec};
use phasekit::kernel::{self, KernelArgs, DEFAULT_CLOSED_FORM_CAP};
use phasekit::operators::{self, GridAxis};
use phasekit::transform;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: phasekit::PhaseError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "ScaleParam", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyScaleParam(phasekit::ScaleParam);

#[pymethods]
impl PyScaleParam {
    #[new]
    #[pyo3(signature = (a, hbar = 1.0))]
    fn new(a: f64, hbar: f64) -> PyResult<Self> {
        phasekit::ScaleParam::new(a, hbar)
            .map(PyScaleParam)
            .map_err(err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    /// Momentum-side scale, always `hbar / (2 a)`.
    #[getter]
    fn b(&self) -> f64 {
        self.0.b()
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar()
    }

    fn __repr__(&self) -> String {
        format!("ScaleParam(a={}, hbar={})", self.0.a(), self.0.hbar())
    }
}

#[pyclass(name = "PhaseIndex", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyPhaseIndex(phasekit::PhaseIndex);

#[pymethods]
impl PyPhaseIndex {
    #[new]
    fn new(n: usize, x: f64, p: f64, scale: &PyScaleParam) -> PyResult<Self> {
        phasekit::PhaseIndex::new(n, x, p, scale.0)
            .map(PyPhaseIndex)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p
    }

    #[getter]
    fn scale(&self) -> PyScaleParam {
        PyScaleParam(self.0.scale)
    }

    /// Position and momentum dispersions `((2n+1) a^2, (2n+1) b^2)`.
    fn dispersions(&self) -> (f64, f64) {
        self.0.dispersions()
    }

    fn __repr__(&self) -> String {
        format!(
            "PhaseIndex(n={}, x={}, p={}, a={}, hbar={})",
            self.0.n,
            self.0.x,
            self.0.p,
            self.0.scale.a(),
            self.0.scale.hbar()
        )
    }
}

#[pyclass(name = "State", frozen)]
struct PyState(StateSpec);

#[pymethods]
impl PyState {
    #[staticmethod]
    #[pyo3(signature = (center, width, momentum, hbar = 1.0))]
    fn gaussian_packet(center: f64, width: f64, momentum: f64, hbar: f64) -> PyResult<Self> {
        StateSpec::gaussian_packet(center, width, momentum, hbar)
            .map(PyState)
            .map_err(err)
    }

    #[staticmethod]
    fn hermite_gaussian(index: &PyPhaseIndex) -> Self {
        PyState(StateSpec::hermite_gaussian(index.0))
    }

    /// Parse the same JSON document the command line tool accepts for
    /// `--state`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let state: StateSpec =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        state.validate().map_err(err)?;
        Ok(PyState(state))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("state serializes")
    }

    /// Position wavefunction of the state at `x`.
    fn eval(&self, x: f64) -> PyResult<Complex64> {
        basis::eval_state(&self.0, x).map_err(err)
    }
}

#[pyclass(name = "Spectrum", frozen)]
struct PySpectrum(transform::Spectrum);

#[pymethods]
impl PySpectrum {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spectrum: transform::Spectrum =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        spectrum.validate().map_err(err)?;
        Ok(PySpectrum(spectrum))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("spectrum serializes")
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes.clone()
    }

    #[getter]
    fn tail_bound(&self) -> f64 {
        self.0.tail_bound
    }

    fn norm_sum(&self) -> f64 {
        self.0.norm_sum()
    }

    /// Resum the member wavefunctions at `x`.
    fn reconstruct(&self, x: f64) -> PyResult<Complex64> {
        transform::reconstruct_sum(&self.0, x).map_err(err)
    }

    /// Move the expansion to `target` through the overlap kernel.
    fn transport(&self, target: &PyPhaseIndex) -> PyResult<Complex64> {
        kernel::kernel_transport(&self.0, &target.0, DEFAULT_CLOSED_FORM_CAP, 1e-8).map_err(err)
    }
}

#[pyfunction]
fn phi(idx: &PyPhaseIndex, x: f64) -> Complex64 {
    basis::phi(&idx.0, x)
}

#[pyfunction]
fn phi_tilde(idx: &PyPhaseIndex, p: f64) -> Complex64 {
    basis::phi_tilde(&idx.0, p)
}

#[pyfunction]
fn chi_closed(left: &PyPhaseIndex, right: &PyPhaseIndex) -> PyResult<Complex64> {
    let args = KernelArgs::new(left.0, right.0).map_err(err)?;
    kernel::chi_closed(&args).map_err(err)
}

#[pyfunction]
fn matrix_dispersion(dim: usize, scale: &PyScaleParam) -> Vec<Vec<Complex64>> {
    let m = operators::matrix_dispersion(dim, scale.0);
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

#[pyfunction]
#[pyo3(signature = (state, x, p, scale, n_max = 40, gh_order = 64))]
fn project_spectrum(
    state: &PyState,
    x: f64,
    p: f64,
    scale: &PyScaleParam,
    n_max: usize,
    gh_order: usize,
) -> PyResult<PySpectrum> {
    transform::project_spectrum(&state.0, x, p, scale.0, n_max, gh_order)
        .map(PySpectrum)
        .map_err(err)
}

/// Interior residual of the eigenvalue equation for the conjugate basis
/// field of index `n` probed at `x0`, on a lattice of the given half extent
/// (units of `a` resp. `b`) and step divisor.
#[pyfunction]
#[pyo3(signature = (n, x0, scale, extent = 6.0, divisor = 100.0))]
fn eigen_residual(n: usize, x0: f64, scale: &PyScaleParam, extent: f64, divisor: f64) -> PyResult<f64> {
    let s = scale.0;
    let xs = GridAxis::centered(x0, extent * s.a(), s.a() / divisor).map_err(err)?;
    let ps = GridAxis::centered(0.0, extent * s.b(), s.b() / divisor).map_err(err)?;
    operators::eigen_residual(n, xs, ps, s, move |big_x, big_p| {
        let idx = phasekit::PhaseIndex {
            n,
            x: big_x,
            p: big_p,
            scale: s,
        };
        basis::phi(&idx, x0).conj()
    })
    .map_err(err)
}

#[pymodule(name = "phasekit")]
fn phasekit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScaleParam>()?;
    m.add_class::<PyPhaseIndex>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(chi_closed, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_dispersion, m)?)?;
    m.add_function(wrap_pyfunction!(project_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(eigen_residual, m)?)?;
    Ok(())
}
