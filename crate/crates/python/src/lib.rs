use std::f64::consts::FRAC_PI_6;

use complex_susy::painleve::{
    asymptotic_decay, g_first_order, g_higher_order, piv_residual_excluding, ANALYTIC_TOL, FD_TOL, G_EXCLUSION,
};
use complex_susy::susy::{self, DEFAULT_DECAY_RADIUS};
use complex_susy::{Complex64, Domain, Frequency, Grid, LevelLabel, LevelStatus, Scheme, SeedSpec};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(complex_susy_py, SusyError, PyException, "Raised when a computation fails.");

fn err(e: complex_susy::Error) -> PyErr {
    SusyError::new_err(e.to_string())
}

fn seed_spec(seed: &str, epsilon: Complex64, nu: Complex64, freq: &Frequency) -> PyResult<SeedSpec> {
    let index = |rest: &str| -> PyResult<usize> {
        rest.parse().map_err(|_| PyValueError::new_err(format!("bad seed index in {seed:?}")))
    };
    let spec = match seed {
        "general" => SeedSpec::general(epsilon, nu),
        "ams" => SeedSpec::ams(nu, freq),
        s => match s.split_once(':') {
            Some(("bound-even", j)) => Ok(SeedSpec::bound_even(index(j)?, freq)),
            Some(("bound-odd", j)) => Ok(SeedSpec::bound_odd(index(j)?, freq)),
            _ => {
                return Err(PyValueError::new_err(format!(
                    "seed must be general, ams, bound-even:J or bound-odd:J, got {seed:?}"
                )))
            }
        },
    };
    spec.map_err(err)
}

fn scheme(name: &str) -> PyResult<Scheme> {
    match name {
        "analytic" => Ok(Scheme::Analytic),
        "finite-difference" | "fd" => Ok(Scheme::FiniteDifference),
        _ => Err(PyValueError::new_err(format!("unknown scheme {name:?}"))),
    }
}

fn grid_from(xs: Option<Vec<f64>>, fallback: Grid) -> PyResult<Grid> {
    match xs {
        Some(points) => Grid::from_points(points).map_err(err),
        None => Ok(fallback),
    }
}

/// Energy (n + 1/2) omega of oscillator level n.
#[pyfunction]
#[pyo3(signature = (n, theta = FRAC_PI_6))]
fn eigenvalue(n: usize, theta: f64) -> PyResult<Complex64> {
    let f = Frequency::new(theta).map_err(err)?;
    Ok(complex_susy::eigenvalue(n, &f))
}

/// Seed solution u(x) and u'(x).
#[pyfunction]
#[pyo3(signature = (x, seed = "general", theta = FRAC_PI_6, epsilon = Complex64::new(2.0, 1.0), nu = Complex64::new(0.8, 0.5)))]
fn seed_value(x: f64, seed: &str, theta: f64, epsilon: Complex64, nu: Complex64) -> PyResult<(Complex64, Complex64)> {
    let f = Frequency::new(theta).map_err(err)?;
    let spec = seed_spec(seed, epsilon, nu, &f)?;
    let jet = complex_susy::seed_jet(&spec, &f, x).map_err(err)?;
    Ok((jet.u, jet.du))
}

/// A chain of k Darboux transformations of the complex oscillator.
#[pyclass(name = "Chain", module = "complex_susy_py", frozen)]
struct PyChain {
    inner: complex_susy::Chain,
}

#[pymethods]
impl PyChain {
    #[new]
    #[pyo3(signature = (seed = "general", theta = FRAC_PI_6, epsilon = Complex64::new(2.0, 1.0), nu = Complex64::new(0.8, 0.5), order = 1))]
    fn new(seed: &str, theta: f64, epsilon: Complex64, nu: Complex64, order: usize) -> PyResult<Self> {
        let f = Frequency::new(theta).map_err(err)?;
        let spec = seed_spec(seed, epsilon, nu, &f)?;
        let inner = complex_susy::Chain::new(spec, f, order).map_err(err)?;
        Ok(PyChain { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn omega(&self) -> Complex64 {
        self.inner.freq().omega()
    }

    #[getter]
    fn epsilons(&self) -> Vec<Complex64> {
        self.inner.epsilons().to_vec()
    }

    #[getter]
    fn domain(&self) -> &'static str {
        match self.inner.domain() {
            Domain::FullLine => "full-line",
            Domain::HalfLine => "half-line",
        }
    }

    #[getter]
    fn deleted_levels(&self) -> Vec<usize> {
        self.inner.deleted_levels()
    }

    /// Default sampling window of this chain.
    fn default_grid(&self) -> Vec<f64> {
        self.inner.default_grid().points().to_vec()
    }

    fn potential(&self, x: f64) -> PyResult<Complex64> {
        susy::partner_potential(&self.inner, x).map_err(err)
    }

    /// Potential on many points; singular points give None.
    fn potential_on(&self, py: Python<'_>, xs: Vec<f64>) -> Vec<Option<Complex64>> {
        py.detach(|| xs.iter().map(|&x| susy::partner_potential(&self.inner, x).ok()).collect())
    }

    /// Transported oscillator state n, unnormalized.
    fn state(&self, n: usize, x: f64) -> PyResult<Complex64> {
        susy::transformed_state(&self.inner, n, x).map_err(err)
    }

    /// State created at the j-th factorization energy, unnormalized.
    fn created_state(&self, j: usize, x: f64) -> PyResult<Complex64> {
        susy::created_state(&self.inner, j, x).map_err(err)
    }

    /// Normalized density |psi|^2 of level n (or created state j) on `xs`.
    #[pyo3(signature = (n, xs = None, created = false))]
    fn density(&self, py: Python<'_>, n: usize, xs: Option<Vec<f64>>, created: bool) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let grid = grid_from(xs, self.inner.default_grid())?;
        let ratio = if created { susy::created_ratio(&self.inner, n) } else { susy::transformed_ratio(&self.inner, n) }
            .map_err(err)?;
        let (xs, vs): (Vec<f64>, Vec<Complex64>) = py.detach(|| susy::sample_state(&ratio, &grid)).into_iter().unzip();
        let density = susy::normalize_on_grid(&vs, &xs).map_err(err)?;
        Ok((xs, density))
    }

    /// (label, status, energy) for the low part of the partner spectrum.
    fn spectrum(&self) -> Vec<(String, &'static str, Complex64)> {
        susy::spectrum(&self.inner, DEFAULT_DECAY_RADIUS)
            .into_iter()
            .map(|e| {
                let label = match e.label {
                    LevelLabel::Index(n) => format!("n={n}"),
                    LevelLabel::Created(j) => format!("eps_{j}"),
                };
                let status = match e.status {
                    LevelStatus::Retained => "retained",
                    LevelStatus::Deleted => "deleted",
                    LevelStatus::Created => "created",
                };
                (label, status, e.energy)
            })
            .collect()
    }

    /// Painleve IV candidate g built from this chain. The generating state
    /// must not vanish on `xs` (the chain's window by default).
    #[pyo3(signature = (role = 2, xs = None))]
    fn piv(&self, py: Python<'_>, role: usize, xs: Option<Vec<f64>>) -> PyResult<PyPivCandidate> {
        let grid = grid_from(xs, self.inner.default_grid())?;
        let inner = py
            .detach(|| {
                if self.inner.order() == 1 {
                    g_first_order(&self.inner, role, &grid)
                } else {
                    g_higher_order(&self.inner, &grid)
                }
            })
            .map_err(err)?;
        Ok(PyPivCandidate { inner })
    }

    fn __repr__(&self) -> String {
        let eps: Vec<String> = self.inner.epsilons().iter().map(|e| format!("({}{:+}j)", e.re, e.im)).collect();
        format!(
            "Chain(order={}, theta={}, epsilons=[{}])",
            self.inner.order(),
            self.inner.freq().theta(),
            eps.join(", ")
        )
    }
}

/// Candidate solution g of PIV with parameters (a, b).
#[pyclass(name = "PivCandidate", module = "complex_susy_py", frozen)]
struct PyPivCandidate {
    inner: complex_susy::PivCandidate,
}

#[pymethods]
impl PyPivCandidate {
    #[getter]
    fn a(&self) -> Complex64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.inner.b()
    }

    #[getter]
    fn energies(&self) -> [Complex64; 3] {
        self.inner.energies()
    }

    fn g(&self, x: f64) -> PyResult<Complex64> {
        self.inner.g(x).map_err(err)
    }

    /// Largest |g| at x = +-radius.
    fn decay(&self, radius: f64) -> PyResult<f64> {
        asymptotic_decay(&self.inner, radius).map_err(err)
    }

    /// Copy with b replaced, for negative controls.
    fn with_b(&self, b: Complex64) -> Self {
        PyPivCandidate { inner: self.inner.clone().with_b(b) }
    }

    /// Copy with g multiplied by `scale`, for negative controls.
    fn with_g_scale(&self, scale: Complex64) -> Self {
        PyPivCandidate { inner: self.inner.clone().with_g_scale(scale) }
    }

    /// Residual certification as a dict.
    #[pyo3(signature = (scheme = "analytic", xs = None, g_exclusion = G_EXCLUSION, tolerance = None))]
    fn certify<'py>(
        &self,
        py: Python<'py>,
        scheme: &str,
        xs: Option<Vec<f64>>,
        g_exclusion: f64,
        tolerance: Option<f64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let s = self::scheme(scheme)?;
        let grid = grid_from(xs, self.inner.chain().default_grid())?;
        let rep = py.detach(|| piv_residual_excluding(&self.inner, &grid, s, g_exclusion)).map_err(err)?;
        let tol = tolerance.unwrap_or(match s {
            Scheme::Analytic => ANALYTIC_TOL,
            Scheme::FiniteDifference => FD_TOL,
        });
        let d = PyDict::new(py);
        d.set_item("scheme", s.name())?;
        d.set_item("max_residual", rep.max_residual)?;
        d.set_item("tolerance", tol)?;
        d.set_item("passed", rep.passes_within(tol))?;
        d.set_item("points", rep.grid.len())?;
        d.set_item("excluded", rep.excluded)?;
        d.set_item("singular", rep.singular)?;
        d.set_item("zero_count", rep.zero_count)?;
        Ok(d)
    }
}

#[pymodule]
fn complex_susy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", complex_susy::VERSION)?;
    m.add("SusyError", m.py().get_type::<SusyError>())?;
    m.add_function(wrap_pyfunction!(eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(seed_value, m)?)?;
    m.add_class::<PyChain>()?;
    m.add_class::<PyPivCandidate>()?;
    Ok(())
}
