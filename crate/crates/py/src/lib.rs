//! Python bindings for the dihedral Dunkl/intertwining toolkit: the main
//! types (groups, bivariate polynomials, weight families) and operations
//! (special functions, quadrature, Dunkl operators, intertwining paths,
//! kernels, verification suites) under the module name `dunkl_py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dunkl::dihedral;
use dunkl::harmonics;
use dunkl::operators::{self, RidgeFunction, RidgeProfile};
use dunkl::polyring::{BiPoly, UniPoly};
use dunkl::quadrature::{self, MultiIndex};
use dunkl::sieved::{self, FamilyTag, WeightFamily};
use dunkl::verify::{self, VerifyOptions};

fn to_py_err(err: dunkl::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn family(tag: &str, k: usize, lambda: f64) -> PyResult<WeightFamily> {
    let tag = FamilyTag::parse(tag).map_err(to_py_err)?;
    WeightFamily::new(tag, k, lambda).map_err(to_py_err)
}

/// The dihedral group `I_k`: roots, reflections and polygon vertices.
#[pyclass(name = "DihedralGroup")]
struct PyDihedralGroup {
    inner: dihedral::DihedralGroup,
}

#[pymethods]
impl PyDihedralGroup {
    #[new]
    fn new(k: usize) -> PyResult<Self> {
        Ok(PyDihedralGroup {
            inner: dihedral::DihedralGroup::new(k).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn root(&self, j: usize) -> (f64, f64) {
        let v = self.inner.root(j);
        (v[0], v[1])
    }

    fn reflect(&self, j: usize, x1: f64, x2: f64) -> (f64, f64) {
        let y = self.inner.reflect(j, [x1, x2]);
        (y[0], y[1])
    }

    fn root_pairing(&self, j: usize, x1: f64, x2: f64) -> f64 {
        self.inner.root_pairing(j, [x1, x2])
    }

    fn vertex(&self, p: usize) -> (f64, f64) {
        let v = self.inner.vertex(p);
        (v.point[0], v.point[1])
    }

    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.inner.conjugacy_classes()
    }
}

/// Dense bivariate polynomial; `coeffs()[i][j]` multiplies `x1^i x2^j`.
#[pyclass(name = "BiPolynomial", skip_from_py_object)]
#[derive(Clone)]
struct PyBiPolynomial {
    inner: BiPoly,
}

#[pymethods]
impl PyBiPolynomial {
    #[new]
    fn new(grid: Vec<Vec<f64>>) -> Self {
        PyBiPolynomial {
            inner: BiPoly::from_grid_rows(&grid),
        }
    }

    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.inner.eval([x1, x2])
    }

    fn coeffs(&self) -> Vec<Vec<f64>> {
        self.inner.to_grid()
    }

    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn max_abs_coeff(&self) -> f64 {
        self.inner.max_abs_coeff()
    }

    fn __repr__(&self) -> String {
        format!("BiPolynomial(degree={:?})", self.inner.degree())
    }
}

#[pyfunction]
fn chebyshev_t(n: i64, t: f64) -> f64 {
    dunkl::classical::chebyshev_t(n, t)
}

#[pyfunction]
fn chebyshev_u(n: i64, t: f64) -> f64 {
    dunkl::classical::chebyshev_u(n, t)
}

#[pyfunction]
fn gegenbauer(n: i64, lam: f64, t: f64) -> f64 {
    dunkl::classical::gegenbauer(n, lam, t)
}

#[pyfunction]
fn jacobi(n: i64, alpha: f64, beta: f64, t: f64) -> f64 {
    dunkl::classical::jacobi(n, alpha, beta, t)
}

#[pyfunction]
fn generalized_gegenbauer(n: i64, lam: f64, mu: f64, t: f64) -> f64 {
    dunkl::classical::generalized_gegenbauer(n, lam, mu, t)
}

/// Normalizing constant of the intertwining measure (reciprocal simplex mass).
#[pyfunction]
fn a_lambda_k(k: usize, lam: f64) -> PyResult<f64> {
    dunkl::classical::a_lambda_k(k, lam).map_err(to_py_err)
}

/// Gauss-Jacobi nodes and weights for `(1-t)^alpha (1+t)^beta` on `[-1, 1]`.
#[pyfunction]
fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let rule = quadrature::gauss_jacobi(n, alpha, beta).map_err(to_py_err)?;
    Ok((rule.nodes, rule.weights))
}

#[pyfunction]
fn dirichlet_moment(k: usize, lam: f64, m: Vec<usize>) -> PyResult<f64> {
    quadrature::dirichlet_moment(k, lam, &MultiIndex(m)).map_err(to_py_err)
}

/// Seeded i.i.d. draws from `Dirichlet(lam+1, lam, ..., lam)`, returned as
/// `(u_1, ..., u_{k-1})` rows.
#[pyfunction]
fn dirichlet_sample(k: usize, lam: f64, seed: u64, count: usize) -> PyResult<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    quadrature::dirichlet_sample(k, lam, &mut rng, count).map_err(to_py_err)
}

#[pyfunction]
fn sieved_eval(tag: &str, k: usize, lam: f64, n: usize, t: f64) -> PyResult<f64> {
    Ok(sieved::sieved_eval(&family(tag, k, lam)?, n, t))
}

#[pyfunction]
fn sieved_norm(tag: &str, k: usize, lam: f64, n: usize) -> PyResult<f64> {
    Ok(sieved::sieved_norm(&family(tag, k, lam)?, n))
}

#[pyfunction]
fn sieved_norm_normalized(tag: &str, k: usize, lam: f64, n: usize) -> PyResult<f64> {
    Ok(sieved::sieved_norm_normalized(&family(tag, k, lam)?, n))
}

#[pyfunction]
fn poisson_closed_interval(
    tag: &str,
    k: usize,
    lam: f64,
    p: usize,
    t: f64,
    r: f64,
) -> PyResult<f64> {
    sieved::poisson_closed(&family(tag, k, lam)?, p, t, r).map_err(to_py_err)
}

#[pyfunction]
fn poisson_series_interval(
    tag: &str,
    k: usize,
    lam: f64,
    t: f64,
    s: f64,
    r: f64,
    terms: usize,
) -> PyResult<(f64, f64)> {
    let eval = sieved::poisson_series_interval(&family(tag, k, lam)?, t, s, r, terms)
        .map_err(to_py_err)?;
    Ok((eval.value, eval.tail_bound))
}

#[pyfunction]
fn poisson_closed_circle(
    k: usize,
    lam: f64,
    p: usize,
    x1: f64,
    x2: f64,
    r: f64,
) -> PyResult<f64> {
    harmonics::poisson_closed_vertex(k, lam, p, [x1, x2], r).map_err(to_py_err)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn poisson_series_circle(
    k: usize,
    lam: f64,
    x1: f64,
    x2: f64,
    y1: f64,
    y2: f64,
    r: f64,
    terms: usize,
) -> PyResult<(f64, f64)> {
    let eval =
        harmonics::poisson_series(k, lam, [x1, x2], [y1, y2], r, terms).map_err(to_py_err)?;
    Ok((eval.value, eval.tail_bound))
}

#[pyfunction]
fn reproducing_kernel(
    n: usize,
    k: usize,
    lam: f64,
    x1: f64,
    x2: f64,
    y1: f64,
    y2: f64,
) -> PyResult<f64> {
    harmonics::reproducing_kernel_n(n, k, lam, [x1, x2], [y1, y2]).map_err(to_py_err)
}

#[pyfunction]
fn h_norm(n: usize, i: usize, k: usize, lam: f64) -> PyResult<f64> {
    harmonics::h_norm(n, i, k, lam).map_err(to_py_err)
}

/// The h-harmonic basis element as a homogeneous bivariate polynomial.
#[pyfunction]
fn y_basis(n: usize, i: usize, k: usize, lam: f64) -> PyResult<PyBiPolynomial> {
    let harmonic = harmonics::y_basis(n, i, k, lam).map_err(to_py_err)?;
    Ok(PyBiPolynomial { inner: harmonic.poly })
}

#[pyfunction]
fn dunkl_apply(k: usize, lam: f64, axis: usize, poly: &PyBiPolynomial) -> PyResult<PyBiPolynomial> {
    let group = dihedral::DihedralGroup::new(k).map_err(to_py_err)?;
    let inner = operators::dunkl_apply(&group, axis, lam, &poly.inner).map_err(to_py_err)?;
    Ok(PyBiPolynomial { inner })
}

#[pyfunction]
fn h_laplacian(k: usize, lam: f64, poly: &PyBiPolynomial) -> PyResult<PyBiPolynomial> {
    let group = dihedral::DihedralGroup::new(k).map_err(to_py_err)?;
    let inner = operators::h_laplacian(&group, lam, &poly.inner).map_err(to_py_err)?;
    Ok(PyBiPolynomial { inner })
}

fn ridge(k: usize, p: usize, profile: Vec<f64>) -> PyResult<RidgeFunction> {
    let group = dihedral::DihedralGroup::new(k).map_err(to_py_err)?;
    Ok(RidgeFunction::new(
        &group,
        p,
        RidgeProfile::poly(UniPoly::from_coeffs(profile)),
    ))
}

/// Exact moment path for `V_lambda F_p`; `profile` lists the coefficients of
/// the ridge profile in the monomial basis.
#[pyfunction]
fn intertwine_exact(k: usize, lam: f64, p: usize, profile: Vec<f64>) -> PyResult<PyBiPolynomial> {
    let inner =
        operators::intertwine_ridge_exact(&ridge(k, p, profile)?, lam).map_err(to_py_err)?;
    Ok(PyBiPolynomial { inner })
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn intertwine_quad(
    k: usize,
    lam: f64,
    p: usize,
    profile: Vec<f64>,
    x1: f64,
    x2: f64,
    order: usize,
) -> PyResult<f64> {
    operators::intertwine_ridge_quad(&ridge(k, p, profile)?, lam, [x1, x2], order)
        .map_err(to_py_err)
}

/// Monte Carlo path: returns `(estimate, standard_error)`.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn intertwine_monte_carlo(
    k: usize,
    lam: f64,
    p: usize,
    profile: Vec<f64>,
    x1: f64,
    x2: f64,
    samples: usize,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mc = operators::intertwine_ridge_monte_carlo(
        &ridge(k, p, profile)?,
        lam,
        [x1, x2],
        samples,
        &mut rng,
    )
    .map_err(to_py_err)?;
    Ok((mc.value, mc.std_err))
}

/// Runs a verification suite; returns `(passed, json_report)`.
#[pyfunction]
fn run_verify(suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let opts = VerifyOptions { seed, ..Default::default() };
    let report = verify::run_verify(suite, &opts).map_err(to_py_err)?;
    Ok((report.pass, report.to_json()))
}

#[pymodule]
fn dunkl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDihedralGroup>()?;
    m.add_class::<PyBiPolynomial>()?;
    m.add_function(wrap_pyfunction!(chebyshev_t, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_u, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_gegenbauer, m)?)?;
    m.add_function(wrap_pyfunction!(a_lambda_k, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_moment, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_sample, m)?)?;
    m.add_function(wrap_pyfunction!(sieved_eval, m)?)?;
    m.add_function(wrap_pyfunction!(sieved_norm, m)?)?;
    m.add_function(wrap_pyfunction!(sieved_norm_normalized, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_closed_interval, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_series_interval, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_closed_circle, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_series_circle, m)?)?;
    m.add_function(wrap_pyfunction!(reproducing_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(h_norm, m)?)?;
    m.add_function(wrap_pyfunction!(y_basis, m)?)?;
    m.add_function(wrap_pyfunction!(dunkl_apply, m)?)?;
    m.add_function(wrap_pyfunction!(h_laplacian, m)?)?;
    m.add_function(wrap_pyfunction!(intertwine_exact, m)?)?;
    m.add_function(wrap_pyfunction!(intertwine_quad, m)?)?;
    m.add_function(wrap_pyfunction!(intertwine_monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
