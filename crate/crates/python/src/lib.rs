//! Python bindings: kernels, scenes and the main limit operations.

use jumplab::harness::experiment::{
    diagnostic_sweep, run_experiment, ExperimentConfig, KernelChoice, PointSpec,
};
use jumplab::harness::scene::SceneSpec;
use jumplab::kernel::{check_cz_bounds, sphere_volume, Kernel as CoreKernel};
use jumplab::measure::{default_radii, RadonMeasure};
use jumplab::operators::{
    self, jump_constant_numeric, ExtrapolationConfig, LimitResult, Side,
};
use jumplab::vec3::Vec3;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_vec3(coords: &[f64]) -> PyResult<Vec3> {
    if coords.len() < 2 || coords.len() > 3 {
        return Err(PyValueError::new_err(
            "points need two or three coordinates",
        ));
    }
    Ok(Vec3::from_slice(coords))
}

fn limit_to_py<'py>(
    py: Python<'py>,
    limit: &LimitResult,
    dim: usize,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("value", limit.value[..dim].to_vec())?;
    dict.set_item("converged", limit.converged)?;
    dict.set_item("last_delta", limit.last_delta)?;
    let trace: Vec<(f64, Vec<f64>)> = limit
        .samples
        .iter()
        .map(|(s, v)| (*s, v[..dim].to_vec()))
        .collect();
    dict.set_item("trace", trace)?;
    Ok(dict)
}

/// An odd Calderón–Zygmund kernel of homogeneity −n.
#[pyclass(name = "Kernel", skip_from_py_object)]
struct PyKernel {
    inner: CoreKernel,
}

#[pymethods]
impl PyKernel {
    /// Riesz kernel x/|x|^{n+1} in R^{n+1}.
    #[staticmethod]
    fn riesz(n: u32) -> PyResult<Self> {
        Ok(PyKernel {
            inner: CoreKernel::riesz(n).map_err(err)?,
        })
    }

    /// Complex kernel z^j/|z|^{j+1}, j odd.
    #[staticmethod]
    fn cauchy_power(j: u32) -> PyResult<Self> {
        Ok(PyKernel {
            inner: CoreKernel::cauchy_power(j).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn value_dim(&self) -> usize {
        self.inner.value_dim()
    }

    fn name(&self) -> String {
        self.inner.name()
    }

    /// K(x).
    fn evaluate(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        let v = self.inner.evaluate(to_vec3(&x)?).map_err(err)?;
        Ok(v.truncated(self.inner.value_dim()))
    }

    /// Ω(x) = |x|^n K(x).
    fn omega(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        let v = self.inner.omega(to_vec3(&x)?).map_err(err)?;
        Ok(v.truncated(self.inner.value_dim()))
    }

    /// Analytic jump constant C_K(N) for a unit direction.
    fn jump_constant(&self, direction: Vec<f64>) -> PyResult<Vec<f64>> {
        let n = to_vec3(&direction)?.normalized();
        let c = operators::jump_constant(&self.inner, n).map_err(err)?;
        Ok(c.truncated(self.inner.value_dim()))
    }

    /// Hyperplane-integral evaluation of C_K(N); returns (value, tail bound).
    #[pyo3(signature = (direction, radius=1e4))]
    fn jump_constant_numeric(
        &self,
        direction: Vec<f64>,
        radius: f64,
    ) -> PyResult<(Vec<f64>, f64)> {
        let n = to_vec3(&direction)?.normalized();
        let c = jump_constant_numeric(&self.inner, n, radius).map_err(err)?;
        Ok((c.value.truncated(self.inner.value_dim()), c.tail_bound))
    }

    /// Sampled constant of the bound |∇^j K| ≤ C/|x|^{n+j}, j in {0,1,2}.
    #[pyo3(signature = (sample_count=1000, order=0))]
    fn cz_bound(&self, sample_count: usize, order: u8) -> PyResult<f64> {
        check_cz_bounds(&self.inner, sample_count, order).map_err(err)
    }
}

/// A scene: rectifiable carrier plus a Radon measure on it.
#[pyclass(name = "Scene")]
struct PyScene {
    spec: SceneSpec,
    measure: RadonMeasure,
}

#[pymethods]
impl PyScene {
    /// Parse a scene from its JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = SceneSpec::from_json(text).map_err(err)?;
        let measure = spec.build().map_err(err)?;
        Ok(PyScene { spec, measure })
    }

    /// Built-in scenes: circle, line, fourier, sphere.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let spec = SceneSpec::builtin(name).map_err(err)?;
        let measure = spec.build().map_err(err)?;
        Ok(PyScene { spec, measure })
    }

    fn to_json(&self) -> String {
        self.spec.to_json()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.measure.carrier().n()
    }

    #[getter]
    fn diameter(&self) -> f64 {
        self.measure.scene_diameter()
    }

    /// Point on the carrier at a patch parameter.
    #[pyo3(signature = (t, patch=0))]
    fn point(&self, t: f64, patch: usize) -> PyResult<Vec<f64>> {
        let patches = self.measure.carrier().patches();
        if patch >= patches.len() {
            return Err(PyValueError::new_err("no such patch"));
        }
        let p = patches[patch].position(&[t, 0.0]);
        Ok(p.truncated(self.measure.carrier().ambient_dim()))
    }

    /// Density dν/dℋⁿ|_E at a carrier point.
    fn density_at(&self, x: Vec<f64>) -> PyResult<f64> {
        self.measure.density_at(to_vec3(&x)?).map_err(err)
    }

    /// Total-variation mass of the closed ball B(x, r).
    fn ball_mass(&self, x: Vec<f64>, r: f64) -> PyResult<f64> {
        let q = jumplab::geometry::QuadConfig::default();
        Ok(self.measure.ball_mass(to_vec3(&x)?, r, &q).value)
    }

    /// sup over the default radius grid of |ν|(B(x,r))/rⁿ.
    fn maximal_density(&self, x: Vec<f64>) -> PyResult<f64> {
        let q = jumplab::geometry::QuadConfig::default();
        let radii = default_radii(self.measure.scene_diameter());
        Ok(self.measure.maximal_density(to_vec3(&x)?, &radii, &q).value)
    }
}

fn extrapolation(scene: &PyScene, tol: f64) -> ExtrapolationConfig {
    let mut cfg = ExtrapolationConfig::for_diameter(scene.measure.scene_diameter());
    cfg.tol = tol;
    cfg
}

/// T_ε ν(x): the ε-truncated singular integral.
#[pyfunction]
fn truncated_transform(
    kernel: &PyKernel,
    scene: &PyScene,
    x: Vec<f64>,
    eps: f64,
) -> PyResult<Vec<f64>> {
    let q = jumplab::geometry::QuadConfig::default();
    let r = operators::truncated_transform(&kernel.inner, &scene.measure, to_vec3(&x)?, eps, &q);
    Ok(r.value.truncated(kernel.inner.value_dim()))
}

/// pv Tν(x) via the geometric ε-ladder.
#[pyfunction]
#[pyo3(signature = (kernel, scene, x, tol=1e-6))]
fn principal_value<'py>(
    py: Python<'py>,
    kernel: &PyKernel,
    scene: &PyScene,
    x: Vec<f64>,
    tol: f64,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let cfg = extrapolation(scene, tol);
    let r = operators::principal_value(&kernel.inner, &scene.measure, to_vec3(&x)?, &cfg)
        .map_err(err)?;
    limit_to_py(py, &r, kernel.inner.value_dim())
}

/// Non-tangential limit T^± ν(x) along the normal axis.
#[pyfunction]
#[pyo3(signature = (kernel, scene, x, side, a=0.5, b=0.25, tol=1e-6))]
#[allow(clippy::too_many_arguments)]
fn nontangential_limit<'py>(
    py: Python<'py>,
    kernel: &PyKernel,
    scene: &PyScene,
    x: Vec<f64>,
    side: &str,
    a: f64,
    b: f64,
    tol: f64,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let side = match side {
        "+" | "plus" => Side::Plus,
        "-" | "minus" => Side::Minus,
        other => return Err(PyValueError::new_err(format!("side must be +/-, got {other}"))),
    };
    let cfg = extrapolation(scene, tol);
    let r = operators::nontangential_limit(
        &kernel.inner,
        &scene.measure,
        to_vec3(&x)?,
        side,
        a,
        b,
        &cfg,
    )
    .map_err(err)?;
    limit_to_py(py, &r, kernel.inner.value_dim())
}

/// Full jump verification over a scene; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (scene, kernel, points=8, a=0.5, b=0.25, tol=1e-6, residual_tol=1e-3))]
fn verify(
    scene: &PyScene,
    kernel: &str,
    points: usize,
    a: f64,
    b: f64,
    tol: f64,
    residual_tol: f64,
) -> PyResult<String> {
    let choice = match kernel {
        "riesz" => KernelChoice::Riesz {
            n: scene.measure.carrier().n() as u32,
        },
        "double-layer" => KernelChoice::DoubleLayer,
        other => {
            if let Some(j) = other.strip_prefix("cauchy-power:") {
                KernelChoice::CauchyPower {
                    j: j.parse().map_err(err)?,
                }
            } else {
                return Err(PyValueError::new_err(format!(
                    "kernel must be riesz, double-layer or cauchy-power:<j>, got {other}"
                )));
            }
        }
    };
    let config = ExperimentConfig {
        scene: scene.spec.clone(),
        kernel: choice,
        points: PointSpec::Count(points),
        a,
        b,
        extrapolation: Some(extrapolation(scene, tol)),
        residual_tol,
        out_json: None,
        out_csv: None,
        out_plot: None,
    };
    let report = run_experiment(&config).map_err(err)?;
    Ok(report.to_json())
}

/// Sampled cone diagnostics over a δ ladder; returns CSV text.
#[pyfunction]
#[pyo3(signature = (scene, kernel_n, deltas, points=1, samples=8))]
fn diagnose(
    scene: &PyScene,
    kernel_n: u32,
    deltas: Vec<f64>,
    points: usize,
    samples: usize,
) -> PyResult<String> {
    let config = ExperimentConfig::new(
        scene.spec.clone(),
        KernelChoice::Riesz { n: kernel_n },
        points,
    );
    let table = diagnostic_sweep(&config, &deltas, samples).map_err(err)?;
    Ok(table.to_csv())
}

/// ω_n: n-dimensional volume of the unit sphere in R^{n+1}.
#[pyfunction]
fn unit_sphere_volume(n: u32) -> f64 {
    sphere_volume(n)
}

#[pymodule]
fn jumplab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKernel>()?;
    m.add_class::<PyScene>()?;
    m.add_function(wrap_pyfunction!(truncated_transform, m)?)?;
    m.add_function(wrap_pyfunction!(principal_value, m)?)?;
    m.add_function(wrap_pyfunction!(nontangential_limit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(diagnose, m)?)?;
    m.add_function(wrap_pyfunction!(unit_sphere_volume, m)?)?;
    Ok(())
}
