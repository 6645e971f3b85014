//! Python bindings: `horn_rank.HornSystem` and a few module-level helpers.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use horn_core::job::{self, Command, JobSpec};
use horn_core::linalg::gcd_maximal_minors;
use horn_core::shift::{resultant as sylvester_resultant, UniPoly};
use horn_core::{Convention, HornConfig, HornError, IntMatrix, Params, Rat};

create_exception!(horn_rank, HornRankError, PyException);
create_exception!(horn_rank, GenericityFailure, HornRankError);
create_exception!(horn_rank, ResourceExhausted, HornRankError);

fn to_py(e: HornError) -> PyErr {
    let msg = e.to_string();
    match e {
        HornError::GenericityFailure(_) => GenericityFailure::new_err(msg),
        HornError::ResourceExhausted { .. } => ResourceExhausted::new_err(msg),
        _ => HornRankError::new_err(msg),
    }
}

fn parse_rats(values: &[String]) -> PyResult<Vec<Rat>> {
    values
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rat>()
                .map_err(|_| HornRankError::new_err(format!("not a rational: {s:?}")))
        })
        .collect()
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A Horn configuration with its parameters.
///
/// `c` is a list of rationals given as strings (`"1/2"`) or integers; `None`
/// samples generic parameters from `seed`.
#[pyclass(module = "horn_rank", frozen)]
struct HornSystem {
    spec: JobSpec,
}

#[pymethods]
impl HornSystem {
    #[new]
    #[pyo3(signature = (rows, c=None, convention="falling", seed=0, window=12))]
    fn new(rows: Vec<[i64; 2]>, c: Option<Vec<String>>, convention: &str, seed: u64, window: i64) -> PyResult<Self> {
        let convention: Convention = convention.parse().map_err(to_py)?;
        let params = match c {
            Some(c) => Params::Explicit(parse_rats(&c)?),
            None => Params::Generic { seed },
        };
        let spec = JobSpec {
            rows,
            params,
            convention,
            seed,
            window,
        };
        spec.config().map_err(to_py)?;
        Ok(HornSystem { spec })
    }

    #[getter]
    fn rows(&self) -> Vec<[i64; 2]> {
        self.spec.rows.clone()
    }

    /// Parameters actually used, in the falling convention.
    #[getter]
    fn parameters(&self) -> PyResult<Vec<String>> {
        let cfg = self.spec.config().map_err(to_py)?;
        Ok(cfg.realize(0).c.iter().map(|x| x.to_string()).collect())
    }

    #[getter]
    fn digest(&self) -> String {
        self.spec.digest()
    }

    fn rank<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Rank, "rank")
    }

    fn puiseux<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Puiseux, "puiseux")
    }

    fn series<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Series, "series")
    }

    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Decompose, "decompose")
    }

    fn identity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Identity, "identity")
    }

    fn psi<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Psi, "psi")
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.result(py, Command::Verify, "verify")
    }

    /// Full JSON report for `command` as a Python dict.
    fn report<'py>(&self, py: Python<'py>, command: &str) -> PyResult<Bound<'py, PyAny>> {
        let cmd: Command = command.parse().map_err(to_py)?;
        let r = py.detach(|| job::run(cmd, &self.spec)).map_err(to_py)?;
        json_to_py(py, &r.json)
    }

    fn __repr__(&self) -> String {
        format!("HornSystem(rows={:?})", self.spec.rows)
    }
}

impl HornSystem {
    fn result<'py>(&self, py: Python<'py>, cmd: Command, key: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| job::run(cmd, &self.spec)).map_err(to_py)?;
        json_to_py(py, &r.json["results"][key])
    }
}

/// Runs a job file's text and returns the JSON report.
#[pyfunction]
fn run_job<'py>(py: Python<'py>, command: &str, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let cmd: Command = command.parse().map_err(to_py)?;
    let spec = job::parse_job(text).map_err(to_py)?;
    let r = py.detach(|| job::run(cmd, &spec)).map_err(to_py)?;
    json_to_py(py, &r.json)
}

/// Resultant of two polynomials in `t`, coefficients in increasing degree.
#[pyfunction]
fn resultant(f: Vec<String>, g: Vec<String>) -> PyResult<String> {
    let f = UniPoly::new(parse_rats(&f)?);
    let g = UniPoly::new(parse_rats(&g)?);
    Ok(sylvester_resultant(&f, &g).to_string())
}

/// Index of the lattice spanned by the columns of `rows` in its saturation.
#[pyfunction]
fn lattice_index(rows: Vec<[i64; 2]>) -> PyResult<String> {
    let m = IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    Ok(gcd_maximal_minors(&m).map_err(to_py)?.to_string())
}

/// Integer Gale dual `A` with `A B = 0` and first row all ones.
#[pyfunction]
fn gale_dual(rows: Vec<[i64; 2]>) -> PyResult<Vec<Vec<i64>>> {
    let cfg = HornConfig::new(rows, Params::Generic { seed: 0 }, Convention::Falling).map_err(to_py)?;
    let a = cfg.gale_dual().map_err(to_py)?;
    a.to_i64_rows()
        .ok_or_else(|| HornRankError::new_err("Gale dual entries exceed 64 bits"))
}

#[pymodule]
fn horn_rank(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<HornSystem>()?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_index, m)?)?;
    m.add_function(wrap_pyfunction!(gale_dual, m)?)?;
    m.add("HornRankError", m.py().get_type::<HornRankError>())?;
    m.add("GenericityFailure", m.py().get_type::<GenericityFailure>())?;
    m.add("ResourceExhausted", m.py().get_type::<ResourceExhausted>())?;
    Ok(())
}
