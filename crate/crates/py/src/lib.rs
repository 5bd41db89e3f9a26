//! Python bindings for `digitnet`.

use digitnet::constructions::{self as cons, ContinuedFraction, CsParams, NiedParams};
use digitnet::discrepancy;
use digitnet::metrics::{self, WeightKind};
use digitnet::net::{self, GeneratingMatrixSet};
use digitnet::{pointfile, Error};
use pyo3::exceptions::{PyIOError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Capacity(_) => PyOverflowError::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        Error::Consistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite point set in `[0,1)^s` with exact coordinates.
#[pyclass(name = "PointSet", module = "digitnet_py", frozen)]
pub struct PyPointSet(net::PointSet);

#[pymethods]
impl PyPointSet {
    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base()
    }

    #[getter]
    fn provenance(&self) -> Option<String> {
        self.0.provenance().map(|p| p.to_string())
    }

    fn to_list(&self) -> Vec<Vec<f64>> {
        self.0.points().iter().map(|x| x.iter().map(net::Coord::to_f64).collect()).collect()
    }

    /// Coordinates as `(numerator, denominator)` pairs.
    fn rationals(&self) -> PyResult<Vec<Vec<(u128, u128)>>> {
        self.0
            .points()
            .iter()
            .map(|x| {
                x.iter()
                    .map(|c| c.to_ratio_u128().ok_or_else(|| PyOverflowError::new_err("coordinate exceeds 128 bits")))
                    .collect()
            })
            .collect()
    }

    fn prefix(&self, n: usize) -> Self {
        PyPointSet(self.0.prefix(n))
    }

    fn l2(&self) -> PyResult<f64> {
        Ok(discrepancy::l2_exact(&self.0).map_err(to_py)?.value)
    }

    /// Returns `(value, stderr)`.
    #[pyo3(signature = (q, samples = 16384, seed = 0))]
    fn lq(&self, q: f64, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
        let r = discrepancy::lq_estimate(&self.0, q, samples, seed).map_err(to_py)?;
        Ok((r.value, r.stderr.unwrap_or(0.0)))
    }

    fn local_discrepancy(&self, t: Vec<f64>) -> PyResult<f64> {
        discrepancy::local_discrepancy(&self.0, &t).map_err(to_py)
    }

    fn trim(&self, n: usize) -> PyResult<Self> {
        cons::arbitrary_n_trim(&self.0, n).map(PyPointSet).map_err(to_py)
    }

    fn dumps(&self) -> String {
        pointfile::to_string(&self.0)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        pointfile::save(&self.0, path).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("PointSet(N={}, s={}, b={})", self.0.len(), self.0.dim(), self.0.base())
    }
}

/// Generating matrices `C_1, ..., C_s` of a digital net.
#[pyclass(name = "Net", module = "digitnet_py", frozen)]
pub struct PyNet(GeneratingMatrixSet);

#[pymethods]
impl PyNet {
    #[new]
    fn new(b: u32, matrices: Vec<Vec<Vec<u32>>>) -> PyResult<Self> {
        let field = digitnet::field::PrimeField::new(b).map_err(to_py)?;
        let ms = matrices
            .iter()
            .map(|rows| digitnet::field::FieldMatrix::from_rows(field, rows))
            .collect::<digitnet::Result<Vec<_>>>()
            .map_err(to_py)?;
        GeneratingMatrixSet::new(ms).map(PyNet).map_err(to_py)
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn matrices(&self) -> Vec<Vec<Vec<u32>>> {
        self.0.matrices().iter().map(|a| a.to_rows()).collect()
    }

    fn points(&self) -> PyResult<PyPointSet> {
        net::generate_net_points(&self.0).map(PyPointSet).map_err(to_py)
    }

    fn t_value(&self) -> usize {
        net::compute_t_value(&self.0)
    }

    fn is_dual(&self, k: Vec<u64>) -> bool {
        self.0.is_dual(&k)
    }

    fn dual_size(&self) -> u64 {
        u64::from(self.0.base()).pow(self.0.stacked_transpose().kernel_basis().len() as u32)
    }

    /// Smallest weight over nonzero dual elements; `kind` is `nrt`,
    /// `hamming` or `mu<alpha>`. `None` if the dual space is trivial.
    #[pyo3(signature = (kind = "nrt", cap = 1 << 24))]
    fn min_dual_weight(&self, kind: &str, cap: u64) -> PyResult<Option<u32>> {
        let kind = match kind {
            "nrt" => WeightKind::Nrt,
            "hamming" => WeightKind::Hamming,
            other => match other.strip_prefix("mu").and_then(|a| a.parse().ok()) {
                Some(a) => WeightKind::MuAlpha(a),
                None => return Err(PyValueError::new_err(format!("unknown weight {other:?}"))),
            },
        };
        let dual = net::dual_space(&self.0, cap).map_err(to_py)?;
        Ok(metrics::min_dual_weight(&dual, kind, u64::MAX).min)
    }

    fn interlace(&self, alpha: usize) -> PyResult<Self> {
        cons::interlace_matrices(&self.0, alpha).map(PyNet).map_err(to_py)
    }
}

#[pyfunction]
fn faure(b: u32, m: usize, s: usize) -> PyResult<PyNet> {
    cons::faure_matrices(b, m, s).map(PyNet).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (b, m, s, alpha, betas = None))]
fn chen_skriganov(b: u32, m: usize, s: usize, alpha: usize, betas: Option<Vec<Vec<u32>>>) -> PyResult<PyNet> {
    let p = CsParams::new(b, alpha, m, s, betas).map_err(to_py)?;
    Ok(PyNet(cons::cs_matrices(&p)))
}

#[pyfunction]
fn niederreiter(s: usize, m: usize) -> PyResult<PyNet> {
    let p = NiedParams::new(s).map_err(to_py)?;
    Ok(PyNet(cons::niederreiter_net_matrices(&p, m)))
}

#[pyfunction]
fn dp_net_matrices(alpha: usize, m: usize, s: usize) -> PyResult<PyNet> {
    cons::dp_net_matrices(alpha, m, s).map(PyNet).map_err(to_py)
}

#[pyfunction]
fn dp_net(alpha: usize, m: usize, s: usize) -> PyResult<PyPointSet> {
    cons::dp_net(alpha, m, s).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn dp_finite(n: usize, s: usize) -> PyResult<PyPointSet> {
    cons::dp_finite_pointset(n, s).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn dp_sequence(s: usize, n: usize) -> PyResult<PyPointSet> {
    cons::dp_sequence(s, n).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn van_der_corput(b: u32, m: usize) -> PyResult<PyPointSet> {
    cons::van_der_corput(b, m).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (big_m, irrational = "golden"))]
fn davenport(big_m: usize, irrational: &str) -> PyResult<PyPointSet> {
    let cf = match irrational {
        "golden" => ContinuedFraction::golden_ratio(),
        "sqrt2" => ContinuedFraction::sqrt2(),
        other => return Err(PyValueError::new_err(format!("unknown irrational {other:?}"))),
    };
    cons::davenport_symmetrized(&cf, big_m).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn load(path: &str) -> PyResult<PyPointSet> {
    pointfile::load(path).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn loads(text: &str) -> PyResult<PyPointSet> {
    pointfile::from_str(text).map(PyPointSet).map_err(to_py)
}

#[pyfunction]
fn roth_lower_bound(s: usize, n: usize, q: f64) -> f64 {
    discrepancy::roth_lower_bound(s, n, q).value
}

#[pyfunction]
fn nrt_weight(k: u64, b: u32) -> u32 {
    metrics::nrt_weight(k, b)
}

#[pyfunction]
fn mu_alpha(k: u64, alpha: u32, b: u32) -> u32 {
    metrics::mu_alpha(k, alpha, b)
}

#[pymodule]
fn digitnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyNet>()?;
    m.add_function(wrap_pyfunction!(faure, m)?)?;
    m.add_function(wrap_pyfunction!(chen_skriganov, m)?)?;
    m.add_function(wrap_pyfunction!(niederreiter, m)?)?;
    m.add_function(wrap_pyfunction!(dp_net_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(dp_net, m)?)?;
    m.add_function(wrap_pyfunction!(dp_finite, m)?)?;
    m.add_function(wrap_pyfunction!(dp_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(van_der_corput, m)?)?;
    m.add_function(wrap_pyfunction!(davenport, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(loads, m)?)?;
    m.add_function(wrap_pyfunction!(roth_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(nrt_weight, m)?)?;
    m.add_function(wrap_pyfunction!(mu_alpha, m)?)?;
    Ok(())
}
