//! Python bindings: bound quivers, unit forms, indecomposable tables, Hall
//! algebras, generated presentations and the command reports.

use std::path::PathBuf;

use hallq_core::cli::{self, Command, JobConfig};
use hallq_core::gallery;
use hallq_core::hall::{ClassId, HallAlgebra as CoreHall};
use hallq_core::presentation::{self as pres, DimMode};
use hallq_core::quiver::{self, BoundQuiver as CoreQuiver};
use hallq_core::rep::{self, Caps, IndecompTable};
use hallq_core::scalar::{rat, QSqrt};
use hallq_core::unit_form::{DimVector, UnitForm as CoreForm};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so that nested reports arrive as dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(x).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn dv(x: Vec<i64>) -> DimVector {
    DimVector(x)
}

#[pyclass(name = "BoundQuiver", module = "hallq")]
struct BoundQuiver {
    inner: CoreQuiver,
}

#[pymethods]
impl BoundQuiver {
    /// Parses the `vertex` / `arrow` / `relation` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(BoundQuiver {
            inner: quiver::parse(text).map_err(err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.quiver().vertices().to_vec()
    }

    fn relation_counts(&self) -> Vec<Vec<usize>> {
        self.inner.relation_counts()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn unit_form(&self) -> UnitForm {
        UnitForm {
            inner: CoreForm::of_bound_quiver(&self.inner),
        }
    }

    fn global_dimension(&self, q: u32) -> PyResult<usize> {
        rep::global_dimension(&self.inner, q).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundQuiver(vertices={}, arrows={}, relations={})",
            self.inner.vertex_count(),
            self.inner.quiver().arrows().len(),
            self.inner.relations().len()
        )
    }
}

/// Example `n` of the built-in gallery; `length` sizes the chain of example 2.
#[pyfunction]
#[pyo3(signature = (n, length = 4))]
fn example(n: usize, length: usize) -> PyResult<BoundQuiver> {
    Ok(BoundQuiver {
        inner: gallery::example(n, length).map_err(err)?,
    })
}

#[pyclass(name = "UnitForm", module = "hallq")]
struct UnitForm {
    inner: CoreForm,
}

#[pymethods]
impl UnitForm {
    #[new]
    fn new(table: Vec<Vec<i64>>) -> Self {
        UnitForm {
            inner: CoreForm::new(&table),
        }
    }

    fn table(&self) -> Vec<Vec<i64>> {
        self.inner.table()
    }

    fn evaluate(&self, b: Vec<i64>) -> PyResult<i64> {
        self.inner.evaluate(&dv(b)).map_err(err)
    }

    fn bilinear(&self, b: Vec<i64>, c: Vec<i64>) -> PyResult<i64> {
        self.inner.bilinear(&dv(b), &dv(c)).map_err(err)
    }

    fn nu(&self, b: Vec<i64>, c: Vec<i64>) -> PyResult<i64> {
        self.inner.nu(&dv(b), &dv(c)).map_err(err)
    }

    fn ad_exponent(&self, b: Vec<i64>, c: Vec<i64>) -> PyResult<i64> {
        self.inner.ad_exponent(&dv(b), &dv(c)).map_err(err)
    }

    #[pyo3(signature = (cap = 6))]
    fn positive_roots(&self, cap: u32) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.inner.positive_roots(cap).map_err(err)?.roots().iter().map(|r| r.0.clone()).collect())
    }

    #[pyo3(signature = (cap = 6))]
    fn is_weakly_positive(&self, cap: u32) -> bool {
        self.inner.is_weakly_positive(cap)
    }
}

/// Indecomposable representations over `F_q` in a directed order.
#[pyclass(name = "IndecomposableTable", module = "hallq")]
struct Indecomposables {
    quiver: CoreQuiver,
    inner: IndecompTable,
}

#[pymethods]
impl Indecomposables {
    #[new]
    #[pyo3(signature = (quiver, q = 3, dim_cap = 8, root_cap = 6))]
    fn new(quiver: &BoundQuiver, q: u32, dim_cap: usize, root_cap: u32) -> PyResult<Self> {
        let form = CoreForm::of_bound_quiver(&quiver.inner);
        let roots = form.positive_roots(root_cap).map_err(err)?;
        let caps = Caps {
            component: dim_cap,
            total: dim_cap,
            ..Caps::default()
        };
        let inner = rep::enumerate_indecomposables(&quiver.inner, q, &roots, &caps, false).map_err(err)?;
        Ok(Indecomposables {
            quiver: quiver.inner.clone(),
            inner,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn dims(&self) -> Vec<Vec<i64>> {
        self.inner.dims().into_iter().map(|d| d.0).collect()
    }

    fn hom(&self) -> Vec<Vec<usize>> {
        self.inner.hom.clone()
    }

    fn ext1(&self) -> Vec<Vec<usize>> {
        self.inner.ext1.clone()
    }

    fn is_directed(&self) -> bool {
        self.inner.is_directed()
    }

    fn bijective(&self) -> bool {
        self.inner.roots.bijective
    }

    /// Orders of the endomorphism ring and of the automorphism group of each
    /// indecomposable.
    fn end_aut_sizes(&self) -> Vec<(u128, u128)> {
        self.inner.entries.iter().map(|e| (e.end_size, e.aut_size)).collect()
    }

    /// Multiplicities of the indecomposables in the direct sum described by
    /// `multiplicities`, recovered by decomposing the assembled module.
    fn decompose_sum(&self, multiplicities: Vec<u32>) -> PyResult<Vec<u32>> {
        if multiplicities.len() != self.inner.len() {
            return Err(err("one multiplicity per indecomposable"));
        }
        let m = self.inner.assemble(&self.quiver, &multiplicities);
        self.inner.decompose(&self.quiver, &m).map_err(err)
    }
}

#[pyclass(name = "Presentation", module = "hallq")]
struct Presentation {
    inner: pres::Presentation,
}

#[pymethods]
impl Presentation {
    #[new]
    #[pyo3(signature = (quiver, root_cap = 6))]
    fn new(quiver: &BoundQuiver, root_cap: u32) -> PyResult<Self> {
        let form = CoreForm::of_bound_quiver(&quiver.inner);
        let roots = form.positive_roots(root_cap).map_err(err)?;
        Ok(Presentation {
            inner: pres::generate_relations(&form, &roots).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.relations().len()
    }

    /// `(sequence, degree, element)` for each generated relation; sequences
    /// count vertices from 1.
    fn relations(&self) -> Vec<(Vec<usize>, Vec<i64>, String)> {
        self.inner
            .relations()
            .iter()
            .map(|r| {
                (
                    r.sequence.iter().map(|i| i + 1).collect(),
                    r.degree.0.clone(),
                    r.element.render(self.inner.labels()),
                )
            })
            .collect()
    }

    /// Dimension of the quotient in degree `d`: `v` generic when `v` is
    /// `None`, `v = 1` for `"1"`, `v = sqrt(q)` for `"sqrt(q)"`.
    #[pyo3(signature = (d, v = None, q = 3))]
    fn graded_dimension(&self, d: Vec<i64>, v: Option<&str>, q: u64) -> PyResult<usize> {
        let mode = match v {
            None => DimMode::Generic,
            Some("1") => DimMode::AtRational(rat(1)),
            Some("sqrt(q)") => DimMode::AtQSqrt(QSqrt::sqrt(q)),
            Some(other) => return Err(err(format!("unknown specialisation {other}"))),
        };
        pres::graded_dimension(&self.inner, &dv(d), &mode).map_err(err)
    }

    /// Results of matching the listed relations of gallery example `n`.
    #[pyo3(signature = (n, length = 4))]
    fn match_golden(&self, py: Python<'_>, n: usize, length: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &gallery::match_golden(&self.inner, n, length).map_err(err)?)
    }
}

/// A degree-truncated twisted Hall algebra. Classes are multiplicity vectors
/// indexed like `IndecomposableTable.dims()`.
#[pyclass(name = "HallAlgebra", module = "hallq")]
struct HallAlgebra {
    inner: CoreHall,
}

#[pymethods]
impl HallAlgebra {
    #[new]
    #[pyo3(signature = (table, degree_bound = 6))]
    fn new(table: &Indecomposables, degree_bound: i64) -> Self {
        HallAlgebra {
            inner: CoreHall::new(&table.quiver, &table.inner, degree_bound, rep::DEFAULT_ENUMERATION_CAP),
        }
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    fn classes_of_degree(&self, d: Vec<i64>) -> Vec<ClassId> {
        self.inner.classes_of_degree(&dv(d))
    }

    fn hall_graded_dim(&self, d: Vec<i64>) -> usize {
        self.inner.hall_graded_dim(&dv(d))
    }

    /// `F^R_{M,N}`: submodules of `R` isomorphic to `N` with quotient `M`.
    fn hall_number(&mut self, m: ClassId, n: ClassId, r: ClassId) -> PyResult<u64> {
        self.inner.hall_number(&m, &n, &r).map_err(err)
    }

    fn hall_number_via_ext(&mut self, m: ClassId, n: ClassId, r: ClassId) -> PyResult<u64> {
        self.inner.hall_number_via_ext(&m, &n, &r).map_err(err)
    }

    /// `[M] * [N]` as a list of `(class, coefficient)` with coefficients
    /// printed exactly in `Q(sqrt q)`.
    #[pyo3(signature = (m, n, twisted = true))]
    fn product(&mut self, m: ClassId, n: ClassId, twisted: bool) -> PyResult<Vec<(ClassId, String)>> {
        let p = self.inner.basis_product(&m, &n, twisted).map_err(err)?;
        Ok(p.terms().iter().map(|(c, x)| (c.clone(), x.to_string())).collect())
    }

    #[pyo3(signature = (max_total = 5, twisted = true))]
    fn verify_associativity(&mut self, py: Python<'_>, max_total: i64, twisted: bool) -> PyResult<Py<PyAny>> {
        let r = self.inner.verify_associativity(max_total, twisted).map_err(err)?;
        to_py(py, &r)
    }

    #[pyo3(signature = (max_total = 6))]
    fn verify_hallcon(&mut self, py: Python<'_>, max_total: i64) -> PyResult<Py<PyAny>> {
        let r = self.inner.verify_hallcon(max_total).map_err(err)?;
        to_py(py, &r)
    }

    /// Evaluates every relation at `e_i -> [S_i]` and compares graded
    /// dimensions up to `max_total`.
    #[pyo3(signature = (presentation, max_total = 5))]
    fn rho_verify(&mut self, py: Python<'_>, presentation: &Presentation, max_total: i64) -> PyResult<Py<PyAny>> {
        let r = self.inner.rho_verify(&presentation.inner, max_total).map_err(err)?;
        to_py(py, &r)
    }
}

/// Runs a command of the `hallq` binary and returns its report as a dict.
/// `target` is a quiver file path, or the example number for `examples`.
#[pyfunction]
#[pyo3(signature = (command, target, q = 3, dim_cap = 8, root_cap = 6, degree_bound = 6, length = 4, cache_dir = None))]
#[allow(clippy::too_many_arguments)]
fn run(
    py: Python<'_>,
    command: &str,
    target: &str,
    q: u32,
    dim_cap: usize,
    root_cap: u32,
    degree_bound: i64,
    length: usize,
    cache_dir: Option<PathBuf>,
) -> PyResult<Py<PyAny>> {
    let mut cfg = JobConfig {
        q,
        dim_cap,
        root_cap,
        degree_bound,
        cache_dir,
        ..JobConfig::default()
    };
    let cmd = match command {
        "analyze" => Command::Analyze,
        "roots" => Command::Roots,
        "indecomposables" => Command::Indecomposables,
        "hall-table" => Command::HallTable,
        "presentation" => Command::Presentation,
        "verify-rho" => Command::VerifyRho,
        "examples" => Command::Examples {
            n: target.parse().map_err(err)?,
            length,
        },
        other => return Err(err(format!("unknown command {other}"))),
    };
    if !matches!(cmd, Command::Examples { .. }) {
        cfg.quiver = Some(PathBuf::from(target));
    }
    let report = cli::run(&cmd, &cfg).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn hallq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BoundQuiver>()?;
    m.add_class::<UnitForm>()?;
    m.add_class::<Indecomposables>()?;
    m.add_class::<Presentation>()?;
    m.add_class::<HallAlgebra>()?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
