//! Python bindings: `import treecount`.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use treecount_core::coloring::{canonical_coloring, red_green_components};
use treecount_core::counting::{self, CensusClass, Counter, FormMode, NoMemo, PhiAssignment, PhiSpec};
use treecount_core::error::Error;
use treecount_core::fq::{self, FqContext, PointCount};
use treecount_core::graph;
use treecount_core::graph6::{emit_graph6, parse_graph6};
use treecount_core::groupoid::{normalize_with, rank_profile, CoefficientState, Extension};
use treecount_core::poly;
use treecount_core::sets::{self, Matching};

create_exception!(treecount, TreecountError, PyException);

fn err(e: Error) -> PyErr {
    TreecountError::new_err(e.to_string())
}

/// An unrooted tree on vertices `0..n`.
#[pyclass(module = "treecount", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Tree {
    inner: graph::Tree,
}

#[pymethods]
impl Tree {
    #[new]
    #[pyo3(signature = (n, edges))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Tree { inner: graph::Tree::new(n, edges).map_err(err)? })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Tree { inner: parse_graph6(text).map_err(err)? })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(err(Error::InvalidArgument("a path needs at least one vertex".into())));
        }
        Ok(Tree { inner: graph::Tree::path(n) })
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        Tree { inner: graph::Tree::star(leaves) }
    }

    #[staticmethod]
    fn dynkin_d(n: usize) -> PyResult<Self> {
        Ok(Tree { inner: graph::Tree::dynkin_d(n).map_err(err)? })
    }

    #[staticmethod]
    fn dynkin_e(n: usize) -> PyResult<Self> {
        Ok(Tree { inner: graph::Tree::dynkin_e(n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn graph6(&self) -> PyResult<String> {
        emit_graph6(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Tree({}, {:?})", self.inner.n(), self.inner.edges())
    }
}

/// Integer polynomial in `q`, lowest coefficient first.
#[pyclass(module = "treecount", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Polynomial {
    inner: poly::CountPolynomial,
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(coeffs: Vec<i128>) -> Self {
        Polynomial { inner: poly::CountPolynomial::new(coeffs) }
    }

    #[getter]
    fn coeffs(&self) -> Vec<i128> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn __call__(&self, q: i128) -> PyResult<i128> {
        self.inner.eval(q).map_err(err)
    }

    fn factored(&self) -> String {
        self.inner.factored()
    }

    fn is_reciprocal(&self) -> bool {
        self.inner.is_reciprocal()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }
}

fn resolve_phi(t: &graph::Tree, phi: &str) -> PyResult<PhiAssignment> {
    PhiSpec::parse(phi).and_then(|s| s.resolve(t)).map_err(err)
}

/// Colors (`"Red"`, `"Orange"`, `"Green"`), dominoes, dimension and components.
#[pyfunction]
fn coloring(py: Python<'_>, tree: &Tree) -> PyResult<Py<PyAny>> {
    let t = &tree.inner;
    let c = canonical_coloring(t);
    let p = red_green_components(t, &c);
    let d = pyo3::types::PyDict::new(py);
    d.set_item("colors", c.colors.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    d.set_item("dominoes", c.dominoes.clone())?;
    d.set_item("dimension", c.dimension())?;
    d.set_item("components", p.components.iter().map(|k| k.vertices.clone()).collect::<Vec<_>>())?;
    Ok(d.into_any().unbind())
}

#[pyfunction]
fn dimension(tree: &Tree) -> usize {
    treecount_core::coloring::dimension(&tree.inner)
}

#[pyfunction]
fn maximum_matching(tree: &Tree) -> Vec<(usize, usize)> {
    sets::maximum_matching(&tree.inner).edges().to_vec()
}

#[pyfunction]
fn count_maximum_independent_sets(tree: &Tree) -> u128 {
    sets::count_maximum_independent_sets(&tree.inner)
}

/// Admissible sets per component, as `(members, signs)` pairs.
#[pyfunction]
fn admissible_sets(tree: &Tree) -> PyResult<Vec<Vec<(Vec<usize>, Vec<i8>)>>> {
    let all = sets::all_admissible_sets(&tree.inner).map_err(err)?;
    Ok(all.into_iter().map(|v| v.into_iter().map(|s| (s.members, s.signs)).collect()).collect())
}

/// Normalized exponent table: one `{symbol: exponent}` dict per vertex.
#[pyfunction]
#[pyo3(signature = (tree, matching=None, seed=None))]
fn normalize(
    tree: &Tree,
    matching: Option<Vec<(usize, usize)>>,
    seed: Option<u64>,
) -> PyResult<Vec<std::collections::BTreeMap<usize, i64>>> {
    let t = &tree.inner;
    let m = match matching {
        Some(e) => Matching::new(e).map_err(err)?,
        None => sets::maximum_matching(t),
    };
    let how = seed.map_or(Extension::Smallest, Extension::Random);
    let c = canonical_coloring(t);
    let s = normalize_with(&CoefficientState::symbolic(t.n()), t, &c, &m, how).map_err(err)?;
    Ok(s.coeff)
}

/// Point-count polynomial; `phi` is `"generic"`, `"versal"` or `"i=mode,..."`.
#[pyfunction]
#[pyo3(signature = (tree, phi="generic", seed=None))]
fn count_polynomial(tree: &Tree, phi: &str, seed: Option<u64>) -> PyResult<Polynomial> {
    let assignment = resolve_phi(&tree.inner, phi)?;
    let inner = match seed {
        Some(s) => Counter::randomized(&NoMemo, s).tree(&tree.inner, &assignment),
        None => counting::count_polynomial(&tree.inner, &assignment),
    }
    .map_err(err)?;
    Ok(Polynomial { inner })
}

/// `(rank, versal_rank)` of an assignment.
#[pyfunction]
#[pyo3(signature = (tree, phi="generic"))]
fn ranks(tree: &Tree, phi: &str) -> PyResult<(usize, usize)> {
    let r = rank_profile(&tree.inner, &resolve_phi(&tree.inner, phi)?).map_err(err)?;
    Ok((r.rank, r.versal_rank))
}

#[pyfunction]
fn closed_form(family: &str, n: usize, mode: &str) -> PyResult<Polynomial> {
    let mode = match mode.to_ascii_lowercase().as_str() {
        "orange" => FormMode::Orange,
        "generic" => FormMode::Generic,
        "versal" => FormMode::Versal,
        other => return Err(err(Error::Parse(format!("unknown mode '{other}'")))),
    };
    let inner = match family.to_ascii_uppercase().as_str() {
        "A" => counting::closed_form_a(n, mode),
        "D" => counting::closed_form_d(n, mode),
        "E" => counting::closed_form_e(n, mode),
        other => Err(Error::Parse(format!("unknown family '{other}'"))),
    }
    .map_err(err)?;
    Ok(Polynomial { inner })
}

/// Brute-force count over the prime field of order `q`; `None` when no
/// generic parameters exist there.
#[pyfunction]
#[pyo3(signature = (tree, q, phi="generic", force=false))]
fn count_points(tree: &Tree, q: u64, phi: &str, force: bool) -> PyResult<Option<u128>> {
    let ctx = FqContext::new(q).map_err(err)?;
    let assignment = resolve_phi(&tree.inner, phi)?;
    Ok(match fq::count_points(&tree.inner, &assignment, &ctx, force).map_err(err)? {
        PointCount::Count(c) => Some(c),
        PointCount::NoGenericParameters => None,
    })
}

/// Compares the polynomial with brute-force counts; returns `(q, status)` pairs.
#[pyfunction]
#[pyo3(signature = (tree, phi="generic", primes=vec![2, 3, 5, 7], force=false))]
fn verify(tree: &Tree, phi: &str, primes: Vec<u64>, force: bool) -> PyResult<Vec<(u64, String)>> {
    let assignment = resolve_phi(&tree.inner, phi)?;
    let r = fq::verify_polynomial(&tree.inner, &assignment, &primes, force).map_err(err)?;
    Ok(r.checks.iter().map(|c| (c.q, format!("{:?}", c.status).to_lowercase())).collect())
}

/// `(tree_count, distinct_polynomial_count, collisions)` for one size.
#[pyfunction]
fn census(n: usize, class: &str) -> PyResult<(usize, usize, Vec<(String, Vec<String>)>)> {
    let class: CensusClass = class.parse().map_err(err)?;
    let r = counting::census(n, class).map_err(err)?;
    let collisions = r.collisions.into_iter().map(|c| (c.polynomial.to_string(), c.graph6)).collect();
    Ok((r.tree_count, r.distinct_polynomial_count, collisions))
}

#[pyfunction]
fn free_trees(n: usize) -> PyResult<Vec<Tree>> {
    let trees = treecount_core::enumerate::enumerate_free_trees(n).map_err(err)?;
    Ok(trees.into_iter().map(|inner| Tree { inner }).collect())
}

#[pymodule]
fn treecount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TreecountError", m.py().get_type::<TreecountError>())?;
    m.add_class::<Tree>()?;
    m.add_class::<Polynomial>()?;
    m.add_function(wrap_pyfunction!(coloring, m)?)?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(maximum_matching, m)?)?;
    m.add_function(wrap_pyfunction!(count_maximum_independent_sets, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_sets, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(count_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(ranks, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(free_trees, m)?)?;
    Ok(())
}
