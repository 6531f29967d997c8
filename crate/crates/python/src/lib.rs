//! Python bindings: `Groupoid`, `Functor` and a few module-level operations.
//! Library errors surface as `ValueError`.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use fingroupoid::butterfly::{conjugate_principal_actor, square_groupoid};
use fingroupoid::construct;
use fingroupoid::diptych::check_axioms;
use fingroupoid::fractions::{hat_presentation, holograph, morita_equivalent, Meromorphism};
use fingroupoid::io::{self, dot};
use fingroupoid::subgroupoid::kernel_groupoid;
use fingroupoid::trivialize::trivialize;
use fingroupoid::{analyze_anchor, classify, classify_morphism, Functor, GroupTable, Groupoid, GroupoidDocument};

fn value_error(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated finite groupoid. Objects and arrows are addressed by label.
#[pyclass(name = "Groupoid", module = "fingroupoid_py", frozen)]
struct PyGroupoid {
    inner: Arc<Groupoid>,
}

impl PyGroupoid {
    fn wrap(g: Groupoid) -> Self {
        PyGroupoid { inner: Arc::new(g) }
    }

    fn object_id(&self, label: &str) -> PyResult<fingroupoid::ObjectId> {
        self.inner.object(label).ok_or_else(|| value_error(format!("unknown object {label}")))
    }

    fn arrow_id(&self, label: &str) -> PyResult<fingroupoid::ArrowId> {
        self.inner.arrow(label).ok_or_else(|| value_error(format!("unknown arrow {label}")))
    }
}

#[pymethods]
impl PyGroupoid {
    /// Builds a groupoid from explicit tables.
    #[new]
    #[pyo3(signature = (objects, arrows, units, inverses, compose))]
    fn new(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        units: Vec<(String, String)>,
        inverses: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> PyResult<Self> {
        let doc = GroupoidDocument {
            objects,
            arrows: arrows
                .into_iter()
                .map(|(id, src, tgt)| fingroupoid::ArrowRecord { id, src, tgt })
                .collect(),
            units,
            inverses,
            compose,
            ..GroupoidDocument::default()
        };
        Groupoid::validate(&doc).map(Self::wrap).map_err(value_error)
    }

    /// Reads the text or JSON format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let doc = io::read_groupoid(text).map_err(value_error)?;
        Groupoid::validate(&doc).map(Self::wrap).map_err(value_error)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        Self::parse(&text)
    }

    /// The banal groupoid: one arrow between any two objects.
    #[staticmethod]
    fn pair(objects: Vec<String>) -> Self {
        Self::wrap(construct::pair(&objects))
    }

    /// Units only.
    #[staticmethod]
    fn null(objects: Vec<String>) -> Self {
        Self::wrap(construct::null(&objects))
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(value_error("cyclic group of order 0"));
        }
        Ok(Self::wrap(construct::from_group(&GroupTable::cyclic(n))))
    }

    /// A group given by its multiplication table over `0..n`.
    #[staticmethod]
    fn group(table: Vec<Vec<usize>>) -> PyResult<Self> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        let t = GroupTable::new(names, table).map_err(value_error)?;
        Ok(Self::wrap(construct::from_group(&t)))
    }

    fn to_text(&self) -> String {
        io::serialize_groupoid(&GroupoidDocument::from_groupoid(&self.inner))
    }

    fn to_json(&self) -> String {
        io::groupoid_to_json(&GroupoidDocument::from_groupoid(&self.inner))
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.object_labels().to_vec()
    }

    /// `(label, source, target)` for every arrow.
    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.arrow_ids()
            .map(|a| (g.arrow_label(a).into(), g.object_label(g.src(a)).into(), g.object_label(g.tgt(a)).into()))
            .collect()
    }

    fn object_count(&self) -> usize {
        self.inner.object_count()
    }

    fn arrow_count(&self) -> usize {
        self.inner.arrow_count()
    }

    fn __len__(&self) -> usize {
        self.inner.arrow_count()
    }

    fn unit(&self, object: &str) -> PyResult<String> {
        let b = self.object_id(object)?;
        Ok(self.inner.arrow_label(self.inner.unit(b)).into())
    }

    fn inverse(&self, arrow: &str) -> PyResult<String> {
        let a = self.arrow_id(arrow)?;
        Ok(self.inner.arrow_label(self.inner.inv(a)).into())
    }

    /// `g ∘ h`, or `None` when `tgt h != src g`.
    fn compose(&self, g: &str, h: &str) -> PyResult<Option<String>> {
        let (g, h) = (self.arrow_id(g)?, self.arrow_id(h)?);
        Ok(self.inner.compose(g, h).map(|c| self.inner.arrow_label(c).into()))
    }

    fn isotropy(&self, object: &str) -> PyResult<Vec<String>> {
        let b = self.object_id(object)?;
        Ok(self.inner.isotropy(b).into_iter().map(|a| self.inner.arrow_label(a).into()).collect())
    }

    fn orbits(&self) -> Vec<Vec<String>> {
        let a = analyze_anchor(&self.inner);
        a.orbits
            .iter()
            .map(|o| o.iter().map(|&b| self.inner.object_label(b).into()).collect())
            .collect()
    }

    /// Degeneracy labels such as `transitive` or `banal`.
    fn classify(&self) -> Vec<&'static str> {
        classify(&self.inner).labels()
    }

    /// The trivial form `isotropy(base) × pair(objects)`.
    #[pyo3(signature = (base = None))]
    fn trivialize(&self, base: Option<&str>) -> PyResult<Self> {
        let e = match base {
            Some(l) => self.object_id(l)?,
            None => fingroupoid::ObjectId::new(0),
        };
        if self.inner.object_count() == 0 {
            return Err(value_error("empty groupoid"));
        }
        let t = trivialize(&self.inner, e, None).map_err(value_error)?;
        Ok(PyGroupoid { inner: t.trivial })
    }

    /// The groupoid of commutative squares.
    fn squares(&self) -> Self {
        PyGroupoid { inner: square_groupoid(&self.inner).groupoid }
    }

    fn product(&self, other: &PyGroupoid) -> Self {
        Self::wrap(construct::product(&self.inner, &other.inner))
    }

    fn disjoint_union(&self, other: &PyGroupoid) -> Self {
        Self::wrap(construct::disjoint_union(&self.inner, &other.inner))
    }

    fn opposite(&self) -> Self {
        Self::wrap(construct::opposite(&self.inner))
    }

    /// Graphviz source; `view` is `groupoid`, `orbits` or `butterfly`.
    #[pyo3(signature = (name = "G", view = "groupoid"))]
    fn dot(&self, name: &str, view: &str) -> PyResult<String> {
        match view {
            "groupoid" => Ok(dot::groupoid_dot(&self.inner, name)),
            "orbits" => Ok(dot::orbit_dot(&self.inner, name)),
            "butterfly" => {
                let b = square_groupoid(&self.inner).canonical_butterfly().map_err(value_error)?;
                Ok(dot::butterfly_dot(&b, name))
            }
            other => Err(value_error(format!("unknown view {other}"))),
        }
    }

    fn __eq__(&self, other: &PyGroupoid) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Groupoid({} objects, {} arrows)", self.inner.object_count(), self.inner.arrow_count())
    }
}

/// A functor between groupoids.
#[pyclass(name = "Functor", module = "fingroupoid_py", frozen)]
struct PyFunctor {
    inner: Functor,
}

fn wrap_groupoid(g: &Arc<Groupoid>) -> PyGroupoid {
    PyGroupoid { inner: g.clone() }
}

fn meromorphism(f: &Functor) -> PyResult<Meromorphism> {
    let h = holograph(f).map_err(value_error)?;
    Meromorphism::new(h.fraction).map_err(value_error)
}

#[pymethods]
impl PyFunctor {
    /// Builds a functor from label maps.
    #[new]
    fn new(
        source: &PyGroupoid,
        target: &PyGroupoid,
        objects: BTreeMap<String, String>,
        arrows: BTreeMap<String, String>,
    ) -> PyResult<Self> {
        let objects: Vec<(String, String)> = objects.into_iter().collect();
        let arrows: Vec<(String, String)> = arrows.into_iter().collect();
        Functor::from_labels(source.inner.clone(), target.inner.clone(), &objects, &arrows)
            .map(|inner| PyFunctor { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn identity(g: &PyGroupoid) -> Self {
        PyFunctor { inner: Functor::identity(g.inner.clone()) }
    }

    /// Reads a functor document; groupoid paths resolve against `base_dir`.
    #[staticmethod]
    #[pyo3(signature = (text, base_dir = None))]
    fn parse(text: &str, base_dir: Option<PathBuf>) -> PyResult<Self> {
        let doc = io::read_functor(text).map_err(value_error)?;
        let dir = base_dir.unwrap_or_else(|| PathBuf::from("."));
        let inner = doc
            .resolve(|p| {
                let full = dir.join(p);
                let t = std::fs::read_to_string(&full).map_err(|e| {
                    fingroupoid::Error::Precondition(format!("cannot read {}: {e}", full.display()))
                })?;
                io::read_groupoid(&t)
            })
            .map_err(value_error)?;
        Ok(PyFunctor { inner })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        let dir = path.parent().map(PathBuf::from);
        Self::parse(&text, dir)
    }

    /// Text document with both groupoids inline.
    fn to_text(&self) -> String {
        io::serialize_functor(&fingroupoid::FunctorDocument::inline(&self.inner))
    }

    #[getter]
    fn source(&self) -> PyGroupoid {
        wrap_groupoid(self.inner.source())
    }

    #[getter]
    fn target(&self) -> PyGroupoid {
        wrap_groupoid(self.inner.target())
    }

    #[getter]
    fn object_map(&self) -> BTreeMap<String, String> {
        self.inner.object_label_map().into_iter().collect()
    }

    #[getter]
    fn arrow_map(&self) -> BTreeMap<String, String> {
        self.inner.arrow_label_map().into_iter().collect()
    }

    /// `self ∘ inner`.
    fn after(&self, inner: &PyFunctor) -> PyResult<Self> {
        self.inner.after(&inner.inner).map(|inner| PyFunctor { inner }).map_err(value_error)
    }

    /// Every classification flag by name.
    fn flags(&self) -> BTreeMap<&'static str, bool> {
        classify_morphism(&self.inner).flags().into_iter().collect()
    }

    /// Names of the flags that hold.
    fn classify(&self) -> Vec<&'static str> {
        classify_morphism(&self.inner).labels()
    }

    fn kernel(&self) -> PyGroupoid {
        PyGroupoid { inner: kernel_groupoid(&self.inner) }
    }

    /// Core of the holograph `p/q` and its properties.
    fn holograph(&self) -> PyResult<(PyGroupoid, BTreeMap<&'static str, bool>)> {
        let m = meromorphism(&self.inner)?;
        let props = BTreeMap::from([
            ("cotransversal", m.is_cotransversal()),
            ("irreducible", m.is_irreducible()),
            ("morita_equivalence", m.is_morita_equivalence()),
        ]);
        Ok((wrap_groupoid(m.fraction().source()), props))
    }

    /// The target of the conjugate actor, for a principal s-actor.
    fn conjugate_target(&self) -> PyResult<PyGroupoid> {
        let c = conjugate_principal_actor(&self.inner).map_err(value_error)?;
        Ok(PyGroupoid { inner: c.conjugate_target })
    }

    fn __eq__(&self, other: &PyFunctor) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Functor({} arrows -> {} arrows)",
            self.inner.source().arrow_count(),
            self.inner.target().arrow_count()
        )
    }
}

/// Decides Morita equivalence. Returns `(equivalent, hat)` where `hat` is
/// the presentation groupoid when a witness exists.
#[pyfunction]
fn morita(g: &PyGroupoid, h: &PyGroupoid) -> PyResult<(bool, Option<PyGroupoid>)> {
    let d = morita_equivalent(&g.inner, &h.inner).map_err(value_error)?;
    let hat = match &d.witness {
        Some(w) => Some(PyGroupoid { inner: hat_presentation(&w.linking, None).map_err(value_error)?.hat }),
        None => None,
    };
    Ok((d.equivalent, hat))
}

/// Problems found in a groupoid document; empty when it is valid.
#[pyfunction]
fn violations(text: &str) -> PyResult<Vec<String>> {
    let doc = io::read_groupoid(text).map_err(value_error)?;
    Ok(match Groupoid::validate(&doc) {
        Ok(_) => Vec::new(),
        Err(e) => e.violations.iter().map(|v| v.to_string()).collect(),
    })
}

/// `(name, checked, failures)` for each finite-set axiom.
#[pyfunction]
fn diptych_checks(max_size: usize) -> Vec<(&'static str, usize, usize)> {
    check_axioms(max_size).checks.iter().map(|c| (c.name, c.checked, c.failures)).collect()
}

#[pymodule]
fn fingroupoid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupoid>()?;
    m.add_class::<PyFunctor>()?;
    m.add_function(wrap_pyfunction!(morita, m)?)?;
    m.add_function(wrap_pyfunction!(violations, m)?)?;
    m.add_function(wrap_pyfunction!(diptych_checks, m)?)?;
    Ok(())
}
