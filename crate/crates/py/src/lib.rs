//! Python bindings: `import tanglegram_py`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tanglegram::dual::{build_cut_graph, decode_cut, exact_cut, local_search_restarts};
use tanglegram::generators::{
    gen_random as core_gen_random, gen_tight as core_gen_tight, GenShape,
};
use tanglegram::record::{
    instance_from_json, instance_to_json, layout_from_json, layout_to_json, ResultRecord,
};
use tanglegram::render::StyleOptions;
use tanglegram::{parse_binary_newick, serialize_newick, Side, TanglegramInstance};

create_exception!(tanglegram_py, TanglegramError, PyValueError);

fn err(e: tanglegram::Error) -> PyErr {
    TanglegramError::new_err(e.to_string())
}

fn side(name: &str) -> PyResult<Side> {
    match name {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(PyValueError::new_err("side must be 'left' or 'right'")),
    }
}

#[pyclass(name = "Instance", frozen)]
struct Instance {
    inner: TanglegramInstance,
}

#[pymethods]
impl Instance {
    /// Builds an instance from two binary Newick strings.
    #[new]
    fn new(left: &str, right: &str) -> PyResult<Self> {
        let l = parse_binary_newick(left).map_err(err)?;
        let r = parse_binary_newick(right).map_err(err)?;
        Ok(Instance {
            inner: TanglegramInstance::new(l, r).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Instance {
            inner: instance_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        instance_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn left(&self) -> String {
        serialize_newick(self.inner.left())
    }

    #[getter]
    fn right(&self) -> String {
        serialize_newick(self.inner.right())
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn identity_layout(&self) -> Layout {
        Layout {
            inner: tanglegram::Layout::identity(&self.inner),
        }
    }

    fn leaf_order(&self, layout: &Layout, side_name: &str) -> PyResult<Vec<String>> {
        let order =
            tanglegram::leaf_order(&self.inner, &layout.inner, side(side_name)?).map_err(err)?;
        Ok(order.into_iter().map(str::to_string).collect())
    }

    /// Crossings of `layout`, or of the stored order when omitted.
    #[pyo3(signature = (layout=None))]
    fn count_crossings(&self, layout: Option<&Layout>) -> PyResult<u64> {
        let identity = tanglegram::Layout::identity(&self.inner);
        let l = layout.map_or(&identity, |l| &l.inner);
        tanglegram::count_crossings(&self.inner, l).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Instance(n={})", self.inner.n())
    }
}

#[pyclass(name = "Layout", frozen)]
struct Layout {
    inner: tanglegram::Layout,
}

#[pymethods]
impl Layout {
    #[new]
    fn new(left_swaps: Vec<bool>, right_swaps: Vec<bool>) -> Self {
        Layout {
            inner: tanglegram::Layout::new(left_swaps, right_swaps),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Layout {
            inner: layout_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        layout_to_json(&self.inner)
    }

    #[getter]
    fn left_swaps(&self) -> Vec<bool> {
        self.inner.left_swaps.clone()
    }

    #[getter]
    fn right_swaps(&self) -> Vec<bool> {
        self.inner.right_swaps.clone()
    }

    fn mirror(&self) -> Layout {
        Layout {
            inner: tanglegram::mirror(&self.inner),
        }
    }

    fn __eq__(&self, other: &Layout) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Layout({})", self.inner.bit_string())
    }
}

fn wrap(inner: tanglegram::Layout) -> Layout {
    Layout { inner }
}

/// Recursive 2-approximation on complete trees: `(layout, counted, actual)`.
#[pyfunction]
fn rec_split(instance: &Instance) -> PyResult<(Layout, u64, u64)> {
    let r = tanglegram::rec_split(&instance.inner).map_err(err)?;
    Ok((wrap(r.layout), r.counted, r.actual))
}

#[pyfunction]
fn approx_general(instance: &Instance) -> PyResult<(Layout, u64, u64)> {
    let r = tanglegram::approx_general(&instance.inner).map_err(err)?;
    Ok((wrap(r.layout), r.counted, r.actual))
}

#[pyfunction]
#[pyo3(signature = (instance, cap=tanglegram::DEFAULT_EXACT_CAP))]
fn solve_exact(instance: &Instance, cap: usize) -> PyResult<(Layout, u64)> {
    let (l, c) = tanglegram::solve_exact_with_cap(&instance.inner, cap).map_err(err)?;
    Ok((wrap(l), c))
}

/// A layout with at most `k` crossings, or `None`.
#[pyfunction]
fn solve_fpt(instance: &Instance, k: u64) -> PyResult<Option<Layout>> {
    Ok(tanglegram::solve_fpt(&instance.inner, k)
        .map_err(err)?
        .map(wrap))
}

#[pyfunction]
fn min_crossings_fpt(instance: &Instance) -> PyResult<(Layout, u64)> {
    let (l, c) = tanglegram::min_crossings_fpt(&instance.inner).map_err(err)?;
    Ok((wrap(l), c))
}

#[pyfunction]
fn is_planar(instance: &Instance) -> PyResult<bool> {
    tanglegram::is_planar(&instance.inner).map_err(err)
}

/// Constrained max-cut against the stored order: `(layout, cut_weight)`.
/// `method` is "exact" or "local".
#[pyfunction]
#[pyo3(signature = (instance, method="local", restarts=8, seed=0))]
fn solve_dual(
    instance: &Instance,
    method: &str,
    restarts: usize,
    seed: u64,
) -> PyResult<(Layout, u64)> {
    let initial = tanglegram::Layout::identity(&instance.inner);
    let graph = build_cut_graph(&instance.inner, &initial).map_err(err)?;
    let cut = match method {
        "exact" => exact_cut(&graph).map_err(err)?,
        "local" => local_search_restarts(&graph, restarts, seed),
        _ => return Err(PyValueError::new_err("method must be 'exact' or 'local'")),
    };
    let layout = decode_cut(&graph, &cut, &initial).map_err(err)?;
    Ok((wrap(layout), graph.weight(&cut)))
}

#[pyfunction]
fn render_svg(instance: &Instance, layout: &Layout) -> PyResult<String> {
    tanglegram::render::render_svg(&instance.inner, &layout.inner, &StyleOptions::default())
        .map_err(err)
}

/// Result record JSON with the crossing count recomputed.
#[pyfunction]
fn result_record(instance: &Instance, layout: &Layout, method: &str) -> PyResult<String> {
    Ok(ResultRecord::new(&instance.inner, &layout.inner, method)
        .map_err(err)?
        .to_json())
}

#[pyfunction]
#[pyo3(signature = (n, seed=0, complete=false))]
fn gen_random(n: usize, seed: u64, complete: bool) -> PyResult<Instance> {
    let shape = if complete {
        GenShape::Complete
    } else {
        GenShape::RandomBinary
    };
    Ok(Instance {
        inner: core_gen_random(n, shape, seed).map_err(err)?,
    })
}

#[pyfunction]
fn gen_tight(m: usize) -> PyResult<Instance> {
    Ok(Instance {
        inner: core_gen_tight(m).map_err(err)?,
    })
}

#[pymodule]
fn tanglegram_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TanglegramError", m.py().get_type::<TanglegramError>())?;
    m.add_class::<Instance>()?;
    m.add_class::<Layout>()?;
    m.add_function(wrap_pyfunction!(rec_split, m)?)?;
    m.add_function(wrap_pyfunction!(approx_general, m)?)?;
    m.add_function(wrap_pyfunction!(solve_exact, m)?)?;
    m.add_function(wrap_pyfunction!(solve_fpt, m)?)?;
    m.add_function(wrap_pyfunction!(min_crossings_fpt, m)?)?;
    m.add_function(wrap_pyfunction!(is_planar, m)?)?;
    m.add_function(wrap_pyfunction!(solve_dual, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(result_record, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tight, m)?)?;
    Ok(())
}
