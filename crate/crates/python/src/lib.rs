//! Python bindings for the placement delivery array toolkit.
//!
//! Exposes the grid type with validation and conjugation, the array
//! constructions, both lower bounds, the exhaustive minimal-S search,
//! and the byte-level scheme simulator. Exact rationals cross the
//! boundary as `(numerator, denominator)` integer pairs, ready for
//! `fractions.Fraction(*pair)`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pda_core::bounds;
use pda_core::compare;
use pda_core::construct::{self, MnSpec, Variant};
use pda_core::incidence::{CoordPerm, IncidenceSet, IncidenceTriple};
use pda_core::oracle::{self, OracleConfig, OracleOutcome};
use pda_core::sim::{self, DemandVector, FileLibrary, SweepConfig, SweepMode};
use pda_core::validate::validate;
use pda_core::Rational;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ratio(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

/// An F x K placement delivery array.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Pda {
    inner: pda_core::Pda,
}

#[pymethods]
impl Pda {
    /// Parse the canonical text format ("F K" header, then F rows).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Pda {
            inner: pda_core::Pda::parse(text).map_err(value_err)?,
        })
    }

    /// Build a grid from (row, col, symbol) triples and (F, K, S) dims;
    /// every other cell is a star.
    #[staticmethod]
    fn from_incidence(triples: Vec<(u32, u32, u32)>, dims: (u32, u32, u32)) -> PyResult<Self> {
        let set = IncidenceSet::new(
            triples
                .into_iter()
                .map(|(i, j, s)| IncidenceTriple::new(i, j, s)),
            dims,
        )
        .map_err(value_err)?;
        Ok(Pda {
            inner: pda_core::Pda::from_incidence_set(&set).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    /// The symbol at (row, col), or None for a star.
    fn entry(&self, row: usize, col: usize) -> PyResult<Option<u32>> {
        if row >= self.inner.rows() || col >= self.inner.cols() {
            return Err(value_err(format!("cell ({row}, {col}) out of range")));
        }
        Ok(self.inner.entry(row, col).symbol())
    }

    /// Structural validation. Returns a dict with "ok", "violations",
    /// and on success "k", "f", "z", "s", "n", "g", "rate",
    /// "memory_ratio".
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let verdict = validate(&self.inner);
        let out = PyDict::new(py);
        out.set_item("ok", verdict.is_valid())?;
        out.set_item(
            "violations",
            verdict
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
        )?;
        out.set_item("column_stars", verdict.column_stars.clone())?;
        out.set_item("symbol_counts", verdict.occupancy.symbol_counts.clone())?;
        out.set_item("row_counts", verdict.occupancy.row_counts.clone())?;
        if let Some(p) = verdict.params {
            out.set_item("k", p.k)?;
            out.set_item("f", p.f)?;
            out.set_item("z", p.z)?;
            out.set_item("s", p.s)?;
            out.set_item("n", p.n)?;
            out.set_item("g", p.g)?;
            out.set_item("rate", ratio(&p.rate()))?;
            out.set_item("memory_ratio", p.memory_ratio().as_ref().map(ratio))?;
        }
        Ok(out)
    }

    /// The (row, col, symbol) triples of all symbol cells.
    fn to_incidence(&self) -> Vec<(u32, u32, u32)> {
        self.inner
            .to_incidence_set()
            .iter()
            .map(|t| (t.row, t.col, t.symbol))
            .collect()
    }

    /// Reorder the (row, col, symbol) coordinate roles, e.g.
    /// (2, 1, 0) swaps rows with symbols.
    fn conjugate(&self, order: (usize, usize, usize)) -> PyResult<Self> {
        let perm = CoordPerm::new([order.0, order.1, order.2])
            .ok_or_else(|| value_err("order must be a permutation of (0, 1, 2)"))?;
        let conj = self.inner.to_incidence_set().conjugate(perm);
        Ok(Pda {
            inner: pda_core::Pda::from_incidence_set(&conj).map_err(value_err)?,
        })
    }

    /// Relabel symbols to 0..S by first appearance, row-major.
    fn canonicalize(&self) -> Self {
        Pda {
            inner: self.inner.canonicalize_symbols(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Pda({} x {})", self.inner.rows(), self.inner.cols())
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

/// The (t+1)-regular (k, C(k,t), C(k-1,t-1), C(k,t+1)) base array.
#[pyfunction]
fn build_mn(k: usize, t: usize) -> PyResult<Pda> {
    let spec = MnSpec::new(k, t).map_err(value_err)?;
    Ok(Pda {
        inner: construct::build_mn(spec).map_err(value_err)?,
    })
}

/// The base array tiled over m user groups with disjoint alphabets.
#[pyfunction]
fn build_grouped_mn(k: usize, t: usize, m: usize) -> PyResult<Pda> {
    Ok(Pda {
        inner: construct::build_grouped_mn(k, t, m).map_err(value_err)?,
    })
}

/// One of the six conjugate-derived shapes, by letter "a".."f".
#[pyfunction]
fn build_variant(k: usize, t: usize, which: &str) -> PyResult<Pda> {
    let letter = which
        .chars()
        .next()
        .filter(|_| which.len() == 1)
        .and_then(Variant::from_letter)
        .ok_or_else(|| value_err(format!("unknown variant {which:?}: expected a-f")))?;
    let spec = MnSpec::new(k, t).map_err(value_err)?;
    Ok(Pda {
        inner: construct::build_variant(spec, letter).map_err(value_err)?,
    })
}

/// Variant c: the (C(k,t+1), C(k,t), C(k,t)-(t+1), k) array.
#[pyfunction]
fn build_p1(k: usize, t: usize) -> PyResult<Pda> {
    build_variant(k, t, "c")
}

/// Variant f: the (C(k,t), k, t, C(k,t+1)) array.
#[pyfunction]
fn build_p2(k: usize, t: usize) -> PyResult<Pda> {
    build_variant(k, t, "f")
}

/// The counting bound nF/(KF + F - n) as an exact fraction pair.
#[pyfunction]
fn bound_first(k: u64, f: u64, z: u64) -> PyResult<(BigInt, BigInt)> {
    Ok(ratio(&bounds::bound_first(k, f, z).map_err(value_err)?))
}

/// The integer row-peeling bound.
#[pyfunction]
fn bound_second(k: u64, f: u64, z: u64) -> PyResult<u64> {
    bounds::bound_second(k, f, z).map_err(value_err)
}

/// The rate bound K(1 - M/N)/(F M/N + 1); returns the fraction pair
/// and whether the bound is known loose (F > K).
#[pyfunction]
fn bound_rate_tradeoff(
    k: u64,
    f: u64,
    mem_num: BigInt,
    mem_den: BigInt,
) -> PyResult<((BigInt, BigInt), bool)> {
    let b =
        bounds::bound_rate_tradeoff(k, f, &Rational::new(mem_num, mem_den)).map_err(value_err)?;
    Ok((ratio(&b.bound), b.loose_when_f_exceeds_k))
}

/// The row-count bound C(K, KZ/F).
#[pyfunction]
fn bound_rows_for_regular(k: u64, f: u64, z: u64) -> PyResult<BigInt> {
    bounds::bound_rows_for_regular(k, f, z).map_err(value_err)
}

/// Exhaustive minimal-S search; None when nothing admits `s_max`
/// symbols or fewer.
#[pyfunction]
#[pyo3(signature = (k, f, z, s_max=None, cell_limit=24, start=None))]
fn oracle_min_s(
    k: usize,
    f: usize,
    z: usize,
    s_max: Option<u32>,
    cell_limit: usize,
    start: Option<u32>,
) -> PyResult<Option<u32>> {
    let cfg = OracleConfig {
        s_max,
        cell_limit,
        start,
    };
    match oracle::oracle_min_s(k, f, z, &cfg).map_err(value_err)? {
        OracleOutcome::Found(s) => Ok(Some(s)),
        OracleOutcome::NotFoundWithin(_) => Ok(None),
    }
}

/// Place/deliver/decode one demand vector over a seeded random
/// library; returns the slot listing and whether all users decoded.
#[pyfunction]
#[pyo3(signature = (pda, n_files, demand, seed=0xC0DE, packet_bytes=64))]
fn simulate<'py>(
    py: Python<'py>,
    pda: &Pda,
    n_files: usize,
    demand: Vec<usize>,
    seed: u64,
    packet_bytes: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let grid = &pda.inner;
    let lib = FileLibrary::random(n_files, grid.rows(), packet_bytes, seed);
    let d = DemandVector::new(demand, grid.cols(), n_files).map_err(value_err)?;
    let caches = sim::place(grid, &lib).map_err(value_err)?;
    let transcript = sim::deliver(grid, &lib, &d).map_err(value_err)?;
    type Slot = (u32, Vec<(usize, usize, usize)>);
    let slots: Vec<Slot> = transcript
        .signals
        .iter()
        .map(|sig| {
            (
                sig.symbol,
                sig.contributors
                    .iter()
                    .map(|c| (c.user, c.file, c.packet))
                    .collect(),
            )
        })
        .collect();
    let decoded = match sim::decode(grid, &caches, &transcript, &d) {
        Ok(files) => files
            .iter()
            .enumerate()
            .all(|(u, got)| got == &lib.file_bytes(d.get(u))),
        Err(_) => false,
    };
    let out = PyDict::new(py);
    out.set_item("slots", slots)?;
    out.set_item("decoded", decoded)?;
    out.set_item("rate", ratio(&transcript.rate_achieved()))?;
    Ok(out)
}

/// Sweep demand vectors (exhaustive by default, sampled when `count`
/// is given) and report failures and the achieved rate.
#[pyfunction]
#[pyo3(signature = (pda, n_files, count=None, seed=0xC0DE, packet_bytes=64, max_exhaustive=4096))]
fn demand_sweep<'py>(
    py: Python<'py>,
    pda: &Pda,
    n_files: usize,
    count: Option<u64>,
    seed: u64,
    packet_bytes: usize,
    max_exhaustive: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match count {
        Some(count) => SweepMode::Sampled { count, seed },
        None => SweepMode::Exhaustive,
    };
    let cfg = SweepConfig {
        mode,
        lib_seed: seed,
        packet_len: packet_bytes,
        max_exhaustive,
    };
    let summary = sim::demand_sweep(&pda.inner, n_files, &cfg).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("demands", summary.demands_run)?;
    out.set_item("failures", summary.failures.len())?;
    out.set_item("slots_per_demand", summary.signals_per_demand)?;
    out.set_item("rate", ratio(&summary.rate))?;
    Ok(out)
}

fn comparison_dict<'py>(
    py: Python<'py>,
    row: &compare::ComparisonRow,
) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("label", row.label)?;
    for (name, v) in &row.source {
        out.set_item(name, v)?;
    }
    out.set_item("ratio_k", ratio(&row.ratio_k))?;
    out.set_item("ratio_m", ratio(&row.ratio_m))?;
    out.set_item("ratio_f", ratio(&row.ratio_f))?;
    out.set_item("ratio_r", ratio(&row.ratio_r))?;
    out.set_item("dominates", row.dominates)?;
    Ok(out)
}

/// Ratios of variant c against the base construction at equal K, M/N.
#[pyfunction]
fn compare_p1_vs_mn(py: Python<'_>, k: u64, t: u64) -> PyResult<Bound<'_, PyDict>> {
    comparison_dict(py, &compare::compare_p1_vs_mn(k, t).map_err(value_err)?)
}

/// Ratios of variant f against the base construction at equal K, M/N.
#[pyfunction]
fn compare_p2_vs_mn(py: Python<'_>, k: u64, t: u64) -> PyResult<Bound<'_, PyDict>> {
    comparison_dict(py, &compare::compare_p2_vs_mn(k, t).map_err(value_err)?)
}

#[pymodule]
fn pda_caching(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Pda>()?;
    m.add_function(wrap_pyfunction!(build_mn, m)?)?;
    m.add_function(wrap_pyfunction!(build_grouped_mn, m)?)?;
    m.add_function(wrap_pyfunction!(build_variant, m)?)?;
    m.add_function(wrap_pyfunction!(build_p1, m)?)?;
    m.add_function(wrap_pyfunction!(build_p2, m)?)?;
    m.add_function(wrap_pyfunction!(bound_first, m)?)?;
    m.add_function(wrap_pyfunction!(bound_second, m)?)?;
    m.add_function(wrap_pyfunction!(bound_rate_tradeoff, m)?)?;
    m.add_function(wrap_pyfunction!(bound_rows_for_regular, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_min_s, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(demand_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(compare_p1_vs_mn, m)?)?;
    m.add_function(wrap_pyfunction!(compare_p2_vs_mn, m)?)?;
    m.add("REGULAR_4_6_3_4", pda_core::samples::REGULAR_4_6_3_4)?;
    m.add("OPTIMAL_6_8_5_5", pda_core::samples::OPTIMAL_6_8_5_5)?;
    Ok(())
}
