//! Cubical complexes on rectilinear grids: sublevel sets of sampled scalar
//! fields and homology of sublevel-set pairs.
//!
//! Cells enter a sublevel complex when every vertex clears the threshold
//! (lower-star convention), which makes the filtration monotone in the
//! threshold. Pair homology runs through an implicit cell grid with free
//! coface elimination before any matrix is materialized, so grids in the
//! tens of millions of cells stay tractable.

mod critical;
mod io;
mod khalimsky;
mod pair;
mod sublevel;

pub use critical::{detect_critical_values, CriticalCluster, CriticalValues, ValueSign};
pub use io::{read_field_binary, read_field_json, write_field_binary, write_field_json};
pub use khalimsky::CellGrid;
pub use pair::relative_pair_homology;
pub use sublevel::{build_sublevel_complex, CubicalComplex};

use crate::error::{GfhError, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default ceiling on the total number of cubical cells.
pub const DEFAULT_CELL_BUDGET: u64 = 50_000_000;

/// Largest grid dimension the cell coding supports.
pub const MAX_DIM: usize = 8;

/// One grid axis: uniformly spaced samples on `[min, max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, samples: usize) -> Self {
        AxisSpec { min, max, samples }
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.samples as f64 - 1.0)
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        self.min + self.spacing() * i as f64
    }
}

/// Rectilinear sampling grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    axes: Vec<AxisSpec>,
}

impl GridSpec {
    pub fn new(axes: Vec<AxisSpec>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(GfhError::InvalidInput(format!(
                "grid dimension must be in 1..={MAX_DIM}, got {}",
                axes.len()
            )));
        }
        for (i, a) in axes.iter().enumerate() {
            if !(a.min < a.max) || !a.min.is_finite() || !a.max.is_finite() {
                return Err(GfhError::InvalidInput(format!(
                    "axis {i}: need finite min < max, got [{}, {}]",
                    a.min, a.max
                )));
            }
            if a.samples < 2 {
                return Err(GfhError::InvalidInput(format!(
                    "axis {i}: need at least 2 samples, got {}",
                    a.samples
                )));
            }
        }
        Ok(GridSpec { axes })
    }

    /// Uniform cube `[min, max]^d` with `samples` per axis.
    pub fn cube(dim: usize, min: f64, max: f64, samples: usize) -> Result<Self> {
        GridSpec::new(vec![AxisSpec::new(min, max, samples); dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisSpec] {
        &self.axes
    }

    pub fn vertex_count(&self) -> u128 {
        self.axes.iter().map(|a| a.samples as u128).product()
    }

    /// Total number of cubical cells of all dimensions.
    pub fn cell_count(&self) -> u128 {
        self.axes.iter().map(|a| (2 * a.samples - 1) as u128).product()
    }

    pub fn check_budget(&self, budget: u64) -> Result<()> {
        let cells = self.cell_count();
        if cells > budget as u128 {
            return Err(GfhError::BudgetExceeded { cells, budget });
        }
        Ok(())
    }

    pub fn max_spacing(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing()).fold(0.0, f64::max)
    }

    /// Decode a flat vertex index into per-axis sample indices.
    pub fn vertex_multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.dim()];
        for (i, a) in self.axes.iter().enumerate().rev() {
            idx[i] = flat % a.samples;
            flat /= a.samples;
        }
        idx
    }

    pub fn vertex_coords(&self, flat: usize) -> Vec<f64> {
        self.vertex_multi_index(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coordinate(i))
            .collect()
    }
}

/// Scalar values sampled at every grid vertex.
#[derive(Debug, Clone)]
pub struct SampledField {
    grid: GridSpec,
    values: Vec<f64>,
}

impl SampledField {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() as u128 != grid.vertex_count() {
            return Err(GfhError::InvalidInput(format!(
                "field has {} values for {} grid vertices",
                values.len(),
                grid.vertex_count()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(GfhError::InvalidInput(format!("non-finite field value at vertex {i}")));
        }
        Ok(SampledField { grid, values })
    }

    /// Evaluate `f` at every vertex in parallel.
    pub fn from_fn<F>(grid: GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Sync + Send,
    {
        let n = usize::try_from(grid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("grid too large to index".into()))?;
        let values: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| f(&grid.vertex_coords(i)))
            .collect();
        SampledField::new(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, vertex: usize) -> f64 {
        self.values[vertex]
    }
}

/// A sublevel-set pair `(field <= b, field <= a)` with `a < b`.
#[derive(Debug, Clone)]
pub struct CubicalPair<'a> {
    pub field: &'a SampledField,
    pub lower: f64,
    pub upper: f64,
}

impl<'a> CubicalPair<'a> {
    pub fn new(field: &'a SampledField, lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) {
            return Err(GfhError::WindowViolation(format!(
                "pair thresholds must satisfy a < b, got a = {lower}, b = {upper}"
            )));
        }
        Ok(CubicalPair { field, lower, upper })
    }

    /// Warn when a threshold sits within one grid-cell oscillation of a
    /// detected critical value.
    pub fn threshold_warnings(&self, crits: &CriticalValues) -> Vec<String> {
        let osc = crits.value_resolution.max(f64::EPSILON);
        let mut warnings = Vec::new();
        for cluster in &crits.clusters {
            for (name, t) in [("lower", self.lower), ("upper", self.upper)] {
                if (t - cluster.center).abs() <= osc {
                    warnings.push(format!(
                        "{name} threshold {t} is within grid oscillation {osc:.3e} of critical value {:.6}",
                        cluster.center
                    ));
                }
            }
        }
        warnings
    }
}

