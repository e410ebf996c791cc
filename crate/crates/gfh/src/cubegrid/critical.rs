//! Approximate critical values of a sampled field.
//!
//! A vertex is flagged when the forward and backward differences disagree in
//! sign along every axis; flagged values are clustered and classified. For
//! difference fields the positive clusters approximate the length spectrum.

use super::SampledField;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalCluster {
    pub center: f64,
    pub sign: ValueSign,
    /// Number of flagged vertices merged into this cluster.
    pub support: usize,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct CriticalValues {
    pub clusters: Vec<CriticalCluster>,
    /// Largest adjacent-value jump seen at any flagged vertex; clustering and
    /// zero classification work at twice this scale.
    pub value_resolution: f64,
}

impl CriticalValues {
    pub fn positive(&self) -> Vec<f64> {
        self.clusters
            .iter()
            .filter(|c| c.sign == ValueSign::Positive)
            .map(|c| c.center)
            .collect()
    }

    pub fn spectrum_bounds(&self) -> Option<(f64, f64)> {
        let pos = self.positive();
        match (pos.first(), pos.last()) {
            (Some(&lo), Some(&hi)) => Some((lo, hi)),
            _ => None,
        }
    }
}

/// Detect approximate critical values of `field`.
///
/// Returns cluster centers sorted increasingly; an empty list is legitimate
/// (fields with no interior sign changes, e.g. linear ones).
pub fn detect_critical_values(field: &SampledField) -> CriticalValues {
    let grid = field.grid();
    let dim = grid.dim();
    let n = field.values().len();
    let samples: Vec<usize> = grid.axes().iter().map(|a| a.samples).collect();
    let mut strides = vec![1usize; dim];
    for i in (0..dim.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * samples[i + 1];
    }
    let values = field.values();

    let flagged: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .filter_map(|v| {
            let mut rest = v;
            let mut osc = 0.0f64;
            let center = values[v];
            for i in 0..dim {
                let idx = rest / strides[i];
                rest %= strides[i];
                if idx == 0 || idx + 1 >= samples[i] {
                    return None; // boundary vertex
                }
                let fwd = values[v + strides[i]] - center;
                let bwd = center - values[v - strides[i]];
                if fwd * bwd > 0.0 {
                    return None; // strictly monotone along this axis
                }
                // Only strict sign changes measure the value's smear; axes
                // that are flat on one side (plateaus, constant directions)
                // pass the criticality test without widening the tolerance.
                if fwd * bwd < 0.0 {
                    osc = osc.max(fwd.abs()).max(bwd.abs());
                }
            }
            Some((center, osc))
        })
        .collect();

    if flagged.is_empty() {
        return CriticalValues::default();
    }

    let value_resolution = flagged.iter().map(|&(_, o)| o).fold(0.0, f64::max);
    let tol = (2.0 * value_resolution).max(f64::EPSILON);

    let mut vals: Vec<f64> = flagged.iter().map(|&(v, _)| v).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut clusters = Vec::new();
    let mut start = 0usize;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > tol {
            let chunk = &vals[start..i];
            let center = chunk.iter().sum::<f64>() / chunk.len() as f64;
            let sign = if center > tol {
                ValueSign::Positive
            } else if center < -tol {
                ValueSign::Negative
            } else {
                ValueSign::Zero
            };
            clusters.push(CriticalCluster { center, sign, support: chunk.len() });
            start = i;
        }
    }

    CriticalValues { clusters, value_resolution }
}
